#include "afd2d/product_afd.hpp"

#include <cmath>
#include <stdexcept>

#include "afd2d/parallel.hpp"

namespace afd2d {

namespace {

// Unit-quadrature-norm kernel sample.  Blaschke factors are unimodular on
// the circle, so multiplying by a running product keeps the norm exact.
CVector normalized_kernel(const DiscPoint& a, const CVector& axis_points) {
  CVector u = eval_szego_1d(a, 1, axis_points);
  return u / norm_1d(u);
}

CVector append_blaschke(const CVector& running, const DiscPoint& a,
                        const CVector& axis_points) {
  const Complex av = a.value();
  const Complex abar = std::conj(av);
  CVector out(running.size());
  for (Eigen::Index p = 0; p < running.size(); ++p)
    out(p) = running(p) * (axis_points(p) - av) / (1.0 - abar * axis_points(p));
  return out;
}

struct PairScan {
  int ia = 0;
  int ib = 0;
  double score = 0.0;
};

// First strictly-greatest entry in lexicographic (row, column) order.
PairScan argmax_pairs(const RMatrix& scores) {
  PairScan best;
  best.score = -1.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    for (Eigen::Index j = 0; j < scores.cols(); ++j)
      if (scores(i, j) > best.score)
        best = {static_cast<int>(i), static_cast<int>(j), scores(i, j)};
  return best;
}

ProductAfdResult run_square_engine(const Signal2D& f,
                                   const std::vector<DiscPoint>& candidates,
                                   int steps, int threads) {
  if (steps < 1) throw std::invalid_argument("square engine: steps must be >= 1");
  if (candidates.empty())
    throw std::invalid_argument("square engine: empty candidate set");

  ProductAfdResult result;
  result.input_energy = energy(f);
  if (result.input_energy == 0.0) {
    result.status = RunStatus::zero_input;
    result.coeffs = CMatrix::Zero(0, 0);
    return result;
  }

  const int m = f.rows();
  const int n = f.cols();
  const double mn = static_cast<double>(static_cast<long long>(m) * n);
  const CVector z = f.grid().t_points();
  const CVector w = f.grid().s_points();
  const int pc = static_cast<int>(candidates.size());

  CMatrix ucand(m, pc), vcand(n, pc);
  for (int i = 0; i < pc; ++i) {
    ucand.col(i) = normalized_kernel(candidates[i], z);
    vcand.col(i) = normalized_kernel(candidates[i], w);
  }

  const CMatrix& fv = f.values();
  CMatrix ufix(m, steps), vfix(n, steps);
  CMatrix zfix(steps, n);  // row k-1 holds u_k^H F
  CVector phi_a = CVector::Ones(m), psi_b = CVector::Ones(n);
  result.coeffs = CMatrix::Zero(steps, steps);
  result.step_energies.resize(steps);
  result.residual_energy.resize(steps);
  CMatrix partial = CMatrix::Zero(m, n);

  for (int k0 = 1; k0 <= steps; ++k0) {
    const int fixed = k0 - 1;
    CMatrix ucand_phi = ucand.array().colwise() * phi_a.array();
    CMatrix vcand_psi = vcand.array().colwise() * psi_b.array();

    // y.row(i) = (candidate-i kernel)^H applied to F along the first axis.
    CMatrix y(pc, n);
    parallel_for(0, pc, threads, [&](int i) {
      y.row(i) = ucand_phi.col(i).adjoint() * fv;
    });

    // Coefficients each candidate would add: row band (new a against the
    // fixed b's), column band (fixed a's against new b), corner pair term.
    CMatrix cfix, ccol;
    RVector row_band = RVector::Zero(pc), col_band = RVector::Zero(pc);
    if (fixed > 0) {
      cfix = y * vfix.leftCols(fixed).conjugate() / mn;
      row_band = cfix.cwiseAbs2().rowwise().sum();
      ccol = zfix.topRows(fixed) * vcand_psi.conjugate() / mn;
      col_band = ccol.cwiseAbs2().colwise().sum().transpose();
    }
    const CMatrix corner = y * vcand_psi.conjugate() / mn;
    RMatrix scores = corner.cwiseAbs2();
    scores.colwise() += row_band;
    scores.rowwise() += col_band.transpose();

    const PairScan pick = argmax_pairs(scores);
    const DiscPoint a_sel = candidates[pick.ia];
    const DiscPoint b_sel = candidates[pick.ib];
    result.a_seq.seq.push_back(a_sel);
    result.b_seq.seq.push_back(b_sel);

    const CVector u_new = ucand_phi.col(pick.ia);
    const CVector v_new = vcand_psi.col(pick.ib);
    ufix.col(fixed) = u_new;
    vfix.col(fixed) = v_new;
    zfix.row(fixed) = y.row(pick.ia);
    phi_a = append_blaschke(phi_a, a_sel, z);
    psi_b = append_blaschke(psi_b, b_sel, w);

    for (int l = 0; l < fixed; ++l) result.coeffs(fixed, l) = cfix(pick.ia, l);
    for (int k = 0; k < fixed; ++k) result.coeffs(k, fixed) = ccol(k, pick.ib);
    result.coeffs(fixed, fixed) = corner(pick.ia, pick.ib);
    result.step_energies[fixed] = pick.score;

    CVector vsum = CVector::Zero(n);
    for (int l = 0; l <= fixed; ++l) vsum += result.coeffs(fixed, l) * vfix.col(l);
    partial += u_new * vsum.transpose();
    if (fixed > 0) {
      CVector usum = CVector::Zero(m);
      for (int k = 0; k < fixed; ++k) usum += result.coeffs(k, fixed) * ufix.col(k);
      partial += usum * v_new.transpose();
    }
    result.residual_energy[fixed] = (fv - partial).squaredNorm() / mn;
  }
  return result;
}

}  // namespace

double objective_energy(const Signal2D& f, const TMParams& a_prefix,
                        const TMParams& b_prefix, const DiscPoint& a,
                        const DiscPoint& b) {
  if (a_prefix.size() != b_prefix.size())
    throw std::invalid_argument("objective_energy: prefix lengths differ");
  const int m = f.rows();
  const int n = f.cols();
  const double mn = static_cast<double>(static_cast<long long>(m) * n);
  const CVector z = f.grid().t_points();
  const CVector w = f.grid().s_points();
  const int k0 = a_prefix.size() + 1;

  CMatrix u(m, k0), v(n, k0);
  CVector phi = CVector::Ones(m), psi = CVector::Ones(n);
  for (int k = 0; k < k0 - 1; ++k) {
    u.col(k) = phi.cwiseProduct(normalized_kernel(a_prefix.seq[k], z));
    v.col(k) = psi.cwiseProduct(normalized_kernel(b_prefix.seq[k], w));
    phi = append_blaschke(phi, a_prefix.seq[k], z);
    psi = append_blaschke(psi, b_prefix.seq[k], w);
  }
  u.col(k0 - 1) = phi.cwiseProduct(normalized_kernel(a, z));
  v.col(k0 - 1) = psi.cwiseProduct(normalized_kernel(b, w));

  const Eigen::RowVectorXcd yrow = u.col(k0 - 1).adjoint() * f.values();
  double total = 0.0;
  for (int l = 0; l < k0; ++l)
    total += std::norm((yrow * v.col(l).conjugate())(0) / mn);
  for (int k = 0; k + 1 < k0; ++k) {
    const Eigen::RowVectorXcd zrow = u.col(k).adjoint() * f.values();
    total += std::norm((zrow * v.col(k0 - 1).conjugate())(0) / mn);
  }
  return total;
}

ProductAfdResult run_product_afd(const Signal2D& f, const ParameterGrid& grid,
                                 int steps, int threads) {
  return run_square_engine(f, grid.points, steps, threads);
}

ProductAfdResult run_fd(const Signal2D& f, int steps) {
  if (steps > std::min(f.rows(), f.cols()))
    throw std::invalid_argument("run_fd: level exceeds grid resolution");
  return run_square_engine(f, {DiscPoint{0.0, 0.0}}, steps, 1);
}

Signal2D partial_sum(const ProductAfdResult& result, const TorusGrid& grid, int level) {
  if (level < 0 || level > result.steps())
    throw std::invalid_argument("partial_sum: level out of range");
  if (level == 0) return Signal2D::zero(grid);
  const CVector z = grid.t_points();
  const CVector w = grid.s_points();
  CMatrix u(grid.m, level), v(grid.n, level);
  CVector phi = CVector::Ones(grid.m), psi = CVector::Ones(grid.n);
  for (int k = 0; k < level; ++k) {
    u.col(k) = phi.cwiseProduct(normalized_kernel(result.a_seq.seq[k], z));
    v.col(k) = psi.cwiseProduct(normalized_kernel(result.b_seq.seq[k], w));
    phi = append_blaschke(phi, result.a_seq.seq[k], z);
    psi = append_blaschke(psi, result.b_seq.seq[k], w);
  }
  return Signal2D(grid, u * result.coeffs.topLeftCorner(level, level) * v.transpose());
}

}  // namespace afd2d
