#include "afd2d/dictionary.hpp"

#include <cmath>
#include <stdexcept>

namespace afd2d {

void require_in_disc(const DiscPoint& a) {
  if (!(a.abs2() < 1.0))
    throw std::invalid_argument("parameter lies outside the open unit disc");
}

ParameterGrid build_parameter_grid(int nt, int ns) {
  if (nt < 1 || ns < 1)
    throw std::invalid_argument("build_parameter_grid: sizes must be >= 1");
  ParameterGrid grid;
  grid.nt = nt;
  grid.ns = ns;
  for (int t = 1 - nt; t <= nt - 1; ++t) {
    for (int s = 1 - ns; s <= ns - 1; ++s) {
      const double x = static_cast<double>(t) / nt;
      const double y = static_cast<double>(s) / ns;
      if (x * x + y * y < 1.0) grid.points.push_back({x, y});
    }
  }
  return grid;
}

ParameterGrid restrict_radius(const ParameterGrid& grid, double r_max) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("restrict_radius: r_max must be positive");
  ParameterGrid out;
  out.nt = grid.nt;
  out.ns = grid.ns;
  for (const auto& a : grid.points)
    if (std::sqrt(a.abs2()) <= r_max) out.points.push_back(a);
  return out;
}

CVector eval_szego_1d(const DiscPoint& a, int multiplicity, const CVector& axis_points) {
  require_in_disc(a);
  if (multiplicity < 1)
    throw std::invalid_argument("eval_szego_1d: multiplicity must be >= 1");
  const Complex abar = std::conj(a.value());
  const auto len = axis_points.size();
  CVector out(len);
  if (multiplicity == 1) {
    const double scale = std::sqrt(1.0 - a.abs2());
    for (Eigen::Index p = 0; p < len; ++p)
      out(p) = scale / (1.0 - abar * axis_points(p));
    return out;
  }
  for (Eigen::Index p = 0; p < len; ++p) {
    const Complex d = 1.0 - abar * axis_points(p);
    out(p) = std::pow(d, -multiplicity);
  }
  out /= norm_1d(out);
  return out;
}

CVector blaschke_product(const TMParams& params, const CVector& axis_points) {
  const auto len = axis_points.size();
  CVector prod = CVector::Ones(len);
  for (const auto& a : params.seq) {
    require_in_disc(a);
    const Complex av = a.value();
    const Complex abar = std::conj(av);
    for (Eigen::Index p = 0; p < len; ++p)
      prod(p) *= (axis_points(p) - av) / (1.0 - abar * axis_points(p));
  }
  return prod;
}

CVector eval_tm_basis(const TMParams& params, const CVector& axis_points) {
  if (params.seq.empty())
    throw std::invalid_argument("eval_tm_basis: parameter sequence is empty");
  TMParams head;
  head.seq.assign(params.seq.begin(), params.seq.end() - 1);
  const CVector tail = eval_szego_1d(params.seq.back(), 1, axis_points);
  return tail.cwiseProduct(blaschke_product(head, axis_points));
}

Signal2D eval_product_atom(const DiscPoint& a, const DiscPoint& b, int ma, int mb,
                           const TorusGrid& grid) {
  const CVector u = eval_szego_1d(a, ma, grid.t_points());
  const CVector v = eval_szego_1d(b, mb, grid.s_points());
  return Signal2D(grid, u * v.transpose());
}

Signal2D eval_tm_product(const TMParams& pa, const TMParams& pb, int k, int l,
                         const TorusGrid& grid) {
  if (k < 1 || k > pa.size() || l < 1 || l > pb.size())
    throw std::invalid_argument("eval_tm_product: index out of range");
  TMParams pak, pbl;
  pak.seq.assign(pa.seq.begin(), pa.seq.begin() + k);
  pbl.seq.assign(pb.seq.begin(), pb.seq.begin() + l);
  const CVector u = eval_tm_basis(pak, grid.t_points());
  const CVector v = eval_tm_basis(pbl, grid.s_points());
  return Signal2D(grid, u * v.transpose());
}

}  // namespace afd2d
