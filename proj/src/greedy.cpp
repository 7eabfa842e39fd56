#include "afd2d/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "afd2d/errors.hpp"
#include "afd2d/parallel.hpp"

namespace afd2d {

namespace {

CVector normalized_axis_kernel(const DiscPoint& a, int mult, const CVector& axis_points) {
  CVector u = eval_szego_1d(a, mult, axis_points);
  if (mult == 1) u /= norm_1d(u);
  return u;
}

Complex matrix_inner(const CMatrix& f, const CMatrix& g) {
  return f.cwiseProduct(g.conjugate()).sum() /
         static_cast<double>(static_cast<long long>(f.rows()) * f.cols());
}

// Precomputed unit-norm axis kernels for every grid candidate, plus the
// all-pairs inner product of a signal against the product atoms.
class CandidateScanner {
 public:
  CandidateScanner(const ParameterGrid& grid, const TorusGrid& tg, int threads)
      : points_(grid.points), threads_(threads) {
    if (points_.empty())
      throw std::invalid_argument("greedy engine: empty candidate set");
    const CVector z = tg.t_points();
    const CVector w = tg.s_points();
    const int pc = count();
    ucand_.resize(tg.m, pc);
    vcand_.resize(tg.n, pc);
    for (int i = 0; i < pc; ++i) {
      ucand_.col(i) = normalized_axis_kernel(points_[i], 1, z);
      vcand_.col(i) = normalized_axis_kernel(points_[i], 1, w);
    }
    vconj_ = vcand_.conjugate();
    mn_ = static_cast<double>(static_cast<long long>(tg.m) * tg.n);
  }

  int count() const { return static_cast<int>(points_.size()); }
  const DiscPoint& point(int i) const { return points_[i]; }
  CVector u(int i) const { return ucand_.col(i); }
  CVector v(int j) const { return vcand_.col(j); }
  CMatrix atom_values(int i, int j) const {
    return ucand_.col(i) * vcand_.col(j).transpose();
  }

  // C(i, j) = <G, u_i (x) v_j>.
  CMatrix pair_inner(const CMatrix& g) const {
    const int pc = count();
    CMatrix y(pc, g.cols());
    parallel_for(0, pc, threads_, [&](int i) {
      y.row(i) = ucand_.col(i).adjoint() * g;
    });
    return y * vconj_ / mn_;
  }

 private:
  std::vector<DiscPoint> points_;
  int threads_;
  CMatrix ucand_, vcand_, vconj_;
  double mn_ = 1.0;
};

struct Pick {
  int i = -1;
  int j = -1;
  double score = 0.0;

  bool valid() const { return i >= 0; }
};

// Weak maximal selection: the first candidate (lexicographic order) whose
// score reaches t times the maximum over non-excluded candidates.
template <typename Excluded>
Pick pick_weak_max(const RMatrix& scores, double t, Excluded&& excluded) {
  const int rows = static_cast<int>(scores.rows());
  const int cols = static_cast<int>(scores.cols());
  double best = -1.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!excluded(i, j) && scores(i, j) > best) best = scores(i, j);
  if (best < 0.0) return {};
  const double threshold = t * best;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!excluded(i, j) && scores(i, j) >= threshold) return {i, j, scores(i, j)};
  return {};
}

double weak_factor(const GreedyOptions& options, int step_index) {
  if (step_index < static_cast<int>(options.t_seq.size()))
    return options.t_seq[step_index];
  return 1.0;
}

void validate_options(const GreedyOptions& options) {
  for (double t : options.t_seq)
    if (!(t > 0.0) || t > 1.0)
      throw std::invalid_argument("weakness factors must lie in (0, 1]");
  if (options.max_multiplicity < 1)
    throw std::invalid_argument("max_multiplicity must be >= 1");
  if (!(options.in_span_tol > 0.0))
    throw std::invalid_argument("in_span_tol must be positive");
}

GreedyState make_empty_state(const Signal2D& f, RunStatus status) {
  GreedyState state;
  state.grid = f.grid();
  state.residual = f;
  state.input_energy = energy(f);
  state.status = status;
  return state;
}

}  // namespace

GramSchmidtOutcome gram_schmidt_extend(const std::vector<Signal2D>& ortho,
                                       const Signal2D& psi, double tol) {
  CMatrix w = psi.values();
  for (int pass = 0; pass < 2; ++pass)
    for (const Signal2D& xi : ortho)
      w -= matrix_inner(w, xi.values()) * xi.values();
  const double mn = static_cast<double>(static_cast<long long>(w.rows()) * w.cols());
  const double r = std::sqrt(w.squaredNorm() / mn);
  GramSchmidtOutcome out;
  out.r = r;
  if (r <= tol) {
    out.in_span = true;
    return out;
  }
  out.xi = Signal2D(psi.grid(), w / r);
  return out;
}

Signal2D normalized_atom(const AtomRef& atom, const TorusGrid& grid) {
  const CVector u = normalized_axis_kernel(atom.a, atom.ma, grid.t_points());
  const CVector v = normalized_axis_kernel(atom.b, atom.mb, grid.s_points());
  return Signal2D(grid, u * v.transpose());
}

GreedyState run_ga(const Signal2D& f, const ParameterGrid& grid, int steps,
                   const GreedyOptions& options) {
  if (steps < 1) throw std::invalid_argument("run_ga: steps must be >= 1");
  validate_options(options);
  if (energy(f) == 0.0) return make_empty_state(f, RunStatus::zero_input);

  GreedyState state = make_empty_state(f, RunStatus::ok);
  CandidateScanner scanner(grid, f.grid(), options.threads);
  CMatrix g = f.values();
  const double mn = static_cast<double>(static_cast<long long>(g.rows()) * g.cols());

  for (int k = 0; k < steps; ++k) {
    const CMatrix c = scanner.pair_inner(g);
    const RMatrix scores = c.cwiseAbs();
    const Pick pick = pick_weak_max(scores, weak_factor(options, k),
                                    [](int, int) { return false; });
    const Complex coeff = c(pick.i, pick.j);
    g -= coeff * scanner.atom_values(pick.i, pick.j);
    state.atoms.push_back({scanner.point(pick.i), scanner.point(pick.j), 1, 1});
    state.coeffs.push_back(coeff);
    state.history.push_back(g.squaredNorm() / mn);
  }
  state.residual = Signal2D(f.grid(), std::move(g));
  return state;
}

GreedyState run_oga(const Signal2D& f, const ParameterGrid& grid, int steps,
                    const GreedyOptions& options) {
  if (steps < 1) throw std::invalid_argument("run_oga: steps must be >= 1");
  validate_options(options);
  if (energy(f) == 0.0) return make_empty_state(f, RunStatus::zero_input);

  GreedyState state = make_empty_state(f, RunStatus::ok);
  CandidateScanner scanner(grid, f.grid(), options.threads);
  const int pc = scanner.count();
  const double tol = options.in_span_tol;
  const double tol2 = tol * tol;
  CMatrix g = f.values();
  const double mn = static_cast<double>(static_cast<long long>(g.rows()) * g.cols());

  RMatrix proj2 = RMatrix::Zero(pc, pc);
  std::vector<uint8_t> excluded(static_cast<size_t>(pc) * pc, 0);
  auto is_excluded = [&](int i, int j) {
    return excluded[static_cast<size_t>(i) * pc + j] != 0 ||
           1.0 - proj2(i, j) <= tol2;
  };

  for (int k = 0; k < steps; ++k) {
    const CMatrix c = scanner.pair_inner(g);
    const RMatrix scores = c.cwiseAbs();
    GramSchmidtOutcome gs;
    Pick pick;
    for (;;) {
      pick = pick_weak_max(scores, weak_factor(options, k), is_excluded);
      if (!pick.valid())
        throw ExhaustedDictionaryError(
            "orthogonal greedy: every candidate lies in the selected span");
      const Signal2D psi(f.grid(), scanner.atom_values(pick.i, pick.j));
      gs = gram_schmidt_extend(state.ortho, psi, tol);
      if (!gs.in_span) break;
      excluded[static_cast<size_t>(pick.i) * pc + pick.j] = 1;
    }

    const Signal2D& xi = gs.xi;
    state.ortho.push_back(xi);
    state.v_seq.push_back(std::min(gs.r, 1.0));
    state.coeffs.push_back(matrix_inner(f.values(), xi.values()));
    state.atoms.push_back({scanner.point(pick.i), scanner.point(pick.j), 1, 1});
    g -= matrix_inner(g, xi.values()) * xi.values();
    state.history.push_back(g.squaredNorm() / mn);
    proj2 += scanner.pair_inner(xi.values()).cwiseAbs2();
  }
  state.residual = Signal2D(f.grid(), std::move(g));
  return state;
}

namespace {

// Current escalated kernel of a candidate pair, with its accumulated
// projection energy onto the selected orthonormal family.
struct EscalatedAtom {
  int ma = 1;
  int mb = 1;
  CVector u;
  CVector v;
  double proj2 = 0.0;
};

struct EscalationChoice {
  EscalatedAtom atom;
  Complex numerator;
  double r = 0.0;
  double score = 0.0;
};

double projection_energy(const CMatrix& psi, const std::vector<Signal2D>& ortho) {
  double total = 0.0;
  for (const Signal2D& xi : ortho) total += std::norm(matrix_inner(psi, xi.values()));
  return total;
}

// Searches escalations of (a, b) starting from (ma, mb), one added degree at
// a time; within a degree the first-axis bump is tried first and wins ties.
std::optional<EscalationChoice> best_escalation(
    const DiscPoint& a, const DiscPoint& b, int ma, int mb, const CMatrix& g,
    const std::vector<Signal2D>& ortho, const TorusGrid& grid,
    const GreedyOptions& options) {
  const CVector z = grid.t_points();
  const CVector w = grid.s_points();
  const int cap = options.max_multiplicity;
  for (int add = 1; add <= 2 * cap; ++add) {
    std::optional<EscalationChoice> best;
    for (int da = std::min(add, cap - ma); da >= 0; --da) {
      const int db = add - da;
      const int ma2 = ma + da;
      const int mb2 = mb + db;
      if (ma2 > cap || mb2 > cap) continue;
      EscalatedAtom cand;
      cand.ma = ma2;
      cand.mb = mb2;
      cand.u = normalized_axis_kernel(a, ma2, z);
      cand.v = normalized_axis_kernel(b, mb2, w);
      const CMatrix psi = cand.u * cand.v.transpose();
      cand.proj2 = projection_energy(psi, ortho);
      const double r = std::sqrt(std::max(0.0, 1.0 - cand.proj2));
      if (r <= options.in_span_tol) continue;
      EscalationChoice choice;
      choice.atom = std::move(cand);
      choice.numerator = matrix_inner(g, psi);
      choice.r = r;
      choice.score = std::abs(choice.numerator) / r;
      if (!best || choice.score > best->score) best = std::move(choice);
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

GreedyState run_preoga(const Signal2D& f, const ParameterGrid& grid, int steps,
                       const GreedyOptions& options) {
  if (steps < 1) throw std::invalid_argument("run_preoga: steps must be >= 1");
  validate_options(options);
  if (energy(f) == 0.0) return make_empty_state(f, RunStatus::zero_input);

  GreedyState state = make_empty_state(f, RunStatus::ok);
  CandidateScanner scanner(grid, f.grid(), options.threads);
  const int pc = scanner.count();
  const double tol = options.in_span_tol;
  CMatrix g = f.values();
  const double mn = static_cast<double>(static_cast<long long>(g.rows()) * g.cols());

  RMatrix proj2 = RMatrix::Zero(pc, pc);
  std::map<std::pair<int, int>, EscalatedAtom> escalated;

  for (int k = 0; k < steps; ++k) {
    const CMatrix c = scanner.pair_inner(g);

    for (;;) {  // selection loop; re-entered only on a tolerance-boundary miss
      RMatrix scores = RMatrix::Constant(pc, pc, -1.0);
      std::map<std::pair<int, int>, EscalationChoice> pending;
      for (int i = 0; i < pc; ++i) {
        for (int j = 0; j < pc; ++j) {
          const auto key = std::make_pair(i, j);
          const auto esc = escalated.find(key);
          double pe;
          Complex numer;
          int ma = 1, mb = 1;
          if (esc != escalated.end()) {
            pe = esc->second.proj2;
            ma = esc->second.ma;
            mb = esc->second.mb;
            numer = matrix_inner(g, esc->second.u * esc->second.v.transpose());
          } else {
            pe = proj2(i, j);
            numer = c(i, j);
          }
          const double r = std::sqrt(std::max(0.0, 1.0 - pe));
          if (r > tol) {
            scores(i, j) = std::abs(numer) / r;
            continue;
          }
          auto choice = best_escalation(scanner.point(i), scanner.point(j), ma, mb,
                                        g, state.ortho, f.grid(), options);
          if (choice) {
            scores(i, j) = choice->score;
            pending.emplace(key, std::move(*choice));
          }
        }
      }

      const Pick pick = pick_weak_max(scores, weak_factor(options, k),
                                      [](int, int) { return false; });
      if (!pick.valid())
        throw EscalationLimitError(
            "pre-orthogonal greedy: no candidate admits a multiplicity "
            "escalation within the configured cap");

      const auto key = std::make_pair(pick.i, pick.j);
      AtomRef ref{scanner.point(pick.i), scanner.point(pick.j), 1, 1};
      CMatrix psi;
      const auto pend = pending.find(key);
      if (pend != pending.end()) {
        escalated[key] = pend->second.atom;
        ref.ma = pend->second.atom.ma;
        ref.mb = pend->second.atom.mb;
        psi = pend->second.atom.u * pend->second.atom.v.transpose();
      } else if (const auto esc = escalated.find(key); esc != escalated.end()) {
        ref.ma = esc->second.ma;
        ref.mb = esc->second.mb;
        psi = esc->second.u * esc->second.v.transpose();
      } else {
        psi = scanner.atom_values(pick.i, pick.j);
      }

      const GramSchmidtOutcome gs =
          gram_schmidt_extend(state.ortho, Signal2D(f.grid(), psi), tol);
      if (gs.in_span) {
        // The tracked projection said "usable" but the exact distance says
        // otherwise; record the dependence and rescan.
        if (const auto esc = escalated.find(key); esc != escalated.end())
          esc->second.proj2 = 1.0;
        else
          proj2(pick.i, pick.j) = 1.0;
        continue;
      }

      const Signal2D& xi = gs.xi;
      state.ortho.push_back(xi);
      state.v_seq.push_back(std::min(gs.r, 1.0));
      state.coeffs.push_back(matrix_inner(f.values(), xi.values()));
      state.atoms.push_back(ref);
      g -= matrix_inner(g, xi.values()) * xi.values();
      state.history.push_back(g.squaredNorm() / mn);
      proj2 += scanner.pair_inner(xi.values()).cwiseAbs2();
      for (auto& [pair_key, atom] : escalated)
        atom.proj2 +=
            std::norm(matrix_inner(atom.u * atom.v.transpose(), xi.values()));
      break;
    }
  }
  state.residual = Signal2D(f.grid(), std::move(g));
  return state;
}

Signal2D reconstruct(const GreedyState& state, int level) {
  if (level < 0 || level > state.steps())
    throw std::invalid_argument("reconstruct: level out of range");
  CMatrix acc = CMatrix::Zero(state.grid.m, state.grid.n);
  const bool plain = state.ortho.empty() && state.steps() > 0;
  for (int k = 0; k < level; ++k) {
    if (plain)
      acc += state.coeffs[k] * normalized_atom(state.atoms[k], state.grid).values();
    else
      acc += state.coeffs[k] * state.ortho[k].values();
  }
  return Signal2D(state.grid, std::move(acc));
}

}  // namespace afd2d
