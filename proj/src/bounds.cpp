#include "afd2d/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace afd2d {

namespace {

constexpr double kSlack = 1e-12;

double seq_at(std::span<const double> seq, int k, double fallback) {
  return k < static_cast<int>(seq.size()) ? seq[k] : fallback;
}

double weighted_sum_bound(double m_budget, std::span<const double> t_seq,
                          std::span<const double> w_seq, int n) {
  if (n < 1) throw std::invalid_argument("bound index must be >= 1");
  if (!(m_budget > 0.0)) throw std::invalid_argument("budget must be positive");
  double acc = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    const double t = seq_at(t_seq, k, 1.0);
    const double w = seq_at(w_seq, k, 1.0);
    if (!(t > 0.0) || t > 1.0)
      throw std::invalid_argument("weakness factor outside (0, 1]");
    if (!(w > 0.0)) throw std::invalid_argument("weight must be positive");
    acc += (t / w) * (t / w);
  }
  return m_budget / std::sqrt(acc);
}

double atom_distance(const Signal2D& atom, const std::vector<Signal2D>& ortho) {
  double proj2 = 0.0;
  for (const Signal2D& xi : ortho) proj2 += std::norm(inner_product(atom, xi));
  const double n2 = energy(atom);
  return std::sqrt(std::max(0.0, n2 - proj2));
}

}  // namespace

double woga_apriori_bound(double m_budget, std::span<const double> t_seq, int n) {
  return weighted_sum_bound(m_budget, t_seq, {}, n);
}

double woga_posteriori_bound(double m_budget, std::span<const double> t_seq,
                             std::span<const double> v_seq, int n) {
  return weighted_sum_bound(m_budget, t_seq, v_seq, n);
}

double wpreoga_posteriori_bound(double m_budget, std::span<const double> t_seq,
                                std::span<const double> r_seq, int n) {
  return weighted_sum_bound(m_budget, t_seq, r_seq, n);
}

double preoga_completed_bound(double n_budget, int n) {
  if (n < 1) throw std::invalid_argument("bound index must be >= 1");
  return n_budget / std::sqrt(static_cast<double>(n));
}

double wpreoga_classic_bound(double m_budget, double t, double r_factor, int n) {
  if (n < 1) throw std::invalid_argument("bound index must be >= 1");
  if (!(t > 0.0) || t > 1.0)
    throw std::invalid_argument("weakness factor outside (0, 1]");
  return r_factor * m_budget / (t * std::sqrt(static_cast<double>(n)));
}

double estimate_rn(const GreedyState& state, const ParameterGrid& grid) {
  double worst = 0.0;
  for (const DiscPoint& a : grid.points) {
    for (const DiscPoint& b : grid.points) {
      const Signal2D atom = normalized_atom({a, b, 1, 1}, state.grid);
      worst = std::max(worst, atom_distance(atom, state.ortho));
    }
  }
  return worst;
}

std::vector<double> rn_curve(const std::vector<Signal2D>& ortho,
                             const std::vector<Signal2D>& representing_atoms,
                             int upto) {
  if (representing_atoms.empty())
    throw std::invalid_argument("rn_curve: no representing atoms");
  const size_t na = representing_atoms.size();
  std::vector<double> proj2(na, 0.0), norm2(na);
  for (size_t j = 0; j < na; ++j) norm2[j] = energy(representing_atoms[j]);

  std::vector<double> out;
  out.reserve(upto);
  for (int k = 1; k <= upto; ++k) {
    double worst = 0.0;
    for (size_t j = 0; j < na; ++j)
      worst = std::max(worst, std::sqrt(std::max(0.0, norm2[j] - proj2[j])));
    out.push_back(worst);
    if (k - 1 < static_cast<int>(ortho.size()))
      for (size_t j = 0; j < na; ++j)
        proj2[j] += std::norm(inner_product(representing_atoms[j], ortho[k - 1]));
  }
  return out;
}

bool lemma_recursion_holds(std::span<const double> a_seq, double a_cap,
                           std::span<const double> t_seq) {
  if (a_seq.empty()) return true;
  if (!(a_cap > 0.0)) throw std::invalid_argument("cap must be positive");
  if (a_seq[0] < 0.0 || a_seq[0] > a_cap * (1.0 + kSlack)) return false;
  for (size_t m = 0; m + 1 < a_seq.size(); ++m) {
    if (a_seq[m + 1] < 0.0) return false;
    const double t = seq_at(t_seq, static_cast<int>(m), 1.0);
    const double limit = a_seq[m] * (1.0 - t * t * a_seq[m] / a_cap);
    if (a_seq[m + 1] > limit + kSlack * a_cap) return false;
  }
  return true;
}

bool check_lemma_sequence(std::span<const double> a_seq, double a_cap,
                          std::span<const double> t_seq) {
  double denom = 1.0;
  for (size_t m = 0; m < a_seq.size(); ++m) {
    if (a_seq[m] > a_cap / denom + kSlack * a_cap) return false;
    denom += std::pow(seq_at(t_seq, static_cast<int>(m), 1.0), 2);
  }
  return true;
}

std::vector<double> observed_residual_norms(const GreedyState& state) {
  std::vector<double> out;
  out.reserve(state.history.size() + 1);
  out.push_back(std::sqrt(state.input_energy));
  for (double e : state.history) out.push_back(std::sqrt(std::max(0.0, e)));
  return out;
}

BoundTrace make_apriori_trace(double m_budget, const GreedyState& state) {
  BoundTrace trace;
  trace.m_budget = m_budget;
  trace.t_seq.assign(state.steps(), 1.0);
  trace.observed_curve = observed_residual_norms(state);
  for (int n = 1; n <= state.steps() + 1; ++n)
    trace.bound_curve.push_back(woga_apriori_bound(m_budget, trace.t_seq, n));
  return trace;
}

BoundTrace make_posteriori_trace(double m_budget, const GreedyState& state) {
  BoundTrace trace;
  trace.m_budget = m_budget;
  trace.t_seq.assign(state.steps(), 1.0);
  trace.weight_seq = state.v_seq;
  trace.observed_curve = observed_residual_norms(state);
  for (int n = 1; n <= state.steps() + 1; ++n)
    trace.bound_curve.push_back(
        woga_posteriori_bound(m_budget, trace.t_seq, state.v_seq, n));
  return trace;
}

}  // namespace afd2d
