#pragma once

#include <span>
#include <vector>

#include "afd2d/greedy.hpp"

namespace afd2d {

/// Residual-norm bounds for the weak greedy family.  Index convention:
/// f_1 = f and f_n is the remainder after n-1 steps, so the bound at n uses
/// the first n-1 entries of the weight sequences.

/// M * (1 + sum_{k<n} t_k^2)^{-1/2}; reduces to M/sqrt(n) for t == 1.
double woga_apriori_bound(double m_budget, std::span<const double> t_seq, int n);

/// M * (1 + sum_{k<n} (t_k/v_k)^2)^{-1/2} with v_k the recorded distances of
/// the selected atoms to the preceding span.
double woga_posteriori_bound(double m_budget, std::span<const double> t_seq,
                             std::span<const double> v_seq, int n);

/// M * (1 + sum_{k<n} (t_k/r_k)^2)^{-1/2} with r_k the largest distance of a
/// representing atom to the preceding span.
double wpreoga_posteriori_bound(double m_budget, std::span<const double> t_seq,
                                std::span<const double> r_seq, int n);

/// N / sqrt(n) for functions with an l1 budget N over the completed dictionary.
double preoga_completed_bound(double n_budget, int n);

/// Earlier literature bound R M / (t sqrt(n)), kept for side-by-side output.
double wpreoga_classic_bound(double m_budget, double t, double r_factor, int n);

/// Grid proxy for r at the current step: the largest distance of any grid
/// atom to the span of state.ortho.
double estimate_rn(const GreedyState& state, const ParameterGrid& grid);

/// Exact-mode r sequence for a known representation: r_seq[k-1] is the
/// largest distance of a representing atom to span(ortho[0..k-1)), for
/// k = 1..upto.  Entry 1 is always 1 for unit atoms.
std::vector<double> rn_curve(const std::vector<Signal2D>& ortho,
                             const std::vector<Signal2D>& representing_atoms,
                             int upto);

/// Hypothesis of the decay recursion: a_1 <= A and
/// a_{m+1} <= a_m (1 - t_m^2 a_m / A) for every m.
bool lemma_recursion_holds(std::span<const double> a_seq, double a_cap,
                           std::span<const double> t_seq);

/// Conclusion of the decay lemma: a_m <= A / (1 + sum_{k<m} t_k^2) for every
/// m.  Callers are expected to have established the recursion hypothesis.
bool check_lemma_sequence(std::span<const double> a_seq, double a_cap,
                          std::span<const double> t_seq);

/// Observed ||f_n|| for n = 1..steps+1 from a recorded run (f_1 = f).
std::vector<double> observed_residual_norms(const GreedyState& state);

/// A bound curve next to the observed residual norms of a run.
struct BoundTrace {
  double m_budget = 0.0;
  std::vector<double> t_seq;
  std::vector<double> weight_seq;  // v or r entries actually used
  std::vector<double> bound_curve;
  std::vector<double> observed_curve;
};

BoundTrace make_apriori_trace(double m_budget, const GreedyState& state);
BoundTrace make_posteriori_trace(double m_budget, const GreedyState& state);

}  // namespace afd2d
