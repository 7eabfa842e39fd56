#pragma once

#include <vector>

#include "afd2d/dictionary.hpp"
#include "afd2d/run_status.hpp"
#include "afd2d/signal.hpp"

namespace afd2d {

/// Output of the square-expansion engines (adaptive and all-zero variants).
///
/// coeffs(k-1, l-1) = <f, B_k (x) B_l> for the two parameter sequences; the
/// level-K partial sum uses the upper-left K-by-K block.  step_energies[k-1]
/// is the selection objective attained at step k; residual_energy[k-1] is
/// ||f - S_k||^2 recomputed from the accumulated partial sum.
struct ProductAfdResult {
  TMParams a_seq;
  TMParams b_seq;
  CMatrix coeffs;
  std::vector<double> step_energies;
  std::vector<double> residual_energy;
  double input_energy = 0.0;
  RunStatus status = RunStatus::ok;

  int steps() const { return a_seq.size(); }
};

/// Selection objective at step k0 = len(a_prefix)+1: the energy captured by
/// the 2*k0-1 new coefficients when (a, b) is appended to the prefixes,
///   sum over max{k,l} = k0 of |<f, B_k (x) B_l>|^2.
/// Basis vectors are the closed-form functions rescaled to exact unit norm
/// under the grid quadrature, so the captured energy is measured in the same
/// inner product the coefficients use.
double objective_energy(const Signal2D& f, const TMParams& a_prefix,
                        const TMParams& b_prefix, const DiscPoint& a,
                        const DiscPoint& b);

/// Greedy square expansion: per step picks the candidate pair maximizing
/// objective_energy over grid x grid (strictly-greater scan, lexicographic
/// tie-break), then extends the coefficient matrix by its L-shaped band.
ProductAfdResult run_product_afd(const Signal2D& f, const ParameterGrid& grid,
                                 int steps, int threads = 1);

/// Square expansion with every parameter forced to the origin; coefficients
/// equal the nonnegative-mode Fourier coefficients of f.
ProductAfdResult run_fd(const Signal2D& f, int steps);

/// Level-K partial sum sum_{k,l<=K} coeffs(k-1,l-1) B_k (x) B_l on `grid`.
Signal2D partial_sum(const ProductAfdResult& result, const TorusGrid& grid, int level);

}  // namespace afd2d
