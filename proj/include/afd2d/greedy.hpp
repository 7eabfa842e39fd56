#pragma once

#include <vector>

#include "afd2d/dictionary.hpp"
#include "afd2d/run_status.hpp"
#include "afd2d/signal.hpp"

namespace afd2d {

/// One selected dictionary element: a parameter pair plus per-axis kernel
/// multiplicities (always (1,1) for the non-escalating engines).
struct AtomRef {
  DiscPoint a;
  DiscPoint b;
  int ma = 1;
  int mb = 1;

  bool operator==(const AtomRef& other) const = default;
};

struct GreedyOptions {
  /// An atom whose distance to the selected span falls at or below this is
  /// treated as linearly dependent.
  double in_span_tol = 1e-8;
  /// Per-axis cap on kernel multiplicity escalation.
  int max_multiplicity = 8;
  /// Weakness factors t_k in (0,1]; missing entries default to 1 (strict
  /// maximal selection).
  std::vector<double> t_seq;
  int threads = 1;
};

/// Evolving (then frozen) record of a greedy run.
///
/// coeffs[k] is <f, xi_k> for the orthogonalizing engines and the one-term
/// update coefficient <g_k, atom_k> for the plain engine; history[k] is the
/// residual energy after step k+1.
struct GreedyState {
  TorusGrid grid;
  std::vector<AtomRef> atoms;
  std::vector<Signal2D> ortho;  // empty for the plain engine
  std::vector<Complex> coeffs;
  Signal2D residual;
  std::vector<double> v_seq;  // ||psi_k - P psi_k|| per step
  std::vector<double> history;
  double input_energy = 0.0;
  RunStatus status = RunStatus::ok;

  int steps() const { return static_cast<int>(atoms.size()); }
};

struct GramSchmidtOutcome {
  bool in_span = false;
  Signal2D xi;     // unit vector orthogonal to `ortho`; empty when in_span
  double r = 0.0;  // distance of psi to the span
};

/// Orthogonal extension with one re-orthogonalization pass (project twice).
/// Returns in_span when the distance r of psi to span(ortho) is <= tol.
GramSchmidtOutcome gram_schmidt_extend(const std::vector<Signal2D>& ortho,
                                       const Signal2D& psi, double tol);

/// Plain greedy pursuit: per step picks the pair maximizing |<g, atom>| and
/// subtracts the rank-1 update.
GreedyState run_ga(const Signal2D& f, const ParameterGrid& grid, int steps,
                   const GreedyOptions& options = {});

/// Orthogonal greedy pursuit: same selection as the plain engine but the
/// residual is kept orthogonal to the span of all selected atoms; atoms that
/// fall inside the span are skipped in favor of the next-best candidate.
GreedyState run_oga(const Signal2D& f, const ParameterGrid& grid, int steps,
                    const GreedyOptions& options = {});

/// Pre-orthogonal greedy pursuit: maximizes |<g, psi>| / ||psi - P psi||
/// (the gain of the orthogonalized direction); candidates absorbed by the
/// span escalate their kernel multiplicity instead of dropping out.
GreedyState run_preoga(const Signal2D& f, const ParameterGrid& grid, int steps,
                       const GreedyOptions& options = {});

/// Partial expansion from the first K recorded terms.
Signal2D reconstruct(const GreedyState& state, int level);

/// Product atom rescaled axis-wise to exact unit norm under the grid
/// quadrature; the form of atom the engines select and expand over.
Signal2D normalized_atom(const AtomRef& atom, const TorusGrid& grid);

}  // namespace afd2d
