#pragma once

#include "afd2d/engine.hpp"
#include "afd2d/signal.hpp"

namespace afd2d {

/// Splitting record of a real signal F: per-axis means, grand mean, the
/// lifted signal F + F0 + G0 + c00, and its column-reversed companion.
struct RealSplit {
  Signal2D lift;
  Signal2D flip;
  RVector f0;   // mean over the second axis; one value per row
  RVector g0;   // mean over the first axis; one value per column
  double c00 = 0.0;
};

/// Computes the axis means and assembles lift and flip.
/// The input must be real up to 1e-12 relative imaginary residue.
RealSplit split_real(const Signal2D& f);

/// Keeps only frequency modes (k, l) with 0 <= k < m/2 and 0 <= l < n/2;
/// the reference projection the decompositions approximate.
Signal2D plus_projection(const Signal2D& f);

/// Reverses the second axis: out[p][q] = f[p][(n-q) mod n].
Signal2D flip_columns(const Signal2D& f);

struct RealDecomposition {
  EngineKind engine = EngineKind::fd;
  EngineResult lift_result;
  EngineResult flip_result;
  RealSplit split;
};

/// Runs the chosen engine on the lifted signal and on its flip.
RealDecomposition decompose_real(const Signal2D& f, EngineKind engine,
                                 const EngineConfig& config);

/// Real reconstruction after `level` native steps of both sub-decompositions:
///   2 Re{L - F0+ - G0+ - c00} + 2 Re{flipback(M) - F0+ - G0- - c00}
///     - F0 - G0 - c00,
/// where F0+/G0+/G0- are the one-axis nonnegative/nonpositive-mode
/// projections of the axis means.  The mean subtractions remove the
/// frequency-axis modes the two quadrant projections share; without them a
/// constant signal would be reconstructed 13-fold.
Signal2D reconstruct_real(const RealDecomposition& parts, int level);

}  // namespace afd2d
