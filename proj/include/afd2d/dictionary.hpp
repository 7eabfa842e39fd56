#pragma once

#include <vector>

#include "afd2d/signal.hpp"

namespace afd2d {

/// A parameter strictly inside the unit disc.
struct DiscPoint {
  double re = 0.0;
  double im = 0.0;

  Complex value() const { return Complex(re, im); }
  double abs2() const { return re * re + im * im; }

  bool operator==(const DiscPoint& other) const = default;
};

/// Throws if |a| >= 1.
void require_in_disc(const DiscPoint& a);

/// Finite candidate set of disc points on a rectangular lattice.
struct ParameterGrid {
  int nt = 0;
  int ns = 0;
  std::vector<DiscPoint> points;
};

/// Lattice { (t/nt, s/ns) : integer t, s, strictly inside the disc },
/// enumerated in lexicographic (t, s) order.
ParameterGrid build_parameter_grid(int nt, int ns);

/// Subset of `grid` with |a| <= r_max, original order preserved.
ParameterGrid restrict_radius(const ParameterGrid& grid, double r_max);

/// Ordered parameter sequence of a 1D rational orthogonal system.
/// Repetitions are allowed and produce the higher-order kernels.
struct TMParams {
  std::vector<DiscPoint> seq;

  int size() const { return static_cast<int>(seq.size()); }
};

/// Samples the unit-norm Szego kernel family on the given circle points.
///
/// multiplicity 1: e_a(z) = sqrt(1-|a|^2) / (1 - conj(a) z).
/// multiplicity m >= 2: z -> 1/(1 - conj(a) z)^m, scaled to unit norm under
/// the discrete quadrature inner product on `axis_points`.
CVector eval_szego_1d(const DiscPoint& a, int multiplicity, const CVector& axis_points);

/// Samples B_k for k = params.size() by the closed form
///   B_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{l<k} (z-a_l)/(1 - conj(a_l) z).
CVector eval_tm_basis(const TMParams& params, const CVector& axis_points);

/// Rank-1 product atom: values[p][q] = u[p] * v[q] with
/// u = eval_szego_1d(a, ma, t points), v = eval_szego_1d(b, mb, s points).
Signal2D eval_product_atom(const DiscPoint& a, const DiscPoint& b, int ma, int mb,
                           const TorusGrid& grid);

/// Tensor product of the k-th and l-th basis functions of two 1D systems
/// (1-based k <= pa.size(), l <= pb.size()).
Signal2D eval_tm_product(const TMParams& pa, const TMParams& pb, int k, int l,
                         const TorusGrid& grid);

/// Blaschke product prod_l (z - a_l)/(1 - conj(a_l) z) over all of `params`,
/// sampled on the axis points.  The running product that turns one basis
/// function into the next; exposed for incremental candidate scans.
CVector blaschke_product(const TMParams& params, const CVector& axis_points);

}  // namespace afd2d
