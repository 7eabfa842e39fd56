#pragma once

#include "afd2d/signal.hpp"

namespace afd2d {

/// m-by-m matrix with entry [p][j] = e^{i j t_p}, t_p = 2*pi*(p+offset)/m.
/// Column j carries frequency bin j; bins above m/2 alias to negatives.
CMatrix character_matrix(int m, double offset);

/// Frequency-bin coefficients c[j][l] = (1/(mn)) sum_pq f[p][q] e^{-i(j t_p + l s_q)}.
CMatrix dft2d_bins(const Signal2D& f);

/// Inverse of dft2d_bins.
Signal2D idft2d_bins(const CMatrix& bins, const TorusGrid& grid);

CVector dft1d_bins(const CVector& v, double offset);
CVector idft1d_bins(const CVector& bins, double offset);

/// True when frequency bin j of an m-point axis represents a nonnegative
/// mode below the ambiguous half-way bin (j < m/2).
inline bool bin_is_plus(Eigen::Index j, int m) { return 2 * j < m; }

/// True for bins representing modes <= 0 (bin 0 plus the aliased negatives),
/// again excluding the half-way bin.
inline bool bin_is_minus(Eigen::Index j, int m) { return j == 0 || 2 * j > m; }

}  // namespace afd2d
