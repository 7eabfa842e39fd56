#pragma once

#include <string>

#include "afd2d/signal.hpp"

namespace afd2d {

/// Reads an 8-bit grayscale PGM (P2 or P5); pixel values become reals in
/// [0, 255].  Row index maps to the first signal axis.
RMatrix read_pgm(const std::string& path);

/// Writes a binary (P5) 8-bit PGM; values are clamped to [0, 255] and
/// rounded to the nearest integer.
void write_pgm(const std::string& path, const RMatrix& image);

/// Complex-signal CSV: a header line `m,n,offset` followed by one
/// `p,q,re,im` row per sample, floats rendered as %.12e.
void write_signal_csv(const std::string& path, const Signal2D& f);
Signal2D read_signal_csv(const std::string& path);

/// %.12e rendering used by every CSV emitter.
std::string format_float(double v);

}  // namespace afd2d
