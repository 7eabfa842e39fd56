#pragma once

#include <string>
#include <vector>

#include "afd2d/engine.hpp"

namespace afd2d {

/// Parsed command-line configuration.  Defaults mirror `--help`.
struct RunConfig {
  EngineKind engine = EngineKind::preoga;
  int terms = 25;
  int grid_nt = 8;
  int grid_ns = 8;
  double rmax = 0.95;
  double offset = 0.5;
  std::string input;
  std::string out_dir;
  int bins = 256;
  double tol = 1e-8;
  int max_multiplicity = 8;
  int threads = 1;
  int atoms = 6;
  double decay = 0.7;
  std::vector<int> levels = {1, 16, 64, 256};
  std::vector<double> t_seq;
};

/// Decomposes one input (PGM image through the real pipeline, complex CSV
/// directly) and writes term records, reconstructions, a residual map, and a
/// per-level metrics table.
int cmd_decompose(const RunConfig& config);

/// Reproduces the tensor-product test-signal experiment: 128x128 sampling,
/// the full 8x8 disc lattice, all five engines to 25 effective terms, with a
/// relative-error-vs-terms table in dB and the reconstruction image panel.
int cmd_toy(const RunConfig& config);

/// Runs all five engines on one image through the real pipeline and writes
/// metric and residual tables at the requested term counts.
int cmd_compare(const RunConfig& config);

/// Builds a synthetic signal with a known coefficient budget from on-grid
/// atoms, runs the two orthogonalizing engines, and writes the observed
/// residual norms next to their guarantee curves.
int cmd_bounds(const RunConfig& config);

/// Parses argv, dispatches, and maps failures to the documented exit codes
/// (0 success, 1 usage error, 2 I/O error, 3 numerical failure).
int run_cli(int argc, const char* const* argv);

}  // namespace afd2d
