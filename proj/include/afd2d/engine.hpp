#pragma once

#include <optional>
#include <string>
#include <variant>

#include "afd2d/greedy.hpp"
#include "afd2d/product_afd.hpp"

namespace afd2d {

enum class EngineKind { fd, ga, oga, afd, preoga };

const char* engine_name(EngineKind kind);
std::optional<EngineKind> parse_engine(const std::string& name);

/// Square-expansion engines count levels (level K holds K^2 coefficients);
/// the one-atom-per-step engines count steps directly.
bool is_square_engine(EngineKind kind);

/// Native step/level count needed to reach at least `terms` expansion terms.
int native_steps_for_terms(EngineKind kind, int terms);

/// Number of expansion terms available after `level` native steps.
int effective_terms_for_level(EngineKind kind, int level);

struct EngineConfig {
  ParameterGrid grid;  // candidate set (possibly radius-restricted)
  int steps = 1;       // native steps (levels for the square engines)
  GreedyOptions options;
};

using EngineResult = std::variant<ProductAfdResult, GreedyState>;

EngineResult run_engine(const Signal2D& f, EngineKind kind, const EngineConfig& config);

/// Partial reconstruction after `level` native steps.
Signal2D reconstruct_engine(const EngineResult& result, const TorusGrid& grid, int level);

/// Residual energy after each native step.
const std::vector<double>& residual_energies(const EngineResult& result);

int result_steps(const EngineResult& result);
double result_input_energy(const EngineResult& result);
RunStatus result_status(const EngineResult& result);

}  // namespace afd2d
