#include "afd2d/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace afd2d {

const char* engine_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::fd: return "fd";
    case EngineKind::ga: return "ga";
    case EngineKind::oga: return "oga";
    case EngineKind::afd: return "afd";
    case EngineKind::preoga: return "preoga";
  }
  return "?";
}

std::optional<EngineKind> parse_engine(const std::string& name) {
  if (name == "fd") return EngineKind::fd;
  if (name == "ga") return EngineKind::ga;
  if (name == "oga") return EngineKind::oga;
  if (name == "afd") return EngineKind::afd;
  if (name == "preoga") return EngineKind::preoga;
  return std::nullopt;
}

bool is_square_engine(EngineKind kind) {
  return kind == EngineKind::fd || kind == EngineKind::afd;
}

int native_steps_for_terms(EngineKind kind, int terms) {
  if (terms < 1) throw std::invalid_argument("term count must be >= 1");
  if (!is_square_engine(kind)) return terms;
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(terms))));
}

int effective_terms_for_level(EngineKind kind, int level) {
  return is_square_engine(kind) ? level * level : level;
}

EngineResult run_engine(const Signal2D& f, EngineKind kind, const EngineConfig& config) {
  switch (kind) {
    case EngineKind::fd:
      return run_fd(f, config.steps);
    case EngineKind::afd:
      return run_product_afd(f, config.grid, config.steps, config.options.threads);
    case EngineKind::ga:
      return run_ga(f, config.grid, config.steps, config.options);
    case EngineKind::oga:
      return run_oga(f, config.grid, config.steps, config.options);
    case EngineKind::preoga:
      return run_preoga(f, config.grid, config.steps, config.options);
  }
  throw std::invalid_argument("unknown engine");
}

Signal2D reconstruct_engine(const EngineResult& result, const TorusGrid& grid, int level) {
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    return partial_sum(*square, grid, std::min(level, square->steps()));
  const auto& state = std::get<GreedyState>(result);
  return reconstruct(state, std::min(level, state.steps()));
}

const std::vector<double>& residual_energies(const EngineResult& result) {
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    return square->residual_energy;
  return std::get<GreedyState>(result).history;
}

int result_steps(const EngineResult& result) {
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    return square->steps();
  return std::get<GreedyState>(result).steps();
}

double result_input_energy(const EngineResult& result) {
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    return square->input_energy;
  return std::get<GreedyState>(result).input_energy;
}

RunStatus result_status(const EngineResult& result) {
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    return square->status;
  return std::get<GreedyState>(result).status;
}

}  // namespace afd2d
