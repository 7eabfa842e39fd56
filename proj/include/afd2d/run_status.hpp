#pragma once

namespace afd2d {

/// Outcome flag of a decomposition run.
enum class RunStatus {
  ok,
  zero_input,  // input had zero energy; result is empty
};

}  // namespace afd2d
