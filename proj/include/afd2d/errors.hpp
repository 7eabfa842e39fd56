#pragma once

#include <stdexcept>
#include <string>

namespace afd2d {

/// I/O failure (missing file, malformed image or CSV payload).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Base class for failures of the decomposition itself.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when every remaining dictionary element lies in the selected span.
class ExhaustedDictionaryError : public NumericalError {
 public:
  explicit ExhaustedDictionaryError(const std::string& what) : NumericalError(what) {}
};

/// Raised when multiplicity escalation exceeds the configured cap.
class EscalationLimitError : public NumericalError {
 public:
  explicit EscalationLimitError(const std::string& what) : NumericalError(what) {}
};

}  // namespace afd2d
