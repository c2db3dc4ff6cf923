#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace levgas {

/// Base error with a stable machine-readable category, used for CLI exit
/// codes and structured stderr reporting.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

struct NonHermitianInput : Error {
  explicit NonHermitianInput(const std::string& message)
      : Error("non_hermitian_input", message) {}
};

struct AmbiguousAlignment : Error {
  explicit AmbiguousAlignment(const std::string& message)
      : Error("ambiguous_alignment", message) {}
};

/// Raised when level gaps fall below the configured floor in strict mode, or
/// when initialization is attempted at a crossing. Carries the time of
/// failure when known (NaN otherwise).
struct DegenerateLevels : Error {
  explicit DegenerateLevels(const std::string& message,
                            double when = std::numeric_limits<double>::quiet_NaN())
      : Error("degenerate_levels", message), time(when) {}
  double time;
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& message) : Error("out_of_range", message) {}
};

struct InvalidSchedule : Error {
  explicit InvalidSchedule(const std::string& message)
      : Error("invalid_schedule", message) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& message)
      : Error("dimension_mismatch", message) {}
};

struct NonPositiveStep : Error {
  explicit NonPositiveStep(const std::string& message)
      : Error("non_positive_step", message) {}
};

struct GridMismatch : Error {
  explicit GridMismatch(const std::string& message) : Error("grid_mismatch", message) {}
};

struct SchemaMismatch : Error {
  explicit SchemaMismatch(const std::string& message)
      : Error("schema_mismatch", message) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

struct IoError : Error {
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace levgas
