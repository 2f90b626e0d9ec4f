#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fgauss {

enum class Errc {
  invalid_dimension,
  invalid_parameter,
  unsupported_order,
  degenerate_vector,
  kind_mismatch,
  dim_mismatch,
  out_of_range,
  numerical_failure,
  no_levels,
  capacity_exceeded,
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::unsupported_order: return "unsupported-order";
    case Errc::degenerate_vector: return "degenerate-vector";
    case Errc::kind_mismatch: return "kind-mismatch";
    case Errc::dim_mismatch: return "dim-mismatch";
    case Errc::out_of_range: return "out-of-range";
    case Errc::numerical_failure: return "numerical-failure";
    case Errc::no_levels: return "no-levels";
    case Errc::capacity_exceeded: return "capacity-exceeded";
  }
  return "unknown";
}

/// Every failure in the library surfaces as this exception. The code is the
/// machine-readable part; `residual()` is set for numerical failures that
/// have a measured defect attached.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<double> residual = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        residual_(residual) {}

  Errc code() const noexcept { return code_; }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  Errc code_;
  std::optional<double> residual_;
};

namespace detail {

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

inline void require_positive(double value, const char* name) {
  // NaN fails this comparison as well.
  if (!(value > 0.0)) {
    throw Error(Errc::invalid_parameter, std::string(name) + " must be positive");
  }
}

}  // namespace detail
}  // namespace fgauss
