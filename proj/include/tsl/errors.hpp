#ifndef TSL_ERRORS_HPP
#define TSL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsl {

enum class ErrorCode {
  invalid_input,
  zero_constant_term,
  zero_coefficient,
  not_tame,
  inconsistent_gcd,
  inexact_division,
  root_isolation,
  undecidable_boundary,
  order_mismatch,
  guard_exceeded,
  non_meromorphic,
  sample_budget,
  inconclusive,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::zero_constant_term: return "zero-constant-term";
    case ErrorCode::zero_coefficient: return "zero-coefficient";
    case ErrorCode::not_tame: return "not-tame";
    case ErrorCode::inconsistent_gcd: return "inconsistent-gcd";
    case ErrorCode::inexact_division: return "inexact-division";
    case ErrorCode::root_isolation: return "root-isolation";
    case ErrorCode::undecidable_boundary: return "undecidable-boundary";
    case ErrorCode::order_mismatch: return "order-mismatch";
    case ErrorCode::guard_exceeded: return "guard-exceeded";
    case ErrorCode::non_meromorphic: return "non-meromorphic";
    case ErrorCode::sample_budget: return "sample-budget";
    case ErrorCode::inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Library error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsl

#endif  // TSL_ERRORS_HPP
