#ifndef THETA2_ERRORS_HPP
#define THETA2_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace theta2 {

// All recoverable failures carry a stable machine-readable code alongside the
// human-readable message; the CLI maps them to structured JSON errors.
//
// Codes in use:
//   domain                  precondition violated (sizes, ranges, invariants)
//   bad-input               malformed serialized input
//   numeric-instability     ill-conditioned linear solve (e.g. C*Omega+D)
//   unattainable-accuracy   truncation radius cap reached before target error
//   ambiguous-characteristic  transformation-law match not unique
//   resample                degenerate sample (zero denominator, zero slice);
//                           caller should move the sample point
//   ill-conditioned-slice   winding integral refuses to become an integer
//   unresolved-classification  gradient norm falls in the tolerance gap
//   degenerate-input        input lattice vectors do not span rank 2
//   not-a-splitting         computed sublattices fail the splitting invariants
//   resource-limit          requested truncation exceeds desk-scale bounds
//   table-mismatch          a verification table row failed to reproduce
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(std::move(code)), context_(std::move(context)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

private:
  std::string code_;
  std::string context_;
};

} // namespace theta2

#endif
