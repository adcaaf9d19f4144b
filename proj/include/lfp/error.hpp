#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lfp {

enum class ErrorKind {
  MissingIdentity,
  NonAssociative,
  BadComposite,
  BadFunctor,
  BadIdentityAction,
  BadCompositeAction,
  BadNaturality,
  IndexMismatch,
  UnknownId,
  SizeBoundExceeded,
  StageBoundExceeded,
  NoRefinement,
  UnsupportedShape,
  UnsupportedValue,
  BudgetExceeded,
  BadRetraction,
  NotFiltered,
  ParseError,
  ValidationError,
  UnknownSuite,
  Cancelled,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `detail` names the offending cell
/// (a morphism pair, an element, a stage) so that messages are actionable.
class LfpError : public std::runtime_error {
public:
  LfpError(ErrorKind kind, std::string detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind), detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string detail) {
  throw LfpError(kind, std::move(detail));
}

} // namespace lfp
