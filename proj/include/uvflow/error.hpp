#ifndef UVFLOW_ERROR_HPP
#define UVFLOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uvflow {

// Every failure in the library carries one of these kinds so callers
// (and tests) can dispatch on the condition rather than parse messages.
enum class ErrorKind {
    ArityMismatch,
    ParamArityMismatch,
    IndexOutOfRange,
    NotSquare,
    TooLarge,
    ZeroU,
    ZeroLeadCoordinate,
    NonConvergent,
    AllHigherOrdersZero,
    InnerNotPositiveValuation,
    NotRevertible,
    NotUnit,
    ValuationNotDivisible,
    LeadingNotPerfectPower,
    DivisionByZeroValuation,
    TruncationInsufficient,
    OrderRequired,
    InexactDivision,
    ZeroPsi,
    UnsupportedOrder,
    BranchAmbiguous,
    BadInput,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace uvflow

#endif
