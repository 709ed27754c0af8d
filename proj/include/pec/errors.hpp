#ifndef PEC_ERRORS_HPP
#define PEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pec {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. `line` is 1-based, 0 when not line-specific.
class ParseError : public Error {
  public:
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// An exhaustive check or search was refused because the instance exceeds the
/// configured size limit. Raised instead of returning a silently wrong answer.
class OversizeError : public Error {
  public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

}  // namespace pec

#endif  // PEC_ERRORS_HPP
