#pragma once

#include <stdexcept>
#include <string>

namespace expscatter {

/// Input outside the mathematical domain of an operation (negative energy,
/// pole of the gamma function, non-positive Bessel argument).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Order too close to zero for the imaginary-order Hankel assembly, or a
/// quantity whose defining denominator vanishes.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point outside the range where results are certified.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A numerical result did not reach its tolerance. Carries the residual
/// that was measured.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A solver precondition on the problem setup does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad command-line request: unknown model, inconsistent flags, nothing to
/// plot.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; line is 1-based, 0 if not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace expscatter
