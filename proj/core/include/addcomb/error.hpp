#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace addcomb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid group descriptor, or operands living in different groups.
class ContextError : public Error {
 public:
  using Error::Error;
};

// Element outside the canonical range, division by zero, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation needs a field (prime modulus) but the context is not one.
class FieldRequiredError : public Error {
 public:
  using Error::Error;
};

// An exact value does not fit the 64-bit element or 128-bit count range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// A matrix construction that would not be symmetric.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Iterative eigen-solver failed to reach the requested residual.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A brute-force oracle would exceed its configured work budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& op, long double work, std::uint64_t budget)
      : Error(op + ": estimated work " + format_work(work) + " exceeds budget " + std::to_string(budget)),
        work_(work),
        budget_(budget) {}
  long double work() const { return work_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string format_work(long double work) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", work);
    return buf;
  }

  long double work_;
  std::uint64_t budget_;
};

// Malformed JSON input; `position` is the offending array index, or -1.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, long position = -1)
      : Error(position >= 0 ? what + " (at index " + std::to_string(position) + ")" : what),
        position_(position) {}
  long position() const { return position_; }

 private:
  long position_;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace addcomb
