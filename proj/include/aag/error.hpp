#pragma once

#include <stdexcept>
#include <string>

namespace aag {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad graph file, invalid schedule, bad labelling, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured budget. The question
/// is undecided; callers must never read this as a negative answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace aag
