#pragma once

#include <stdexcept>
#include <string>

namespace heatjet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient roles that have no defined product or pairing.
class RoleError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A violated precondition on integer arguments (negative orders, r < k, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input jets are not truncated high enough for the requested exact output.
/// `required` is the smallest truncation degree that would have sufficed.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required, int available)
      : Error(what + " (required degree " + std::to_string(required) +
              ", available " + std::to_string(available) + ")"),
        required_(required),
        available_(available) {}

  int required() const noexcept { return required_; }
  int available() const noexcept { return available_; }

 private:
  int required_;
  int available_;
};

/// Malformed input text (JSON structure, rational literals, field types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Geometric input that violates the normal-coordinate assumptions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The value of a difference-operator coefficient D_r has a piece of
/// polynomial degree s > r. This is impossible for a generalized Laplacian in
/// normal coordinates, so it signals bad input or an upstream truncation bug.
class OrderBoundViolation : public Error {
 public:
  OrderBoundViolation(int r, int s, const std::string& what)
      : Error(what), r_(r), s_(s) {}

  int r() const noexcept { return r_; }
  int s() const noexcept { return s_; }

 private:
  int r_;
  int s_;
};

}  // namespace heatjet
