#pragma once

#include <stdexcept>
#include <string>

namespace curv4 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates one of its type invariants. `constraint()` names it.
class InvariantError : public Error {
 public:
  InvariantError(std::string constraint, const std::string& detail)
      : Error(constraint + ": " + detail), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// The traceless-Ricci block exceeds the Einstein tolerance.
class NonEinsteinError : public Error {
 public:
  explicit NonEinsteinError(double residual)
      : Error("input is not Einstein (traceless Ricci residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace curv4
