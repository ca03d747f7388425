#pragma once

#include <stdexcept>
#include <string>

namespace wdro {

// Raised when caller-supplied data violates a documented precondition
// (dimension mismatch, alpha outside (0,1], unbounded polytope, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a numerical routine cannot produce an answer for a well-formed
// input (iteration limit, numerical breakdown).
class SolverFailure : public std::runtime_error {
 public:
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wdro
