#pragma once

#include <stdexcept>
#include <string>

namespace polyharmonia {

/// Evaluation left the analytic domain: a holomorphic branch was fed a value
/// on the cut (-inf, 0], or a jet division hit a zero value coefficient.
class EvaluationDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested iterated-Laplacian order exceeds the supported ceiling.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sampling campaign could not place enough points inside the domain W.
class InconclusiveDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyharmonia
