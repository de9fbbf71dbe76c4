#pragma once

#include <stdexcept>
#include <string>

namespace glv {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or precondition violation.
class domain_error : public error {
 public:
  using error::error;
};

// Physical parameters violate an admissibility hypothesis.
class hypothesis_error : public error {
 public:
  using error::error;
};

// A factorization hit a pivot that is zero to tolerance.
class singular_operator_error : public error {
 public:
  singular_operator_error(const std::string& what, int pivot_index)
      : error(what), pivot_index_(pivot_index) {}
  int pivot_index() const { return pivot_index_; }

 private:
  int pivot_index_;
};

// An iteration ran out of budget; carries the last residual seen.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double last_residual)
      : error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

// A solved profile violates a qualitative bound; names the failed check.
class property_violation_error : public error {
 public:
  property_violation_error(const std::string& what, std::string check)
      : error(what), check_(std::move(check)) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

// Right-hand side fails a kernel orthogonality gate; names the pairing.
class orthogonality_error : public error {
 public:
  orthogonality_error(const std::string& what, std::string pairing)
      : error(what), pairing_(std::move(pairing)) {}
  const std::string& pairing() const { return pairing_; }

 private:
  std::string pairing_;
};

// Operation supports only degree pair (1,1).
class unsupported_degree_error : public error {
 public:
  using error::error;
};

// File or directory problem.
class io_error : public error {
 public:
  using error::error;
};

// Malformed input document.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace glv
