#pragma once

#include <stdexcept>
#include <string>

namespace ptreal {

enum class ErrorKind {
  invalid_input,      // malformed data, PT violation, dimension mismatch
  io,                 // file could not be read or written
  incomplete_basis,   // adapted basis has fewer than N columns
  reality_violation,  // imaginary residual above tolerance
  non_convergence,    // QR iteration stalled
  closure_violation,  // spectrum not closed under conjugation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ptreal
