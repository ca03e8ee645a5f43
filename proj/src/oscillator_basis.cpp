#include "ptreal/oscillator_basis.hpp"

namespace ptreal {
namespace {

void require_basis_size(int n_basis) {
  if (n_basis < 2) {
    throw Error(ErrorKind::invalid_input,
                "basis size must be at least 2 (got " + std::to_string(n_basis) + ")");
  }
}

}  // namespace

std::string to_string(BasisTag tag) { return tag == BasisTag::ho ? "ho" : "raw"; }

BasisTag basis_tag_from_string(const std::string& s) {
  if (s == "ho") return BasisTag::ho;
  if (s == "raw") return BasisTag::raw;
  throw Error(ErrorKind::invalid_input, "unknown basis tag '" + s + "'");
}

OperatorMatrix OperatorMatrix::make(CMatrix entries, BasisTag basis, std::string label) {
  if (!entries.square()) throw Error(ErrorKind::invalid_input, "operator matrix must be square");
  const int n = static_cast<int>(entries.rows());
  require_basis_size(n);
  return {std::move(entries), n, basis, std::move(label)};
}

RMatrix position_matrix(int n_basis, int pad) {
  require_basis_size(n_basis);
  if (pad < 0) throw Error(ErrorKind::invalid_input, "padding must be non-negative");
  if (n_basis > kMaxDimension - pad) {
    throw Error(ErrorKind::invalid_input,
                "dimension " + std::to_string(static_cast<long>(n_basis) + pad) +
                    " exceeds the limit " + std::to_string(kMaxDimension));
  }
  const auto dim = static_cast<std::size_t>(n_basis + pad);
  RMatrix x(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) {
    const double v = std::sqrt(static_cast<double>(n) / 2.0);
    x(n - 1, n) = v;
    x(n, n - 1) = v;
  }
  return x;
}

RMatrix momentum_squared_matrix(int n_basis) {
  require_basis_size(n_basis);
  if (n_basis > kMaxDimension) {
    throw Error(ErrorKind::invalid_input, "basis size exceeds " + std::to_string(kMaxDimension));
  }
  const auto dim = static_cast<std::size_t>(n_basis);
  RMatrix p2(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    p2(n, n) = static_cast<double>(n) + 0.5;
    if (n + 2 < dim) {
      const double v = -std::sqrt(static_cast<double>((n + 1) * (n + 2))) / 2.0;
      p2(n, n + 2) = v;
      p2(n + 2, n) = v;
    }
  }
  return p2;
}

RMatrix monomial_matrix(int k, int n_basis) {
  if (k < 0 || k > kMaxPotentialDegree) {
    throw Error(ErrorKind::invalid_input, "monomial power " + std::to_string(k) +
                                              " outside [0, " +
                                              std::to_string(kMaxPotentialDegree) + "]");
  }
  const RMatrix x = position_matrix(n_basis, k);
  const std::size_t dim = x.rows();

  // power <- power * x, exploiting that x is tridiagonal with zero diagonal.
  RMatrix power = RMatrix::identity(dim);
  for (int step = 0; step < k; ++step) {
    RMatrix next(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        double s = 0.0;
        if (j > 0) s += power(i, j - 1) * x(j - 1, j);
        if (j + 1 < dim) s += power(i, j + 1) * x(j + 1, j);
        next(i, j) = s;
      }
    }
    power = std::move(next);
  }

  const auto n = static_cast<std::size_t>(n_basis);
  RMatrix out(n, n);
  // Mirror the upper triangle so the result is exactly symmetric.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out(i, j) = out(j, i) = power(i, j);
  return out;
}

OperatorMatrix hamiltonian_matrix(const PotentialSpec& p, int n_basis) {
  const RMatrix p2 = momentum_squared_matrix(n_basis);
  const auto n = static_cast<std::size_t>(n_basis);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = p2(i, j);
  for (const auto& term : p.terms()) {
    const RMatrix xk = monomial_matrix(term.power, n_basis);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) += term.coefficient * xk(i, j);
  }
  return OperatorMatrix::make(std::move(h), BasisTag::ho, "p^2 + " + describe(p));
}

}  // namespace ptreal
