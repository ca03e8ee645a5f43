#include "ptreal/realify.hpp"

#include <sstream>

namespace ptreal {
namespace {

RealMatrix take_real_part(const CMatrix& c, double tol, std::string label) {
  RealMatrix out;
  out.entries = RMatrix(c.rows(), c.cols());
  double scale = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      out.entries(i, j) = c(i, j).real();
      out.imag_residual = std::max(out.imag_residual, std::abs(c(i, j).imag()));
      scale = std::max(scale, std::abs(c(i, j)));
    }
  out.source_label = std::move(label);
  if (out.imag_residual > tol * scale) {
    std::ostringstream os;
    os << "reality violation: imaginary residual " << out.imag_residual << " exceeds " << tol
       << " * max|entry| (" << scale << ")";
    throw Error(ErrorKind::reality_violation, os.str());
  }
  return out;
}

template <typename T>
std::vector<cplx> faddeev_leverrier(const Matrix<T>& a) {
  if (!a.square()) throw Error(ErrorKind::invalid_input, "char_poly: matrix must be square");
  const std::size_t n = a.rows();
  if (n > static_cast<std::size_t>(kMaxCharPolyDimension)) {
    throw Error(ErrorKind::invalid_input, "char_poly: dimension " + std::to_string(n) +
                                              " exceeds " +
                                              std::to_string(kMaxCharPolyDimension));
  }
  CMatrix ac(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ac(i, j) = a(i, j);

  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
  std::vector<cplx> coeffs(n + 1);
  coeffs[0] = 1.0;
  CMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix next = ac * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[k - 1];
    const CMatrix am = ac * next;
    cplx trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    coeffs[k] = -trace / static_cast<double>(k);
    m = std::move(next);
  }
  return coeffs;
}

}  // namespace

CMatrix PhaseUnitary::dense() const {
  CMatrix u(diagonal.size(), diagonal.size());
  for (std::size_t i = 0; i < diagonal.size(); ++i) u(i, i) = diagonal[i];
  return u;
}

PhaseUnitary phase_unitary(int n_basis) {
  if (n_basis < 2) throw Error(ErrorKind::invalid_input, "basis size must be at least 2");
  PhaseUnitary u;
  u.diagonal.resize(static_cast<std::size_t>(n_basis));
  for (std::size_t i = 0; i < u.diagonal.size(); ++i)
    u.diagonal[i] = (i % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  return u;
}

RealMatrix realify(const OperatorMatrix& h, const PhaseUnitary& u, double tol) {
  const std::size_t n = h.entries.rows();
  if (u.diagonal.size() != n) {
    throw Error(ErrorKind::invalid_input, "realify: phase unitary dimension mismatch");
  }
  CMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t(i, j) = u.diagonal[i] * h.entries(i, j) * std::conj(u.diagonal[j]);
  return take_real_part(t, tol, h.label + " [phase_unitary]");
}

RealMatrix realify(const OperatorMatrix& h, const AdaptedBasis& basis, double tol) {
  if (!basis.complete()) {
    throw Error(ErrorKind::incomplete_basis,
                "realify: basis has rank " + std::to_string(basis.rank) + " of " +
                    std::to_string(basis.n_basis()));
  }
  if (basis.columns.rows() != h.entries.rows()) {
    throw Error(ErrorKind::invalid_input, "realify: basis dimension mismatch");
  }
  if (basis.ortho_residual > 1e-10) {
    throw Error(ErrorKind::invalid_input, "realify: " + to_string(basis.recipe) +
                                              " basis is not orthonormal");
  }
  const CMatrix t = adjoint(basis.columns) * (h.entries * basis.columns);
  return take_real_part(t, tol, h.label + " [" + to_string(basis.recipe) + "]");
}

std::vector<cplx> char_poly(const CMatrix& m) { return faddeev_leverrier(m); }
std::vector<cplx> char_poly(const RMatrix& m) { return faddeev_leverrier(m); }

SignSimilarity match_sign_similarity(const RMatrix& a, const RMatrix& b) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::invalid_input, "sign similarity: shapes differ");
  }
  const std::size_t n = a.rows();
  SignSimilarity out;
  out.signs.assign(n, 0);
  for (std::size_t assigned = 0; assigned < n; ++assigned) {
    // Pick the unassigned index most strongly coupled to an assigned one.
    std::size_t best = n, anchor = n;
    double strength = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out.signs[j] != 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (out.signs[i] == 0) continue;
        const double s = std::max(std::abs(a(i, j)), std::abs(a(j, i)));
        if (s > strength) {
          strength = s;
          best = j;
          anchor = i;
        }
      }
      if (best == n) best = j;
    }
    if (anchor == n || strength == 0.0) {
      out.signs[best] = 1;
      continue;
    }
    const bool row = std::abs(a(anchor, best)) >= std::abs(a(best, anchor));
    const double ratio = row ? b(anchor, best) * a(anchor, best) : b(best, anchor) * a(best, anchor);
    out.signs[best] = out.signs[anchor] * (ratio < 0.0 ? -1 : 1);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.deviation = std::max(
          out.deviation, std::abs(out.signs[i] * a(i, j) * out.signs[j] - b(i, j)));
  return out;
}

}  // namespace ptreal
