#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptreal/antiunitary.hpp"
#include "ptreal/matrix.hpp"
#include "ptreal/oscillator_basis.hpp"

namespace ptreal {

inline constexpr double kDefaultRealityTolerance = 1e-10;
inline constexpr int kMaxCharPolyDimension = 16;

/// Real part of a transformed A-symmetric matrix. imag_residual is the
/// largest discarded imaginary magnitude (absolute).
struct RealMatrix {
  RMatrix entries;
  double imag_residual = 0.0;
  std::string source_label;

  int n() const { return static_cast<int>(entries.rows()); }
};

/// Diagonal of U = sum |2n><2n| + i |2n+1><2n+1|.
struct PhaseUnitary {
  CVector diagonal;

  int n_basis() const { return static_cast<int>(diagonal.size()); }
  CMatrix dense() const;
};

PhaseUnitary phase_unitary(int n_basis);

/// U H U^dagger, computed entrywise as u_m H_mn conj(u_n).
RealMatrix realify(const OperatorMatrix& h, const PhaseUnitary& u,
                   double tol = kDefaultRealityTolerance);

/// V^dagger H V for a complete adapted basis V.
RealMatrix realify(const OperatorMatrix& h, const AdaptedBasis& basis,
                   double tol = kDefaultRealityTolerance);

/// Monic characteristic polynomial det(lambda I - M) by Faddeev-LeVerrier.
/// Coefficients are ordered from lambda^N down to the constant term.
std::vector<cplx> char_poly(const CMatrix& m);
std::vector<cplx> char_poly(const RMatrix& m);

/// Signs d_i in {+1,-1} with d_i a_ij d_j ~= b_ij, found by propagating the
/// sign along the strongest couplings. Returns the signs and the residual
/// max |d_i a_ij d_j - b_ij|.
struct SignSimilarity {
  std::vector<int> signs;
  double deviation = 0.0;
};

SignSimilarity match_sign_similarity(const RMatrix& a, const RMatrix& b);

}  // namespace ptreal
