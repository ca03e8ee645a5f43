#pragma once

#include <utility>
#include <vector>

#include "ptreal/matrix.hpp"
#include "ptreal/potential.hpp"
#include "ptreal/realify.hpp"

namespace ptreal {

inline constexpr double kDefaultClassifyTolerance = 1e-8;
/// Relative size below which a subdiagonal entry is treated as zero.
inline constexpr double kDeflationEpsilon = 1e-14;
inline constexpr int kMaxEigenDimension = 1024;

struct HessenbergForm {
  RMatrix h;  // zero below the first subdiagonal
  RMatrix q;  // orthogonal, q h q^T = m
};

/// Householder reduction to upper Hessenberg form.
HessenbergForm hessenberg(const RMatrix& m);

struct RealEigenResult {
  std::vector<cplx> eigenvalues;  // ascending by real part, then imaginary part
  double backward_error = 0.0;    // max |Z T Z^T - M| for the computed real Schur form
};

/// All eigenvalues of a real matrix by Francis double-shift QR.
///
/// Complex eigenvalues come out of 2x2 diagonal blocks of the real Schur form
/// and therefore as exact conjugate pairs. Throws non_convergence if the
/// iteration needs more than 40 N sweeps in total.
RealEigenResult eigenvalues_real(const RMatrix& m);

/// Eigenvalue ordering used throughout: real part, then imaginary part.
void sort_eigenvalues(std::vector<cplx>& values);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  std::vector<double> real_set;
  std::vector<std::pair<cplx, cplx>> pairs;  // (Im > 0, Im < 0)
  double tol_classify = kDefaultClassifyTolerance;
  double backward_error = 0.0;
  int n_basis = 0;
};

/// Splits a spectrum into real values and conjugate pairs. Both tests use
/// tol * max(1, max|eigenvalue|). Throws closure_violation when a complex
/// eigenvalue has no conjugate partner.
SpectrumReport classify_spectrum(const std::vector<cplx>& eigs, double tol);

/// eigenvalues_real followed by classify_spectrum.
SpectrumReport spectrum_report(const RMatrix& m, double tol);

struct SweepRow {
  int n_basis = 0;
  int level = 0;
  cplx value;
  double cauchy_diff = 0.0;  // |E(N) - E(N_prev)|, zero for the first N
};

/// Tracks the m_track eigenvalues of smallest modulus of the realified
/// Hamiltonian across ascending truncation sizes. Modulus rather than real
/// part: spurious truncation eigenvalues can have small real parts with
/// very large imaginary parts.
std::vector<SweepRow> convergence_sweep(const PotentialSpec& p, const std::vector<int>& n_list,
                                        int m_track);

/// Roots of a polynomial given highest-degree-first (leading coefficient
/// nonzero) by Durand-Kerner iteration. Small-N oracle for the eigensolver.
std::vector<cplx> durand_kerner(const std::vector<cplx>& coeffs);

}  // namespace ptreal
