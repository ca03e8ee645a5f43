#pragma once

#include <string>

#include "ptreal/matrix.hpp"
#include "ptreal/potential.hpp"

namespace ptreal {

/// Largest matrix dimension any builder will allocate (basis size plus padding).
inline constexpr int kMaxDimension = 4096;

enum class BasisTag { ho, raw };

std::string to_string(BasisTag tag);
BasisTag basis_tag_from_string(const std::string& s);

/// Dense complex operator matrix in a truncated basis.
struct OperatorMatrix {
  CMatrix entries;
  int n_basis = 0;
  BasisTag basis = BasisTag::raw;
  std::string label;

  /// Wraps a square matrix, checking n >= 2.
  static OperatorMatrix make(CMatrix entries, BasisTag basis, std::string label = {});
};

// Matrix elements below are in the eigenbasis of H0 = p^2 + x^2, whose
// eigenvalues are 2n+1 and whose eigenfunctions are real with parity (-1)^n.

/// <m|x|n> for m, n < n_basis + pad.
RMatrix position_matrix(int n_basis, int pad);

RMatrix momentum_squared_matrix(int n_basis);

/// Exact <m|x^k|n> for m, n < n_basis. The k-th power is taken in dimension
/// n_basis + k and then truncated, so no matrix element loses contributions
/// from intermediate states beyond the cut.
RMatrix monomial_matrix(int k, int n_basis);

/// H = p^2 + V(x), tagged BasisTag::ho.
OperatorMatrix hamiltonian_matrix(const PotentialSpec& p, int n_basis);

}  // namespace ptreal
