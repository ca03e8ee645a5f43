#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptreal/matrix.hpp"

namespace ptreal {

inline constexpr int kMaxPotentialDegree = 16;

struct PotentialTerm {
  int power = 0;
  cplx coefficient;

  bool operator==(const PotentialTerm&) const = default;
};

/// Polynomial potential V(x) = sum c_k x^k obeying V(-x)* = V(x).
///
/// Even powers carry real coefficients and odd powers imaginary ones; the
/// check is an exact zero test on the forbidden component. Terms are kept
/// sorted by power with zero coefficients removed. An empty term list is a
/// valid value (the even or odd half of a decomposition may be empty), but
/// parse_potential rejects it.
class PotentialSpec {
 public:
  PotentialSpec() = default;

  /// Validates and normalizes. Throws Error(invalid_input) on a negative or
  /// too-large power, a duplicate power, or a PT violation.
  static PotentialSpec from_terms(std::vector<PotentialTerm> terms);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? 0 : terms_.back().power; }

  /// Dense coefficient list indexed by power, length degree()+1.
  std::vector<cplx> dense_coefficients() const;

  bool operator==(const PotentialSpec&) const = default;

 private:
  std::vector<PotentialTerm> terms_;
};

PotentialSpec parse_potential(std::string_view text);
std::string serialize_potential(const PotentialSpec& p);

struct PotentialParts {
  PotentialSpec even;
  PotentialSpec odd;
};

PotentialParts decompose(const PotentialSpec& p);
PotentialSpec recombine(const PotentialParts& parts);

cplx evaluate(const PotentialSpec& p, cplx x);

/// Message when the leading term is even with a negative coefficient, i.e.
/// the potential is probably not confining. The potential is still valid.
std::optional<std::string> confinement_warning(const PotentialSpec& p);

std::string describe(const PotentialSpec& p);

}  // namespace ptreal
