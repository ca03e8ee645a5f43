#pragma once

#include <string>

#include "ptreal/matrix.hpp"
#include "ptreal/oscillator_basis.hpp"

namespace ptreal {

inline constexpr double kUnitarityTolerance = 1e-12;
/// Absolute 2-norm below which a projected vector counts as annihilated.
inline constexpr double kZeroVectorThreshold = 1e-10;
inline constexpr double kAdaptedTolerance = 1e-10;

enum class AntiunitaryTag { pt_ho, custom };

/// Antiunitary involution A(v) = W conj(v) with W unitary and W conj(W) = I
/// (so that A^2 = 1). Construction validates both conditions.
class AntiunitaryRep {
 public:
  static AntiunitaryRep custom(CMatrix w);

  const CMatrix& unitary_part() const { return w_; }
  int n_basis() const { return static_cast<int>(w_.rows()); }
  AntiunitaryTag tag() const { return tag_; }

 private:
  AntiunitaryRep(CMatrix w, AntiunitaryTag tag) : w_(std::move(w)), tag_(tag) {}
  friend AntiunitaryRep pt_ho(int n_basis);

  CMatrix w_;
  AntiunitaryTag tag_;
};

/// PT in the oscillator basis: A|n> = (-1)^n |n>.
AntiunitaryRep pt_ho(int n_basis);

CVector apply(const AntiunitaryRep& a, std::span<const cplx> v);
// Exact-match overloads; otherwise ADL prefers std::apply for vector arguments.
inline CVector apply(const AntiunitaryRep& a, const CVector& v) {
  return apply(a, std::span<const cplx>(v));
}
inline CVector apply(const AntiunitaryRep& a, CVector& v) {
  return apply(a, std::span<const cplx>(v));
}
inline CVector apply(const AntiunitaryRep& a, CVector&& v) {
  return apply(a, std::span<const cplx>(v));
}

/// max |W conj(H) W^dagger - H|.
double check_a_symmetry(const OperatorMatrix& h, const AntiunitaryRep& a);

/// (v + sigma A v) / 2, which satisfies A w = sigma w.
CVector projector(const AntiunitaryRep& a, int sigma, std::span<const cplx> v);

enum class RecipeKind { bender, projector_phase, phase_power, porter };

struct Recipe {
  RecipeKind kind = RecipeKind::projector_phase;
  cplx porter_a = cplx(0.5, 0.5);

  static Recipe bender() { return {RecipeKind::bender, {}}; }
  static Recipe projector_phase() { return {RecipeKind::projector_phase, {}}; }
  static Recipe phase_power() { return {RecipeKind::phase_power, {}}; }
  static Recipe porter(cplx a) { return {RecipeKind::porter, a}; }
};

std::string to_string(const Recipe& r);

/// Basis of A-fixed vectors, one per column.
struct AdaptedBasis {
  CMatrix columns;  // n_basis rows, rank columns
  Recipe recipe;
  int rank = 0;
  int dropped = 0;
  double ortho_residual = 0.0;  // max |(V^dagger V - I)_mn|

  int n_basis() const { return static_cast<int>(columns.rows()); }
  bool complete() const { return rank == n_basis(); }
};

/// Builds an A-adapted basis from seed vectors (identity when seed is empty).
///
///  - bender: seed_j + A seed_j, annihilated vectors dropped and counted.
///    No completion is attempted, so the result is incomplete whenever the
///    seed contains vectors with A v = -v.
///  - projector_phase: Q+ seed_j and i Q- seed_j, then Gram-Schmidt.
///  - phase_power: i^n e_n; requires the pt_ho antiunitary.
///  - porter: a seed_j + conj(a) A seed_j, then Gram-Schmidt.
///
/// projector_phase and porter throw incomplete_basis if fewer than N
/// independent vectors survive.
AdaptedBasis adapted_basis(const AntiunitaryRep& a, const Recipe& recipe,
                           const CMatrix& seed = {});

/// max over columns of ||A v - v||_2.
double max_adapted_violation(const AntiunitaryRep& a, const CMatrix& columns);

}  // namespace ptreal
