#include "ptreal/antiunitary.hpp"

#include <sstream>

namespace ptreal {
namespace {

void require_size(const AntiunitaryRep& a, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(a.n_basis()) != n) {
    throw Error(ErrorKind::invalid_input,
                std::string(what) + ": dimension " + std::to_string(n) +
                    " does not match antiunitary dimension " + std::to_string(a.n_basis()));
  }
}

double ortho_residual(const CMatrix& v) {
  const CMatrix gram = adjoint(v) * v;
  double r = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      r = std::max(r, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return r;
}

CMatrix from_columns(std::size_t n, const std::vector<CVector>& cols) {
  CMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  return m;
}

// Modified Gram-Schmidt with a second pass. For A-fixed vectors the overlaps
// are real, so only their real parts are subtracted; this keeps every output
// column A-fixed. A candidate is skipped when less than 1e-10 of its norm
// survives orthogonalization.
std::vector<CVector> orthonormalize(const std::vector<CVector>& candidates, std::size_t limit) {
  std::vector<CVector> basis;
  for (const auto& c : candidates) {
    if (basis.size() == limit) break;
    CVector v = c;
    const double original = norm2(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const double overlap = inner(q, v).real();
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= overlap * q[i];
      }
    }
    const double norm = norm2(v);
    if (norm < kZeroVectorThreshold * std::max(1.0, original)) continue;
    for (auto& z : v) z /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

AntiunitaryRep AntiunitaryRep::custom(CMatrix w) {
  if (!w.square() || w.rows() < 2) {
    throw Error(ErrorKind::invalid_input, "antiunitary: W must be square with n >= 2");
  }
  const std::size_t n = w.rows();
  const CMatrix eye = CMatrix::identity(n);
  const double unitarity = max_abs(adjoint(w) * w - eye);
  if (unitarity > kUnitarityTolerance) {
    std::ostringstream os;
    os << "antiunitary: W is not unitary (max |W^dagger W - I| = " << unitarity << ")";
    throw Error(ErrorKind::invalid_input, os.str());
  }
  const double involution = max_abs(w * conj(w) - eye);
  if (involution > kUnitarityTolerance) {
    std::ostringstream os;
    os << "antiunitary: A^2 != 1 (max |W conj(W) - I| = " << involution << ")";
    throw Error(ErrorKind::invalid_input, os.str());
  }
  return AntiunitaryRep(std::move(w), AntiunitaryTag::custom);
}

AntiunitaryRep pt_ho(int n_basis) {
  if (n_basis < 2) throw Error(ErrorKind::invalid_input, "basis size must be at least 2");
  const auto n = static_cast<std::size_t>(n_basis);
  CMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) w(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  return AntiunitaryRep(std::move(w), AntiunitaryTag::pt_ho);
}

CVector apply(const AntiunitaryRep& a, std::span<const cplx> v) {
  require_size(a, v.size(), "apply");
  const CMatrix& w = a.unitary_part();
  CVector out(v.size());
  if (a.tag() == AntiunitaryTag::pt_ho) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = w(i, i) * std::conj(v[i]);
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += w(i, j) * std::conj(v[j]);
    out[i] = s;
  }
  return out;
}

double check_a_symmetry(const OperatorMatrix& h, const AntiunitaryRep& a) {
  require_size(a, h.entries.rows(), "check_a_symmetry");
  const CMatrix& m = h.entries;
  const std::size_t n = m.rows();
  double violation = 0.0;
  if (a.tag() == AntiunitaryTag::pt_ho) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        violation = std::max(violation, std::abs(sign * std::conj(m(i, j)) - m(i, j)));
      }
    return violation;
  }
  const CMatrix& w = a.unitary_part();
  return max_abs(w * conj(m) * adjoint(w) - m);
}

CVector projector(const AntiunitaryRep& a, int sigma, std::span<const cplx> v) {
  if (sigma != 1 && sigma != -1) throw Error(ErrorKind::invalid_input, "sigma must be +1 or -1");
  const CVector av = apply(a, v);
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.5 * (v[i] + double(sigma) * av[i]);
  return out;
}

std::string to_string(const Recipe& r) {
  switch (r.kind) {
    case RecipeKind::bender:
      return "bender";
    case RecipeKind::projector_phase:
      return "projector_phase";
    case RecipeKind::phase_power:
      return "phase_power";
    case RecipeKind::porter: {
      std::ostringstream os;
      os << "porter(" << r.porter_a.real() << (r.porter_a.imag() < 0 ? "-" : "+")
         << std::abs(r.porter_a.imag()) << "i)";
      return os.str();
    }
  }
  return "unknown";
}

AdaptedBasis adapted_basis(const AntiunitaryRep& a, const Recipe& recipe, const CMatrix& seed) {
  const auto n = static_cast<std::size_t>(a.n_basis());
  const CMatrix seeds = seed.rows() == 0 ? CMatrix::identity(n) : seed;
  if (seeds.rows() != n || seeds.cols() != n) {
    throw Error(ErrorKind::invalid_input, "seed basis must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
  }
  if (seed.rows() != 0 && max_abs(adjoint(seeds) * seeds - CMatrix::identity(n)) > 1e-10) {
    throw Error(ErrorKind::invalid_input, "seed basis is not unitary");
  }

  AdaptedBasis out;
  out.recipe = recipe;

  if (recipe.kind == RecipeKind::phase_power) {
    if (a.tag() != AntiunitaryTag::pt_ho) {
      throw Error(ErrorKind::invalid_input, "phase_power recipe requires the pt_ho antiunitary");
    }
    static constexpr cplx kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    out.columns = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) out.columns(i, i) = kPowers[i % 4];
    out.rank = static_cast<int>(n);
    out.ortho_residual = ortho_residual(out.columns);
    return out;
  }

  if (recipe.kind == RecipeKind::bender) {
    std::vector<CVector> kept;
    for (std::size_t j = 0; j < n; ++j) {
      const CVector s = seeds.column(j);
      const CVector as = apply(a, s);
      CVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = s[i] + as[i];
      if (norm2(v) < kZeroVectorThreshold) {
        ++out.dropped;
        continue;
      }
      kept.push_back(std::move(v));
    }
    out.columns = from_columns(n, kept);
    out.rank = static_cast<int>(kept.size());
    out.ortho_residual = ortho_residual(out.columns);
    return out;
  }

  std::vector<CVector> candidates;
  const cplx i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const CVector s = seeds.column(j);
    if (recipe.kind == RecipeKind::projector_phase) {
      CVector plus = projector(a, 1, s);
      CVector minus = projector(a, -1, s);
      for (auto& z : minus) z *= i_unit;
      if (norm2(plus) >= kZeroVectorThreshold) candidates.push_back(std::move(plus));
      if (norm2(minus) >= kZeroVectorThreshold) candidates.push_back(std::move(minus));
    } else {
      const CVector as = apply(a, s);
      CVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = recipe.porter_a * s[i] + std::conj(recipe.porter_a) * as[i];
      if (norm2(v) >= kZeroVectorThreshold) candidates.push_back(std::move(v));
    }
  }
  const auto kept = orthonormalize(candidates, n);
  if (kept.size() < n) {
    throw Error(ErrorKind::incomplete_basis,
                to_string(recipe) + " recipe produced only " + std::to_string(kept.size()) +
                    " independent vectors of " + std::to_string(n));
  }
  out.columns = from_columns(n, kept);
  out.rank = static_cast<int>(n);
  out.ortho_residual = ortho_residual(out.columns);
  return out;
}

double max_adapted_violation(const AntiunitaryRep& a, const CMatrix& columns) {
  double worst = 0.0;
  for (std::size_t j = 0; j < columns.cols(); ++j) {
    const CVector v = columns.column(j);
    const CVector av = apply(a, v);
    CVector d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = av[i] - v[i];
    worst = std::max(worst, norm2(d));
  }
  return worst;
}

}  // namespace ptreal
