#include "ptreal/verify.hpp"

#include <algorithm>
#include <sstream>

#include "ptreal/oscillator_basis.hpp"
#include "ptreal/potential.hpp"
#include "ptreal/spectra.hpp"

namespace ptreal {
namespace {

constexpr std::uint64_t kSeed = 20130917;

class Recorder {
 public:
  Recorder(std::string group, std::vector<InvariantResult>& out) : group_(std::move(group)), out_(out) {}

  void check(const std::string& name, double value, double bound) {
    std::ostringstream os;
    os << "max " << value << " <= " << bound;
    out_.push_back({group_, name, value <= bound, os.str()});
  }

  void check(const std::string& name, bool ok, const std::string& detail) {
    out_.push_back({group_, name, ok, detail});
  }

 private:
  std::string group_;
  std::vector<InvariantResult>& out_;
};

double max_diff(const CVector& a, const CVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<PotentialSpec> sample_potentials() {
  const cplx i(0.0, 1.0);
  return {
      PotentialSpec::from_terms({{1, 2.0 * i}, {2, 1.0}}),
      PotentialSpec::from_terms({{3, i}}),
      PotentialSpec::from_terms({{2, 1.0}, {3, 0.5 * i}}),
  };
}

void projectors_group(Recorder& r) {
  std::mt19937_64 rng(kSeed);
  const std::vector<AntiunitaryRep> ops = {pt_ho(8), random_antiunitary(rng, 6)};
  double sum = 0.0, idem = 0.0, eigen = 0.0;
  for (const auto& a : ops) {
    for (int trial = 0; trial < 100; ++trial) {
      const CVector v = random_vector(rng, static_cast<std::size_t>(a.n_basis()));
      const CVector qp = projector(a, 1, v);
      const CVector qm = projector(a, -1, v);
      CVector total(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) total[i] = qp[i] + qm[i];
      sum = std::max(sum, max_diff(total, v));
      idem = std::max(idem, max_diff(projector(a, 1, qp), qp));
      idem = std::max(idem, max_diff(projector(a, -1, qm), qm));
      CVector neg = qm;
      for (auto& z : neg) z = -z;
      eigen = std::max(eigen, max_diff(apply(a, qp), qp));
      eigen = std::max(eigen, max_diff(apply(a, qm), neg));
    }
  }
  r.check("Q+ + Q- = 1", sum, 1e-12);
  r.check("Q_s Q_s = Q_s", idem, 1e-12);
  r.check("A Q_s = s Q_s", eigen, 1e-12);
}

void involution_group(Recorder& r) {
  std::mt19937_64 rng(kSeed + 1);
  const std::vector<AntiunitaryRep> ops = {pt_ho(9), random_antiunitary(rng, 5),
                                           random_antiunitary(rng, 8)};
  double twice = 0.0, antilinear = 0.0, structure = 0.0;
  for (const auto& a : ops) {
    const auto n = static_cast<std::size_t>(a.n_basis());
    const CMatrix& w = a.unitary_part();
    structure = std::max(structure, max_abs(w * conj(w) - CMatrix::identity(n)));
    structure = std::max(structure, max_abs(adjoint(w) * w - CMatrix::identity(n)));
    for (int trial = 0; trial < 100; ++trial) {
      const CVector v = random_vector(rng, n);
      twice = std::max(twice, max_diff(apply(a, apply(a, v)), v));
      const cplx c(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
      CVector cv = v;
      for (auto& z : cv) z *= c;
      CVector expected = apply(a, v);
      for (auto& z : expected) z *= std::conj(c);
      antilinear = std::max(antilinear, max_diff(apply(a, cv), expected));
    }
  }
  r.check("W unitary and W conj(W) = I", structure, 1e-12);
  r.check("A^2 = 1", twice, 1e-12);
  r.check("A(c v) = conj(c) A(v)", antilinear, 1e-12);
}

void unitary_group(Recorder& r, const VerifyHooks& hooks) {
  double adj = 0.0, square = 0.0, values = 0.0;
  for (int n : {2, 3, 8, 33}) {
    const CMatrix u = hooks.phase_unitary(n).dense();
    adj = std::max(adj, max_abs(adjoint(u) - conj(u)));
    adj = std::max(adj, max_abs(u * conj(u) - CMatrix::identity(static_cast<std::size_t>(n))));
    const CMatrix parity = pt_ho(n).unitary_part();
    square = std::max(square, max_abs(u * u - parity));
    const auto ref = phase_unitary(n).diagonal;
    for (std::size_t i = 0; i < ref.size(); ++i) values = std::max(values, std::abs(u(i, i) - ref[i]));
  }
  r.check("U^dagger = U*", adj, 1e-15);
  r.check("U²=P", square, 1e-15);
  r.check("U = diag(1, i, 1, i, ...)", values, 0.0);
}

void real_gram_group(Recorder& r) {
  std::mt19937_64 rng(kSeed + 2);
  double gram = 0.0;
  double fixed = 0.0, ortho = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 6);
    const auto a = trial % 2 == 0 ? pt_ho(static_cast<int>(n)) : random_antiunitary(rng, n);
    for (int k = 0; k < 10; ++k) {
      const CVector u = projector(a, 1, random_vector(rng, n));
      const CVector v = projector(a, 1, random_vector(rng, n));
      gram = std::max(gram, std::abs(inner(u, v).imag()));
    }
    const auto basis = adapted_basis(a, Recipe::projector_phase(), random_unitary(rng, n));
    fixed = std::max(fixed, max_adapted_violation(a, basis.columns));
    ortho = std::max(ortho, basis.ortho_residual);
  }
  r.check("Im <u|v> = 0 for A-fixed u, v", gram, 1e-12);
  r.check("Gram-Schmidt output stays A-fixed", fixed, 1e-10);
  r.check("projector_phase basis orthonormal", ortho, 1e-12);
}

void recipes_group(Recorder& r, const VerifyHooks& hooks) {
  bool ranks_ok = true;
  std::string first_bad;
  for (int n = 2; n <= 64; ++n) {
    const auto b = adapted_basis(pt_ho(n), Recipe::bender());
    if (b.rank != (n + 1) / 2 || b.rank + b.dropped != n) {
      ranks_ok = false;
      if (first_bad.empty()) first_bad = "N=" + std::to_string(n) + " rank " + std::to_string(b.rank);
    }
  }
  r.check("bender rank = ceil(N/2)", ranks_ok, ranks_ok ? "N = 2..64" : first_bad);

  const int n = 32;
  const auto a = pt_ho(n);
  double worst = 0.0;
  for (const auto& p : sample_potentials()) {
    const auto h = hamiltonian_matrix(p, n);
    const auto m1 = realify(h, hooks.phase_unitary(n));
    const auto m2 = realify(h, adapted_basis(a, Recipe::phase_power()));
    const auto m3 = realify(h, adapted_basis(a, Recipe::porter(cplx(0.5, 0.5))));
    worst = std::max({worst, match_sign_similarity(m1.entries, m2.entries).deviation,
                      match_sign_similarity(m1.entries, m3.entries).deviation,
                      match_sign_similarity(m2.entries, m3.entries).deviation});
  }
  r.check("phase_unitary ~ phase_power ~ porter((1+i)/2)", worst, 1e-12);
}

void reality_group(Recorder& r, const VerifyHooks& hooks) {
  double worst = 0.0, symmetry = 0.0;
  for (const auto& p : sample_potentials()) {
    const auto h = hamiltonian_matrix(p, 64);
    symmetry = std::max(symmetry, check_a_symmetry(h, pt_ho(64)) / max_abs(h.entries));
    try {
      const auto m = realify(h, hooks.phase_unitary(64), 1e300);
      worst = std::max(worst, m.imag_residual / max_abs(h.entries));
    } catch (const Error&) {
      worst = 1.0;
    }
  }
  r.check("H is A-symmetric", symmetry, 1e-12);
  r.check("imag_residual of U H U^dagger", worst, 1e-12);
}

void parity_group(Recorder& r) {
  double parity = 0.0, padding = 0.0;
  for (int k = 0; k <= kMaxPotentialDegree; ++k) {
    const RMatrix small = monomial_matrix(k, 12);
    const RMatrix big = monomial_matrix(k, 20);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 0; j < 12; ++j) {
        if ((i + j + static_cast<std::size_t>(k)) % 2 == 1) parity = std::max(parity, std::abs(small(i, j)));
        const double scale = std::max(1.0, std::abs(big(i, j)));
        padding = std::max(padding, std::abs(small(i, j) - big(i, j)) / scale);
      }
  }
  r.check("<m|x^k|n> = 0 for m+n+k odd", parity, 0.0);
  r.check("padded truncation exact", padding, 1e-13);
}

void char_poly_group(Recorder& r, const VerifyHooks& hooks) {
  double imag = 0.0, match = 0.0;
  const auto p = PotentialSpec::from_terms({{3, cplx(0.0, 1.0)}});
  for (int n : {4, 8, 12}) {
    const auto h = hamiltonian_matrix(p, n);
    const auto ch = char_poly(h.entries);
    const auto cr = char_poly(realify(h, hooks.phase_unitary(n)).entries);
    double scale = 0.0;
    for (const auto& c : ch) scale = std::max(scale, std::abs(c));
    for (std::size_t k = 0; k < ch.size(); ++k) {
      imag = std::max(imag, std::abs(ch[k].imag()) / scale);
      match = std::max(match, std::abs(ch[k] - cr[k]) / std::max(std::abs(ch[k]), 1e-300));
    }
  }
  r.check("Im of secular coefficients", imag, 1e-9);
  r.check("coefficients of H and U H U^dagger agree", match, 1e-9);
}

double match_roots(std::vector<cplx> expected, const std::vector<cplx>& actual) {
  double worst = 0.0;
  for (const auto& z : actual) {
    auto it = std::min_element(expected.begin(), expected.end(), [&](const cplx& a, const cplx& b) {
      return std::abs(a - z) < std::abs(b - z);
    });
    worst = std::max(worst, std::abs(*it - z));
    expected.erase(it);
  }
  return worst;
}

void oracle_group(Recorder& r, const VerifyHooks& hooks) {
  std::mt19937_64 rng(kSeed + 3);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 11);
    const auto h = random_pt_symmetric(rng, n);
    const auto roots = durand_kerner(char_poly(h.entries));
    const auto eig = eigenvalues_real(realify(h, hooks.phase_unitary(static_cast<int>(n))).entries);
    worst = std::max(worst, match_roots(roots, eig.eigenvalues));
  }
  r.check("QR(realify(H)) = roots of char_poly(H)", worst, 1e-8);
}

void closure_group(Recorder& r, const VerifyHooks& hooks) {
  std::mt19937_64 rng(kSeed + 4);
  std::vector<RMatrix> inputs;
  for (const auto& p : sample_potentials()) {
    inputs.push_back(realify(hamiltonian_matrix(p, 48), hooks.phase_unitary(48)).entries);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial);
    inputs.push_back(realify(random_pt_symmetric(rng, n), hooks.phase_unitary(static_cast<int>(n))).entries);
  }
  int failures = 0;
  std::string first;
  for (const auto& m : inputs) {
    try {
      (void)spectrum_report(m, kDefaultClassifyTolerance);
    } catch (const Error& e) {
      if (failures++ == 0) first = e.what();
    }
  }
  r.check("every spectrum closes under conjugation", failures == 0,
          failures == 0 ? std::to_string(inputs.size()) + " spectra" : first);
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups = {
      "projectors", "involution", "unitary", "real_gram", "recipes",
      "reality",    "parity",     "char_poly", "oracle",  "closure"};
  return groups;
}

std::vector<InvariantResult> run_verify(const std::string& group, const VerifyHooks& hooks) {
  const auto& all = verify_groups();
  if (!group.empty() && std::find(all.begin(), all.end(), group) == all.end()) {
    throw Error(ErrorKind::invalid_input, "unknown verify group '" + group + "'");
  }
  std::vector<InvariantResult> out;
  for (const auto& g : all) {
    if (!group.empty() && g != group) continue;
    Recorder r(g, out);
    try {
      if (g == "projectors") projectors_group(r);
      else if (g == "involution") involution_group(r);
      else if (g == "unitary") unitary_group(r, hooks);
      else if (g == "real_gram") real_gram_group(r);
      else if (g == "recipes") recipes_group(r, hooks);
      else if (g == "reality") reality_group(r, hooks);
      else if (g == "parity") parity_group(r);
      else if (g == "char_poly") char_poly_group(r, hooks);
      else if (g == "oracle") oracle_group(r, hooks);
      else if (g == "closure") closure_group(r, hooks);
    } catch (const std::exception& e) {
      r.check("group completes", false, e.what());
    }
  }
  return out;
}

CVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  CVector v(n);
  for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
  return v;
}

CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  CMatrix u(n, n);
  std::vector<CVector> cols;
  while (cols.size() < n) {
    CVector v = random_vector(rng, n);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) {
        const cplx c = inner(q, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
      }
    const double norm = norm2(v);
    if (norm < 1e-8) continue;
    for (auto& z : v) z /= norm;
    cols.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  return u;
}

AntiunitaryRep random_antiunitary(std::mt19937_64& rng, std::size_t n) {
  const CMatrix u = random_unitary(rng, n);
  CMatrix w = u * transpose(u);
  // Symmetrize away rounding so that W conj(W) = I holds to working precision.
  CMatrix ws(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ws(i, j) = 0.5 * (w(i, j) + w(j, i));
  return AntiunitaryRep::custom(std::move(ws));
}

OperatorMatrix random_pt_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx g(gauss(rng), gauss(rng));
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      h(i, j) = 0.5 * (g + sign * std::conj(g));
    }
  return OperatorMatrix::make(std::move(h), BasisTag::ho, "random A-symmetric");
}

}  // namespace ptreal
