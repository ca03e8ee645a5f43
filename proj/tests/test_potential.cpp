#include <random>

#include "doctest.h"
#include "ptreal/potential.hpp"

using namespace ptreal;

namespace {

const cplx I(0.0, 1.0);

PotentialSpec random_potential(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> degree(1, kMaxPotentialDegree);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution keep(0.6);
  std::vector<PotentialTerm> terms;
  const int d = degree(rng);
  for (int k = 0; k <= d; ++k) {
    if (k != d && !keep(rng)) continue;
    const double c = gauss(rng);
    terms.push_back({k, k % 2 == 0 ? cplx(c, 0.0) : cplx(0.0, c)});
  }
  return PotentialSpec::from_terms(terms);
}

}  // namespace

TEST_CASE("parse_potential accepts PT-symmetric terms") {
  auto p = parse_potential(R"({"terms":[{"power":2,"re":1,"im":0}]})");
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0] == PotentialTerm{2, 1.0});

  p = parse_potential(R"({"terms":[{"power":3,"re":0,"im":1}]})");
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0] == PotentialTerm{3, I});
}

TEST_CASE("parse_potential sorts terms by power") {
  const auto p = parse_potential(
      R"({"terms":[{"power":4,"re":2,"im":0},{"power":1,"re":0,"im":-3},{"power":2,"re":1,"im":0}]})");
  REQUIRE(p.terms().size() == 3);
  CHECK(p.terms()[0].power == 1);
  CHECK(p.terms()[1].power == 2);
  CHECK(p.terms()[2].power == 4);
  CHECK(p.degree() == 4);
}

TEST_CASE("parse_potential errors") {
  auto message = [](const char* text) {
    try {
      parse_potential(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_input);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"terms":[{"power":1,"re":0.5,"im":0}]})").find("PT violation at power 1") !=
        std::string::npos);
  CHECK(message(R"({"terms":[{"power":2,"re":1,"im":1e-300}]})").find("PT violation at power 2") !=
        std::string::npos);
  CHECK(message(R"({"terms":[{"power":2,"re":1,"im":0},{"power":2,"re":3,"im":0}]})")
            .find("duplicate power 2") != std::string::npos);
  CHECK(message(R"({"terms":[{"power":2,"re":1,"im":0})").find("malformed") != std::string::npos);
  CHECK(message(R"({"terms":[{"power":"two","re":1}]})").find("malformed") != std::string::npos);
  CHECK(message(R"({"terms":[{"power":18,"re":1,"im":0}]})").find("outside") != std::string::npos);
  CHECK(message(R"({"terms":[{"power":0,"re":1,"im":0}]})").find("degree") != std::string::npos);
  CHECK(message(R"({"terms":[]})").find("degree") != std::string::npos);
}

TEST_CASE("negative leading even term is accepted with a warning") {
  const auto p = parse_potential(R"({"terms":[{"power":4,"re":-1,"im":0}]})");
  CHECK(confinement_warning(p).has_value());
  CHECK_FALSE(confinement_warning(parse_potential(R"({"terms":[{"power":3,"re":0,"im":1}]})")));
}

TEST_CASE("decompose splits even and odd parts") {
  auto parts = decompose(PotentialSpec::from_terms({{2, 1.0}, {3, I}}));
  CHECK(parts.even == PotentialSpec::from_terms({{2, 1.0}}));
  CHECK(parts.odd == PotentialSpec::from_terms({{3, I}}));

  parts = decompose(PotentialSpec::from_terms({{1, I}}));
  CHECK(parts.even.empty());
  CHECK(parts.odd == PotentialSpec::from_terms({{1, I}}));

  parts = decompose(PotentialSpec::from_terms({{2, 1.0}, {4, 1.0}}));
  CHECK(parts.even.terms().size() == 2);
  CHECK(parts.odd.empty());
}

TEST_CASE("evaluate") {
  CHECK(evaluate(PotentialSpec::from_terms({{3, I}}), 2.0) == cplx(0.0, 8.0));
  const auto p = PotentialSpec::from_terms({{2, 1.0}, {1, 2.0 * I}});
  CHECK(evaluate(p, 1.0) == cplx(1.0, 2.0));
  CHECK(evaluate(p, -1.0) == cplx(1.0, -2.0));
  CHECK(evaluate(p, -1.0) == std::conj(evaluate(p, 1.0)));
}

TEST_CASE("property: V(-x) = conj(V(x)) and the even part is real on the real axis") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_potential(rng);
    const auto parts = decompose(p);
    for (int k = 0; k < 100; ++k) {
      const cplx x(gauss(rng), gauss(rng));
      const cplx v = evaluate(p, x);
      const cplx w = evaluate(p, -std::conj(x));
      // V(-x)* = V(x) for real x extends to V(-conj(x)) = conj(V(x)) off the axis.
      CHECK(std::abs(w - std::conj(v)) <= 1e-13 * std::max(1.0, std::abs(v)));
      const double xr = x.real();
      const cplx vr = evaluate(p, xr);
      CHECK(std::abs(evaluate(p, -xr) - std::conj(vr)) <= 1e-13 * std::max(1.0, std::abs(vr)));
      CHECK(evaluate(parts.even, xr).imag() == 0.0);
      CHECK(evaluate(parts.odd, xr).real() == 0.0);
    }
  }
}

TEST_CASE("property: recombine(decompose(p)) == p and serialization round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_potential(rng);
    CHECK(recombine(decompose(p)) == p);
    CHECK(parse_potential(serialize_potential(p)) == p);
  }
}

TEST_CASE("serialization emits ascending powers") {
  const auto p = PotentialSpec::from_terms({{3, I}, {2, 1.0}});
  CHECK(serialize_potential(p) ==
        R"({"terms":[{"power":2,"re":1.0,"im":0.0},{"power":3,"re":0.0,"im":1.0}]})");
}
