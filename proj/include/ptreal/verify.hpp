#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ptreal/antiunitary.hpp"
#include "ptreal/realify.hpp"

namespace ptreal {

/// Substitutable building blocks, so that the invariant suite can be run
/// against deliberately broken implementations.
struct VerifyHooks {
  std::function<PhaseUnitary(int)> phase_unitary = [](int n) { return ptreal::phase_unitary(n); };
};

struct InvariantResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant groups in execution order.
const std::vector<std::string>& verify_groups();

/// Runs one group, or all of them when group is empty. Throws invalid_input
/// for an unknown group name.
std::vector<InvariantResult> run_verify(const std::string& group = {},
                                        const VerifyHooks& hooks = {});

// Random test data shared by the invariant suite and the test binaries.

CVector random_vector(std::mt19937_64& rng, std::size_t n);

/// Random unitary U (Gram-Schmidt of Gaussian columns).
CMatrix random_unitary(std::mt19937_64& rng, std::size_t n);

/// Random antiunitary involution with W = U U^T.
AntiunitaryRep random_antiunitary(std::mt19937_64& rng, std::size_t n);

/// (G + P conj(G) P) / 2 for a Gaussian complex G, P = diag((-1)^n).
OperatorMatrix random_pt_symmetric(std::mt19937_64& rng, std::size_t n);

}  // namespace ptreal
