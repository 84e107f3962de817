#pragma once

#include "latbp/defects.hpp"
#include "latbp/norms.hpp"
#include "latbp/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace latbp {

// ---------------------------------------------------------------------------
// Named examples with asserted values. Violations throw.
// ---------------------------------------------------------------------------

struct AntidiagonalBundle {
  Scalar eps = 0.0;
  Matrix m;
  // per norm ("l1", "l2", "linf"): bp, bp of the inverse, bound ratio
  struct PerNorm {
    Scalar bp = 0.0;
    Scalar bp_inverse = 0.0;
    Scalar op_norm = 0.0;
    Scalar inverse_bound = 0.0;
    Scalar ratio = 0.0;
  };
  std::map<std::string, PerNorm> per_norm;
};

/// The 2×2 antidiagonal matrix with entry eps: bp = eps on every ℓ_p, the
/// inverse has bp = 1/eps, and the inverse bound 2‖M⁻¹‖²·eps holds with
/// ratio exactly 1/2.
AntidiagonalBundle antidiagonal_example(Scalar eps);

struct WalshBundle {
  int i = 0;
  Index dim = 0;        // 2^i
  Scalar gap = 0.0;     // ‖ |T_i| x ∧ y ‖₂ for the canonical witness pair; = 1/2
  Scalar gap_permuted = 0.0;  // same value under a seeded row permutation
  Scalar dist_to_identity = 0.0;  // ‖T_i - I‖₂ = 2^{-i/2}
  Scalar bp_upper = 0.0;          // 2^{-i/2}
  Scalar modulus_bp_lower = 0.0;  // = gap, an oracle witness for bp(|T_i|)
  Scalar bp_exact = -1.0;         // exact ℓ2 bp when 2^i fits the cap, else -1
  Scalar modulus_bp_exact = -1.0;
};

/// Scaled Sylvester–Hadamard perturbation of the identity: T_i = I + 2^{-i} H.
/// Matrix-free for large i. Requires 2 ≤ i ≤ 13.
WalshBundle walsh_modulus_example(int i, std::uint64_t permutation_seed = 0x5a1ULL);

/// Dense T_i for small i (2^i ≤ 64); used for direct cross-checks.
Matrix walsh_operator(int i);

// ---------------------------------------------------------------------------
// Batch verification of every bound invariant on seeded random ensembles.
// ---------------------------------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  std::vector<Index> dims = {2, 3, 4, 5};
  std::vector<std::string> specs = {"l1", "l2", "linf"};
  std::vector<std::string> ensembles = {"uniform", "sparse", "positive"};
  // "all" | "bounds" (defect functional inequalities) | "approximants"
  std::string scope = "all";
};

struct CheckStats {
  long checks = 0;
  long failures = 0;
  Scalar worst_slack = -kInf;  // max of (lhs - rhs); ≤ 0 means the bound held
};

struct SuiteReport {
  SuiteConfig config;
  std::map<std::string, CheckStats> inequalities;
  long total_checks = 0;
  long total_failures = 0;
};

SuiteReport random_suite(const SuiteConfig& cfg);

struct FunctionSuiteConfig {
  std::uint64_t seed = 42;
  int trials = 500;        // seeded lattice elements per operator index
  int adversarial = 2000;  // multiplier candidates per operator index
  int depth = 12;
  std::vector<int> ns = {3, 4, 5};
  std::vector<Scalar> eps_values = {0.5, 0.1, 0.01};
};

/// Function-lattice verification: center-witness bound, contraction,
/// certificate floor under adversarial multipliers, renormed-model
/// certificates.
SuiteReport function_suite(const FunctionSuiteConfig& cfg);

}  // namespace latbp
