#pragma once

#include "latbp/center.hpp"
#include "latbp/lattice.hpp"
#include "latbp/norms.hpp"
#include "latbp/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace latbp {

// ---------------------------------------------------------------------------
// Defect functionals. On a finite-dimensional atomic lattice the bands are
// the coordinate subspaces, so the band-preservation defect of M is the
// largest cross-block norm ‖P_{Aᶜ} M P_A‖ over coordinate subsets A, and the
// band-preserving operators are exactly the diagonal matrices.
// ---------------------------------------------------------------------------

enum class DefectMode { Auto, Exact, Heuristic };

struct DefectConfig {
  DefectMode mode = DefectMode::Auto;
  int exact_max_n = kDefaultExactCap;
  int heuristic_restarts = 64;
  std::uint64_t seed = 0x5eedULL;
};

struct SubsetWitness {
  Scalar value = 0.0;
  IndexSet subset;   // attaining A (lexicographically smallest among ties)
  bool exact = true; // false: certified lower bound from local search
};

/// Largest cross-block operator norm max_A ‖P_{Aᶜ} M P_A‖ over nonempty
/// proper subsets A. Exact mode enumerates all 2^n - 2 subsets; heuristic
/// mode runs greedy single-swap local search with seeded restarts and
/// reports a certified lower bound.
SubsetWitness bp_defect(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg = {});

/// Cross-block norm for one fixed subset A.
Scalar cross_block_norm(const Matrix& m, const NormSpec& spec, const IndexSet& a);

struct OracleBudget {
  int random_samples = 256;
  bool support_sweep = true;  // all 2^n - 2 support patterns when n small
  int sweep_max_n = 12;
  std::uint64_t seed = 0x0bacULL;
};

/// Definition-level lower bound: max over sampled x of ‖|Mx| ∧ y‖ / ‖x‖ with
/// y a positive vector disjoint from x. Independent of the subset formula.
Scalar bp_defect_oracle(const Matrix& m, const NormSpec& spec, const OracleBudget& budget = {});

/// Ideal-preservation defect, computed as the worst distance from M x to the
/// coordinate subspace carrying x (residual after projection). Agrees with
/// bp_defect on every exact-mode instance; evaluated through a separate
/// numerical route as a cross-check.
Scalar ip_defect(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg = {});

struct PairWitness {
  Scalar value = 0.0;
  Vector x, y;
  IndexSet support_x, support_y;
};

struct DpBudget {
  int max_split_enumeration_n = 8;  // full disjoint-split enumeration below this
  int sampled_splits = 64;          // seeded splits otherwise
  int ascent_top_splits = 8;        // refine only the most promising splits
  int ascent_restarts = 4;
  int ascent_iters = 60;
  std::uint64_t seed = 0xd15bULL;
};

/// Lower bound on the disjointness-preservation defect
/// sup { ‖|Mx| ∧ |My|‖ : x ⊥ y, ‖x‖,‖y‖ ≤ 1 } by alternating ascent over
/// disjoint support splits. Always a valid lower bound.
PairWitness dp_defect_lb(const Matrix& m, const NormSpec& spec, const DpBudget& budget = {});

/// max_A ‖P_A M - M P_A‖ over all coordinate subsets. Sandwiched between
/// bp_defect and twice bp_defect.
SubsetWitness commutator_max(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg = {});

enum class DistStatus { Exact, ConvexNumerical };

struct DistToDiagonal {
  Scalar value = 0.0;
  Scalar lower = 0.0;
  Scalar upper = 0.0;
  DistStatus status = DistStatus::Exact;
  Vector minimizer;  // diagonal entries of the nearest diagonal matrix found
};

struct DistConfig {
  Scalar tol = 1e-6;
  int max_iters = 4000;
};

/// Distance from M to the diagonal matrices. Closed form on ℓ1, ℓ∞ and
/// weighted sup; convex subgradient descent on the top singular value for ℓ2.
DistToDiagonal dist_to_diagonal(const Matrix& m, const NormSpec& spec, const DistConfig& cfg = {});

struct InverseDefectReport {
  Scalar bp = 0.0;
  Scalar bp_inverse = 0.0;
  Scalar inverse_norm = 0.0;
  Scalar bound = 0.0;        // 2 ‖M⁻¹‖² bp(M)
  Scalar slack_ratio = 0.0;  // bp(M⁻¹) / bound; 0 when bound is 0
  bool holds = true;
};

/// Checks bp(M⁻¹) ≤ 2 ‖M⁻¹‖² bp(M) + 1e-8. Throws when the condition
/// estimate reaches 1e12, where the bound is numerically vacuous.
InverseDefectReport inverse_defect_check(const Matrix& m, const NormSpec& spec,
                                         const DefectConfig& cfg = {});

// ---------------------------------------------------------------------------
// Full per-operator report.
// ---------------------------------------------------------------------------

struct DefectReport {
  Index dim = 0;
  std::string norm;  // NormSpec string form
  SubsetWitness bp;
  Scalar ip = 0.0;
  bool ip_available = false;
  PairWitness dp_lb;
  SubsetWitness commutator;
  bool commutator_available = false;
  DistToDiagonal dist_diag;
  bool dist_available = false;
  OpNormBracket op_norm;
  Scalar oracle_lb = 0.0;
  std::optional<InverseDefectReport> inverse;
  // Center radius estimated just above the defect; reported as data on the
  // open gap between the defect and center membership, with no claim in
  // either direction.
  std::optional<CenterEstimate> center_at_defect;
  std::uint64_t seed = 0;
};

struct AnalyzeOptions {
  DefectConfig defect;
  OracleBudget oracle;
  DpBudget dp;
  bool with_center_gap = true;
};

DefectReport analyze_operator(const Matrix& m, const NormSpec& spec,
                              const AnalyzeOptions& opts = {});

}  // namespace latbp
