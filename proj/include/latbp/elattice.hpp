#pragma once

#include "latbp/types.hpp"

#include <cstdint>
#include <vector>

namespace latbp {

// ---------------------------------------------------------------------------
// Desk-scale model of the dyadically weighted function lattice: continuous
// piecewise-linear functions on (0, 1], identically zero left of their first
// breakpoint and constant right of their last, with norm
//   max { sup |f|, max_{k ≤ K} 2^k |f(2^{-k})| }.
// ---------------------------------------------------------------------------

struct PLFunction {
  std::vector<Scalar> breakpoints;  // strictly increasing, inside (0, 1]
  std::vector<Scalar> values;

  PLFunction() = default;
  PLFunction(std::vector<Scalar> bps, std::vector<Scalar> vals);

  Scalar operator()(Scalar t) const;
  bool is_zero() const;
  Scalar sup_abs() const;
};

// Exact piecewise-linear arithmetic on the merged breakpoint grid; sign
// changes inside a segment get their crossing inserted as a breakpoint, so
// abs/positive-part/min/max stay exactly piecewise linear.
PLFunction pl_scale(const PLFunction& f, Scalar c);
PLFunction pl_add(const PLFunction& f, const PLFunction& g);
PLFunction pl_sub(const PLFunction& f, const PLFunction& g);
PLFunction pl_abs(const PLFunction& f);
PLFunction pl_pos(const PLFunction& f);
PLFunction pl_min(const PLFunction& f, const PLFunction& g);
PLFunction pl_max(const PLFunction& f, const PLFunction& g);

/// Dyadic depth: weight 2^k sits at the point 2^{-k} for k = 1..K, and
/// admissible elements are supported in [2^{-K-1}, 1].
struct ELatticeConfig {
  int depth = 12;  // K ≥ 2
};

bool respects_support(const PLFunction& f, const ELatticeConfig& cfg);

/// max { sup |f|, max_k 2^k |f(2^{-k})| }; throws if f violates the support
/// invariant.
Scalar e_norm(const PLFunction& f, const ELatticeConfig& cfg);

/// The canonical hat: 0 at 2^{-n-1}, 1 at 2^{-n}, 0 at 2^{1-n}.
PLFunction canonical_hat(int n);

/// T_n f = f(2^{-n}) · hat_n; a contraction in the lattice norm.
/// Requires 2 ≤ n ≤ depth - 1.
PLFunction apply_Tn(int n, const PLFunction& f, const ELatticeConfig& cfg);

/// ‖(|T_n f| - |f|)₊‖ / ‖f‖, computed exactly on the merged grid. Throws if
/// the value exceeds 2^{-n} + 1e-12 (that bound holds for every f).
Scalar center_witness_check(int n, const PLFunction& f, const ELatticeConfig& cfg);

// ---------------------------------------------------------------------------
// Certificate: every multiplication operator x ↦ φx stays at distance at
// least max(sup|φ|, |1 - φ(2^{-n})|) ≥ 1/2 from T_n. The two terms are
// realized by explicit witness functions (a bump in a dyadic-free gap, and a
// unit-norm function with value 2^{-n} at 2^{-n}).
// ---------------------------------------------------------------------------

struct ECertificate {
  Scalar lower_bound = 0.0;    // max of the two terms below
  Scalar sup_phi = 0.0;        // first term
  Scalar point_term = 0.0;     // |1 - φ(2^{-n})|
  PLFunction witness_bump;     // realizes (approaches) sup_phi
  Scalar witness_bump_value = 0.0;
  PLFunction witness_point;    // realizes point_term exactly
  Scalar witness_point_value = 0.0;
};

ECertificate e_certificate(int n, const PLFunction& phi, const ELatticeConfig& cfg);

/// Evaluates ‖(T_n - M_φ) x‖ / ‖x‖ for a concrete witness x, by pointwise
/// evaluation at the witness's breakpoints and the dyadic points. Used to
/// re-check certificates independently.
Scalar witness_action_lb(int n, const PLFunction& phi, const PLFunction& x,
                         const ELatticeConfig& cfg);

struct AdversarialSearchResult {
  Scalar min_certificate = kInf;
  PLFunction minimizer;
  int candidates = 0;
};

/// Seeded search over PL multipliers (≤ max_breakpoints breakpoints) trying
/// to drive the certificate below 1/2; includes the constant 1/2 multiplier,
/// where the floor is attained.
AdversarialSearchResult adversarial_phi_search(int n, const ELatticeConfig& cfg, int candidates,
                                               int max_breakpoints, std::uint64_t seed);

}  // namespace latbp
