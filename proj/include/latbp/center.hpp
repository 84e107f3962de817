#pragma once

#include "latbp/norms.hpp"
#include "latbp/types.hpp"

#include <cstdint>

namespace latbp {

/// Estimate of the smallest λ with sup_{‖x‖≤1} ‖(|Mx| - λ|x|)₊‖ ≤ ε.
/// The inner supremum is nonconvex; rho_upper is certified only relative to
/// the inner maximizers found, so the whole bracket is an estimate.
struct CenterEstimate {
  Scalar epsilon = 0.0;
  Scalar rho_lower = 0.0;
  Scalar rho_upper = 0.0;
  bool feasible = true;  // false: even the expanded λ range failed; rho = +inf
  int restarts = 0;
  std::uint64_t seed = 0;
  long iterations = 0;
};

struct CenterConfig {
  int restarts = 32;
  int ascent_iters = 200;
  std::uint64_t seed = 0xce17e5ULL;
  int max_expansions = 6;  // doublings of the λ range past ‖M‖ before giving up
};

CenterEstimate rho_center(const Matrix& m, const NormSpec& spec, Scalar epsilon, Scalar tol,
                          const CenterConfig& cfg = {});

/// Inner objective g(λ) = sup_{‖x‖≤1} ‖(|Mx| - λ|x|)₊‖, estimated by
/// multi-start projected ascent plus deterministic candidates.
Scalar center_inner_sup(const Matrix& m, const NormSpec& spec, Scalar lambda,
                        const CenterConfig& cfg, long* iterations = nullptr);

}  // namespace latbp
