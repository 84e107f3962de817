#pragma once

#include "latbp/norms.hpp"
#include "latbp/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace latbp {

/// Maximizes f over the unit sphere of `spec` by step-halving projected
/// ascent from each start. Gradient is a supergradient selection supplied by
/// the caller. Returns the best point found; never below the best start.
struct AscentResult {
  Scalar value = 0.0;
  Vector maximizer;
  long iterations = 0;
};

struct AscentConfig {
  int max_iters = 200;
  Scalar initial_step = 0.5;
  Scalar min_step = 1e-12;
};

AscentResult ascend_on_sphere(const std::function<Scalar(const Vector&)>& f,
                              const std::function<Vector(const Vector&)>& grad,
                              const NormSpec& spec, const std::vector<Vector>& starts,
                              const AscentConfig& cfg = {});

/// Deterministic start set: ±basis vectors, normalized all-ones, normalized
/// rows of M, plus seeded random points.
std::vector<Vector> standard_starts(const Matrix& m, const NormSpec& spec, int random_starts,
                                    std::uint64_t seed);

}  // namespace latbp
