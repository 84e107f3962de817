#include "latbp/center.hpp"

#include "latbp/lattice.hpp"
#include "latbp/search.hpp"

#include <cmath>
#include <stdexcept>

namespace latbp {

Scalar center_inner_sup(const Matrix& m, const NormSpec& spec, Scalar lambda,
                        const CenterConfig& cfg, long* iterations) {
  const Index n = m.rows();
  auto f = [&](const Vector& x) {
    Vector v = pos_part(Vector(abs_of(m * x) - lambda * abs_of(x)));
    return vector_norm(v, spec);
  };
  auto grad = [&](const Vector& x) {
    Vector mx = m * x;
    Vector v = pos_part(Vector(abs_of(mx) - lambda * abs_of(x)));
    Vector nsg = norm_subgradient(v, spec);
    Vector g = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (v[i] <= 0.0 || nsg[i] == 0.0) continue;
      g += nsg[i] * (mx[i] >= 0 ? 1.0 : -1.0) * m.row(i).transpose();
      g[i] -= nsg[i] * lambda * (x[i] >= 0 ? 1.0 : -1.0);
    }
    return g;
  };
  std::vector<Vector> starts = standard_starts(m, spec, cfg.restarts, cfg.seed);
  AscentConfig acfg;
  acfg.max_iters = cfg.ascent_iters;
  AscentResult res = ascend_on_sphere(f, grad, spec, starts, acfg);
  if (iterations) *iterations += res.iterations;
  return res.value;
}

CenterEstimate rho_center(const Matrix& m, const NormSpec& spec, Scalar epsilon, Scalar tol,
                          const CenterConfig& cfg) {
  if (m.rows() != m.cols()) throw std::invalid_argument("rho_center: matrix must be square");
  spec.check_dim(m.rows());
  if (epsilon < 0.0) throw std::invalid_argument("rho_center: epsilon must be nonnegative");
  if (tol <= 0.0) throw std::invalid_argument("rho_center: tol must be positive");

  CenterEstimate est;
  est.epsilon = epsilon;
  est.restarts = cfg.restarts;
  est.seed = cfg.seed;

  auto g = [&](Scalar lambda) { return center_inner_sup(m, spec, lambda, cfg, &est.iterations); };

  if (g(0.0) <= epsilon) {
    est.rho_lower = est.rho_upper = 0.0;
    return est;
  }

  // g decreases in λ; find a feasible right end, expanding past ‖M‖ if the
  // supremum has not dropped below ε there.
  Scalar hi = operator_norm(m, spec).upper;
  if (hi <= 0.0) hi = 1.0;
  int expansions = 0;
  while (g(hi) > epsilon) {
    if (++expansions > cfg.max_expansions) {
      est.feasible = false;
      est.rho_lower = hi;
      est.rho_upper = kInf;
      return est;
    }
    hi *= 2.0;
  }

  Scalar lo = 0.0;
  while (hi - lo > tol) {
    Scalar mid = 0.5 * (lo + hi);
    if (g(mid) <= epsilon)
      hi = mid;
    else
      lo = mid;
  }
  est.rho_lower = lo;
  est.rho_upper = hi;
  return est;
}

}  // namespace latbp
