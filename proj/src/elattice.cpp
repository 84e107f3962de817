#include "latbp/elattice.hpp"

#include "latbp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latbp {

namespace {

Scalar dyadic(int k) { return std::ldexp(1.0, -k); }  // 2^{-k}, exact

void validate(const std::vector<Scalar>& bps, const std::vector<Scalar>& vals) {
  if (bps.empty() || bps.size() != vals.size())
    throw std::invalid_argument("PLFunction: breakpoints/values size mismatch or empty");
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!std::isfinite(bps[i]) || !std::isfinite(vals[i]))
      throw std::invalid_argument("PLFunction: non-finite data");
    if (bps[i] <= 0.0 || bps[i] > 1.0)
      throw std::invalid_argument("PLFunction: breakpoints must lie in (0, 1]");
    if (i > 0 && bps[i] <= bps[i - 1])
      throw std::invalid_argument("PLFunction: breakpoints must be strictly increasing");
  }
}

}  // namespace

PLFunction::PLFunction(std::vector<Scalar> bps, std::vector<Scalar> vals)
    : breakpoints(std::move(bps)), values(std::move(vals)) {
  validate(breakpoints, values);
}

Scalar PLFunction::operator()(Scalar t) const {
  if (breakpoints.empty()) return 0.0;
  if (t < breakpoints.front()) return 0.0;
  if (t >= breakpoints.back()) return values.back();
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - breakpoints.begin());
  std::size_t lo = hi - 1;
  Scalar t0 = breakpoints[lo], t1 = breakpoints[hi];
  Scalar w = (t - t0) / (t1 - t0);
  return values[lo] + w * (values[hi] - values[lo]);
}

bool PLFunction::is_zero() const {
  for (Scalar v : values)
    if (v != 0.0) return false;
  return true;
}

Scalar PLFunction::sup_abs() const {
  Scalar best = 0.0;
  for (Scalar v : values) best = std::max(best, std::abs(v));
  return best;
}

PLFunction pl_scale(const PLFunction& f, Scalar c) {
  PLFunction out = f;
  for (Scalar& v : out.values) v *= c;
  return out;
}

namespace {

// Merged grid of two functions. A function whose first breakpoint lies
// strictly to the right of the other's must start at value zero; otherwise
// its jump at the left end cannot be carried by a shared grid.
std::vector<Scalar> merged_grid(const PLFunction& f, const PLFunction& g) {
  if (f.breakpoints.front() < g.breakpoints.front() && g.values.front() != 0.0)
    throw std::invalid_argument("pl arithmetic: right operand jumps at its first breakpoint");
  if (g.breakpoints.front() < f.breakpoints.front() && f.values.front() != 0.0)
    throw std::invalid_argument("pl arithmetic: left operand jumps at its first breakpoint");
  std::vector<Scalar> grid;
  grid.reserve(f.breakpoints.size() + g.breakpoints.size());
  std::merge(f.breakpoints.begin(), f.breakpoints.end(), g.breakpoints.begin(),
             g.breakpoints.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Inserts the zero crossings of the piecewise-linear h sampled on `grid`.
void insert_roots(std::vector<Scalar>& grid, const std::vector<Scalar>& h) {
  std::vector<Scalar> out_grid;
  out_grid.reserve(grid.size() * 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out_grid.push_back(grid[i]);
    if (i + 1 < grid.size() && h[i] * h[i + 1] < 0.0) {
      Scalar r = grid[i] + (grid[i + 1] - grid[i]) * (h[i] / (h[i] - h[i + 1]));
      if (r > grid[i] && r < grid[i + 1]) out_grid.push_back(r);
    }
  }
  grid.swap(out_grid);
}

template <typename Op>
PLFunction combine(const PLFunction& f, const PLFunction& g, Op op, bool needs_roots) {
  std::vector<Scalar> grid = merged_grid(f, g);
  if (needs_roots) {
    std::vector<Scalar> h(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) h[i] = f(grid[i]) - g(grid[i]);
    insert_roots(grid, h);
  }
  std::vector<Scalar> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = op(f(grid[i]), g(grid[i]));
  return PLFunction(std::move(grid), std::move(vals));
}

}  // namespace

PLFunction pl_add(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, [](Scalar a, Scalar b) { return a + b; }, false);
}

PLFunction pl_sub(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, [](Scalar a, Scalar b) { return a - b; }, false);
}

PLFunction pl_min(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, [](Scalar a, Scalar b) { return std::min(a, b); }, true);
}

PLFunction pl_max(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, [](Scalar a, Scalar b) { return std::max(a, b); }, true);
}

namespace {

PLFunction unary_with_roots(const PLFunction& f, Scalar (*op)(Scalar)) {
  std::vector<Scalar> grid = f.breakpoints;
  insert_roots(grid, f.values);
  std::vector<Scalar> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = op(f(grid[i]));
  return PLFunction(std::move(grid), std::move(vals));
}

}  // namespace

PLFunction pl_abs(const PLFunction& f) {
  return unary_with_roots(f, +[](Scalar v) { return std::abs(v); });
}

PLFunction pl_pos(const PLFunction& f) {
  return unary_with_roots(f, +[](Scalar v) { return std::max(v, 0.0); });
}

// ---------------------------------------------------------------------------

bool respects_support(const PLFunction& f, const ELatticeConfig& cfg) {
  if (cfg.depth < 2) throw std::invalid_argument("ELatticeConfig: depth must be >= 2");
  const Scalar edge = dyadic(cfg.depth + 1);
  if (f.values.front() != 0.0) return false;  // jump at the first breakpoint
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i)
    if (f.breakpoints[i] <= edge && f.values[i] != 0.0) return false;
  return f(edge) == 0.0;
}

Scalar e_norm(const PLFunction& f, const ELatticeConfig& cfg) {
  if (!respects_support(f, cfg))
    throw std::invalid_argument("e_norm: function is not supported inside the lattice");
  Scalar best = f.sup_abs();
  for (int k = 1; k <= cfg.depth; ++k)
    best = std::max(best, std::ldexp(std::abs(f(dyadic(k))), k));
  return best;
}

PLFunction canonical_hat(int n) {
  return PLFunction({dyadic(n + 1), dyadic(n), dyadic(n - 1)}, {0.0, 1.0, 0.0});
}

PLFunction apply_Tn(int n, const PLFunction& f, const ELatticeConfig& cfg) {
  if (n < 2 || n > cfg.depth - 1)
    throw std::invalid_argument("apply_Tn: n must satisfy 2 <= n <= depth - 1");
  return pl_scale(canonical_hat(n), f(dyadic(n)));
}

Scalar center_witness_check(int n, const PLFunction& f, const ELatticeConfig& cfg) {
  Scalar nf = e_norm(f, cfg);
  if (nf == 0.0) throw std::invalid_argument("center_witness_check: f = 0");
  PLFunction excess = pl_pos(pl_sub(pl_abs(apply_Tn(n, f, cfg)), pl_abs(f)));
  Scalar ratio = e_norm(excess, cfg) / nf;
  if (ratio > dyadic(n) + 1e-12)
    throw std::logic_error("center_witness_check: excess above the 2^-n bound");
  return ratio;
}

// ---------------------------------------------------------------------------

namespace {

bool is_dyadic_point(Scalar t, int depth) {
  for (int k = 1; k <= depth + 1; ++k)
    if (t == dyadic(k)) return true;
  return false;
}

// Open dyadic-free gap (lo, hi) containing t; hi may be 1 (1 carries no
// weight).
void dyadic_gap(Scalar t, int depth, Scalar* lo, Scalar* hi) {
  if (t > 0.5) {
    *lo = 0.5;
    *hi = 1.0;
    return;
  }
  for (int k = 1; k <= depth + 1; ++k) {
    if (t > dyadic(k + 1) && t < dyadic(k)) {
      *lo = dyadic(k + 1);
      *hi = dyadic(k);
      return;
    }
  }
  // t at or below the support edge: use the first admissible gap.
  *lo = dyadic(depth + 1);
  *hi = dyadic(depth);
}

PLFunction bump_at(Scalar t_hat, Scalar lo, Scalar hi) {
  Scalar a = 0.5 * (lo + t_hat);
  if (t_hat >= hi) return PLFunction({a, hi}, {0.0, 1.0});
  Scalar b = 0.5 * (t_hat + hi);
  return PLFunction({a, t_hat, b}, {0.0, 1.0, 0.0});
}

}  // namespace

Scalar witness_action_lb(int n, const PLFunction& phi, const PLFunction& x,
                         const ELatticeConfig& cfg) {
  Scalar nx = e_norm(x, cfg);
  if (nx == 0.0) return 0.0;
  const Scalar scale = x(dyadic(n));  // T_n x = scale * hat_n
  PLFunction hat = canonical_hat(n);
  auto g_at = [&](Scalar t) { return scale * hat(t) - phi(t) * x(t); };

  Scalar best = 0.0;
  for (Scalar t : x.breakpoints) best = std::max(best, std::abs(g_at(t)));
  for (Scalar t : phi.breakpoints) best = std::max(best, std::abs(g_at(t)));
  for (Scalar t : hat.breakpoints) best = std::max(best, std::abs(g_at(t)));
  for (int k = 1; k <= cfg.depth; ++k)
    best = std::max(best, std::ldexp(std::abs(g_at(dyadic(k))), k));
  return best / nx;
}

ECertificate e_certificate(int n, const PLFunction& phi, const ELatticeConfig& cfg) {
  if (n < 2 || n > cfg.depth - 1)
    throw std::invalid_argument("e_certificate: n must satisfy 2 <= n <= depth - 1");

  ECertificate cert;
  cert.sup_phi = phi.sup_abs();
  cert.point_term = std::abs(1.0 - phi(dyadic(n)));
  cert.lower_bound = std::max(cert.sup_phi, cert.point_term);

  // First witness: a bump at a non-dyadic point where |phi| peaks. When the
  // peak sits on a dyadic point the bump is nudged into the adjacent gap and
  // the realized value falls slightly short of sup_phi; the certificate
  // itself is unaffected.
  std::size_t arg = 0;
  for (std::size_t i = 1; i < phi.values.size(); ++i)
    if (std::abs(phi.values[i]) > std::abs(phi.values[arg])) arg = i;
  Scalar t_star = phi.breakpoints[arg];
  Scalar edge = dyadic(cfg.depth + 1);
  Scalar t_hat = std::max(t_star, std::nextafter(edge, 1.0));
  if (is_dyadic_point(t_hat, cfg.depth)) {
    Scalar lo, hi;
    dyadic_gap(std::nextafter(t_hat, 1.0), cfg.depth, &lo, &hi);
    t_hat = lo + (hi - lo) * 1e-6;
  }
  Scalar lo, hi;
  dyadic_gap(t_hat, cfg.depth, &lo, &hi);
  cert.witness_bump = bump_at(t_hat, lo, hi);
  cert.witness_bump_value = witness_action_lb(n, phi, cert.witness_bump, cfg);

  // Second witness: unit-norm with value 2^{-n} at 2^{-n}; its action
  // realizes |1 - phi(2^{-n})| exactly.
  cert.witness_point = PLFunction({dyadic(n + 1), 1.5 * dyadic(n + 1), dyadic(n), dyadic(n - 1)},
                                  {0.0, 1.0, dyadic(n), 0.0});
  cert.witness_point_value = witness_action_lb(n, phi, cert.witness_point, cfg);
  return cert;
}

AdversarialSearchResult adversarial_phi_search(int n, const ELatticeConfig& cfg, int candidates,
                                               int max_breakpoints, std::uint64_t seed) {
  AdversarialSearchResult result;
  const Scalar edge = dyadic(cfg.depth + 1);

  auto consider = [&](const PLFunction& phi) {
    Scalar lb = e_certificate(n, phi, cfg).lower_bound;
    ++result.candidates;
    if (lb < result.min_certificate) {
      result.min_certificate = lb;
      result.minimizer = phi;
    }
  };

  // The floor is approached by the constant one-half multiplier.
  consider(PLFunction({edge, 1.0}, {0.5, 0.5}));

  while (result.candidates < candidates) {
    auto gen = substream(seed, static_cast<std::uint64_t>(result.candidates));
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
    int which = kind(gen);
    if (which == 0) {
      Scalar v = -1.5 + 3.0 * unit(gen);
      consider(PLFunction({edge, 1.0}, {v, v}));
      continue;
    }
    std::size_t count = 2 + static_cast<std::size_t>(unit(gen) * (max_breakpoints - 2));
    std::vector<Scalar> bps;
    bps.reserve(count);
    bps.push_back(edge);
    while (bps.size() < count) bps.push_back(edge + (1.0 - edge) * unit(gen));
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    std::vector<Scalar> vals(bps.size());
    if (which == 1) {  // free values
      for (auto& v : vals) v = -1.5 + 3.0 * unit(gen);
    } else if (which == 2) {  // jitter around the boundary multiplier
      for (auto& v : vals) v = 0.5 + 0.2 * (unit(gen) - 0.5);
    } else {  // mutate the best candidate so far
      for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = result.minimizer(bps[i]) + 0.05 * (unit(gen) - 0.5);
    }
    consider(PLFunction(std::move(bps), std::move(vals)));
  }
  return result;
}

}  // namespace latbp
