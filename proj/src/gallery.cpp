#include "latbp/gallery.hpp"

#include "latbp/approximants.hpp"
#include "latbp/center.hpp"
#include "latbp/elattice.hpp"
#include "latbp/renorm.hpp"
#include "latbp/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latbp {

namespace {

void gallery_assert(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("gallery assertion failed: " + what);
}

}  // namespace

AntidiagonalBundle antidiagonal_example(Scalar eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("antidiagonal_example: eps must be positive");
  AntidiagonalBundle bundle;
  bundle.eps = eps;
  bundle.m = Matrix::Zero(2, 2);
  bundle.m(0, 1) = eps;
  bundle.m(1, 0) = eps;
  Matrix inv = bundle.m.inverse();

  for (const auto& name : {std::string("l1"), std::string("l2"), std::string("linf")}) {
    NormSpec spec = parse_norm_spec_inline(name);
    AntidiagonalBundle::PerNorm pn;
    pn.bp = bp_defect(bundle.m, spec).value;
    pn.bp_inverse = bp_defect(inv, spec).value;
    pn.op_norm = operator_norm_exact(bundle.m, spec);
    Scalar inv_norm = operator_norm_exact(inv, spec);
    pn.inverse_bound = 2.0 * inv_norm * inv_norm * pn.bp;
    pn.ratio = pn.bp_inverse / pn.inverse_bound;

    gallery_assert(std::abs(pn.bp - eps) <= 1e-12, "antidiagonal bp = eps on " + name);
    gallery_assert(std::abs(pn.bp_inverse - 1.0 / eps) <= 1e-12 * std::max(1.0, 1.0 / eps),
                   "antidiagonal bp of inverse = 1/eps on " + name);
    gallery_assert(std::abs(pn.op_norm - eps) <= 1e-12, "antidiagonal norm = eps on " + name);
    gallery_assert(std::abs(pn.ratio - 0.5) <= 1e-12, "antidiagonal bound ratio = 1/2 on " + name);
    bundle.per_norm[name] = pn;
  }
  return bundle;
}

// ---------------------------------------------------------------------------

namespace {

// In-place Walsh–Hadamard transform by the Sylvester pattern (unnormalized:
// the matrix has ±1 entries and H² = dim·I).
void fwht(Vector& x) {
  const Index n = x.size();
  for (Index len = 1; len < n; len <<= 1) {
    for (Index i = 0; i < n; i += len << 1) {
      for (Index j = i; j < i + len; ++j) {
        Scalar a = x[j], b = x[j + len];
        x[j] = a + b;
        x[j + len] = a - b;
      }
    }
  }
}

int popcount_parity(Index v) {
  int c = 0;
  while (v) {
    c ^= 1;
    v &= v - 1;
  }
  return c;
}

// ‖A‖₂ by power iteration on AᵀA given matvecs for A and Aᵀ.
template <typename MatVec, typename MatVecT>
Scalar power_norm(Index n, MatVec av, MatVecT atv, int iters = 60) {
  Vector v = Vector::Ones(n);
  v[0] += 0.5;  // break symmetry
  v.normalize();
  Scalar sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vector w = atv(av(v));
    Scalar nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    Scalar next = std::sqrt(nw);
    if (std::abs(next - sigma) <= 1e-13 * std::max(1.0, next)) return next;
    sigma = next;
    v = w;
  }
  return sigma;
}

}  // namespace

Matrix walsh_operator(int i) {
  if (i < 2 || (1 << i) > 64) throw std::invalid_argument("walsh_operator: need 2 <= i <= 6");
  const Index n = Index(1) << i;
  Matrix h(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) h(r, c) = popcount_parity(r & c) ? -1.0 : 1.0;
  return Matrix::Identity(n, n) + std::ldexp(1.0, -i) * h;
}

WalshBundle walsh_modulus_example(int i, std::uint64_t permutation_seed) {
  if (i < 2 || i > 13) throw std::invalid_argument("walsh_modulus_example: need 2 <= i <= 13");
  WalshBundle bundle;
  bundle.i = i;
  const Index n = Index(1) << i;
  bundle.dim = n;
  const Scalar scale = std::ldexp(1.0, -i);  // 2^{-i}
  const NormSpec l2 = NormSpec::l2();

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index(0));
  {
    auto gen = substream(permutation_seed, 0);
    for (Index k = n - 1; k > 0; --k) {
      std::uniform_int_distribution<Index> pick(0, k);
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(pick(gen))]);
    }
  }

  auto h_mat = [&](const Vector& x) {
    Vector y = x;
    fwht(y);
    return y;
  };
  auto h_perm = [&](const Vector& x) {
    Vector y = h_mat(x);
    Vector out(n);
    for (Index r = 0; r < n; ++r) out[r] = y[perm[static_cast<std::size_t>(r)]];
    return out;
  };
  auto h_perm_t = [&](const Vector& x) {
    Vector y(n);
    for (Index r = 0; r < n; ++r) y[perm[static_cast<std::size_t>(r)]] = x[r];
    fwht(y);
    return y;
  };

  // Modulus action, matrix-free: |T| = 2^{-i} (all-ones) + diagonal
  // correction from the signed diagonal of the Hadamard part.
  auto modulus_apply = [&](const Vector& x, bool permuted) {
    Vector out = Vector::Constant(n, scale * x.sum());
    for (Index r = 0; r < n; ++r) {
      Index hr = permuted ? perm[static_cast<std::size_t>(r)] : r;
      Scalar diag_sign = popcount_parity(hr & r) ? -1.0 : 1.0;
      Scalar d = std::abs(1.0 + scale * diag_sign) - scale;
      out[r] += d * x[r];
    }
    return out;
  };

  // Canonical witness pair: x on the first half, y on the second.
  Vector x = Vector::Zero(n), y = Vector::Zero(n);
  const Scalar amp = std::pow(2.0, 0.5 * (1.0 - i));
  for (Index r = 0; r < n / 2; ++r) x[r] = amp;
  for (Index r = n / 2; r < n; ++r) y[r] = 1.0;
  gallery_assert(std::abs(vector_norm(x, l2) - 1.0) <= 1e-12, "walsh witness x has unit norm");

  auto gap_of = [&](bool permuted) {
    Vector v = meet(abs_of(modulus_apply(x, permuted)), y);
    return vector_norm(v, l2);
  };
  bundle.gap = gap_of(false);
  bundle.gap_permuted = gap_of(true);

  bundle.dist_to_identity =
      scale * power_norm(n, [&](const Vector& v) { return h_mat(v); },
                         [&](const Vector& v) { return h_mat(v); });
  Scalar dist_perm = scale * power_norm(n, h_perm, h_perm_t);
  bundle.bp_upper = std::pow(2.0, -0.5 * i);
  bundle.modulus_bp_lower = bundle.gap;

  gallery_assert(std::abs(bundle.gap - 0.5) <= 1e-9, "walsh gap = 1/2");
  gallery_assert(std::abs(bundle.gap_permuted - 0.5) <= 1e-9, "permuted walsh gap = 1/2");
  gallery_assert(std::abs(bundle.dist_to_identity - bundle.bp_upper) <= 1e-9,
                 "walsh distance to identity = 2^{-i/2}");
  gallery_assert(std::abs(dist_perm - bundle.bp_upper) <= 1e-9,
                 "permuted walsh distance to identity = 2^{-i/2}");

  if (n <= 8) {
    Matrix t = walsh_operator(i);
    bundle.bp_exact = bp_defect(t, l2).value;
    bundle.modulus_bp_exact = bp_defect(Matrix(t.cwiseAbs()), l2).value;
    gallery_assert(bundle.bp_exact <= bundle.bp_upper + 1e-9, "walsh exact bp below 2^{-i/2}");
    gallery_assert(bundle.modulus_bp_exact >= bundle.gap - 1e-9,
                   "walsh modulus bp above the witness gap");
  }
  return bundle;
}

// ---------------------------------------------------------------------------

namespace {

enum class Scope { Bounds, Approx };

struct Check {
  SuiteReport* report;
  bool bounds_on;
  bool approx_on;
  void operator()(Scope scope, const std::string& name, Scalar lhs, Scalar rhs) const {
    if (scope == Scope::Bounds && !bounds_on) return;
    if (scope == Scope::Approx && !approx_on) return;
    // Inequality lhs <= rhs; slack is lhs - rhs.
    auto& stats = report->inequalities[name];
    ++stats.checks;
    ++report->total_checks;
    Scalar slack = lhs - rhs;
    stats.worst_slack = std::max(stats.worst_slack, slack);
    if (!(slack <= 0.0)) {
      ++stats.failures;
      ++report->total_failures;
    }
  }
};

Matrix draw_matrix(std::mt19937_64& gen, Index n, const std::string& ensemble) {
  if (ensemble == "positive") return random_matrix(gen, n, 0.0, 1.0);
  Matrix m = random_matrix(gen, n, -1.0, 1.0);
  if (ensemble == "sparse") {
    std::uniform_real_distribution<Scalar> u(0.0, 1.0);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c)
        if (u(gen) < 0.5) m(r, c) = 0.0;
  }
  return m;
}

Partition random_partition(std::mt19937_64& gen, Index n, std::size_t max_blocks) {
  std::uniform_int_distribution<std::size_t> nb(1, std::min<std::size_t>(max_blocks, n));
  std::size_t blocks = nb(gen);
  std::vector<IndexSet> sets(blocks);
  for (Index i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, blocks - 1);
    sets[pick(gen)].push_back(i);
  }
  sets.erase(std::remove_if(sets.begin(), sets.end(), [](const IndexSet& s) { return s.empty(); }),
             sets.end());
  return Partition(n, std::move(sets));
}

std::vector<Partition> random_chain(std::mt19937_64& gen, Index n) {
  std::vector<Partition> chain;
  chain.push_back(Partition::one_block(n));
  Partition fine = Partition::finest(n);
  Partition mid = random_partition(gen, n, static_cast<std::size_t>(std::max<Index>(2, n / 2)));
  if (precedes(chain.back(), mid) && !(mid == fine)) chain.push_back(mid);
  chain.push_back(fine);
  return chain;
}

}  // namespace

SuiteReport random_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.config = cfg;
  const bool bounds_on = cfg.scope == "all" || cfg.scope == "bounds";
  const bool approx_on = cfg.scope == "all" || cfg.scope == "approximants";
  if (!bounds_on && !approx_on)
    throw std::invalid_argument("random_suite: unknown scope " + cfg.scope);
  Check check{&report, bounds_on, approx_on};

  DefectConfig defect_cfg;
  defect_cfg.seed = cfg.seed;
  DpBudget dp_budget;
  dp_budget.ascent_top_splits = 4;
  dp_budget.ascent_restarts = 2;
  dp_budget.ascent_iters = 40;
  dp_budget.seed = cfg.seed;
  OracleBudget oracle_budget;
  oracle_budget.random_samples = 32;
  oracle_budget.seed = cfg.seed;
  DistConfig dist_cfg;
  dist_cfg.max_iters = 300;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    auto gen = substream(cfg.seed, static_cast<std::uint64_t>(trial));
    const Index n = cfg.dims[static_cast<std::size_t>(trial) % cfg.dims.size()];
    const std::string& ensemble =
        cfg.ensembles[static_cast<std::size_t>(trial) % cfg.ensembles.size()];
    Matrix m = draw_matrix(gen, n, ensemble);
    Matrix other = draw_matrix(gen, n, "uniform");
    std::uniform_real_distribution<Scalar> unit(0.0, 1.0);

    for (const auto& spec_name : cfg.specs) {
      NormSpec spec = parse_norm_spec_inline(spec_name);
      const Scalar norm_m = operator_norm_exact(m, spec);
      const Scalar bp = bp_defect(m, spec, defect_cfg).value;
      check(Scope::Bounds, "bp_le_norm", bp, norm_m + 1e-12);

      Matrix diag = diagonal_part(m);
      check(Scope::Approx, "diag_residual_le_4bp", operator_norm_exact(Matrix(m - diag), spec),
            4.0 * bp + 1e-8);
      check(Scope::Approx, "diag_norm_le_norm", operator_norm_exact(diag, spec), norm_m + 1e-12);

      if (bounds_on) {
        const Scalar ip = ip_defect(m, spec, defect_cfg);
        check(Scope::Bounds, "ip_eq_bp", std::abs(ip - bp), 1e-9);

        if (spec.is_lp()) {
          const Scalar dual_bp = bp_defect(m.transpose(), spec.dual(), defect_cfg).value;
          check(Scope::Bounds, "dual_bp_eq", std::abs(bp - dual_bp), 1e-9);
        }

        SubsetWitness comm = commutator_max(m, spec, defect_cfg);
        check(Scope::Bounds, "commutator_ge_bp", bp, comm.value + 1e-9);
        check(Scope::Bounds, "commutator_le_2bp", comm.value, 2.0 * bp + 1e-9);

        PairWitness dp = dp_defect_lb(m, spec, dp_budget);
        check(Scope::Bounds, "dp_le_2bp", dp.value, 2.0 * bp + 1e-9);

        const Scalar oracle = bp_defect_oracle(m, spec, oracle_budget);
        check(Scope::Bounds, "oracle_le_bp", oracle, bp + 1e-9);
        if (spec.is_linf())
          check(Scope::Bounds, "oracle_eq_bp_sup", std::abs(oracle - bp), 1e-9);

        DistToDiagonal dist = dist_to_diagonal(m, spec, dist_cfg);
        check(Scope::Bounds, "dist_ge_bp", bp, dist.value + 1e-9);
        check(Scope::Bounds, "dist_le_4bp", dist.value, 4.0 * bp + 1e-8);
        if (spec.is_l1() || spec.is_linf()) {
          check(Scope::Bounds, "dist_le_2bp_supnorms", dist.value, 2.0 * bp + 1e-9);
          const Scalar bp_abs = bp_defect(Matrix(m.cwiseAbs()), spec, defect_cfg).value;
          check(Scope::Bounds, "modulus_bp_eq", std::abs(bp_abs - bp), 1e-9);
        }

        // bp is a seminorm: 1-Lipschitz, subadditive, absolutely homogeneous.
        const Scalar bp_other = bp_defect(other, spec, defect_cfg).value;
        check(Scope::Bounds, "bp_lipschitz", std::abs(bp - bp_other),
              operator_norm_exact(Matrix(m - other), spec) + 1e-9);
        check(Scope::Bounds, "bp_subadditive", bp_defect(Matrix(m + other), spec, defect_cfg).value,
              bp + bp_other + 1e-9);
        const Scalar c = 2.0 * unit(gen) - 1.0;
        check(Scope::Bounds, "bp_homogeneous",
              std::abs(bp_defect(Matrix(c * m), spec, defect_cfg).value - std::abs(c) * bp), 1e-9);

        if (trial % 20 == 0) {
          CenterConfig ccfg;
          ccfg.restarts = 8;
          ccfg.ascent_iters = 80;
          ccfg.seed = cfg.seed;
          CenterEstimate at_norm = rho_center(m, spec, norm_m * 1.0001 + 1e-9, 1e-4, ccfg);
          check(Scope::Bounds, "rho_zero_past_norm", at_norm.rho_upper, 1e-4 + 1e-9);
          if (trial % 60 == 0 && norm_m > 0) {
            CenterEstimate rho_wide = rho_center(m, spec, 0.75 * norm_m, 1e-4, ccfg);
            CenterEstimate rho_narrow = rho_center(m, spec, 0.5 * norm_m, 1e-4, ccfg);
            if (rho_wide.feasible && rho_narrow.feasible)
              check(Scope::Bounds, "rho_nonincreasing", rho_wide.rho_lower,
                    rho_narrow.rho_upper + 2e-4);
          }
        }
      }

      if (approx_on && spec.is_linf()) {
        check(Scope::Approx, "ck_residual_le_2bp",
              operator_norm_exact(Matrix(m - ck_multiplier(m)), spec), 2.0 * bp + 1e-9);

        // Disjoint unit pair: pointwise product bound and the
        // zero-coordinate criterion.
        Vector xv = Vector::Zero(n), yv = Vector::Zero(n);
        for (Index k = 0; k < n; ++k) {
          Scalar v = 2.0 * unit(gen) - 1.0;
          if (unit(gen) < 0.5)
            xv[k] = v;
          else
            yv[k] = v;
        }
        if (vector_norm(xv, spec) > 0 && vector_norm(yv, spec) > 0) {
          xv /= vector_norm(xv, spec);
          yv /= vector_norm(yv, spec);
          Vector px = m * xv, py = m * yv;
          check(Scope::Approx, "product_bound", (px.cwiseProduct(py)).cwiseAbs().maxCoeff(),
                bp * norm_m + 1e-9);
          for (Index k = 0; k < n; ++k)
            if (xv[k] == 0.0)
              check(Scope::Approx, "zero_coordinate_bound", std::abs(px[k]), bp + 1e-9);
        }
      }
    }

    check(Scope::Approx, "averaging_identity", offdiag_average_check(m, random_partition(gen, n, 8)),
          1e-12);

    if (ensemble == "positive" && approx_on) {
      auto chain = random_chain(gen, n);
      std::vector<Vector> probes;
      for (int s = 0; s < 3; ++s) probes.push_back(random_vector(gen, n, 0.0, 1.0));
      NetInfimumResult net = positive_net_infimum(m, chain, probes);
      check(Scope::Approx, "positive_net_monotone", net.worst_violation, 1e-12);
    }

    if (trial % 10 == 0 && bounds_on) {
      try {
        InverseDefectReport inv =
            inverse_defect_check(m, parse_norm_spec_inline(cfg.specs[0]), defect_cfg);
        check(Scope::Bounds, "inverse_bound", inv.bp_inverse, inv.bound + 1e-8);
      } catch (const std::domain_error&) {
        // singular or ill-conditioned draw; nothing to verify
      }
    }

    // Clip decomposition: ‖y - u‖ equals ‖(|y| - |x|)₊‖ in every norm.
    Vector yv = random_vector(gen, n), xv = random_vector(gen, n);
    Vector u = clip_to_ideal(yv, xv);
    for (const auto& spec_name : cfg.specs) {
      NormSpec spec = parse_norm_spec_inline(spec_name);
      check(Scope::Approx, "clip_distance_identity",
            std::abs(vector_norm(Vector(yv - u), spec) -
                     vector_norm(Vector(pos_part(Vector(abs_of(yv) - abs_of(xv)))), spec)),
            1e-12);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

PLFunction random_lattice_element(std::mt19937_64& gen, int depth) {
  const Scalar edge = std::ldexp(1.0, -(depth + 1));
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 14);
  std::vector<Scalar> bps{edge};
  int extra = count(gen);
  for (int k = 0; k < extra; ++k) bps.push_back(edge + (1.0 - edge) * unit(gen));
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<Scalar> vals(bps.size());
  vals[0] = 0.0;
  for (std::size_t k = 1; k < vals.size(); ++k) {
    vals[k] = 2.0 * unit(gen) - 1.0;
    if (unit(gen) < 0.2) vals[k] = 0.0;
  }
  return PLFunction(std::move(bps), std::move(vals));
}

}  // namespace

SuiteReport function_suite(const FunctionSuiteConfig& cfg) {
  SuiteReport report;
  report.config.seed = cfg.seed;
  report.config.trials = cfg.trials;
  report.config.specs = {"e-lattice", "renorm"};
  report.config.ensembles = {"pl-random"};
  report.config.scope = "function";
  Check check{&report, true, true};
  const ELatticeConfig ecfg{cfg.depth};

  for (int n : cfg.ns) {
    // Fixed-point and annihilation identities of the hat operators.
    PLFunction xn = canonical_hat(n);
    PLFunction txn = apply_Tn(n, xn, ecfg);
    check(Scope::Bounds, "tn_fixed_point",
          e_norm(pl_sub(txn, xn), ecfg), 1e-12);
    if (n + 1 <= cfg.depth - 1)
      check(Scope::Bounds, "tn_annihilates_other_hats",
            e_norm(apply_Tn(n, canonical_hat(n + 1), ecfg), ecfg), 1e-12);

    for (int t = 0; t < cfg.trials; ++t) {
      auto gen = substream(cfg.seed, 0xf00 + 977 * static_cast<std::uint64_t>(n) +
                                         static_cast<std::uint64_t>(t));
      PLFunction f = random_lattice_element(gen, cfg.depth);
      if (f.is_zero()) continue;
      check(Scope::Bounds, "tn_contraction", e_norm(apply_Tn(n, f, ecfg), ecfg),
            e_norm(f, ecfg) + 1e-12);
      try {
        Scalar ratio = center_witness_check(n, f, ecfg);
        check(Scope::Bounds, "center_witness_le_2^-n", ratio, std::ldexp(1.0, -n) + 1e-12);
      } catch (const std::logic_error&) {
        check(Scope::Bounds, "center_witness_le_2^-n", 1.0, 0.0);  // forced failure
      }
    }

    AdversarialSearchResult adv =
        adversarial_phi_search(n, ecfg, cfg.adversarial, 50, cfg.seed + static_cast<std::uint64_t>(n));
    check(Scope::Bounds, "certificate_floor", 0.5 - 1e-12, adv.min_certificate);
    check(Scope::Bounds, "certificate_floor_attained", adv.min_certificate, 0.5 + 1e-12);

    // Witness re-check on a few random multipliers.
    for (int t = 0; t < 25; ++t) {
      auto gen = substream(cfg.seed, 0xabc0 + 31 * static_cast<std::uint64_t>(n) +
                                         static_cast<std::uint64_t>(t));
      PLFunction phi = random_lattice_element(gen, cfg.depth);
      ECertificate cert = e_certificate(n, phi, ecfg);
      check(Scope::Bounds, "witness_realizes_point_term", cert.point_term,
            cert.witness_point_value + 1e-12);
      check(Scope::Bounds, "witness_values_are_lower_bounds",
            std::max(cert.witness_bump_value, 0.0), std::max(cert.lower_bound, cert.witness_point_value) + 1e-9);
    }
  }

  for (Scalar eps : cfg.eps_values) {
    for (int t = 0; t < std::max(1, cfg.trials / 5); ++t) {
      auto gen = substream(cfg.seed, 0x7e40 + static_cast<std::uint64_t>(eps * 1e6) +
                                         static_cast<std::uint64_t>(t));
      std::uniform_int_distribution<Index> len(1, 24);
      std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
      SeqWithLimit psi{random_vector(gen, len(gen), -1.5, 1.5), 3.0 * unit(gen) - 1.5, 0.0};
      RenormModel model;
      model.samples = 50;
      model.seed = cfg.seed + static_cast<std::uint64_t>(t);
      RenormCertificate cert = renorm_certificate(eps, psi, model);
      check(Scope::Bounds, "renorm_floor", cert.guarantee, cert.lower_bound + 1e-12);
      check(Scope::Bounds, "renorm_contraction", 0.0, cert.contraction_margin + 1e-12);
      check(Scope::Bounds, "renorm_center", 0.0, cert.center_margin + 1e-12);
    }
  }
  return report;
}

}  // namespace latbp
