#include "latbp/defects.hpp"

#include "latbp/center.hpp"
#include "latbp/parallel.hpp"
#include "latbp/rng.hpp"
#include "latbp/search.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latbp {

namespace {

void require_square(const Matrix& m, const NormSpec& spec) {
  if (m.rows() != m.cols()) throw std::invalid_argument("defects: matrix must be square");
  spec.check_dim(m.rows());
}

bool exact_mode_applicable(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg) {
  return spec.has_exact_operator_norm() && m.rows() <= cfg.exact_max_n && m.rows() <= 30;
}

Scalar weight_at(const NormSpec& spec, Index i) {
  return spec.is_weighted_sup() ? spec.weights()[i] : 1.0;
}

Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
  Matrix b(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) b(r, c) = m(rows[r], cols[c]);
  return b;
}

// Cross-block norm against a bitmask, avoiding IndexSet churn in the
// enumeration loops. Rows run over the complement, columns over the set.
Scalar block_norm_mask(const Matrix& m, const NormSpec& spec, std::uint32_t mask) {
  const Index n = m.rows();
  if (spec.is_linf() || spec.is_weighted_sup()) {
    Scalar best = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1u << i)) continue;
      Scalar s = 0.0;
      for (Index j = 0; j < n; ++j)
        if (mask & (1u << j)) s += weight_at(spec, i) * std::abs(m(i, j)) / weight_at(spec, j);
      best = std::max(best, s);
    }
    return best;
  }
  if (spec.is_l1()) {
    Scalar best = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      Scalar s = 0.0;
      for (Index i = 0; i < n; ++i)
        if (!(mask & (1u << i))) s += std::abs(m(i, j));
      best = std::max(best, s);
    }
    return best;
  }
  if (spec.is_l2()) {
    IndexSet a = mask_to_index_set(mask, n);
    IndexSet ac = complement_of(a, n);
    if (a.empty() || ac.empty()) return 0.0;
    Matrix b = submatrix(m, ac, a);
    if (b.rows() == 1 || b.cols() == 1) return b.norm();
    Eigen::JacobiSVD<Matrix> svd(b);
    return svd.singularValues()[0];
  }
  throw std::invalid_argument("cross-block norm: spec has no closed form");
}

struct BestSubset {
  Scalar value = -1.0;
  std::uint32_t mask = 0;
  bool any = false;
};

BestSubset better(BestSubset a, BestSubset b, Index n) {
  if (!a.any) return b;
  if (!b.any) return a;
  if (b.value > a.value) return b;
  if (b.value < a.value) return a;
  return index_set_less(mask_to_index_set(b.mask, n), mask_to_index_set(a.mask, n)) ? b : a;
}

SubsetWitness heuristic_subset_search(const Matrix& m, const NormSpec& spec,
                                      const DefectConfig& cfg) {
  const Index n = m.rows();
  // Block value via the exact formula when available, else the certified
  // lower side of the general-p bracket; either way the result is a valid
  // lower bound on the true maximum.
  auto block_value = [&](const std::vector<char>& in) -> Scalar {
    IndexSet a;
    for (Index i = 0; i < n; ++i)
      if (in[static_cast<std::size_t>(i)]) a.push_back(i);
    if (a.empty() || static_cast<Index>(a.size()) == n) return -1.0;
    return cross_block_norm(m, spec, a);
  };

  Scalar best_val = 0.0;
  std::vector<char> best_set(static_cast<std::size_t>(n), 0);
  bool have_best = false;

  auto consider = [&](const std::vector<char>& in, Scalar val) {
    if (!have_best || val > best_val) {
      best_val = val;
      best_set = in;
      have_best = true;
    }
  };

  long deterministic = 2 * n;
  long total_starts = deterministic + cfg.heuristic_restarts;
  for (long s = 0; s < total_starts; ++s) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    if (s < n) {
      in[static_cast<std::size_t>(s)] = 1;  // singleton
    } else if (s < 2 * n) {
      std::fill(in.begin(), in.end(), 1);
      in[static_cast<std::size_t>(s - n)] = 0;  // complement of a singleton
    } else {
      auto gen = substream(cfg.seed, static_cast<std::uint64_t>(s));
      std::uniform_int_distribution<int> coin(0, 1);
      bool any = false, all = true;
      for (Index i = 0; i < n; ++i) {
        in[static_cast<std::size_t>(i)] = static_cast<char>(coin(gen));
        any |= in[static_cast<std::size_t>(i)];
        all &= static_cast<bool>(in[static_cast<std::size_t>(i)]);
      }
      if (!any) in[0] = 1;
      if (all) in[static_cast<std::size_t>(n - 1)] = 0;
    }
    Scalar val = block_value(in);
    // Greedy single-coordinate swaps until a local maximum.
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index i = 0; i < n; ++i) {
        in[static_cast<std::size_t>(i)] ^= 1;
        Scalar cand = block_value(in);
        if (cand > val) {
          val = cand;
          improved = true;
        } else {
          in[static_cast<std::size_t>(i)] ^= 1;
        }
      }
    }
    consider(in, val);
  }

  SubsetWitness out;
  out.value = std::max<Scalar>(best_val, 0.0);
  out.exact = false;
  for (Index i = 0; i < n; ++i)
    if (best_set[static_cast<std::size_t>(i)]) out.subset.push_back(i);
  return out;
}

}  // namespace

Scalar cross_block_norm(const Matrix& m, const NormSpec& spec, const IndexSet& a) {
  require_square(m, spec);
  const Index n = m.rows();
  if (!is_valid_index_set(a, n)) throw std::invalid_argument("cross_block_norm: bad subset");
  if (a.empty() || static_cast<Index>(a.size()) == n) return 0.0;
  if (spec.has_exact_operator_norm() && n <= 30) {
    std::uint32_t mask = 0;
    for (Index i : a) mask |= (1u << i);
    return block_norm_mask(m, spec, mask);
  }
  IndexSet ac = complement_of(a, n);
  Matrix b = submatrix(m, ac, a);
  if (spec.has_exact_operator_norm()) {
    // Rectangular block; reuse the row/column formulas directly.
    if (spec.is_l1()) return b.cwiseAbs().colwise().sum().maxCoeff();
    if (spec.is_linf()) return b.cwiseAbs().rowwise().sum().maxCoeff();
    if (spec.is_weighted_sup()) {
      Scalar best = 0.0;
      for (std::size_t r = 0; r < ac.size(); ++r) {
        Scalar s = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c)
          s += spec.weights()[ac[r]] * std::abs(b(static_cast<Index>(r), static_cast<Index>(c))) /
               spec.weights()[a[c]];
        best = std::max(best, s);
      }
      return best;
    }
    Eigen::JacobiSVD<Matrix> svd(b);
    return svd.singularValues()[0];
  }
  // General p: certified lower bound via the padded matrix.
  Matrix padded = Matrix::Zero(n, n);
  for (std::size_t r = 0; r < ac.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c)
      padded(ac[r], a[c]) = b(static_cast<Index>(r), static_cast<Index>(c));
  return operator_norm(padded, spec).lower;
}

SubsetWitness bp_defect(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg) {
  require_square(m, spec);
  const Index n = m.rows();
  if (n == 1) return SubsetWitness{0.0, {}, true};

  bool exact = cfg.mode == DefectMode::Exact ||
               (cfg.mode == DefectMode::Auto && exact_mode_applicable(m, spec, cfg));
  if (cfg.mode == DefectMode::Exact && !exact_mode_applicable(m, spec, cfg))
    throw std::invalid_argument("bp_defect: exact mode needs a closed-form norm and n <= cap");

  if (!exact) return heuristic_subset_search(m, spec, cfg);

  const std::uint32_t count = (1u << n) - 2;
  BestSubset best = map_reduce<BestSubset>(
      static_cast<long>(count), BestSubset{},
      [&](long t) {
        std::uint32_t mask = static_cast<std::uint32_t>(t) + 1;
        return BestSubset{block_norm_mask(m, spec, mask), mask, true};
      },
      [&](BestSubset acc, BestSubset item) { return better(acc, item, n); });

  SubsetWitness out;
  out.value = best.any ? best.value : 0.0;
  out.subset = mask_to_index_set(best.mask, n);
  out.exact = true;
  return out;
}

Scalar bp_defect_oracle(const Matrix& m, const NormSpec& spec, const OracleBudget& budget) {
  require_square(m, spec);
  const Index n = m.rows();
  if (n == 1) return 0.0;
  const Scalar cap = operator_norm(m, spec).upper;

  auto evaluate = [&](const Vector& x) -> Scalar {
    Scalar nx = vector_norm(x, spec);
    if (nx == 0.0) return 0.0;
    Vector mx = m * x;
    // y: a positive multiple of the indicator of the complement of supp(x);
    // large enough that the meet keeps the off-support image intact.
    Scalar c = std::max(cap, mx.template lpNorm<Eigen::Infinity>());
    Vector y(n);
    for (Index i = 0; i < n; ++i) y[i] = (x[i] == 0.0) ? c : 0.0;
    Vector v = meet(abs_of(mx), y);
    return vector_norm(v, spec) / nx;
  };

  Scalar best = 0.0;
  for (Index j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e[j] = 1.0;
    best = std::max(best, evaluate(e));
  }

  if (budget.support_sweep && n <= budget.sweep_max_n) {
    const std::uint32_t count = (1u << n) - 2;
    for (std::uint32_t mask = 1; mask <= count; ++mask) {
      // Extreme candidate per support pattern: signs from the heaviest
      // complementary row (closed-form maximizer on sup-type norms).
      Index best_row = -1;
      Scalar best_sum = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (mask & (1u << i)) continue;
        Scalar s = 0.0;
        for (Index j = 0; j < n; ++j)
          if (mask & (1u << j)) s += weight_at(spec, i) * std::abs(m(i, j)) / weight_at(spec, j);
        if (s > best_sum) {
          best_sum = s;
          best_row = i;
        }
      }
      if (best_row < 0) continue;
      Vector x = Vector::Zero(n);
      for (Index j = 0; j < n; ++j)
        if (mask & (1u << j))
          x[j] = (m(best_row, j) >= 0 ? 1.0 : -1.0) / weight_at(spec, j);
      best = std::max(best, evaluate(x));
    }
  }

  for (int k = 0; k < budget.random_samples; ++k) {
    auto gen = substream(budget.seed, static_cast<std::uint64_t>(k));
    Vector x = random_vector(gen, n);
    // Thin the support; a full-support sample has no disjoint partner.
    std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
    Scalar keep = 0.15 + 0.7 * unit(gen);
    bool any = false;
    for (Index j = 0; j < n; ++j) {
      if (unit(gen) > keep)
        x[j] = 0.0;
      else
        any = true;
    }
    if (!any || (x.array() != 0.0).count() == n) continue;
    best = std::max(best, evaluate(x));
  }
  return best;
}

Scalar ip_defect(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg) {
  require_square(m, spec);
  const Index n = m.rows();
  if (n == 1) return 0.0;
  if (!exact_mode_applicable(m, spec, cfg))
    throw std::invalid_argument("ip_defect: needs a closed-form norm and n <= cap");

  // Residual after projection: worst norm of (I - P_A) M x over unit x
  // supported in A. Evaluated through explicit residuals (and a Gram
  // eigenproblem on l2) so it cross-checks the block-norm route.
  auto subset_value = [&](std::uint32_t mask) -> Scalar {
    IndexSet a = mask_to_index_set(mask, n);
    IndexSet ac = complement_of(a, n);
    if (a.empty() || ac.empty()) return 0.0;
    if (spec.is_l2()) {
      Matrix b = submatrix(m, ac, a);
      Eigen::SelfAdjointEigenSolver<Matrix> es(b.transpose() * b);
      return std::sqrt(std::max<Scalar>(0.0, es.eigenvalues().maxCoeff()));
    }
    Scalar best = 0.0;
    if (spec.is_l1()) {
      for (Index j : a) {
        Vector residual = m.col(j);
        for (Index i : a) residual[i] = 0.0;
        best = std::max(best, vector_norm(residual, spec));
      }
      return best;
    }
    for (Index i : ac) {
      Vector x = Vector::Zero(n);
      for (Index j : a) x[j] = (m(i, j) >= 0 ? 1.0 : -1.0) / weight_at(spec, j);
      Vector residual = m * x;
      for (Index j : a) residual[j] = 0.0;
      best = std::max(best, vector_norm(residual, spec));
    }
    return best;
  };

  const std::uint32_t count = (1u << n) - 2;
  return map_reduce<Scalar>(
      static_cast<long>(count), 0.0,
      [&](long t) { return subset_value(static_cast<std::uint32_t>(t) + 1); },
      [](Scalar acc, Scalar v) { return std::max(acc, v); });
}

PairWitness dp_defect_lb(const Matrix& m, const NormSpec& spec, const DpBudget& budget) {
  require_square(m, spec);
  const Index n = m.rows();
  PairWitness best;
  best.value = 0.0;
  if (n < 2) return best;

  auto evaluate = [&](const Vector& x, const Vector& y) -> Scalar {
    Scalar nx = vector_norm(x, spec), ny = vector_norm(y, spec);
    if (nx == 0.0 || ny == 0.0) return 0.0;
    Vector v = meet(abs_of(m * (x / nx)), abs_of(m * (y / ny)));
    return vector_norm(v, spec);
  };

  auto consider = [&](const Vector& x, const Vector& y, const IndexSet& a, const IndexSet& b) {
    Scalar v = evaluate(x, y);
    if (v > best.value) {
      best.value = v;
      best.x = x / vector_norm(x, spec);
      best.y = y / vector_norm(y, spec);
      best.support_x = a;
      best.support_y = b;
    }
  };

  struct Split {
    IndexSet a, b;
    Scalar score = 0.0;
  };
  std::vector<Split> splits;

  if (n <= budget.max_split_enumeration_n) {
    // Ternary sweep: each coordinate goes to A, to B, or to neither.
    long total = 1;
    for (Index i = 0; i < n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      long c = code;
      Split s;
      for (Index i = 0; i < n; ++i) {
        int digit = static_cast<int>(c % 3);
        c /= 3;
        if (digit == 1) s.a.push_back(i);
        if (digit == 2) s.b.push_back(i);
      }
      if (s.a.empty() || s.b.empty()) continue;
      if (index_set_less(s.b, s.a)) continue;  // defect is symmetric in (A, B)
      splits.push_back(std::move(s));
    }
  } else {
    for (int k = 0; k < budget.sampled_splits; ++k) {
      auto gen = substream(budget.seed, 0x700 + static_cast<std::uint64_t>(k));
      std::uniform_int_distribution<int> digit(0, 2);
      Split s;
      for (Index i = 0; i < n; ++i) {
        int d = digit(gen);
        if (d == 1) s.a.push_back(i);
        if (d == 2) s.b.push_back(i);
      }
      if (s.a.empty() || s.b.empty()) continue;
      splits.push_back(std::move(s));
    }
  }

  // Basis-pair scan scores every split cheaply.
  for (auto& s : splits) {
    for (Index i : s.a) {
      for (Index j : s.b) {
        Vector x = Vector::Zero(n), y = Vector::Zero(n);
        x[i] = 1.0 / weight_at(spec, i);
        y[j] = 1.0 / weight_at(spec, j);
        Scalar v = evaluate(x, y);
        s.score = std::max(s.score, v);
        if (v > best.value) consider(x, y, s.a, s.b);
      }
    }
  }

  std::stable_sort(splits.begin(), splits.end(),
                   [](const Split& l, const Split& r) { return l.score > r.score; });
  const std::size_t refine_count = std::min<std::size_t>(splits.size(),
                                                         static_cast<std::size_t>(budget.ascent_top_splits));

  // Alternating ascent on the most promising splits.
  for (std::size_t si = 0; si < refine_count; ++si) {
    const Split& s = splits[si];
    Vector mask_a = Vector::Zero(n), mask_b = Vector::Zero(n);
    for (Index i : s.a) mask_a[i] = 1.0;
    for (Index j : s.b) mask_b[j] = 1.0;

    for (int r = 0; r < budget.ascent_restarts; ++r) {
      auto gen = substream(budget.seed, 0x9000 + 131 * si + static_cast<std::uint64_t>(r));
      Vector x = mask_a.cwiseProduct(r == 0 ? Vector::Ones(n) : random_vector(gen, n));
      Vector y = mask_b.cwiseProduct(r == 0 ? Vector::Ones(n) : random_vector(gen, n));
      if (vector_norm(x, spec) == 0.0 || vector_norm(y, spec) == 0.0) continue;
      x /= vector_norm(x, spec);
      y /= vector_norm(y, spec);

      for (int round = 0; round < 3; ++round) {
        for (int side = 0; side < 2; ++side) {
          const Vector& fixed = side == 0 ? y : x;
          const Vector& mask = side == 0 ? mask_a : mask_b;
          Vector b_abs = abs_of(m * fixed);
          auto f = [&](const Vector& z) {
            return vector_norm(Vector(meet(abs_of(m * z), b_abs)), spec);
          };
          auto grad = [&](const Vector& z) {
            Vector mz = m * z;
            Vector v = meet(abs_of(mz), b_abs);
            Vector nsg = norm_subgradient(v, spec);
            Vector w(n);
            for (Index i = 0; i < n; ++i)
              w[i] = (std::abs(mz[i]) <= b_abs[i]) ? nsg[i] * (mz[i] >= 0 ? 1.0 : -1.0) : 0.0;
            Vector g = m.transpose() * w;
            return Vector(g.cwiseProduct(mask));
          };
          AscentConfig acfg;
          acfg.max_iters = budget.ascent_iters;
          AscentResult res = ascend_on_sphere(f, grad, spec, {side == 0 ? x : y}, acfg);
          if (res.maximizer.size() == n) {
            if (side == 0)
              x = res.maximizer;
            else
              y = res.maximizer;
          }
        }
      }
      consider(x, y, s.a, s.b);
    }
  }
  return best;
}

SubsetWitness commutator_max(const Matrix& m, const NormSpec& spec, const DefectConfig& cfg) {
  require_square(m, spec);
  const Index n = m.rows();
  if (!exact_mode_applicable(m, spec, cfg))
    throw std::invalid_argument("commutator_max: needs a closed-form norm and n <= cap");

  const std::uint32_t count = n >= 31 ? 0 : (1u << n);
  BestSubset best = map_reduce<BestSubset>(
      static_cast<long>(count), BestSubset{},
      [&](long t) {
        std::uint32_t mask = static_cast<std::uint32_t>(t);
        Vector p = Vector::Zero(n);
        for (Index i = 0; i < n; ++i)
          if (mask & (1u << i)) p[i] = 1.0;
        Matrix c = p.asDiagonal() * m - m * p.asDiagonal();
        return BestSubset{operator_norm_exact(c, spec), mask, true};
      },
      [&](BestSubset acc, BestSubset item) { return better(acc, item, n); });

  SubsetWitness out;
  out.value = best.any ? best.value : 0.0;
  out.subset = mask_to_index_set(best.mask, n);
  out.exact = true;
  return out;
}

DistToDiagonal dist_to_diagonal(const Matrix& m, const NormSpec& spec, const DistConfig& cfg) {
  require_square(m, spec);
  const Index n = m.rows();
  DistToDiagonal out;
  out.minimizer = m.diagonal();

  if (spec.is_linf() || spec.is_weighted_sup() || spec.is_l1()) {
    Scalar best = 0.0;
    if (spec.is_l1()) {
      for (Index j = 0; j < n; ++j) {
        Scalar s = 0.0;
        for (Index i = 0; i < n; ++i)
          if (i != j) s += std::abs(m(i, j));
        best = std::max(best, s);
      }
    } else {
      for (Index i = 0; i < n; ++i) {
        Scalar s = 0.0;
        for (Index j = 0; j < n; ++j)
          if (j != i) s += weight_at(spec, i) * std::abs(m(i, j)) / weight_at(spec, j);
        best = std::max(best, s);
      }
    }
    out.value = out.lower = out.upper = best;
    out.status = DistStatus::Exact;
    return out;
  }
  if (!spec.is_l2())
    throw std::invalid_argument("dist_to_diagonal: unsupported spec " + spec.to_string());

  // Convex minimization of the top singular value of M - diag(d) by
  // subgradient steps with a decaying Polyak-style target.
  Vector d = m.diagonal();
  auto top = [&](const Vector& dd, Vector* u, Vector* v) -> Scalar {
    Matrix r = m;
    r.diagonal() -= dd;
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (u) *u = svd.matrixU().col(0);
    if (v) *v = svd.matrixV().col(0);
    return svd.singularValues()[0];
  };

  Vector u, v;
  Scalar f = top(d, &u, &v);
  Scalar f_best = f;
  Vector d_best = d;
  Scalar gamma = std::max<Scalar>(f, 1e-3);
  for (int k = 0; k < cfg.max_iters; ++k) {
    Vector g = -(u.cwiseProduct(v));  // subgradient of the top singular value in d
    Scalar gn2 = g.squaredNorm();
    if (gn2 < 1e-30) break;
    gamma = std::max(cfg.tol * 0.5, gamma * 0.995);
    Scalar target = f_best - gamma;
    Scalar t = (f - target) / gn2;
    d -= t * g;
    f = top(d, &u, &v);
    if (f < f_best) {
      if (f_best - f < cfg.tol && k > 32) {
        f_best = f;
        d_best = d;
        break;
      }
      f_best = f;
      d_best = d;
    }
  }
  out.value = out.lower = out.upper = f_best;
  out.minimizer = d_best;
  out.status = DistStatus::ConvexNumerical;
  return out;
}

InverseDefectReport inverse_defect_check(const Matrix& m, const NormSpec& spec,
                                         const DefectConfig& cfg) {
  require_square(m, spec);
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw std::domain_error("inverse_defect_check: matrix is singular");
  Matrix inv = lu.inverse();

  Scalar norm_m = operator_norm(m, spec).upper;
  Scalar norm_inv = spec.has_exact_operator_norm() ? operator_norm_exact(inv, spec)
                                                   : operator_norm(inv, spec).upper;
  if (norm_m * norm_inv >= 1e12)
    throw std::domain_error("inverse_defect_check: condition estimate >= 1e12");

  InverseDefectReport rep;
  rep.bp = bp_defect(m, spec, cfg).value;
  rep.bp_inverse = bp_defect(inv, spec, cfg).value;
  rep.inverse_norm = norm_inv;
  rep.bound = 2.0 * norm_inv * norm_inv * rep.bp;
  rep.slack_ratio = rep.bound > 0.0 ? rep.bp_inverse / rep.bound : 0.0;
  rep.holds = rep.bp_inverse <= rep.bound + 1e-8;
  return rep;
}

DefectReport analyze_operator(const Matrix& m, const NormSpec& spec, const AnalyzeOptions& opts) {
  require_square(m, spec);
  DefectReport rep;
  rep.dim = m.rows();
  rep.norm = spec.to_string();
  rep.seed = opts.defect.seed;
  rep.op_norm = operator_norm(m, spec);
  rep.bp = bp_defect(m, spec, opts.defect);
  rep.oracle_lb = bp_defect_oracle(m, spec, opts.oracle);
  rep.dp_lb = dp_defect_lb(m, spec, opts.dp);

  const bool exact_ok = exact_mode_applicable(m, spec, opts.defect);
  if (exact_ok) {
    rep.ip = ip_defect(m, spec, opts.defect);
    rep.ip_available = true;
    rep.commutator = commutator_max(m, spec, opts.defect);
    rep.commutator_available = true;
  }
  if (spec.has_exact_operator_norm()) {
    rep.dist_diag = dist_to_diagonal(m, spec);
    rep.dist_available = true;
  }
  try {
    rep.inverse = inverse_defect_check(m, spec, opts.defect);
  } catch (const std::domain_error&) {
    rep.inverse = std::nullopt;
  }
  if (opts.with_center_gap) {
    CenterConfig ccfg;
    ccfg.restarts = 16;
    ccfg.ascent_iters = 120;
    ccfg.seed = opts.defect.seed;
    Scalar eps = rep.bp.value * (1.0 + 1e-6) + 1e-12;
    rep.center_at_defect = rho_center(m, spec, eps, 1e-4, ccfg);
  }

  if (rep.bp.value > rep.op_norm.upper + kDefaultTol)
    throw std::logic_error("analyze: bp defect exceeded the operator norm");
  if (rep.bp.exact && rep.dist_available) {
    bool bp_zero = rep.bp.value <= kDefaultTol;
    bool dist_zero = rep.dist_diag.value <= kDefaultTol;
    if (bp_zero != dist_zero)
      throw std::logic_error("analyze: bp = 0 and dist-to-diagonal = 0 must agree");
  }
  return rep;
}

}  // namespace latbp
