#include "latbp/norms.hpp"

#include "latbp/rng.hpp"
#include "latbp/search.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace latbp {

NormSpec NormSpec::lp(Scalar p) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("NormSpec: p must satisfy p >= 1 (or be infinite)");
  return NormSpec(Kind::Lp, p, Vector());
}

NormSpec NormSpec::weighted_sup(Vector weights) {
  if (weights.size() < 1 || (weights.array() <= 0.0).any() || !weights.allFinite())
    throw std::invalid_argument("NormSpec: weights must be strictly positive and finite");
  return NormSpec(Kind::WeightedSup, kInf, std::move(weights));
}

NormSpec NormSpec::dual() const {
  if (!is_lp()) throw std::invalid_argument("NormSpec::dual: defined for lp specs only");
  if (p_ == 1.0) return linf();
  if (std::isinf(p_)) return l1();
  return lp(p_ / (p_ - 1.0));
}

void NormSpec::check_dim(Index n) const {
  if (is_weighted_sup() && weights_.size() != n)
    throw std::invalid_argument("NormSpec: weight vector length does not match dimension");
}

std::string NormSpec::to_string() const {
  if (is_weighted_sup()) {
    std::ostringstream os;
    os << "wsup[" << weights_.size() << "]";
    return os.str();
  }
  if (is_l1()) return "l1";
  if (is_l2()) return "l2";
  if (is_linf()) return "linf";
  std::ostringstream os;
  os << "lp:" << p_;
  return os.str();
}

NormSpec parse_norm_spec_inline(const std::string& text) {
  if (text == "l1") return NormSpec::l1();
  if (text == "l2") return NormSpec::l2();
  if (text == "linf") return NormSpec::linf();
  if (text.rfind("lp:", 0) == 0) {
    std::string arg = text.substr(3);
    if (arg == "inf") return NormSpec::linf();
    std::size_t used = 0;
    Scalar p = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad lp spec: " + text);
    return NormSpec::lp(p);
  }
  throw std::invalid_argument("unknown norm spec: " + text);
}

Vector norm_subgradient(const Vector& v, const NormSpec& spec) {
  const Index n = v.size();
  Vector g = Vector::Zero(n);
  if (spec.is_weighted_sup() || spec.is_linf()) {
    // Supporting functional of the max: the heaviest coordinate.
    Index best = 0;
    Scalar best_val = -1.0;
    for (Index i = 0; i < n; ++i) {
      Scalar w = spec.is_weighted_sup() ? spec.weights()[i] : 1.0;
      Scalar c = w * std::abs(v[i]);
      if (c > best_val) {
        best_val = c;
        best = i;
      }
    }
    Scalar w = spec.is_weighted_sup() ? spec.weights()[best] : 1.0;
    g[best] = w * (v[best] >= 0 ? 1.0 : -1.0);
    return g;
  }
  const Scalar p = spec.p();
  if (p == 1.0) {
    for (Index i = 0; i < n; ++i) g[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  Scalar nv = vector_norm(v, spec);
  if (nv == 0.0) return g;
  for (Index i = 0; i < n; ++i) {
    Scalar s = v[i] >= 0 ? 1.0 : -1.0;
    g[i] = s * std::pow(std::abs(v[i]) / nv, p - 1.0);
  }
  return g;
}

namespace {

Scalar max_abs_col_sum(const Matrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

Scalar max_abs_row_sum(const Matrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Scalar weighted_row_sum_norm(const Matrix& m, const Vector& w) {
  // ‖M‖ under max_i w_i|x_i| equals the ℓ∞ norm after the diagonal
  // similarity W M W⁻¹.
  Scalar best = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    Scalar s = 0.0;
    for (Index j = 0; j < m.cols(); ++j) s += w[i] * std::abs(m(i, j)) / w[j];
    best = std::max(best, s);
  }
  return best;
}

Scalar spectral_norm(const Matrix& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

/// Lower bound for a general ℓ_p induced norm: dual-exponent power
/// iteration, monotone in the estimate, from several deterministic and
/// seeded starts.
Scalar lp_norm_lower_bound(const Matrix& m, Scalar p, const OpNormConfig& cfg) {
  const Index n = m.cols();
  const NormSpec primal = NormSpec::lp(p);
  const Scalar q = p == 1.0 ? kInf : p / (p - 1.0);

  auto dual_map = [](const Vector& v, Scalar r) {
    // Duality map carrying a vector to a maximizer of <·, v> on the unit
    // ℓ_r ball (up to scale).
    Vector out(v.size());
    if (std::isinf(r)) {
      Index best = 0;
      v.cwiseAbs().maxCoeff(&best);
      out.setZero();
      out[best] = v[best] >= 0 ? 1.0 : -1.0;
      return out;
    }
    for (Index i = 0; i < v.size(); ++i) {
      Scalar s = v[i] >= 0 ? 1.0 : -1.0;
      out[i] = s * std::pow(std::abs(v[i]), r - 1.0);
    }
    return out;
  };

  std::vector<Vector> starts = standard_starts(m, primal, cfg.restarts, cfg.seed);
  Scalar best = 0.0;
  for (const auto& s0 : starts) {
    Vector x = s0;
    Scalar nx = vector_norm(x, primal);
    if (nx == 0.0) continue;
    x /= nx;
    Scalar prev = -1.0;
    for (int it = 0; it < cfg.max_iters; ++it) {
      Vector y = m * x;
      Scalar val = vector_norm(y, primal);
      best = std::max(best, val);
      if (val <= prev * (1.0 + 1e-14)) break;
      prev = val;
      Vector z = m.transpose() * dual_map(y, p);
      Vector xn = dual_map(z, q);
      Scalar nz = vector_norm(xn, primal);
      if (nz == 0.0) break;
      x = xn / nz;
    }
  }
  return best;
}

}  // namespace

Scalar operator_norm_exact(const Matrix& m, const NormSpec& spec) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator_norm: matrix must be square");
  spec.check_dim(m.rows());
  if (spec.is_l1()) return max_abs_col_sum(m);
  if (spec.is_linf()) return max_abs_row_sum(m);
  if (spec.is_weighted_sup()) return weighted_row_sum_norm(m, spec.weights());
  if (spec.is_l2()) return spectral_norm(m);
  throw std::invalid_argument("operator_norm_exact: no closed form for " + spec.to_string());
}

OpNormBracket operator_norm(const Matrix& m, const NormSpec& spec, const OpNormConfig& cfg) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator_norm: matrix must be square");
  spec.check_dim(m.rows());
  OpNormBracket out;
  if (spec.has_exact_operator_norm()) {
    out.lower = out.upper = operator_norm_exact(m, spec);
    out.exact = true;
    return out;
  }
  const Scalar p = spec.p();
  out.lower = lp_norm_lower_bound(m, p, cfg);
  const Scalar n1 = max_abs_col_sum(m);
  const Scalar ninf = max_abs_row_sum(m);
  out.upper = std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
  out.exact = false;
  if (out.lower > out.upper) out.upper = out.lower;  // rounding guard
  return out;
}

}  // namespace latbp
