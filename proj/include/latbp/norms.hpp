#pragma once

#include "latbp/types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace latbp {

/// Which lattice norm is in force: an ℓ_p norm (p in [1, ∞]) or a weighted
/// sup norm max_i w_i |x_i| with strictly positive weights.
class NormSpec {
 public:
  enum class Kind { Lp, WeightedSup };

  static NormSpec lp(Scalar p);
  static NormSpec l1() { return lp(1.0); }
  static NormSpec l2() { return lp(2.0); }
  static NormSpec linf() { return lp(kInf); }
  static NormSpec weighted_sup(Vector weights);

  Kind kind() const { return kind_; }
  Scalar p() const { return p_; }
  const Vector& weights() const { return weights_; }

  bool is_lp() const { return kind_ == Kind::Lp; }
  bool is_l1() const { return is_lp() && p_ == 1.0; }
  bool is_l2() const { return is_lp() && p_ == 2.0; }
  bool is_linf() const { return is_lp() && std::isinf(p_); }
  bool is_weighted_sup() const { return kind_ == Kind::WeightedSup; }

  /// Norms with closed-form induced operator norms.
  bool has_exact_operator_norm() const {
    return is_l1() || is_l2() || is_linf() || is_weighted_sup();
  }

  /// ℓ_q with 1/p + 1/q = 1. Only defined for ℓ_p specs.
  NormSpec dual() const;

  /// Weighted specs pin the dimension; ℓ_p fits any.
  void check_dim(Index n) const;

  std::string to_string() const;

 private:
  NormSpec(Kind kind, Scalar p, Vector weights)
      : kind_(kind), p_(p), weights_(std::move(weights)) {}

  Kind kind_;
  Scalar p_ = 2.0;
  Vector weights_;
};

/// Parses "l1" | "l2" | "linf" | "lp:<p>". ("wsup:<path>" is handled by the
/// I/O layer, which can read the weights file.)
NormSpec parse_norm_spec_inline(const std::string& text);

template <typename Derived>
Scalar vector_norm(const Eigen::MatrixBase<Derived>& x, const NormSpec& spec) {
  spec.check_dim(x.size());
  if (spec.is_weighted_sup())
    return (spec.weights().array() * x.derived().array().abs()).maxCoeff();
  const Scalar p = spec.p();
  if (std::isinf(p)) return x.template lpNorm<Eigen::Infinity>();
  if (p == 1.0) return x.template lpNorm<1>();
  if (p == 2.0) return x.template lpNorm<2>();
  return std::pow(x.derived().array().abs().pow(p).sum(), 1.0 / p);
}

/// Subgradient of the norm at v (any selection); used by the ascent searches.
Vector norm_subgradient(const Vector& v, const NormSpec& spec);

/// Induced operator norm. Exact (lower == upper) for ℓ1, ℓ2, ℓ∞ and
/// weighted sup; otherwise a bracket from multi-start ascent (lower) and the
/// interpolation bound ‖M‖_p ≤ ‖M‖_1^{1/p} ‖M‖_∞^{1-1/p} (upper).
struct OpNormBracket {
  Scalar lower = 0.0;
  Scalar upper = 0.0;
  bool exact = false;
};

struct OpNormConfig {
  int restarts = 16;
  int max_iters = 200;
  std::uint64_t seed = 0x1a7b9u;
};

OpNormBracket operator_norm(const Matrix& m, const NormSpec& spec,
                            const OpNormConfig& cfg = {});

/// Exact value; throws if the spec has no closed form.
Scalar operator_norm_exact(const Matrix& m, const NormSpec& spec);

}  // namespace latbp
