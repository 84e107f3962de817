#include "latbp/search.hpp"

#include "latbp/rng.hpp"

namespace latbp {

AscentResult ascend_on_sphere(const std::function<Scalar(const Vector&)>& f,
                              const std::function<Vector(const Vector&)>& grad,
                              const NormSpec& spec, const std::vector<Vector>& starts,
                              const AscentConfig& cfg) {
  AscentResult best;
  best.value = -kInf;
  for (const auto& s0 : starts) {
    Scalar n0 = vector_norm(s0, spec);
    if (n0 == 0.0) continue;
    Vector x = s0 / n0;
    Scalar fx = f(x);
    if (fx > best.value) {
      best.value = fx;
      best.maximizer = x;
    }
    Scalar step = cfg.initial_step;
    for (int it = 0; it < cfg.max_iters && step > cfg.min_step; ++it) {
      ++best.iterations;
      Vector g = grad(x);
      Scalar gn = g.norm();
      if (gn == 0.0) break;
      Vector cand = x + (step / gn) * g;
      Scalar cn = vector_norm(cand, spec);
      if (cn == 0.0) break;
      cand /= cn;
      Scalar fc = f(cand);
      if (fc > fx) {
        x = cand;
        fx = fc;
        if (fx > best.value) {
          best.value = fx;
          best.maximizer = x;
        }
      } else {
        step *= 0.5;
      }
    }
  }
  if (best.value == -kInf) {
    best.value = 0.0;
    best.maximizer = Vector();
  }
  return best;
}

std::vector<Vector> standard_starts(const Matrix& m, const NormSpec& spec, int random_starts,
                                    std::uint64_t seed) {
  const Index n = m.cols();
  std::vector<Vector> starts;
  starts.reserve(2 * static_cast<std::size_t>(n) + random_starts + 2);
  for (Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    starts.push_back(e);
    starts.push_back(-e);
  }
  starts.push_back(Vector::Ones(n));
  for (Index i = 0; i < m.rows(); ++i) {
    Vector r = m.row(i).transpose();
    if (vector_norm(r, spec) > 0.0) starts.push_back(r);
  }
  for (int k = 0; k < random_starts; ++k) {
    auto gen = substream(seed, static_cast<std::uint64_t>(k));
    starts.push_back(random_vector(gen, n));
  }
  return starts;
}

}  // namespace latbp
