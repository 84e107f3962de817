#include "latbp/renorm.hpp"

#include "latbp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latbp {

Scalar renorm_norm(const SeqWithLimit& x, Scalar eps) {
  Scalar sup = std::abs(x.limit);
  for (Index i = 0; i < x.entries.size(); ++i) sup = std::max(sup, std::abs(x.entries[i]));
  return std::max(sup, std::abs(x.limit) / eps);
}

SeqWithLimit renorm_T(const SeqWithLimit& x) {
  SeqWithLimit out;
  out.entries = Vector::Constant(x.entries.size(), x.limit);
  out.limit = x.limit;
  out.delta = 0.0;
  return out;
}

RenormCertificate renorm_certificate(Scalar eps, const SeqWithLimit& psi,
                                     const RenormModel& model) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("renorm_certificate: eps must lie in (0, 1)");
  if (psi.delta < 0.0) throw std::invalid_argument("renorm_certificate: delta must be >= 0");
  if (psi.entries.size() < 1) throw std::invalid_argument("renorm_certificate: empty sequence");

  RenormCertificate cert;
  // Certified sup over all isolated points: the stored prefix plus the tail,
  // whose entries sit within delta of the limit.
  cert.sup_psi = std::max(psi.entries.cwiseAbs().maxCoeff(), std::abs(psi.limit) - psi.delta);
  cert.point_term = std::abs(1.0 - psi.limit);
  cert.lower_bound = std::max(cert.sup_psi, cert.point_term);
  cert.guarantee = 0.5 * (1.0 - psi.delta);

  // Sample check: T is a contraction and sits in the eps-center with λ = 1.
  const Index m = psi.entries.size();
  cert.contraction_margin = kInf;
  cert.center_margin = kInf;
  auto check = [&](SeqWithLimit x) {
    Scalar nx = renorm_norm(x, eps);
    if (nx == 0.0) return;
    x.entries /= nx;
    x.limit /= nx;
    SeqWithLimit tx = renorm_T(x);
    cert.contraction_margin = std::min(cert.contraction_margin, 1.0 - renorm_norm(tx, eps));
    SeqWithLimit excess;
    excess.entries = (Vector::Constant(m, std::abs(tx.limit)) - x.entries.cwiseAbs()).cwiseMax(0.0);
    excess.limit = 0.0;
    cert.center_margin = std::min(cert.center_margin, eps - renorm_norm(excess, eps));
  };

  SeqWithLimit ones{Vector::Ones(m), 1.0, 0.0};
  check(ones);
  SeqWithLimit eps_ones{Vector::Constant(m, eps), eps, 0.0};
  check(eps_ones);
  for (Index i = 0; i < m; ++i) {
    SeqWithLimit e{Vector::Zero(m), 0.0, 0.0};
    e.entries[i] = 1.0;
    check(e);
  }
  for (int s = 0; s < model.samples; ++s) {
    auto gen = substream(model.seed, static_cast<std::uint64_t>(s));
    std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
    SeqWithLimit x{random_vector(gen, m), dist(gen), 0.0};
    check(x);
  }
  cert.contraction_verified = cert.contraction_margin >= -1e-12;
  cert.center_verified = cert.center_margin >= -1e-12;
  return cert;
}

}  // namespace latbp
