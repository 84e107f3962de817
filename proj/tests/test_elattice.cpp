#include "latbp/elattice.hpp"
#include "latbp/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace latbp;

namespace {

const ELatticeConfig kCfg{12};

PLFunction seeded_element(std::uint64_t seed, int depth = kCfg.depth) {
  const Scalar edge = std::ldexp(1.0, -(depth + 1));
  auto gen = substream(seed, 0);
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 12);
  std::vector<Scalar> bps{edge};
  for (int k = count(gen); k-- > 0;) bps.push_back(edge + (1.0 - edge) * unit(gen));
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<Scalar> vals(bps.size(), 0.0);
  for (std::size_t k = 1; k < vals.size(); ++k) vals[k] = 2.0 * unit(gen) - 1.0;
  return PLFunction(std::move(bps), std::move(vals));
}

// Dense-grid oracle for the sup part of the norm.
Scalar sup_abs_by_scan(const PLFunction& f, int samples = 20000) {
  Scalar best = 0.0;
  for (int k = 0; k <= samples; ++k) {
    Scalar t = 1e-6 + (1.0 - 1e-6) * k / samples;
    best = std::max(best, std::abs(f(t)));
  }
  return best;
}

}  // namespace

TEST_SUITE("elattice") {
  TEST_CASE("construction and evaluation") {
    PLFunction f({0.25, 0.5, 1.0}, {0.0, 1.0, -1.0});
    CHECK(f(0.1) == 0.0);       // left of the first breakpoint
    CHECK(f(0.25) == 0.0);
    CHECK(f(0.375) == 0.5);     // interpolation
    CHECK(f(0.5) == 1.0);
    CHECK(f(1.0) == -1.0);
    CHECK(f.sup_abs() == 1.0);

    CHECK_THROWS_AS(PLFunction({0.5, 0.25}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PLFunction({0.0, 0.5}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PLFunction({0.5}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PLFunction({0.5, 1.5}, {0.0, 1.0}), std::invalid_argument);
  }

  TEST_CASE("arithmetic is exact on merged grids") {
    for (int t = 0; t < 60; ++t) {
      PLFunction f = seeded_element(1000 + t);
      PLFunction g = seeded_element(2000 + t);
      PLFunction sum = pl_add(f, g);
      PLFunction diff = pl_sub(f, g);
      PLFunction mn = pl_min(f, g);
      PLFunction mx = pl_max(f, g);
      PLFunction af = pl_abs(f);
      PLFunction pf = pl_pos(f);
      auto gen = substream(3000 + t, 0);
      std::uniform_real_distribution<Scalar> unit(1e-5, 1.0);
      for (int s = 0; s < 200; ++s) {
        Scalar x = unit(gen);
        CHECK(sum(x) == doctest::Approx(f(x) + g(x)).epsilon(1e-12));
        CHECK(diff(x) == doctest::Approx(f(x) - g(x)).epsilon(1e-12));
        CHECK(mn(x) == doctest::Approx(std::min(f(x), g(x))).epsilon(1e-12));
        CHECK(mx(x) == doctest::Approx(std::max(f(x), g(x))).epsilon(1e-12));
        CHECK(af(x) == doctest::Approx(std::abs(f(x))).epsilon(1e-12));
        CHECK(pf(x) == doctest::Approx(std::max(f(x), 0.0)).epsilon(1e-12));
      }
      // A dense scan can only fall short of the breakpoint supremum.
      Scalar scanned = sup_abs_by_scan(af);
      CHECK(af.sup_abs() >= scanned - 1e-12);
      CHECK(af.sup_abs() <= scanned * 1.02 + 1e-9);
      CHECK((pf.values.size() >= f.values.size()));
    }
  }

  TEST_CASE("lattice norm") {
    const Scalar edge = std::ldexp(1.0, -(kCfg.depth + 1));
    PLFunction zero({edge, 1.0}, {0.0, 0.0});
    CHECK(e_norm(zero, kCfg) == 0.0);

    // Hat peaked at 2^-3 with weight 8.
    CHECK(e_norm(canonical_hat(3), kCfg) == 8.0);

    // Constant one on [1/2, 1] tapered to zero at 1/4: the dyadic value at
    // 1/2 doubles and dominates the sup part.
    PLFunction taper({0.25, 0.5, 1.0}, {0.0, 1.0, 1.0});
    CHECK(e_norm(taper, kCfg) == 2.0);

    PLFunction violating({0.5, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(e_norm(violating, kCfg), std::invalid_argument);

    // Monotone, homogeneous, triangle (sampled).
    for (int t = 0; t < 80; ++t) {
      PLFunction f = seeded_element(4000 + t);
      PLFunction g = seeded_element(5000 + t);
      Scalar nf = e_norm(f, kCfg), ng = e_norm(g, kCfg);
      CHECK(e_norm(pl_add(f, g), kCfg) <= nf + ng + 1e-12);
      CHECK(e_norm(pl_scale(f, -2.5), kCfg) == doctest::Approx(2.5 * nf).epsilon(1e-12));
      PLFunction dominated = pl_min(pl_abs(f), pl_abs(g));
      CHECK(e_norm(dominated, kCfg) <= std::min(nf, ng) + 1e-12);
    }
  }

  TEST_CASE("hat operators") {
    const int n = 4;
    PLFunction xn = canonical_hat(n);
    PLFunction fixed = apply_Tn(n, xn, kCfg);
    CHECK(e_norm(pl_sub(fixed, xn), kCfg) == 0.0);

    PLFunction other = apply_Tn(n, canonical_hat(n + 2), kCfg);
    CHECK(other.is_zero());

    const Scalar edge = std::ldexp(1.0, -(kCfg.depth + 1));
    PLFunction zero({edge, 1.0}, {0.0, 0.0});
    CHECK(apply_Tn(n, zero, kCfg).is_zero());

    CHECK_THROWS_AS(apply_Tn(1, xn, kCfg), std::invalid_argument);
    CHECK_THROWS_AS(apply_Tn(kCfg.depth, xn, kCfg), std::invalid_argument);

    // Linearity and contraction on seeded elements.
    for (int t = 0; t < 100; ++t) {
      PLFunction f = seeded_element(6000 + t);
      PLFunction g = seeded_element(7000 + t);
      PLFunction lhs = apply_Tn(n, pl_add(f, g), kCfg);
      PLFunction rhs = pl_add(apply_Tn(n, f, kCfg), apply_Tn(n, g, kCfg));
      CHECK(e_norm(pl_sub(lhs, rhs), kCfg) <= 1e-12);
      CHECK(e_norm(apply_Tn(n, f, kCfg), kCfg) <= e_norm(f, kCfg) + 1e-12);
      // Composition annihilates across distinct indices.
      PLFunction tm = apply_Tn(n + 1, apply_Tn(n, f, kCfg), kCfg);
      CHECK(tm.is_zero());
    }
  }

  TEST_CASE("center witness bound") {
    const int n = 4;
    PLFunction xn = canonical_hat(n);
    CHECK(center_witness_check(n, xn, kCfg) == 0.0);

    // Vanishing at the peak kills the image entirely.
    PLFunction off({std::ldexp(1.0, -(kCfg.depth + 1)), 0.5, 1.0}, {0.0, 0.0, 1.0});
    CHECK(center_witness_check(n, off, kCfg) == 0.0);

    const Scalar edge = std::ldexp(1.0, -(kCfg.depth + 1));
    PLFunction zero({edge, 1.0}, {0.0, 0.0});
    CHECK_THROWS_AS(center_witness_check(n, zero, kCfg), std::invalid_argument);

    for (int t = 0; t < 500; ++t) {
      PLFunction f = seeded_element(8000 + t);
      if (f.is_zero()) continue;
      for (int nn : {3, 4, 5})
        CHECK(center_witness_check(nn, f, kCfg) <= std::ldexp(1.0, -nn) + 1e-12);
    }
  }

  TEST_CASE("certificate values on constant multipliers") {
    const int n = 4;
    const Scalar edge = std::ldexp(1.0, -(kCfg.depth + 1));
    auto constant = [&](Scalar v) { return PLFunction({edge, 1.0}, {v, v}); };

    ECertificate zero = e_certificate(n, constant(0.0), kCfg);
    CHECK(zero.lower_bound == 1.0);
    CHECK(zero.point_term == 1.0);

    ECertificate one = e_certificate(n, constant(1.0), kCfg);
    CHECK(one.lower_bound == 1.0);
    CHECK(one.sup_phi == 1.0);

    ECertificate half = e_certificate(n, constant(0.5), kCfg);
    CHECK(half.lower_bound == 0.5);
    CHECK(half.sup_phi == 0.5);
    CHECK(half.point_term == 0.5);

    // Witness functions live in the lattice and realize their terms.
    CHECK(e_norm(half.witness_point, kCfg) == 1.0);
    CHECK(half.witness_point_value >= half.point_term - 1e-12);
    CHECK(e_norm(half.witness_bump, kCfg) == 1.0);
    CHECK(one.witness_bump_value == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("certificate floor on seeded and adversarial multipliers") {
    for (int t = 0; t < 200; ++t) {
      PLFunction phi = seeded_element(9000 + t);
      for (int n : {3, 4, 5}) {
        ECertificate cert = e_certificate(n, phi, kCfg);
        CHECK(cert.lower_bound >= 0.5 - 1e-12);
        CHECK(cert.witness_point_value >= cert.point_term - 1e-12);
      }
    }
    AdversarialSearchResult adv = adversarial_phi_search(4, kCfg, 1500, 50, 77);
    CHECK(adv.candidates == 1500);
    CHECK(adv.min_certificate >= 0.5 - 1e-12);
    CHECK(adv.min_certificate <= 0.5 + 1e-12);  // the constant 1/2 attains it
  }

  TEST_CASE("witness action is a certified lower bound") {
    for (int t = 0; t < 40; ++t) {
      PLFunction phi = seeded_element(11000 + t);
      const int n = 3 + t % 3;
      ECertificate cert = e_certificate(n, phi, kCfg);
      // A witness action never exceeds the operator norm, which itself is
      // at least the certificate; here both witnesses are admissible.
      CHECK(cert.witness_bump_value >= 0.0);
      CHECK(e_norm(cert.witness_bump, kCfg) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(e_norm(cert.witness_point, kCfg) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
