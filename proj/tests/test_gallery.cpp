#include "latbp/approximants.hpp"
#include "latbp/gallery.hpp"
#include "latbp/json_io.hpp"
#include "latbp/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace latbp;

TEST_SUITE("gallery") {
  TEST_CASE("antidiagonal sharpness") {
    for (Scalar eps : {0.01, 0.1, 1.0}) {
      AntidiagonalBundle b = antidiagonal_example(eps);
      for (const auto& [name, pn] : b.per_norm) {
        CHECK(pn.bp == doctest::Approx(eps).epsilon(1e-13));
        CHECK(pn.bp_inverse == doctest::Approx(1.0 / eps).epsilon(1e-13));
        CHECK(pn.ratio == doctest::Approx(0.5).epsilon(1e-13));
      }
    }
    AntidiagonalBundle unit = antidiagonal_example(1.0);
    CHECK(unit.per_norm.at("l2").bp ==
          doctest::Approx(unit.per_norm.at("l2").op_norm).epsilon(1e-12));
    CHECK_THROWS_AS(antidiagonal_example(0.0), std::invalid_argument);
    CHECK_THROWS_AS(antidiagonal_example(-1.0), std::invalid_argument);
  }

  TEST_CASE("walsh bundle matches a dense cross-check at i = 2") {
    WalshBundle b = walsh_modulus_example(2);
    CHECK(b.gap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.dist_to_identity == doctest::Approx(0.5).epsilon(1e-10));

    Matrix t = walsh_operator(2);
    Matrix abs_t = t.cwiseAbs();
    Vector x(4), y(4);
    x << std::sqrt(0.5), std::sqrt(0.5), 0, 0;
    y << 0, 0, 1, 1;
    Vector v = meet(abs_of(Vector(abs_t * x)), y);
    CHECK(vector_norm(v, NormSpec::l2()) == doctest::Approx(b.gap).epsilon(1e-12));
    CHECK(operator_norm_exact(Matrix(t - Matrix::Identity(4, 4)), NormSpec::l2()) ==
          doctest::Approx(b.dist_to_identity).epsilon(1e-10));

    // Exact small-dimension defects agree with the bundle's bounds.
    CHECK(b.bp_exact >= 0.0);
    CHECK(b.bp_exact <= b.bp_upper + 1e-9);
    CHECK(b.modulus_bp_exact >= 0.5 - 1e-9);
  }

  TEST_CASE("walsh gap across sizes") {
    for (int i : {3, 4, 6, 8}) {
      WalshBundle b = walsh_modulus_example(i);
      CHECK(b.gap == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(b.gap_permuted == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(b.dist_to_identity == doctest::Approx(std::pow(2.0, -0.5 * i)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(walsh_modulus_example(1), std::invalid_argument);
    CHECK_THROWS_AS(walsh_modulus_example(14), std::invalid_argument);

    // At i = 10 the modulus keeps a gap of one half while the operator sits
    // within 2^{-5} of the identity, a ratio of at least sixteen.
    WalshBundle ten = walsh_modulus_example(10);
    CHECK(ten.modulus_bp_lower / ten.bp_upper >= 16.0 - 1e-6);
  }

  TEST_CASE("modulus defect of the 16-dimensional operator") {
    Matrix t = walsh_operator(4);
    Matrix abs_t = t.cwiseAbs();
    // The half/half split carries an all-(1/16) block, so the spectral
    // cross-block value is exactly one half.
    IndexSet upper_half;
    for (Index i = 8; i < 16; ++i) upper_half.push_back(i);
    CHECK(cross_block_norm(abs_t, NormSpec::l2(), upper_half) ==
          doctest::Approx(0.5).epsilon(1e-12));
    DefectConfig heur;
    heur.mode = DefectMode::Heuristic;
    CHECK(bp_defect(abs_t, NormSpec::l2(), heur).value >= 0.5 - 1e-9);
    CHECK(bp_defect(t, NormSpec::l2(), heur).value <= 0.25 + 1e-9);
  }

  TEST_CASE("the multiplier bound is tight on every 2x2 draw") {
    for (int t = 0; t < 50; ++t) {
      auto gen = substream(7, t);
      Matrix m = random_matrix(gen, 2);
      Scalar bp = bp_defect(m, NormSpec::linf()).value;
      if (bp == 0.0) continue;
      Scalar residual = operator_norm_exact(Matrix(m - ck_multiplier(m)), NormSpec::linf());
      CHECK(residual / (2.0 * bp) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("random suite runs clean and is deterministic") {
    SuiteConfig cfg;
    cfg.trials = 20;
    cfg.seed = 7;
    SuiteReport a = random_suite(cfg);
    CHECK(a.total_failures == 0);
    CHECK(a.total_checks > 0);
    SuiteReport b = random_suite(cfg);
    CHECK(suite_report_to_json(a, false).dump() == suite_report_to_json(b, false).dump());

    cfg.scope = "bounds";
    SuiteReport bounds = random_suite(cfg);
    CHECK(bounds.total_failures == 0);
    CHECK(bounds.inequalities.count("averaging_identity") == 0);

    cfg.scope = "approximants";
    SuiteReport approx = random_suite(cfg);
    CHECK(approx.total_failures == 0);
    CHECK(approx.inequalities.count("ip_eq_bp") == 0);
    CHECK(approx.inequalities.count("averaging_identity") == 1);
  }

  TEST_CASE("function suite runs clean") {
    FunctionSuiteConfig cfg;
    cfg.trials = 40;
    cfg.adversarial = 300;
    SuiteReport rep = function_suite(cfg);
    CHECK(rep.total_failures == 0);
    CHECK(rep.inequalities.at("certificate_floor").checks == 3);
  }
}
