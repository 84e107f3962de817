#include "latbp/lattice.hpp"
#include "latbp/norms.hpp"
#include "latbp/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace latbp;

namespace {

Vector vec(std::initializer_list<Scalar> vals) {
  Vector v(static_cast<Index>(vals.size()));
  Index i = 0;
  for (Scalar s : vals) v[i++] = s;
  return v;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("componentwise operations") {
    CHECK(Vector(abs_of(vec({-1, 2}))) == vec({1, 2}));
    CHECK(Vector(meet(vec({1, 3}), vec({2, 0}))) == vec({1, 0}));
    CHECK(Vector(join(vec({1, 3}), vec({2, 0}))) == vec({2, 3}));
    CHECK(Vector(pos_part(vec({-1, 2}))) == vec({0, 2}));
    CHECK(Vector(neg_part(vec({-1, 2}))) == vec({1, 0}));

    CHECK(lattice_op(LatticeOp::Meet, vec({1, 3}), vec({2, 0})) == vec({1, 0}));
    CHECK_THROWS_AS(lattice_op(LatticeOp::Meet, vec({1, 3}), std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(Vector(meet(vec({1, 2}), vec({1, 2, 3}))), std::invalid_argument);
    CHECK(parse_lattice_op("join") == LatticeOp::Join);
    CHECK_THROWS_AS(parse_lattice_op("sup"), std::invalid_argument);
  }

  TEST_CASE("positive/negative part decomposition") {
    for (int t = 0; t < 100; ++t) {
      auto gen = substream(11, t);
      Index n = 1 + t % 12;
      Vector x = random_vector(gen, n);
      Vector p = pos_part(x), q = neg_part(x);
      CHECK((x - (p - q)).cwiseAbs().maxCoeff() == 0.0);
      CHECK(Vector(meet(p, q)).cwiseAbs().maxCoeff() == 0.0);
      CHECK((Vector(abs_of(x)) - (p + q)).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("band projection invariants") {
    for (int t = 0; t < 1000; ++t) {
      auto gen = substream(17, t);
      Index n = 1 + t % 12;
      std::uniform_int_distribution<int> coin(0, 1);
      IndexSet subset;
      for (Index i = 0; i < n; ++i)
        if (coin(gen)) subset.push_back(i);
      BandProjection p(n, subset);
      Vector x = random_vector(gen, n);

      Vector px = p.apply(x);
      for (Index i = 0; i < n; ++i) {
        bool inside = std::binary_search(subset.begin(), subset.end(), i);
        CHECK(px[i] == (inside ? x[i] : 0.0));
      }
      CHECK(p.apply(px) == px);  // idempotent
      Vector xp = abs_of(x);
      Vector pxp = p.apply(xp);
      CHECK((pxp.array() >= 0.0).all());
      CHECK((pxp.array() <= xp.array()).all());
      CHECK((p.apply(x) + p.complement().apply(x)) == x);

      // Px = 0 iff supp(x) misses the subset iff x is disjoint from every
      // vector supported there.
      bool zero = px.cwiseAbs().maxCoeff() == 0.0;
      bool disjoint_support = true;
      for (Index i : subset)
        if (x[i] != 0.0) disjoint_support = false;
      CHECK(zero == disjoint_support);
      Vector indicator = p.mask();
      CHECK(zero == are_disjoint(x, indicator));
    }
  }

  TEST_CASE("band projection validation") {
    CHECK_THROWS_AS(BandProjection(3, IndexSet{0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(BandProjection(3, IndexSet{1, 1}), std::invalid_argument);
    BandProjection p(3, {2, 0});  // sorted internally
    CHECK(p.subset() == IndexSet{0, 2});
  }

  TEST_CASE("partition construction and canonical order") {
    Partition p(4, {{2, 3}, {0, 1}});
    CHECK(p.blocks()[0] == IndexSet{0, 1});
    CHECK(p.blocks()[1] == IndexSet{2, 3});
    CHECK_THROWS_AS(Partition(3, {{0, 1}}), std::invalid_argument);          // no cover
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), std::invalid_argument);  // overlap
    CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), std::invalid_argument);   // empty block
  }

  TEST_CASE("refinement") {
    Partition p(3, {{0, 1}, {2}});
    Partition q(3, {{0}, {1, 2}});
    Partition r = refine(p, q);
    CHECK(r == Partition::finest(3));
    CHECK(precedes(p, r));
    CHECK(precedes(q, r));

    CHECK(refine(p, p) == p);
    CHECK(refine(Partition::one_block(3), q) == q);
    CHECK_THROWS_AS(refine(p, Partition::finest(4)), std::invalid_argument);

    // Partial order sanity on random partitions.
    for (int t = 0; t < 200; ++t) {
      auto gen = substream(23, t);
      Index n = 2 + t % 8;
      std::uniform_int_distribution<std::size_t> nb(1, static_cast<std::size_t>(n));
      auto draw = [&] {
        std::vector<IndexSet> sets(nb(gen));
        for (Index i = 0; i < n; ++i) {
          std::uniform_int_distribution<std::size_t> pick(0, sets.size() - 1);
          sets[pick(gen)].push_back(i);
        }
        sets.erase(std::remove_if(sets.begin(), sets.end(),
                                  [](const IndexSet& s) { return s.empty(); }),
                   sets.end());
        return Partition(n, sets);
      };
      Partition a = draw(), b = draw();
      Partition c = refine(a, b);
      CHECK(precedes(a, c));
      CHECK(precedes(b, c));
      CHECK(precedes(a, a));
      if (precedes(a, b) && precedes(b, a)) CHECK(a == b);  // antisymmetry
      CHECK(precedes(Partition::one_block(n), a));
      CHECK(precedes(a, Partition::finest(n)));
    }
  }

  TEST_CASE("norm monotonicity") {
    std::vector<NormSpec> specs = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(),
                                   NormSpec::lp(3.5)};
    for (int t = 0; t < 300; ++t) {
      auto gen = substream(31, t);
      Index n = 1 + t % 12;
      Vector y = random_vector(gen, n);
      Vector shrink = random_vector(gen, n, 0.0, 1.0);
      Vector x = y.cwiseProduct(shrink);
      auto all_specs = specs;
      all_specs.push_back(NormSpec::weighted_sup(random_vector(gen, n, 0.5, 3.0)));
      for (const auto& s : all_specs) CHECK(vector_norm(x, s) <= vector_norm(y, s) + 1e-15);
    }
  }

  TEST_CASE("componentwise infimum is additive across sets") {
    for (int t = 0; t < 200; ++t) {
      auto gen = substream(37, t);
      Index n = 1 + t % 10;
      std::uniform_int_distribution<int> count(1, 5);
      std::vector<Vector> a_set, b_set;
      for (int k = count(gen); k-- > 0;) a_set.push_back(random_vector(gen, n));
      for (int k = count(gen); k-- > 0;) b_set.push_back(random_vector(gen, n));

      auto set_min = [&](const std::vector<Vector>& vs) {
        Vector m = vs[0];
        for (const auto& v : vs) m = meet(m, v);
        return m;
      };
      Vector lhs = set_min(a_set) + set_min(b_set);
      Vector sums_min = a_set[0] + b_set[0];
      for (const auto& a : a_set)
        for (const auto& b : b_set) sums_min = meet(sums_min, Vector(a + b));
      CHECK((lhs - sums_min).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}
