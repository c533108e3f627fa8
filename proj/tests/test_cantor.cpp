#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infodim/cantor.hpp"
#include "infodim/dsl.hpp"
#include "infodim/error.hpp"

namespace infodim {
namespace {

const std::vector<std::vector<int>> kKlein{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
const std::vector<Tuple> kParity{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};

std::vector<Tuple> cube(int side, int m) {
  std::vector<Tuple> out{{}};
  for (int i = 0; i < m; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out) {
      for (int d = 0; d < side; ++d) {
        Tuple u = t;
        u.push_back(d);
        next.push_back(u);
      }
    }
    out = next;
  }
  return out;
}

TEST(Project, Examples) {
  const CantorWitness full(3, 2, cube(2, 3));
  EXPECT_EQ(project(full, SubsetIndex(0b011)).points(), cube(2, 2));
  const CantorWitness parity(3, 2, kParity);
  EXPECT_EQ(project(parity, SubsetIndex(0b011)).size(), 4u);
  const CantorWitness single(3, 5, {{1, 2, 3}});
  EXPECT_EQ(project(single, SubsetIndex(0b101)).points(), (std::vector<Tuple>{{1, 3}}));
}

TEST(Witness, Validation) {
  EXPECT_THROW(CantorWitness(1, 1, {{0}}), Error);
  EXPECT_THROW(CantorWitness(1, 3, {}), Error);
  EXPECT_THROW(CantorWitness(1, 3, {{3}}), Error);
  EXPECT_THROW(CantorWitness(2, 3, {{0}}), Error);
}

TEST(DimValue, ClassicalCantorSet) {
  const DimValue d = dim_value(CantorWitness(1, 3, {{0}, {2}}));
  EXPECT_NEAR(d.to_double(), std::log(2.0) / std::log(3.0), 1e-15);
  EXPECT_NEAR(d.to_double(), 0.630930, 1e-5);
  EXPECT_EQ(d.to_string(), "log2(2)/log2(3)");
  // log 2 / log 3 > 2/3  <=>  3 log 2 > 2 log 3  <=>  8 > 9: false
  EXPECT_EQ(compare(d, Rational(2, 3)), Sign::negative);
  // log 2 / log 3 > 5/8  <=>  8 log 2 > 5 log 3  <=>  256 > 243
  EXPECT_EQ(compare(d, Rational(5, 8)), Sign::positive);
}

TEST(DimValue, FullAndParity) {
  for (int n : {2, 5, 10}) {
    std::vector<Tuple> digits;
    for (int d = 0; d < n; ++d) digits.push_back({d});
    EXPECT_EQ(compare(dim_value(CantorWitness(1, n, digits)), Rational(1)), Sign::zero);
  }
  EXPECT_EQ(compare(dim_value(CantorWitness(3, 2, kParity)), Rational(2)), Sign::zero);
}

TEST(DimValue, CombinationsRequireCommonBase) {
  const DimValue a{2, 3}, b{4, 9};
  EXPECT_THROW((void)compare(a, b), Error);
  const DimValue c{4, 3};
  // 2 dim{2} = dim{4} in base 3
  EXPECT_EQ(dim_combination_sign({{2, a}, {-1, c}}), Sign::zero);
}

TEST(DimValue, MonotoneUnderProjection) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Tuple> pts;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 12); ++k) {
      pts.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
    }
    const CantorWitness w(3, n, pts);
    for (SubsetIndex s : subsets(3)) {
      const DimValue d = dim_value(project(w, s));
      EXPECT_NE(compare(dim_value(w), d), Sign::negative);
      EXPECT_NE(compare(d, Rational(s.size())), Sign::positive);
    }
  }
}

TEST(UniformFiber, Examples) {
  const auto full = uniform_fiber(CantorWitness(3, 2, cube(2, 3)), SubsetIndex(0b001));
  EXPECT_TRUE(full.uniform);
  EXPECT_EQ(full.fiber_size, 4u);
  const auto parity = uniform_fiber(CantorWitness(3, 2, kParity), SubsetIndex(0b011));
  EXPECT_TRUE(parity.uniform);
  EXPECT_EQ(parity.fiber_size, 1u);
  const auto bad = uniform_fiber(CantorWitness(2, 2, {{0, 0}, {0, 1}, {1, 0}}), SubsetIndex(0b01));
  EXPECT_FALSE(bad.uniform);
  EXPECT_EQ(bad.offending, Tuple{0});
  EXPECT_THROW(uniform_fiber(CantorWitness(2, 2, cube(2, 2)), SubsetIndex(0b11)), Error);
}

TEST(UniformFiber, GroupWitnessFiberSize) {
  const auto s3 = symmetric_group(3);
  const auto subs = enumerate_subgroups(s3);
  for (const auto& a : subs) {
    for (const auto& b : subs) {
      const std::vector<Subgroup> hs{a, b};
      const CantorWitness w(2, 6, witness_set(s3, hs).points);
      const std::size_t meet = intersect(s3, hs).size();
      const auto f1 = uniform_fiber(w, SubsetIndex(0b01));
      ASSERT_TRUE(f1.uniform);
      EXPECT_EQ(f1.fiber_size * meet, a.size());
    }
  }
}

TEST(Lemma, RandomSubsetsOfUniformWitnesses) {
  std::mt19937_64 rng(2024);
  const auto k = FiniteGroup::from_table(kKlein);
  const std::vector<Subgroup> hs{subgroup_from_elements(k, {0, 1}), subgroup_from_elements(k, {0, 2}),
                                 subgroup_from_elements(k, {0, 3})};
  const std::vector<CantorWitness> witnesses{CantorWitness(3, 2, kParity), CantorWitness(3, 3, cube(3, 3)),
                                             CantorWitness(3, 4, witness_set(k, hs).points)};
  for (int trial = 0; trial < 1000; ++trial) {
    const CantorWitness& w = witnesses[static_cast<std::size_t>(trial) % witnesses.size()];
    std::vector<Tuple> b;
    for (const auto& p : w.points()) {
      if (rng() % 2) b.push_back(p);
    }
    if (b.empty()) b.push_back(w.points().front());
    const SubsetIndex s(1 + static_cast<std::uint32_t>(rng() % 6));
    const LemmaCheck c = lemma_fiber_bound(w, b, s);
    EXPECT_TRUE(c.holds);
    EXPECT_LE(c.subset_size, c.projection_size * c.fiber_size);
  }
}

TEST(Lemma, EdgeCases) {
  const CantorWitness parity(3, 2, kParity);
  const auto whole = lemma_fiber_bound(parity, kParity, SubsetIndex(0b001));
  EXPECT_EQ(whole.subset_size, whole.projection_size * whole.fiber_size);
  const auto one = lemma_fiber_bound(parity, {kParity[2]}, SubsetIndex(0b011));
  EXPECT_EQ(one.subset_size, 1u);
  EXPECT_EQ(one.projection_size, 1u);
  const auto pairs = lemma_fiber_bound(parity, {kParity[0], kParity[3]}, SubsetIndex(0b011));
  EXPECT_EQ(pairs.subset_size, pairs.projection_size);
  try {
    (void)lemma_fiber_bound(parity, {{1, 1, 1}}, SubsetIndex(0b001));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "not-a-subset");
  }
}

TEST(Counterexample, KleinFourPipeline) {
  const auto q = parse_inequality("H(x,y) <= H(x)").inequality;
  const auto k = FiniteGroup::from_table(kKlein);
  const std::vector<Subgroup> hs{subgroup_from_elements(k, {0, 1}), trivial_subgroup(k)};
  const auto cx = build_counterexample(q, k, hs);
  // by hand: point (1, 2, 2), slack 1 - 2, N = 4, #A = 4
  EXPECT_TRUE(same_value(cx.entropy_slack, ExactLogLin::constant(-1)));
  EXPECT_EQ(cx.witness.base(), 4);
  EXPECT_EQ(cx.witness.size(), 4u);
  EXPECT_EQ(cx.projection_dims[0].cardinality, 2u);  // dim_1 = log 2 / log 4 = 1/2
  EXPECT_EQ(cx.projection_dims[2].cardinality, 4u);  // dim_12 = 1
  // eps = 1/2 gives a_12 = 1/2, not strictly above dim_1 = 1/2; eps = 1/4 works
  EXPECT_EQ(cx.epsilon, Rational(1, 4));
  ASSERT_EQ(cx.levels.size(), 1u);
  EXPECT_EQ(cx.levels[0].subset.mask(), 0b11u);
  EXPECT_FALSE(cx.levels[0].clamped);
  EXPECT_NEAR(cx.levels[0].to_double(), 0.75, 1e-15);
  // margin (3/4 - 1/2) log2 4 = 1/2 bit
  EXPECT_TRUE(same_value(cx.level_margin, ExactLogLin::constant(Rational(1, 2))));
  EXPECT_NO_THROW(verify_counterexample(cx));
}

TEST(Counterexample, VerifierCatchesTampering) {
  const auto q = parse_inequality("H(x,y) <= H(x)").inequality;
  const auto k = FiniteGroup::from_table(kKlein);
  const std::vector<Subgroup> hs{subgroup_from_elements(k, {0, 1}), trivial_subgroup(k)};
  auto cx = build_counterexample(q, k, hs);
  cx.levels[0].epsilon = Rational(1, 2);
  EXPECT_THROW(verify_counterexample(cx), Error);
}

TEST(Counterexample, NotViolated) {
  const auto k = FiniteGroup::from_table(kKlein);
  const auto shannon = parse_inequality("H(x) <= H(x,y)").inequality;
  const std::vector<Subgroup> hs{subgroup_from_elements(k, {0, 1}), trivial_subgroup(k)};
  try {
    (void)build_counterexample(shannon, k, hs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "not-violated");
  }
  const auto q = parse_inequality("H(x,y) <= H(x)").inequality;
  const std::vector<Subgroup> whole(2, whole_group(k));
  EXPECT_THROW(build_counterexample(q, k, whole), Error);
}

TEST(Counterexample, EverySearchHitBuilds) {
  // several false inequalities; each violating tuple found must convert
  const auto cat = builtin_catalog(12);
  for (const char* text : {"H(x,y) <= H(x)", "H(x) + H(y) <= H(x,y)", "2 H(x) <= H(x,y)",
                           "H(x,y,z) + H(z) <= H(x,z) + H(y,z) - 1/2 I(x;y)"}) {
    const auto q = parse_inequality(text).inequality;
    const auto out = search_violation(q, cat);
    ASSERT_TRUE(out.violation.has_value()) << text;
    const auto& v = *out.violation;
    const auto cx = build_counterexample(q, cat[v.catalog_index].group, v.subgroups);
    EXPECT_NO_THROW(verify_counterexample(cx));
    for (const auto& level : cx.levels) {
      if (compare(level.dim, Rational(0)) == Sign::positive) {
        EXPECT_EQ(loglin_sign(level.dim.scaled() - level.scaled()), Sign::positive);
      }
    }
  }
}

}  // namespace
}  // namespace infodim
