#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infodim/distributions.hpp"
#include "infodim/error.hpp"
#include "test_support.hpp"

namespace infodim {
namespace {

JointDistribution uniform_on(int m, std::vector<Tuple> points) {
  JointDistribution d{m, {}};
  const Rational p(1, static_cast<long>(points.size()));
  for (auto& t : points) d.atoms.push_back({t, p});
  return d;
}

std::string error_kind(JointDistribution d) {
  try {
    (void)validate(std::move(d));
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

TEST(Validate, AcceptsAndSorts) {
  const auto d = validate(JointDistribution{1, {{{1}, Rational(1, 2)}, {{0}, Rational(1, 2)}}});
  EXPECT_EQ(d.atoms.front().point, Tuple{0});
}

TEST(Validate, Rejections) {
  EXPECT_NE(error_kind({1, {{{0}, Rational(1, 2)}, {{1}, Rational(1, 4)}}}), "");
  EXPECT_NE(error_kind({1, {{{0}, Rational(1, 2)}, {{0}, Rational(1, 2)}}}), "");
  EXPECT_NE(error_kind({1, {{{0}, Rational(0)}, {{1}, Rational(1)}}}), "");
  EXPECT_NE(error_kind({2, {{{0}, Rational(1)}}}), "");
}

TEST(MarginalEntropy, BasicCases) {
  const auto bits = validate(uniform_on(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_NEAR(marginal_entropy(bits, SubsetIndex(1)), 1.0, 1e-12);
  EXPECT_NEAR(marginal_entropy(bits, SubsetIndex(3)), 2.0, 1e-12);
  const auto equal = validate(uniform_on(2, {{0, 0}, {1, 1}}));
  EXPECT_NEAR(marginal_entropy(equal, SubsetIndex(3)), 1.0, 1e-12);
}

TEST(MarginalEntropy, TwoThirdsOneThird) {
  const auto d = validate(uniform_on(2, {{0, 0}, {0, 1}, {1, 0}}));
  // -(2/3) log2(2/3) - (1/3) log2(1/3)
  const double h = -(2.0 / 3) * std::log2(2.0 / 3) - (1.0 / 3) * std::log2(1.0 / 3);
  EXPECT_NEAR(h, 0.9182958340544896, 1e-15);
  EXPECT_NEAR(marginal_entropy(d, SubsetIndex(1)), h, 1e-12);
  const EntropyVector v = entropy_vector_float(d);
  EXPECT_NEAR(v.value(SubsetIndex(2)), h, 1e-12);
  EXPECT_NEAR(v.value(SubsetIndex(3)), std::log2(3.0), 1e-12);
}

TEST(EntropyVectorFloat, IdenticalBits) {
  const auto d = validate(uniform_on(3, {{0, 0, 0}, {1, 1, 1}}));
  const EntropyVector v = entropy_vector_float(d);
  for (SubsetIndex s : subsets(3)) EXPECT_NEAR(v.value(s), 1.0, 1e-12);
}

TEST(EntropyVectorExact, FullProduct) {
  const EntropyVector v = exact_entropy_vector(SupportSet{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}});
  ASSERT_EQ(v.mode(), EntropyMode::exact);
  EXPECT_EQ(v.exact(SubsetIndex(1)).to_string(), "1");
  EXPECT_EQ(v.exact(SubsetIndex(3)).to_string(), "2");
}

TEST(EntropyVectorExact, ParitySupport) {
  const SupportSet parity{3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  const EntropyVector v = exact_entropy_vector(parity);
  // fiber counting by hand: singletons take 2 values, pairs and the triple 4
  const std::vector<int> expected{1, 1, 2, 1, 2, 2, 2};
  for (SubsetIndex s : subsets(3)) {
    EXPECT_TRUE(same_value(v.exact(s), ExactLogLin::constant(expected[s.slot()]))) << to_string(s);
  }
}

TEST(EntropyVectorExact, NonUniformFibersNamesSubset) {
  try {
    (void)exact_entropy_vector(SupportSet{2, {{0, 0}, {0, 1}, {1, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "non-uniform-fibers");
    EXPECT_NE(e.detail().find("{1}"), std::string::npos) << e.detail();
  }
}

TEST(EntropyVectorExact, AgreesWithFloatOnUniformDistribution) {
  const SupportSet parity{3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  const EntropyVector exact = exact_entropy_vector(parity);
  const EntropyVector flt = entropy_vector_float(uniform_distribution(parity));
  for (SubsetIndex s : subsets(3)) EXPECT_NEAR(exact.value(s), flt.value(s), 1e-9);
}

TEST(EntropyVectorFloat, MatchesDirectSummation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = testing::random_distribution(rng, 3, 4, 1 + trial % 30);
    const EntropyVector v = entropy_vector_float(validate(d));
    for (SubsetIndex s : subsets(3)) EXPECT_NEAR(v.value(s), testing::brute_entropy(d, s.mask()), 1e-9);
  }
}

TEST(EntropyVectorFloat, PolymatroidAxiomsOnRandomDistributions) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 3;
    const auto d = validate(testing::random_distribution(rng, m, 3, 1 + trial % 25));
    const EntropyVector v = entropy_vector_float(d);
    for (SubsetIndex a : subsets(m)) {
      EXPECT_LE(v.value(a), std::log2(static_cast<double>(d.atoms.size())) + 1e-9);
      for (SubsetIndex b : subsets(m)) {
        if (a.is_subset_of(b)) EXPECT_LE(v.value(a), v.value(b) + 1e-9);
        const std::uint32_t meet = a.mask() & b.mask();
        if (meet != 0) {
          EXPECT_GE(v.value(a) + v.value(b), v.value(a | b) + v.value(SubsetIndex(meet)) - 1e-9);
        }
      }
    }
  }
}

TEST(EntropyVector, RejectsNegativeValues) {
  EXPECT_THROW(EntropyVector::from_floats(1, {-0.5}), Error);
  EXPECT_THROW(EntropyVector::from_exact(1, {ExactLogLin::constant(-1)}), Error);
  EXPECT_NO_THROW(EntropyVector::from_floats(1, {-1e-12}));
}

}  // namespace
}  // namespace infodim
