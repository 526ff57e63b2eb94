#include "dualpoly/witness.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace dualpoly;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  return Rational(num(rng), den(rng));
}

DualWitness random_witness(const ProblemShape& shape, std::mt19937_64& rng) {
  DualWitness w;
  w.shape = shape;
  for (const auto& c : all_classes(shape)) w.add(c, random_rational(rng));
  return w;
}

// Point-by-point sum over all inputs, no class bookkeeping.
Rational naive_fourier_sum(const DualWitness& w, std::uint64_t mask) {
  Rational s = 0;
  for_each_input(w.shape, kDefaultEnumerationBudget, [&](std::uint64_t idx, const std::vector<int>& v) {
    Rational p = w.point_value(classify_values(v, w.shape.R));
    if (parity_of_index(idx, mask) > 0) s += p;
    else s -= p;
  });
  return s;
}

}  // namespace

TEST(WitnessTest, EmptyAndAdd) {
  DualWitness w;
  w.shape = ProblemShape::make(4, 4);
  EXPECT_EQ(l1_norm(w), Rational(0));
  EXPECT_THROW(w.add(OrbitClass::k_to_one(3), 1), PreconditionError);
  w.add(OrbitClass::k_to_one(1), Rational(1, 2));
  w.add(OrbitClass::k_to_one(1), Rational(-1, 2));
  EXPECT_TRUE(w.class_mass.empty());
  EXPECT_THROW(normalized(w), PreconditionError);
}

TEST(WitnessTest, CorrelationExamples) {
  DualWitness w;
  w.shape = ProblemShape::make(4, 4);
  w.add(OrbitClass::k_to_one(1), 1);
  EXPECT_EQ(correlation(w, TargetFunction::Collision), Rational(1));
  DualWitness b;
  b.shape = w.shape;
  b.add(OrbitClass::regular(1, 1, 3), 1);
  EXPECT_EQ(correlation(b, TargetFunction::Collision), Rational(-1));
  EXPECT_EQ(correlation(b, TargetFunction::ED), Rational(-1));
  DualWitness neg;
  neg.shape = w.shape;
  neg.add(OrbitClass::regular(1, 1, 3), -1);
  EXPECT_EQ(correlation(neg, TargetFunction::ED), Rational(1));
}

TEST(WitnessTest, ClassWiseMatchesPointWise) {
  std::mt19937_64 rng(1);
  for (auto [N, R] : {std::pair{3, 4L}, {4, 4L}}) {
    auto shape = ProblemShape::make(N, R);
    for (int trial = 0; trial < 5; ++trial) {
      auto w = random_witness(shape, rng);
      Rational l1 = 0, corr_col = 0, corr_ed = 0;
      for_each_input(shape, kDefaultEnumerationBudget, [&](std::uint64_t, const std::vector<int>& v) {
        OrbitClass c = classify_values(v, R);
        Rational p = w.point_value(c);
        l1 += p.abs();
        Label col = class_label(c, TargetFunction::Collision);
        corr_col += col == Label::Outside ? -p.abs() : p * Rational(static_cast<int>(col));
        corr_ed += p * Rational(static_cast<int>(class_label(c, TargetFunction::ED)));
      });
      EXPECT_EQ(l1_norm(w), l1);
      EXPECT_EQ(correlation(w, TargetFunction::Collision), corr_col);
      EXPECT_EQ(correlation(w, TargetFunction::ED), corr_ed);
    }
  }
}

TEST(WitnessTest, LowDegreeSetsOrder) {
  auto sets = low_degree_sets(4, 2);
  ASSERT_EQ(sets.size(), 11u);
  EXPECT_EQ(sets[0], 0u);
  EXPECT_EQ(sets[1], 1u);
  EXPECT_EQ(sets[4], 8u);
  EXPECT_EQ(sets[5], 3u);
  EXPECT_EQ(sets.back(), 12u);
  EXPECT_EQ(low_degree_sets(5, 9).size(), 32u);
}

TEST(WitnessTest, FwhtSmall) {
  std::vector<std::int64_t> a = {1, 0, 0, 0};
  fwht(a);
  EXPECT_EQ(a, (std::vector<std::int64_t>{1, 1, 1, 1}));
  std::vector<std::int64_t> bad(3);
  EXPECT_THROW(fwht(bad), PreconditionError);
}

TEST(WitnessTest, FourierSumsMatchNaive) {
  std::mt19937_64 rng(2);
  auto shape = ProblemShape::make(4, 4);
  auto index = build_class_index(shape);
  auto w = random_witness(shape, rng);
  auto sets = low_degree_sets(shape.n, 2);
  auto fast = fourier_sums(w, sets, index, 1);
  auto threaded = fourier_sums(w, sets, index, 3);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    EXPECT_EQ(fast[i], naive_fourier_sum(w, sets[i])) << sets[i];
    EXPECT_EQ(fast[i], threaded[i]);
  }
}

TEST(WitnessTest, HalfAndHalfPhd) {
  auto shape = ProblemShape::make(4, 4);
  DualWitness w;
  w.shape = shape;
  w.add(OrbitClass::k_to_one(1), Rational(1, 2));
  w.add(OrbitClass::k_to_one(2), Rational(-1, 2));
  EXPECT_TRUE(pure_high_degree_exact(w, 0).pass);
  // Degree 1: compare the verdict with the naive sums.
  bool naive_pass = true;
  for (auto s : low_degree_sets(shape.n, 1)) naive_pass = naive_pass && naive_fourier_sum(w, s).is_zero();
  EXPECT_EQ(pure_high_degree_exact(w, 1).pass, naive_pass);
  int measured = measure_phd_exact(w, shape.n);
  for (auto s : low_degree_sets(shape.n, measured)) EXPECT_TRUE(naive_fourier_sum(w, s).is_zero());
  if (measured < shape.n) {
    auto r = pure_high_degree_exact(w, measured + 1);
    ASSERT_FALSE(r.pass);
    EXPECT_EQ(r.failing_value, naive_fourier_sum(w, *r.failing_set));
  }
}

TEST(WitnessTest, EmptySetIsTotalMass) {
  std::mt19937_64 rng(3);
  auto shape = ProblemShape::make(3, 4);
  auto w = random_witness(shape, rng);
  Rational total = 0;
  for (const auto& [c, m] : w.class_mass) total += m;
  EXPECT_EQ(pure_high_degree_exact(w, 0).pass, total.is_zero());
  EXPECT_EQ(measure_phd_exact(w, 3) >= 0, total.is_zero());
}

TEST(WitnessTest, SumCancels) {
  std::mt19937_64 rng(4);
  auto shape = ProblemShape::make(4, 4);
  auto w = random_witness(shape, rng);
  auto z = witness_sum(w, w, 1, -1);
  EXPECT_TRUE(z.class_mass.empty());
  EXPECT_THROW(witness_sum(w, random_witness(ProblemShape::make(3, 4), rng), 1, 1), PreconditionError);
}

TEST(WitnessTest, Certificate) {
  auto shape = ProblemShape::make(4, 4);
  DualWitness w;
  w.shape = shape;
  w.add(OrbitClass::k_to_one(1), Rational(1, 2));
  w.add(OrbitClass::k_to_one(2), Rational(-1, 2));
  auto ok = verify_certificate(w, TargetFunction::Collision, Rational(1, 2), 0);
  EXPECT_TRUE(ok.pass);
  auto too_high = verify_certificate(w, TargetFunction::Collision, Rational(1), 0);
  EXPECT_FALSE(too_high.pass);
  EXPECT_FALSE(too_high.correlation_pass);
  DualWitness unbalanced;
  unbalanced.shape = shape;
  unbalanced.add(OrbitClass::k_to_one(1), 1);
  auto bad = verify_certificate(unbalanced, TargetFunction::Collision, Rational(1, 2), 0);
  EXPECT_FALSE(bad.phd_pass);
  ASSERT_TRUE(bad.failing_set.has_value());
  EXPECT_EQ(*bad.failing_set, 0u);
  EXPECT_EQ(bad.phd_verified_to, -1);
}

TEST(WitnessTest, BudgetExceeded) {
  DualWitness w;
  w.shape = ProblemShape::make(8, 8);
  EXPECT_THROW(pure_high_degree_exact(w, 1, EnumerationOptions{1000, 1}), BudgetExceeded);
}
