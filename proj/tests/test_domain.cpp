#include "dualpoly/domain.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace dualpoly;

namespace {

FunctionInput input(int N, long R, std::vector<int> v) {
  return FunctionInput::make(ProblemShape::make(N, R), std::move(v));
}

// All tables reachable from g by permuting domain and range.
std::set<std::vector<int>> orbit_by_search(const std::vector<int>& g, int R) {
  std::set<std::vector<int>> out;
  std::vector<int> sigma(g.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> tau(R);
  std::iota(tau.begin(), tau.end(), 1);
  do {
    std::vector<int> t = tau;
    do {
      std::vector<int> h(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) h[i] = t[g[sigma[i]] - 1];
      out.insert(h);
    } while (std::next_permutation(t.begin(), t.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

}  // namespace

TEST(ShapeTest, Validation) {
  auto s = ProblemShape::make(4, 8);
  EXPECT_EQ(s.bits_per_block, 3);
  EXPECT_EQ(s.n, 12);
  EXPECT_THROW(ProblemShape::make(4, 6), PreconditionError);
  EXPECT_THROW(ProblemShape::make(8, 4), PreconditionError);
  EXPECT_THROW(ProblemShape::make(0, 4), PreconditionError);
  EXPECT_THROW(FunctionInput::make(s, {1, 2, 3}), PreconditionError);
  EXPECT_THROW(FunctionInput::make(s, {1, 2, 3, 9}), PreconditionError);
}

TEST(ClassifyTest, Examples) {
  EXPECT_EQ(classify(input(4, 4, {1, 2, 3, 4})), OrbitClass::k_to_one(1));
  EXPECT_EQ(classify(input(4, 4, {1, 1, 2, 2})), OrbitClass::k_to_one(2));
  EXPECT_EQ(classify(input(4, 4, {1, 1, 1, 2})), OrbitClass::regular(1, 1, 3));
  EXPECT_EQ(classify(input(4, 4, {3, 3, 3, 3})), OrbitClass::k_to_one(4));
  EXPECT_EQ(classify(input(6, 8, {1, 2, 2, 3, 3, 3})), OrbitClass::irregular({1, 2, 3}));
}

TEST(ClassifyTest, MatchesOrbitSearch) {
  auto shape = ProblemShape::make(4, 4);
  for (std::vector<int> g : {std::vector<int>{1, 1, 1, 2}, {1, 1, 2, 3}, {1, 2, 3, 4}, {2, 2, 4, 4}}) {
    auto orbit = orbit_by_search(g, 4);
    OrbitClass c = classify(FunctionInput::make(shape, g));
    std::set<std::vector<int>> same_class;
    for_each_input(shape, kDefaultEnumerationBudget, [&](std::uint64_t, const std::vector<int>& v) {
      if (classify_values(v, 4) == c) same_class.insert(v);
    });
    EXPECT_EQ(orbit, same_class) << c.str();
    EXPECT_EQ(class_size(c, shape), BigInt(static_cast<unsigned long>(orbit.size())));
  }
}

TEST(ClassifyTest, RelabelingInvariance) {
  std::mt19937_64 rng(5);
  auto shape = ProblemShape::make(6, 8);
  std::uniform_int_distribution<int> val(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> g(6);
    for (auto& v : g) v = val(rng);
    std::vector<int> sigma(6), tau(8);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::iota(tau.begin(), tau.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    std::vector<int> h(6);
    for (int i = 0; i < 6; ++i) h[i] = tau[g[sigma[i]] - 1];
    EXPECT_EQ(classify(FunctionInput::make(shape, g)), classify(FunctionInput::make(shape, h)));
  }
}

TEST(ClassifyTest, TripleAliases) {
  const int N = 4;
  for (int m = 0; m <= N; ++m) EXPECT_EQ(class_of_triple(m, 1, 1, N), OrbitClass::k_to_one(1));
  for (int a = 1; a <= N; ++a) EXPECT_EQ(class_of_triple(0, a, 1, N), OrbitClass::k_to_one(1));
  for (int b = 1; b <= N; ++b) EXPECT_EQ(class_of_triple(N, 1, b, N), OrbitClass::k_to_one(1));
  EXPECT_EQ(class_of_triple(2, 2, 1, N), class_of_triple(2, 1, 2, N));
  EXPECT_EQ(class_of_triple(2, 2, 1, N), OrbitClass::regular(2, 1, 2));
  EXPECT_THROW(class_of_triple(3, 2, 1, N), PreconditionError);
  EXPECT_FALSE(is_valid_triple(1, 1, 2, N));
}

TEST(ClassSizeTest, Values) {
  auto s44 = ProblemShape::make(4, 4);
  EXPECT_EQ(class_size(OrbitClass::k_to_one(1), s44), 24);
  EXPECT_THROW(class_size(OrbitClass::k_to_one(3), s44), PreconditionError);
  EXPECT_FALSE(is_realizable(OrbitClass::irregular({1, 1, 2}), s44));
  EXPECT_FALSE(is_realizable(OrbitClass::regular(3, 1, 2), s44));
}

TEST(ClassSizeTest, PartitionMatchesEnumeration) {
  for (auto [N, R] : {std::pair{2, 2L}, {3, 4L}, {4, 4L}, {4, 8L}, {5, 8L}}) {
    auto shape = ProblemShape::make(N, R);
    auto index = build_class_index(shape);
    BigInt total = 0;
    for (std::size_t i = 0; i < index.classes.size(); ++i) {
      BigInt size = class_size(index.classes[i], shape);
      EXPECT_EQ(size, BigInt(static_cast<unsigned long>(index.counts[i]))) << index.classes[i].str();
      total += size;
    }
    EXPECT_EQ(total, ipow(R, N));
  }
}

TEST(TargetTest, Values) {
  EXPECT_EQ(target_value(input(4, 4, {1, 2, 3, 4}), TargetFunction::Collision), Label::Plus);
  EXPECT_EQ(target_value(input(4, 4, {1, 1, 2, 2}), TargetFunction::Collision), Label::Minus);
  EXPECT_EQ(target_value(input(4, 4, {1, 1, 1, 2}), TargetFunction::Collision), Label::Outside);
  EXPECT_EQ(target_value(input(4, 4, {1, 1, 1, 2}), TargetFunction::ED), Label::Minus);
  EXPECT_EQ(target_value(input(4, 4, {4, 3, 2, 1}), TargetFunction::ED), Label::Plus);
}

TEST(ParityTest, Basics) {
  auto x = input(3, 4, {2, 4, 1});
  EXPECT_EQ(parity_eval(x, {}), 1);
  auto ones = input(3, 4, {1, 1, 1});
  EXPECT_EQ(parity_eval(ones, {0, 3, 5}), 1);
  // v=2 -> bits (1,0): coordinate 0 is -1.
  EXPECT_EQ(parity_eval(x, {0}), -1);
  EXPECT_EQ(parity_eval(x, {1}), 1);
  EXPECT_THROW(parity_eval(x, {6}), PreconditionError);
}

TEST(ParityTest, MatchesBitCountOracle) {
  std::mt19937_64 rng(9);
  auto shape = ProblemShape::make(4, 8);
  std::uniform_int_distribution<int> val(1, 8);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> g(4);
    for (auto& v : g) v = val(rng);
    auto x = FunctionInput::make(shape, g);
    std::vector<int> S;
    std::uint64_t mask = 0;
    for (int i = 0; i < shape.n; ++i)
      if (coin(rng)) {
        S.push_back(i);
        mask |= std::uint64_t{1} << i;
      }
    // Count -1 coordinates in S from the value table directly.
    int minus = 0;
    for (int i : S) minus += ((g[i / 3] - 1) >> (i % 3)) & 1;
    int expected = minus % 2 ? -1 : 1;
    EXPECT_EQ(parity_eval(x, S), expected);
    EXPECT_EQ(parity_of_index(encode_index(x), mask), expected);
  }
}

TEST(EnumerationTest, CountsAndBudget) {
  std::uint64_t count = 0;
  for_each_input(ProblemShape::make(2, 2), 100, [&](std::uint64_t, const std::vector<int>&) { ++count; });
  EXPECT_EQ(count, 4u);
  EXPECT_EQ(enumeration_size(ProblemShape::make(4, 4)), 256u);
  try {
    enumeration_size(ProblemShape::make(24, 32));
    FAIL() << "expected budget error";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), ipow(32, 24));
  }
  auto shape = ProblemShape::make(3, 4);
  for_each_input(shape, 100, [&](std::uint64_t idx, const std::vector<int>& v) {
    auto x = decode_input(shape, idx);
    ASSERT_EQ(x.values, v);
    ASSERT_EQ(encode_index(x), idx);
  });
}

TEST(EnumerationTest, AllClassesMatchesIndex) {
  auto shape = ProblemShape::make(5, 8);
  auto classes = all_classes(shape);
  auto index = build_class_index(shape);
  EXPECT_EQ(classes, index.classes);
  for (std::uint64_t c : index.counts) EXPECT_GT(c, 0u);
  // Partitions of 5.
  EXPECT_EQ(classes.size(), 7u);
}
