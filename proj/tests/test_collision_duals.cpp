#include "dualpoly/collision_duals.hpp"

#include "gtest/gtest.h"

using namespace dualpoly;

namespace {

// sum_{x in T_k} chi_S(x) / |T_k| by direct enumeration.
Rational class_average_parity(const ProblemShape& shape, const OrbitClass& c, std::uint64_t mask) {
  long total = 0, count = 0;
  for_each_input(shape, kDefaultEnumerationBudget, [&](std::uint64_t idx, const std::vector<int>& v) {
    if (!(classify_values(v, shape.R) == c)) return;
    total += parity_of_index(idx, mask);
    ++count;
  });
  return Rational(total, count);
}

}  // namespace

TEST(WeakDualTest, SupportAndCorrelation) {
  auto w = build_weak_collision_dual(3, 8, Rational(1, 4));
  EXPECT_EQ(w.shape.N, 6);
  for (const auto& [c, m] : w.class_mass) {
    EXPECT_EQ(c.kind, OrbitClass::Kind::KtoOne);
    EXPECT_EQ(6 % c.k, 0);
  }
  EXPECT_EQ(l1_norm(w), Rational(1));
  EXPECT_GE(correlation(w, TargetFunction::Collision), Rational(1, 2));
  EXPECT_EQ(w.meta["construction"], "weak-collision");
  EXPECT_THROW(build_weak_collision_dual(3, 4, Rational(1, 4)), PreconditionError);
}

TEST(WeakDualTest, MomentIdentityByEnumeration) {
  // N = 6, R = 8: sum_k omega(k) E_{T_k}[chi_S] = 0 for |S| <= phd(omega).
  auto shape = ProblemShape::make(6, 8);
  auto omega = build_or_dual(3, Rational(1, 4));
  for (auto mask : low_degree_sets(shape.n, omega.achieved_phd)) {
    Rational s = 0;
    for (const auto& [k, v] : omega.values)
      s += v * class_average_parity(shape, OrbitClass::k_to_one(k), mask);
    EXPECT_TRUE(s.is_zero()) << mask;
  }
}

TEST(WeakDualTest, PhdByEnumeration) {
  auto w = build_weak_collision_dual(3, 8, Rational(1, 4));
  auto r = pure_high_degree_exact(w, w.meta["claimed_phd"].get<int>());
  EXPECT_TRUE(r.pass);
  EXPECT_GE(measure_phd_exact(w, 3), w.meta["claimed_phd"].get<int>());
}

TEST(PsiTableTest, SmallTableScan) {
  auto t = build_psi_table(8, Rational(1, 2), 4);
  EXPECT_EQ(t.skipped, (std::vector<int>{3, 4}));
  for (int m = 0; m <= 8; ++m)
    for (int k = 1; k <= 4; ++k)
      if (m % k != 0) EXPECT_TRUE(t.at(m, k).is_zero()) << m << "," << k;
  EXPECT_TRUE(t.at(4, 3).is_zero());
  EXPECT_EQ(t.at(4, 1), t.omega.at(1));
  EXPECT_GE(t.at(4, 1), (Rational(1) - Rational(1, 16)) / Rational(2));
  EXPECT_TRUE(check_table_identities(t).ok());
}

TEST(PsiTableTest, Preconditions) {
  EXPECT_THROW(build_psi_table(6, Rational(1, 2), 2), PreconditionError);
  EXPECT_THROW(build_psi_table(8, Rational(1, 2), 1), PreconditionError);
  EXPECT_THROW(build_psi_table(8, Rational(1, 2), 9), PreconditionError);
  EXPECT_THROW(build_main_collision_dual(ProblemShape::make(6, 8), Rational(1, 2), 2), PreconditionError);
}

TEST(PsiTableTest, EtaCancellationAtLargeN) {
  // delta/8 = 16/129 gives c = 129, so omega on [130] has nodes {1, 2, 130}
  // and eta_130 is actually needed.
  Rational delta(128, 129);
  auto t = build_psi_table(1040, delta, 130);
  EXPECT_EQ(t.used_k(), (std::vector<int>{130}));
  EXPECT_FALSE(t.omega.at(130).is_zero());
  EXPECT_TRUE(t.at(520, 130).is_zero());
  EXPECT_FALSE(t.at(260, 130).is_zero());
  EXPECT_EQ(t.eta.at(130).node_set, (std::set<int>{260, 520}));
  EXPECT_TRUE(check_table_identities(t).ok());
  EXPECT_EQ(t.claimed_phd(), 0);

  auto shape = ProblemShape::make(1040, 2048);
  auto main = build_main_collision_dual(shape, delta, 130);
  EXPECT_TRUE(main.psi.mass(class_of_triple(520, 2, 1, 1040)).is_zero());
  EXPECT_FALSE(main.psi1.mass(class_of_triple(260, 130, 1, 1040)).is_zero());
  EXPECT_LE(l1_norm(main.psi), Rational(1, 2) + delta);
  auto props = verify_lemma42_properties(main.psi1, main.psi2, delta, t.claimed_phd(), {}, &main.table);
  for (const auto& p : props) EXPECT_TRUE(p.pass) << p.id << " " << p.detail;
  EXPECT_NE(props[4].detail.find("conditional"), std::string::npos);
}

TEST(PsiHatTest, ClassAuditAtFour) {
  auto shape = ProblemShape::make(4, 4);
  auto t = build_psi_table(4, Rational(1, 2), 2);
  auto psi1 = build_psi_hat(1, t, shape);
  auto psi2 = build_psi_hat(2, t, shape);
  auto mid = OrbitClass::regular(2, 1, 2);
  EXPECT_EQ(psi1.class_mass.size(), 2u);
  EXPECT_EQ(psi1.mass(OrbitClass::k_to_one(1)), Rational(1, 2));
  EXPECT_EQ(psi1.mass(mid), Rational(-1, 2));
  EXPECT_EQ(psi2.mass(mid), Rational(1, 2));
  EXPECT_EQ(psi2.mass(OrbitClass::k_to_one(2)), Rational(-1, 2));
  EXPECT_TRUE(psi1.mass(OrbitClass::k_to_one(2)).is_zero());
  EXPECT_GT(psi1.mass(OrbitClass::k_to_one(1)), Rational(1, 4));
  // Per-point values from hand-counted class sizes: 24, 144, 36.
  EXPECT_EQ(psi1.point_value(OrbitClass::k_to_one(1)), Rational(1, 48));
  EXPECT_EQ(psi1.point_value(mid), Rational(-1, 288));
  EXPECT_EQ(psi2.point_value(OrbitClass::k_to_one(2)), Rational(-1, 72));
}

TEST(MainDualTest, DeskScale) {
  auto shape = ProblemShape::make(4, 4);
  Rational delta(1, 20);
  auto main = build_main_collision_dual(shape, delta, 2);
  EXPECT_TRUE(main.psi.mass(class_of_triple(2, 2, 1, 4)).is_zero());
  Rational l1 = l1_norm(main.psi);
  EXPECT_LE(l1, Rational(1, 2) + delta);
  EXPECT_GE(correlation(main.psi, TargetFunction::Collision), (Rational(1) - Rational(6) * delta) * l1);
  int claimed = main.table.claimed_phd();
  EXPECT_TRUE(pure_high_degree_exact(main.psi, claimed).pass);
  EXPECT_GE(measure_phd_exact(main.psi, shape.n), claimed);
  auto props = verify_lemma42_properties(main.psi1, main.psi2, delta, claimed);
  ASSERT_EQ(props.size(), 8u);
  for (const auto& p : props) EXPECT_TRUE(p.pass) << p.id << " " << p.detail;
}

TEST(ReconstructionTest, RoundTripAndTamper) {
  auto shape = ProblemShape::make(4, 4);
  auto main = build_main_collision_dual(shape, Rational(1, 20), 2);
  auto ok = verify_by_reconstruction(main.psi, TargetFunction::Collision, Rational(1, 2), 0);
  EXPECT_TRUE(ok.pass) << ok.failing_constraint;
  EXPECT_EQ(ok.mode, "conditional");

  auto tampered = main.psi;
  tampered.class_mass.begin()->second += Rational(1, 1000);
  EXPECT_FALSE(verify_by_reconstruction(tampered, TargetFunction::Collision, Rational(0), 0).pass);

  auto weak = build_weak_collision_dual(4, 32, Rational(1, 4));
  auto wr = verify_by_reconstruction(weak, TargetFunction::Collision, Rational(1, 2), 0);
  EXPECT_TRUE(wr.pass) << wr.failing_constraint;

  DualWitness anon;
  anon.shape = shape;
  anon.meta["construction"] = "ed-from-collision";
  anon.meta["delta"] = "1/2";
  EXPECT_THROW(verify_by_reconstruction(anon, TargetFunction::ED, Rational(0), 0), PreconditionError);
}
