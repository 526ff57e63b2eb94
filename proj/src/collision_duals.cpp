#include "dualpoly/collision_duals.hpp"

#include <algorithm>

namespace dualpoly {

namespace {

nlohmann::json int_list(const std::vector<int>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int x : v) a.push_back(x);
  return a;
}

}  // namespace

DualWitness build_weak_collision_dual(int L, long R, const Rational& delta) {
  if (L < 2) throw PreconditionError("weak dual needs L >= 2");
  if (L > 12) throw PreconditionError("L! exceeds the supported domain size");
  int N = static_cast<int>(factorial(L).get_si());
  auto shape = ProblemShape::make(N, R);
  auto omega = build_or_dual(L, delta);
  DualWitness w;
  w.shape = shape;
  for (const auto& [k, v] : omega.values) w.add(OrbitClass::k_to_one(k), v);
  w.meta["construction"] = "weak-collision";
  w.meta["delta"] = delta.str();
  w.meta["L"] = L;
  w.meta["claimed_phd"] = omega.achieved_phd;
  w.meta["omega_phd"] = omega.achieved_phd;
  return w;
}

Rational PsiTable::at(int m, int k) const {
  auto it = entries.find({m, k});
  return it == entries.end() ? Rational(0) : it->second;
}

std::vector<int> PsiTable::used_k() const {
  std::vector<int> out;
  for (int k = 3; k <= K; ++k)
    if (!omega.at(k).is_zero()) out.push_back(k);
  return out;
}

int PsiTable::claimed_phd() const {
  int d = omega.achieved_phd;
  for (int k : used_k()) d = std::min(d, eta.at(k).achieved_phd);
  return d;
}

PsiTable build_psi_table(int N, const Rational& delta, int K) {
  if (N < 4 || N % 4 != 0) throw PreconditionError("N must be a positive multiple of 4");
  if (K < 2 || K > N) throw PreconditionError("K must satisfy 2 <= K <= N");
  if (delta.sign() <= 0 || delta >= Rational(1)) throw PreconditionError("delta must lie in (0, 1)");
  PsiTable t;
  t.N = N;
  t.K = K;
  t.delta = delta;
  t.omega = build_or_dual(K, delta / Rational(8));
  const Rational delta_prime(1, 2);
  for (int k = 3; k <= K; ++k) {
    try {
      t.eta.emplace(k, build_maj_dual(N, k, delta_prime));
    } catch (const DegenerateConstruction& e) {
      if (!t.omega.at(k).is_zero())
        throw DegenerateConstruction("eta_" + std::to_string(k) + " is needed (omega(k) != 0) but " +
                                     e.what());
      t.skipped.push_back(k);
    }
  }
  auto put = [&](int m, int k, const Rational& v) {
    if (v.is_zero()) return;
    auto& slot = t.entries[{m, k}];
    slot += v;
    if (slot.is_zero()) t.entries.erase({m, k});
  };
  for (int k = 1; k <= K; ++k) {
    Rational w = t.omega.at(k);
    if (w.is_zero()) continue;
    put(N / 2, k, w);
    if (k >= 3) {
      const auto& e = t.eta.at(k);
      Rational scale = w / e.at(N / 2);
      for (const auto& [m, v] : e.values) put(m, k, -scale * v);
    }
  }
  return t;
}

DualWitness build_psi_hat(int variant, const PsiTable& table, const ProblemShape& shape) {
  if (variant != 1 && variant != 2) throw PreconditionError("variant must be 1 or 2");
  if (shape.N != table.N) throw PreconditionError("table and shape disagree on N");
  DualWitness w;
  w.shape = shape;
  for (const auto& [mk, v] : table.entries) {
    auto [m, k] = mk;
    if (!is_valid_triple(m, k, variant, shape.N))
      throw DegenerateConstruction("nonzero Psi(" + std::to_string(m) + "," + std::to_string(k) +
                                   ") has no class R_{m,k," + std::to_string(variant) + "}");
    w.add(class_of_triple(m, k, variant, shape.N), v);
  }
  auto out = normalized(w);
  out.meta["construction"] = variant == 1 ? "psi1" : "psi2";
  return out;
}

MainCollisionDual build_main_collision_dual(const ProblemShape& shape, const Rational& delta, int K) {
  MainCollisionDual out;
  out.table = build_psi_table(shape.N, delta, K);
  out.psi1 = build_psi_hat(1, out.table, shape);
  out.psi2 = build_psi_hat(2, out.table, shape);
  out.a = out.psi1.mass(OrbitClass::k_to_one(1));
  out.b = -out.psi2.mass(OrbitClass::k_to_one(2));
  out.psi = witness_sum(out.psi1, out.psi2, out.a, out.b);
  auto& meta = out.psi.meta;
  meta["construction"] = "main-collision";
  meta["delta"] = delta.str();
  meta["K"] = K;
  meta["skipped_k"] = int_list(out.table.skipped);
  meta["used_k"] = int_list(out.table.used_k());
  meta["claimed_phd"] = out.table.claimed_phd();
  meta["omega_phd"] = out.table.omega.achieved_phd;
  meta["a"] = out.a.str();
  meta["b"] = out.b.str();
  return out;
}

std::vector<PropertyCheck> verify_lemma42_properties(const DualWitness& psi1, const DualWitness& psi2,
                                                     const Rational& delta, int d,
                                                     const EnumerationOptions& opts,
                                                     const PsiTable* table) {
  if (!(psi1.shape == psi2.shape)) throw PreconditionError("psi1 and psi2 shapes differ");
  const int N = psi1.shape.N;
  const auto t1 = OrbitClass::k_to_one(1);
  const auto t2 = OrbitClass::k_to_one(2);
  const auto mid = class_of_triple(N / 2, 2, 1, N);
  const Rational half_gap = (Rational(1) - delta) / Rational(2);
  std::vector<PropertyCheck> out;
  auto add = [&](int id, std::string statement, bool pass, std::string detail) {
    out.push_back({id, std::move(statement), pass, std::move(detail)});
  };

  add(1, "sum_{T1} psi1 > (1-delta)/2", psi1.mass(t1) > half_gap, psi1.mass(t1).str());
  add(2, "-sum_{T2} psi2 > (1-delta)/2", -psi2.mass(t2) > half_gap, (-psi2.mass(t2)).str());
  add(3, "||psi1||_1 = ||psi2||_1 = 1", l1_norm(psi1) == Rational(1) && l1_norm(psi2) == Rational(1),
      l1_norm(psi1).str() + ", " + l1_norm(psi2).str());
  add(4, "psi1 vanishes on T2 and psi2 vanishes on T1",
      psi1.mass(t2).is_zero() && psi2.mass(t1).is_zero(),
      psi1.mass(t2).str() + ", " + psi2.mass(t1).str());

  PropertyCheck p5{5, "psi1, psi2 have pure high degree >= " + std::to_string(d), false, ""};
  try {
    auto index = build_class_index(psi1.shape, opts.budget);
    auto r1 = pure_high_degree_exact(psi1, d, index, opts.jobs);
    auto r2 = pure_high_degree_exact(psi2, d, index, opts.jobs);
    p5.pass = r1.pass && r2.pass;
    p5.detail = "exact enumeration";
    if (!r1.pass) p5.detail += "; psi1 fails at mask " + std::to_string(*r1.failing_set);
    if (!r2.pass) p5.detail += "; psi2 fails at mask " + std::to_string(*r2.failing_set);
  } catch (const BudgetExceeded& e) {
    if (table) {
      auto ids = check_table_identities(*table);
      p5.pass = ids.ok() && d <= table->claimed_phd();
      p5.detail = "conditional on the symmetrization lemma (table identities" +
                  std::string(ids.ok() ? " hold" : " fail: " + ids.failure) + ")";
    } else {
      p5.detail = std::string("not verified: ") + e.what();
    }
  }
  out.push_back(p5);

  add(6, "sum_{T1} psi1 = sum_{R(N/2,2,1)} psi2", psi1.mass(t1) == psi2.mass(mid),
      psi1.mass(t1).str() + " vs " + psi2.mass(mid).str());
  add(7, "sum_{R(N/2,2,1)} psi1 = sum_{T2} psi2", psi1.mass(mid) == psi2.mass(t2),
      psi1.mass(mid).str() + " vs " + psi2.mass(t2).str());
  bool realizable = true;
  for (const auto* w : {&psi1, &psi2})
    for (const auto& [c, m] : w->class_mass) realizable = realizable && is_realizable(c, w->shape);
  add(8, "psi1, psi2 constant on each class", realizable, "class-indexed representation");
  return out;
}

TableIdentityReport check_table_identities(const PsiTable& table) {
  TableIdentityReport r;
  r.divisibility = r.even_support = true;
  for (const auto& [mk, v] : table.entries) {
    auto [m, k] = mk;
    if (m % k != 0) r.divisibility = false;
    if (m % 2 != 0) r.even_support = false;
  }
  r.cancellation = true;
  for (int k = 3; k <= table.K; ++k)
    if (!table.at(table.N / 2, k).is_zero()) r.cancellation = false;
  int d = table.claimed_phd();
  r.omega_moments = true;
  for (int j = 0; j <= d; ++j)
    if (!table.omega.moment(static_cast<unsigned>(j)).is_zero()) r.omega_moments = false;
  r.eta_moments = true;
  for (int k : table.used_k())
    for (int j = 0; j <= d; ++j)
      if (!table.eta.at(k).moment(static_cast<unsigned>(j)).is_zero()) r.eta_moments = false;
  if (!r.divisibility) r.failure = "Psi(m,k) != 0 with k not dividing m";
  else if (!r.cancellation) r.failure = "Psi(N/2,k) != 0 for some k >= 3";
  else if (!r.even_support) r.failure = "Psi supported on odd m";
  else if (!r.omega_moments) r.failure = "omega moment nonzero below claimed degree";
  else if (!r.eta_moments) r.failure = "eta_k moment nonzero below claimed degree";
  return r;
}

namespace {

bool same_masses(const DualWitness& a, const DualWitness& b) {
  return a.shape == b.shape && a.class_mass == b.class_mass;
}

}  // namespace

CertificateReport verify_by_reconstruction(const DualWitness& w, TargetFunction f,
                                           const Rational& epsilon, int d) {
  CertificateReport r;
  r.mode = "conditional";
  r.function = to_string(f);
  r.l1 = l1_norm(w);
  r.correlation = correlation(w, f);
  r.epsilon_claim = epsilon;
  r.degree_claim = d;
  r.correlation_pass = r.l1.sign() > 0 && r.correlation > epsilon * r.l1;
  const std::string kind = w.meta.value("construction", "");
  int claimed = -1;
  bool rebuilt_ok = false;
  std::string why;
  try {
    Rational delta = Rational::parse(w.meta.at("delta").get<std::string>());
    if (kind == "weak-collision") {
      int L = w.meta.at("L").get<int>();
      auto again = build_weak_collision_dual(L, w.shape.R, delta);
      rebuilt_ok = same_masses(w, again);
      auto omega = build_or_dual(L, delta);
      claimed = omega.achieved_phd;
      for (int j = 0; j <= claimed; ++j)
        if (!omega.moment(static_cast<unsigned>(j)).is_zero()) rebuilt_ok = false;
    } else if (kind == "main-collision") {
      int K = w.meta.at("K").get<int>();
      auto again = build_main_collision_dual(w.shape, delta, K);
      rebuilt_ok = same_masses(w, again.psi);
      auto ids = check_table_identities(again.table);
      if (!ids.ok()) {
        rebuilt_ok = false;
        why = ids.failure;
      }
      claimed = again.table.claimed_phd();
    } else {
      throw PreconditionError("reconstruction supports weak-collision and main-collision witnesses, not '" +
                              kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("witness metadata incomplete: ") + e.what());
  }
  if (!rebuilt_ok && why.empty()) why = "class masses differ from the rebuilt construction";
  r.phd_pass = rebuilt_ok && d <= claimed;
  r.phd_verified_to = rebuilt_ok ? claimed : -1;
  r.pass = r.correlation_pass && r.phd_pass;
  r.notes.push_back("pure high degree is conditional on the symmetrization lemma");
  if (!r.correlation_pass) r.failing_constraint = "correlation <= epsilon * l1";
  else if (!rebuilt_ok) r.failing_constraint = why;
  else if (!r.phd_pass) r.failing_constraint = "requested degree exceeds the construction's degree " +
                                               std::to_string(claimed);
  return r;
}

}  // namespace dualpoly
