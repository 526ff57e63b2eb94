#include "dualpoly/json_io.hpp"

#include <cstdio>

namespace dualpoly {

Json to_json(const OrbitClass& c) {
  switch (c.kind) {
    case OrbitClass::Kind::KtoOne:
      return Json{{"kind", "k_to_one"}, {"k", c.k}};
    case OrbitClass::Kind::Regular:
      return Json{{"kind", "regular"}, {"m", c.m}, {"a", c.a}, {"b", c.b}};
    case OrbitClass::Kind::Irregular:
      return Json{{"kind", "irregular"}, {"profile", c.profile}};
  }
  return Json();
}

OrbitClass orbit_class_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "k_to_one") return OrbitClass::k_to_one(j.at("k").get<int>());
    if (kind == "regular")
      return OrbitClass::regular(j.at("m").get<int>(), j.at("a").get<int>(), j.at("b").get<int>());
    if (kind == "irregular") {
      auto c = OrbitClass::irregular(j.at("profile").get<std::vector<int>>());
      if (!(class_from_profile(c.profile) == c))
        throw PreconditionError("irregular profile matches a k-to-1 or regular class");
      return c;
    }
    throw PreconditionError("unknown class kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed class: ") + e.what());
  }
}

Json to_json(const FunctionInput& x) {
  return Json{{"N", x.shape.N}, {"R", x.shape.R}, {"values", x.values}};
}

FunctionInput function_input_from_json(const Json& j) {
  try {
    auto shape = ProblemShape::make(j.at("N").get<int>(), j.at("R").get<long>());
    return FunctionInput::make(shape, j.at("values").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed input: ") + e.what());
  }
}

Json to_json(const DualWitness& w) {
  Json classes = Json::array();
  for (const auto& [c, m] : w.class_mass) classes.push_back(Json{{"class", to_json(c)}, {"mass", m.str()}});
  return Json{{"N", w.shape.N}, {"R", w.shape.R}, {"classes", classes}, {"meta", w.meta}};
}

DualWitness witness_from_json(const Json& j) {
  try {
    DualWitness w;
    w.shape = ProblemShape::make(j.at("N").get<int>(), j.at("R").get<long>());
    for (const auto& entry : j.at("classes")) {
      OrbitClass c = orbit_class_from_json(entry.at("class"));
      Rational m;
      try {
        m = Rational::parse(entry.at("mass").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw PreconditionError(std::string("bad mass: ") + e.what());
      }
      if (w.class_mass.count(c)) throw PreconditionError("class " + c.str() + " listed twice");
      w.add(c, m);
    }
    if (j.contains("meta")) w.meta = j.at("meta");
    return w;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed witness: ") + e.what());
  }
}

Json to_json(const UnivariateDual& d) {
  Json values = Json::object();
  for (const auto& [r, v] : d.values) values[std::to_string(r)] = v.str();
  return Json{{"domain", {d.domain_lo, d.domain_hi}},
              {"values", values},
              {"nodes", std::vector<int>(d.node_set.begin(), d.node_set.end())},
              {"achieved_phd", d.achieved_phd}};
}

Json to_json(const CertificateReport& r) {
  Json j{{"mode", r.mode},
         {"function", r.function},
         {"l1", r.l1.str()},
         {"correlation", r.correlation.str()},
         {"epsilon_claim", r.epsilon_claim.str()},
         {"degree_claim", r.degree_claim},
         {"phd_verified_to", r.phd_verified_to},
         {"correlation_pass", r.correlation_pass},
         {"phd_pass", r.phd_pass},
         {"verdict", r.pass ? "pass" : "fail"},
         {"failing_constraint", r.failing_constraint},
         {"notes", r.notes}};
  j["failing_set"] = r.failing_set ? Json(*r.failing_set) : Json(nullptr);
  if (!r.l1.is_zero()) j["correlation_over_l1_approx"] = (r.correlation / r.l1).to_double();
  return j;
}

Json to_json(const PropertyCheck& p) {
  return Json{{"id", p.id}, {"statement", p.statement}, {"pass", p.pass}, {"detail", p.detail}};
}

Json to_json(const TrivariateFit& f) {
  Json coeffs = Json::object();
  for (const auto& [e, c] : f.polynomial.terms())
    coeffs[std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2])] = c.str();
  return Json{{"set", f.mask},
              {"degree", f.degree},
              {"consistent", f.consistent},
              {"alias_consistent", f.alias_consistent},
              {"constraints", f.constraints},
              {"unknowns", f.unknowns},
              {"coefficients", coeffs}};
}

Json to_json(const ErrorReport& r) {
  Json classes = Json::array();
  for (const auto& e : r.classes)
    classes.push_back(Json{{"class", e.cls.str()},
                           {"count", e.count},
                           {"max_error", e.max_error.str()},
                           {"min_value", e.min_value.str()},
                           {"max_value", e.max_value.str()}});
  return Json{{"classes", classes},
              {"promise_max_error", r.promise_max_error.str()},
              {"outside_max_excess", r.outside_max_excess.str()},
              {"bounded", r.bounded}};
}

Json to_json(const LpSolution& s, const LpInstance& inst) {
  Json coeffs = Json::object();
  for (const auto& [mask, c] : s.coefficients) coeffs[std::to_string(mask)] = c.str();
  Json phi = Json::object();
  for (std::size_t x = 0; x < s.phi.size(); ++x)
    if (!s.phi[x].is_zero()) phi[std::to_string(x)] = s.phi[x].str();
  Json j{{"n", inst.n},
         {"degree", inst.degree},
         {"epsilon_opt", s.epsilon_opt.str()},
         {"dual_objective", s.dual_objective.str()},
         {"coefficients", coeffs},
         {"phi", phi},
         {"max_error_point_count", s.max_error_points.size()},
         {"iterations", s.iterations},
         {"strong_duality", s.strong_duality},
         {"primal_feasible", s.primal_feasible},
         {"dual_feasible", s.dual_feasible},
         {"complementary_slackness", s.complementary_slackness}};
  if (inst.shape) {
    j["N"] = inst.shape->N;
    j["R"] = inst.shape->R;
  }
  return j;
}

Json to_json(const MaxErrorReport& r) {
  Json classes = Json::array();
  for (const auto& row : r.classes)
    classes.push_back(Json{{"class", row.cls.str()},
                           {"members", row.members},
                           {"max_error_members", row.max_error_members},
                           {"near_max_members", row.near_max_members},
                           {"dual_mass", row.dual_mass.str()}});
  return Json{{"epsilon_opt", r.epsilon_opt.str()},
              {"degenerate", r.degenerate},
              {"max_error_point_count", r.max_error_points.size()},
              {"classes", classes},
              {"near_max_dual_fraction", r.near_max_dual_fraction.str()},
              {"support_within_max_error", r.support_within_max_error}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string witness_fingerprint(const DualWitness& w) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(w).dump())));
  return buf;
}

}  // namespace dualpoly
