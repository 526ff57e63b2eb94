// dualpoly: construct, verify and measure dual polynomials for Collision and
// Element Distinctness.
//
// Exit codes: 0 pass, 1 verification failed, 2 usage or precondition error,
// 3 enumeration budget exceeded. Errors go to stderr as one JSON object.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dualpoly/collision_duals.hpp"
#include "dualpoly/ed_reduction.hpp"
#include "dualpoly/json_io.hpp"
#include "dualpoly/lp_oracle.hpp"
#include "dualpoly/symmetrization.hpp"
#include "dualpoly/upper_bounds.hpp"

using namespace dualpoly;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Common {
  int jobs = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out;
  std::string csv;
};

Rational parse_rational(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw PreconditionError("--" + name + " expects a rational like 1/20, got '" + text + "'");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write " + path);
  f << text;
}

void emit(const Common& c, const Json& j) { write_text(c.out, j.dump(2) + "\n"); }

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void print_error(const std::string& kind, const std::string& message, Json extra = Json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  std::cerr << extra.dump() << "\n";
}

EnumerationOptions enum_opts(const Common& c) {
  EnumerationOptions o;
  o.budget = c.budget;
  o.jobs = c.jobs;
  return o;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  int L = 3, N = 4, K = 0, M = 3;
  long R = 8;
  std::string delta = "1/4";
  std::string source;
};

int run_construct(const Common& c, const ConstructArgs& a) {
  DualWitness w;
  Rational delta = parse_rational("delta", a.delta);
  if (a.kind == "weak-collision") {
    w = build_weak_collision_dual(a.L, a.R, delta);
  } else if (a.kind == "main-collision") {
    auto shape = ProblemShape::make(a.N, a.R);
    w = build_main_collision_dual(shape, delta, a.K > 0 ? a.K : default_k(a.N)).psi;
  } else if (a.kind == "ed-from-collision") {
    if (a.source.empty()) throw PreconditionError("ed-from-collision needs --source");
    auto psi = witness_from_json(read_json(a.source));
    w = ed_dual_from_collision(psi, a.M, enum_opts(c)).phi;
  } else {
    throw PreconditionError("unknown construction '" + a.kind + "'");
  }
  emit(c, to_json(w));
  return kPass;
}

struct VerifyArgs {
  std::string path;
  std::string function = "collision";
  std::string epsilon = "0";
  int degree = 0;
  std::string mode = "exact";
};

int run_verify(const Common& c, const VerifyArgs& a) {
  auto w = witness_from_json(read_json(a.path));
  auto f = parse_target_function(a.function);
  Rational eps = parse_rational("epsilon", a.epsilon);
  CertificateReport rep;
  if (a.mode == "exact") {
    try {
      rep = verify_certificate(w, f, eps, a.degree, enum_opts(c));
    } catch (const BudgetExceeded& e) {
      print_error("budget", e.what(),
                  {{"required", e.required().get_str()},
                   {"budget", e.budget()},
                   {"suggestion", "rerun with --mode conditional, or raise --budget"}});
      return kBudget;
    }
  } else if (a.mode == "conditional") {
    rep = verify_by_reconstruction(w, f, eps, a.degree);
  } else {
    throw PreconditionError("--mode must be exact or conditional");
  }
  emit(c, to_json(rep));
  return rep.pass ? kPass : kFail;
}

struct OracleArgs {
  std::string function = "collision";
  int N = 4;
  long R = 4;
  std::vector<int> degrees{0, 1};
  bool folded = false;
  std::string threshold = "0";
  int cap = kDefaultLpBitCap;
};

int run_oracle(const Common& c, const OracleArgs& a) {
  auto f = parse_target_function(a.function);
  auto shape = ProblemShape::make(a.N, a.R);
  Rational threshold = parse_rational("threshold", a.threshold);
  Json instances = Json::array();
  std::ostringstream csv;
  csv << "d,epsilon_opt\n";
  bool ok = true;
  for (int d : a.degrees) {
    auto inst = make_lp_instance(f, shape, d, a.cap);
    auto sol = solve_approx_degree_lp(inst);
    Json j = to_json(sol, inst);
    j["permuted_resolve_agrees"] = permuted_resolve_agrees(inst, sol, 20261016u + d);
    j["max_error_report"] = to_json(max_error_report(sol, inst, threshold));
    if (a.folded) {
      auto fold = solve_folded_lp(f, shape, d, c.budget);
      j["folded"] = {{"epsilon", fold.epsilon.str()},
                     {"unfold_verified", fold.unfold_verified},
                     {"witness", to_json(fold.witness)}};
      ok = ok && fold.unfold_verified && fold.epsilon <= sol.epsilon_opt;
    }
    ok = ok && sol.strong_duality && sol.primal_feasible && sol.dual_feasible && sol.complementary_slackness &&
         j["permuted_resolve_agrees"].get<bool>();
    csv << d << "," << sol.epsilon_opt.str() << "\n";
    instances.push_back(j);
  }
  if (!c.csv.empty()) write_text(c.csv, csv.str());
  emit(c, {{"function", to_string(f)}, {"N", a.N}, {"R", a.R}, {"instances", instances}, {"verdict", ok ? "pass" : "fail"}});
  return ok ? kPass : kFail;
}

struct SandwichArgs {
  int N = 4;
  long R = 4;
  std::vector<int> degrees{0, 1, 2};
  std::string delta = "1/20";
  int K = 0;
};

int run_sandwich(const Common& c, const SandwichArgs& a) {
  auto shape = ProblemShape::make(a.N, a.R);
  Rational delta = parse_rational("delta", a.delta);
  // Lower side: constructed witnesses with their exactly measured phd.
  struct Lower {
    std::string name;
    DualWitness w;
    int phd;
  };
  std::vector<Lower> lows;
  auto index = build_class_index(shape, c.budget);
  if (a.N % 4 == 0) {
    auto psi = build_main_collision_dual(shape, delta, a.K > 0 ? a.K : default_k(a.N)).psi;
    lows.push_back({"main-collision", psi, measure_phd_exact(psi, shape.n, index, c.jobs)});
  }
  for (int L = 2; L <= 4; ++L)
    if (factorial(L) == BigInt(a.N)) {
      auto w = build_weak_collision_dual(L, a.R, delta);
      if (!(w.shape == shape)) continue;
      lows.push_back({"weak-collision", w, measure_phd_exact(w, shape.n, index, c.jobs)});
    }
  // Upper side: Brassard approximants whose exact Walsh degree is known.
  struct Upper {
    std::string name;
    Rational error;
    int degree;
  };
  std::vector<Upper> highs{{"zero", Rational(1), 0}};
  for (int r = 1; r < a.N; ++r)
    for (unsigned d : {1u, 2u, 4u}) {
      auto ap = brassard_collision_approximant(shape, r, d, c.budget);
      auto rep = measure_errors(ap, shape, c.budget);
      Rational err = std::max(rep.promise_max_error, rep.outside_max_excess);
      highs.push_back({"brassard r=" + std::to_string(r) + " d=" + std::to_string(d), err,
                       exact_walsh_degree(ap.evaluator, shape, c.budget)});
    }

  Json rows = Json::array();
  std::ostringstream csv;
  csv << "d,epsilon_lo,epsilon_opt,epsilon_hi\n";
  bool ok = true;
  for (int d : a.degrees) {
    auto inst = make_lp_instance(TargetFunction::Collision, shape, d);
    auto sol = solve_approx_degree_lp(inst);
    Json row{{"d", d}, {"epsilon_opt", sol.epsilon_opt.str()}, {"strong_duality", sol.strong_duality}};
    std::optional<Rational> lo, hi;
    Json witnesses = Json::array();
    for (const auto& l : lows) {
      if (l.phd < d) continue;
      Rational eps = correlation(l.w, TargetFunction::Collision) / l1_norm(l.w);
      witnesses.push_back({{"name", l.name}, {"phd", l.phd}, {"epsilon", eps.str()}});
      if (!lo || eps > *lo) lo = eps;
    }
    for (const auto& h : highs)
      if (h.degree <= d && (!hi || h.error < *hi)) hi = h.error;
    row["witnesses"] = witnesses;
    row["epsilon_lo"] = lo ? Json(lo->str()) : Json(nullptr);
    row["epsilon_hi"] = hi ? Json(hi->str()) : Json(nullptr);
    bool consistent = sol.strong_duality && (!lo || *lo <= sol.epsilon_opt) && (!hi || sol.epsilon_opt <= *hi);
    row["consistent"] = consistent;
    ok = ok && consistent;
    csv << d << "," << (lo ? lo->str() : "") << "," << sol.epsilon_opt.str() << "," << (hi ? hi->str() : "") << "\n";
    rows.push_back(row);
  }
  Json approximants = Json::array();
  for (const auto& h : highs)
    approximants.push_back({{"name", h.name}, {"error", h.error.str()}, {"walsh_degree", h.degree}});
  if (!c.csv.empty()) write_text(c.csv, csv.str());
  emit(c, {{"N", a.N}, {"R", a.R}, {"rows", rows}, {"approximants", approximants}, {"verdict", ok ? "pass" : "fail"}});
  return ok ? kPass : kFail;
}

struct SymcheckArgs {
  int N = 4;
  long R = 4;
  int max_s = 3;
};

int run_symcheck(const Common& c, const SymcheckArgs& a) {
  auto shape = ProblemShape::make(a.N, a.R);
  auto fits = fit_all_sets(shape, a.max_s, c.jobs, c.budget);
  Json arr = Json::array();
  bool ok = true;
  for (const auto& f : fits) {
    arr.push_back(to_json(f));
    ok = ok && f.consistent && f.alias_consistent;
  }
  emit(c, {{"N", a.N}, {"R", a.R}, {"max_s", a.max_s}, {"fits", arr}, {"verdict", ok ? "pass" : "fail"}});
  return ok ? kPass : kFail;
}

struct UpperboundArgs {
  std::string kind;
  int N = 4, M = 3, r = 2;
  long R = 4;
  unsigned d = 4;
  std::string delta = "1/4";
  std::string growth = "2";
};

int run_upperbound(const Common& c, const UpperboundArgs& a) {
  if (a.kind == "ed") {
    auto shape = ProblemShape::make(a.M, a.R);
    Rational bound = Rational(1) - Rational(1, a.M * a.M);
    Json variants = Json::array();
    std::optional<Rational> best;
    int best_sign = 1;
    for (int sign : {1, -1}) {
      auto rep = measure_errors(appendix_ed_approximant(a.M, a.R, sign), shape, c.budget);
      variants.push_back({{"sign", sign}, {"pairs", "not-equal"}, {"report", to_json(rep)}});
      if (!best || rep.promise_max_error < *best) {
        best = rep.promise_max_error;
        best_sign = sign;
      }
    }
    // The equal-pairs reading, reported for comparison only.
    Json alt = Json::array();
    for (int sign : {1, -1}) {
      auto rep = measure_errors(appendix_ed_approximant(a.M, a.R, sign, PairCount::Equal), shape, c.budget);
      alt.push_back({{"sign", sign}, {"pairs", "equal"}, {"promise_max_error", rep.promise_max_error.str()}});
    }
    bool within = *best <= bound;
    auto ap = appendix_ed_approximant(a.M, a.R, best_sign);
    if (!c.csv.empty()) write_text(c.csv, error_report_csv(measure_errors(ap, shape, c.budget)));
    emit(c, {{"kind", "ed"},
             {"M", a.M},
             {"R", a.R},
             {"stated_bound", bound.str()},
             {"best_sign", best_sign},
             {"best_error", best->str()},
             {"within_stated_bound", within},
             {"claimed_degree", ap.claimed_degree},
             {"walsh_degree", exact_walsh_degree(ap.evaluator, shape, c.budget)},
             {"variants", variants},
             {"equal_pairs_reading", alt},
             {"verdict", within ? "pass" : "fail"}});
    return within ? kPass : kFail;
  }
  auto shape = ProblemShape::make(a.N, a.R);
  EvaluableApproximant ap;
  if (a.kind == "brassard")
    ap = brassard_collision_approximant(shape, a.r, a.d, c.budget);
  else if (a.kind == "appendix-collision")
    ap = appendix_collision_approximant(shape, parse_rational("delta", a.delta), parse_rational("growth", a.growth),
                                        c.budget);
  else
    throw PreconditionError("unknown approximant '" + a.kind + "' (brassard, appendix-collision, ed)");
  auto rep = measure_errors(ap, shape, c.budget);
  if (!c.csv.empty()) write_text(c.csv, error_report_csv(rep));
  emit(c, {{"kind", a.kind},
           {"description", ap.description},
           {"claimed_degree", ap.claimed_degree},
           {"report", to_json(rep)},
           {"verdict", rep.bounded ? "pass" : "fail"}});
  return rep.bounded ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dual polynomials for Collision and Element Distinctness"};
  app.set_config("--config", "", "TOML config file; keys match long option names, per-command sections");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--jobs", common.jobs, "Worker threads for enumeration")->check(CLI::Range(1, 256));
  app.add_option("--budget", common.budget, "Maximum inputs enumerated exactly");
  app.add_option("--out", common.out, "Output file (default stdout)");
  app.add_option("--csv", common.csv, "Also write a CSV table here");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a witness and print it as JSON");
  construct->add_option("kind", ca.kind, "weak-collision | main-collision | ed-from-collision")->required();
  construct->add_option("--L", ca.L, "Weak dual: N = L!");
  construct->add_option("--N", ca.N, "Domain size");
  construct->add_option("--R", ca.R, "Range size (power of two)");
  construct->add_option("--delta", ca.delta, "Rational delta");
  construct->add_option("--K", ca.K, "Largest k in the Psi table (default min(N, 4))");
  construct->add_option("--M", ca.M, "Restriction size for ed-from-collision");
  construct->add_option("--source", ca.source, "Collision witness JSON for ed-from-collision");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a witness as a dual certificate");
  verify->add_option("witness", va.path, "Witness JSON")->required();
  verify->add_option("--function", va.function, "collision | ed");
  verify->add_option("--epsilon", va.epsilon, "Required correlation / L1, strict");
  verify->add_option("--degree", va.degree, "Required pure high degree");
  verify->add_option("--mode", va.mode, "exact | conditional");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Solve the approximate-degree LP exactly");
  oracle->add_option("--function", oa.function, "collision | ed");
  oracle->add_option("--N", oa.N);
  oracle->add_option("--R", oa.R);
  oracle->add_option("--d", oa.degrees, "Degrees to solve")->expected(1, 16);
  oracle->add_flag("--folded", oa.folded, "Also solve the orbit-folded LP");
  oracle->add_option("--threshold", oa.threshold, "Near-max-error threshold for the report");
  oracle->add_option("--cap", oa.cap, "Largest number of input bits");

  SandwichArgs sa;
  auto* sandwich = app.add_subcommand("sandwich", "Witness <= LP optimum <= approximant, per degree");
  sandwich->add_option("--N", sa.N);
  sandwich->add_option("--R", sa.R);
  sandwich->add_option("--d", sa.degrees)->expected(1, 16);
  sandwich->add_option("--delta", sa.delta);
  sandwich->add_option("--K", sa.K);

  SymcheckArgs ya;
  auto* symcheck = app.add_subcommand("symcheck", "Fit orbit averages of parities by trivariate polynomials");
  symcheck->add_option("--N", ya.N);
  symcheck->add_option("--R", ya.R);
  symcheck->add_option("--max-s", ya.max_s, "Largest |S|");

  UpperboundArgs ua;
  auto* upper = app.add_subcommand("upperbound", "Measure an explicit approximant exactly");
  upper->add_option("kind", ua.kind, "brassard | appendix-collision | ed")->required();
  upper->add_option("--N", ua.N);
  upper->add_option("--R", ua.R);
  upper->add_option("--M", ua.M, "ED arity");
  upper->add_option("--r", ua.r, "Subset size");
  upper->add_option("--d", ua.d, "Chebyshev degree");
  upper->add_option("--delta", ua.delta);
  upper->add_option("--growth", ua.growth, "Chebyshev growth constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kUsage;
  }

  try {
    if (*construct) return run_construct(common, ca);
    if (*verify) return run_verify(common, va);
    if (*oracle) return run_oracle(common, oa);
    if (*sandwich) return run_sandwich(common, sa);
    if (*symcheck) return run_symcheck(common, ya);
    if (*upper) return run_upperbound(common, ua);
  } catch (const BudgetExceeded& e) {
    print_error("budget", e.what(), {{"required", e.required().get_str()}, {"budget", e.budget()}});
    return kBudget;
  } catch (const PreconditionError& e) {
    print_error("precondition", e.what());
    return kUsage;
  } catch (const DegenerateConstruction& e) {
    print_error("degenerate", e.what());
    return kFail;
  }
  return kUsage;
}
