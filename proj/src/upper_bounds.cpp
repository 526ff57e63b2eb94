#include "dualpoly/upper_bounds.hpp"

#include <memory>
#include <sstream>

namespace dualpoly {

int cross_collisions(const FunctionInput& x, const std::vector<int>& S) {
  std::vector<char> in(x.shape.N, 0);
  for (int i : S) {
    if (i < 0 || i >= x.shape.N) throw PreconditionError("subset index out of range");
    in[i] = 1;
  }
  // Count per value outside S, then sum over S.
  std::map<int, int> outside;
  for (int j = 0; j < x.shape.N; ++j)
    if (!in[j]) ++outside[x.values[j]];
  int total = 0;
  for (int i : S) {
    auto it = outside.find(x.values[i]);
    if (it != outside.end()) total += it->second;
  }
  return total;
}

int ed_indicator(const FunctionInput& x, const std::vector<int>& S) {
  std::vector<int> seen;
  for (int i : S) {
    if (i < 0 || i >= x.shape.N) throw PreconditionError("subset index out of range");
    for (int v : seen)
      if (v == x.values[i]) return 0;
    seen.push_back(x.values[i]);
  }
  return 1;
}

Rational AffineChebyshev::operator()(const Rational& i) const {
  Rational s = Rational(1) - Rational(2) * (i - Rational(1)) / (horizon - Rational(1));
  return Rational(-1) + alpha * (chebyshev_eval(d, s) + Rational(1));
}

AffineChebyshev affine_chebyshev(unsigned d, const Rational& horizon) {
  if (d < 1) throw PreconditionError("Chebyshev degree must be at least 1");
  if (horizon <= Rational(1)) throw PreconditionError("horizon must exceed 1");
  AffineChebyshev a;
  a.d = d;
  a.horizon = horizon;
  Rational s0 = Rational(1) + Rational(2) / (horizon - Rational(1));
  a.alpha = Rational(2) / (chebyshev_eval(d, s0) + Rational(1));
  a.value_at_zero_is_one = a(Rational(0)) == Rational(1);
  a.bounded_on_interval = true;
  a.low_on_tail = true;
  std::vector<Rational> grid;
  for (long k = 0; Rational(k, 8) < horizon; ++k) grid.emplace_back(k, 8);
  grid.push_back(horizon);
  for (const auto& i : grid) {
    Rational v = a(i);
    if (v.abs() > Rational(1)) a.bounded_on_interval = false;
    if (i >= Rational(1) && v > Rational(-3, 4)) a.low_on_tail = false;
  }
  return a;
}

bool chebyshev_growth_holds(unsigned d, const Rational& growth_constant) {
  Rational x = Rational(1) + growth_constant / Rational(BigInt(d) * d);
  return chebyshev_eval(d, x) >= Rational(10);
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int N, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(r);
  for (int i = 0; i < r; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = r - 1;
    while (i >= 0 && s[i] == N - r + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < r; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

// Unsigned subset average; A is tabulated at every reachable cross count.
Evaluator subset_average(const ProblemShape& shape, int r, const AffineChebyshev& a) {
  auto subsets = std::make_shared<std::vector<std::vector<int>>>(subsets_of_size(shape.N, r));
  auto table = std::make_shared<std::vector<Rational>>();
  for (int c = 0; c <= r * (shape.N - r); ++c) table->push_back(a(Rational(c, r)));
  Rational inv = Rational(1) / Rational(static_cast<long>(subsets->size()));
  return [subsets, table, inv](const FunctionInput& x) {
    Rational sum = 0;
    for (const auto& S : *subsets)
      if (ed_indicator(x, S)) sum += (*table)[cross_collisions(x, S)];
    return sum * inv;
  };
}

Evaluator scaled(Evaluator p, int sign) {
  if (sign == 1) return p;
  return [p = std::move(p)](const FunctionInput& x) { return -p(x); };
}

// Picks the sign with the smaller promise error, +1 on ties; records both.
int choose_sign(EvaluableApproximant& ap, const ProblemShape& shape, std::uint64_t budget) {
  try {
    Evaluator base = ap.evaluator;
    ap.evaluator = base;
    Rational plus = measure_errors(ap, shape, budget).promise_max_error;
    ap.evaluator = scaled(base, -1);
    Rational minus = measure_errors(ap, shape, budget).promise_max_error;
    int sign = minus < plus ? -1 : 1;
    ap.evaluator = scaled(base, sign);
    ap.description["sign"] = sign;
    ap.description["promise_error_plus"] = plus.str();
    ap.description["promise_error_minus"] = minus.str();
    return sign;
  } catch (const BudgetExceeded&) {
    ap.description["sign"] = 1;
    ap.description["sign_note"] = "not measured: shape exceeds enumeration budget";
    return 1;
  }
}

nlohmann::json chebyshev_json(const AffineChebyshev& a) {
  return {{"d", a.d},
          {"horizon", a.horizon.str()},
          {"alpha", a.alpha.str()},
          {"value_at_zero_is_one", a.value_at_zero_is_one},
          {"bounded_on_interval", a.bounded_on_interval},
          {"low_on_tail", a.low_on_tail}};
}

Rational covering_horizon(int N, int r) {
  Rational h(N - r, r);
  return h < Rational(2) ? Rational(2) : h;
}

}  // namespace

EvaluableApproximant brassard_collision_approximant(const ProblemShape& shape, int r, unsigned d,
                                                    std::uint64_t budget) {
  if (r < 1 || r > shape.N) throw PreconditionError("need 1 <= r <= N");
  BigInt subsets = binomial(shape.N, r);
  if (subsets > BigInt(std::to_string(budget)))
    throw BudgetExceeded("averaging over r-subsets", subsets, budget);
  auto a = affine_chebyshev(d, covering_horizon(shape.N, r));
  EvaluableApproximant ap;
  ap.target = TargetFunction::Collision;
  ap.evaluator = subset_average(shape, r, a);
  ap.claimed_degree = r * shape.bits_per_block + 2 * static_cast<int>(d) * shape.bits_per_block;
  ap.description = {{"construction", "brassard-collision"},
                    {"N", shape.N},
                    {"R", shape.R},
                    {"r", r},
                    {"d", d},
                    {"growth_constant", "2"},
                    {"growth_holds", chebyshev_growth_holds(d, Rational(2))},
                    {"chebyshev", chebyshev_json(a)}};
  choose_sign(ap, shape, budget);
  return ap;
}

EvaluableApproximant appendix_collision_approximant(const ProblemShape& shape, const Rational& delta,
                                                    const Rational& growth_constant,
                                                    std::uint64_t budget) {
  if (delta <= Rational(0) || delta > Rational(1, shape.N))
    throw PreconditionError("need 0 < delta <= 1/N");
  if (growth_constant <= Rational(0)) throw PreconditionError("growth constant must be positive");
  // r = round((delta N)^(1/3)): the largest r with (r - 1/2)^3 <= delta N.
  Rational target = delta * Rational(shape.N);
  int r = 0;
  while (pow(Rational(2 * r + 1, 2), 3) <= target) ++r;
  r = std::max(1, std::min(r, shape.N));
  unsigned d = static_cast<unsigned>((Rational(100) * growth_constant * Rational(r)).ceil().get_ui());
  auto a = affine_chebyshev(d, covering_horizon(shape.N, r));
  EvaluableApproximant ap;
  ap.target = TargetFunction::Collision;
  ap.evaluator = subset_average(shape, r, a);
  ap.claimed_degree = r * shape.bits_per_block + 2 * static_cast<int>(d) * shape.bits_per_block;
  Rational a0 = a(Rational(0));
  bool tail_ok = a.bounded_on_interval;
  for (long k = 8; Rational(k, 8) <= a.horizon; ++k)
    if (a(Rational(k, 8)) > -delta / Rational(2)) tail_ok = false;
  ap.description = {{"construction", "appendix-collision"},
                    {"N", shape.N},
                    {"R", shape.R},
                    {"delta", delta.str()},
                    {"r", r},
                    {"d", d},
                    {"growth_constant", growth_constant.str()},
                    {"growth_holds", chebyshev_growth_holds(d, growth_constant)},
                    {"stated_horizon", (Rational(BigInt(d) * d) / (growth_constant * delta)).str()},
                    {"value_at_zero_at_least_half_delta", a0 >= delta / Rational(2)},
                    {"tail_at_most_minus_half_delta", tail_ok},
                    {"chebyshev", chebyshev_json(a)}};
  choose_sign(ap, shape, budget);
  return ap;
}

EvaluableApproximant appendix_ed_approximant(int M, long R, int sign, PairCount pairs) {
  if (M < 2) throw PreconditionError("need M >= 2");
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  auto shape = ProblemShape::make(M, R);
  Rational scale = Rational(sign) / Rational(binomial(M, 2));
  bool count_equal = pairs == PairCount::Equal;
  EvaluableApproximant ap;
  ap.target = TargetFunction::ED;
  ap.evaluator = [M, scale, count_equal](const FunctionInput& x) {
    long count = 0;
    for (int i = 0; i < M; ++i)
      for (int j = i + 1; j < M; ++j)
        if ((x.values[i] != x.values[j]) != count_equal) ++count;
    return scale * (Rational(1, 2) - Rational(count));
  };
  ap.claimed_degree = 2 * shape.bits_per_block;
  ap.description = {{"construction", "appendix-ed"},
                    {"M", M},
                    {"R", R},
                    {"sign", sign},
                    {"pairs", count_equal ? "equal" : "not-equal"},
                    {"stated_error", (Rational(1) - Rational(1, M * M)).str()}};
  return ap;
}

ErrorReport measure_errors(const EvaluableApproximant& p, const ProblemShape& shape, std::uint64_t budget) {
  std::map<OrbitClass, ClassError> by_class;
  for_each_input(shape, budget, [&](std::uint64_t, const std::vector<int>& v) {
    FunctionInput x{shape, v};
    OrbitClass c = classify(x);
    Label lab = class_label(c, p.target);
    Rational val = p.evaluator(x);
    Rational err = lab == Label::Outside ? std::max(Rational(0), val.abs() - Rational(1))
                                         : (val - Rational(static_cast<int>(lab))).abs();
    auto [it, fresh] = by_class.try_emplace(c);
    ClassError& e = it->second;
    if (fresh) {
      e.cls = c;
      e.label = lab;
      e.max_error = err;
      e.min_value = e.max_value = val;
    } else {
      e.max_error = std::max(e.max_error, err);
      e.min_value = std::min(e.min_value, val);
      e.max_value = std::max(e.max_value, val);
    }
    ++e.count;
  });
  ErrorReport r;
  r.bounded = true;
  for (auto& [c, e] : by_class) {
    if (e.label == Label::Outside)
      r.outside_max_excess = std::max(r.outside_max_excess, e.max_error);
    else
      r.promise_max_error = std::max(r.promise_max_error, e.max_error);
    if (e.max_value > Rational(1) || e.min_value < Rational(-1)) r.bounded = false;
    r.classes.push_back(e);
  }
  return r;
}

std::string error_report_csv(const ErrorReport& r) {
  std::ostringstream os;
  os << "class,count,max_error\n";
  for (const auto& e : r.classes) os << e.cls.str() << "," << e.count << "," << e.max_error.str() << "\n";
  return os.str();
}

int exact_walsh_degree(const Evaluator& p, const ProblemShape& shape, std::uint64_t budget) {
  std::uint64_t total = enumeration_size(shape, budget);
  std::vector<Rational> values(total);
  BigInt D = 1;
  for_each_input(shape, budget, [&](std::uint64_t idx, const std::vector<int>& v) {
    values[idx] = p(FunctionInput{shape, v});
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), values[idx].denominator().get_mpz_t());
  });
  std::vector<BigInt> a(total);
  for (std::uint64_t i = 0; i < total; ++i) a[i] = values[i].numerator() * (D / values[i].denominator());
  for (std::uint64_t len = 1; len < total; len <<= 1)
    for (std::uint64_t i = 0; i < total; i += len << 1)
      for (std::uint64_t j = i; j < i + len; ++j) {
        BigInt u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
  int degree = -1;
  for (std::uint64_t s = 0; s < total; ++s)
    if (a[s] != 0) degree = std::max(degree, __builtin_popcountll(s));
  return degree;
}

}  // namespace dualpoly
