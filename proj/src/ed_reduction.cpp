#include "dualpoly/ed_reduction.hpp"

#include <algorithm>
#include <thread>

#include "dualpoly/json_io.hpp"

namespace dualpoly {

std::vector<RestrictionIndex> m_subsets(int N, int M) {
  if (M < 0 || M > N) throw PreconditionError("need 0 <= M <= N");
  std::vector<RestrictionIndex> out;
  RestrictionIndex s(M);
  for (int i = 0; i < M; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = M - 1;
    while (i >= 0 && s[i] == N - M + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < M; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

FunctionInput restrict_input(const FunctionInput& y, const RestrictionIndex& S) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 0 || S[i] >= y.shape.N) throw PreconditionError("restriction index out of range");
    if (i && S[i] <= S[i - 1]) throw PreconditionError("restriction index must be increasing");
  }
  auto shape = ProblemShape::make(static_cast<int>(S.size()), y.shape.R);
  FunctionInput x{shape, {}};
  for (int i : S) x.values.push_back(y.values[i]);
  return x;
}

void for_each_extension(const FunctionInput& x, int N,
                        const std::function<void(const RestrictionIndex&, const FunctionInput&)>& fn) {
  const int M = x.shape.N;
  auto shape = ProblemShape::make(N, x.shape.R);
  for (const auto& S : m_subsets(N, M)) {
    std::vector<int> rest;
    for (int i = 0, j = 0; i < N; ++i) {
      if (j < M && S[j] == i)
        ++j;
      else
        rest.push_back(i);
    }
    FunctionInput y{shape, std::vector<int>(N, 1)};
    for (int j = 0; j < M; ++j) y.values[S[j]] = x.values[j];
    while (true) {
      fn(S, y);
      std::size_t k = 0;
      for (; k < rest.size(); ++k) {
        int& v = y.values[rest[k]];
        if (v < shape.R) {
          ++v;
          break;
        }
        v = 1;
      }
      if (k == rest.size()) break;
    }
  }
}

BigInt extension_count(int N, int M, long R) {
  return binomial(N, M) * ipow(R, static_cast<unsigned>(N - M));
}

namespace {

bool all_distinct(const std::vector<int>& values, const RestrictionIndex& S) {
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (values[S[i]] == values[S[j]]) return false;
  return true;
}

long distinct_subset_count(const FunctionInput& y, int M) {
  long good = 0;
  for (const auto& S : m_subsets(y.shape.N, M))
    if (all_distinct(y.values, S)) ++good;
  return good;
}

}  // namespace

Rational collision_free_probability(const FunctionInput& y, int M) {
  BigInt total = binomial(y.shape.N, M);
  return Rational(BigInt(distinct_subset_count(y, M)), total);
}

Rational birthday_statistic(const FunctionInput& y, int M) {
  return Rational(2) * collision_free_probability(y, M) - Rational(1);
}

BirthdayCheck check_birthday_bound(const FunctionInput& y, int M) {
  BirthdayCheck c;
  c.probability = collision_free_probability(y, M);
  auto [lo, hi] = exp_neg_bounds(Rational(BigInt(M) * M, BigInt(4) * y.shape.N));
  c.bound_lo = lo;
  c.bound_hi = hi;
  if (c.probability <= lo) {
    c.holds = c.decided = true;
  } else if (c.probability > hi) {
    c.decided = true;
  }
  return c;
}

FunctionInput class_representative(const OrbitClass& c, const ProblemShape& shape) {
  if (!is_realizable(c, shape)) throw PreconditionError("class " + c.str() + " is not realizable");
  FunctionInput x{shape, {}};
  int value = 1;
  for (int s : c.fiber_profile(shape.N)) {
    x.values.insert(x.values.end(), s, value);
    ++value;
  }
  return x;
}

EdReduction ed_dual_from_collision(const DualWitness& psi, int M, const EnumerationOptions& opts) {
  const ProblemShape& big = psi.shape;
  if (M < 1 || M > big.N) throw PreconditionError("need 1 <= M <= N");
  const ProblemShape small = ProblemShape::make(M, big.R);
  const std::uint64_t ny = enumeration_size(big, opts.budget);
  const std::uint64_t nx = enumeration_size(small, opts.budget);
  const BigInt subsets_count = binomial(big.N, M);
  BigInt work = subsets_count * BigInt(std::to_string(ny));
  if (work > BigInt(std::to_string(opts.budget)))
    throw BudgetExceeded("averaging over inputs and M-subsets", work, opts.budget);

  auto index = build_class_index(big, opts.budget);
  BigInt D = 1;
  for (const auto& [c, m] : psi.class_mass) {
    if (index.id(c) < 0) throw PreconditionError("witness class " + c.str() + " missing from index");
    Rational p = psi.point_value(c);
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), p.denominator().get_mpz_t());
  }
  std::vector<BigInt> weight(index.classes.size(), BigInt(0));
  for (const auto& [c, m] : psi.class_mass) {
    Rational p = psi.point_value(c);
    weight[index.id(c)] = p.numerator() * (D / p.denominator());
  }

  const auto subsets = m_subsets(big.N, M);
  const int b = big.bits_per_block;
  const std::uint64_t digit_mask = static_cast<std::uint64_t>(big.R) - 1;
  int jobs = std::max(1, opts.jobs);
  std::vector<std::vector<BigInt>> partial(jobs, std::vector<BigInt>(nx, BigInt(0)));
  auto run = [&](int worker) {
    auto& acc = partial[worker];
    const std::uint64_t lo = ny * worker / jobs, hi = ny * (worker + 1) / jobs;
    for (std::uint64_t y = lo; y < hi; ++y) {
      const BigInt& w = weight[index.class_of[y]];
      if (w == 0) continue;
      for (const auto& S : subsets) {
        std::uint64_t x = 0;
        for (int j = M - 1; j >= 0; --j) x = (x << b) | ((y >> (b * S[j])) & digit_mask);
        acc[x] += w;
      }
    }
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(run, j);
    for (auto& t : pool) t.join();
  }

  EdReduction out;
  out.phi.shape = small;
  auto small_index = build_class_index(small, opts.budget);
  const BigInt denom = D * subsets_count;
  std::vector<std::optional<BigInt>> seen(small_index.classes.size());
  for (std::uint64_t x = 0; x < nx; ++x) {
    BigInt total = 0;
    for (const auto& p : partial) total += p[x];
    auto& slot = seen[small_index.class_of[x]];
    if (!slot) {
      slot = total;
    } else if (*slot != total) {
      throw DegenerateConstruction("averaged witness is not constant on class " +
                                   small_index.classes[small_index.class_of[x]].str());
    }
  }
  out.constancy_verified = true;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i] || *seen[i] == 0) continue;
    out.phi.add(small_index.classes[i],
                Rational(*seen[i], denom) * Rational(BigInt(small_index.counts[i])));
  }

  for (const auto& [c, m] : psi.class_mass)
    out.a_by_class[c] = birthday_statistic(class_representative(c, big), M);
  auto t2 = OrbitClass::k_to_one(2);
  out.delta_eff = 0;
  if (is_realizable(t2, big))
    out.delta_eff = (Rational(1) + birthday_statistic(class_representative(t2, big), M)) / Rational(2);

  out.phi.meta = nlohmann::json::object();
  out.phi.meta["construction"] = "ed-from-collision";
  out.phi.meta["source_fingerprint"] = witness_fingerprint(psi);
  out.phi.meta["source_N"] = big.N;
  out.phi.meta["M"] = M;
  out.phi.meta["delta_eff"] = out.delta_eff.str();
  if (psi.meta.contains("construction")) out.phi.meta["source_construction"] = psi.meta["construction"];
  if (psi.meta.contains("delta")) out.phi.meta["source_delta"] = psi.meta["delta"];
  if (psi.meta.contains("claimed_phd")) out.phi.meta["claimed_phd"] = psi.meta["claimed_phd"];
  return out;
}

Evaluator primal_reduction(Evaluator p, int M) {
  return [p = std::move(p), M](const FunctionInput& y) {
    Rational sum = 0;
    long count = 0;
    for (const auto& S : m_subsets(y.shape.N, M)) {
      sum += p(restrict_input(y, S));
      ++count;
    }
    return sum / Rational(count);
  };
}

PrimalReductionReport primal_reduction_check(const Evaluator& p, int M, const ProblemShape& shape,
                                             std::uint64_t budget) {
  auto q = primal_reduction(p, M);
  PrimalReductionReport r;
  bool any_t1 = false, any_t2 = false;
  for_each_input(shape, budget, [&](std::uint64_t, const std::vector<int>& values) {
    FunctionInput y{shape, values};
    OrbitClass c = classify(y);
    Label lab = class_label(c, TargetFunction::Collision);
    if (lab == Label::Outside) return;
    Rational v = q(y);
    Rational err = (v - Rational(static_cast<int>(lab))).abs();
    auto it = r.max_error_by_class.find(c);
    if (it == r.max_error_by_class.end())
      r.max_error_by_class.emplace(c, err);
    else if (err > it->second)
      it->second = err;
    if (lab == Label::Plus) {
      if (!any_t1 || v < r.t1_min) r.t1_min = v;
      if (!any_t1 || v > r.t1_max) r.t1_max = v;
      any_t1 = true;
    } else {
      if (!any_t2 || v > r.t2_max) r.t2_max = v;
      any_t2 = true;
    }
  });
  r.t1_in_range = any_t1 && r.t1_min >= Rational(2, 3) && r.t1_max <= Rational(4, 3);
  r.t2_below = !any_t2 || r.t2_max <= Rational(-2, 3);
  return r;
}

}  // namespace dualpoly
