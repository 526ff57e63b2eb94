#include "dualpoly/symmetrization.hpp"

#include <map>
#include <thread>

namespace dualpoly {

std::vector<std::vector<int>> t_map(const FunctionInput& x) {
  std::vector<std::vector<int>> t(x.shape.N, std::vector<int>(static_cast<std::size_t>(x.shape.R), 0));
  for (int i = 0; i < x.shape.N; ++i) t[i][x.values[i] - 1] = 1;
  return t;
}

std::vector<Triple> valid_triples(int N) {
  std::vector<Triple> out;
  for (int m = 0; m <= N; ++m)
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b)
        if (is_valid_triple(m, a, b, N)) out.push_back({m, a, b});
  return out;
}

Rational ClassParityTable::average(const OrbitClass& c, std::uint64_t mask) const {
  int id = index.id(c);
  if (id < 0) throw PreconditionError("class " + c.str() + " not in table");
  if (mask >= transforms[id].size()) throw PreconditionError("parity set out of range");
  return Rational(static_cast<long>(transforms[id][mask]), static_cast<long>(index.counts[id]));
}

ClassParityTable build_class_parity_table(const ProblemShape& shape, std::uint64_t budget) {
  ClassParityTable t;
  t.index = build_class_index(shape, budget);
  t.transforms.assign(t.index.classes.size(), std::vector<std::int64_t>(t.index.class_of.size(), 0));
  for (std::size_t x = 0; x < t.index.class_of.size(); ++x) t.transforms[t.index.class_of[x]][x] = 1;
  for (auto& v : t.transforms) fwht(v);
  return t;
}

namespace {

OrbitClass class_for(const Triple& t, int N) {
  if (!is_valid_triple(t.m, t.a, t.b, N)) throw PreconditionError("invalid triple");
  return class_of_triple(t.m, t.a, t.b, N);
}

}  // namespace

Rational orbit_average_parity(std::uint64_t mask, const Triple& t, const ClassParityTable& table) {
  return table.average(class_for(t, table.index.shape.N), mask);
}

Rational orbit_average_parity(std::uint64_t mask, const Triple& t, const ProblemShape& shape,
                              std::uint64_t budget) {
  OrbitClass c = class_for(t, shape.N);
  if (!is_realizable(c, shape)) throw PreconditionError("class " + c.str() + " is not realizable");
  if (shape.n < 64 && mask >> shape.n) throw PreconditionError("parity set out of range");
  long total = 0, count = 0;
  for_each_input(shape, budget, [&](std::uint64_t idx, const std::vector<int>& v) {
    if (!(classify_values(v, shape.R) == c)) return;
    total += parity_of_index(idx, mask);
    ++count;
  });
  return Rational(total, count);
}

std::vector<Exponent3> trivariate_monomials(int d) {
  std::vector<Exponent3> out;
  for (int total = 0; total <= d; ++total)
    for (int i = total; i >= 0; --i)
      for (int j = total - i; j >= 0; --j) out.push_back({i, j, total - i - j});
  return out;
}

TrivariateFit fit_and_check_trivariate(std::uint64_t mask, int d, const ClassParityTable& table) {
  if (d < 0) throw PreconditionError("degree must be non-negative");
  const ProblemShape& shape = table.index.shape;
  TrivariateFit fit;
  fit.mask = mask;
  fit.degree = d;
  fit.polynomial = TrivariatePolynomial(d);
  auto monos = trivariate_monomials(d);
  auto triples = valid_triples(shape.N);
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& t : triples) {
    std::vector<Rational> row;
    for (const auto& e : monos)
      row.push_back(pow(Rational(t.m), e[0]) * pow(Rational(t.a), e[1]) * pow(Rational(t.b), e[2]));
    rows.push_back(std::move(row));
    rhs.push_back(orbit_average_parity(mask, t, table));
  }
  fit.constraints = static_cast<int>(rows.size());
  fit.unknowns = static_cast<int>(monos.size());
  auto sol = solve_linear_system(rows, rhs);
  if (!sol.consistent) return fit;
  for (std::size_t i = 0; i < monos.size(); ++i) fit.polynomial.add_term(monos[i], sol.solution[i]);

  // Residual recomputed from the polynomial rather than trusted from the solver.
  bool residual_zero = true;
  std::map<OrbitClass, Rational> by_class;
  bool aliases_agree = true;
  for (std::size_t r = 0; r < triples.size(); ++r) {
    const auto& t = triples[r];
    Rational v = poly_eval_trivariate(fit.polynomial, Rational(t.m), Rational(t.a), Rational(t.b));
    if (v != rhs[r]) residual_zero = false;
    auto [it, fresh] = by_class.emplace(class_of_triple(t.m, t.a, t.b, shape.N), v);
    if (!fresh && it->second != v) aliases_agree = false;
  }
  fit.consistent = residual_zero;
  fit.alias_consistent = aliases_agree;
  return fit;
}

TrivariateFit fit_and_check_trivariate(std::uint64_t mask, int d, const ProblemShape& shape,
                                       std::uint64_t budget) {
  return fit_and_check_trivariate(mask, d, build_class_parity_table(shape, budget));
}

std::vector<TrivariateFit> fit_all_sets(const ProblemShape& shape, int max_size, int jobs,
                                        std::uint64_t budget) {
  auto table = build_class_parity_table(shape, budget);
  auto sets = low_degree_sets(shape.n, max_size);
  std::vector<TrivariateFit> out(sets.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(sets.size())));
  auto work = [&](int worker) {
    for (std::size_t i = worker; i < sets.size(); i += jobs)
      out[i] = fit_and_check_trivariate(sets[i], __builtin_popcountll(sets[i]), table);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  return out;
}

RepresentationResult represent_via_t_map(const std::function<Rational(const FunctionInput&)>& p,
                                         const ProblemShape& shape, int d, std::uint64_t budget) {
  RepresentationResult res;
  const int vars = shape.N * static_cast<int>(shape.R);
  if (vars > 24) throw PreconditionError("T-map too large for a monomial solve");
  res.variables = vars;
  std::vector<std::uint32_t> monos;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << vars); ++s)
    if (__builtin_popcount(s) <= d) monos.push_back(s);
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for_each_input(shape, budget, [&](std::uint64_t, const std::vector<int>& v) {
    FunctionInput x{shape, v};
    auto t = t_map(x);
    std::uint32_t ones = 0;
    for (int i = 0; i < shape.N; ++i)
      for (long j = 0; j < shape.R; ++j)
        if (t[i][j]) ones |= std::uint32_t{1} << (i * shape.R + j);
    std::vector<Rational> row;
    row.reserve(monos.size());
    for (auto s : monos) row.push_back((s & ones) == s ? Rational(1) : Rational(0));
    rows.push_back(std::move(row));
    rhs.push_back(p(x));
  });
  auto sol = solve_linear_system(rows, rhs);
  res.consistent = sol.consistent;
  if (!sol.consistent) return res;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (sol.solution[i].is_zero()) continue;
    std::vector<int> mono;
    for (int b = 0; b < vars; ++b)
      if (monos[i] >> b & 1) mono.push_back(b);
    res.coefficients.emplace_back(std::move(mono), sol.solution[i]);
  }
  return res;
}

}  // namespace dualpoly
