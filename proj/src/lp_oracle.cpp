#include "dualpoly/lp_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace dualpoly {

namespace {

// Column entries in {-1, 0, 1} are common; keep a small-int shadow so the
// hot loops can add or subtract instead of multiplying.
constexpr signed char kGeneral = 2;

class Simplex {
 public:
  Simplex(const StandardFormLp& lp, const std::vector<int>* priority)
      : m_(lp.b.size()), n_(lp.c.size()), a_(lp.A), b_(lp.b), c_(lp.c) {
    if (a_.size() != m_) throw PreconditionError("A and b disagree on row count");
    for (const auto& row : a_)
      if (row.size() != n_) throw PreconditionError("A and c disagree on column count");
    for (std::size_t i = 0; i < m_; ++i)
      if (b_[i] < Rational(0)) {
        negated_.push_back(i);
        b_[i] = -b_[i];
        for (auto& v : a_[i]) v = -v;
      }
    small_.assign(m_, std::vector<signed char>(n_, kGeneral));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const Rational& v = a_[i][j];
        if (v.is_zero())
          small_[i][j] = 0;
        else if (v == Rational(1))
          small_[i][j] = 1;
        else if (v == Rational(-1))
          small_[i][j] = -1;
      }
    prio_.resize(n_ + m_);
    if (priority) {
      if (priority->size() != n_) throw PreconditionError("priority must cover every column");
      std::vector<char> seen(n_, 0);
      for (std::size_t j = 0; j < n_; ++j) {
        int p = (*priority)[j];
        if (p < 0 || static_cast<std::size_t>(p) >= n_ || seen[p]) throw PreconditionError("priority is not a permutation");
        seen[p] = 1;
        prio_[j] = p;
      }
    } else {
      std::iota(prio_.begin(), prio_.begin() + n_, 0);
    }
    for (std::size_t k = 0; k < m_; ++k) prio_[n_ + k] = static_cast<int>(n_ + k);
  }

  SimplexResult run() {
    SimplexResult res;
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, -1);
    binv_.assign(m_, std::vector<Rational>(m_, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = static_cast<int>(i);
      binv_[i][i] = 1;
    }
    xb_ = b_;

    // Phase 1: maximize -(sum of artificials).
    std::vector<Rational> cost1(n_ + m_, Rational(0));
    for (std::size_t k = 0; k < m_; ++k) cost1[n_ + k] = -1;
    if (!iterate(cost1, /*allow_artificial=*/false)) throw std::logic_error("phase 1 unbounded");
    Rational infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) infeas += xb_[i];
    if (!infeas.is_zero()) {
      res.status = SimplexResult::Status::Infeasible;
      res.iterations = iterations_;
      return res;
    }
    // Pivot zero-level artificials out where a structural column can replace them.
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j] >= 0) continue;
        auto u = column_in_basis(j);
        if (!u[r].is_zero()) {
          pivot(r, j, u);
          break;
        }
      }
    }

    std::vector<Rational> cost2(n_ + m_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost2[j] = c_[j];
    if (!iterate(cost2, false)) {
      res.status = SimplexResult::Status::Unbounded;
      res.iterations = iterations_;
      return res;
    }
    res.status = SimplexResult::Status::Optimal;
    res.z.assign(n_, Rational(0));
    res.objective = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) {
        res.z[basis_[i]] = xb_[i];
        res.objective += c_[basis_[i]] * xb_[i];
      }
    res.y = multipliers(cost2);
    for (auto i : negated_) res.y[i] = -res.y[i];
    res.iterations = iterations_;
    return res;
  }

 private:
  std::vector<Rational> multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t k = 0; k < m_; ++k)
        if (!binv_[i][k].is_zero()) y[k] += cb * binv_[i][k];
    }
    return y;
  }

  Rational dot_column(const std::vector<Rational>& y, std::size_t j) const {
    if (j >= n_) return y[j - n_];
    Rational s = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      switch (small_[i][j]) {
        case 0:
          break;
        case 1:
          s += y[i];
          break;
        case -1:
          s -= y[i];
          break;
        default:
          s += y[i] * a_[i][j];
      }
    }
    return s;
  }

  std::vector<Rational> column_in_basis(std::size_t j) const {
    std::vector<Rational> u(m_, Rational(0));
    if (j >= n_) {
      for (std::size_t i = 0; i < m_; ++i) u[i] = binv_[i][j - n_];
      return u;
    }
    for (std::size_t k = 0; k < m_; ++k) {
      signed char s = small_[k][j];
      if (s == 0) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& bik = binv_[i][k];
        if (bik.is_zero()) continue;
        if (s == 1)
          u[i] += bik;
        else if (s == -1)
          u[i] -= bik;
        else
          u[i] += bik * a_[k][j];
      }
    }
    return u;
  }

  void pivot(std::size_t r, std::size_t j, const std::vector<Rational>& u) {
    Rational inv = Rational(1) / u[r];
    for (auto& v : binv_[r]) v *= inv;
    xb_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i].is_zero()) continue;
      const Rational f = u[i];
      for (std::size_t k = 0; k < m_; ++k)
        if (!binv_[r][k].is_zero()) binv_[i][k] -= f * binv_[r][k];
      xb_[i] -= f * xb_[r];
    }
    in_basis_[basis_[r]] = -1;
    basis_[r] = j;
    in_basis_[j] = static_cast<int>(r);
    ++iterations_;
  }

  // Returns false on unboundedness.
  bool iterate(const std::vector<Rational>& cost, bool allow_artificial) {
    while (true) {
      auto y = multipliers(cost);
      std::size_t enter = SIZE_MAX;
      const std::size_t limit = allow_artificial ? n_ + m_ : n_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (in_basis_[j] >= 0) continue;
        if (enter != SIZE_MAX && prio_[j] > prio_[enter]) continue;
        if (cost[j] - dot_column(y, j) > Rational(0)) enter = j;
      }
      if (enter == SIZE_MAX) return true;
      auto u = column_in_basis(enter);
      std::size_t leave = SIZE_MAX;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= Rational(0)) continue;
        Rational ratio = xb_[i] / u[i];
        if (leave == SIZE_MAX || ratio < best ||
            (ratio == best && prio_[basis_[i]] < prio_[basis_[leave]])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) return false;
      pivot(leave, enter, u);
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::vector<signed char>> small_;
  std::vector<Rational> b_, c_;
  std::vector<int> prio_;
  std::vector<std::size_t> negated_;
  std::vector<std::size_t> basis_;
  std::vector<int> in_basis_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  int iterations_ = 0;
};

}  // namespace

SimplexResult solve_standard_form(const StandardFormLp& lp, const std::vector<int>* priority) {
  return Simplex(lp, priority).run();
}

LpInstance make_lp_instance(int n, std::vector<int> labels, int d, int cap) {
  if (n < 1 || n > cap) throw PreconditionError("LP instance has " + std::to_string(n) + " bits; cap is " + std::to_string(cap));
  if (labels.size() != (std::size_t{1} << n)) throw PreconditionError("label table must have 2^n entries");
  for (int v : labels)
    if (v != 1 && v != -1 && v != 0) throw PreconditionError("labels must be +1, -1 or 0");
  if (d < 0) throw PreconditionError("degree must be non-negative");
  LpInstance inst;
  inst.n = n;
  inst.labels = std::move(labels);
  inst.degree = std::min(d, n);
  return inst;
}

LpInstance make_lp_instance(TargetFunction f, const ProblemShape& shape, int d, int cap) {
  if (shape.n > cap) throw PreconditionError("LP instance has " + std::to_string(shape.n) + " bits; cap is " + std::to_string(cap));
  std::vector<int> labels(std::size_t{1} << shape.n);
  for_each_input(shape, labels.size(), [&](std::uint64_t idx, const std::vector<int>& v) {
    labels[idx] = static_cast<int>(class_label(classify_values(v, shape.R), f));
  });
  auto inst = make_lp_instance(shape.n, std::move(labels), d, cap);
  inst.shape = shape;
  return inst;
}

namespace {

StandardFormLp build_lp(const LpInstance& inst, const std::vector<std::uint64_t>& sets) {
  const std::size_t inputs = inst.labels.size();
  StandardFormLp lp;
  lp.A.assign(sets.size() + 1, std::vector<Rational>(2 * inputs, Rational(0)));
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t x = 0; x < inputs; ++x) {
      int chi = parity_of_index(x, sets[s]);
      lp.A[s][2 * x] = chi;
      lp.A[s][2 * x + 1] = -chi;
    }
  for (std::size_t j = 0; j < 2 * inputs; ++j) lp.A[sets.size()][j] = 1;
  lp.b.assign(sets.size() + 1, Rational(0));
  lp.b[sets.size()] = 1;
  lp.c.resize(2 * inputs);
  for (std::size_t x = 0; x < inputs; ++x) {
    int f = inst.labels[x];
    lp.c[2 * x] = f == 0 ? -1 : f;
    lp.c[2 * x + 1] = f == 0 ? -1 : -f;
  }
  return lp;
}

std::vector<Rational> evaluate(const std::map<std::uint64_t, Rational>& coeffs, std::size_t inputs) {
  std::vector<Rational> p(inputs, Rational(0));
  for (std::size_t x = 0; x < inputs; ++x)
    for (const auto& [mask, c] : coeffs) p[x] += parity_of_index(x, mask) == 1 ? c : -c;
  return p;
}

Rational point_error(const Rational& p, int label) {
  if (label == 0) return p.abs() - Rational(1);
  return (p - Rational(label)).abs();
}

}  // namespace

std::vector<Rational> primal_values(const LpSolution& sol, const LpInstance& inst) {
  return evaluate(sol.coefficients, inst.labels.size());
}

LpSolution solve_approx_degree_lp(const LpInstance& inst, const std::vector<int>* priority) {
  auto sets = low_degree_sets(inst.n, inst.degree);
  auto lp = build_lp(inst, sets);
  auto res = solve_standard_form(lp, priority);
  // Feasible (any split with sum 1 and phi+ = phi-) and bounded by 1.
  if (res.status != SimplexResult::Status::Optimal) throw std::logic_error("approximate-degree LP not optimal");

  LpSolution sol;
  sol.iterations = res.iterations;
  const std::size_t inputs = inst.labels.size();
  sol.epsilon_opt = res.y[sets.size()];
  for (std::size_t s = 0; s < sets.size(); ++s)
    if (!res.y[s].is_zero()) sol.coefficients[sets[s]] = res.y[s];
  sol.phi.resize(inputs);
  for (std::size_t x = 0; x < inputs; ++x) sol.phi[x] = res.z[2 * x] - res.z[2 * x + 1];

  // Dual side, recomputed from phi alone.
  Rational l1 = 0;
  sol.dual_objective = 0;
  for (std::size_t x = 0; x < inputs; ++x) {
    l1 += sol.phi[x].abs();
    int f = inst.labels[x];
    sol.dual_objective += f == 0 ? -sol.phi[x].abs() : sol.phi[x] * Rational(f);
  }
  bool parity_ok = true;
  for (auto mask : sets) {
    Rational s = 0;
    for (std::size_t x = 0; x < inputs; ++x)
      if (!sol.phi[x].is_zero()) s += parity_of_index(x, mask) == 1 ? sol.phi[x] : -sol.phi[x];
    if (!s.is_zero()) parity_ok = false;
  }
  sol.dual_feasible = parity_ok && l1 <= Rational(1);
  sol.strong_duality = sol.dual_objective == sol.epsilon_opt;

  auto p = evaluate(sol.coefficients, inputs);
  sol.primal_feasible = true;
  sol.complementary_slackness = true;
  for (std::size_t x = 0; x < inputs; ++x) {
    Rational err = point_error(p[x], inst.labels[x]);
    if (err > sol.epsilon_opt) sol.primal_feasible = false;
    bool tight = err == sol.epsilon_opt;
    if (tight) sol.max_error_points.push_back(x);
    if (!sol.phi[x].is_zero()) {
      // phi must also carry the sign of the error on the promise.
      int f = inst.labels[x];
      bool sign_ok = f == 0 ? (sol.phi[x] > Rational(0)) == (p[x] < Rational(0))
                            : p[x] == Rational(f) || (sol.phi[x] > Rational(0)) == (p[x] < Rational(f));
      if (!tight || !sign_ok) sol.complementary_slackness = false;
    }
  }
  return sol;
}

bool permuted_resolve_agrees(const LpInstance& inst, const LpSolution& sol, unsigned seed) {
  std::vector<int> order(2 * inst.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto other = solve_approx_degree_lp(inst, &order);
  return other.epsilon_opt == sol.epsilon_opt && other.strong_duality;
}

FoldedLpResult solve_folded_lp(TargetFunction f, const ProblemShape& shape, int d, std::uint64_t budget) {
  auto table = build_class_parity_table(shape, budget);
  const auto& classes = table.index.classes;
  auto sets = low_degree_sets(shape.n, std::min(d, shape.n));
  StandardFormLp lp;
  const std::size_t k = classes.size();
  lp.A.assign(sets.size() + 1, std::vector<Rational>(2 * k, Rational(0)));
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t c = 0; c < k; ++c) {
      Rational avg = table.average(classes[c], sets[s]);
      lp.A[s][2 * c] = avg;
      lp.A[s][2 * c + 1] = -avg;
    }
  for (std::size_t j = 0; j < 2 * k; ++j) lp.A[sets.size()][j] = 1;
  lp.b.assign(sets.size() + 1, Rational(0));
  lp.b[sets.size()] = 1;
  lp.c.resize(2 * k);
  for (std::size_t c = 0; c < k; ++c) {
    int lab = static_cast<int>(class_label(classes[c], f));
    lp.c[2 * c] = lab == 0 ? -1 : lab;
    lp.c[2 * c + 1] = lab == 0 ? -1 : -lab;
  }
  auto res = solve_standard_form(lp);
  if (res.status != SimplexResult::Status::Optimal) throw std::logic_error("folded LP not optimal");
  FoldedLpResult out;
  out.epsilon = res.objective;
  out.witness.shape = shape;
  for (std::size_t c = 0; c < k; ++c) {
    Rational m = res.z[2 * c] - res.z[2 * c + 1];
    if (!m.is_zero()) out.witness.add(classes[c], m);
  }
  out.witness.meta["construction"] = "folded-lp";
  out.witness.meta["degree"] = d;
  out.witness.meta["function"] = to_string(f);
  out.unfold_verified = l1_norm(out.witness) <= Rational(1) &&
                        correlation(out.witness, f) == out.epsilon &&
                        pure_high_degree_exact(out.witness, d, table.index).pass;
  return out;
}

MaxErrorReport max_error_report(const LpSolution& sol, const LpInstance& inst, const Rational& threshold) {
  MaxErrorReport rep;
  rep.epsilon_opt = sol.epsilon_opt;
  rep.degenerate = sol.epsilon_opt.is_zero();
  auto p = evaluate(sol.coefficients, inst.labels.size());
  std::vector<Rational> err(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    err[x] = point_error(p[x], inst.labels[x]);
    if (err[x] == sol.epsilon_opt) rep.max_error_points.push_back(x);
  }
  rep.support_within_max_error = true;
  Rational total = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    total += sol.phi[x].abs();
    if (!sol.phi[x].is_zero() && err[x] != sol.epsilon_opt) rep.support_within_max_error = false;
  }
  if (!inst.shape) return rep;

  const ProblemShape& shape = *inst.shape;
  std::map<OrbitClass, MaxErrorClassRow> rows;
  for_each_input(shape, p.size(), [&](std::uint64_t idx, const std::vector<int>& v) {
    OrbitClass c = classify_values(v, shape.R);
    auto& row = rows[c];
    row.cls = c;
    ++row.members;
    if (err[idx] == sol.epsilon_opt) ++row.max_error_members;
    if (err[idx] >= sol.epsilon_opt - threshold) ++row.near_max_members;
    row.dual_mass += sol.phi[idx].abs();
  });
  Rational near = 0;
  for (auto& [c, row] : rows) {
    if (row.near_max_members) near += row.dual_mass;
    rep.classes.push_back(row);
  }
  rep.near_max_dual_fraction = total.is_zero() ? Rational(0) : near / total;
  return rep;
}

}  // namespace dualpoly
