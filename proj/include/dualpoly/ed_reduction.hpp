#pragma once

// Collision -> ED dual reduction by restriction to M-subsets of the domain.
//
// For y over [N] and an M-subset S, y|_S keeps the blocks in S in index
// order. phi(x) averages psi over the multiset of extensions of x, which by
// double counting equals averaging psi(y) [y|_S = x] over y and S.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dualpoly/witness.hpp"

namespace dualpoly {

/// Sorted, strictly increasing M-subset of [0, N).
using RestrictionIndex = std::vector<int>;

/// All M-subsets of [0, N) in lexicographic order.
std::vector<RestrictionIndex> m_subsets(int N, int M);

FunctionInput restrict_input(const FunctionInput& y, const RestrictionIndex& S);

/// Calls fn(S, y) for every (S, filling) pair, i.e. the C(N,M) R^(N-M)
/// elements of ext(x), with y|_S = x.
void for_each_extension(const FunctionInput& x, int N,
                        const std::function<void(const RestrictionIndex&, const FunctionInput&)>& fn);

/// C(N, M) * R^(N - M).
BigInt extension_count(int N, int M, long R);

/// A(y): average of ED(y|_S) over all M-subsets S (ED is +1 on distinct).
Rational birthday_statistic(const FunctionInput& y, int M);
/// Pr over M-subsets that y|_S has no repeated value.
Rational collision_free_probability(const FunctionInput& y, int M);

struct BirthdayCheck {
  Rational probability;        // exact
  Rational bound_lo, bound_hi; // enclosure of exp(-M^2/4N)
  /// true when probability <= bound_lo, false when > bound_hi; the rare
  /// in-between case is reported as not holding.
  bool holds = false;
  bool decided = false;
};
BirthdayCheck check_birthday_bound(const FunctionInput& y, int M);

/// One input of the class: fibers get values 1, 2, ... in profile order.
FunctionInput class_representative(const OrbitClass& c, const ProblemShape& shape);

struct EdReduction {
  DualWitness phi;
  /// max over T_2 of (1 + A(y)) / 2; 0 when T_2 is empty.
  Rational delta_eff;
  std::map<OrbitClass, Rational> a_by_class;  // A on every class in psi's support
  bool constancy_verified = false;
};

/// Exact phi over (M, R). Throws BudgetExceeded when R^N * C(N, M) exceeds
/// the budget and DegenerateConstruction if phi is not class-constant.
EdReduction ed_dual_from_collision(const DualWitness& psi, int M, const EnumerationOptions& opts = {});

using Evaluator = std::function<Rational(const FunctionInput&)>;

/// q(y) = average of p(y|_S) over M-subsets S, for inputs y over N blocks.
Evaluator primal_reduction(Evaluator p, int M);

struct PrimalReductionReport {
  Rational t1_min, t1_max;  // q over T_1
  Rational t2_max;          // q over T_2
  bool t1_in_range = false; // q in [2/3, 4/3] on T_1
  bool t2_below = false;    // q <= -2/3 on T_2
  std::map<OrbitClass, Rational> max_error_by_class;  // |q - Collision| on T_1, T_2
};

/// Evaluates q = primal_reduction(p, M) on every input over `shape` and
/// checks the two promise-side cases.
PrimalReductionReport primal_reduction_check(const Evaluator& p, int M, const ProblemShape& shape,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace dualpoly
