#pragma once

// Exact approximate-degree LP at tiny scale.
//
// The solver works on the dual side in standard form: variables phi+(x),
// phi-(x) >= 0 with sum (phi+ + phi-) = 1 and every parity sum of degree <= d
// equal to zero, maximizing the correlation. The simplex multipliers of that
// program are exactly the primal polynomial coefficients and epsilon.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualpoly/symmetrization.hpp"
#include "dualpoly/witness.hpp"

namespace dualpoly {

// ---------------------------------------------------------------------------
// Generic exact simplex

/// maximize c.z subject to A z = b, z >= 0.
struct StandardFormLp {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational objective;
  std::vector<Rational> z;  // primal point
  std::vector<Rational> y;  // multipliers: A^T y >= c, b.y = objective
  int iterations = 0;
};

/// Two-phase revised simplex with Bland's rule. `priority`, if given, is a
/// permutation of the columns; lower priority wins ties and entering choices,
/// which changes the pivot path but not the optimum.
SimplexResult solve_standard_form(const StandardFormLp& lp, const std::vector<int>* priority = nullptr);

// ---------------------------------------------------------------------------
// Approximate-degree instances

inline constexpr int kDefaultLpBitCap = 14;

struct LpInstance {
  int n = 0;
  std::vector<int> labels;  // per input index: +1, -1, or 0 outside the promise
  int degree = 0;
  std::optional<ProblemShape> shape;  // set for Collision/ED instances
};

LpInstance make_lp_instance(TargetFunction f, const ProblemShape& shape, int d, int cap = kDefaultLpBitCap);
/// `labels` has 2^n entries. Throws PreconditionError above the cap.
LpInstance make_lp_instance(int n, std::vector<int> labels, int d, int cap = kDefaultLpBitCap);

struct LpSolution {
  Rational epsilon_opt;                       // primal optimum
  Rational dual_objective;                    // recomputed from phi
  std::map<std::uint64_t, Rational> coefficients;  // c_S by mask, nonzero only
  std::vector<Rational> phi;                  // dual weight per input
  std::vector<std::uint64_t> max_error_points;
  int iterations = 0;

  bool strong_duality = false;          // epsilon_opt == dual_objective
  bool primal_feasible = false;         // |p - f| <= eps on D, |p| <= 1 + eps off D
  bool dual_feasible = false;           // sum |phi| <= 1, parity sums vanish
  bool complementary_slackness = false; // phi(x) != 0 => x is a max-error point
};

/// Exact optimum with mutually certifying primal and dual, all checks run.
LpSolution solve_approx_degree_lp(const LpInstance& inst, const std::vector<int>* priority = nullptr);

/// p(x) for the solution's coefficients, for every input.
std::vector<Rational> primal_values(const LpSolution& sol, const LpInstance& inst);

/// Re-solves with a seeded random column order; true iff the optimum agrees.
bool permuted_resolve_agrees(const LpInstance& inst, const LpSolution& sol, unsigned seed);

// ---------------------------------------------------------------------------
// Orbit-folded LP

struct FoldedLpResult {
  Rational epsilon;       // optimum over class-constant dual witnesses
  DualWitness witness;    // the optimal class-constant witness
  bool unfold_verified = false;  // witness passes exact phd-d enumeration, L1 <= 1
};

/// Restricts the dual to class-constant phi; its optimum is a lower bound on
/// the full optimum.
FoldedLpResult solve_folded_lp(TargetFunction f, const ProblemShape& shape, int d,
                               std::uint64_t budget = kDefaultEnumerationBudget);

// ---------------------------------------------------------------------------
// Maximum-error report

struct MaxErrorClassRow {
  OrbitClass cls;
  std::uint64_t members = 0;
  std::uint64_t max_error_members = 0;
  std::uint64_t near_max_members = 0;  // error >= max - threshold
  Rational dual_mass;                  // sum |phi| over the class
};

struct MaxErrorReport {
  Rational epsilon_opt;
  bool degenerate = false;  // epsilon_opt == 0: every point is trivially max-error
  std::vector<std::uint64_t> max_error_points;
  std::vector<MaxErrorClassRow> classes;   // only for Collision/ED instances
  Rational near_max_dual_fraction;         // share of sum |phi| on near-max classes
  bool support_within_max_error = false;   // complementary slackness, exactly
};

MaxErrorReport max_error_report(const LpSolution& sol, const LpInstance& inst,
                                const Rational& threshold = Rational(0));

}  // namespace dualpoly
