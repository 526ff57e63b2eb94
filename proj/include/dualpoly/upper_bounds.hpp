#pragma once

// Explicit approximating polynomials for Collision and ED, evaluated exactly
// input by input, with per-class error measurement.
//
// The Collision approximant averages, over r-subsets S of the domain,
//   p_S(x) = I_S(x) * A_d(cross_S(x) / r)
// where I_S says x is injective on S, cross_S counts pairs (i in S, j not in S)
// with equal values, and A_d is an affinely shifted Chebyshev polynomial.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dualpoly/witness.hpp"

namespace dualpoly {

/// |{(i, j) : i in S, j not in S, x_i = x_j}|. S holds block indices in [0, N).
int cross_collisions(const FunctionInput& x, const std::vector<int>& S);
/// 1 iff x takes distinct values on S.
int ed_indicator(const FunctionInput& x, const std::vector<int>& S);

/// A(i) = -1 + alpha (T_d(s(i)) + 1) with s affine, s(1) = 1, s(horizon) = -1,
/// and alpha = 2 / (T_d(s(0)) + 1) so that A(0) = 1.
struct AffineChebyshev {
  unsigned d = 1;
  Rational horizon;
  Rational alpha;

  Rational operator()(const Rational& i) const;

  // Measured on the grid {0, 1/8, 2/8, ...} up to the horizon.
  bool value_at_zero_is_one = false;
  bool bounded_on_interval = false;  // |A| <= 1 on [0, horizon]
  bool low_on_tail = false;          // A <= -3/4 on [1, horizon]
};

/// Requires d >= 1 and horizon > 1.
AffineChebyshev affine_chebyshev(unsigned d, const Rational& horizon);

using Evaluator = std::function<Rational(const FunctionInput&)>;

struct EvaluableApproximant {
  TargetFunction target = TargetFunction::Collision;
  Evaluator evaluator;
  int claimed_degree = 0;
  nlohmann::json description = nlohmann::json::object();
};

/// T_d(1 + growth_constant / d^2) >= 10, exactly.
bool chebyshev_growth_holds(unsigned d, const Rational& growth_constant);

/// The r-subset average with A_d over the horizon max((N - r) / r, 2). The
/// global sign is chosen by measured error over the promise; `budget` bounds
/// that measurement.
EvaluableApproximant brassard_collision_approximant(const ProblemShape& shape, int r, unsigned d,
                                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Same construction with r = max(1, round((delta N)^(1/3))) and
/// d = 100 * growth_constant * r. Requires 0 < delta <= 1/N.
EvaluableApproximant appendix_collision_approximant(const ProblemShape& shape, const Rational& delta,
                                                    const Rational& growth_constant = 2,
                                                    std::uint64_t budget = kDefaultEnumerationBudget);

enum class PairCount { NotEqual, Equal };

/// (1 / C(M,2)) (1/2 - sum_{i<j} NEQ(x_i, x_j)) times `sign`. PairCount::Equal
/// swaps NEQ for its complement.
EvaluableApproximant appendix_ed_approximant(int M, long R, int sign = 1,
                                             PairCount pairs = PairCount::NotEqual);

struct ClassError {
  OrbitClass cls;
  Label label = Label::Outside;
  std::uint64_t count = 0;
  Rational max_error;  // |p - f| on the promise, max(0, |p| - 1) outside
  Rational min_value, max_value;
};

struct ErrorReport {
  std::vector<ClassError> classes;
  Rational promise_max_error;
  Rational outside_max_excess;
  bool bounded = false;  // |p| <= 1 everywhere
};

/// Evaluates the approximant on every input of the shape.
ErrorReport measure_errors(const EvaluableApproximant& p, const ProblemShape& shape,
                           std::uint64_t budget = kDefaultEnumerationBudget);

/// "class,count,max_error" rows, header first.
std::string error_report_csv(const ErrorReport& r);

/// Largest |S| with a nonzero Fourier coefficient; -1 for the zero function.
int exact_walsh_degree(const Evaluator& p, const ProblemShape& shape,
                       std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace dualpoly
