#pragma once

// Constructive check of the symmetrization lemma at small shapes: the average
// of a degree-d polynomial over the class R_{m,a,b} is a polynomial of total
// degree at most d in (m, a, b).

#include <cstdint>
#include <functional>
#include <vector>

#include "dualpoly/witness.hpp"

namespace dualpoly {

/// T[i][j] = 1 iff block i holds value j + 1.
std::vector<std::vector<int>> t_map(const FunctionInput& x);

struct Triple {
  int m = 0, a = 1, b = 1;
};

/// All (m, a, b) with 0 <= m <= N, 1 <= a, b <= N, a | m, b | (N - m).
std::vector<Triple> valid_triples(int N);

/// Per-class Walsh-Hadamard transforms of the class indicators; entry
/// [class][mask] is sum_{x in class} chi_mask(x).
struct ClassParityTable {
  ClassIndex index;
  std::vector<std::vector<std::int64_t>> transforms;

  Rational average(const OrbitClass& c, std::uint64_t mask) const;
};

ClassParityTable build_class_parity_table(const ProblemShape& shape,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

/// E_{x in R_{m,a,b}}[chi_S(x)], by enumeration. Throws PreconditionError for
/// an invalid triple and BudgetExceeded for large shapes.
Rational orbit_average_parity(std::uint64_t mask, const Triple& t, const ProblemShape& shape,
                              std::uint64_t budget = kDefaultEnumerationBudget);
Rational orbit_average_parity(std::uint64_t mask, const Triple& t, const ClassParityTable& table);

struct TrivariateFit {
  std::uint64_t mask = 0;
  int degree = 0;
  bool consistent = false;       // exact solution exists, residual zero
  bool alias_consistent = false; // P agrees across triples naming one class
  int constraints = 0;
  int unknowns = 0;
  TrivariatePolynomial polynomial{0};
};

/// Monomials m^i a^j b^k with i + j + k <= d, by degree then exponent.
std::vector<Exponent3> trivariate_monomials(int d);

TrivariateFit fit_and_check_trivariate(std::uint64_t mask, int d, const ClassParityTable& table);
TrivariateFit fit_and_check_trivariate(std::uint64_t mask, int d, const ProblemShape& shape,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

/// Fits every S with |S| <= max_size at degree |S|, spread across `jobs`
/// threads. Results follow low_degree_sets order.
std::vector<TrivariateFit> fit_all_sets(const ProblemShape& shape, int max_size, int jobs = 1,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

struct RepresentationResult {
  bool consistent = false;
  int variables = 0;  // N * R entries of the T-map
  std::vector<std::pair<std::vector<int>, Rational>> coefficients;  // monomial -> coefficient
};

/// Looks for q of degree <= d in the T-map entries with q(T(x)) = p(x) for
/// every input x, by an exact solve over multilinear monomials.
RepresentationResult represent_via_t_map(const std::function<Rational(const FunctionInput&)>& p,
                                         const ProblemShape& shape, int d,
                                         std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace dualpoly
