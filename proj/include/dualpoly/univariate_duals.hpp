#pragma once

// Univariate dual objects: the OR-style omega on {1..L} and the MAJ-style
// eta_k on {0..N}. Both are rational weight vectors with unit L1 mass that
// annihilate low-degree polynomials.

#include <map>
#include <set>
#include <string>

#include "dualpoly/numerics.hpp"

namespace dualpoly {

struct UnivariateDual {
  int domain_lo = 0;
  int domain_hi = 0;
  std::map<int, Rational> values;  // zero entries are not stored
  std::set<int> node_set;
  int achieved_phd = -1;           // -1: not even orthogonal to constants

  Rational at(int r) const;
  Rational l1() const;
  /// sum_r values(r) * r^j
  Rational moment(unsigned j) const;
};

/// Largest j <= cap such that all moments 0..j vanish; -1 if none do.
int measure_achieved_phd(const UnivariateDual& d, int cap);

/// Dual for OR on {1..L} with correlation constant delta.
UnivariateDual build_or_dual(int L, const Rational& delta);

/// Dual for MAJ-like symmetric functions on {0..N}, supported on multiples of
/// 2k and N/2.
UnivariateDual build_maj_dual(int N, int k, const Rational& delta);

/// Intermediate quantities of the eta_k construction, exposed for audits.
struct MajDualParams {
  BigInt c;
  int t = 0;
  int h = 0;
  bool degenerate = false;  // t == N/2
  std::set<long> nodes;     // may contain values outside [0, N]
};
MajDualParams maj_dual_params(int N, int k, const Rational& delta);

struct OrDualParams {
  BigInt c;
  int m = 0;
  std::set<long> nodes;  // in the shifted domain {0..L-1}
};
OrDualParams or_dual_params(int L, const Rational& delta);

/// Exact checks of the four defining parts. `failure` names the first failing
/// part, empty when all hold.
struct PartsReport {
  bool part1 = false, part2 = false, part3 = false, part4 = false;
  std::string failure;
  bool ok() const { return part1 && part2 && part3 && part4; }
};
/// omega(1) >= (1-delta)/2, -omega(2) >= (1-delta)/2, unit mass, moments
/// vanish up to |T|-2.
PartsReport check_or_dual_parts(const UnivariateDual& w, const Rational& delta);
/// Support inside {2k, 4k, ...} u {N/2}, eta(N/2) > (1-delta)/2, unit mass,
/// moments vanish up to |T|-2.
PartsReport check_maj_dual_parts(const UnivariateDual& e, int N, int k, const Rational& delta);

/// sum_{k=0}^{L} (-1)^k C(L,k) q(k)
Rational alternating_binomial_sum(int L, const UnivariatePolynomial& q);

}  // namespace dualpoly
