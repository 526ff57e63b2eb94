#pragma once

// Exact arithmetic used by every verification path: big integers, rationals,
// binomials, Chebyshev polynomials and small polynomial value types.
//
// Nothing in here rounds. Floating point only appears in `to_double`, which
// exists for human-readable report summaries.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualpoly {

using BigInt = mpz_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed text.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;

  /// Canonical "p/q"; zero is "0/1".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  /// Largest integer <= value.
  BigInt floor() const;
  /// Smallest integer >= value.
  BigInt ceil() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned exponent);
Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

// ---------------------------------------------------------------------------
// Combinatorics

/// C(n, k); zero outside 0 <= k <= n. Requires n >= 0.
BigInt binomial(long n, long k);
BigInt factorial(long n);
BigInt ipow(long base, unsigned exponent);

// ---------------------------------------------------------------------------
// Polynomials

/// T_d(x) by the three-term recurrence.
Rational chebyshev_eval(unsigned d, const Rational& x);

/// Dense univariate polynomial, coefficient index = power.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coefficients);

  static UnivariatePolynomial monomial(unsigned power, Rational coefficient = 1);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational operator()(const Rational& x) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

using Exponent3 = std::array<int, 3>;

/// Sparse polynomial in (m, a, b).
class TrivariatePolynomial {
 public:
  explicit TrivariatePolynomial(int total_degree_bound) : bound_(total_degree_bound) {}

  int total_degree_bound() const { return bound_; }
  const std::map<Exponent3, Rational>& terms() const { return terms_; }

  /// Adds `c` to the coefficient of m^i a^j b^k. Throws std::invalid_argument
  /// if i+j+k exceeds the bound or any exponent is negative.
  void add_term(Exponent3 exponents, const Rational& c);

 private:
  int bound_;
  std::map<Exponent3, Rational> terms_;
};

/// Evaluates P(m, a, b) by summing monomials.
Rational poly_eval_trivariate(const TrivariatePolynomial& p, const Rational& m,
                              const Rational& a, const Rational& b);

// ---------------------------------------------------------------------------
// Misc exact helpers

/// Rigorous rational enclosure [lo, hi] of exp(-z) for z >= 0.
std::pair<Rational, Rational> exp_neg_bounds(const Rational& z, int terms = 40);

/// Smallest integer c >= 1 with c * sqrt(value) >= numerator, i.e.
/// ceil(numerator / sqrt(value)), computed without square roots.
BigInt ceil_div_sqrt(const Rational& numerator, const Rational& value);

/// Outcome of an exact linear solve.
struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  std::vector<Rational> solution;  // free variables set to zero
};

/// Solves A x = b exactly by Gauss-Jordan elimination over the rationals.
LinearSolution solve_linear_system(const std::vector<std::vector<Rational>>& a,
                                   const std::vector<Rational>& b);

/// Basis of the right null space of A (each vector has length = columns).
std::vector<std::vector<Rational>> null_space(const std::vector<std::vector<Rational>>& a,
                                              std::size_t columns);

}  // namespace dualpoly
