#include "dualpoly/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace dualpoly {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!is_integer_text(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::abs() const {
  Rational r;
  r.q_ = ::abs(q_);
  return r;
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial with negative n");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt ipow(long base, unsigned exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), BigInt(base).get_mpz_t(), exponent);
  return r;
}

Rational chebyshev_eval(unsigned d, const Rational& x) {
  if (d == 0) return 1;
  Rational prev = 1, cur = x;
  for (unsigned i = 1; i < d; ++i) {
    Rational next = Rational(2) * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

UnivariatePolynomial UnivariatePolynomial::monomial(unsigned power, Rational coefficient) {
  std::vector<Rational> c(power + 1);
  c[power] = std::move(coefficient);
  return UnivariatePolynomial(std::move(c));
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UnivariatePolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void TrivariatePolynomial::add_term(Exponent3 e, const Rational& c) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw std::invalid_argument("negative exponent");
  if (e[0] + e[1] + e[2] > bound_) throw std::invalid_argument("monomial exceeds degree bound");
  auto& slot = terms_[e];
  slot += c;
  if (slot.is_zero()) terms_.erase(e);
}

Rational poly_eval_trivariate(const TrivariatePolynomial& p, const Rational& m, const Rational& a,
                              const Rational& b) {
  Rational total = 0;
  for (const auto& [e, c] : p.terms())
    total += c * pow(m, static_cast<unsigned>(e[0])) * pow(a, static_cast<unsigned>(e[1])) *
             pow(b, static_cast<unsigned>(e[2]));
  return total;
}

std::pair<Rational, Rational> exp_neg_bounds(const Rational& z, int terms) {
  if (z.sign() < 0) throw std::invalid_argument("exp_neg_bounds needs z >= 0");
  if (terms < 1) throw std::invalid_argument("exp_neg_bounds needs at least one term");
  // exp(z) >= S_n = sum_{i<n} z^i/i!, and the tail is at most
  // z^n/n! * 1/(1 - z/(n+1)) once n+1 > z. Invert to enclose exp(-z).
  // For large z, halve first and square at the end.
  unsigned squarings = 0;
  Rational w = z;
  while (w > Rational(1)) {
    w /= 2;
    ++squarings;
  }
  Rational partial = 0, term = 1;
  for (int i = 0; i < terms; ++i) {
    partial += term;
    term = term * w / Rational(i + 1);
  }
  Rational tail = term / (Rational(1) - w / Rational(terms + 1));
  Rational lo_exp = partial, hi_exp = partial + tail;
  Rational lo = Rational(1) / hi_exp, hi = Rational(1) / lo_exp;
  for (unsigned i = 0; i < squarings; ++i) {
    lo *= lo;
    hi *= hi;
  }
  return {lo, hi};
}

BigInt ceil_div_sqrt(const Rational& numerator, const Rational& value) {
  if (value.sign() <= 0) throw std::invalid_argument("ceil_div_sqrt needs a positive value");
  if (numerator.sign() <= 0) return 1;
  // Want the least c with c^2 * value >= numerator^2.
  Rational target = numerator * numerator / value;
  BigInt t = target.ceil();
  BigInt c;
  mpz_sqrt(c.get_mpz_t(), t.get_mpz_t());
  while (Rational(c * c) < target) ++c;
  while (c > 1 && Rational((c - 1) * (c - 1)) >= target) --c;
  return c < 1 ? BigInt(1) : c;
}

namespace {

// Reduces `m` (rows x cols, last `extra` columns are right-hand sides) to
// reduced row echelon form in place. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = Rational(1) / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

LinearSolution solve_linear_system(const std::vector<std::vector<Rational>>& a,
                                   const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch");
  std::size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<std::vector<Rational>> m(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != cols) throw std::invalid_argument("ragged matrix");
    m[r] = a[r];
    m[r].push_back(b[r]);
  }
  auto pivots = rref(m, cols);
  LinearSolution out;
  out.rank = static_cast<int>(pivots.size());
  out.consistent = true;
  for (std::size_t r = pivots.size(); r < m.size(); ++r)
    if (!m[r][cols].is_zero()) out.consistent = false;
  out.solution.assign(cols, Rational(0));
  if (out.consistent)
    for (std::size_t i = 0; i < pivots.size(); ++i) out.solution[pivots[i]] = m[i][cols];
  return out;
}

std::vector<std::vector<Rational>> null_space(const std::vector<std::vector<Rational>>& a,
                                              std::size_t columns) {
  auto m = a;
  for (auto& row : m)
    if (row.size() != columns) throw std::invalid_argument("ragged matrix");
  auto pivots = rref(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dualpoly
