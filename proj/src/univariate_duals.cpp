#include "dualpoly/univariate_duals.hpp"

#include "dualpoly/errors.hpp"

namespace dualpoly {

Rational UnivariateDual::at(int r) const {
  auto it = values.find(r);
  return it == values.end() ? Rational(0) : it->second;
}

Rational UnivariateDual::l1() const {
  Rational s = 0;
  for (const auto& [r, v] : values) s += v.abs();
  return s;
}

Rational UnivariateDual::moment(unsigned j) const {
  Rational s = 0;
  for (const auto& [r, v] : values) s += v * pow(Rational(r), j);
  return s;
}

int measure_achieved_phd(const UnivariateDual& d, int cap) {
  if (cap < 0) throw PreconditionError("cap must be non-negative");
  for (int j = 0; j <= cap; ++j)
    if (!d.moment(static_cast<unsigned>(j)).is_zero()) return j - 1;
  return cap;
}

namespace {

void check_delta(const Rational& delta) {
  if (delta.sign() <= 0 || delta >= Rational(1)) throw PreconditionError("delta must lie in (0, 1)");
}

// Weights proportional to 1 / prod_{j in T, j != r} (r - j) at each node r,
// scaled to unit L1 mass.
std::map<long, Rational> divided_difference_weights(const std::set<long>& nodes,
                                                    const Rational& numerator) {
  std::map<long, Rational> w;
  Rational mass = 0;
  for (long r : nodes) {
    Rational denom = 1;
    for (long j : nodes)
      if (j != r) denom *= Rational(r - j);
    w[r] = numerator / denom;
    mass += w[r].abs();
  }
  for (auto& [r, v] : w) v /= mass;
  return w;
}

}  // namespace

OrDualParams or_dual_params(int L, const Rational& delta) {
  if (L < 2) throw PreconditionError("omega needs L >= 2");
  check_delta(delta);
  OrDualParams p;
  p.c = (Rational(16) / delta).ceil();
  // m = floor(sqrt((L-1)/c)): the largest m with c*m^2 <= L-1.
  long c = p.c.get_si();
  while (BigInt(c) * (p.m + 1) * (p.m + 1) <= L - 1) ++p.m;
  p.nodes = {0, 1};
  for (long i = 1; i <= p.m; ++i) p.nodes.insert(c * i * i);
  return p;
}

UnivariateDual build_or_dual(int L, const Rational& delta) {
  auto p = or_dual_params(L, delta);
  // c^m (m!)^2 keeps |omega_hat(0)| = 1 before normalization.
  Rational numerator = Rational(pow(Rational(p.c), static_cast<unsigned>(p.m))) *
                       Rational(factorial(p.m) * factorial(p.m));
  auto w = divided_difference_weights(p.nodes, numerator);
  UnivariateDual out;
  out.domain_lo = 1;
  out.domain_hi = L;
  // Shift k -> k+1; pick the global sign that makes omega(1) positive.
  int sign = w.at(0).sign();
  for (const auto& [k, v] : w) {
    out.values[static_cast<int>(k + 1)] = sign > 0 ? v : -v;
    out.node_set.insert(static_cast<int>(k + 1));
  }
  out.achieved_phd = measure_achieved_phd(out, static_cast<int>(out.node_set.size()));
  auto parts = check_or_dual_parts(out, delta);
  if (!parts.ok()) throw DegenerateConstruction("omega failed its exact check: " + parts.failure);
  return out;
}

MajDualParams maj_dual_params(int N, int k, const Rational& delta) {
  if (N < 2 || N % 2 != 0) throw PreconditionError("eta_k needs an even N >= 2");
  if (k < 1 || k > N) throw PreconditionError("eta_k needs 1 <= k <= N");
  check_delta(delta);
  MajDualParams p;
  p.c = ceil_div_sqrt(10, delta);
  long c = p.c.get_si();
  p.t = 2 * (N / (4 * k)) * k;
  p.h = static_cast<int>(p.t / (2 * c * k));
  p.degenerate = (p.t == N / 2);
  for (long l = 0; l <= p.h; ++l) {
    p.nodes.insert(p.t + 2 * c * l * k);
    p.nodes.insert(p.t - 2 * c * l * k);
  }
  p.nodes.insert(p.t - 2L * k);
  p.nodes.insert(N / 2);
  return p;
}

UnivariateDual build_maj_dual(int N, int k, const Rational& delta) {
  auto p = maj_dual_params(N, k, delta);
  for (long r : p.nodes)
    if (r < 0 || r > N)
      throw DegenerateConstruction("eta_k node " + std::to_string(r) + " lies outside [0, N] for N=" +
                                   std::to_string(N) + ", k=" + std::to_string(k));
  long c = p.c.get_si();
  Rational numerator = pow(Rational(2 * c * k), static_cast<unsigned>(2 * p.h)) *
                       Rational(factorial(p.h) * factorial(p.h)) * Rational(2L * k);
  if (!p.degenerate) numerator *= Rational(N / 2 - p.t);
  auto w = divided_difference_weights(p.nodes, numerator);
  UnivariateDual out;
  out.domain_lo = 0;
  out.domain_hi = N;
  int sign = w.at(N / 2).sign();
  for (const auto& [r, v] : w) {
    out.values[static_cast<int>(r)] = sign > 0 ? v : -v;
    out.node_set.insert(static_cast<int>(r));
  }
  out.achieved_phd = measure_achieved_phd(out, static_cast<int>(out.node_set.size()));
  auto parts = check_maj_dual_parts(out, N, k, delta);
  if (!parts.ok())
    throw DegenerateConstruction("eta_k failed its exact check (N=" + std::to_string(N) +
                                 ", k=" + std::to_string(k) + "): " + parts.failure);
  return out;
}

namespace {

bool moments_vanish(const UnivariateDual& d, int upto) {
  for (int j = 0; j <= upto; ++j)
    if (!d.moment(static_cast<unsigned>(j)).is_zero()) return false;
  return true;
}

}  // namespace

PartsReport check_or_dual_parts(const UnivariateDual& w, const Rational& delta) {
  PartsReport r;
  Rational half_gap = (Rational(1) - delta) / Rational(2);
  r.part1 = w.at(1) >= half_gap;
  r.part2 = -w.at(2) >= half_gap;
  r.part3 = w.l1() == Rational(1);
  bool in_domain = true;
  for (const auto& [k, v] : w.values) in_domain = in_domain && k >= 1 && k <= w.domain_hi;
  r.part3 = r.part3 && in_domain;
  r.part4 = moments_vanish(w, static_cast<int>(w.node_set.size()) - 2);
  if (!r.part1) r.failure = "part 1: omega(1) < (1-delta)/2";
  else if (!r.part2) r.failure = "part 2: -omega(2) < (1-delta)/2";
  else if (!r.part3) r.failure = "part 3: L1 mass is not 1";
  else if (!r.part4) r.failure = "part 4: a moment below |T|-1 is nonzero";
  return r;
}

PartsReport check_maj_dual_parts(const UnivariateDual& e, int N, int k, const Rational& delta) {
  PartsReport r;
  r.part1 = true;
  for (const auto& [x, v] : e.values) {
    bool on_grid = x >= 2 * k && x <= 2 * (N / (2 * k)) * k && x % (2 * k) == 0;
    if (!(on_grid || x == N / 2)) r.part1 = false;
  }
  r.part2 = e.at(N / 2) > (Rational(1) - delta) / Rational(2);
  r.part3 = e.l1() == Rational(1);
  r.part4 = moments_vanish(e, static_cast<int>(e.node_set.size()) - 2);
  if (!r.part1) r.failure = "part 1: support leaves {2k, 4k, ...} u {N/2}";
  else if (!r.part2) r.failure = "part 2: eta(N/2) <= (1-delta)/2";
  else if (!r.part3) r.failure = "part 3: L1 mass is not 1";
  else if (!r.part4) r.failure = "part 4: a moment below |T|-1 is nonzero";
  return r;
}

Rational alternating_binomial_sum(int L, const UnivariatePolynomial& q) {
  if (L < 0) throw PreconditionError("L must be non-negative");
  Rational s = 0;
  for (int k = 0; k <= L; ++k) {
    Rational term = Rational(binomial(L, k)) * q(Rational(k));
    if (k % 2) s -= term;
    else s += term;
  }
  return s;
}

}  // namespace dualpoly
