#include "dualpoly/witness.hpp"

#include <algorithm>
#include <thread>

namespace dualpoly {

Rational DualWitness::mass(const OrbitClass& c) const {
  auto it = class_mass.find(c);
  return it == class_mass.end() ? Rational(0) : it->second;
}

Rational DualWitness::point_value(const OrbitClass& c) const {
  Rational m = mass(c);
  if (m.is_zero()) return m;
  return m / Rational(class_size(c, shape));
}

void DualWitness::add(const OrbitClass& c, const Rational& m) {
  if (m.is_zero()) return;
  if (!is_realizable(c, shape))
    throw PreconditionError("class " + c.str() + " is empty for N=" + std::to_string(shape.N) +
                            ", R=" + std::to_string(shape.R));
  auto& slot = class_mass[c];
  slot += m;
  if (slot.is_zero()) class_mass.erase(c);
}

Rational l1_norm(const DualWitness& w) {
  Rational s = 0;
  for (const auto& [c, m] : w.class_mass) s += m.abs();
  return s;
}

Rational correlation(const DualWitness& w, TargetFunction f) {
  Rational s = 0;
  for (const auto& [c, m] : w.class_mass) {
    switch (class_label(c, f)) {
      case Label::Plus: s += m; break;
      case Label::Minus: s -= m; break;
      case Label::Outside: s -= m.abs(); break;
    }
  }
  return s;
}

DualWitness witness_sum(const DualWitness& w1, const DualWitness& w2, const Rational& c1,
                        const Rational& c2) {
  if (!(w1.shape == w2.shape)) throw PreconditionError("witness shapes differ");
  DualWitness out;
  out.shape = w1.shape;
  for (const auto& [c, m] : w1.class_mass) out.add(c, c1 * m);
  for (const auto& [c, m] : w2.class_mass) out.add(c, c2 * m);
  return out;
}

DualWitness normalized(const DualWitness& w) {
  Rational z = l1_norm(w);
  if (z.is_zero()) throw PreconditionError("cannot normalize the zero witness");
  DualWitness out = w;
  for (auto& [c, m] : out.class_mass) m /= z;
  return out;
}

std::vector<std::uint64_t> low_degree_sets(int n, int d) {
  if (n > 63) throw PreconditionError("too many coordinates for subset masks");
  std::vector<std::uint64_t> out;
  d = std::min(d, n);
  for (int size = 0; size <= d; ++size) {
    if (size == 0) {
      out.push_back(0);
      continue;
    }
    // Gosper's hack walks masks of a fixed popcount in increasing order.
    std::uint64_t s = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (s < limit) {
      out.push_back(s);
      std::uint64_t c = s & (~s + 1);
      std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return out;
}

void fwht(std::vector<std::int64_t>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw PreconditionError("fwht length must be a power of two");
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        std::int64_t u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
}

std::vector<Rational> fourier_sums(const DualWitness& w, const std::vector<std::uint64_t>& sets,
                                   const ClassIndex& index, int jobs) {
  if (!(index.shape == w.shape)) throw PreconditionError("class index built for another shape");
  // Per-point values share one denominator D; accumulate integer numerators.
  struct Item {
    std::uint32_t id;
    BigInt weight;  // point value * D
  };
  BigInt D = 1;
  std::vector<std::pair<std::uint32_t, Rational>> points;
  for (const auto& [c, m] : w.class_mass) {
    int id = index.id(c);
    if (id < 0) throw PreconditionError("witness class " + c.str() + " missing from index");
    Rational p = w.point_value(c);
    points.emplace_back(static_cast<std::uint32_t>(id), p);
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), p.denominator().get_mpz_t());
  }
  std::vector<Item> items;
  for (auto& [id, p] : points) items.push_back({id, p.numerator() * (D / p.denominator())});

  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(items.size())));
  std::vector<std::vector<BigInt>> partial(jobs, std::vector<BigInt>(sets.size(), BigInt(0)));
  auto work = [&](int worker) {
    std::vector<std::int64_t> buf(index.class_of.size());
    auto& acc = partial[worker];
    for (std::size_t i = worker; i < items.size(); i += jobs) {
      const auto id = items[i].id;
      for (std::size_t x = 0; x < buf.size(); ++x) buf[x] = index.class_of[x] == id ? 1 : 0;
      fwht(buf);
      BigInt count;
      for (std::size_t s = 0; s < sets.size(); ++s) {
        std::int64_t v = buf[sets[s]];
        if (v == 0) continue;
        count = static_cast<long>(v);
        mpz_addmul(acc[s].get_mpz_t(), items[i].weight.get_mpz_t(), count.get_mpz_t());
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  std::vector<Rational> out(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    BigInt total = 0;
    for (const auto& p : partial) total += p[s];
    out[s] = Rational(total, D);
  }
  return out;
}

namespace {

PhdResult first_failure(const DualWitness& w, int d, const ClassIndex& index, int jobs) {
  PhdResult r;
  r.degree = d;
  if (d < 0) {
    r.pass = true;
    return r;
  }
  auto sets = low_degree_sets(w.shape.n, d);
  auto sums = fourier_sums(w, sets, index, jobs);
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!sums[i].is_zero()) {
      r.failing_set = sets[i];
      r.failing_value = sums[i];
      return r;
    }
  r.pass = true;
  return r;
}

}  // namespace

PhdResult pure_high_degree_exact(const DualWitness& w, int d, const ClassIndex& index, int jobs) {
  return first_failure(w, d, index, jobs);
}

PhdResult pure_high_degree_exact(const DualWitness& w, int d, const EnumerationOptions& opts) {
  auto index = build_class_index(w.shape, opts.budget);
  return first_failure(w, d, index, opts.jobs);
}

int measure_phd_exact(const DualWitness& w, int cap, const ClassIndex& index, int jobs) {
  auto r = first_failure(w, cap, index, jobs);
  if (r.pass) return std::min(cap, w.shape.n);
  return __builtin_popcountll(*r.failing_set) - 1;
}

int measure_phd_exact(const DualWitness& w, int cap, const EnumerationOptions& opts) {
  auto index = build_class_index(w.shape, opts.budget);
  return measure_phd_exact(w, cap, index, opts.jobs);
}

CertificateReport verify_certificate(const DualWitness& w, TargetFunction f, const Rational& epsilon,
                                     int d, const EnumerationOptions& opts) {
  CertificateReport r;
  r.function = to_string(f);
  r.l1 = l1_norm(w);
  r.correlation = correlation(w, f);
  r.epsilon_claim = epsilon;
  r.degree_claim = d;
  r.correlation_pass = r.l1.sign() > 0 && r.correlation > epsilon * r.l1;
  auto phd = pure_high_degree_exact(w, d, opts);
  r.phd_pass = phd.pass;
  r.phd_verified_to = phd.pass ? d : __builtin_popcountll(*phd.failing_set) - 1;
  r.failing_set = phd.failing_set;
  r.pass = r.correlation_pass && r.phd_pass;
  if (!r.correlation_pass)
    r.failing_constraint = r.l1.is_zero() ? "zero witness" : "correlation <= epsilon * l1";
  else if (!r.phd_pass)
    r.failing_constraint = "nonzero Fourier sum at |S| = " +
                           std::to_string(__builtin_popcountll(*phd.failing_set));
  return r;
}

}  // namespace dualpoly
