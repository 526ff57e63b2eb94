#include "dualpoly/domain.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace dualpoly {

ProblemShape ProblemShape::make(int N, long R) {
  if (N < 1) throw PreconditionError("N must be positive");
  if (R < 2 || (R & (R - 1)) != 0) throw PreconditionError("R must be a power of two >= 2");
  if (R < N) throw PreconditionError("R must be at least N");
  ProblemShape s;
  s.N = N;
  s.R = R;
  s.bits_per_block = __builtin_ctzl(static_cast<unsigned long>(R));
  s.n = N * s.bits_per_block;
  return s;
}

FunctionInput FunctionInput::make(const ProblemShape& shape, std::vector<int> values) {
  if (static_cast<int>(values.size()) != shape.N)
    throw PreconditionError("input table must have N entries");
  for (int v : values)
    if (v < 1 || v > shape.R) throw PreconditionError("input value out of range [1, R]");
  return FunctionInput{shape, std::move(values)};
}

OrbitClass OrbitClass::k_to_one(int k) {
  if (k < 1) throw PreconditionError("k must be positive");
  OrbitClass c;
  c.kind = Kind::KtoOne;
  c.k = k;
  return c;
}

OrbitClass OrbitClass::regular(int m, int a, int b) {
  if (a < 1 || a >= b) throw PreconditionError("regular class needs 1 <= a < b");
  if (m <= 0 || m % a != 0) throw PreconditionError("regular class needs a | m, m > 0");
  OrbitClass c;
  c.kind = Kind::Regular;
  c.m = m;
  c.a = a;
  c.b = b;
  return c;
}

OrbitClass OrbitClass::irregular(std::vector<int> profile) {
  std::sort(profile.begin(), profile.end());
  OrbitClass c;
  c.kind = Kind::Irregular;
  c.profile = std::move(profile);
  return c;
}

std::vector<int> OrbitClass::fiber_profile(int N) const {
  switch (kind) {
    case Kind::KtoOne:
      if (N % k != 0) throw PreconditionError("k does not divide N");
      return std::vector<int>(N / k, k);
    case Kind::Regular: {
      if ((N - m) <= 0 || (N - m) % b != 0) throw PreconditionError("b does not divide N - m");
      std::vector<int> p(m / a, a);
      p.insert(p.end(), (N - m) / b, b);
      return p;
    }
    case Kind::Irregular:
      return profile;
  }
  return {};
}

std::string OrbitClass::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::KtoOne:
      os << "T" << k;
      break;
    case Kind::Regular:
      os << "R(" << m << "," << a << "," << b << ")";
      break;
    case Kind::Irregular:
      os << "B[";
      for (std::size_t i = 0; i < profile.size(); ++i) os << (i ? "," : "") << profile[i];
      os << "]";
      break;
  }
  return os.str();
}

bool operator<(const OrbitClass& x, const OrbitClass& y) {
  return std::tie(x.kind, x.k, x.m, x.a, x.b, x.profile) <
         std::tie(y.kind, y.k, y.m, y.a, y.b, y.profile);
}

OrbitClass class_from_profile(std::vector<int> sizes) {
  if (sizes.empty()) throw PreconditionError("empty fiber profile");
  std::sort(sizes.begin(), sizes.end());
  if (sizes.front() < 1) throw PreconditionError("fiber sizes must be positive");
  std::vector<int> distinct = sizes;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() == 1) return OrbitClass::k_to_one(distinct[0]);
  if (distinct.size() == 2) {
    int a = distinct[0];
    int m = a * static_cast<int>(std::count(sizes.begin(), sizes.end(), a));
    return OrbitClass::regular(m, a, distinct[1]);
  }
  return OrbitClass::irregular(std::move(sizes));
}

bool is_valid_triple(int m, int a, int b, int N) {
  return m >= 0 && m <= N && a >= 1 && b >= 1 && a <= N && b <= N && m % a == 0 &&
         (N - m) % b == 0;
}

OrbitClass class_of_triple(int m, int a, int b, int N) {
  if (!is_valid_triple(m, a, b, N)) throw PreconditionError("invalid triple");
  if (m == 0) return OrbitClass::k_to_one(b);
  if (m == N || a == b) return OrbitClass::k_to_one(a);
  if (a > b) return OrbitClass::regular(N - m, b, a);
  return OrbitClass::regular(m, a, b);
}

OrbitClass classify_values(const std::vector<int>& values, long R) {
  std::vector<int> counts(static_cast<std::size_t>(R) + 1, 0);
  for (int v : values) ++counts[v];
  std::vector<int> sizes;
  for (int c : counts)
    if (c) sizes.push_back(c);
  return class_from_profile(std::move(sizes));
}

OrbitClass classify(const FunctionInput& x) { return classify_values(x.values, x.shape.R); }

bool is_realizable(const OrbitClass& c, const ProblemShape& shape) {
  std::vector<int> p;
  try {
    p = c.fiber_profile(shape.N);
  } catch (const PreconditionError&) {
    return false;
  }
  if (p.empty() || static_cast<long>(p.size()) > shape.R) return false;
  long total = 0;
  for (int s : p) {
    if (s < 1) return false;
    total += s;
  }
  if (total != shape.N) return false;
  return class_from_profile(p) == c;
}

BigInt class_size(const OrbitClass& c, const ProblemShape& shape) {
  if (!is_realizable(c, shape)) throw PreconditionError("class " + c.str() + " is not realizable");
  auto p = c.fiber_profile(shape.N);
  // Ordered partitions of the domain into the fibers, then injective
  // assignment of range values modulo swaps of equal-size fibers.
  BigInt count = factorial(shape.N);
  std::map<int, long> mult;
  for (int s : p) {
    count /= factorial(s);
    ++mult[s];
  }
  long t = static_cast<long>(p.size());
  count *= factorial(shape.R) / factorial(shape.R - t);
  for (const auto& [s, k] : mult) count /= factorial(k);
  return count;
}

Label class_label(const OrbitClass& c, TargetFunction f) {
  bool one_to_one = c.kind == OrbitClass::Kind::KtoOne && c.k == 1;
  if (f == TargetFunction::ED) return one_to_one ? Label::Plus : Label::Minus;
  if (one_to_one) return Label::Plus;
  if (c.kind == OrbitClass::Kind::KtoOne && c.k == 2) return Label::Minus;
  return Label::Outside;
}

Label target_value(const FunctionInput& x, TargetFunction f) { return class_label(classify(x), f); }

std::string to_string(TargetFunction f) { return f == TargetFunction::ED ? "ed" : "collision"; }

TargetFunction parse_target_function(const std::string& s) {
  if (s == "collision") return TargetFunction::Collision;
  if (s == "ed") return TargetFunction::ED;
  throw PreconditionError("unknown function '" + s + "' (expected collision or ed)");
}

std::vector<int> encode_bits(const FunctionInput& x) {
  std::vector<int> bits;
  bits.reserve(x.shape.n);
  for (int v : x.values)
    for (int j = 0; j < x.shape.bits_per_block; ++j) bits.push_back(((v - 1) >> j) & 1 ? -1 : 1);
  return bits;
}

int parity_eval(const FunctionInput& x, const std::vector<int>& S) {
  auto bits = encode_bits(x);
  int result = 1;
  for (int i : S) {
    if (i < 0 || i >= x.shape.n) throw PreconditionError("parity coordinate out of range");
    result *= bits[i];
  }
  return result;
}

std::uint64_t enumeration_size(const ProblemShape& shape, std::uint64_t budget) {
  BigInt total = ipow(shape.R, static_cast<unsigned>(shape.N));
  if (total > BigInt(std::to_string(budget)))
    throw BudgetExceeded("enumerating R^N inputs", total, budget);
  return std::stoull(total.get_str());
}

FunctionInput decode_input(const ProblemShape& shape, std::uint64_t index) {
  FunctionInput x{shape, std::vector<int>(shape.N)};
  for (int i = 0; i < shape.N; ++i) {
    x.values[i] = static_cast<int>(index % static_cast<std::uint64_t>(shape.R)) + 1;
    index /= static_cast<std::uint64_t>(shape.R);
  }
  return x;
}

std::uint64_t encode_index(const FunctionInput& x) {
  if (x.shape.n > 63) throw PreconditionError("input too large for a 64-bit index");
  std::uint64_t idx = 0;
  for (int i = x.shape.N - 1; i >= 0; --i)
    idx = idx * static_cast<std::uint64_t>(x.shape.R) + static_cast<std::uint64_t>(x.values[i] - 1);
  return idx;
}

void for_each_input(const ProblemShape& shape, std::uint64_t budget,
                    const std::function<void(std::uint64_t, const std::vector<int>&)>& fn) {
  std::uint64_t total = enumeration_size(shape, budget);
  std::vector<int> values(shape.N, 1);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    fn(idx, values);
    // Odometer increment, block 0 fastest.
    for (int i = 0; i < shape.N; ++i) {
      if (values[i] < shape.R) {
        ++values[i];
        break;
      }
      values[i] = 1;
    }
  }
}

int ClassIndex::id(const OrbitClass& c) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), c);
  if (it == classes.end() || !(*it == c)) return -1;
  return static_cast<int>(it - classes.begin());
}

ClassIndex build_class_index(const ProblemShape& shape, std::uint64_t budget) {
  const std::uint64_t total = enumeration_size(shape, budget);
  ClassIndex out;
  out.shape = shape;
  out.classes = all_classes(shape);
  out.counts.assign(out.classes.size(), 0);
  out.class_of.resize(total);
  // Classification depends only on the sorted fiber profile; cache by it.
  std::map<std::vector<int>, std::uint32_t> by_profile;
  for (std::uint32_t i = 0; i < out.classes.size(); ++i)
    by_profile[out.classes[i].fiber_profile(shape.N)] = i;
  std::vector<int> counts(static_cast<std::size_t>(shape.R) + 1);
  std::vector<int> sizes;
  for_each_input(shape, budget, [&](std::uint64_t idx, const std::vector<int>& values) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int v : values) ++counts[v];
    sizes.clear();
    for (int c : counts)
      if (c) sizes.push_back(c);
    std::sort(sizes.begin(), sizes.end());
    std::uint32_t id = by_profile.at(sizes);
    out.class_of[idx] = id;
    ++out.counts[id];
  });
  return out;
}

namespace {

void partitions(int remaining, int max_part, long max_parts, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (static_cast<long>(cur.size()) == max_parts) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(remaining - p, p, max_parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<OrbitClass> all_classes(const ProblemShape& shape) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(shape.N, shape.N, shape.R, cur, parts);
  std::vector<OrbitClass> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.push_back(class_from_profile(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dualpoly
