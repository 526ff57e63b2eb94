#pragma once

// Inputs to Collision / Element Distinctness: function tables g: [N] -> [R],
// their bit encoding, orbit classes under relabeling of domain and range, and
// exhaustive enumeration at small sizes.
//
// Encoding: value v is written as the binary expansion of v-1 over
// b = log2(R) bits, least significant bit first; bit 0 is the +1 coordinate
// and bit 1 is -1. Block i occupies coordinates [i*b, (i+1)*b). The integer
// index of an input is sum_i (v_i - 1) * R^i, so its binary digits are exactly
// the concatenated blocks and chi_S(x) = (-1)^popcount(index & S).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dualpoly/errors.hpp"
#include "dualpoly/numerics.hpp"

namespace dualpoly {

struct ProblemShape {
  int N = 0;
  long R = 0;
  int bits_per_block = 0;
  int n = 0;

  /// Validates R >= max(N, 2) and R a power of two.
  static ProblemShape make(int N, long R);

  friend bool operator==(const ProblemShape&, const ProblemShape&) = default;
};

struct FunctionInput {
  ProblemShape shape;
  std::vector<int> values;  // values[i] in [1, R]

  /// Throws PreconditionError on a wrong length or out-of-range value.
  static FunctionInput make(const ProblemShape& shape, std::vector<int> values);
};

struct OrbitClass {
  enum class Kind { KtoOne = 0, Regular = 1, Irregular = 2 };

  Kind kind = Kind::KtoOne;
  int k = 0;                 // KtoOne
  int m = 0, a = 0, b = 0;   // Regular, a < b
  std::vector<int> profile;  // Irregular: fiber sizes, ascending

  static OrbitClass k_to_one(int k);
  static OrbitClass regular(int m, int a, int b);
  static OrbitClass irregular(std::vector<int> profile);

  /// Fiber sizes (ascending) for a domain of size N.
  std::vector<int> fiber_profile(int N) const;
  /// Short human label: "T1", "R(2,1,2)", "B[1,1,2]".
  std::string str() const;

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
  friend bool operator<(const OrbitClass& x, const OrbitClass& y);
};

/// Canonical class of a multiset of nonzero fiber sizes (any order).
OrbitClass class_from_profile(std::vector<int> fiber_sizes);

/// Canonical class of R_{m,a,b}. Throws PreconditionError unless the triple is
/// valid for N (a, b >= 1, a | m, b | N-m, 0 <= m <= N).
OrbitClass class_of_triple(int m, int a, int b, int N);
bool is_valid_triple(int m, int a, int b, int N);

OrbitClass classify(const FunctionInput& x);
OrbitClass classify_values(const std::vector<int>& values, long R);

/// True when the class has at least one member under `shape`.
bool is_realizable(const OrbitClass& c, const ProblemShape& shape);

/// Number of inputs in the class. Throws PreconditionError if unrealizable.
BigInt class_size(const OrbitClass& c, const ProblemShape& shape);

enum class TargetFunction { Collision, ED };
enum class Label { Plus = 1, Minus = -1, Outside = 0 };

Label class_label(const OrbitClass& c, TargetFunction f);
Label target_value(const FunctionInput& x, TargetFunction f);
std::string to_string(TargetFunction f);
TargetFunction parse_target_function(const std::string& s);

/// +1/-1 coordinates of x's encoding, length n.
std::vector<int> encode_bits(const FunctionInput& x);

/// chi_S(x) for S given as coordinate positions in [0, n).
int parity_eval(const FunctionInput& x, const std::vector<int>& S);

inline int parity_of_index(std::uint64_t index, std::uint64_t mask) {
  return (__builtin_popcountll(index & mask) & 1) ? -1 : 1;
}

/// R^N, throwing BudgetExceeded when above `budget`.
std::uint64_t enumeration_size(const ProblemShape& shape,
                               std::uint64_t budget = kDefaultEnumerationBudget);

FunctionInput decode_input(const ProblemShape& shape, std::uint64_t index);
std::uint64_t encode_index(const FunctionInput& x);

/// Calls fn(index, values) for all R^N inputs in index order.
void for_each_input(const ProblemShape& shape, std::uint64_t budget,
                    const std::function<void(std::uint64_t, const std::vector<int>&)>& fn);

/// Every input tagged with its class id.
struct ClassIndex {
  ProblemShape shape;
  std::vector<OrbitClass> classes;      // sorted
  std::vector<std::uint32_t> class_of;  // by input index
  std::vector<std::uint64_t> counts;    // members per class

  int id(const OrbitClass& c) const;  // -1 when absent
};

ClassIndex build_class_index(const ProblemShape& shape,
                             std::uint64_t budget = kDefaultEnumerationBudget);

/// All realizable classes of a shape, sorted. Does not enumerate inputs.
std::vector<OrbitClass> all_classes(const ProblemShape& shape);

}  // namespace dualpoly
