#pragma once

// Class-indexed dual witnesses over {-1,1}^n and their exact verification.
//
// A witness stores the total signed mass on each orbit class; the value at a
// single input is mass / class_size. Pure high degree is checked by computing
// every low-degree Fourier sum exactly: per class, a Walsh-Hadamard transform
// of the class indicator gives the integer counts sum_{x in class} chi_S(x).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualpoly/domain.hpp"
#include "json.hpp"

namespace dualpoly {

struct DualWitness {
  ProblemShape shape;
  std::map<OrbitClass, Rational> class_mass;  // zero masses are not stored
  nlohmann::json meta = nlohmann::json::object();

  Rational mass(const OrbitClass& c) const;
  /// Value at one input of the class.
  Rational point_value(const OrbitClass& c) const;
  /// Adds to a class's mass. Throws PreconditionError if the class is empty.
  void add(const OrbitClass& c, const Rational& m);
};

Rational l1_norm(const DualWitness& w);
Rational correlation(const DualWitness& w, TargetFunction f);
/// Class-wise c1*w1 + c2*w2. Throws PreconditionError on shape mismatch.
DualWitness witness_sum(const DualWitness& w1, const DualWitness& w2, const Rational& c1,
                        const Rational& c2);
/// Divides every mass by the L1 norm. Throws PreconditionError on a zero witness.
DualWitness normalized(const DualWitness& w);

struct EnumerationOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  int jobs = 1;
};

/// Subsets S of [0, n) with |S| <= d, ordered by size then mask value.
std::vector<std::uint64_t> low_degree_sets(int n, int d);

struct PhdResult {
  bool pass = false;
  int degree = 0;                          // the d that was checked
  std::optional<std::uint64_t> failing_set;
  Rational failing_value;                  // sum_x w(x) chi_S(x) at the failing set
};

/// Exact check that sum_x w(x) chi_S(x) = 0 for every |S| <= d.
PhdResult pure_high_degree_exact(const DualWitness& w, int d, const EnumerationOptions& opts = {});
PhdResult pure_high_degree_exact(const DualWitness& w, int d, const ClassIndex& index, int jobs = 1);

/// Largest d <= cap with pure high degree d; -1 if even the total mass is
/// nonzero.
int measure_phd_exact(const DualWitness& w, int cap, const EnumerationOptions& opts = {});
int measure_phd_exact(const DualWitness& w, int cap, const ClassIndex& index, int jobs = 1);

/// sum_x w(x) chi_S(x) for each requested set, exactly.
std::vector<Rational> fourier_sums(const DualWitness& w, const std::vector<std::uint64_t>& sets,
                                   const ClassIndex& index, int jobs = 1);

/// In-place Walsh-Hadamard transform; size must be a power of two.
void fwht(std::vector<std::int64_t>& a);

struct CertificateReport {
  std::string mode = "exact";
  std::string function;
  Rational l1;
  Rational correlation;
  Rational epsilon_claim;
  int degree_claim = 0;
  int phd_verified_to = -1;
  bool correlation_pass = false;
  bool phd_pass = false;
  bool pass = false;
  std::string failing_constraint;
  std::optional<std::uint64_t> failing_set;
  std::vector<std::string> notes;
};

/// Passes iff correlation > epsilon * l1 and the witness has pure high
/// degree `d`, both exactly.
CertificateReport verify_certificate(const DualWitness& w, TargetFunction f, const Rational& epsilon,
                                     int d, const EnumerationOptions& opts = {});

}  // namespace dualpoly
