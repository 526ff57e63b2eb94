#pragma once

// Dual witnesses for Collision: the weak witness that spreads omega over the
// k-to-1 classes, and the main witness psi = a*psi1 + b*psi2 assembled from
// omega, the eta_k and the Psi table.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualpoly/univariate_duals.hpp"
#include "dualpoly/witness.hpp"

namespace dualpoly {

/// Mass omega(k) on T_k for k in [L]; N = L!.
DualWitness build_weak_collision_dual(int L, long R, const Rational& delta);

struct PsiTable {
  int N = 0;
  int K = 0;
  Rational delta;
  UnivariateDual omega;              // on [K], constant delta/8
  std::map<int, UnivariateDual> eta; // k -> eta_k, constant 1/2
  std::vector<int> skipped;          // k in [3, K] whose eta_k failed its gate
  std::map<std::pair<int, int>, Rational> entries;  // (m, k) -> Psi(m, k), nonzero only

  Rational at(int m, int k) const;
  /// k >= 3 with omega(k) != 0; these are the eta_k the table depends on.
  std::vector<int> used_k() const;
  /// min(phd omega, phd eta_k for used k): the degree the construction
  /// guarantees once orbit averages are low-degree in (m, a, b).
  int claimed_phd() const;
};

/// Throws PreconditionError unless N is a positive multiple of 4 and
/// 2 <= K <= N. A skipped k with omega(k) != 0 is a DegenerateConstruction.
PsiTable build_psi_table(int N, const Rational& delta, int K);

/// Normalized psi_1 (variant 1, classes R_{m,k,1}) or psi_2 (variant 2,
/// classes R_{m,k,2}).
DualWitness build_psi_hat(int variant, const PsiTable& table, const ProblemShape& shape);

struct MainCollisionDual {
  PsiTable table;
  DualWitness psi1;
  DualWitness psi2;
  DualWitness psi;
  Rational a;  // sum of psi1 over T_1
  Rational b;  // -(sum of psi2 over T_2)
};

MainCollisionDual build_main_collision_dual(const ProblemShape& shape, const Rational& delta, int K);

/// K used when none is given.
inline int default_k(int N) { return N < 4 ? N : 4; }

struct PropertyCheck {
  int id = 0;
  std::string statement;
  bool pass = false;
  std::string detail;
};

/// The eight properties of psi1/psi2. Property 5 (pure high degree >= d) is
/// checked by enumeration; if the shape is over budget and `table` is given,
/// it falls back to the table-level identities and says so in `detail`.
std::vector<PropertyCheck> verify_lemma42_properties(const DualWitness& psi1, const DualWitness& psi2,
                                                     const Rational& delta, int d,
                                                     const EnumerationOptions& opts = {},
                                                     const PsiTable* table = nullptr);

/// Exact checks on the table: Psi(m,k) = 0 unless k | m, Psi(N/2,k) = 0 for
/// k >= 3, m even on the support, and vanishing moments of omega and the used
/// eta_k up to claimed_phd().
struct TableIdentityReport {
  bool divisibility = false;
  bool cancellation = false;
  bool even_support = false;
  bool omega_moments = false;
  bool eta_moments = false;
  bool ok() const { return divisibility && cancellation && even_support && omega_moments && eta_moments; }
  std::string failure;
};
TableIdentityReport check_table_identities(const PsiTable& table);

/// Verification without enumeration: rebuilds the construction named in the
/// witness metadata, requires exact agreement of every class mass, and checks
/// the univariate identities. The pure-high-degree verdict therefore rests on
/// the symmetrization lemma and is labeled as such.
CertificateReport verify_by_reconstruction(const DualWitness& w, TargetFunction f,
                                           const Rational& epsilon, int d);

}  // namespace dualpoly
