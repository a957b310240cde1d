#pragma once

#include <set>

#include "qcert/symbols.hpp"

namespace qcert {

/// The conic a*u^2 + b*v^2 = w^2 over F_p(t); a, b are nonzero polynomial
/// square-class representatives. It has a point over F_p(t) exactly when the
/// 2-symbol (a, b) vanishes.
struct ConicSpec {
  UniPoly a, b;
};

struct ConicPoint {
  UniPoly u, v, w;
};

/// Exhaustive search for a nonzero polynomial solution with all degrees at
/// most max_degree, in a fixed deterministic order: the u = 0 and v = 0
/// branches first, then coprime pairs (u monic) by increasing degree profile.
/// Degree profiles whose forced leading coefficient cannot be a square are
/// skipped as provably solution-free. One-sided: nullopt only bounds the
/// solution degree, it does not prove the conic pointless.
std::optional<ConicPoint> conic_point_search(const ConicSpec& c, int max_degree);

/// Verifies that the returned triple actually solves the conic.
bool conic_point_valid(const ConicSpec& c, const ConicPoint& pt);

struct ConditionReport {
  bool i, ii, iii;
};

/// Direct enumeration of P^2(F_p): evaluates the defining products at every
/// point instead of reasoning about intersections. Desk scale (p <= 10^4).
ConditionReport exhaustive_condition_check(const LineArrangement& arr);

struct ExceptionalSet {
  bool all_primes;  // the two integer line families are degenerate over Q
  std::set<std::int64_t> primes;
  bool contains(std::int64_t p) const { return all_primes || primes.count(p) > 0; }
};

/// Primes where the reduction of the integer construction data breaks the
/// arrangement conditions: divisors of the pairwise-proportionality minors
/// (condition i), of the 16+16 primed cross products (ii')/(iii'), and of the
/// coefficient constraints, together with every prime below 13. Entries of
/// l1, l2 must avoid 0 and -1 over the integers.
ExceptionalSet exceptional_prime_set(std::array<std::int64_t, 3> l1,
                                     std::array<std::int64_t, 3> l2);

/// Seeded sample of an arrangement with coefficients in k* \ {-1}.
LineArrangement random_arrangement(PrimeField k, std::uint64_t& rng_state);

struct AgreementReport {
  int samples;
  int agreements;  // exhaustive check vs algebraic check and primed variants
  bool full() const { return samples == agreements; }
};

/// Runs `samples` random arrangements comparing exhaustive_condition_check
/// against the algebraic (ii)/(iii) and primed checks.
AgreementReport arrangement_agreement(std::int64_t p, int samples, std::uint64_t seed);

struct ConicCase {
  std::int64_t constant;  // first symbol entry (a constant square class)
  UniPoly poly;           // second entry
  bool symbol_zero;       // is_zero_H2_line verdict
  bool point_found;
  bool consistent;  // zero => found; nonzero => not found (bound-limited)
};

/// Deterministic 50-case corpus over F_p(t) comparing the H^2 zero test with
/// the conic point search at the given degree bound.
std::vector<ConicCase> conic_agreement(std::int64_t p, int max_degree, std::uint64_t seed);

} // namespace qcert
