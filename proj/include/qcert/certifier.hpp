#pragma once

#include <json.hpp>

#include "qcert/symbols.hpp"

namespace qcert {

using ojson = nlohmann::ordered_json;

struct ConstructionParams {
  std::int64_t p;
  std::int64_t a;  // a nonsquare constant
  std::array<std::int64_t, 3> l1, l2;
};

/// Validates p (odd prime) and a (nonzero nonsquare mod p); throws
/// std::invalid_argument on malformed input. Coefficient constraints on l1,
/// l2 are *not* checked here: they are certificate-level conditions.
PrimeField validate_params(const ConstructionParams& params);

/// The defining data: f = x/y, g1 = prod_j(l1+h_j) / y^8,
/// g2 = prod_j(l2+h_j) / z^8, together with the 19-line arrangement.
struct DefiningFunctions {
  PlaneFunction f, g1, g2;
  LineArrangement arrangement;
};

DefiningFunctions build_functions(const ConstructionParams& params);

/// The quadric <1, -a, -f, af, -g1 g2> over F_p(x,y) and the 3-fold Pfister
/// form <<a, f, g1 g2>> it is a neighbor of (dimension 5 > 8/2).
struct QuadricSpec {
  std::vector<PlaneFunction> diagonal;
  std::array<PlaneFunction, 3> pfister_slots;
  int dimension() const { return static_cast<int>(diagonal.size()); }
  int pfister_dimension() const { return 8; }
  bool is_neighbor() const { return 2 * dimension() > pfister_dimension(); }
};

QuadricSpec quadric_spec(const ConstructionParams& params, const DefiningFunctions& fns);

enum class CheckStatus { Pass, Fail, TrustedTheorem };
std::string status_str(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status;
  ojson witness;
  std::string citation;
};

struct Certificate {
  ConstructionParams params;
  std::vector<CheckRecord> records;
  std::string verdict;  // "CERTIFIED" or "FAILED(<first failing check>)"

  bool certified() const { return verdict == "CERTIFIED"; }
  const CheckRecord* find(const std::string& name) const;
  ojson to_json() const;
  std::string dump() const;
};

/// Runs the full pipeline: parameter constraints, arrangement conditions (i),
/// (ii)+(ii'), (iii)+(iii'), construction, conditions 1-3, Arason gate. All
/// checks are evaluated; the verdict carries the first failure.
Certificate certify(const ConstructionParams& params);

/// Re-runs the pipeline from the params recorded in a serialized certificate
/// and compares byte-for-byte; any corrupted witness fails.
struct ValidationResult {
  bool ok;
  std::string mismatch;  // json pointer-ish description of the first difference
};
ValidationResult validate_certificate(const ojson& doc);

struct SearchRow {
  std::int64_t p;
  std::int64_t a;  // the a actually used (0 when none was admissible)
  std::string verdict;
};

/// Certifies every prime in [lo, hi] in ascending order. fixed_a = nullopt
/// selects the smallest nonsquare per prime; otherwise the reduction of
/// *fixed_a is validated per prime.
std::vector<SearchRow> search_primes(std::int64_t lo, std::int64_t hi,
                                     std::array<std::int64_t, 3> l1,
                                     std::array<std::int64_t, 3> l2,
                                     std::optional<std::int64_t> fixed_a = std::nullopt);

// Individual condition checkers (also used by the test suites).
std::vector<CheckRecord> check_condition1(const ConstructionParams& params,
                                          const DefiningFunctions& fns);
std::vector<CheckRecord> check_condition2(const ConstructionParams& params,
                                          const DefiningFunctions& fns);
std::vector<CheckRecord> check_condition3(const ConstructionParams& params,
                                          const DefiningFunctions& fns);
CheckRecord arason_gate(const ConstructionParams& params, const DefiningFunctions& fns,
                        const std::vector<CheckRecord>& cond1);

// JSON encoders shared with the CLI/tests.
ojson json_poly(const UniPoly& p);
ojson json_triple(const std::array<std::int64_t, 3>& t);
ojson json_plane_fn(const PlaneFunction& f);
ojson json_line_fn(const LineFunction& f);
ojson json_line_symbol(const LineSymbol& s);

} // namespace qcert
