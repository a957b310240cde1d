#pragma once

#include <optional>

#include "qcert/geometry.hpp"

namespace qcert {

/// A nonzero rational function on P^2 stored in factored form: a constant
/// times a product of canonical linear forms to integer powers. The support
/// of everything in this construction consists of lines, so factors are
/// restricted to degree-1 forms. Degree of the divisor = sum of exponents.
class PlaneFunction {
public:
  explicit PlaneFunction(PrimeField k, std::int64_t constant = 1);

  static PlaneFunction constant_fn(PrimeField k, std::int64_t c) { return PlaneFunction(k, c); }
  static PlaneFunction from_linear(const LinearForm& l, int exp = 1);

  const PrimeField& field() const { return k_; }
  std::int64_t constant() const { return c_; }
  const std::map<std::array<std::int64_t, 3>, int>& factors() const { return f_; }

  /// Multiplies in a linear-form power; the form is normalized (first nonzero
  /// coefficient 1) and the scaling folded into the constant.
  void mul_form(const LinearForm& l, int exp);
  void mul_constant(std::int64_t c);
  PlaneFunction operator*(const PlaneFunction& o) const;
  PlaneFunction pow(int e) const;

  int divisor_degree() const;
  int valuation(const LinearForm& line) const;
  /// True when no factor passes through the point (unit in the local ring).
  bool invertible_at(const ProjPoint& pt) const;

  std::string str() const;

private:
  PrimeField k_;
  std::int64_t c_;
  std::map<std::array<std::int64_t, 3>, int> f_;
};

/// A nonzero element of F_p(t) in factored form: constant times a product of
/// monic irreducible polynomials to integer powers.
class LineFunction {
public:
  explicit LineFunction(PrimeField k, std::int64_t constant = 1);

  static LineFunction constant_fn(PrimeField k, std::int64_t c) { return LineFunction(k, c); }
  /// Factors an arbitrary nonzero polynomial (or ratio via exp = -1).
  static LineFunction from_poly(const UniPoly& p, int exp = 1);

  const PrimeField& field() const { return k_; }
  std::int64_t constant() const { return c_; }
  const std::map<std::vector<std::int64_t>, int>& factors() const { return f_; }

  void mul_monic(const UniPoly& monic_irreducible, int exp);
  void mul_constant(std::int64_t c);
  LineFunction operator*(const LineFunction& o) const;
  LineFunction pow(int e) const;

  int valuation(const UniPoly& monic_irreducible) const;
  int valuation_at_infinity() const;  // minus the degree of the divisor part

  /// Square-class normal form: exponents reduced mod 2, constant replaced by
  /// 1 or the canonical nonsquare.
  LineFunction class_reduced() const;
  bool trivial_class() const;
  bool same_class(const LineFunction& o) const;

  std::string str() const;

private:
  PrimeField k_;
  std::int64_t c_;
  std::map<std::vector<std::int64_t>, int> f_;
};

/// Divisorial valuation of P^2 given by an irreducible (here: linear) form.
/// Its residue field is the function field of the line.
struct PlaneDivisor {
  LinearForm line;
  /// Canonical degree-balancing uniformizer: line / L for the first of z, y, x
  /// not proportional to the line.
  PlaneFunction uniformizer() const;
};

/// Closed point of the projective line: a monic irreducible polynomial in the
/// chart parameter, or the point at infinity.
struct LinePlace {
  bool infinite;
  UniPoly pi;  // meaningful when finite
  int degree() const { return infinite ? 1 : pi.degree(); }
  std::string str() const { return infinite ? "infinity" : pi.str(); }
};

/// A square class of the residue field F_p[t]/(modulus) of a line place
/// (modulus = t represents the prime field itself, e.g. at infinity).
struct FiniteClass {
  UniPoly modulus;
  UniPoly value;  // nonzero residue
};

/// H^1(finite field, Z/2) zero test: is the value a square.
bool is_zero_H1(const FiniteClass& c);
/// Norm down to F_p of the value.
std::int64_t residue_norm(const FiniteClass& c);

/// Cup product of square classes over F_p(x,y): 1 to 3 entries, each a
/// degree-0 nonzero factored function.
struct PlaneSymbol {
  std::vector<PlaneFunction> entries;
};

/// Cup product over F_p(t).
struct LineSymbol {
  std::vector<LineFunction> entries;
};

int valuation(const PlaneFunction& f, const PlaneDivisor& v);
int valuation(const LineFunction& f, const LinePlace& v);

/// How a plane-tier residue computation unfolded; consumed by the certifier
/// to label why a residue vanished.
struct ResidueComputation {
  LineSymbol symbol;        // merged residue class
  std::vector<int> valuations;
  int expansion_terms;      // subsets with odd coefficient product
  bool square_killed;       // some term died because a restricted unit was a square
};

/// Residue of a 2- or 3-symbol at a prime divisor of P^2: writes each entry
/// as unit * pi^m for the canonical uniformizer, expands multilinearly over
/// Z/2 ((pi,pi) rewritten as (-1,pi)), cancels matching terms, and merges the
/// surviving terms into a single symbol one tier down. Merging always
/// succeeds when some entry is a unit at the divisor (the case throughout
/// this construction); otherwise a domain_error is raised.
///
/// Orientation signs of the residue map are immaterial here: every class
/// lives in a Z/2 vector space, so -x = x. Uniformizer choice only moves the
/// result by squares; the canonical degree-balanced uniformizer pins the
/// representative.
LineSymbol residue(const PlaneSymbol& s, const PlaneDivisor& v);
ResidueComputation residue_detail(const PlaneSymbol& s, const PlaneDivisor& v);

/// Restriction of a plane function (a unit along the chart's line) to the
/// line, as a factored element of F_p(t).
LineFunction restrict_function(const PlaneFunction& f, const LineChart& chart);

/// Residue of a 2-symbol over F_p(t) at a closed point: the tame symbol
/// u1^m2 * u2^m1 * (-1)^(m1 m2) reduced in the residue field.
FiniteClass residue(const LineSymbol& s, const LinePlace& v);

/// Closed points in the support of the entries, ordered by (degree,
/// coefficient-lex), followed by the point at infinity.
std::vector<LinePlace> line_support(const LineSymbol& s);

/// A 2-symbol over F_p(t) vanishes iff all its residues vanish (the constant
/// field is finite with trivial Brauer group); checks the support plus
/// infinity.
bool is_zero_H2_line(const LineSymbol& s);

/// First place (in support order) where the residue is a nonsquare,
/// certifying the symbol nonzero; nullopt iff the symbol is zero.
std::optional<LinePlace> second_residue_witness(const LineSymbol& s);

/// Product over all places of the norms of residue representatives must be a
/// square in F_p; self-test of the residue implementation.
bool reciprocity_check(const LineSymbol& s);

} // namespace qcert
