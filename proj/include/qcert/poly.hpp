#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcert/fp.hpp"

namespace qcert {

/// Dense univariate polynomial over F_p. Coefficients are stored ascending
/// (coeffs[i] is the coefficient of t^i) with no trailing zeros; the zero
/// polynomial has an empty coefficient vector.
class UniPoly {
public:
  UniPoly(PrimeField f, std::vector<std::int64_t> coeffs);

  static UniPoly zero(PrimeField f) { return UniPoly(f, {}); }
  static UniPoly constant(PrimeField f, std::int64_t c) { return UniPoly(f, {c}); }
  static UniPoly t(PrimeField f) { return UniPoly(f, {0, 1}); }

  const PrimeField& field() const { return field_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  std::int64_t lead() const { return c_.back(); }
  std::int64_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  std::int64_t eval(std::int64_t x) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(std::int64_t c) const;
  UniPoly monic() const;  // divides by the leading coefficient
  UniPoly derivative() const;

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "t") const;

private:
  PrimeField field_;
  std::vector<std::int64_t> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly mod(const UniPoly& a, const UniPoly& b);
/// Exact division; throws if the remainder is nonzero.
UniPoly divide_exact(const UniPoly& a, const UniPoly& b);
bool divides(const UniPoly& b, const UniPoly& a);
/// Monic gcd.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly pow_mod(const UniPoly& base, unsigned __int128 e, const UniPoly& m);
/// Inverse of a modulo m (extended Euclid); a must be coprime to m.
UniPoly inv_mod(const UniPoly& a, const UniPoly& m);

/// Total order: by degree, then coefficients from the constant term up.
bool poly_less(const UniPoly& a, const UniPoly& b);
bool coeffs_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

/// Exact polynomial square root, or nullopt if f is not a perfect square.
std::optional<UniPoly> poly_sqrt(const UniPoly& f);

struct PolyFactor {
  UniPoly factor;  // monic irreducible
  int multiplicity;
};

/// Complete factorization into monic irreducibles, ordered by (degree,
/// coefficient-lex). The product of factor^multiplicity times the leading
/// coefficient of f recovers f. Deterministic: distinct-degree splitting with
/// a fixed candidate sequence for the equal-degree stage.
std::vector<PolyFactor> factor_univariate(const UniPoly& f);

bool is_irreducible(const UniPoly& f);

/// F_p[t]/(modulus) with a monic irreducible modulus: the field of p^m
/// elements. Elements are polynomial residues of degree < m.
class ExtensionField {
public:
  ExtensionField(PrimeField base, UniPoly modulus);

  /// The canonical degree-m extension: modulus is the smallest monic
  /// irreducible of degree m (coefficient vectors compared from the constant
  /// term up).
  static ExtensionField canonical(PrimeField base, int m);

  const PrimeField& base() const { return base_; }
  const UniPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }
  unsigned __int128 order() const;

  UniPoly reduce(const UniPoly& a) const { return mod(a, modulus_); }
  UniPoly mul(const UniPoly& a, const UniPoly& b) const { return reduce(a * b); }
  UniPoly inv(const UniPoly& a) const { return inv_mod(a, modulus_); }
  UniPoly pow(const UniPoly& a, unsigned __int128 e) const { return pow_mod(a, e, modulus_); }

  /// Euler criterion in F_{p^m}; rejects zero.
  bool is_square(const UniPoly& a) const;

private:
  PrimeField base_;
  UniPoly modulus_;
};

/// Whether a nonzero a in F_p becomes a square in F_{p^m}: squares stay
/// squares, and a nonsquare becomes a square exactly when m is even.
bool square_class_in_extension(const PrimeField& f, std::int64_t a, int m);

} // namespace qcert
