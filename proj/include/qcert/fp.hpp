#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcert {

bool is_prime(std::int64_t n);

/// Arithmetic in the prime field F_p, p an odd prime. Elements are canonical
/// residues in [0, p). All operations are pure; the object is freely copyable.
class PrimeField {
public:
  explicit PrimeField(std::int64_t p);

  std::int64_t p() const { return p_; }

  std::int64_t reduce(std::int64_t x) const {
    std::int64_t r = x % p_;
    return r < 0 ? r + p_ : r;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t neg(std::int64_t a) const { return reduce(-a); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<__int128>(reduce(a)) * reduce(b) % p_);
  }
  std::int64_t pow(std::int64_t base, unsigned __int128 e) const;
  /// Raises to a possibly negative exponent (inverts first when e < 0).
  std::int64_t pow_signed(std::int64_t base, std::int64_t e) const;
  std::int64_t inv(std::int64_t a) const;

  /// Euler criterion. Rejects zero: the square class of zero is undefined.
  bool is_square(std::int64_t a) const;

  /// Smallest positive nonsquare representative. Exists for every odd p.
  std::int64_t find_nonsquare() const;

  /// Deterministic square root (smaller of the two roots); a must be a square.
  std::int64_t sqrt(std::int64_t a) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
  std::int64_t p_;
};

} // namespace qcert
