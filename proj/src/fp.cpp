#include "qcert/fp.hpp"

namespace qcert {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

std::int64_t PrimeField::pow(std::int64_t base, unsigned __int128 e) const {
  std::int64_t b = reduce(base);
  std::int64_t r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::int64_t PrimeField::pow_signed(std::int64_t base, std::int64_t e) const {
  if (e >= 0) return pow(base, static_cast<unsigned __int128>(e));
  return pow(inv(base), static_cast<unsigned __int128>(-e));
}

std::int64_t PrimeField::inv(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw std::invalid_argument("division by zero in F_p");
  return pow(a, static_cast<unsigned __int128>(p_ - 2));
}

bool PrimeField::is_square(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw std::invalid_argument("square class of zero undefined");
  return pow(a, static_cast<unsigned __int128>((p_ - 1) / 2)) == 1;
}

std::int64_t PrimeField::find_nonsquare() const {
  for (std::int64_t a = 2; a < p_; ++a)
    if (!is_square(a)) return a;
  throw std::logic_error("no nonsquare found");  // unreachable for odd p
}

std::int64_t PrimeField::sqrt(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) return 0;
  if (!is_square(a)) throw std::invalid_argument("sqrt of a nonsquare");
  std::int64_t r;
  if (p_ % 4 == 3) {
    r = pow(a, static_cast<unsigned __int128>((p_ + 1) / 4));
  } else {
    // Tonelli-Shanks with the deterministic nonsquare as the auxiliary element.
    std::int64_t q = p_ - 1;
    int s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    std::int64_t z = find_nonsquare();
    std::int64_t m = s;
    std::int64_t c = pow(z, static_cast<unsigned __int128>(q));
    std::int64_t t = pow(a, static_cast<unsigned __int128>(q));
    r = pow(a, static_cast<unsigned __int128>((q + 1) / 2));
    while (t != 1) {
      std::int64_t i = 0;
      std::int64_t t2 = t;
      while (t2 != 1) { t2 = mul(t2, t2); ++i; }
      std::int64_t b = c;
      for (std::int64_t j = 0; j < m - i - 1; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
  }
  return std::min(r, p_ - r);
}

} // namespace qcert
