#include "qcert/poly.hpp"

#include <algorithm>

namespace qcert {

UniPoly::UniPoly(PrimeField f, std::vector<std::int64_t> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (auto& x : c_) x = field_.reduce(x);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t UniPoly::eval(std::int64_t x) const {
  std::int64_t r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, x), *it);
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = field_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = field_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return zero(field_);
  std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::scaled(std::int64_t c) const {
  std::vector<std::int64_t> r = c_;
  for (auto& x : r) x = field_.mul(x, c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
  return scaled(field_.inv(lead()));
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return zero(field_);
  std::vector<std::int64_t> r(c_.size() - 1, 0);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = field_.mul(c_[i], static_cast<std::int64_t>(i % static_cast<std::size_t>(field_.p())));
  return UniPoly(field_, std::move(r));
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    std::int64_t c = coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i > 0) {
      if (c != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const PrimeField& f = a.field();
  std::vector<std::int64_t> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {UniPoly::zero(f), a};
  std::vector<std::int64_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  std::int64_t binv = f.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    std::int64_t c = f.mul(rem[static_cast<std::size_t>(i)], binv);
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] =
          f.sub(rem[static_cast<std::size_t>(i - db + j)], f.mul(c, b.coeff(j)));
  }
  return {UniPoly(f, std::move(q)), UniPoly(f, std::move(rem))};
}

UniPoly mod(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly divide_exact(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::invalid_argument("polynomial division is not exact");
  return q;
}

bool divides(const UniPoly& b, const UniPoly& a) { return divmod(a, b).second.is_zero(); }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = mod(x, y);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x.monic();
}

UniPoly pow_mod(const UniPoly& base, unsigned __int128 e, const UniPoly& m) {
  UniPoly b = mod(base, m);
  UniPoly r = UniPoly::constant(base.field(), 1);
  while (e > 0) {
    if (e & 1) r = mod(r * b, m);
    b = mod(b * b, m);
    e >>= 1;
  }
  return r;
}

UniPoly inv_mod(const UniPoly& a, const UniPoly& m) {
  const PrimeField& f = a.field();
  UniPoly r0 = m, r1 = mod(a, m);
  UniPoly s0 = UniPoly::zero(f), s1 = UniPoly::constant(f, 1);
  if (r1.is_zero()) throw std::invalid_argument("inverse of zero residue");
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    UniPoly s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0.degree() != 0) throw std::invalid_argument("residue is not invertible");
  return mod(s0.scaled(f.inv(r0.coeff(0))), m);
}

bool coeffs_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool poly_less(const UniPoly& a, const UniPoly& b) { return coeffs_less(a.coeffs(), b.coeffs()); }

std::optional<UniPoly> poly_sqrt(const UniPoly& f) {
  if (f.is_zero()) return UniPoly::zero(f.field());
  const PrimeField& k = f.field();
  if (f.degree() % 2 != 0) return std::nullopt;
  if (!k.is_square(f.lead())) return std::nullopt;
  int h = f.degree() / 2;
  std::vector<std::int64_t> r(static_cast<std::size_t>(h) + 1, 0);
  r[static_cast<std::size_t>(h)] = k.sqrt(f.lead());
  // Solve for coefficients from the top: matching the coefficient of t^(h+i)
  // in r^2 determines r[i] once r[i+1..h] are known.
  std::int64_t top2inv = k.inv(k.mul(2, r[static_cast<std::size_t>(h)]));
  for (int i = h - 1; i >= 0; --i) {
    std::int64_t acc = 0;
    for (int j = i + 1; j <= h; ++j) {
      int other = h + i - j;
      if (other <= h && other >= i + 1)
        acc = k.add(acc, k.mul(r[static_cast<std::size_t>(j)], r[static_cast<std::size_t>(other)]));
    }
    r[static_cast<std::size_t>(i)] = k.mul(k.sub(f.coeff(h + i), acc), top2inv);
  }
  UniPoly cand(k, std::move(r));
  if (cand * cand == f) return cand;
  return std::nullopt;
}

namespace {

// Candidate sequence for equal-degree splitting: monic polynomials of degree
// 1, 2, ... enumerated by an ascending coefficient counter. Deterministic; a
// separating element of degree < 2d always exists.
UniPoly edf_candidate(const PrimeField& f, std::int64_t index) {
  std::int64_t p = f.p();
  int deg = 1;
  std::int64_t span = p;  // number of monic polys of this degree
  while (index >= span) {
    index -= span;
    ++deg;
    span = 1;
    for (int i = 0; i < deg; ++i) {
      if (span > (1LL << 40) / p) throw std::logic_error("equal-degree splitting exhausted");
      span *= p;
    }
  }
  std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1, 0);
  c[static_cast<std::size_t>(deg)] = 1;
  for (int i = 0; i < deg; ++i) {
    c[static_cast<std::size_t>(i)] = index % p;
    index /= p;
  }
  return UniPoly(f, std::move(c));
}

void equal_degree_split(const UniPoly& g, int d, std::vector<UniPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const PrimeField& f = g.field();
  unsigned __int128 e = 1;
  for (int i = 0; i < d; ++i) {
    if (e > (static_cast<unsigned __int128>(1) << 120)) throw std::overflow_error("field too large");
    e *= static_cast<unsigned __int128>(f.p());
  }
  e = (e - 1) / 2;
  for (std::int64_t idx = 0;; ++idx) {
    UniPoly h = edf_candidate(f, idx);
    UniPoly c = gcd(h, g);
    if (c.degree() > 0 && c.degree() < g.degree()) {
      equal_degree_split(c, d, out);
      equal_degree_split(divide_exact(g, c), d, out);
      return;
    }
    UniPoly s = pow_mod(h, e, g);
    UniPoly w = gcd(s - UniPoly::constant(f, 1), g);
    if (w.degree() > 0 && w.degree() < g.degree()) {
      equal_degree_split(w, d, out);
      equal_degree_split(divide_exact(g, w), d, out);
      return;
    }
  }
}

} // namespace

std::vector<PolyFactor> factor_univariate(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  const PrimeField& k = f.field();
  std::vector<PolyFactor> result;
  UniPoly work = f.degree() >= 1 ? f.monic() : UniPoly::constant(k, 1);
  int d = 1;
  while (work.degree() > 0) {
    if (2 * d > work.degree()) {
      // No factor of degree < d remains, so work itself is irreducible.
      result.push_back({work, 1});
      break;
    }
    // gcd with t^(p^d) - t picks out the distinct irreducible factors of
    // degree d (lower degrees were already removed with full multiplicity).
    UniPoly frob = UniPoly::t(k);
    for (int i = 0; i < d; ++i) frob = pow_mod(frob, static_cast<unsigned __int128>(k.p()), work);
    UniPoly g = gcd(frob - UniPoly::t(k), work);
    if (g.degree() > 0) {
      std::vector<UniPoly> irred;
      equal_degree_split(g, d, irred);
      for (const auto& q : irred) {
        int mult = 0;
        while (divides(q, work)) {
          work = divide_exact(work, q);
          ++mult;
        }
        result.push_back({q, mult});
      }
    }
    ++d;
  }
  std::sort(result.begin(), result.end(),
            [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.factor, b.factor); });
  return result;
}

bool is_irreducible(const UniPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  auto fs = factor_univariate(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

ExtensionField::ExtensionField(PrimeField base, UniPoly modulus)
    : base_(base), modulus_(modulus.monic()) {
  if (modulus_.degree() < 1 || !is_irreducible(modulus_))
    throw std::invalid_argument("extension modulus must be monic irreducible");
}

ExtensionField ExtensionField::canonical(PrimeField base, int m) {
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::int64_t p = base.p();
  unsigned __int128 span = 1;
  for (int i = 0; i < m; ++i) span *= static_cast<unsigned __int128>(p);
  for (unsigned __int128 n = 0; n < span; ++n) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(m) + 1, 0);
    c[static_cast<std::size_t>(m)] = 1;
    unsigned __int128 idx = n;
    for (int i = 0; i < m; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx % static_cast<unsigned __int128>(p));
      idx /= static_cast<unsigned __int128>(p);
    }
    UniPoly cand(base, std::move(c));
    if (m == 1 || is_irreducible(cand)) return ExtensionField(base, cand);
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable
}

unsigned __int128 ExtensionField::order() const {
  unsigned __int128 q = 1;
  for (int i = 0; i < degree(); ++i) {
    if (q > (static_cast<unsigned __int128>(1) << 120)) throw std::overflow_error("field too large");
    q *= static_cast<unsigned __int128>(base_.p());
  }
  return q;
}

bool ExtensionField::is_square(const UniPoly& a) const {
  UniPoly r = reduce(a);
  if (r.is_zero()) throw std::invalid_argument("square class of zero undefined");
  UniPoly s = pow(r, (order() - 1) / 2);
  if (s.degree() != 0) throw std::logic_error("Euler criterion did not yield +-1");
  return s.coeff(0) == 1;
}

bool square_class_in_extension(const PrimeField& f, std::int64_t a, int m) {
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  if (f.reduce(a) == 0) throw std::invalid_argument("square class of zero undefined");
  if (f.is_square(a)) return true;
  return m % 2 == 0;
}

} // namespace qcert
