#include "qcert/symbols.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace qcert {

PlaneFunction::PlaneFunction(PrimeField k, std::int64_t constant) : k_(k), c_(k.reduce(constant)) {
  if (c_ == 0) throw std::invalid_argument("zero is not a valid factored function");
}

PlaneFunction PlaneFunction::from_linear(const LinearForm& l, int exp) {
  PlaneFunction f(l.field());
  f.mul_form(l, exp);
  return f;
}

void PlaneFunction::mul_form(const LinearForm& l, int exp) {
  if (exp == 0) return;
  std::int64_t lead = 0;
  for (auto c : l.coeffs())
    if (c != 0) { lead = c; break; }
  c_ = k_.mul(c_, k_.pow_signed(lead, exp));
  auto key = l.canonical();
  auto it = f_.find(key);
  int e = (it == f_.end() ? 0 : it->second) + exp;
  if (e == 0) {
    if (it != f_.end()) f_.erase(it);
  } else {
    f_[key] = e;
  }
}

void PlaneFunction::mul_constant(std::int64_t c) {
  c = k_.reduce(c);
  if (c == 0) throw std::invalid_argument("zero is not a valid factored function");
  c_ = k_.mul(c_, c);
}

PlaneFunction PlaneFunction::operator*(const PlaneFunction& o) const {
  PlaneFunction r = *this;
  r.mul_constant(o.c_);
  for (const auto& [key, e] : o.f_) r.mul_form(LinearForm(k_, key), e);
  return r;
}

PlaneFunction PlaneFunction::pow(int e) const {
  PlaneFunction r(k_, k_.pow_signed(c_, e));
  if (e != 0)
    for (const auto& [key, m] : f_) r.f_[key] = m * e;
  return r;
}

int PlaneFunction::divisor_degree() const {
  int d = 0;
  for (const auto& [key, e] : f_) d += e;
  return d;
}

int PlaneFunction::valuation(const LinearForm& line) const {
  auto it = f_.find(line.canonical());
  return it == f_.end() ? 0 : it->second;
}

bool PlaneFunction::invertible_at(const ProjPoint& pt) const {
  for (const auto& [key, e] : f_)
    if (LinearForm(k_, key).eval(pt) == 0) return false;
  return true;
}

std::string PlaneFunction::str() const {
  std::string out = std::to_string(c_);
  for (const auto& [key, e] : f_) {
    out += " * (" + LinearForm(k_, key).str() + ")";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

LineFunction::LineFunction(PrimeField k, std::int64_t constant) : k_(k), c_(k.reduce(constant)) {
  if (c_ == 0) throw std::invalid_argument("zero is not a valid factored function");
}

LineFunction LineFunction::from_poly(const UniPoly& p, int exp) {
  if (p.is_zero()) throw std::invalid_argument("zero is not a valid factored function");
  LineFunction f(p.field(), 1);
  f.mul_constant(p.field().pow_signed(p.lead(), exp));
  for (const auto& [q, m] : factor_univariate(p)) f.mul_monic(q, m * exp);
  return f;
}

void LineFunction::mul_monic(const UniPoly& q, int exp) {
  if (exp == 0) return;
  if (!q.is_monic() || q.degree() < 1)
    throw std::invalid_argument("factors must be monic of positive degree");
  auto key = q.coeffs();
  auto it = f_.find(key);
  int e = (it == f_.end() ? 0 : it->second) + exp;
  if (e == 0) {
    if (it != f_.end()) f_.erase(it);
  } else {
    f_[key] = e;
  }
}

void LineFunction::mul_constant(std::int64_t c) {
  c = k_.reduce(c);
  if (c == 0) throw std::invalid_argument("zero is not a valid factored function");
  c_ = k_.mul(c_, c);
}

LineFunction LineFunction::operator*(const LineFunction& o) const {
  LineFunction r = *this;
  r.mul_constant(o.c_);
  for (const auto& [key, e] : o.f_) {
    auto it = r.f_.find(key);
    int m = (it == r.f_.end() ? 0 : it->second) + e;
    if (m == 0) {
      if (it != r.f_.end()) r.f_.erase(it);
    } else {
      r.f_[key] = m;
    }
  }
  return r;
}

LineFunction LineFunction::pow(int e) const {
  LineFunction r(k_, k_.pow_signed(c_, e));
  if (e != 0)
    for (const auto& [key, m] : f_) r.f_[key] = m * e;
  return r;
}

int LineFunction::valuation(const UniPoly& q) const {
  auto it = f_.find(q.coeffs());
  return it == f_.end() ? 0 : it->second;
}

int LineFunction::valuation_at_infinity() const {
  int d = 0;
  for (const auto& [key, e] : f_) d += e * (static_cast<int>(key.size()) - 1);
  return -d;
}

LineFunction LineFunction::class_reduced() const {
  LineFunction r(k_, k_.is_square(c_) ? 1 : k_.find_nonsquare());
  for (const auto& [key, e] : f_)
    if (e % 2 != 0) r.f_[key] = 1;
  return r;
}

bool LineFunction::trivial_class() const {
  for (const auto& [key, e] : f_)
    if (e % 2 != 0) return false;
  return k_.is_square(c_);
}

bool LineFunction::same_class(const LineFunction& o) const {
  LineFunction a = class_reduced(), b = o.class_reduced();
  return a.c_ == b.c_ && a.f_ == b.f_;
}

std::string LineFunction::str() const {
  std::string out = std::to_string(c_);
  for (const auto& [key, e] : f_) {
    out += " * (" + UniPoly(k_, key).str() + ")";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

PlaneFunction PlaneDivisor::uniformizer() const {
  const PrimeField& k = line.field();
  PlaneFunction u = PlaneFunction::from_linear(line, 1);
  for (auto axis : {std::array<std::int64_t, 3>{0, 0, 1}, std::array<std::int64_t, 3>{0, 1, 0},
                    std::array<std::int64_t, 3>{1, 0, 0}}) {
    LinearForm l(k, axis);
    if (!l.same_line(line)) {
      u.mul_form(l, -1);
      return u;
    }
  }
  throw std::logic_error("no balancing form found");
}

bool is_zero_H1(const FiniteClass& c) {
  if (c.value.is_zero()) throw std::invalid_argument("square class of zero undefined");
  if (c.modulus.degree() == 1) {
    // residue field is F_p itself
    std::int64_t v = mod(c.value, c.modulus).coeff(0);
    if (v == 0) throw std::invalid_argument("square class of zero undefined");
    return c.value.field().is_square(v);
  }
  ExtensionField ext(c.value.field(), c.modulus);
  return ext.is_square(c.value);
}

std::int64_t residue_norm(const FiniteClass& c) {
  const PrimeField& k = c.value.field();
  int d = c.modulus.degree();
  if (d == 1) return k.reduce(mod(c.value, c.modulus).coeff(0));
  unsigned __int128 e = 0, q = 1;
  for (int i = 0; i < d; ++i) {
    if (q > (static_cast<unsigned __int128>(1) << 120)) throw std::overflow_error("field too large");
    e += q;
    q *= static_cast<unsigned __int128>(k.p());
  }
  UniPoly n = pow_mod(c.value, e, c.modulus);
  if (n.degree() > 0) throw std::logic_error("norm did not land in the prime field");
  return n.coeff(0);
}

int valuation(const PlaneFunction& f, const PlaneDivisor& v) { return f.valuation(v.line); }

int valuation(const LineFunction& f, const LinePlace& v) {
  return v.infinite ? f.valuation_at_infinity() : f.valuation(v.pi);
}

LineFunction restrict_function(const PlaneFunction& f, const LineChart& chart) {
  const PrimeField& k = f.field();
  LineFunction out(k, f.constant());
  for (const auto& [key, e] : f.factors()) {
    LinearForm form(k, key);
    if (form.same_line(chart.line()))
      throw std::invalid_argument("cannot restrict a function with a zero or pole along the line");
    UniPoly r = chart.restrict_linear(form);
    if (r.is_zero()) throw std::logic_error("nonproportional form restricted to zero");
    if (r.degree() == 1) {
      out.mul_constant(k.pow_signed(r.lead(), e));
      out.mul_monic(r.monic(), e);
    } else {
      out.mul_constant(k.pow_signed(r.coeff(0), e));
    }
  }
  return out;
}

LineSymbol residue(const PlaneSymbol& s, const PlaneDivisor& v) {
  return residue_detail(s, v).symbol;
}

ResidueComputation residue_detail(const PlaneSymbol& s, const PlaneDivisor& v) {
  const int n = static_cast<int>(s.entries.size());
  if (n < 2 || n > 3) throw std::invalid_argument("residue requires a 2- or 3-symbol");
  const PrimeField& k = s.entries[0].field();
  for (const auto& e : s.entries)
    if (e.divisor_degree() != 0)
      throw std::invalid_argument("plane-tier entries must have degree-zero divisor");

  ResidueComputation detail;
  detail.expansion_terms = 0;
  detail.square_killed = false;

  PlaneFunction pi = v.uniformizer();
  std::vector<int> m(static_cast<std::size_t>(n));
  std::vector<PlaneFunction> unit;
  for (int i = 0; i < n; ++i) {
    m[static_cast<std::size_t>(i)] = s.entries[static_cast<std::size_t>(i)].valuation(v.line);
    unit.push_back(s.entries[static_cast<std::size_t>(i)] * pi.pow(-m[static_cast<std::size_t>(i)]));
  }
  detail.valuations = m;
  LineChart chart(v.line);

  // Multilinear expansion over Z/2: each subset S of slots replaced by pi
  // contributes (prod of m over S) times the symbol of the remaining units
  // together with |S|-1 copies of -1, whose residue drops the single pi slot.
  std::vector<std::vector<LineFunction>> terms;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    long long coeff = 1;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) coeff *= m[static_cast<std::size_t>(i)];
    if (coeff % 2 == 0) continue;
    ++detail.expansion_terms;
    std::vector<LineFunction> entry_list;
    bool dead = false;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) continue;
      LineFunction r = restrict_function(unit[static_cast<std::size_t>(i)], chart).class_reduced();
      if (r.trivial_class()) {
        // a restricted unit is a square: the whole term vanishes
        dead = true;
        detail.square_killed = true;
        break;
      }
      entry_list.push_back(r);
    }
    int extra = std::popcount(mask) - 1;
    LineFunction minus_one = LineFunction::constant_fn(k, k.p() - 1).class_reduced();
    for (int i = 0; i < extra && !dead; ++i) {
      if (minus_one.trivial_class()) dead = true;  // (-1) a square: term vanishes
      else entry_list.push_back(minus_one);
    }
    if (dead) continue;
    std::sort(entry_list.begin(), entry_list.end(), [](const LineFunction& a, const LineFunction& b) {
      if (a.constant() != b.constant()) return a.constant() < b.constant();
      return a.factors() < b.factors();
    });
    terms.push_back(std::move(entry_list));
  }

  // Cancel identical terms mod 2.
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    auto key = [](const std::vector<LineFunction>& t) {
      std::vector<std::pair<std::int64_t, std::map<std::vector<std::int64_t>, int>>> k2;
      for (const auto& e : t) k2.emplace_back(e.constant(), e.factors());
      return k2;
    };
    return key(a) < key(b);
  });
  std::vector<std::vector<LineFunction>> alive;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    auto eq = [](const std::vector<LineFunction>& a, const std::vector<LineFunction>& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t t = 0; t < a.size(); ++t)
        if (!a[t].same_class(b[t])) return false;
      return true;
    };
    while (j < terms.size() && eq(terms[i], terms[j])) ++j;
    if ((j - i) % 2 == 1) alive.push_back(terms[i]);
    i = j;
  }

  const std::size_t out_len = static_cast<std::size_t>(n - 1);
  auto trivial_symbol = [&] {
    LineSymbol z;
    for (std::size_t i = 0; i < out_len; ++i) z.entries.push_back(LineFunction::constant_fn(k, 1));
    return z;
  };
  if (alive.empty()) {
    detail.symbol = trivial_symbol();
    return detail;
  }
  if (out_len == 1) {
    // H^1 is additive: the sum of classes is the product of representatives.
    LineFunction prod = LineFunction::constant_fn(k, 1);
    for (const auto& t : alive) prod = prod * t[0];
    detail.symbol = LineSymbol{{prod.class_reduced()}};
    return detail;
  }
  if (alive.size() == 1) {
    detail.symbol = LineSymbol{{alive[0][0], alive[0][1]}};
    return detail;
  }
  // Merge by a common entry: (c, e1) + (c, e2) + ... = (c, e1*e2*...).
  for (int slot = 0; slot < 2; ++slot) {
    const LineFunction& cand = alive[0][static_cast<std::size_t>(slot)];
    bool common = true;
    for (const auto& t : alive)
      if (!t[0].same_class(cand) && !t[1].same_class(cand)) { common = false; break; }
    if (!common) continue;
    LineFunction rest = LineFunction::constant_fn(k, 1);
    for (const auto& t : alive) rest = rest * (t[0].same_class(cand) ? t[1] : t[0]);
    rest = rest.class_reduced();
    if (rest.trivial_class() || cand.trivial_class()) {
      if (!rest.trivial_class() || !cand.trivial_class()) detail.square_killed = true;
      detail.symbol = trivial_symbol();
      return detail;
    }
    detail.symbol = LineSymbol{{cand, rest}};
    return detail;
  }
  throw std::domain_error("residue is a sum of symbols with no common slot");
}

FiniteClass residue(const LineSymbol& s, const LinePlace& v) {
  if (s.entries.size() != 2) throw std::invalid_argument("line-tier residue requires a 2-symbol");
  const PrimeField& k = s.entries[0].field();
  int m1 = valuation(s.entries[0], v);
  int m2 = valuation(s.entries[1], v);
  UniPoly modulus = v.infinite ? UniPoly::t(k) : v.pi;

  auto unit_value = [&](const LineFunction& f, int mv) -> UniPoly {
    if (v.infinite) {
      // Monic factors all tend to 1 at infinity; the unit part of f against
      // the uniformizer 1/t evaluates to the stored constant.
      (void)mv;
      return UniPoly::constant(k, f.constant());
    }
    UniPoly acc = UniPoly::constant(k, f.constant());
    for (const auto& [key, e] : f.factors()) {
      UniPoly q(k, key);
      if (q == v.pi) continue;  // removed by the uniformizer power
      UniPoly r = mod(q, modulus);
      if (r.is_zero()) throw std::logic_error("distinct irreducibles cannot share a root");
      UniPoly re = e >= 0 ? pow_mod(r, static_cast<unsigned __int128>(e), modulus)
                          : pow_mod(inv_mod(r, modulus), static_cast<unsigned __int128>(-e), modulus);
      acc = mod(acc * re, modulus);
    }
    return acc;
  };

  UniPoly u1 = unit_value(s.entries[0], m1);
  UniPoly u2 = unit_value(s.entries[1], m2);
  auto pw = [&](const UniPoly& b, int e) -> UniPoly {
    if (e >= 0) return pow_mod(b, static_cast<unsigned __int128>(e), modulus);
    return pow_mod(inv_mod(b, modulus), static_cast<unsigned __int128>(-e), modulus);
  };
  UniPoly val = mod(pw(u1, m2) * pw(u2, m1), modulus);
  if ((static_cast<long long>(m1) * m2) % 2 != 0)
    val = mod(val.scaled(k.p() - 1), modulus);
  if (val.is_zero()) throw std::logic_error("tame residue evaluated to zero");
  return FiniteClass{modulus, val};
}

std::vector<LinePlace> line_support(const LineSymbol& s) {
  const PrimeField& k = s.entries.at(0).field();
  std::set<std::vector<std::int64_t>> keys;
  for (const auto& e : s.entries)
    for (const auto& [key, m] : e.factors()) keys.insert(key);
  std::vector<std::vector<std::int64_t>> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end(), coeffs_less);
  std::vector<LinePlace> out;
  for (const auto& key : sorted) out.push_back({false, UniPoly(k, key)});
  out.push_back({true, UniPoly::t(k)});
  return out;
}

bool is_zero_H2_line(const LineSymbol& s) {
  if (s.entries.size() != 2) throw std::invalid_argument("H^2 zero test requires a 2-symbol");
  for (const auto& pl : line_support(s))
    if (!is_zero_H1(residue(s, pl))) return false;
  return true;
}

std::optional<LinePlace> second_residue_witness(const LineSymbol& s) {
  for (const auto& pl : line_support(s))
    if (!is_zero_H1(residue(s, pl))) return pl;
  return std::nullopt;
}

bool reciprocity_check(const LineSymbol& s) {
  const PrimeField& k = s.entries.at(0).field();
  std::int64_t prod = 1;
  for (const auto& pl : line_support(s)) prod = k.mul(prod, residue_norm(residue(s, pl)));
  if (prod == 0) throw std::logic_error("zero norm in reciprocity product");
  return k.is_square(prod);
}

} // namespace qcert
