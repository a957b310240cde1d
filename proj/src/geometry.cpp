#include "qcert/geometry.hpp"

#include <algorithm>

namespace qcert {

std::string ProjPoint::str() const {
  return "[" + std::to_string(c[0]) + ":" + std::to_string(c[1]) + ":" + std::to_string(c[2]) + "]";
}

LinearForm::LinearForm(PrimeField k, std::array<std::int64_t, 3> coeffs) : k_(k), c_(coeffs) {
  for (auto& x : c_) x = k_.reduce(x);
  if (c_[0] == 0 && c_[1] == 0 && c_[2] == 0)
    throw std::invalid_argument("zero linear form");
}

std::array<std::int64_t, 3> LinearForm::canonical() const {
  std::array<std::int64_t, 3> r = c_;
  for (int i = 0; i < 3; ++i) {
    if (r[i] != 0) {
      std::int64_t s = k_.inv(r[i]);
      for (int j = 0; j < 3; ++j) r[j] = k_.mul(r[j], s);
      break;
    }
  }
  return r;
}

std::int64_t LinearForm::eval(const ProjPoint& pt) const {
  std::int64_t v = 0;
  for (int i = 0; i < 3; ++i) v = k_.add(v, k_.mul(c_[i], pt.c[i]));
  return v;
}

int LinearForm::pivot() const {
  for (int i = 0; i < 3; ++i)
    if (c_[i] != 0) return i;
  return -1;
}

std::string LinearForm::str() const {
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
    out += names[i];
  }
  return out;
}

ProjPoint normalize_point(const PrimeField& k, std::array<std::int64_t, 3> v) {
  for (auto& x : v) x = k.reduce(x);
  if (v[0] == 0 && v[1] == 0 && v[2] == 0)
    throw std::invalid_argument("zero vector is not a projective point");
  for (int i = 2; i >= 0; --i) {
    if (v[i] != 0) {
      std::int64_t s = k.inv(v[i]);
      for (int j = 0; j < 3; ++j) v[j] = k.mul(v[j], s);
      break;
    }
  }
  return ProjPoint{v};
}

ProjPoint intersect_lines(const LinearForm& a, const LinearForm& b) {
  const PrimeField& k = a.field();
  const auto& u = a.coeffs();
  const auto& v = b.coeffs();
  std::array<std::int64_t, 3> w = {
      k.sub(k.mul(u[1], v[2]), k.mul(u[2], v[1])),
      k.sub(k.mul(u[2], v[0]), k.mul(u[0], v[2])),
      k.sub(k.mul(u[0], v[1]), k.mul(u[1], v[0])),
  };
  if (w[0] == 0 && w[1] == 0 && w[2] == 0)
    throw std::invalid_argument("identical lines");
  return normalize_point(k, w);
}

HomForm::HomForm(PrimeField k, int degree) : k_(k), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
}

HomForm HomForm::from_linear(const LinearForm& l) {
  HomForm f(l.field(), 1);
  f.add_term(1, 0, l.coeffs()[0]);
  f.add_term(0, 1, l.coeffs()[1]);
  f.add_term(0, 0, l.coeffs()[2]);
  return f;
}

void HomForm::add_term(int i, int j, std::int64_t coeff) {
  if (i < 0 || j < 0 || i + j > degree_) throw std::invalid_argument("exponents exceed degree");
  coeff = k_.reduce(coeff);
  auto key = std::make_pair(i, j);
  auto it = a_.find(key);
  std::int64_t v = k_.add(it == a_.end() ? 0 : it->second, coeff);
  if (v == 0) {
    if (it != a_.end()) a_.erase(it);
  } else {
    a_[key] = v;
  }
}

HomForm HomForm::operator*(const HomForm& o) const {
  HomForm r(k_, degree_ + o.degree_);
  for (const auto& [e1, c1] : a_)
    for (const auto& [e2, c2] : o.a_)
      r.add_term(e1.first + e2.first, e1.second + e2.second, k_.mul(c1, c2));
  return r;
}

std::int64_t HomForm::eval(const ProjPoint& pt) const {
  std::int64_t out = 0;
  for (const auto& [e, c] : a_) {
    std::int64_t term = c;
    term = k_.mul(term, k_.pow(pt.c[0], static_cast<unsigned __int128>(e.first)));
    term = k_.mul(term, k_.pow(pt.c[1], static_cast<unsigned __int128>(e.second)));
    term = k_.mul(term, k_.pow(pt.c[2], static_cast<unsigned __int128>(degree_ - e.first - e.second)));
    out = k_.add(out, term);
  }
  return out;
}

LineChart::LineChart(const LinearForm& line)
    : line_(line), pivot_(line.pivot()), r1_(-1), r2_(-1),
      coord_{UniPoly::zero(line.field()), UniPoly::zero(line.field()), UniPoly::zero(line.field())} {
  for (int i = 0; i < 3; ++i) {
    if (i == pivot_) continue;
    (r1_ < 0 ? r1_ : r2_) = i;
  }
  const PrimeField& k = line.field();
  const auto& c = line.coeffs();
  coord_[static_cast<std::size_t>(r1_)] = UniPoly::constant(k, 1);
  coord_[static_cast<std::size_t>(r2_)] = UniPoly::t(k);
  std::int64_t s = k.neg(k.inv(c[static_cast<std::size_t>(pivot_)]));
  coord_[static_cast<std::size_t>(pivot_)] =
      UniPoly(k, {k.mul(s, c[static_cast<std::size_t>(r1_)]), k.mul(s, c[static_cast<std::size_t>(r2_)])});
}

UniPoly LineChart::restrict_linear(const LinearForm& f) const {
  const PrimeField& k = line_.field();
  UniPoly r = UniPoly::zero(k);
  for (int i = 0; i < 3; ++i)
    r = r + coord_[static_cast<std::size_t>(i)].scaled(f.coeffs()[static_cast<std::size_t>(i)]);
  return r;
}

UniPoly LineChart::restrict_form(const HomForm& f) const {
  const PrimeField& k = line_.field();
  UniPoly out = UniPoly::zero(k);
  for (const auto& [e, c] : f.terms()) {
    UniPoly term = UniPoly::constant(k, c);
    int ez = f.degree() - e.first - e.second;
    for (int n = 0; n < e.first; ++n) term = term * coord_[0];
    for (int n = 0; n < e.second; ++n) term = term * coord_[1];
    for (int n = 0; n < ez; ++n) term = term * coord_[2];
    out = out + term;
  }
  return out;
}

ProjPoint LineChart::point_at(std::int64_t t) const {
  std::array<std::int64_t, 3> v;
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = coord_[static_cast<std::size_t>(i)].eval(t);
  return normalize_point(line_.field(), v);
}

ProjPoint LineChart::point_at_infinity() const {
  const PrimeField& k = line_.field();
  const auto& c = line_.coeffs();
  std::array<std::int64_t, 3> v = {0, 0, 0};
  v[static_cast<std::size_t>(r2_)] = 1;
  v[static_cast<std::size_t>(pivot_)] =
      k.neg(k.mul(k.inv(c[static_cast<std::size_t>(pivot_)]), c[static_cast<std::size_t>(r2_)]));
  return normalize_point(k, v);
}

std::pair<int, UniPoly> restrict_to_line(const HomForm& f, const LinearForm& l) {
  if (f.is_zero()) throw std::invalid_argument("cannot restrict the zero form");
  LineChart chart(l);
  // Peel off copies of l by dividing the restricted binary form: working with
  // the chart directly, F = l^order * G with G|_l != 0, and the returned
  // polynomial is G along the chart. Division is done on the form itself.
  HomForm work = f;
  int order = 0;
  for (;;) {
    UniPoly r = chart.restrict_form(work);
    // l divides work iff the restriction is identically zero.
    if (!r.is_zero()) return {order, r};
    // Divide out one copy of l: synthetic division in the pivot variable.
    const PrimeField& k = f.field();
    int pv = l.pivot();
    // Represent work as a polynomial in the pivot variable with binary-form
    // coefficients in the remaining variables, divide by l = a*v - (-rest).
    // We perform the division monomial-by-monomial using a map copy.
    HomForm quotient(k, work.degree() - 1);
    HomForm rem = work;
    std::int64_t ainv = k.inv(l.coeffs()[static_cast<std::size_t>(pv)]);
    // Iterate from the highest pivot exponent down.
    for (;;) {
      int best = -1;
      std::pair<int, int> best_key{0, 0};
      std::int64_t best_c = 0;
      for (const auto& [e, c] : rem.terms()) {
        int pe;
        if (pv == 0) pe = e.first;
        else if (pv == 1) pe = e.second;
        else pe = rem.degree() - e.first - e.second;
        if (pe > best) { best = pe; best_key = e; best_c = c; }
      }
      if (best <= 0) break;
      // monomial = best_c * x^i y^j z^k with pivot exponent best; divide by l.
      int i = best_key.first, j = best_key.second;
      int kz = rem.degree() - i - j;
      int qi = i, qj = j, qk = kz;
      if (pv == 0) --qi; else if (pv == 1) --qj; else --qk;
      std::int64_t qc = k.mul(best_c, ainv);
      quotient.add_term(qi, qj, qc);
      // rem -= l * (qc * monomial/pivot)
      HomForm mono(k, rem.degree() - 1);
      mono.add_term(qi, qj, qc);
      HomForm prod = HomForm::from_linear(l) * mono;
      for (const auto& [e, c] : prod.terms()) rem.add_term(e.first, e.second, k.neg(c));
    }
    if (!rem.is_zero()) throw std::logic_error("division by vanishing line failed");
    work = quotient;
    ++order;
    if (work.is_zero()) throw std::logic_error("form reduced to zero while dividing");
  }
}

std::array<std::int64_t, 3> h_form(int j) {
  if (j < 1 || j > 8) throw std::invalid_argument("family index out of range");
  int b = j - 1;
  return {(b >> 2) & 1, (b >> 1) & 1, b & 1};
}

LineArrangement::LineArrangement(PrimeField k, std::array<std::int64_t, 3> l1,
                                 std::array<std::int64_t, 3> l2)
    : k_(k), l1_(l1), l2_(l2) {}

LineArrangement LineArrangement::build(PrimeField k, std::array<std::int64_t, 3> l1,
                                       std::array<std::int64_t, 3> l2) {
  for (auto triple : {l1, l2}) {
    for (auto c : triple) {
      std::int64_t r = k.reduce(c);
      if (r == 0 || r == k.p() - 1)
        throw ConstraintError("line coefficients must avoid 0 and -1 mod p");
    }
  }
  std::array<std::int64_t, 3> l1r, l2r;
  for (int i = 0; i < 3; ++i) {
    l1r[static_cast<std::size_t>(i)] = k.reduce(l1[static_cast<std::size_t>(i)]);
    l2r[static_cast<std::size_t>(i)] = k.reduce(l2[static_cast<std::size_t>(i)]);
  }
  LineArrangement arr(k, l1r, l2r);
  arr.lines_.push_back({LineRole::AxisX, 0, LinearForm(k, {1, 0, 0}), "x"});
  arr.lines_.push_back({LineRole::AxisY, 0, LinearForm(k, {0, 1, 0}), "y"});
  arr.lines_.push_back({LineRole::AxisZ, 0, LinearForm(k, {0, 0, 1}), "z"});
  for (int i = 1; i <= 2; ++i) {
    auto base = i == 1 ? l1r : l2r;
    for (int j = 1; j <= 8; ++j) {
      auto h = h_form(j);
      std::array<std::int64_t, 3> c;
      for (int n = 0; n < 3; ++n)
        c[static_cast<std::size_t>(n)] =
            k.add(base[static_cast<std::size_t>(n)], h[static_cast<std::size_t>(n)]);
      arr.lines_.push_back({i == 1 ? LineRole::Family1 : LineRole::Family2, j, LinearForm(k, c),
                            "l" + std::to_string(i) + "+h" + std::to_string(j)});
    }
  }
  return arr;
}

const ArrangementLine& LineArrangement::axis(LineRole r) const {
  for (const auto& l : lines_)
    if (l.role == r) return l;
  throw std::logic_error("axis not found");
}

const ArrangementLine& LineArrangement::family_line(int i, int j) const {
  LineRole role = i == 1 ? LineRole::Family1 : LineRole::Family2;
  for (const auto& l : lines_)
    if (l.role == role && l.j == j) return l;
  throw std::invalid_argument("family line not found");
}

bool check_condition_i(const LineArrangement& arr) {
  const auto& ls = arr.lines();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      if (ls[i].form.same_line(ls[j].form)) return false;
  return true;
}

bool check_condition_ii_iii(const LineArrangement& arr, LineRole axis_role) {
  if (axis_role != LineRole::AxisX && axis_role != LineRole::AxisY)
    throw std::invalid_argument("axis must be the x-line or the y-line");
  const LinearForm& axis = arr.axis(axis_role).form;
  for (int j = 1; j <= 8; ++j) {
    const LinearForm& a = arr.family_line(1, j).form;
    for (int jp = 1; jp <= 8; ++jp) {
      const LinearForm& b = arr.family_line(2, jp).form;
      if (a.same_line(axis) || b.same_line(axis)) return false;
      if (a.same_line(b)) return false;  // common line meets the axis
      ProjPoint p = intersect_lines(a, b);
      if (axis.eval(p) == 0) return false;
    }
  }
  return true;
}

bool check_condition_primed(const LineArrangement& arr, PrimedVariant v) {
  const PrimeField& k = arr.field();
  // Projective pairs [(c_i+e):(d_i+e')] for variant II, [(b_i+e):(d_i+e')]
  // for variant III; four per family, over (e,e') in {0,1}^2.
  auto pairs_for = [&](int fam) {
    auto base = arr.family_coeffs(fam);
    std::int64_t first = v == PrimedVariant::II ? base[1] : base[0];
    std::int64_t second = base[2];
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (int e1 = 0; e1 <= 1; ++e1)
      for (int e2 = 0; e2 <= 1; ++e2)
        out.emplace_back(k.add(first, e1), k.add(second, e2));
    return out;
  };
  auto p1 = pairs_for(1);
  auto p2 = pairs_for(2);
  for (const auto& pr : p1)
    if (pr.first == 0 && pr.second == 0) return false;  // family line equals the axis
  for (const auto& pr : p2)
    if (pr.first == 0 && pr.second == 0) return false;
  for (const auto& a : p1)
    for (const auto& b : p2)
      if (k.sub(k.mul(a.first, b.second), k.mul(b.first, a.second)) == 0) return false;
  return true;
}

} // namespace qcert
