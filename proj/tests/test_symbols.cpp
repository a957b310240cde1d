#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcert/certifier.hpp"
#include "qcert/rng.hpp"
#include "qcert/symbols.hpp"

using namespace qcert;

namespace {

UniPoly random_nonzero_poly(PrimeField k, int max_deg, SplitMix64& rng) {
  for (;;) {
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg + 1)));
    std::vector<std::int64_t> c;
    for (int i = 0; i <= d; ++i) c.push_back(rng.range(0, k.p() - 1));
    UniPoly f(k, c);
    if (!f.is_zero()) return f;
  }
}

LineFunction random_line_fn(PrimeField k, SplitMix64& rng, int max_deg = 4) {
  LineFunction f(k, rng.range(1, k.p() - 1));
  UniPoly num = random_nonzero_poly(k, max_deg, rng);
  UniPoly den = random_nonzero_poly(k, max_deg, rng);
  return f * LineFunction::from_poly(num) * LineFunction::from_poly(den, -1);
}

LinearForm random_form(PrimeField k, SplitMix64& rng) {
  for (;;) {
    std::array<std::int64_t, 3> c = {rng.range(0, k.p() - 1), rng.range(0, k.p() - 1),
                                     rng.range(0, k.p() - 1)};
    if (c[0] != 0 || c[1] != 0 || c[2] != 0) return LinearForm(k, c);
  }
}

/// Degree-zero unit at the divisor: random forms away from the line, balanced
/// by a line also away from it.
PlaneFunction random_unit_at(PrimeField k, const LinearForm& line, SplitMix64& rng) {
  PlaneFunction u(k, rng.range(1, k.p() - 1));
  int nfactors = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < nfactors; ++i) {
    LinearForm f = random_form(k, rng);
    if (f.same_line(line)) continue;
    u.mul_form(f, static_cast<int>(rng.range(-2, 2)));
  }
  int total = u.divisor_degree();
  for (;;) {
    LinearForm bal = random_form(k, rng);
    if (bal.same_line(line)) continue;
    u.mul_form(bal, -total);
    break;
  }
  REQUIRE(u.divisor_degree() == 0);
  REQUIRE(u.valuation(line) == 0);
  return u;
}

bool symbol_trivial(const LineSymbol& s) {
  for (const auto& e : s.entries)
    if (e.trivial_class()) return true;
  return false;
}

bool same_symbol_class(const LineSymbol& a, const LineSymbol& b) {
  if (a.entries.size() != b.entries.size()) return false;
  if (a.entries.size() == 1) return a.entries[0].same_class(b.entries[0]);
  // unordered comparison for 2-symbols
  return (a.entries[0].same_class(b.entries[0]) && a.entries[1].same_class(b.entries[1])) ||
         (a.entries[0].same_class(b.entries[1]) && a.entries[1].same_class(b.entries[0]));
}

} // namespace

TEST_CASE("valuation read-offs") {
  PrimeField k(13);
  DefiningFunctions fns = build_functions({13, 2, {1, 1, 2}, {3, 3, 1}});
  LinearForm x(k, {1, 0, 0}), y(k, {0, 1, 0}), z(k, {0, 0, 1});
  CHECK(valuation(fns.f, PlaneDivisor{x}) == 1);
  CHECK(valuation(fns.f, PlaneDivisor{z}) == 0);
  CHECK(valuation(fns.g1, PlaneDivisor{y}) == -8);
  CHECK(valuation(fns.g2, PlaneDivisor{z}) == -8);
  CHECK(valuation(fns.g1, PlaneDivisor{fns.arrangement.family_line(1, 3).form}) == 1);
}

TEST_CASE("residue of (a, x/z) at x=0 is the class of a") {
  PrimeField k(13);
  LinearForm x(k, {1, 0, 0}), z(k, {0, 0, 1});
  PlaneFunction f(k);
  f.mul_form(x, 1);
  f.mul_form(z, -1);
  PlaneSymbol s{{PlaneFunction::constant_fn(k, 2), f}};
  LineSymbol r = residue(s, PlaneDivisor{x});
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].same_class(LineFunction::constant_fn(k, 2)));
  CHECK_FALSE(r.entries[0].trivial_class());

  // with a square constant instead, the residue class is trivial
  PlaneSymbol s4{{PlaneFunction::constant_fn(k, 4), f}};
  CHECK(residue(s4, PlaneDivisor{x}).entries[0].trivial_class());
}

TEST_CASE("residue of a symbol of units is zero") {
  PrimeField k(13);
  SplitMix64 rng(17);
  LinearForm line(k, {1, 1, 2});
  for (int trial = 0; trial < 50; ++trial) {
    PlaneSymbol s{{random_unit_at(k, line, rng), random_unit_at(k, line, rng),
                   random_unit_at(k, line, rng)}};
    ResidueComputation d = residue_detail(s, PlaneDivisor{line});
    CHECK(d.expansion_terms == 0);
    CHECK(is_zero_H2_line(d.symbol));
  }
}

TEST_CASE("reference construction: residue table cases") {
  PrimeField k(13);
  DefiningFunctions fns = build_functions({13, 2, {1, 1, 2}, {3, 3, 1}});
  PlaneFunction a = PlaneFunction::constant_fn(k, 2);
  LinearForm x(k, {1, 0, 0}), y(k, {0, 1, 0}), z(k, {0, 0, 1});

  // A_y: the g2 residue vanishes via a square restriction
  ResidueComputation ay = residue_detail(PlaneSymbol{{a, fns.f, fns.g2}}, PlaneDivisor{y});
  CHECK(ay.square_killed);
  CHECK(is_zero_H2_line(ay.symbol));

  // A_x: both residues vanish via square restrictions
  for (const PlaneFunction* g : {&fns.g1, &fns.g2}) {
    ResidueComputation ax = residue_detail(PlaneSymbol{{a, fns.f, *g}}, PlaneDivisor{x});
    CHECK(ax.square_killed);
    CHECK(is_zero_H2_line(ax.symbol));
  }

  // A_z: (a, f, g1) is a symbol of units
  ResidueComputation az = residue_detail(PlaneSymbol{{a, fns.f, fns.g1}}, PlaneDivisor{z});
  CHECK(az.expansion_terms == 0);

  // B_{1,j}: nonzero residue (a, f restricted)
  for (int j = 1; j <= 8; ++j) {
    LineSymbol r = residue(PlaneSymbol{{a, fns.f, fns.g1}},
                           PlaneDivisor{fns.arrangement.family_line(1, j).form});
    CHECK_FALSE(is_zero_H2_line(r));
    CHECK(second_residue_witness(r).has_value());
  }
}

TEST_CASE("is_zero_H1 examples") {
  PrimeField k(13);
  UniPoly t = UniPoly::t(k);
  CHECK(is_zero_H1(FiniteClass{t, UniPoly::constant(k, 4)}));
  CHECK_FALSE(is_zero_H1(FiniteClass{t, UniPoly::constant(k, 2)}));
  ExtensionField e2 = ExtensionField::canonical(k, 2);
  CHECK(is_zero_H1(FiniteClass{e2.modulus(), UniPoly::constant(k, 2)}));  // parity rule
  CHECK_THROWS_AS(is_zero_H1(FiniteClass{t, UniPoly::zero(k)}), std::invalid_argument);
}

TEST_CASE("is_zero_H2_line examples") {
  PrimeField k(13);
  LineSymbol consts{{LineFunction::constant_fn(k, 3), LineFunction::constant_fn(k, 5)}};
  CHECK(is_zero_H2_line(consts));

  LineSymbol at{{LineFunction::constant_fn(k, 2), LineFunction::from_poly(UniPoly::t(k))}};
  CHECK_FALSE(is_zero_H2_line(at));

  UniPoly t = UniPoly::t(k);
  LineSymbol at2{{LineFunction::constant_fn(k, 2), LineFunction::from_poly(t * t)}};
  CHECK(is_zero_H2_line(at2));
}

TEST_CASE("second_residue_witness picks the first support point") {
  PrimeField k(13);
  UniPoly t = UniPoly::t(k);
  UniPoly tm1(k, {-1, 1});
  LineSymbol s{{LineFunction::constant_fn(k, 2), LineFunction::from_poly(t * tm1)}};
  auto w = second_residue_witness(s);
  REQUIRE(w.has_value());
  CHECK_FALSE(w->infinite);
  CHECK(w->pi == t);  // t comes before t-1 in (degree, coefficient) order

  LineSymbol consts{{LineFunction::constant_fn(k, 2), LineFunction::constant_fn(k, 5)}};
  CHECK_FALSE(second_residue_witness(consts).has_value());
}

TEST_CASE("witness exists exactly when the class is nonzero (corpus of 200)") {
  PrimeField k(13);
  SplitMix64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    LineSymbol s{{random_line_fn(k, rng), random_line_fn(k, rng)}};
    CHECK(second_residue_witness(s).has_value() == !is_zero_H2_line(s));
  }
}

TEST_CASE("reciprocity: Steinberg symbol and constants") {
  PrimeField k5(5);
  UniPoly t5 = UniPoly::t(k5);
  UniPoly onemt(k5, {1, -1});
  CHECK(reciprocity_check(LineSymbol{{LineFunction::from_poly(t5), LineFunction::from_poly(onemt)}}));

  PrimeField k(13);
  SplitMix64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    LineSymbol s{{LineFunction::constant_fn(k, 2), random_line_fn(k, rng)}};
    CHECK(reciprocity_check(s));
  }
}

TEST_CASE("reciprocity holds on 1000 random 2-symbols over F_13") {
  PrimeField k(13);
  SplitMix64 rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    LineSymbol s{{random_line_fn(k, rng), random_line_fn(k, rng)}};
    CHECK(reciprocity_check(s));
  }
}

namespace {

/// Independent reduction of a unit at a finite place: constant times the
/// product of factor residues, computed directly with modular arithmetic.
UniPoly direct_reduction(const LineFunction& f, const UniPoly& pi) {
  const PrimeField& k = f.field();
  UniPoly acc = UniPoly::constant(k, f.constant());
  for (const auto& [key, e] : f.factors()) {
    UniPoly rq = mod(UniPoly(k, key), pi);
    REQUIRE_FALSE(rq.is_zero());
    UniPoly re = e >= 0 ? pow_mod(rq, static_cast<unsigned __int128>(e), pi)
                        : pow_mod(inv_mod(rq, pi), static_cast<unsigned __int128>(-e), pi);
    acc = mod(acc * re, pi);
  }
  return acc;
}

} // namespace

TEST_CASE("prres rule 1 at the line tier: residue(alpha cup (b)) = m * alpha_0") {
  PrimeField k(13);
  SplitMix64 rng(41);
  int done = 0;
  while (done < 1000) {
    UniPoly pi = random_nonzero_poly(k, 2, rng);
    if (pi.degree() < 1) continue;
    pi = factor_univariate(pi)[0].factor;
    LinePlace place{false, pi};
    // alpha: a unit at pi
    LineFunction alpha = random_line_fn(k, rng, 2);
    int va = valuation(alpha, place);
    if (va != 0) alpha = alpha * LineFunction::from_poly(pi, -va);
    REQUIRE(valuation(alpha, place) == 0);
    int m = static_cast<int>(rng.range(-3, 3));
    LineFunction b = LineFunction::constant_fn(k, rng.range(1, k.p() - 1)) *
                     LineFunction::from_poly(pi, m);
    FiniteClass r = residue(LineSymbol{{alpha, b}}, place);
    // expected class: the reduction of alpha to the m-th power
    UniPoly alpha0 = direct_reduction(alpha, pi);
    UniPoly expect = m >= 0 ? pow_mod(alpha0, static_cast<unsigned __int128>(m), pi)
                            : pow_mod(inv_mod(alpha0, pi), static_cast<unsigned __int128>(-m), pi);
    UniPoly prod = mod(r.value * expect, pi);
    CHECK(is_zero_H1(FiniteClass{pi, prod}));  // same square class
    ++done;
  }
}

TEST_CASE("prres rule 2 at the line tier: unit with square reduction kills the residue") {
  PrimeField k(13);
  SplitMix64 rng(43);
  int done = 0;
  while (done < 1000) {
    UniPoly pi = random_nonzero_poly(k, 3, rng);
    if (pi.degree() < 1) continue;
    pi = factor_univariate(pi)[0].factor;
    LinePlace place{false, pi};
    // b = r^2 + pi*s: a unit whose reduction is the square of r
    UniPoly r = random_nonzero_poly(k, pi.degree() - 1 >= 0 ? pi.degree() - 1 : 0, rng);
    if (mod(r, pi).is_zero()) continue;
    UniPoly s = random_nonzero_poly(k, 2, rng);
    UniPoly bpoly = r * r + pi * s;
    if (bpoly.is_zero() || mod(bpoly, pi).is_zero()) continue;
    LineFunction b = LineFunction::from_poly(bpoly);
    LineFunction alpha = random_line_fn(k, rng);
    FiniteClass res = residue(LineSymbol{{alpha, b}}, place);
    CHECK(is_zero_H1(res));
    ++done;
  }
}

TEST_CASE("prres rule 1 at the plane tier") {
  PrimeField k(13);
  SplitMix64 rng(47);
  int done = 0;
  while (done < 1000) {
    LinearForm line = random_form(k, rng);
    PlaneDivisor div{line};
    int alen = 1 + static_cast<int>(rng.below(2));
    std::vector<PlaneFunction> alpha;
    for (int i = 0; i < alen; ++i) alpha.push_back(random_unit_at(k, line, rng));
    int m = static_cast<int>(rng.range(-2, 2));
    PlaneFunction b = random_unit_at(k, line, rng) * div.uniformizer().pow(m);
    PlaneSymbol s{alpha};
    s.entries.push_back(b);
    LineSymbol r = residue(s, div);

    LineChart chart(line);
    LineSymbol expected;
    for (const auto& u : alpha)
      expected.entries.push_back(restrict_function(u, chart).class_reduced());
    if (m % 2 == 0 || symbol_trivial(expected)) {
      for (const auto& e : r.entries) CHECK(e.trivial_class());
    } else {
      CHECK(same_symbol_class(r, expected));
    }
    ++done;
  }
}

TEST_CASE("prres rule 2 at the plane tier") {
  PrimeField k(13);
  SplitMix64 rng(53);
  int done = 0;
  while (done < 1000) {
    LinearForm line = random_form(k, rng);
    PlaneDivisor div{line};
    // b: the square of a unit, times a square constant
    PlaneFunction broot = random_unit_at(k, line, rng);
    PlaneFunction b = broot * broot;
    std::int64_t csq = rng.range(1, k.p() - 1);
    b.mul_constant(k.mul(csq, csq));
    // alpha: arbitrary degree-zero entries, possibly ramified at the line
    auto ramified = [&] {
      PlaneFunction u = random_unit_at(k, line, rng);
      return u * div.uniformizer().pow(static_cast<int>(rng.range(-2, 2)));
    };
    PlaneSymbol s{{ramified(), ramified(), b}};
    LineSymbol r = residue(s, div);
    CHECK(is_zero_H2_line(r));
    ++done;
  }
}

TEST_CASE("square-class well-definedness and entry symmetry") {
  PrimeField k(13);
  SplitMix64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    LineSymbol s{{random_line_fn(k, rng), random_line_fn(k, rng)}};
    bool z = is_zero_H2_line(s);

    LineSymbol swapped{{s.entries[1], s.entries[0]}};
    CHECK(is_zero_H2_line(swapped) == z);

    UniPoly sq = random_nonzero_poly(k, 2, rng);
    std::int64_t c = rng.range(1, k.p() - 1);
    LineSymbol scaled = s;
    scaled.entries[0] = scaled.entries[0] * LineFunction::from_poly(sq * sq);
    scaled.entries[0].mul_constant(k.mul(c, c));
    CHECK(is_zero_H2_line(scaled) == z);
    CHECK(second_residue_witness(scaled).has_value() == !z);
  }
}
