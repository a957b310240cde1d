#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcert/geometry.hpp"
#include "qcert/rng.hpp"

using namespace qcert;

namespace {

std::array<std::int64_t, 3> random_coeffs(PrimeField k, SplitMix64& rng) {
  auto one = [&]() -> std::int64_t {
    for (;;) {
      std::int64_t c = rng.range(1, k.p() - 1);
      if (c != k.p() - 1 || k.p() == 3) return k.p() == 3 ? 1 : c;
    }
  };
  return {one(), one(), one()};
}

} // namespace

TEST_CASE("linear form canonicalization and evaluation") {
  PrimeField k(13);
  LinearForm a(k, {2, 2, 4});
  LinearForm b(k, {1, 1, 2});
  CHECK(a.same_line(b));
  CHECK_FALSE(a.same_line(LinearForm(k, {1, 1, 3})));
  CHECK_THROWS_AS(LinearForm(k, {0, 0, 0}), std::invalid_argument);
  CHECK(b.eval(ProjPoint{{0, 11, 1}}) == 0);  // [0:-2:1] lies on x+y+2z
}

TEST_CASE("intersect_lines") {
  PrimeField k(13);
  LinearForm x(k, {1, 0, 0}), y(k, {0, 1, 0});
  CHECK(intersect_lines(x, y) == ProjPoint{{0, 0, 1}});
  LinearForm l1(k, {1, 1, 2});
  CHECK(intersect_lines(x, l1) == ProjPoint{{0, 11, 1}});  // [0:-2:1]
  LinearForm h(k, {0, 1, 0});
  CHECK(intersect_lines(x, h) == ProjPoint{{0, 0, 1}});
  CHECK_THROWS_WITH_AS(intersect_lines(l1, LinearForm(k, {2, 2, 4})), "identical lines",
                       std::invalid_argument);
}

TEST_CASE("intersection point lies on both lines") {
  PrimeField k(17);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    LinearForm a(k, {rng.range(0, 16), rng.range(0, 16), rng.range(1, 16)});
    LinearForm b(k, {rng.range(1, 16), rng.range(0, 16), rng.range(0, 16)});
    if (a.same_line(b)) continue;
    ProjPoint p = intersect_lines(a, b);
    CHECK(a.eval(p) == 0);
    CHECK(b.eval(p) == 0);
  }
}

TEST_CASE("restrict_to_line removes the maximal power of the line") {
  PrimeField k(13);
  LinearForm x(k, {1, 0, 0}), y(k, {0, 1, 0});
  HomForm fx = HomForm::from_linear(x);
  HomForm fy = HomForm::from_linear(y);

  auto [order_xy, rest_xy] = restrict_to_line(fx * fy, x);
  CHECK(order_xy == 1);
  CHECK_FALSE(rest_xy.is_zero());

  auto [order_x2, rest_x2] = restrict_to_line(fx * fx, y);
  CHECK(order_x2 == 0);
  REQUIRE(rest_x2.degree() == 0);
  CHECK(k.is_square(rest_x2.coeff(0)));

  CHECK_THROWS_AS(restrict_to_line(HomForm(k, 2), x), std::invalid_argument);
}

TEST_CASE("restriction of the family product to x = 0 is a perfect square") {
  PrimeField k(13);
  LineArrangement arr = LineArrangement::build(k, {1, 1, 2}, {3, 3, 1});
  HomForm prod(k, 0);
  prod.add_term(0, 0, 1);
  for (int j = 1; j <= 8; ++j) prod = prod * HomForm::from_linear(arr.family_line(1, j).form);
  auto [order, rest] = restrict_to_line(prod, arr.axis(LineRole::AxisX).form);
  CHECK(order == 0);
  auto root = poly_sqrt(rest);
  REQUIRE(root.has_value());
  CHECK(*root * *root == rest);
}

TEST_CASE("restriction re-evaluates to zero exactly when the order is positive") {
  PrimeField k(13);
  SplitMix64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    LinearForm l(k, {rng.range(1, 12), rng.range(0, 12), rng.range(0, 12)});
    LinearForm other(k, {rng.range(0, 12), rng.range(1, 12), rng.range(0, 12)});
    if (l.same_line(other)) continue;
    int e = static_cast<int>(rng.below(3));
    HomForm f(k, 0);
    f.add_term(0, 0, 1);
    for (int i = 0; i < e; ++i) f = f * HomForm::from_linear(l);
    f = f * HomForm::from_linear(other);
    auto [order, rest] = restrict_to_line(f, l);
    CHECK(order == e);
    CHECK_FALSE(rest.is_zero());
    LineChart chart(l);
    for (std::int64_t t = 0; t < 13; ++t) {
      ProjPoint pt = chart.point_at(t);
      std::int64_t full = f.eval(pt);
      CHECK((full == 0) == (order > 0 || rest.eval(t) == 0));
    }
  }
}

TEST_CASE("arrangement construction and labels") {
  PrimeField k(13);
  LineArrangement arr = LineArrangement::build(k, {1, 1, 2}, {3, 3, 1});
  CHECK(arr.lines().size() == 19);
  CHECK(arr.family_line(1, 1).form.same_line(LinearForm(k, {1, 1, 2})));  // j=1 is h=0
  CHECK(arr.family_line(2, 8).form.same_line(LinearForm(k, {4, 4, 2})));
  CHECK(h_form(1) == std::array<std::int64_t, 3>{0, 0, 0});
  CHECK(h_form(2) == std::array<std::int64_t, 3>{0, 0, 1});
  CHECK(h_form(5) == std::array<std::int64_t, 3>{1, 0, 0});
  CHECK_THROWS_AS(LineArrangement::build(k, {0, 1, 2}, {3, 3, 1}), ConstraintError);
  CHECK_THROWS_AS(LineArrangement::build(k, {1, 1, 2}, {3, 12, 1}), ConstraintError);
}

TEST_CASE("condition (i)") {
  PrimeField k(13);
  CHECK(check_condition_i(LineArrangement::build(k, {1, 1, 2}, {3, 3, 1})));
  CHECK_FALSE(check_condition_i(LineArrangement::build(k, {1, 1, 2}, {1, 1, 2})));
}

TEST_CASE("conditions (ii)/(iii) on the reference arrangement") {
  PrimeField k(13);
  LineArrangement arr = LineArrangement::build(k, {1, 1, 2}, {3, 3, 1});
  CHECK(check_condition_ii_iii(arr, LineRole::AxisX));
  CHECK(check_condition_ii_iii(arr, LineRole::AxisY));
  CHECK(check_condition_primed(arr, PrimedVariant::II));
  CHECK(check_condition_primed(arr, PrimedVariant::III));

  LineArrangement bad = LineArrangement::build(k, {1, 1, 2}, {1, 1, 2});
  CHECK_FALSE(check_condition_ii_iii(bad, LineRole::AxisX));
  CHECK_FALSE(check_condition_primed(bad, PrimedVariant::II));
  CHECK_THROWS_AS(check_condition_ii_iii(arr, LineRole::AxisZ), std::invalid_argument);
}

TEST_CASE("primed checks match the direct checks: random samples per prime") {
  for (std::int64_t p : {5, 7, 13}) {
    PrimeField k(p);
    SplitMix64 rng(static_cast<std::uint64_t>(p));
    for (int trial = 0; trial < 500; ++trial) {
      LineArrangement arr = LineArrangement::build(k, random_coeffs(k, rng), random_coeffs(k, rng));
      CHECK(check_condition_primed(arr, PrimedVariant::II) ==
            check_condition_ii_iii(arr, LineRole::AxisX));
      CHECK(check_condition_primed(arr, PrimedVariant::III) ==
            check_condition_ii_iii(arr, LineRole::AxisY));
    }
  }
}

TEST_CASE("primed checks match the direct checks: full enumeration at p = 5") {
  PrimeField k(5);
  std::int64_t domain[] = {1, 2, 3};  // k* minus {-1}
  for (auto b1 : domain)
    for (auto c1 : domain)
      for (auto d1 : domain)
        for (auto b2 : domain)
          for (auto c2 : domain)
            for (auto d2 : domain) {
              LineArrangement arr = LineArrangement::build(k, {b1, c1, d1}, {b2, c2, d2});
              CHECK(check_condition_primed(arr, PrimedVariant::II) ==
                    check_condition_ii_iii(arr, LineRole::AxisX));
              CHECK(check_condition_primed(arr, PrimedVariant::III) ==
                    check_condition_ii_iii(arr, LineRole::AxisY));
            }
}

TEST_CASE("degenerate arrangement at p = 3 is handled deterministically") {
  PrimeField k(3);
  LineArrangement arr = LineArrangement::build(k, {1, 1, 1}, {1, 1, 1});
  CHECK_FALSE(check_condition_i(arr));
  bool ii = check_condition_ii_iii(arr, LineRole::AxisX);
  CHECK(ii == check_condition_ii_iii(arr, LineRole::AxisX));  // repeatable
  CHECK_FALSE(ii);
}
