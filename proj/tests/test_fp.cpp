#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcert/poly.hpp"

using namespace qcert;

TEST_CASE("prime field construction") {
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(0), std::invalid_argument);
  CHECK(PrimeField(3).p() == 3);
  CHECK(PrimeField(999983).p() == 999983);
}

TEST_CASE("is_square by Euler criterion") {
  PrimeField f13(13);
  CHECK(f13.is_square(1));
  CHECK(f13.is_square(4));
  CHECK_FALSE(f13.is_square(2));  // 2^6 = 64 = -1 mod 13
  CHECK(f13.pow(2, 6) == 12);
  CHECK_THROWS_WITH_AS(f13.is_square(0), "square class of zero undefined", std::invalid_argument);
  CHECK_THROWS_AS(f13.is_square(13), std::invalid_argument);
}

TEST_CASE("find_nonsquare is the smallest positive nonsquare") {
  CHECK(PrimeField(3).find_nonsquare() == 2);
  CHECK(PrimeField(13).find_nonsquare() == 2);
  CHECK(PrimeField(7).find_nonsquare() == 3);  // squares mod 7: {1,2,4}
  CHECK(PrimeField(7).is_square(2));
  CHECK(PrimeField(7).is_square(4));
}

TEST_CASE("square classes form Z/2") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 17}) {
    PrimeField f(p);
    std::int64_t n = f.find_nonsquare();
    for (std::int64_t e = 1; e < p; ++e)
      CHECK(f.is_square(e) != f.is_square(f.mul(e, n)));
  }
}

TEST_CASE("exactly (q-1)/2 nonzero squares, prime fields") {
  for (std::int64_t p = 3; p <= 169; ++p) {
    if (!is_prime(p)) continue;
    PrimeField f(p);
    std::int64_t squares = 0;
    for (std::int64_t e = 1; e < p; ++e)
      if (f.is_square(e)) ++squares;
    CHECK(squares == (p - 1) / 2);
  }
}

TEST_CASE("exactly (q-1)/2 nonzero squares, extension fields of order <= 169") {
  const std::pair<std::int64_t, int> cases[] = {{3, 2}, {3, 3}, {3, 4}, {5, 2},
                                                {5, 3}, {7, 2}, {11, 2}, {13, 2}};
  for (auto [p, mdeg] : cases) {
    PrimeField base(p);
    ExtensionField ext = ExtensionField::canonical(base, mdeg);
    REQUIRE(static_cast<std::int64_t>(ext.order()) <= 169);
    std::int64_t squares = 0, total = 0;
    std::int64_t span = 1;
    for (int i = 0; i < mdeg; ++i) span *= p;
    for (std::int64_t n = 1; n < span; ++n) {
      std::vector<std::int64_t> c;
      std::int64_t idx = n;
      for (int i = 0; i < mdeg; ++i) {
        c.push_back(idx % p);
        idx /= p;
      }
      UniPoly e(base, c);
      ++total;
      if (ext.is_square(e)) ++squares;
    }
    CHECK(total == span - 1);
    CHECK(squares == (span - 1) / 2);
  }
}

TEST_CASE("square_class_in_extension parity rule") {
  PrimeField f13(13);
  std::int64_t a = f13.find_nonsquare();
  CHECK(square_class_in_extension(f13, a, 2));       // (-1)^(p+1) = 1
  CHECK_FALSE(square_class_in_extension(f13, a, 3));
  CHECK(square_class_in_extension(f13, 4, 1));
  CHECK(square_class_in_extension(f13, 4, 5));
  CHECK_THROWS_AS(square_class_in_extension(f13, 0, 2), std::invalid_argument);
}

TEST_CASE("square_class_in_extension agrees with direct exponentiation, p <= 50, m <= 4") {
  for (std::int64_t p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    PrimeField base(p);
    for (int mdeg = 1; mdeg <= 4; ++mdeg) {
      ExtensionField ext = ExtensionField::canonical(base, mdeg);
      for (std::int64_t a = 1; a < p; ++a) {
        bool rule = square_class_in_extension(base, a, mdeg);
        bool direct = ext.is_square(UniPoly::constant(base, a));
        CHECK(rule == direct);
      }
    }
  }
}

TEST_CASE("deterministic square roots") {
  for (std::int64_t p : {3, 5, 13, 17, 97}) {
    PrimeField f(p);
    for (std::int64_t a = 1; a < p; ++a) {
      if (!f.is_square(a)) continue;
      std::int64_t r = f.sqrt(a);
      CHECK(f.mul(r, r) == a);
      CHECK(r <= p - r);
    }
  }
}
