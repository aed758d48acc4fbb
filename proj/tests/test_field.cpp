#include <random>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/error.hpp"
#include "skewgroup/field.hpp"

using namespace skewgroup;

namespace {

Field gaussian() { return Field::make(FieldSpec::extension(FieldSpec::rational(), std::vector<Rational>{1, 0, 1})); }
Field f25() { return Field::make(FieldSpec::extension(FieldSpec::prime(5), std::vector<Rational>{-2, 0, 1})); }
Field zeta6() { return Field::make(FieldSpec::extension(FieldSpec::rational(), std::vector<Rational>{1, -1, 1})); }

void check_axioms(const Field& f, std::uint32_t seed) {
  std::mt19937 rng(seed);
  for (int n = 0; n < 1000; ++n) {
    const FieldElement a = corpus::random_element(f, rng, 5);
    const FieldElement b = corpus::random_element(f, rng, 5);
    const FieldElement c = corpus::random_element(f, rng, 5);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a - a == f.zero());
    if (!a.is_zero()) REQUIRE(a * a.inv() == f.one());
    if (a == b) REQUIRE(a.hash() == b.hash());
  }
}

}  // namespace

TEST_CASE("field construction") {
  const Field f5 = Field::prime(5);
  CHECK(f5.characteristic() == 5);
  CHECK(f5.degree() == 1);
  CHECK(*f5.order() == 5);

  const Field qi = gaussian();
  CHECK(qi.characteristic() == 0);
  CHECK(qi.degree() == 2);
  CHECK(!qi.finite());

  const Field f = f25();
  CHECK(*f.order() == 25);

  CHECK_THROWS_AS(Field::prime(6), Error);
  try {
    Field::prime(9);
    FAIL("expected NonPrimeModulus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPrimeModulus);
  }
  try {
    Field::make(FieldSpec::extension(FieldSpec::prime(5), std::vector<Rational>{-4, 0, 1}));
    FAIL("expected ReducibleMinpoly");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleMinpoly);
  }
  CHECK_THROWS_AS(Field::make(FieldSpec::extension(FieldSpec::rational(), std::vector<Rational>{-1, 0, 1})), Error);
}

TEST_CASE("arithmetic examples") {
  const Field qi = gaussian();
  const FieldElement z = qi.gen();
  CHECK((qi.one() + z) * (qi.one() - z) == qi.from_int(2));
  CHECK((qi.one() + z).inv() == (qi.one() - z) / qi.from_int(2));

  const Field f5 = Field::prime(5);
  CHECK(f5.from_int(3) + f5.from_int(4) == f5.from_int(2));
  CHECK(f5.from_int(2).inv() == f5.from_int(3));
  CHECK(f5.one().inv() == f5.one());

  const Field z6 = zeta6();
  CHECK(z6.gen() * z6.gen() == z6.gen() - z6.one());

  CHECK_THROWS_AS(f5.zero().inv(), Error);
  CHECK_THROWS_AS(f5.one() + Field::prime(7).one(), Error);
}

TEST_CASE("parse") {
  const Field f = zeta6();
  CHECK(f.parse("z^2") == f.gen() - f.one());
  CHECK(f.parse("-1/2 + 3*z") == f.from_rational(Rational(-1, 2)) + f.from_int(3) * f.gen());
  CHECK(f.parse("(1+z)^-1") == (f.one() + f.gen()).inv());
  CHECK_THROWS_AS(f.parse("1 +"), Error);
}

TEST_CASE("sqrt") {
  const Field f = f25();
  const auto r = f.from_int(2).sqrt();
  REQUIRE(r);
  CHECK(*r * *r == f.from_int(2));
  CHECK(!Field::prime(5).from_int(3).sqrt());
  CHECK(*Field::rationals().from_int(4).sqrt() == Field::rationals().from_int(2));
  CHECK(!Field::rationals().from_int(2).sqrt());

  const Field c20 = Field::cyclotomic(20);
  const FieldElement z = c20.gen();
  const FieldElement root5 = c20.from_int(2) * (z.pow(4LL) + z.pow(16LL)) + c20.one();
  CHECK(root5 * root5 == c20.from_int(5));
  const auto s = c20.from_int(5).sqrt();
  REQUIRE(s);
  CHECK(*s * *s == c20.from_int(5));
  CHECK(z.pow(5LL) * z.pow(5LL) == -c20.one());
}

TEST_CASE("sqrt with large coefficients") {
  const Field f = Field::cyclotomic(20);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int digits : {5, 20, 40}) {
    std::vector<Rational> c;
    for (unsigned i = 0; i < f.degree(); ++i) {
      std::string s = (digit(rng) % 2) ? "-1" : "1";
      for (int k = 0; k < digits; ++k) s += static_cast<char>('0' + digit(rng));
      c.emplace_back(s);
    }
    const FieldElement y = f.from_coeffs(c) / f.from_int(7);
    const auto r = (y * y).sqrt();
    REQUIRE(r);
    CHECK((*r == y || *r == -y));
    CHECK(!(y * y * f.from_int(3)).sqrt());
  }
}

TEST_CASE("multiplicative order") {
  CHECK(zeta6().gen().mult_order(120) == 6u);
  CHECK(Field::rationals().from_int(-1).mult_order(120) == 2u);
  CHECK(!Field::rationals().from_int(2).mult_order(1000));
  CHECK(Field::cyclotomic(20).gen().mult_order(120) == 20u);
}

TEST_CASE("field axioms on random triples") {
  check_axioms(Field::prime(7), 1);
  check_axioms(f25(), 2);
  check_axioms(gaussian(), 3);
  check_axioms(Field::cyclotomic(12), 4);
}

TEST_CASE("characteristic law and Frobenius") {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    const Field f = Field::prime(p);
    CHECK(f.from_int(p).is_zero());
    for (unsigned k = 1; k < p; ++k) CHECK(!f.from_int(k).is_zero());
  }
  CHECK(!Field::rationals().from_int(5).is_zero());
  const Field f = f25();
  std::mt19937 rng(7);
  for (int n = 0; n < 200; ++n) {
    const FieldElement a = corpus::random_element(f, rng);
    CHECK(a.pow(25LL) == a);
  }
}

TEST_CASE("element enumeration is injective") {
  const Field f = f25();
  std::set<std::string> seen;
  for (std::uint64_t k = 0; k < 25; ++k) seen.insert(f.element_at(k).key());
  CHECK(seen.size() == 25);
  CHECK(f.element_at(0).is_zero());
  CHECK(f.element_at(1).is_one());
}
