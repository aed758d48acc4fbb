#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/families.hpp"
#include "skewgroup/mat2.hpp"

using namespace skewgroup;

TEST_CASE("determinant, trace, inverse") {
  const Field q = Field::rationals();
  const Mat2 id = Mat2::identity(q);
  CHECK(id.det() == q.one());
  CHECK(id.inv() == id);
  const Mat2 d = Mat2::diag(q.from_int(2), q.from_int(3));
  CHECK(d.inv() == Mat2::diag(q.from_rational(Rational(1, 2)), q.from_rational(Rational(1, 3))));
  const Mat2 u(q.one(), q.one(), q.zero(), q.one());
  CHECK(u.inv() == Mat2(q.one(), -q.one(), q.zero(), q.one()));
  CHECK_THROWS_AS(Mat2(q.one(), q.one(), q.one(), q.one()).inv(), Error);

  const Family s4 = example_s4();
  const Mat2& m2 = s4.config.matrices()[1];
  const Mat2& m3 = s4.config.matrices()[2];
  CHECK(commutator(m2, m3).det() == s4.config.field().from_int(2));
}

TEST_CASE("projective normalization") {
  const Field q = Field::rationals();
  CHECK(ProjElem::normalize(Mat2::diag(q.from_int(2), q.from_int(2))).is_identity());
  const ProjElem anti = ProjElem::normalize(Mat2(q.zero(), q.from_int(4), q.from_int(6), q.zero()));
  CHECK(anti.rep() == Mat2(q.zero(), q.one(), q.from_rational(Rational(3, 2)), q.zero()));
  CHECK(ProjElem::normalize(Mat2::diag(q.from_int(3), q.from_int(5))).rep() ==
        Mat2::diag(q.one(), q.from_rational(Rational(5, 3))));
  CHECK_THROWS_AS(ProjElem::normalize(Mat2::zero(q)), Error);
  CHECK_THROWS_AS(ProjElem::normalize(Mat2(q.one(), q.one(), q.one(), q.one())), Error);
}

TEST_CASE("projective group law and orders") {
  const Field q = Field::rationals();
  const ProjElem a = ProjElem::normalize(Mat2::diag(q.one(), q.from_int(2)));
  const ProjElem b = ProjElem::normalize(Mat2::diag(q.one(), q.from_int(3)));
  CHECK((a * b).rep() == Mat2::diag(q.one(), q.from_int(6)));
  CHECK((a * a.inv()).is_identity());
  CHECK(ProjElem::identity(q).order() == 1u);
  CHECK(!a.order());

  const Field f5 = Field::prime(5);
  CHECK(ProjElem::normalize(Mat2(f5.one(), f5.one(), f5.zero(), f5.one())).order() == 5u);
  const Field z6 = Field::cyclotomic(6);
  CHECK(ProjElem::normalize(Mat2::diag(z6.one(), z6.gen())).order() == 6u);

  const Family a5 = example_a5();
  const ProjElem r = ProjElem::normalize(a5.config.matrices()[1]);
  const ProjElem s = ProjElem::normalize(a5.config.matrices()[2]);
  CHECK((r * s).order() == 2u);
}

TEST_CASE("moebius action") {
  const Field q = Field::rationals();
  const ProjElem swap = ProjElem::normalize(Mat2(q.zero(), q.one(), q.one(), q.zero()));
  const FieldElement t = q.from_int(7);
  CHECK(swap.apply(ProjPoint::affine(t)) == ProjPoint::affine(t.inv()));
  CHECK(ProjElem::identity(q).apply(ProjPoint::affine(t)) == ProjPoint::affine(t));

  const Family pc = prop_case2(3);
  const Mat2& m2 = pc.config.matrices()[1];
  const FieldElement shift = m2(0, 1) / m2(0, 0);
  const Field& f = pc.config.field();
  const FieldElement x = f.gen() + f.one();
  CHECK(ProjElem::normalize(m2).apply(ProjPoint::affine(x)) == ProjPoint::affine(x + shift));
  CHECK(ProjPoint::affine(q.zero()) == ProjPoint(q.zero(), q.one()));
  CHECK(ProjPoint::infinity(q) == ProjPoint(q.one(), q.zero()));
}

TEST_CASE("eigenvectors") {
  const Field q = Field::rationals();
  const EigenReport d = eigenvectors(Mat2::diag(q.from_int(2), q.from_int(3)));
  REQUIRE(d.pairs.size() == 2);
  bool saw_e1 = false, saw_e2 = false;
  for (const auto& p : d.pairs) {
    if (p.line == ProjPoint::infinity(q)) saw_e1 = p.value == q.from_int(2);
    if (p.line == ProjPoint::affine(q.zero())) saw_e2 = p.value == q.from_int(3);
  }
  CHECK(saw_e1);
  CHECK(saw_e2);

  const EigenReport j = eigenvectors(Mat2(q.from_int(2), q.one(), q.zero(), q.from_int(2)));
  REQUIRE(j.pairs.size() == 1);
  CHECK(j.pairs[0].line == ProjPoint::infinity(q));
  CHECK(j.pairs[0].value == q.from_int(2));

  CHECK(eigenvectors(Mat2(q.zero(), q.one(), -q.one(), q.zero())).extension_required);
  CHECK(eigenvectors(Mat2::identity(q)).scalar);
}

TEST_CASE("random matrix properties") {
  std::mt19937 rng(11);
  const Field fields[] = {Field::prime(7), Field::cyclotomic(12),
                          Field::make(FieldSpec::extension(FieldSpec::prime(3), std::vector<Rational>{1, 0, 1}))};
  for (const Field& f : fields) {
    for (int n = 0; n < 100; ++n) {
      const Mat2 a = corpus::random_invertible(f, rng);
      const Mat2 b = corpus::random_invertible(f, rng);
      const Mat2 c = corpus::random_invertible(f, rng);
      CHECK((a * b).det() == a.det() * b.det());
      CHECK(commutator(a, b).trace().is_zero());
      CHECK(a * a.inv() == Mat2::identity(f));

      FieldElement lambda = corpus::random_element(f, rng);
      if (lambda.is_zero()) lambda = f.one();
      const Mat2 scaled(lambda * a(0, 0), lambda * a(0, 1), lambda * a(1, 0), lambda * a(1, 1));
      CHECK(ProjElem::normalize(scaled) == ProjElem::normalize(a));

      const ProjElem g = ProjElem::normalize(a), h = ProjElem::normalize(b);
      const ProjPoint p = ProjElem::normalize(c).apply(ProjPoint::affine(f.zero()));
      CHECK((g * h).apply(p) == g.apply(h.apply(p)));

      const EigenReport e = eigenvectors(a);
      for (const auto& pair : e.pairs) {
        const FieldElement x = pair.line.x(), y = pair.line.y();
        CHECK(a(0, 0) * x + a(0, 1) * y == pair.value * x);
        CHECK(a(1, 0) * x + a(1, 1) * y == pair.value * y);
      }

      const auto ord = g.order(24);
      if (ord) {
        CHECK(g.pow(*ord).is_identity());
        for (std::uint64_t k = 1; k < *ord; ++k) CHECK(!g.pow(k).is_identity());
      }
    }
  }
}
