#include <random>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/config.hpp"
#include "skewgroup/families.hpp"

using namespace skewgroup;

namespace {

LineConfig diagonal(const Field& f, std::vector<std::pair<long long, long long>> entries) {
  std::vector<Mat2> ms{Mat2::identity(f)};
  for (auto [a, d] : entries) ms.push_back(Mat2::diag(f.from_int(a), f.from_int(d)));
  return LineConfig(f, ms);
}

bool proportional(const Mat2& m, const ProjPoint& v) {
  const FieldElement a = m(0, 0) * v.x() + m(0, 1) * v.y();
  const FieldElement b = m(1, 0) * v.x() + m(1, 1) * v.y();
  return (a * v.y() - b * v.x()).is_zero();
}

}  // namespace

TEST_CASE("validation") {
  const Field q = Field::rationals();
  CHECK(validate(diagonal(q, {{2, 3}})).valid);

  const Mat2 m = Mat2::diag(q.from_int(2), q.from_int(3));
  const ValidationReport dup = validate(LineConfig(q, {Mat2::identity(q), m, m}));
  CHECK(!dup.valid);
  CHECK(dup.non_skew.size() == 1);

  const ValidationReport same_a = validate(diagonal(q, {{2, 3}, {2, 5}}));
  CHECK(!same_a.valid);

  const ValidationReport singular = validate(diagonal(q, {{0, 3}}));
  CHECK(!singular.valid);
  CHECK(singular.meets_zero.size() == 1);

  const ValidationReport meets_i = validate(diagonal(q, {{1, 3}}));
  CHECK(!meets_i.valid);
  CHECK(meets_i.meets_identity.size() == 1);
  CHECK_THROWS_AS(require_valid(diagonal(q, {{1, 3}})), Error);
}

TEST_CASE("line ids") {
  CHECK(LineId::parse(LineId::zero().to_string()) == LineId::zero());
  CHECK(LineId::parse(LineId::infinity().to_string()) == LineId::infinity());
  CHECK(LineId::parse(LineId::finite(3).to_string()) == LineId::finite(3));
  CHECK(LineId::parse("infinity") == LineId::infinity());
  CHECK_THROWS_AS(LineId::parse("L"), Error);
}

TEST_CASE("transversals") {
  const Field q = Field::rationals();
  const TransversalReport two = transversal_compute(diagonal(q, {{2, 3}, {5, 7}}));
  CHECK(two.exists);
  CHECK(two.witnesses.size() == 2);

  const LineConfig jordan(q, {Mat2::identity(q), Mat2(q.from_int(2), q.one(), q.zero(), q.from_int(2))});
  const TransversalReport one = transversal_compute(jordan);
  CHECK(one.exists);
  REQUIRE(one.witnesses.size() == 1);
  CHECK(one.witnesses[0] == ProjPoint::infinity(q));

  CHECK(!transversal_exists(example_s4().config));
  CHECK(!transversal_exists(example_a4().config));
  const TransversalReport a5 = transversal_compute(example_a5().config);
  CHECK(!a5.exists);
  CHECK(a5.witnesses.empty());
}

TEST_CASE("abelian prediction") {
  const Field q = Field::rationals();
  const AbelianReport diag = predict_abelian(diagonal(q, {{2, 3}, {5, 7}}));
  CHECK(diag.abelian);
  for (const auto& p : diag.pairs) {
    if (p.label != "scalar") CHECK(p.label == "simultaneously-diagonalizable");
  }

  CHECK(predict_abelian(prop_case2(3).config).abelian);
  // prop_case2 pairs only I with M2 (a scalar pair), so the Jordan case is
  // checked on two Jordan blocks sharing the eigenline [1:0].
  const Field f9 = Field::make(FieldSpec::extension(FieldSpec::prime(3), std::vector<Rational>{1, 0, 1}));
  const FieldElement z = f9.gen();
  const LineConfig two_jordan(f9, {Mat2::identity(f9), Mat2(z, f9.one(), f9.zero(), z),
                                   Mat2(z + f9.one(), f9.from_int(2), f9.zero(), z + f9.one())});
  REQUIRE(corpus::valid(two_jordan));
  const AbelianReport jordan = predict_abelian(two_jordan);
  CHECK(jordan.abelian);
  bool shared = false;
  for (const auto& p : jordan.pairs) shared |= p.label == "shared-eigenspace-nondiagonalizable";
  CHECK(shared);

  CHECK(!predict_abelian(example_a5().config).abelian);
}

TEST_CASE("witness soundness and the commutator criterion on random configurations") {
  for (const auto& e : corpus::random_4line(40, 21)) {
    const TransversalReport t = transversal_compute(e.config);
    for (const auto& w : t.witnesses) {
      for (const Mat2& m : e.config.matrices()) CHECK(proportional(m, w));
    }
    if (t.exists) {
      const auto& ms = e.config.matrices();
      for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK(commutator(ms[i], ms[j]).det().is_zero());
    }
  }
  for (const auto& e : corpus::random_5line(40, 22)) {
    const TransversalReport t = transversal_compute(e.config);
    for (const auto& w : t.witnesses) {
      for (const Mat2& m : e.config.matrices()) CHECK(proportional(m, w));
    }
    const auto& ms = e.config.matrices();
    bool all_singular = true;
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) all_singular &= commutator(ms[i], ms[j]).det().is_zero();
    if (t.exists) CHECK(all_singular);
    if (t.method != TransversalReport::Method::ExtensionRequired && all_singular) CHECK(t.exists);
  }
}
