#include <random>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/families.hpp"
#include "skewgroup/groupoid.hpp"

using namespace skewgroup;

namespace {

const LineId kZero = LineId::zero();
const LineId kInf = LineId::infinity();
LineId fin(std::size_t i) { return LineId::finite(i); }

std::set<std::string> keys(const GroupClosure& g) {
  std::set<std::string> out;
  for (const auto& e : g.elements) out.insert(e.key());
  return out;
}

}  // namespace

TEST_CASE("generator closed forms") {
  const Field q = Field::rationals();
  const Mat2 m2 = Mat2::diag(q.from_int(2), q.from_int(3));
  const LineConfig cfg(q, {Mat2::identity(q), m2});
  CHECK(generator(cfg, fin(1), fin(2), kInf).is_identity());
  CHECK(generator(cfg, fin(2), fin(1), kZero) == ProjElem::normalize(m2));
  CHECK(generator(cfg, fin(2), kZero, fin(1)) == ProjElem::normalize(m2 - Mat2::identity(q)));
  CHECK_THROWS_AS(generator(cfg, fin(1), fin(1), kZero), Error);
  CHECK_THROWS_AS(generator(cfg, fin(1), fin(5), kZero), Error);

  const GeneratorSet diff = generator_set(cfg, GeneratorMode::Differences);
  std::set<std::string> want{ProjElem::normalize(m2).key(), ProjElem::normalize(m2 - Mat2::identity(q)).key()};
  std::set<std::string> got;
  for (const auto& e : diff.elements) got.insert(e.key());
  for (const auto& k : want) CHECK(got.count(k) == 1);

  const GeneratorSet trivial = generator_set(LineConfig(q, {Mat2::identity(q)}), GeneratorMode::AllTriples);
  REQUIRE(trivial.elements.size() == 1);
  CHECK(trivial.elements[0].is_identity());

  const LineConfig& a5 = example_a5().config;
  const GeneratorSet all = generator_set(a5, GeneratorMode::AllTriples);
  std::set<std::string> a5keys;
  for (const auto& e : all.elements) a5keys.insert(e.key());
  CHECK(a5keys.count(ProjElem::normalize(a5.matrices()[1]).key()) == 1);
  CHECK(a5keys.count(ProjElem::normalize(a5.matrices()[2]).key()) == 1);
}

TEST_CASE("closure examples") {
  const Field q = Field::rationals();
  CHECK(group_closure(std::vector<ProjElem>{ProjElem::identity(q)}).order() == 1);
  CHECK(group_closure(generator_set(example_a5().config, GeneratorMode::AllTriples)).order() == 60);
  CHECK(group_closure(generator_set(prop_case2(3).config, GeneratorMode::AllTriples)).order() == 9);

  const LineConfig infinite(q, {Mat2::identity(q), Mat2::diag(q.from_int(2), q.from_int(3))});
  const GroupClosure g = group_closure(generator_set(infinite, GeneratorMode::AllTriples), 50);
  CHECK(g.budget_hit);
  CHECK(g.order() <= 50);
  CHECK_THROWS_AS(classify(g), Error);
  CHECK_THROWS_AS(cayley_table(g), Error);
}

TEST_CASE("classification of the named examples") {
  auto cls = [](const Family& f) { return classify(group_closure(generator_set(f.config, GeneratorMode::AllTriples))); };
  const Classification a4 = cls(example_a4());
  CHECK(a4.name() == "A4");
  REQUIRE(a4.r);
  REQUIRE(a4.s);
  CHECK(a4.s->order() == 2u);
  CHECK(a4.r->order() == 3u);
  CHECK((*a4.s * *a4.r).order() == 3u);

  const Classification s4 = cls(example_s4());
  CHECK(s4.name() == "S4");
  REQUIRE(s4.r);
  CHECK(s4.r->order() == 3u);
  CHECK(s4.s->order() == 2u);
  CHECK((*s4.r * *s4.s).order() == 4u);

  const Classification a5 = cls(example_a5());
  CHECK(a5.name() == "A5");
  CHECK(a5.order_census == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});

  CHECK(cls(affine(5, AffineMode::Primitive)).name() == "affine(5,4)");
  CHECK(cls(prop_case2(3)).name() == "elementary_abelian(3,2)");
  CHECK(cls(standard_construction(5)).name() == "cyclic(10)");
}

TEST_CASE("eigenvalue ratio certificates") {
  const RatioReport std3 = eigratio_check(standard_construction(3).config);
  CHECK(!std3.proves_infinite);
  for (const auto& e : std3.entries) {
    if (e.status == RatioEntry::Status::RootOfUnity) CHECK(6 % *e.order == 0);
  }
  const Field q = Field::rationals();
  const LineConfig infinite(q, {Mat2::identity(q), Mat2::diag(q.from_int(2), q.from_int(3))});
  CHECK(eigratio_check(infinite).proves_infinite);

  const RatioReport c3 = eigratio_check(cyclic_4line(3, 3).config);
  CHECK(!c3.proves_infinite);
  for (const auto& e : c3.entries) CHECK(e.status == RatioEntry::Status::RootOfUnity);
}

TEST_CASE("generator modes agree and closures are sound") {
  for (const auto& e : corpus::golden()) {
    CAPTURE(e.name);
    const GroupClosure a = group_closure(generator_set(e.config, GeneratorMode::AllTriples));
    const GroupClosure d = group_closure(generator_set(e.config, GeneratorMode::Differences));
    REQUIRE(!a.budget_hit);
    CHECK(keys(a) == keys(d));
    if (a.order() <= 120) {
      for (const auto& g : a.elements) {
        CHECK(a.contains(g.inv()));
        for (const auto& h : a.elements) REQUIRE(a.contains(g * h));
      }
    }
  }
}

TEST_CASE("order three criterion") {
  std::mt19937 rng(5);
  const Field fields[] = {Field::prime(5), Field::prime(7), Field::cyclotomic(3)};
  int hits = 0, misses = 0;
  for (const Field& f : fields) {
    for (int n = 0; n < 150; ++n) {
      Mat2 m = corpus::random_invertible(f, rng);
      // Plant det = tr = 1 on a third of the samples.
      if (n % 3 == 0) {
        const FieldElement a = corpus::random_element(f, rng);
        const FieldElement b = corpus::random_element(f, rng);
        if (b.is_zero()) continue;
        const FieldElement d = f.one() - a;
        m = Mat2(a, b, (a * d - f.one()) / b, d);
      }
      const LineConfig cfg(f, {Mat2::identity(f), m});
      if (!corpus::valid(cfg)) continue;
      const GroupClosure g = group_closure(generator_set(cfg, GeneratorMode::AllTriples), 200);
      const bool criterion = m.det() == f.one() && m.trace() == f.one();
      if (g.budget_hit) {
        CHECK(!criterion);
        continue;
      }
      CHECK((g.order() == 3) == criterion);
      (criterion ? hits : misses)++;
    }
  }
  CHECK(hits > 10);
  CHECK(misses > 10);
}
