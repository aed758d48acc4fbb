#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/families.hpp"
#include "skewgroup/orbits.hpp"

using namespace skewgroup;

namespace {

GroupClosure closure(const LineConfig& cfg) { return group_closure(generator_set(cfg, GeneratorMode::AllTriples)); }

std::set<std::string> point_keys(const OrbitReport& r) {
  std::set<std::string> out;
  for (const auto& l : r.per_line)
    for (const auto& p : l.points) out.insert(p.key());
  return out;
}

}  // namespace

TEST_CASE("points on lines") {
  const Field q = Field::rationals();
  const LineConfig cfg(q, {Mat2::identity(q), Mat2::diag(q.from_int(2), q.from_int(3))});
  CHECK(point_on_line(cfg, LineId::zero(), ProjPoint(q.one(), q.zero())).to_string() == "[1:0:0:0]");
  CHECK(point_on_line(cfg, LineId::infinity(), ProjPoint(q.zero(), q.one())).to_string() == "[0:0:0:1]");
  CHECK(point_on_line(cfg, LineId::finite(1), ProjPoint(q.one(), q.one())).to_string() == "[1:1:1:1]");
  CHECK_THROWS_AS(point_on_line(cfg, LineId::finite(4), ProjPoint(q.one(), q.one())), Error);

  const P3Point p = P3Point::parse(q, "[2:4:6:8]");
  CHECK(p.to_string() == "[1:2:3:4]");
  CHECK_THROWS_AS(P3Point::parse(q, "[0:0:0:0]"), Error);
  try {
    orbit_full(cfg, p, 100);
    FAIL("expected SeedNotOnConfiguration");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeedNotOnConfiguration);
  }
}

TEST_CASE("orbits on a line") {
  const GroupClosure s4 = closure(example_s4().config);
  const LineOrbitSize gen = orbit_on_line(s4, generic_point(s4));
  CHECK(gen.size == 24);
  CHECK(gen.stabilizer_order == 1);

  const Family a5 = example_a5();
  const GroupClosure g5 = closure(a5.config);
  const LineOrbitSize zero = orbit_on_line(g5, ProjPoint::affine(a5.config.field().zero()));
  CHECK(zero.size == 30);
  CHECK(zero.stabilizer_order == 2);

  const Family aff = affine(5, AffineMode::Primitive);
  const GroupClosure ga = closure(aff.config);
  CHECK(orbit_on_line(ga, ProjPoint::infinity(aff.config.field())).size == 1);

  GroupClosure partial = ga;
  partial.budget_hit = true;
  CHECK_THROWS_AS(orbit_on_line(partial, ProjPoint::infinity(aff.config.field())), Error);
}

TEST_CASE("orbit examples") {
  const Family a4 = example_a4();
  const GroupClosure g = closure(a4.config);
  const OrbitReport special = orbit_full(a4.config, P3Point::parse(a4.config.field(), "[0:0:0:1]"), 10000, &g);
  CHECK(special.total_size == 20);
  CHECK(special.size_on(LineId::infinity()) == 4);
  const OrbitReport generic =
      orbit_full(a4.config, point_on_line(a4.config, LineId::infinity(), generic_point(g)), 10000, &g);
  CHECK(generic.total_size == 60);
  CHECK(generic.stabilizer_order == 1u);

  const OrbitReport truncated = orbit_full(a4.config, P3Point::parse(a4.config.field(), "[0:0:0:1]"), 5, &g);
  CHECK(truncated.truncated);
}

TEST_CASE("geometric oracle matches the matrix path") {
  for (const auto& e : corpus::golden()) {
    CAPTURE(e.name);
    if (e.name.rfind("example_a5", 0) == 0) continue;  // covered by the acceptance run
    const GroupClosure g = closure(e.config);
    P3Point seed = P3Point::parse(e.config.field(), "[0:0:0:1]");
    try {
      seed = point_on_line(e.config, LineId::infinity(), generic_point(g));
    } catch (const Error&) {
      // No free point exists over this field; the special seed still checks the oracle.
    }
    const std::size_t budget = default_orbit_budget(e.config, g);
    const OrbitReport m = orbit_full(e.config, seed, budget, &g);
    const OrbitReport o = orbit_geometric(e.config, seed, budget, &g);
    CHECK(point_keys(m) == point_keys(o));
    REQUIRE(m.stabilizer_order);
    for (const auto& l : m.per_line) CHECK(l.v.size() * *m.stabilizer_order == g.order());
  }
}

TEST_CASE("orbits are stable and the generic-point law holds") {
  for (const auto& e : corpus::random_4line(15, 31)) {
    CAPTURE(e.name);
    const GroupClosure g = closure(e.config);
    // Collect every eigenline of every nontrivial element, then take a seed
    // outside that finite set.
    std::set<std::string> eig;
    bool extension = false;
    for (const auto& h : g.elements) {
      if (h.is_identity()) continue;
      const EigenReport rep = eigenvectors(h.rep());
      extension |= rep.extension_required;
      for (const auto& p : rep.pairs) eig.insert(p.line.key());
    }
    if (extension) continue;
    const Field& f = e.config.field();
    std::optional<ProjPoint> seed;
    const std::uint64_t limit = f.order() ? std::min<std::uint64_t>(200, f.order()->get_ui()) : 200;
    for (std::uint64_t k = 0; k < limit && !seed; ++k) {
      const ProjPoint c = ProjPoint::affine(f.element_at(k));
      if (!eig.count(c.key())) seed = c;
    }
    if (!seed) continue;
    const OrbitReport r = orbit_full(e.config, point_on_line(e.config, LineId::infinity(), *seed), 100000, &g);
    for (const auto& l : r.per_line) CHECK(l.v.size() == g.order());

    const std::set<std::string> before = point_keys(r);
    for (const auto& l : r.per_line) {
      for (const auto& p : l.points) {
        for (const auto& img : geometric_images(e.config, p)) CHECK(before.count(img.key()) == 1);
      }
    }
  }
}
