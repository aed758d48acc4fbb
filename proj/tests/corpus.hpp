#pragma once

// Test corpus: golden configurations, families and seeded random
// configurations shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skewgroup/error.hpp"
#include "skewgroup/families.hpp"
#include "skewgroup/groupoid.hpp"

namespace corpus {

using namespace skewgroup;

struct Entry {
  std::string name;
  LineConfig config;
};

inline std::vector<Entry> golden() {
  std::vector<Entry> out;
  auto add = [&](const Family& f) {
    std::string n = f.name;
    for (const auto& [k, v] : f.params) n += " " + k + "=" + v;
    out.push_back({n, f.config});
  };
  add(example_a5());
  add(example_s4());
  add(example_a4());
  add(prop_case2(3));
  add(prop_case2(5));
  add(affine(5, AffineMode::Primitive));
  add(affine(3, AffineMode::Sqrt));
  add(c3_scaled(2));
  add(cyclic_4line(3, 3));
  for (unsigned n = 3; n <= 6; ++n) add(standard_construction(n));
  return out;
}

/// Golden configurations plus larger family members.
inline std::vector<Entry> families() {
  std::vector<Entry> out = golden();
  auto add = [&](const Family& f) { out.push_back({f.name, f.config}); };
  add(example_s4(true));
  add(affine(5, AffineMode::Sqrt));
  add(c3_scaled(4));
  add(cyclic_4line(4, 6));
  add(cyclic_4line(5, 2));
  add(elementary_abelian(3, 3, {"z", "z-1"}, "1"));
  add(elementary_abelian(5, 2, {"z"}, "z+2"));
  for (unsigned n = 7; n <= 8; ++n) add(standard_construction(n));
  return out;
}

inline FieldElement random_element(const Field& f, std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Rational> c;
  for (unsigned i = 0; i < f.degree(); ++i) c.emplace_back(d(rng));
  return f.from_coeffs(c);
}

inline Mat2 random_invertible(const Field& f, std::mt19937& rng) {
  while (true) {
    Mat2 m(random_element(f, rng), random_element(f, rng), random_element(f, rng), random_element(f, rng));
    if (!m.det().is_zero()) return m;
  }
}

inline bool valid(const LineConfig& c) { return validate(c).valid; }

/// Seeded random valid 4-line configurations {0, inf, I, M} with
/// |G| <= max_order: random M over small prime fields, conjugated diagonal
/// members of the cyclic family, and conjugated Jordan blocks over F_9.
inline std::vector<Entry> random_4line(std::size_t count, std::uint32_t seed, std::size_t max_order = 24) {
  std::mt19937 rng(seed);
  std::vector<Entry> out;
  const Field f3 = Field::prime(3), f5 = Field::prime(5), f7 = Field::prime(7);
  const Field f9 = Field::make(FieldSpec::extension(FieldSpec::prime(3), std::vector<Rational>{1, 0, 1}));
  std::size_t attempt = 0;
  while (out.size() < count) {
    const int kind = static_cast<int>(attempt++ % 4);
    LineConfig cfg;
    std::string name;
    if (kind == 0) {
      const Field& f = (attempt % 3 == 0) ? f3 : (attempt % 3 == 1 ? f5 : f7);
      Mat2 m = random_invertible(f, rng);
      cfg = LineConfig(f, {Mat2::identity(f), m});
      name = "random F" + f.characteristic().get_str() + " " + m.to_string();
    } else if (kind == 1 || kind == 2) {
      std::uniform_int_distribution<unsigned> ord(2, 8);
      const unsigned m = ord(rng), n = ord(rng);
      Family fam;
      try {
        fam = cyclic_4line(m, n);
      } catch (const Error&) {
        continue;
      }
      const Field& f = fam.config.field();
      if (fam.expected_order > max_order || f.degree() > 8) continue;
      const Mat2 p = random_invertible(f, rng);
      const Mat2 conj = p * fam.config.matrices()[1] * p.inv();
      cfg = LineConfig(f, {Mat2::identity(f), conj});
      name = "conjugated cyclic_4line(" + std::to_string(m) + "," + std::to_string(n) + ")";
    } else {
      FieldElement a = random_element(f9, rng);
      const FieldElement b = random_element(f9, rng);
      if (a.is_scalar() || b.is_zero()) continue;
      const Mat2 p = random_invertible(f9, rng);
      const Mat2 conj = p * Mat2(a, b, f9.zero(), a) * p.inv();
      cfg = LineConfig(f9, {Mat2::identity(f9), conj});
      name = "conjugated Jordan F9 " + conj.to_string();
    }
    if (!valid(cfg)) continue;
    const GroupClosure g = group_closure(generator_set(cfg, GeneratorMode::AllTriples), max_order + 1);
    if (g.budget_hit || g.order() > max_order) continue;
    out.push_back({name, cfg});
  }
  return out;
}

/// Seeded random valid 5-line configurations over small prime fields.
inline std::vector<Entry> random_5line(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Entry> out;
  const Field fields[] = {Field::prime(5), Field::prime(7), Field::prime(11)};
  std::size_t attempt = 0;
  while (out.size() < count) {
    const Field& f = fields[attempt++ % 3];
    LineConfig cfg(f, {Mat2::identity(f), random_invertible(f, rng), random_invertible(f, rng)});
    if (!valid(cfg)) continue;
    out.push_back({"random 5-line F" + f.characteristic().get_str(), cfg});
  }
  return out;
}

}  // namespace corpus
