#pragma once

// Orbits of points of the configuration under the groupoid maps f_ijk, by the
// matrix path (v -> F_ijk v) and by the independent geometric construction
// (plane through p and L_k intersected with L_j).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewgroup/config.hpp"
#include "skewgroup/groupoid.hpp"

namespace skewgroup {

class P3Point {
 public:
  P3Point() = default;
  /// Scales so the first nonzero coordinate is 1. Errors: InvalidParameters.
  explicit P3Point(std::array<FieldElement, 4> coords);

  const std::array<FieldElement, 4>& coords() const { return c_; }
  bool operator==(const P3Point& b) const;
  bool operator!=(const P3Point& b) const { return !(*this == b); }
  std::string key() const;
  std::string to_string() const;

  /// "[x:y:z:w]" with exact entries (expressions in z allowed).
  static P3Point parse(const Field& f, const std::string& text);

 private:
  std::array<FieldElement, 4> c_;
};

/// (v, M_i v); (v, 0) on L0 and (0, v) on Linf. Errors: InvalidIndex.
P3Point point_on_line(const LineConfig& cfg, const LineId& line, const ProjPoint& v);

/// The line carrying p and its v-coordinate, if p lies on the configuration.
std::optional<std::pair<LineId, ProjPoint>> locate(const LineConfig& cfg, const P3Point& p);

struct LineOrbit {
  LineId line;
  std::vector<ProjPoint> v;  // v-coordinates, discovery order
  std::vector<P3Point> points;
};

struct OrbitReport {
  P3Point seed;
  LineId carrier;
  std::size_t total_size = 0;
  std::vector<LineOrbit> per_line;  // configuration line order
  std::optional<std::uint64_t> stabilizer_order;
  bool truncated = false;

  std::size_t size_on(const LineId& line) const;
  const LineOrbit* on(const LineId& line) const;
};

/// Matrix path. With a completed closure, fills stabilizer_order as
/// |G| / (orbit size on the carrier). Errors: SeedNotOnConfiguration.
OrbitReport orbit_full(const LineConfig& cfg, const P3Point& seed, std::size_t budget,
                       const GroupClosure* group = nullptr);

/// Geometric path, used as an oracle. Errors: SeedNotOnConfiguration,
/// InvalidConfig (degenerate intersection).
OrbitReport orbit_geometric(const LineConfig& cfg, const P3Point& seed, std::size_t budget,
                            const GroupClosure* group = nullptr);

/// One application of every f_ijk with source the point's line, geometric path.
std::vector<P3Point> geometric_images(const LineConfig& cfg, const P3Point& p);

struct LineOrbitSize {
  std::size_t size = 0;
  std::uint64_t stabilizer_order = 0;
  std::vector<ProjPoint> points;
};

/// G-orbit of v on P^1; the stabilizer is counted directly and checked
/// against |G| / size. Errors: IncompleteClosure.
LineOrbitSize orbit_on_line(const GroupClosure& group, const ProjPoint& seed);

/// First of [1:0], [0:1], [1:1], [1:c] (c running through the field) fixed by
/// no nontrivial element of the group. Errors: IncompleteClosure,
/// InvalidParameters when the search space is exhausted.
ProjPoint generic_point(const GroupClosure& group);

/// 10 * |G| * lines.
std::size_t default_orbit_budget(const LineConfig& cfg, const GroupClosure& group);

}  // namespace skewgroup
