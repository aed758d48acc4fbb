#include "skewgroup/orbits.hpp"

#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "skewgroup/error.hpp"

namespace skewgroup {

P3Point::P3Point(std::array<FieldElement, 4> coords) {
  for (const auto& c : coords) {
    if (c.field() != coords[0].field()) throw Error(ErrorCode::MixedFields, "point coordinates from different fields");
  }
  for (const auto& c : coords) {
    if (c.is_zero()) continue;
    const FieldElement s = c.inv();
    for (auto& x : coords) x *= s;
    c_ = std::move(coords);
    return;
  }
  throw Error(ErrorCode::InvalidParameters, "point [0:0:0:0] is not in P^3");
}

bool P3Point::operator==(const P3Point& b) const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (c_[i] != b.c_[i]) return false;
  }
  return true;
}

std::string P3Point::key() const {
  return c_[0].key() + ":" + c_[1].key() + ":" + c_[2].key() + ":" + c_[3].key();
}

std::string P3Point::to_string() const {
  return "[" + c_[0].to_string() + ":" + c_[1].to_string() + ":" + c_[2].to_string() + ":" + c_[3].to_string() + "]";
}

P3Point P3Point::parse(const Field& f, const std::string& text) {
  std::string s = text;
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty point");
  s = s.substr(first, last - first + 1);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error(ErrorCode::ParseError, "point must look like [x:y:z:w]");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = s.find(':', start);
    parts.push_back(s.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) throw Error(ErrorCode::ParseError, "point needs exactly four coordinates");
  return P3Point({f.parse(parts[0]), f.parse(parts[1]), f.parse(parts[2]), f.parse(parts[3])});
}

P3Point point_on_line(const LineConfig& cfg, const LineId& line, const ProjPoint& v) {
  if (!cfg.contains(line)) throw Error(ErrorCode::InvalidIndex, "line " + line.to_string() + " is not in the configuration");
  const FieldElement zero = cfg.field().zero();
  if (line.kind == LineId::Kind::Infinity) return P3Point({zero, zero, v.x(), v.y()});
  if (line.kind == LineId::Kind::Zero) return P3Point({v.x(), v.y(), zero, zero});
  auto w = cfg.matrix(line).apply(v.x(), v.y());
  return P3Point({v.x(), v.y(), w[0], w[1]});
}

std::optional<std::pair<LineId, ProjPoint>> locate(const LineConfig& cfg, const P3Point& p) {
  const auto& c = p.coords();
  if (c[0].field() != cfg.field()) throw Error(ErrorCode::MixedFields, "point over a different field than the configuration");
  const bool head_zero = c[0].is_zero() && c[1].is_zero();
  const bool tail_zero = c[2].is_zero() && c[3].is_zero();
  for (const LineId& id : cfg.lines()) {
    switch (id.kind) {
      case LineId::Kind::Zero:
        if (tail_zero) return std::make_pair(id, ProjPoint(c[0], c[1]));
        break;
      case LineId::Kind::Infinity:
        if (head_zero) return std::make_pair(id, ProjPoint(c[2], c[3]));
        break;
      case LineId::Kind::Finite: {
        if (head_zero) break;
        auto w = cfg.matrix(id).apply(c[0], c[1]);
        if (w[0] == c[2] && w[1] == c[3]) return std::make_pair(id, ProjPoint(c[0], c[1]));
        break;
      }
    }
  }
  return std::nullopt;
}

std::size_t OrbitReport::size_on(const LineId& line) const {
  const LineOrbit* o = on(line);
  return o ? o->v.size() : 0;
}

const LineOrbit* OrbitReport::on(const LineId& line) const {
  for (const auto& o : per_line) {
    if (o.line == line) return &o;
  }
  return nullptr;
}

namespace {

std::pair<LineId, ProjPoint> locate_or_throw(const LineConfig& cfg, const P3Point& seed) {
  auto loc = locate(cfg, seed);
  if (!loc) throw Error(ErrorCode::SeedNotOnConfiguration, seed.to_string() + " lies on no line of the configuration");
  return *loc;
}

void finish_report(const LineConfig& cfg, OrbitReport& r, const GroupClosure* group) {
  r.total_size = 0;
  for (const auto& o : r.per_line) r.total_size += o.v.size();
  if (group && !group->budget_hit && !r.truncated) {
    const std::size_t n = r.size_on(r.carrier);
    if (n > 0 && group->order() % n == 0) r.stabilizer_order = group->order() / n;
  }
  (void)cfg;
}

// Collects points per line in configuration order.
struct Collector {
  explicit Collector(const LineConfig& cfg) {
    for (const LineId& id : cfg.lines()) {
      slot[id.to_string()] = report.per_line.size();
      report.per_line.push_back(LineOrbit{id, {}, {}});
    }
  }
  bool add(const LineConfig& cfg, const LineId& line, const ProjPoint& v) {
    const std::string k = line.to_string() + "#" + v.key();
    if (!seen.insert(k).second) return false;
    LineOrbit& o = report.per_line[slot[line.to_string()]];
    o.v.push_back(v);
    o.points.push_back(point_on_line(cfg, line, v));
    ++count;
    return true;
  }
  OrbitReport report;
  std::unordered_map<std::string, std::size_t> slot;
  std::unordered_set<std::string> seen;
  std::size_t count = 0;
};

}  // namespace

OrbitReport orbit_full(const LineConfig& cfg, const P3Point& seed, std::size_t budget, const GroupClosure* group) {
  require_valid(cfg);
  const auto [carrier, v0] = locate_or_throw(cfg, seed);
  const std::vector<LineId> lines = cfg.lines();
  // Distinct maps per (source, target).
  std::map<std::string, std::vector<std::pair<LineId, ProjElem>>> maps;
  for (const LineId& i : lines) {
    auto& out = maps[i.to_string()];
    for (const LineId& j : lines) {
      if (j == i) continue;
      std::unordered_set<std::string> distinct;
      for (const LineId& k : lines) {
        if (k == i || k == j) continue;
        ProjElem f = generator(cfg, i, j, k);
        if (distinct.insert(f.key()).second) out.emplace_back(j, f);
      }
    }
  }
  Collector col(cfg);
  col.report.seed = seed;
  col.report.carrier = carrier;
  std::deque<std::pair<LineId, ProjPoint>> queue;
  col.add(cfg, carrier, v0);
  queue.emplace_back(carrier, v0);
  while (!queue.empty() && !col.report.truncated) {
    auto [line, v] = queue.front();
    queue.pop_front();
    for (const auto& [target, f] : maps[line.to_string()]) {
      const ProjPoint w = f.apply(v);
      const std::string k = target.to_string() + "#" + w.key();
      if (col.seen.count(k)) continue;
      if (col.count >= budget) {
        col.report.truncated = true;
        break;
      }
      col.add(cfg, target, w);
      queue.emplace_back(target, w);
    }
  }
  finish_report(cfg, col.report, group);
  return col.report;
}

namespace {

std::array<std::array<FieldElement, 4>, 2> line_basis(const LineConfig& cfg, const LineId& id) {
  const Field& f = cfg.field();
  const FieldElement o = f.one();
  const FieldElement z = f.zero();
  switch (id.kind) {
    case LineId::Kind::Zero: return {{{o, z, z, z}, {z, o, z, z}}};
    case LineId::Kind::Infinity: return {{{z, z, o, z}, {z, z, z, o}}};
    case LineId::Kind::Finite: {
      const Mat2& m = cfg.matrix(id);
      return {{{o, z, m(0, 0), m(1, 0)}, {z, o, m(0, 1), m(1, 1)}}};
    }
  }
  throw Error(ErrorCode::InvalidIndex, "bad line");
}

using Col = std::array<FieldElement, 4>;

// Determinant of the 4x4 matrix with the given columns, by Laplace expansion
// along the top two rows.
FieldElement det4(const std::array<const Col*, 4>& c) {
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  static constexpr int sign[6] = {1, -1, 1, 1, -1, 1};
  FieldElement sum = (*c[0])[0].field().zero();
  for (int k = 0; k < 6; ++k) {
    const int a = pairs[k][0], b = pairs[k][1];
    const int ca = pairs[5 - k][0], cb = pairs[5 - k][1];
    const FieldElement top = (*c[a])[0] * (*c[b])[1] - (*c[b])[0] * (*c[a])[1];
    if (top.is_zero()) continue;
    const FieldElement bot = (*c[ca])[2] * (*c[cb])[3] - (*c[cb])[2] * (*c[ca])[3];
    if (sign[k] > 0) sum += top * bot;
    else sum -= top * bot;
  }
  return sum;
}

}  // namespace

std::vector<P3Point> geometric_images(const LineConfig& cfg, const P3Point& p) {
  const auto [source, v] = locate_or_throw(cfg, p);
  (void)v;
  std::vector<P3Point> out;
  const std::vector<LineId> lines = cfg.lines();
  for (const LineId& j : lines) {
    if (j == source) continue;
    const auto rj = line_basis(cfg, j);
    for (const LineId& k : lines) {
      if (k == source || k == j) continue;
      const auto qk = line_basis(cfg, k);
      // Kernel of [p q1 q2 r1 r2] by signed maximal minors; the image is
      // proportional to d r1 + e r2.
      const Col& pc = p.coords();
      const FieldElement d = -det4({&pc, &qk[0], &qk[1], &rj[1]});
      const FieldElement e = det4({&pc, &qk[0], &qk[1], &rj[0]});
      if (d.is_zero() && e.is_zero()) {
        throw Error(ErrorCode::InvalidConfig, "plane through the point and L" + k.to_string() + " does not meet L" + j.to_string() + " in a point");
      }
      std::array<FieldElement, 4> q;
      for (std::size_t row = 0; row < 4; ++row) q[row] = d * rj[0][row] + e * rj[1][row];
      P3Point image(q);
      auto loc = locate(cfg, image);
      if (!loc || loc->first != j) throw Error(ErrorCode::InvalidConfig, "geometric image left the target line");
      out.push_back(image);
    }
  }
  return out;
}

OrbitReport orbit_geometric(const LineConfig& cfg, const P3Point& seed, std::size_t budget, const GroupClosure* group) {
  require_valid(cfg);
  const auto [carrier, v0] = locate_or_throw(cfg, seed);
  Collector col(cfg);
  col.report.seed = seed;
  col.report.carrier = carrier;
  std::deque<P3Point> queue;
  col.add(cfg, carrier, v0);
  queue.push_back(point_on_line(cfg, carrier, v0));
  while (!queue.empty() && !col.report.truncated) {
    const P3Point p = queue.front();
    queue.pop_front();
    for (const P3Point& q : geometric_images(cfg, p)) {
      const auto [line, w] = *locate(cfg, q);
      const std::string k = line.to_string() + "#" + w.key();
      if (col.seen.count(k)) continue;
      if (col.count >= budget) {
        col.report.truncated = true;
        break;
      }
      col.add(cfg, line, w);
      queue.push_back(q);
    }
  }
  finish_report(cfg, col.report, group);
  return col.report;
}

LineOrbitSize orbit_on_line(const GroupClosure& group, const ProjPoint& seed) {
  if (group.budget_hit) throw Error(ErrorCode::IncompleteClosure, "closure stopped at the budget");
  LineOrbitSize r;
  std::unordered_set<std::string> seen;
  for (const ProjElem& g : group.elements) {
    const ProjPoint w = g.apply(seed);
    if (w == seed) ++r.stabilizer_order;
    if (seen.insert(w.key()).second) r.points.push_back(w);
  }
  r.size = r.points.size();
  if (r.size * r.stabilizer_order != group.order()) {
    throw Error(ErrorCode::IncompleteClosure, "orbit-stabilizer identity fails; element list is not a group");
  }
  return r;
}

ProjPoint generic_point(const GroupClosure& group) {
  if (group.budget_hit) throw Error(ErrorCode::IncompleteClosure, "closure stopped at the budget");
  const Field f = group.elements.front().field();
  auto is_generic = [&](const ProjPoint& p) {
    for (const ProjElem& g : group.elements) {
      if (!g.is_identity() && g.apply(p) == p) return false;
    }
    return true;
  };
  for (const ProjPoint& p : {ProjPoint::infinity(f), ProjPoint(f.zero(), f.one()), ProjPoint(f.one(), f.one())}) {
    if (is_generic(p)) return p;
  }
  const std::uint64_t limit = f.finite() ? f.order()->get_ui() : 1'000'000;
  for (std::uint64_t k = 2; k < limit; ++k) {
    const ProjPoint p(f.one(), f.element_at(k));
    if (is_generic(p)) return p;
  }
  throw Error(ErrorCode::InvalidParameters, "every point of P^1 over this field is fixed by some nontrivial element");
}

std::size_t default_orbit_budget(const LineConfig& cfg, const GroupClosure& group) {
  return 10 * group.order() * cfg.line_count();
}

}  // namespace skewgroup
