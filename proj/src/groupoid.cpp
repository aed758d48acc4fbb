#include "skewgroup/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "skewgroup/detail/poly.hpp"
#include "skewgroup/error.hpp"

namespace skewgroup {

std::string Triple::to_string() const { return "(" + i.to_string() + "," + j.to_string() + "," + k.to_string() + ")"; }

ProjElem generator(const LineConfig& cfg, const LineId& i, const LineId& j, const LineId& k) {
  for (const LineId& id : {i, j, k}) {
    if (!cfg.contains(id)) throw Error(ErrorCode::InvalidIndex, "line " + id.to_string() + " is not in the configuration");
  }
  if (i == j || j == k || i == k) throw Error(ErrorCode::IndexCollision, "indices must be pairwise distinct");
  const LineId inf = LineId::infinity();
  if (k == inf) return ProjElem::identity(cfg.field());
  if (j == inf) return ProjElem::normalize(cfg.matrix(i) - cfg.matrix(k));
  if (i == inf) return ProjElem::normalize((cfg.matrix(j) - cfg.matrix(k)).inv());
  return ProjElem::normalize((cfg.matrix(j) - cfg.matrix(k)).inv() * (cfg.matrix(i) - cfg.matrix(k)));
}

namespace {

GeneratorSet finish(std::map<std::string, std::pair<ProjElem, std::vector<Triple>>>& found, const Field& f) {
  GeneratorSet out;
  const std::string id_key = ProjElem::identity(f).key();
  for (auto& [key, entry] : found) {
    if (key == id_key && found.size() > 1) continue;
    out.elements.push_back(entry.first);
    out.provenance.push_back(std::move(entry.second));
  }
  if (out.elements.empty()) {
    out.elements.push_back(ProjElem::identity(f));
    out.provenance.emplace_back();
  }
  return out;
}

}  // namespace

GeneratorSet generator_set(const LineConfig& cfg, GeneratorMode mode) {
  require_valid(cfg);
  std::map<std::string, std::pair<ProjElem, std::vector<Triple>>> found;
  auto add = [&](const ProjElem& g, const Triple& t) {
    auto [it, inserted] = found.try_emplace(g.key(), g, std::vector<Triple>{});
    it->second.second.push_back(t);
  };
  const std::vector<LineId> lines = cfg.lines();
  if (mode == GeneratorMode::AllTriples) {
    for (const LineId& i : lines) {
      for (const LineId& j : lines) {
        if (j == i) continue;
        for (const LineId& k : lines) {
          if (k == i || k == j) continue;
          add(generator(cfg, i, j, k), Triple{i, j, k});
        }
      }
    }
  } else {
    if (!cfg.has_infinity()) throw Error(ErrorCode::InvalidConfig, "differences mode needs Linf in the configuration");
    const LineId inf = LineId::infinity();
    for (const LineId& i : lines) {
      if (i == inf) continue;
      for (const LineId& j : lines) {
        if (j == inf || j == i) continue;
        add(ProjElem::normalize(cfg.matrix(i) - cfg.matrix(j)), Triple{i, inf, j});
      }
    }
  }
  return finish(found, cfg.field());
}

std::optional<std::size_t> GroupClosure::find(const ProjElem& g) const {
  auto it = index.find(g.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GroupClosure group_closure(const std::vector<ProjElem>& gens_in, std::size_t budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidParameters, "budget must be at least 1");
  if (gens_in.empty()) throw Error(ErrorCode::InvalidParameters, "empty generator list");
  GroupClosure g;
  const Field f = gens_in.front().field();
  std::map<std::string, ProjElem> sorted;
  for (const ProjElem& x : gens_in) {
    if (!x.is_identity()) sorted.emplace(x.key(), x);
  }
  for (auto& [key, x] : sorted) g.generators.push_back(x);

  auto insert = [&](const ProjElem& x) {
    if (g.index.count(x.key())) return true;
    if (g.elements.size() >= budget) {
      g.budget_hit = true;
      return false;
    }
    g.index.emplace(x.key(), g.elements.size());
    g.elements.push_back(x);
    return true;
  };
  insert(ProjElem::identity(f));
  for (const ProjElem& x : g.generators) {
    if (!insert(x)) return g;
  }
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const ProjElem& x : g.generators) {
      const ProjElem y = g.elements[head] * x;
      if (!insert(y)) return g;
    }
  }
  return g;
}

GroupClosure group_closure(const GeneratorSet& gens, std::size_t budget) { return group_closure(gens.elements, budget); }

std::vector<std::vector<std::size_t>> cayley_table(const GroupClosure& g) {
  if (g.budget_hit) throw Error(ErrorCode::IncompleteClosure, "closure stopped at the budget");
  const std::size_t n = g.order();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto idx = g.find(g.elements[a] * g.elements[b]);
      if (!idx) throw Error(ErrorCode::IncompleteClosure, "set is not closed under multiplication");
      t[a][b] = *idx;
    }
  }
  return t;
}

std::string Classification::name() const {
  auto join = [&]() {
    std::string s;
    for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
    return s;
  };
  switch (label) {
    case Label::Trivial: return "trivial";
    case Label::Cyclic: return "cyclic(" + join() + ")";
    case Label::Abelian: return "abelian(" + join() + ")";
    case Label::ElementaryAbelian: return "elementary_abelian(" + join() + ")";
    case Label::Affine: return "affine(" + join() + ")";
    case Label::A4: return "A4";
    case Label::S4: return "S4";
    case Label::A5: return "A5";
    case Label::Dihedral: return "dihedral(" + join() + ")";
    case Label::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

using Census = std::map<std::uint64_t, std::uint64_t>;

std::vector<std::uint64_t> invariant_factors(const Census& census, std::uint64_t n) {
  // Per prime, the counts N_k = #{g : g^(p^k) = 1} give the conjugate
  // partition of the p-primary exponents.
  std::vector<std::vector<std::uint64_t>> per_prime;
  for (std::uint64_t p : detail::prime_factors(n)) {
    std::vector<std::uint64_t> parts_at_least;  // index k-1: number of factors of order >= p^k
    std::uint64_t prev = 1;
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t count = 0;
      for (const auto& [ord, c] : census) {
        if (pk % ord == 0) count += c;
      }
      if (count == prev) break;
      std::uint64_t ratio = count / prev;
      std::uint64_t e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      parts_at_least.push_back(e);
      prev = count;
    }
    std::vector<std::uint64_t> factors;  // descending
    for (std::size_t k = parts_at_least.size(); k-- > 0;) {
      const std::uint64_t exact = parts_at_least[k] - (k + 1 < parts_at_least.size() ? parts_at_least[k + 1] : 0);
      std::uint64_t pk = 1;
      for (std::size_t i = 0; i <= k; ++i) pk *= p;
      for (std::uint64_t c = 0; c < exact; ++c) factors.push_back(pk);
    }
    per_prime.push_back(factors);
  }
  std::size_t len = 0;
  for (const auto& f : per_prime) len = std::max(len, f.size());
  std::vector<std::uint64_t> out(len, 1);
  for (const auto& f : per_prime) {
    for (std::size_t i = 0; i < f.size(); ++i) out[i] *= f[i];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_unipotent_class(const Mat2& m) {
  const FieldElement tr = m.trace();
  return (tr * tr - m.field().from_int(4) * m.det()).is_zero();
}

std::optional<ProjPoint> common_fixed_point(const GroupClosure& g) {
  std::optional<ProjElem> c;
  for (std::size_t a = 0; a < g.generators.size() && !c; ++a) {
    for (std::size_t b = a + 1; b < g.generators.size(); ++b) {
      const ProjElem& x = g.generators[a];
      const ProjElem& y = g.generators[b];
      if (!x.commutes_with(y)) {
        c = x * y * x.inv() * y.inv();
        break;
      }
    }
  }
  if (!c || !is_unipotent_class(c->rep())) return std::nullopt;
  const Mat2& m = c->rep();
  auto roots = quadratic_roots(m.trace(), m.det());
  if (!roots) return std::nullopt;
  auto line = kernel_line(m - Mat2::identity(m.field()).scaled(roots->front()));
  if (!line) return std::nullopt;
  for (const ProjElem& x : g.elements) {
    if (x.apply(*line) != *line) return std::nullopt;
  }
  return line;
}

struct Polyhedral {
  Classification::Label label;
  std::uint64_t order;
  Census census;
  std::uint64_t ord_r, ord_s, ord_product;
  bool product_sr;  // relation uses sr instead of rs
  const char* relations;
};

const std::vector<Polyhedral>& polyhedral() {
  static const std::vector<Polyhedral> table = {
      {Classification::Label::A4, 12, {{1, 1}, {2, 3}, {3, 8}}, 3, 2, 3, true, "s^2=r^3=(sr)^3=1"},
      {Classification::Label::S4, 24, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}, 3, 2, 4, false, "r^3=s^2=(rs)^4=1"},
      {Classification::Label::A5, 60, {{1, 1}, {2, 15}, {3, 20}, {5, 24}}, 3, 5, 2, false, "r^3=s^5=(rs)^2=1"},
  };
  return table;
}

}  // namespace

Classification classify(const GroupClosure& g) {
  if (g.budget_hit) throw Error(ErrorCode::IncompleteClosure, "closure stopped at the budget");
  Classification c;
  const std::uint64_t n = g.order();
  c.order = n;
  std::vector<std::uint64_t> orders(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto o = g.elements[i].order(n);
    if (!o) throw Error(ErrorCode::IncompleteClosure, "element order exceeds the group order");
    orders[i] = *o;
    ++c.order_census[*o];
  }
  c.abelian = true;
  for (std::size_t a = 0; a < g.generators.size() && c.abelian; ++a) {
    for (std::size_t b = a + 1; b < g.generators.size(); ++b) {
      if (!g.generators[a].commutes_with(g.generators[b])) {
        c.abelian = false;
        break;
      }
    }
  }
  if (n == 1) {
    c.label = Classification::Label::Trivial;
    return c;
  }
  if (c.abelian) {
    if (c.order_census.count(n)) {
      c.label = Classification::Label::Cyclic;
      c.params = {n};
      return c;
    }
    c.params = invariant_factors(c.order_census, n);
    const auto primes = detail::prime_factors(n);
    if (primes.size() == 1 && std::all_of(c.params.begin(), c.params.end(), [&](std::uint64_t d) { return d == primes[0]; })) {
      c.label = Classification::Label::ElementaryAbelian;
      c.params = {primes[0], static_cast<std::uint64_t>(c.params.size())};
    } else {
      c.label = Classification::Label::Abelian;
    }
    return c;
  }
  if (common_fixed_point(g)) {
    std::uint64_t unipotent = 0;
    for (const ProjElem& x : g.elements) {
      if (is_unipotent_class(x.rep())) ++unipotent;
    }
    c.label = Classification::Label::Affine;
    c.params = {unipotent, n / unipotent};
    return c;
  }
  for (const Polyhedral& poly : polyhedral()) {
    if (n != poly.order || c.order_census != poly.census) continue;
    for (std::size_t a = 0; a < n && !c.r; ++a) {
      if (orders[a] != poly.ord_r) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (orders[b] != poly.ord_s) continue;
        const ProjElem& r = g.elements[a];
        const ProjElem& s = g.elements[b];
        const ProjElem prod = poly.product_sr ? s * r : r * s;
        if (prod.order(poly.ord_product) != poly.ord_product) continue;
        if (group_closure({r, s}, n + 1).order() != n) continue;
        c.r = r;
        c.s = s;
        break;
      }
    }
    if (c.r) {
      c.label = poly.label;
      c.relations = poly.relations;
      return c;
    }
  }
  if (n % 2 == 0 && n >= 6) {
    const std::uint64_t half = n / 2;
    for (std::size_t a = 0; a < n; ++a) {
      if (orders[a] != half) continue;
      const GroupClosure rot = group_closure({g.elements[a]}, n);
      bool dihedral = true;
      for (std::size_t b = 0; b < n && dihedral; ++b) {
        if (!rot.contains(g.elements[b]) && orders[b] != 2) dihedral = false;
      }
      if (dihedral) {
        c.label = Classification::Label::Dihedral;
        c.params = {half};
        c.violation = true;
        return c;
      }
      break;
    }
  }
  c.label = Classification::Label::Unknown;
  return c;
}

const char* to_string(RatioEntry::Status s) {
  switch (s) {
    case RatioEntry::Status::RootOfUnity: return "RootOfUnity";
    case RatioEntry::Status::NotRootOfUnity: return "NotRootOfUnity";
    case RatioEntry::Status::OrderExceedsBound: return "OrderExceedsBound";
    case RatioEntry::Status::ExtensionRequired: return "ExtensionRequired";
    case RatioEntry::Status::Unipotent: return "Unipotent";
  }
  return "?";
}

namespace {

// Largest m with phi(m) <= d: any root of unity in a degree-d extension of Q
// has order at most this.
std::uint64_t max_root_order(std::uint64_t d) {
  std::uint64_t best = 2;
  for (std::uint64_t m = 1; m <= 2 * d * d + 2; ++m) {
    if (detail::euler_phi(m) <= d) best = m;
  }
  return best;
}

}  // namespace

RatioReport eigratio_check(const LineConfig& cfg, std::uint64_t bound) {
  RatioReport report;
  const GeneratorSet gens = generator_set(cfg, GeneratorMode::AllTriples);
  const Field f = cfg.field();
  const bool char0 = !f.finite();
  const std::uint64_t deg = f.degree();
  for (std::size_t idx = 0; idx < gens.elements.size(); ++idx) {
    RatioEntry e;
    e.element = gens.elements[idx];
    e.triples = gens.provenance[idx];
    const Mat2& m = e.element.rep();
    if (e.element.is_identity()) {
      e.status = RatioEntry::Status::RootOfUnity;
      e.order = 1;
      report.entries.push_back(e);
      continue;
    }
    const EigenReport eig = eigenvectors(m);
    if (eig.extension_required) {
      e.status = RatioEntry::Status::ExtensionRequired;
      const std::uint64_t cert = char0 ? max_root_order(2 * deg) : 0;
      auto o = e.element.order(std::max(bound, cert));
      if (o && *o <= bound) e.order = o;
      if (char0 && !o) report.proves_infinite = true;
    } else if (eig.pairs.size() == 1) {
      e.status = RatioEntry::Status::Unipotent;
      if (char0) {
        report.proves_infinite = true;
      } else {
        e.order = e.element.order(bound);
      }
    } else {
      const FieldElement ratio = eig.pairs[0].value / eig.pairs[1].value;
      std::uint64_t search = bound;
      if (char0) {
        search = std::max(bound, max_root_order(deg));
      } else {
        const BigInt q = *f.order();
        if (q < BigInt(std::to_string(UINT64_MAX / 2))) search = std::max<std::uint64_t>(bound, BigInt(q - 1).get_ui());
      }
      auto o = ratio.mult_order(search);
      if (!o) {
        e.status = char0 ? RatioEntry::Status::NotRootOfUnity : RatioEntry::Status::OrderExceedsBound;
        if (char0) report.proves_infinite = true;
      } else if (*o > bound) {
        e.status = RatioEntry::Status::OrderExceedsBound;
        e.order = o;
      } else {
        e.status = RatioEntry::Status::RootOfUnity;
        e.order = o;
      }
    }
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace skewgroup
