#pragma once

// Generators F_ijk of the group G_L, breadth-first closure in PGL2 and
// classification of the resulting finite group.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewgroup/config.hpp"
#include "skewgroup/mat2.hpp"

namespace skewgroup {

struct Triple {
  LineId i, j, k;
  std::string to_string() const;
};

/// Class of the projection L_i -> L_j through L_k, acting on the
/// v-coordinate: (M_j - M_k)^-1 (M_i - M_k), with the closed forms
/// F_{ij inf} = I, F_{i inf k} = [M_i - M_k], F_{inf jk} = [(M_j - M_k)^-1].
/// Errors: IndexCollision, InvalidIndex.
ProjElem generator(const LineConfig& cfg, const LineId& i, const LineId& j, const LineId& k);

enum class GeneratorMode { AllTriples, Differences };

struct GeneratorSet {
  /// Distinct non-identity classes sorted by canonical key; {identity} when
  /// nothing else is produced.
  std::vector<ProjElem> elements;
  std::vector<std::vector<Triple>> provenance;
};

/// Differences mode uses [M_i - M_j] (provenance (i, inf, j)) and requires
/// Linf. Errors: InvalidConfig.
GeneratorSet generator_set(const LineConfig& cfg, GeneratorMode mode);

constexpr std::size_t kDefaultBudget = 5000;

struct GroupClosure {
  std::vector<ProjElem> elements;  // BFS order, identity first
  std::vector<ProjElem> generators;
  bool budget_hit = false;

  std::size_t order() const { return elements.size(); }
  /// Index of g, if present.
  std::optional<std::size_t> find(const ProjElem& g) const;
  bool contains(const ProjElem& g) const { return find(g).has_value(); }

  std::unordered_map<std::string, std::size_t> index;
};

GroupClosure group_closure(const std::vector<ProjElem>& gens, std::size_t budget = kDefaultBudget);
GroupClosure group_closure(const GeneratorSet& gens, std::size_t budget = kDefaultBudget);

/// Multiplication table by element index. Errors: IncompleteClosure.
std::vector<std::vector<std::size_t>> cayley_table(const GroupClosure& g);

struct Classification {
  enum class Label { Trivial, Cyclic, Abelian, ElementaryAbelian, Affine, A4, S4, A5, Dihedral, Unknown };

  Label label = Label::Unknown;
  std::uint64_t order = 0;
  /// cyclic: {n}; abelian: invariant factors; elementary_abelian: {p, m};
  /// affine: {p-part order, quotient order}; dihedral: {n}.
  std::vector<std::uint64_t> params;
  std::map<std::uint64_t, std::uint64_t> order_census;
  bool abelian = false;
  /// Presentation witnesses (r, s) for A4, S4 and A5.
  std::optional<ProjElem> r, s;
  std::string relations;
  /// Set when the label contradicts the no-dihedral theorem.
  bool violation = false;

  /// e.g. "cyclic(6)", "elementary_abelian(3,2)", "affine(25,8)", "A5".
  std::string name() const;
};

/// Errors: IncompleteClosure.
Classification classify(const GroupClosure& g);

struct RatioEntry {
  enum class Status { RootOfUnity, NotRootOfUnity, OrderExceedsBound, ExtensionRequired, Unipotent };

  ProjElem element;
  std::vector<Triple> triples;
  Status status = Status::ExtensionRequired;
  /// Multiplicative order of the eigenvalue ratio when known; for unipotent
  /// and extension-required entries, the projective order if within bound.
  std::optional<std::uint64_t> order;
};

const char* to_string(RatioEntry::Status s);

struct RatioReport {
  std::vector<RatioEntry> entries;
  /// Some generator certainly has infinite order.
  bool proves_infinite = false;
};

RatioReport eigratio_check(const LineConfig& cfg, std::uint64_t bound = 120);

}  // namespace skewgroup
