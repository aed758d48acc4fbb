#include "skewgroup/config.hpp"

#include <algorithm>

#include "skewgroup/error.hpp"
#include "skewgroup/groupoid.hpp"

namespace skewgroup {

std::string LineId::to_string() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Infinity: return "inf";
    case Kind::Finite: return std::to_string(index);
  }
  return "?";
}

LineId LineId::parse(const std::string& s) {
  if (s == "0" || s == "zero") return zero();
  if (s == "inf" || s == "infinity" || s == "\xE2\x88\x9E") return infinity();
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used == s.size() && v >= 1) return finite(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidIndex, "bad line index \"" + s + "\"");
}

bool LineId::operator<(const LineId& b) const {
  if (kind != b.kind) return static_cast<int>(kind) < static_cast<int>(b.kind);
  return index < b.index;
}

LineConfig::LineConfig(Field field, std::vector<Mat2> matrices, bool include_zero, bool include_infinity)
    : field_(std::move(field)), matrices_(std::move(matrices)), zero_(include_zero), infinity_(include_infinity) {
  for (const Mat2& m : matrices_) {
    if (m.field() != field_) throw Error(ErrorCode::MixedFields, "matrix over a different field than the configuration");
  }
  zero_matrix_ = Mat2::zero(field_);
}

std::vector<LineId> LineConfig::lines() const {
  std::vector<LineId> out;
  if (zero_) out.push_back(LineId::zero());
  if (infinity_) out.push_back(LineId::infinity());
  for (std::size_t i = 1; i <= matrices_.size(); ++i) out.push_back(LineId::finite(i));
  return out;
}

std::size_t LineConfig::line_count() const { return matrices_.size() + (zero_ ? 1 : 0) + (infinity_ ? 1 : 0); }

bool LineConfig::contains(const LineId& id) const {
  switch (id.kind) {
    case LineId::Kind::Zero: return zero_;
    case LineId::Kind::Infinity: return infinity_;
    case LineId::Kind::Finite: return id.index >= 1 && id.index <= matrices_.size();
  }
  return false;
}

const Mat2& LineConfig::matrix(const LineId& id) const {
  if (!contains(id) || id.kind == LineId::Kind::Infinity) {
    throw Error(ErrorCode::InvalidIndex, "line " + id.to_string() + " has no matrix in this configuration");
  }
  if (id.kind == LineId::Kind::Zero) return zero_matrix_;
  return matrices_[id.index - 1];
}

std::size_t LineConfig::identity_index() const {
  const Mat2 id = Mat2::identity(field_);
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (matrices_[i] == id) return i + 1;
  }
  return 0;
}

namespace {

std::string spec_key(const FieldSpec& s) {
  switch (s.kind) {
    case FieldSpec::Kind::Rational: return "Q";
    case FieldSpec::Kind::Prime: return "F" + s.p.get_str();
    case FieldSpec::Kind::Extension: {
      std::string out = spec_key(*s.base) + "[";
      for (std::size_t i = 0; i < s.minpoly.size(); ++i) {
        if (i) out += ",";
        out += "(";
        for (std::size_t k = 0; k < s.minpoly[i].size(); ++k) {
          if (k) out += " ";
          out += s.minpoly[i][k].get_str();
        }
        out += ")";
      }
      return out + "]";
    }
  }
  return "?";
}

}  // namespace

std::string LineConfig::key() const {
  std::string out = spec_key(field_.spec());
  out += zero_ ? "|0" : "|-";
  out += infinity_ ? "|inf" : "|-";
  for (const Mat2& m : matrices_) out += "|" + m.key();
  return out;
}

ValidationReport validate(const LineConfig& cfg) {
  ValidationReport r;
  const auto& ms = cfg.matrices();
  const std::size_t id = cfg.identity_index();
  const Mat2 eye = Mat2::identity(cfg.field());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (cfg.has_zero() && ms[i].det().is_zero()) {
      r.meets_zero.push_back(i + 1);
      r.non_skew.emplace_back(LineId::zero(), LineId::finite(i + 1));
    }
    if (id != 0 && i + 1 != id && (ms[i] - eye).det().is_zero()) r.meets_identity.push_back(i + 1);
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if ((ms[i] - ms[j]).det().is_zero()) r.non_skew.emplace_back(LineId::finite(i + 1), LineId::finite(j + 1));
    }
  }
  r.valid = r.non_skew.empty() && r.meets_zero.empty() && r.meets_identity.empty();
  return r;
}

void require_valid(const LineConfig& cfg) {
  const ValidationReport r = validate(cfg);
  if (r.valid) return;
  const auto& [a, b] = r.non_skew.front();
  throw Error(ErrorCode::InvalidConfig, "lines " + a.to_string() + " and " + b.to_string() + " meet");
}

const char* to_string(TransversalReport::Method m) {
  switch (m) {
    case TransversalReport::Method::CommutatorKernel: return "commutator-kernel";
    case TransversalReport::Method::SimultaneousEigen: return "simultaneous-eigen";
    case TransversalReport::Method::ExtensionRequired: return "extension-required";
  }
  return "?";
}

namespace {

bool fixes(const Mat2& m, const ProjPoint& v) {
  auto w = m.apply(v.x(), v.y());
  // w parallel to v
  return (w[0] * v.y() - w[1] * v.x()).is_zero();
}

}  // namespace

TransversalReport transversal_compute(const LineConfig& cfg) {
  if (!cfg.has_zero() || !cfg.has_infinity()) {
    throw Error(ErrorCode::InvalidConfig, "transversal analysis needs both L0 and Linf");
  }
  require_valid(cfg);
  TransversalReport r;
  std::vector<Mat2> ms;
  for (const Mat2& m : cfg.matrices()) {
    if (!m.is_scalar()) ms.push_back(m);
  }
  if (ms.empty()) {
    r.exists = true;
    r.infinitely_many = true;
    r.method = TransversalReport::Method::SimultaneousEigen;
    return r;
  }
  std::optional<Mat2> nonzero_commutator;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const Mat2 c = commutator(ms[i], ms[j]);
      if (!c.det().is_zero()) {
        r.method = TransversalReport::Method::CommutatorKernel;
        return r;
      }
      if (!c.is_zero() && !nonzero_commutator) nonzero_commutator = c;
    }
  }
  std::vector<ProjPoint> candidates;
  if (nonzero_commutator) {
    // A common eigenvector lies in ker C, which is a single line here.
    r.method = TransversalReport::Method::CommutatorKernel;
    candidates.push_back(*kernel_line(*nonzero_commutator));
  } else {
    const EigenReport e = eigenvectors(ms.front());
    if (e.extension_required) {
      // Commuting matrices share an eigenvector over the algebraic closure.
      r.exists = true;
      r.method = TransversalReport::Method::ExtensionRequired;
      return r;
    }
    r.method = TransversalReport::Method::SimultaneousEigen;
    for (const auto& p : e.pairs) candidates.push_back(p.line);
  }
  for (const ProjPoint& v : candidates) {
    if (std::all_of(ms.begin(), ms.end(), [&](const Mat2& m) { return fixes(m, v); })) r.witnesses.push_back(v);
  }
  r.exists = !r.witnesses.empty();
  return r;
}

bool transversal_exists(const LineConfig& cfg) { return transversal_compute(cfg).exists; }

AbelianReport predict_abelian(const LineConfig& cfg) {
  require_valid(cfg);
  AbelianReport r;
  const auto& ms = cfg.matrices();
  r.matrix_classes_commute = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      PairLabel pl{i + 1, j + 1, ""};
      const Mat2& a = ms[i];
      const Mat2& b = ms[j];
      if (a.det().is_zero() || b.det().is_zero()) {
        pl.label = "singular";
      } else if (a.is_scalar() || b.is_scalar()) {
        pl.label = "scalar";
      } else if (commutator(a, b).is_zero()) {
        const FieldElement tr = a.trace();
        const bool repeated = (tr * tr - a.field().from_int(4) * a.det()).is_zero();
        pl.label = repeated ? "shared-eigenspace-nondiagonalizable" : "simultaneously-diagonalizable";
      } else if ((a * b + b * a).is_zero()) {
        pl.label = "anticommuting";
      } else {
        pl.label = "non-commuting";
      }
      if (pl.label == "anticommuting" || pl.label == "non-commuting") r.matrix_classes_commute = false;
      r.pairs.push_back(pl);
    }
  }
  const GeneratorSet gens =
      generator_set(cfg, cfg.has_infinity() ? GeneratorMode::Differences : GeneratorMode::AllTriples);
  r.abelian = true;
  for (std::size_t i = 0; i < gens.elements.size() && r.abelian; ++i) {
    for (std::size_t j = i + 1; j < gens.elements.size(); ++j) {
      if (!gens.elements[i].commutes_with(gens.elements[j])) {
        r.abelian = false;
        break;
      }
    }
  }
  return r;
}

}  // namespace skewgroup
