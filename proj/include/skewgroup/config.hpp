#pragma once

// Configurations of lines in P^3 = P(K^2 x K^2). A finite line L_i is
// {(v, M_i v)}; the special lines are L0 = {(v, 0)} and Linf = {(0, v)}.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skewgroup/field.hpp"
#include "skewgroup/mat2.hpp"

namespace skewgroup {

struct LineId {
  enum class Kind { Zero, Infinity, Finite };

  Kind kind = Kind::Finite;
  std::size_t index = 0;  // 1-based, Finite only

  static LineId zero() { return {Kind::Zero, 0}; }
  static LineId infinity() { return {Kind::Infinity, 0}; }
  static LineId finite(std::size_t i) { return {Kind::Finite, i}; }

  /// "0", "inf" or the decimal index.
  std::string to_string() const;
  /// Inverse of to_string; also accepts "zero", "infinity", "∞".
  static LineId parse(const std::string& s);

  bool operator==(const LineId& b) const { return kind == b.kind && index == b.index; }
  bool operator!=(const LineId& b) const { return !(*this == b); }
  bool operator<(const LineId& b) const;
};

class LineConfig {
 public:
  LineConfig() = default;
  LineConfig(Field field, std::vector<Mat2> matrices, bool include_zero = true, bool include_infinity = true);

  const Field& field() const { return field_; }
  const std::vector<Mat2>& matrices() const { return matrices_; }
  bool has_zero() const { return zero_; }
  bool has_infinity() const { return infinity_; }

  /// All lines: L0, Linf (when present), then L1..Lr.
  std::vector<LineId> lines() const;
  std::size_t line_count() const;
  bool contains(const LineId& id) const;
  /// M_i for finite lines, the zero matrix for L0. Errors: InvalidIndex.
  const Mat2& matrix(const LineId& id) const;
  /// Index of the identity matrix among the finite lines, 0 when absent.
  std::size_t identity_index() const;

  /// Canonical encoding used for equality and round-trip checks.
  std::string key() const;
  bool operator==(const LineConfig& b) const { return key() == b.key(); }

 private:
  Field field_;
  std::vector<Mat2> matrices_;
  Mat2 zero_matrix_;
  bool zero_ = true;
  bool infinity_ = true;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::pair<LineId, LineId>> non_skew;
  std::vector<std::size_t> meets_zero;      // singular M_i
  std::vector<std::size_t> meets_identity;  // det(M_i - I) = 0 with I present
};

ValidationReport validate(const LineConfig& cfg);
/// Errors: InvalidConfig listing the first violation.
void require_valid(const LineConfig& cfg);

struct TransversalReport {
  enum class Method { CommutatorKernel, SimultaneousEigen, ExtensionRequired };

  bool exists = false;
  /// Common eigenlines v; each gives the transversal span{(v,0),(0,v)}.
  std::vector<ProjPoint> witnesses;
  Method method = Method::CommutatorKernel;
  /// Every M_i is scalar: every v is a witness.
  bool infinitely_many = false;
};

const char* to_string(TransversalReport::Method m);

/// Requires L0 and Linf. Errors: InvalidConfig.
TransversalReport transversal_compute(const LineConfig& cfg);
bool transversal_exists(const LineConfig& cfg);

struct PairLabel {
  std::size_t i = 0;
  std::size_t j = 0;
  /// simultaneously-diagonalizable, shared-eigenspace-nondiagonalizable,
  /// scalar, anticommuting, non-commuting or singular.
  std::string label;
};

struct AbelianReport {
  /// Verdict from pairwise commutation of a generating set of G_L.
  bool abelian = false;
  /// Verdict from pairwise commutation of the classes [M_i] alone.
  bool matrix_classes_commute = false;
  std::vector<PairLabel> pairs;
};

AbelianReport predict_abelian(const LineConfig& cfg);

}  // namespace skewgroup
