#pragma once

// 2x2 matrices over an exact field, PGL2 classes in canonical form (first
// nonzero entry in row-major order equal to 1), points of P^1 and the
// eigen-machinery used by the transversal and fixed-point searches.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewgroup/field.hpp"

namespace skewgroup {

class Mat2 {
 public:
  Mat2() = default;
  Mat2(FieldElement a11, FieldElement a12, FieldElement a21, FieldElement a22);

  static Mat2 identity(const Field& f);
  static Mat2 zero(const Field& f);
  static Mat2 diag(const FieldElement& a, const FieldElement& d);

  const FieldElement& operator()(int row, int col) const { return e_[static_cast<std::size_t>(2 * row + col)]; }
  const std::array<FieldElement, 4>& entries() const { return e_; }
  Field field() const { return e_[0].field(); }

  FieldElement det() const;
  FieldElement trace() const;
  Mat2 inv() const;
  Mat2 scaled(const FieldElement& s) const;
  bool is_zero() const;
  /// Nonzero multiple of the identity.
  bool is_scalar() const;

  Mat2 operator+(const Mat2& b) const;
  Mat2 operator-(const Mat2& b) const;
  Mat2 operator*(const Mat2& b) const;
  bool operator==(const Mat2& b) const;
  bool operator!=(const Mat2& b) const { return !(*this == b); }

  std::array<FieldElement, 2> apply(const FieldElement& x, const FieldElement& y) const;
  std::string key() const;
  std::string to_string() const;

 private:
  std::array<FieldElement, 4> e_;
};

/// AB - BA.
Mat2 commutator(const Mat2& a, const Mat2& b);

/// Point [x:y] of P^1, scaled so the first nonzero coordinate is 1. The
/// affine coordinate is t = x/y, so [1:0] is infinity and [0:1] is t = 0.
class ProjPoint {
 public:
  ProjPoint() = default;
  ProjPoint(const FieldElement& x, const FieldElement& y);

  static ProjPoint infinity(const Field& f);
  static ProjPoint affine(const FieldElement& t);

  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }
  bool is_infinity() const { return y_.is_zero(); }
  /// x/y; requires !is_infinity().
  FieldElement t() const;

  bool operator==(const ProjPoint& b) const { return x_ == b.x_ && y_ == b.y_; }
  bool operator!=(const ProjPoint& b) const { return !(*this == b); }
  std::string key() const;
  std::string to_string() const;

 private:
  FieldElement x_, y_;
};

class ProjElem {
 public:
  ProjElem() = default;

  /// Errors: ZeroMatrix, SingularMatrix.
  static ProjElem normalize(const Mat2& m);
  static ProjElem identity(const Field& f);

  const Mat2& rep() const { return rep_; }
  Field field() const { return rep_.field(); }
  bool is_identity() const;

  ProjElem operator*(const ProjElem& b) const;
  ProjElem inv() const;
  ProjElem pow(std::uint64_t e) const;
  bool operator==(const ProjElem& b) const { return rep_ == b.rep_; }
  bool operator!=(const ProjElem& b) const { return !(*this == b); }
  bool commutes_with(const ProjElem& b) const { return (*this * b) == (b * *this); }

  ProjPoint apply(const ProjPoint& p) const;
  /// Least n <= bound with g^n = 1.
  std::optional<std::uint64_t> order(std::uint64_t bound = 120) const;

  std::string key() const { return rep_.key(); }

 private:
  explicit ProjElem(Mat2 rep) : rep_(std::move(rep)) {}
  Mat2 rep_;
};

struct EigenPair {
  FieldElement value;
  ProjPoint line;
};

struct EigenReport {
  std::vector<EigenPair> pairs;
  /// Scalar matrix: every point is an eigenline.
  bool scalar = false;
  /// Characteristic polynomial has no root in the represented field.
  bool extension_required = false;
};

EigenReport eigenvectors(const Mat2& m);

/// Kernel of a singular nonzero matrix; nullopt for the zero matrix or an
/// invertible one.
std::optional<ProjPoint> kernel_line(const Mat2& m);

/// Roots of x^2 - s x + p in the field; nullopt when they need an extension.
std::optional<std::vector<FieldElement>> quadratic_roots(const FieldElement& s, const FieldElement& p);

}  // namespace skewgroup
