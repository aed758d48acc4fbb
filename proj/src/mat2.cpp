#include "skewgroup/mat2.hpp"

#include "skewgroup/error.hpp"

namespace skewgroup {

Mat2::Mat2(FieldElement a11, FieldElement a12, FieldElement a21, FieldElement a22)
    : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {
  for (int i = 1; i < 4; ++i) {
    if (e_[0].field() != e_[static_cast<std::size_t>(i)].field()) throw Error(ErrorCode::MixedFields, "matrix entries from different fields");
  }
}

Mat2 Mat2::identity(const Field& f) { return Mat2(f.one(), f.zero(), f.zero(), f.one()); }
Mat2 Mat2::zero(const Field& f) { return Mat2(f.zero(), f.zero(), f.zero(), f.zero()); }

Mat2 Mat2::diag(const FieldElement& a, const FieldElement& d) {
  const Field f = a.field();
  return Mat2(a, f.zero(), f.zero(), d);
}

FieldElement Mat2::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
FieldElement Mat2::trace() const { return e_[0] + e_[3]; }

Mat2 Mat2::inv() const {
  const FieldElement d = det();
  if (d.is_zero()) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  const FieldElement s = d.inv();
  return Mat2(e_[3] * s, -e_[1] * s, -e_[2] * s, e_[0] * s);
}

Mat2 Mat2::scaled(const FieldElement& s) const { return Mat2(e_[0] * s, e_[1] * s, e_[2] * s, e_[3] * s); }

bool Mat2::is_zero() const {
  for (const auto& e : e_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool Mat2::is_scalar() const { return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3] && !e_[0].is_zero(); }

Mat2 Mat2::operator+(const Mat2& b) const {
  return Mat2(e_[0] + b.e_[0], e_[1] + b.e_[1], e_[2] + b.e_[2], e_[3] + b.e_[3]);
}

Mat2 Mat2::operator-(const Mat2& b) const {
  return Mat2(e_[0] - b.e_[0], e_[1] - b.e_[1], e_[2] - b.e_[2], e_[3] - b.e_[3]);
}

Mat2 Mat2::operator*(const Mat2& b) const {
  return Mat2(e_[0] * b.e_[0] + e_[1] * b.e_[2], e_[0] * b.e_[1] + e_[1] * b.e_[3],
              e_[2] * b.e_[0] + e_[3] * b.e_[2], e_[2] * b.e_[1] + e_[3] * b.e_[3]);
}

bool Mat2::operator==(const Mat2& b) const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (e_[i] != b.e_[i]) return false;
  }
  return true;
}

std::array<FieldElement, 2> Mat2::apply(const FieldElement& x, const FieldElement& y) const {
  return {e_[0] * x + e_[1] * y, e_[2] * x + e_[3] * y};
}

std::string Mat2::key() const {
  return e_[0].key() + ";" + e_[1].key() + ";" + e_[2].key() + ";" + e_[3].key();
}

std::string Mat2::to_string() const {
  return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() + ", " + e_[3].to_string() + "]]";
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

ProjPoint::ProjPoint(const FieldElement& x, const FieldElement& y) {
  if (x.field() != y.field()) throw Error(ErrorCode::MixedFields, "point coordinates from different fields");
  if (!x.is_zero()) {
    const FieldElement s = x.inv();
    x_ = x.field().one();
    y_ = y * s;
  } else if (!y.is_zero()) {
    x_ = x;
    y_ = y.field().one();
  } else {
    throw Error(ErrorCode::InvalidParameters, "point [0:0] is not in P^1");
  }
}

ProjPoint ProjPoint::infinity(const Field& f) { return ProjPoint(f.one(), f.zero()); }
ProjPoint ProjPoint::affine(const FieldElement& t) { return ProjPoint(t, t.field().one()); }

FieldElement ProjPoint::t() const {
  if (is_infinity()) throw Error(ErrorCode::DivisionByZero, "point at infinity has no affine coordinate");
  return x_ / y_;
}

std::string ProjPoint::key() const { return x_.key() + ":" + y_.key(); }
std::string ProjPoint::to_string() const { return "[" + x_.to_string() + ":" + y_.to_string() + "]"; }

ProjElem ProjElem::normalize(const Mat2& m) {
  if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "zero matrix has no projective class");
  if (m.det().is_zero()) throw Error(ErrorCode::SingularMatrix, "singular matrix has no projective class");
  for (const auto& e : m.entries()) {
    if (e.is_zero()) continue;
    if (e.is_one()) return ProjElem(m);
    return ProjElem(m.scaled(e.inv()));
  }
  return ProjElem(m);
}

ProjElem ProjElem::identity(const Field& f) { return ProjElem(Mat2::identity(f)); }

bool ProjElem::is_identity() const { return rep_ == Mat2::identity(rep_.field()); }

ProjElem ProjElem::operator*(const ProjElem& b) const { return normalize(rep_ * b.rep_); }

ProjElem ProjElem::inv() const {
  const Mat2& m = rep_;
  return normalize(Mat2(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)));
}

ProjElem ProjElem::pow(std::uint64_t e) const {
  ProjElem result = identity(field());
  ProjElem base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

ProjPoint ProjElem::apply(const ProjPoint& p) const {
  auto v = rep_.apply(p.x(), p.y());
  return ProjPoint(v[0], v[1]);
}

std::optional<std::uint64_t> ProjElem::order(std::uint64_t bound) const {
  ProjElem x = *this;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (x.is_identity()) return n;
    x = x * *this;
  }
  return std::nullopt;
}

std::optional<std::vector<FieldElement>> quadratic_roots(const FieldElement& s, const FieldElement& p) {
  const Field f = s.field();
  if (f.characteristic() != 2) {
    const FieldElement disc = s * s - f.from_int(4) * p;
    std::optional<FieldElement> r;
    try {
      r = disc.sqrt();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedField) throw;
      return std::nullopt;
    }
    if (!r) return std::nullopt;
    const FieldElement half = f.from_int(2).inv();
    if (r->is_zero()) return std::vector<FieldElement>{s * half};
    return std::vector<FieldElement>{(s + *r) * half, (s - *r) * half};
  }
  if (s.is_zero()) return std::vector<FieldElement>{*p.sqrt()};
  // Characteristic 2 with s != 0: distinct roots, found by enumeration.
  const BigInt q = *f.order();
  if (q > 1'000'000) return std::nullopt;
  const std::uint64_t n = q.get_ui();
  for (std::uint64_t k = 0; k < n; ++k) {
    const FieldElement x = f.element_at(k);
    if ((x * x - s * x + p).is_zero()) return std::vector<FieldElement>{x, s - x};
  }
  return std::nullopt;
}

std::optional<ProjPoint> kernel_line(const Mat2& m) {
  if (m.is_zero() || !m.det().is_zero()) return std::nullopt;
  if (!m(0, 0).is_zero() || !m(0, 1).is_zero()) return ProjPoint(-m(0, 1), m(0, 0));
  return ProjPoint(-m(1, 1), m(1, 0));
}

EigenReport eigenvectors(const Mat2& m) {
  EigenReport report;
  if (m.is_scalar() || m.is_zero()) {
    report.scalar = true;
    return report;
  }
  const Field f = m.field();
  std::vector<FieldElement> values;
  if (m(1, 0).is_zero()) {
    values = {m(0, 0)};
    if (m(1, 1) != m(0, 0)) values.push_back(m(1, 1));
  } else if (m(0, 1).is_zero()) {
    values = {m(0, 0)};
    if (m(1, 1) != m(0, 0)) values.push_back(m(1, 1));
  } else {
    auto roots = quadratic_roots(m.trace(), m.det());
    if (!roots) {
      report.extension_required = true;
      return report;
    }
    values = *roots;
  }
  const Mat2 id = Mat2::identity(f);
  for (const FieldElement& v : values) {
    auto line = kernel_line(m - id.scaled(v));
    if (line) report.pairs.push_back({v, *line});
  }
  return report;
}

}  // namespace skewgroup
