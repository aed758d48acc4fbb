#pragma once

// Exact fields: Q, F_p and simple extensions F[z]/(m(z)). Towers are
// flattened to one extension of the prime field when the field is built, so
// every element is a coefficient vector over Q or F_p in the basis
// 1, z, ..., z^(n-1) of a single primitive element z.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace skewgroup {

using Rational = mpq_class;
using BigInt = mpz_class;

namespace detail {
struct FieldImpl;
}

struct FieldSpec {
  enum class Kind { Rational, Prime, Extension };

  Kind kind = Kind::Rational;
  BigInt p = 0;
  std::shared_ptr<const FieldSpec> base;
  // Low-to-high; each coefficient is an element of the base written in the
  // base's own (flattened) coordinates.
  std::vector<std::vector<Rational>> minpoly;

  static FieldSpec rational();
  static FieldSpec prime(const BigInt& p);
  static FieldSpec extension(const FieldSpec& base, std::vector<std::vector<Rational>> minpoly);
  /// Minimal polynomial with scalar coefficients (prime-field values).
  static FieldSpec extension(const FieldSpec& base, const std::vector<Rational>& minpoly);

  BigInt characteristic() const;
  /// Degree over the prime field.
  unsigned degree() const;

  bool operator==(const FieldSpec& other) const;
  bool operator!=(const FieldSpec& other) const { return !(*this == other); }
};

class Field;

class FieldElement {
 public:
  FieldElement() = default;

  Field field() const;
  bool valid() const { return static_cast<bool>(f_); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  /// Lies in the prime field.
  bool is_scalar() const;

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  bool operator==(const FieldElement& b) const;
  bool operator!=(const FieldElement& b) const { return !(*this == b); }

  FieldElement inv() const;
  FieldElement pow(const BigInt& e) const;
  FieldElement pow(long long e) const { return pow(BigInt(std::to_string(e))); }

  /// Some x with x*x == *this, or nullopt when none exists in the field. The
  /// returned root has a "positive" leading coefficient (first nonzero
  /// coefficient > 0 in Q, <= (p-1)/2 in F_p).
  std::optional<FieldElement> sqrt() const;

  /// Least n <= bound with a^n = 1.
  std::optional<std::uint64_t> mult_order(std::uint64_t bound) const;

  /// Canonical coefficient strings, low-to-high.
  std::vector<std::string> coeff_strings() const;
  /// Compact canonical key, equal iff elements are equal (same field).
  std::string key() const;
  /// Human-readable polynomial in z, e.g. "1/2 - 3*z^2".
  std::string to_string() const;
  std::size_t hash() const;

 private:
  friend class Field;
  FieldElement(std::shared_ptr<const detail::FieldImpl> f, std::vector<Rational> c)
      : f_(std::move(f)), c_(std::move(c)) {}
  const detail::FieldImpl& impl() const;
  void check_same(const FieldElement& b) const;

  std::shared_ptr<const detail::FieldImpl> f_;
  std::vector<Rational> c_;
};

class Field {
 public:
  Field() = default;

  /// Errors: NonPrimeModulus, ReducibleMinpoly, InvalidFieldSpec.
  static Field make(const FieldSpec& spec);
  static Field rationals();
  static Field prime(const BigInt& p);
  /// Q[z]/(Phi_n); n <= 2 gives Q.
  static Field cyclotomic(unsigned n);

  const FieldSpec& spec() const;
  BigInt characteristic() const;
  unsigned degree() const;
  bool finite() const;
  /// Number of elements for finite fields.
  std::optional<BigInt> order() const;
  /// Monic minimal polynomial of z over the prime field (z itself for degree 1).
  const std::vector<Rational>& modulus() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long v) const;
  FieldElement from_rational(const Rational& v) const;
  FieldElement from_coeffs(std::vector<Rational> coeffs) const;
  /// The primitive element z; zero for degree-1 fields.
  FieldElement gen() const;
  /// Deterministic enumeration: element_at(0) = 0, element_at(1) = 1, and
  /// distinct indices give distinct elements.
  FieldElement element_at(std::uint64_t index) const;
  /// Images of the generators of each tower level, innermost first.
  std::vector<FieldElement> tower_generators() const;
  /// Expression in z with integers, + - * / ^ and parentheses.
  FieldElement parse(const std::string& text) const;

  bool valid() const { return static_cast<bool>(impl_); }
  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  friend class FieldElement;
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FieldImpl> impl_;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& a) const { return a.hash(); }
};

}  // namespace skewgroup
