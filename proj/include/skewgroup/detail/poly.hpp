#pragma once

// Dense univariate polynomials over a prime field (Q or F_p). Internal to
// the field implementation: extension arithmetic, inverses by extended
// Euclid, and the irreducibility certificates used when a field is built.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace skewgroup::detail {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Scalar arithmetic in the prime field. Modulus 0 means Q; otherwise every
/// value is an integer in [0, p) stored with denominator 1.
class PrimeArith {
 public:
  explicit PrimeArith(BigInt p = 0) : p_(std::move(p)) {}

  const BigInt& modulus() const { return p_; }
  bool rational() const { return p_ == 0; }

  Rational reduce(const Rational& a) const;
  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

 private:
  BigInt p_;
};

/// Coefficients low-to-high; the zero polynomial is empty.
using Poly = std::vector<Rational>;

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const PrimeArith& ar, const Poly& a, const Poly& b);
Poly sub(const PrimeArith& ar, const Poly& a, const Poly& b);
Poly mul(const PrimeArith& ar, const Poly& a, const Poly& b);
Poly scale(const PrimeArith& ar, const Poly& a, const Rational& c);
std::pair<Poly, Poly> divmod(const PrimeArith& ar, const Poly& a, const Poly& b);
Poly mod(const PrimeArith& ar, const Poly& a, const Poly& b);
Poly make_monic(const PrimeArith& ar, const Poly& a);
Poly gcd(const PrimeArith& ar, Poly a, Poly b);
Poly derivative(const PrimeArith& ar, const Poly& a);
Poly powmod(const PrimeArith& ar, const Poly& base, const BigInt& e, const Poly& m);

struct Xgcd {
  Poly g;  // monic
  Poly s;  // s*a + t*b = g
  Poly t;
};
Xgcd xgcd(const PrimeArith& ar, const Poly& a, const Poly& b);

/// Φ_n over Q with integer coefficients.
Poly cyclotomic_poly(unsigned n);
std::uint64_t euler_phi(std::uint64_t n);
bool is_prime(const BigInt& n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Degrees of the irreducible factors of a monic squarefree polynomial over F_p.
std::vector<int> distinct_degree_pattern(const PrimeArith& ar, Poly f);

enum class Irreducibility { Irreducible, Reducible, Unknown };

/// `f` must be monic of degree >= 1.
Irreducibility irreducibility(const PrimeArith& ar, const Poly& f);

}  // namespace skewgroup::detail
