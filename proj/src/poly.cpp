#include "skewgroup/detail/poly.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <optional>

#include "skewgroup/error.hpp"

namespace skewgroup::detail {

Rational PrimeArith::reduce(const Rational& a) const {
  if (p_ == 0) return a;
  BigInt num = a.get_num() % p_;
  if (num < 0) num += p_;
  if (a.get_den() == 1) return Rational(num);
  BigInt den = a.get_den() % p_;
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes modulo " + p_.get_str());
  BigInt den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
  BigInt r = (num * den_inv) % p_;
  return Rational(r);
}

Rational PrimeArith::add(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a + b;
  BigInt r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return Rational(r);
}

Rational PrimeArith::sub(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a - b;
  BigInt r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return Rational(r);
}

Rational PrimeArith::mul(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a * b;
  BigInt r = (a.get_num() * b.get_num()) % p_;
  return Rational(r);
}

Rational PrimeArith::neg(const Rational& a) const {
  if (p_ == 0) return -a;
  if (sgn(a) == 0) return a;
  return Rational(p_ - a.get_num());
}

Rational PrimeArith::inv(const Rational& a) const {
  if (sgn(a) == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (p_ == 0) return 1 / a;
  BigInt r;
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p_.get_mpz_t());
  return Rational(r);
}

void trim(Poly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const PrimeArith& ar, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = ar.add(a[i], b[i]);
    else r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(r);
  return r;
}

Poly sub(const PrimeArith& ar, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = ar.sub(a[i], b[i]);
    else r[i] = i < a.size() ? a[i] : ar.neg(b[i]);
  }
  trim(r);
  return r;
}

Poly mul(const PrimeArith& ar, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ar.add(r[i + j], ar.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const PrimeArith& ar, const Poly& a, const Rational& c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ar.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const PrimeArith& ar, const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1);
  const Rational lead_inv = ar.inv(b.back());
  for (int k = degree(r); k >= degree(b); --k) {
    const Rational c = ar.mul(r[k], lead_inv);
    const std::size_t shift = static_cast<std::size_t>(k - degree(b));
    q[shift] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = ar.sub(r[shift + i], ar.mul(c, b[i]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const PrimeArith& ar, const Poly& a, const Poly& b) { return divmod(ar, a, b).second; }

Poly make_monic(const PrimeArith& ar, const Poly& a) {
  if (a.empty()) return a;
  return scale(ar, a, ar.inv(a.back()));
}

Poly gcd(const PrimeArith& ar, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(ar, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(ar, a);
}

Poly derivative(const PrimeArith& ar, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = ar.mul(ar.reduce(Rational(static_cast<unsigned long>(i))), a[i]);
  trim(r);
  return r;
}

Poly powmod(const PrimeArith& ar, const Poly& base, const BigInt& e, const Poly& m) {
  Poly result{Rational(1)};
  result = mod(ar, result, m);
  Poly b = mod(ar, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(ar, mul(ar, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(ar, mul(ar, result, b), m);
  }
  return result;
}

Xgcd xgcd(const PrimeArith& ar, const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  Poly s0{Rational(1)}, s1{};
  Poly t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(ar, r0, r1);
    Poly s2 = sub(ar, s0, mul(ar, q, s1));
    Poly t2 = sub(ar, t0, mul(ar, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const Rational lead_inv = ar.inv(r0.back());
  return {scale(ar, r0, lead_inv), scale(ar, s0, lead_inv), scale(ar, t0, lead_inv)};
}

Poly cyclotomic_poly(unsigned n) {
  const PrimeArith q;
  Poly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = divmod(q, num, cyclotomic_poly(d)).first;
  }
  return num;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<int> distinct_degree_pattern(const PrimeArith& ar, Poly f) {
  std::vector<int> degrees;
  const Poly x{Rational(0), Rational(1)};
  Poly h = x;
  for (int i = 1; degree(f) >= 2 * i; ++i) {
    h = powmod(ar, h, ar.modulus(), f);
    Poly g = gcd(ar, sub(ar, h, x), f);
    if (degree(g) > 0) {
      for (int k = 0; k < degree(g) / i; ++k) degrees.push_back(i);
      f = divmod(ar, f, g).first;
      h = mod(ar, h, f);
    }
  }
  if (degree(f) > 0) degrees.push_back(degree(f));
  return degrees;
}

namespace {

Irreducibility rabin(const PrimeArith& ar, const Poly& f) {
  const int n = degree(f);
  const Poly x{Rational(0), Rational(1)};
  // x^(p^k) mod f for k = 1..n
  std::vector<Poly> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = mod(ar, x, f);
  for (int k = 1; k <= n; ++k) frob[k] = powmod(ar, frob[k - 1], ar.modulus(), f);
  if (sub(ar, frob[n], frob[0]).size() != 0) return Irreducibility::Reducible;
  for (std::uint64_t q : prime_factors(static_cast<std::uint64_t>(n))) {
    const Poly g = gcd(ar, sub(ar, frob[n / q], frob[0]), f);
    if (degree(g) > 0) return Irreducibility::Reducible;
  }
  return Irreducibility::Irreducible;
}

constexpr unsigned long kDivisorLimit = 1'000'000'000'000UL;

BigInt eval(const std::vector<BigInt>& g, const BigInt& x) {
  BigInt r = 0;
  for (std::size_t i = g.size(); i-- > 0;) r = r * x + g[i];
  return r;
}

// Positive divisors of |n|; empty optional when |n| is too large to factor by trial division.
std::optional<std::vector<BigInt>> divisors(const BigInt& n) {
  BigInt m = abs(n);
  if (m > BigInt(std::to_string(kDivisorLimit))) return std::nullopt;
  const unsigned long v = m.get_ui();
  std::vector<BigInt> out;
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.emplace_back(d);
    if (d != v / d) out.emplace_back(v / d);
  }
  return out;
}

std::optional<bool> has_integer_root(const std::vector<BigInt>& g) {
  if (g[0] == 0) return true;
  if (g.size() == 3) {
    BigInt disc = g[1] * g[1] - 4 * g[0];
    return disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()) != 0;
  }
  auto ds = divisors(g[0]);
  if (!ds) return std::nullopt;
  for (const BigInt& d : *ds) {
    if (eval(g, d) == 0 || eval(g, -d) == 0) return true;
  }
  return false;
}

// Monic integer quartic: does it split as a product of two integer quadratics?
std::optional<bool> has_quadratic_factor(const std::vector<BigInt>& g) {
  const BigInt& c0 = g[0];
  const BigInt& c1 = g[1];
  const BigInt& c2 = g[2];
  const BigInt& c3 = g[3];
  auto ds = divisors(c0);
  if (!ds) return std::nullopt;
  for (const BigInt& d : *ds) {
    for (const BigInt& b : {d, BigInt(-d)}) {
      const BigInt b2 = c0 / b;
      if (b != b2) {
        const BigInt num = c1 - c3 * b;
        const BigInt den = b2 - b;
        if (num % den != 0) continue;
        const BigInt a = num / den;
        if (b + b2 + a * (c3 - a) == c2) return true;
      } else {
        if (c1 != c3 * b) continue;
        const BigInt disc = c3 * c3 - 4 * (c2 - 2 * b);
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()) != 0) {
          BigInt root;
          mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
          if ((c3 + root) % 2 == 0) return true;
        }
      }
    }
  }
  return false;
}

bool is_cyclotomic(const Poly& f) {
  const int n = degree(f);
  const std::uint64_t limit = 2ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) + 2;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    if (euler_phi(m) != static_cast<std::uint64_t>(n)) continue;
    if (cyclotomic_poly(static_cast<unsigned>(m)) == f) return true;
  }
  return false;
}

// Factor-degree patterns modulo several primes: if the only subset sums common
// to every pattern are 0 and n, no factorization over Q is possible.
bool pattern_certificate(const std::vector<BigInt>& g) {
  const int n = static_cast<int>(g.size()) - 1;
  std::bitset<256> common;
  common.set();
  int used = 0;
  for (unsigned long ell = 2; ell < 2000 && used < 60; ++ell) {
    if (!is_prime(BigInt(ell))) continue;
    const PrimeArith ar{BigInt(ell)};
    Poly f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = ar.reduce(Rational(g[i]));
    trim(f);
    if (degree(gcd(ar, f, derivative(ar, f))) != 0) continue;
    ++used;
    std::bitset<256> sums;
    sums.set(0);
    for (int d : distinct_degree_pattern(ar, f)) sums |= sums << static_cast<std::size_t>(d);
    common &= sums;
    bool only_trivial = true;
    for (int k = 1; k < n; ++k) {
      if (common.test(static_cast<std::size_t>(k))) only_trivial = false;
    }
    if (only_trivial) return true;
  }
  return false;
}

Irreducibility rational_test(const Poly& f) {
  const int n = degree(f);
  if (n == 1) return Irreducibility::Irreducible;
  if (n >= 255) return Irreducibility::Unknown;
  BigInt den = 1;
  for (const Rational& c : f) den = lcm(den, BigInt(c.get_den()));
  std::vector<BigInt> g(f.size());
  BigInt power = 1;
  g[n] = 1;
  for (int i = n - 1; i >= 0; --i) {
    power *= den;
    Rational v = f[i] * Rational(power);
    g[i] = v.get_num();
  }
  auto root = has_integer_root(g);
  if (root && *root) return Irreducibility::Reducible;
  if (n <= 3) return root ? Irreducibility::Irreducible : Irreducibility::Unknown;
  if (n == 4) {
    auto quad = has_quadratic_factor(g);
    if (quad && *quad) return Irreducibility::Reducible;
    if (root && quad) return Irreducibility::Irreducible;
  }
  if (is_cyclotomic(f)) return Irreducibility::Irreducible;
  if (pattern_certificate(g)) return Irreducibility::Irreducible;
  return Irreducibility::Unknown;
}

}  // namespace

Irreducibility irreducibility(const PrimeArith& ar, const Poly& f) {
  if (degree(f) < 1) return Irreducibility::Reducible;
  if (ar.rational()) return rational_test(f);
  return rabin(ar, f);
}

}  // namespace skewgroup::detail
