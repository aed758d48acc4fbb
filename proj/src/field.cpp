#include "skewgroup/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "skewgroup/detail/poly.hpp"
#include "skewgroup/error.hpp"

namespace skewgroup {

using detail::Irreducibility;
using detail::Poly;
using detail::PrimeArith;

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::rational() { return FieldSpec{}; }

FieldSpec FieldSpec::prime(const BigInt& p) {
  FieldSpec s;
  s.kind = Kind::Prime;
  s.p = p;
  return s;
}

FieldSpec FieldSpec::extension(const FieldSpec& base, std::vector<std::vector<Rational>> minpoly) {
  FieldSpec s;
  s.kind = Kind::Extension;
  s.base = std::make_shared<const FieldSpec>(base);
  s.minpoly = std::move(minpoly);
  return s;
}

FieldSpec FieldSpec::extension(const FieldSpec& base, const std::vector<Rational>& minpoly) {
  std::vector<std::vector<Rational>> coeffs;
  coeffs.reserve(minpoly.size());
  for (const Rational& c : minpoly) coeffs.push_back({c});
  return extension(base, std::move(coeffs));
}

BigInt FieldSpec::characteristic() const {
  switch (kind) {
    case Kind::Rational: return 0;
    case Kind::Prime: return p;
    case Kind::Extension: return base ? base->characteristic() : BigInt(0);
  }
  return 0;
}

unsigned FieldSpec::degree() const {
  if (kind != Kind::Extension) return 1;
  const unsigned d = minpoly.empty() ? 0 : static_cast<unsigned>(minpoly.size() - 1);
  return (base ? base->degree() : 1) * d;
}

bool FieldSpec::operator==(const FieldSpec& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Rational: return true;
    case Kind::Prime: return p == other.p;
    case Kind::Extension:
      if (minpoly != other.minpoly) return false;
      if (!base || !other.base) return base == other.base;
      return *base == *other.base;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Implementation record

namespace detail {

using Complex = std::complex<long double>;

struct FieldImpl {
  FieldSpec spec;
  PrimeArith ar;
  unsigned n = 1;
  Poly modulus;                              // monic, size n + 1
  std::vector<std::vector<Rational>> red;    // z^(n+k) mod m for k = 0..n-2
  std::vector<std::vector<Rational>> tower;  // tower generator coordinates

  // Characteristic-0 square-root support (degree > 1, integral modulus).
  bool integral = false;
  BigInt root_denominator = 1;
  std::vector<Complex> roots;
  std::vector<std::vector<Complex>> vandermonde_inv;
};

}  // namespace detail

using detail::FieldImpl;

namespace {

std::vector<Rational> pad(const PrimeArith& ar, Poly p, unsigned n) {
  p.resize(n);
  for (Rational& c : p) c = ar.reduce(c);
  return p;
}

std::vector<Rational> mul_raw(const FieldImpl& f, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const unsigned n = f.n;
  const PrimeArith& ar = f.ar;
  if (n == 1) return {ar.mul(a[0], b[0])};
  std::vector<Rational> prod(2 * n - 1);
  for (unsigned i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      prod[i + j] = ar.add(prod[i + j], ar.mul(a[i], b[j]));
    }
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + n);
  for (unsigned k = n; k < 2 * n - 1; ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& r = f.red[k - n];
    for (unsigned i = 0; i < n; ++i) out[i] = ar.add(out[i], ar.mul(prod[k], r[i]));
  }
  return out;
}

// Solve sum_k x_k cols[k] = target over the prime field; nullopt when the
// columns are dependent or the system is inconsistent.
std::optional<std::vector<Rational>> solve_columns(const PrimeArith& ar, const std::vector<std::vector<Rational>>& cols,
                                                   const std::vector<Rational>& target) {
  const std::size_t rows = target.size();
  const std::size_t nc = cols.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(nc + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < nc; ++c) m[r][c] = cols[c][r];
    m[r][nc] = target[r];
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t piv = row;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) return std::nullopt;
    std::swap(m[piv], m[row]);
    const Rational inv = ar.inv(m[row][c]);
    for (auto& v : m[row]) v = ar.mul(v, inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      const Rational factor = m[r][c];
      for (std::size_t k = 0; k <= nc; ++k) m[r][k] = ar.sub(m[r][k], ar.mul(factor, m[row][k]));
    }
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (sgn(m[r][nc]) != 0) return std::nullopt;
  }
  std::vector<Rational> x(nc);
  for (std::size_t c = 0; c < nc; ++c) x[c] = m[c][nc];
  return x;
}

Rational resultant(const PrimeArith& ar, Poly a, Poly b) {
  detail::trim(a);
  detail::trim(b);
  if (a.empty() || b.empty()) return 0;
  Rational acc = 1;
  while (true) {
    const int da = detail::degree(a);
    const int db = detail::degree(b);
    if (db == 0) {
      Rational r = 1;
      for (int i = 0; i < da; ++i) r *= b.back();
      return acc * r;
    }
    Poly r = detail::mod(ar, a, b);
    if (r.empty()) return 0;
    const int dr = detail::degree(r);
    if ((da * db) % 2 != 0) acc = -acc;
    for (int i = 0; i < da - dr; ++i) acc *= b.back();
    a = std::move(b);
    b = std::move(r);
  }
}

// Largest f with f^2 dividing n, using trial division plus a square check on
// the leftover cofactor.
BigInt square_part(BigInt n) {
  n = abs(n);
  BigInt f = 1;
  for (unsigned long q = 2; q < 100000 && BigInt(q) * q <= n; ++q) {
    while (n % (q * q) == 0) {
      n /= q * q;
      f *= q;
    }
    while (n % q == 0) n /= q;
  }
  if (n > 1 && mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    f *= s;
  }
  return f;
}

void prepare_complex(FieldImpl& f) {
  using detail::Complex;
  f.integral = std::all_of(f.modulus.begin(), f.modulus.end(), [](const Rational& c) { return c.get_den() == 1; });
  if (!f.integral || f.n > 20) return;
  const unsigned n = f.n;
  std::vector<Complex> z(n);
  const Complex seed(0.4L, 0.9L);
  for (unsigned k = 0; k < n; ++k) z[k] = std::pow(seed, static_cast<int>(k));
  auto eval = [&](const Complex& x) {
    Complex r = 0;
    for (std::size_t i = f.modulus.size(); i-- > 0;) r = r * x + static_cast<long double>(f.modulus[i].get_d());
    return r;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double delta = 0;
    for (unsigned i = 0; i < n; ++i) {
      Complex den = 1;
      for (unsigned j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const Complex step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-18L) break;
  }
  f.roots = z;
  // Vandermonde inverse by Gauss-Jordan with partial pivoting.
  std::vector<std::vector<Complex>> a(n, std::vector<Complex>(2 * n));
  for (unsigned i = 0; i < n; ++i) {
    Complex p = 1;
    for (unsigned k = 0; k < n; ++k) {
      a[i][k] = p;
      p *= z[i];
    }
    a[i][n + i] = 1;
  }
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    for (unsigned r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    const Complex inv = 1.0L / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (unsigned r = 0; r < n; ++r) {
      if (r == c) continue;
      const Complex factor = a[r][c];
      for (unsigned k = 0; k < 2 * n; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  f.vandermonde_inv.assign(n, std::vector<Complex>(n));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k < n; ++k) f.vandermonde_inv[i][k] = a[i][n + k];
  }
  const PrimeArith q;
  Rational disc = resultant(q, f.modulus, detail::derivative(q, f.modulus));
  f.root_denominator = square_part(disc.get_num());
}

std::shared_ptr<FieldImpl> simple_impl(const FieldSpec& spec, const PrimeArith& ar, Poly modulus) {
  auto f = std::make_shared<FieldImpl>();
  f->spec = spec;
  f->ar = ar;
  f->modulus = std::move(modulus);
  f->n = static_cast<unsigned>(f->modulus.size() - 1);
  const unsigned n = f->n;
  if (n > 1) {
    Poly zk(n + 1);
    zk[n] = 1;
    std::vector<Rational> cur = pad(ar, detail::mod(ar, zk, f->modulus), n);
    f->red.push_back(cur);
    for (unsigned k = 1; k + 1 < n; ++k) {
      // multiply by z
      std::vector<Rational> next(n);
      const Rational top = cur[n - 1];
      for (unsigned i = n - 1; i > 0; --i) next[i] = cur[i - 1];
      for (unsigned i = 0; i < n; ++i) next[i] = ar.sub(next[i], ar.mul(top, f->modulus[i]));
      f->red.push_back(next);
      cur = std::move(next);
    }
    std::vector<Rational> z(n);
    z[1] = 1;
    f->tower.push_back(z);
  }
  if (ar.rational() && n > 1) prepare_complex(*f);
  return f;
}

Poly monic_check(const PrimeArith& ar, const std::vector<Rational>& coeffs) {
  Poly m(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) m[i] = ar.reduce(coeffs[i]);
  detail::trim(m);
  if (detail::degree(m) < 2) throw Error(ErrorCode::InvalidFieldSpec, "minimal polynomial must have degree >= 2");
  if (m.back() != 1) throw Error(ErrorCode::InvalidFieldSpec, "minimal polynomial must be monic");
  return m;
}

std::shared_ptr<const FieldImpl> build(const FieldSpec& spec);

// Tower case: base K of degree > 1 over the prime field, g of degree d over K.
std::shared_ptr<const FieldImpl> flatten(const FieldSpec& spec, const Field& base) {
  const std::size_t d = spec.minpoly.size() - 1;
  std::vector<FieldElement> g;
  for (const auto& c : spec.minpoly) g.push_back(base.from_coeffs(c));
  while (!g.empty() && g.back().is_zero()) g.pop_back();
  if (g.size() < 3) throw Error(ErrorCode::InvalidFieldSpec, "minimal polynomial must have degree >= 2");
  if (!g.back().is_one()) throw Error(ErrorCode::InvalidFieldSpec, "minimal polynomial must be monic");
  if (g.size() - 1 != d) throw Error(ErrorCode::InvalidFieldSpec, "minimal polynomial has trailing zeros");

  using Alg = std::vector<FieldElement>;  // element of K[w]/(g), length d
  auto alg_mul = [&](const Alg& a, const Alg& b) {
    Alg prod(2 * d - 1, base.zero());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
    }
    for (std::size_t k = prod.size(); k-- > d;) {
      const FieldElement top = prod[k];
      if (top.is_zero()) continue;
      for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= top * g[i];
    }
    prod.resize(d);
    return prod;
  };
  const unsigned dk = base.degree();
  const std::size_t total = d * dk;
  auto coords = [&](const Alg& a) {
    std::vector<Rational> out;
    out.reserve(total);
    for (const auto& e : a) out.insert(out.end(), e.coeffs().begin(), e.coeffs().end());
    return out;
  };
  const PrimeArith ar(base.characteristic());

  std::vector<Alg> candidates;
  for (std::uint64_t k = 0; k < 64; ++k) {
    FieldElement c;
    try {
      c = base.element_at(k);
    } catch (const Error&) {
      break;
    }
    Alg theta(d, base.zero());
    theta[0] = c;
    theta[1] = base.one();
    candidates.push_back(theta);
    Alg alt(d, base.zero());
    alt[0] = base.gen();
    alt[1] = c;
    candidates.push_back(alt);
  }
  for (const Alg& theta : candidates) {
    std::vector<std::vector<Rational>> powers;
    Alg cur(d, base.zero());
    cur[0] = base.one();
    for (std::size_t k = 0; k < total; ++k) {
      powers.push_back(coords(cur));
      cur = alg_mul(cur, theta);
    }
    auto rel = solve_columns(ar, powers, coords(cur));
    if (!rel) continue;
    // Independence of 1..theta^(N-1): every unit vector must be reachable.
    bool independent = true;
    for (std::size_t i = 0; i < total && independent; ++i) {
      std::vector<Rational> e(total);
      e[i] = 1;
      if (!solve_columns(ar, powers, e)) independent = false;
    }
    if (!independent) continue;
    Poly m(total + 1);
    for (std::size_t k = 0; k < total; ++k) m[k] = ar.neg((*rel)[k]);
    m[total] = 1;
    const Irreducibility irr = detail::irreducibility(ar, m);
    if (irr != Irreducibility::Irreducible) {
      throw Error(ErrorCode::ReducibleMinpoly, irr == Irreducibility::Reducible
                                                   ? "tower does not define a field"
                                                   : "could not certify irreducibility of the flattened tower");
    }
    auto f = simple_impl(spec, ar, m);
    f->tower.clear();
    for (const FieldElement& t : base.tower_generators()) {
      Alg a(d, base.zero());
      a[0] = t;
      f->tower.push_back(*solve_columns(ar, powers, coords(a)));
    }
    Alg w(d, base.zero());
    w[1] = base.one();
    f->tower.push_back(*solve_columns(ar, powers, coords(w)));
    return f;
  }
  throw Error(ErrorCode::ReducibleMinpoly, "no primitive element found; tower does not define a field");
}

std::shared_ptr<const FieldImpl> build(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldSpec::Kind::Rational: return simple_impl(spec, PrimeArith(), Poly{0, 1});
    case FieldSpec::Kind::Prime:
      if (!detail::is_prime(spec.p)) throw Error(ErrorCode::NonPrimeModulus, spec.p.get_str() + " is not prime");
      return simple_impl(spec, PrimeArith(spec.p), Poly{0, 1});
    case FieldSpec::Kind::Extension: {
      if (!spec.base) throw Error(ErrorCode::InvalidFieldSpec, "extension without base");
      const Field base = Field::make(*spec.base);
      if (base.degree() > 1) return flatten(spec, base);
      const PrimeArith ar(base.characteristic());
      std::vector<Rational> scalars;
      for (const auto& c : spec.minpoly) {
        if (c.size() > 1) throw Error(ErrorCode::InvalidFieldSpec, "coefficient is not a base-field scalar");
        scalars.push_back(c.empty() ? Rational(0) : c[0]);
      }
      Poly m = monic_check(ar, scalars);
      const Irreducibility irr = detail::irreducibility(ar, m);
      if (irr == Irreducibility::Reducible) throw Error(ErrorCode::ReducibleMinpoly, "minimal polynomial factors over the base");
      if (irr == Irreducibility::Unknown) throw Error(ErrorCode::ReducibleMinpoly, "could not certify irreducibility");
      return simple_impl(spec, ar, std::move(m));
    }
  }
  throw Error(ErrorCode::InvalidFieldSpec, "unknown field kind");
}

std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// Field

Field Field::make(const FieldSpec& spec) { return Field(build(spec)); }
Field Field::rationals() { return make(FieldSpec::rational()); }
Field Field::prime(const BigInt& p) { return make(FieldSpec::prime(p)); }

Field Field::cyclotomic(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "cyclotomic field of order 0");
  if (n <= 2) return rationals();
  return make(FieldSpec::extension(FieldSpec::rational(), detail::cyclotomic_poly(n)));
}

const FieldSpec& Field::spec() const { return impl_->spec; }
BigInt Field::characteristic() const { return impl_->ar.modulus(); }
unsigned Field::degree() const { return impl_->n; }
bool Field::finite() const { return !impl_->ar.rational(); }

std::optional<BigInt> Field::order() const {
  if (!finite()) return std::nullopt;
  BigInt q;
  mpz_pow_ui(q.get_mpz_t(), characteristic().get_mpz_t(), impl_->n);
  return q;
}

const std::vector<Rational>& Field::modulus() const { return impl_->modulus; }

FieldElement Field::zero() const { return FieldElement(impl_, std::vector<Rational>(impl_->n)); }
FieldElement Field::one() const { return from_int(1); }
FieldElement Field::from_int(long long v) const { return from_rational(Rational(BigInt(std::to_string(v)))); }

FieldElement Field::from_rational(const Rational& v) const {
  std::vector<Rational> c(impl_->n);
  c[0] = impl_->ar.reduce(v);
  return FieldElement(impl_, std::move(c));
}

FieldElement Field::from_coeffs(std::vector<Rational> coeffs) const {
  if (coeffs.size() > impl_->n) {
    // reduce modulo the minimal polynomial
    Poly p(coeffs.begin(), coeffs.end());
    for (Rational& c : p) c = impl_->ar.reduce(c);
    detail::trim(p);
    coeffs = detail::mod(impl_->ar, p, impl_->modulus);
  }
  return FieldElement(impl_, pad(impl_->ar, std::move(coeffs), impl_->n));
}

FieldElement Field::gen() const {
  if (impl_->n == 1) return zero();
  std::vector<Rational> c(impl_->n);
  c[1] = 1;
  return FieldElement(impl_, std::move(c));
}

FieldElement Field::element_at(std::uint64_t index) const {
  const unsigned n = impl_->n;
  std::vector<Rational> c(n);
  if (finite()) {
    if (BigInt(std::to_string(index)) >= *order()) throw Error(ErrorCode::InvalidParameters, "element index out of range");
    const std::uint64_t p = characteristic().get_ui();
    for (unsigned k = 0; k < n && index > 0; ++k) {
      c[k] = Rational(static_cast<unsigned long>(index % p));
      index /= p;
    }
    return FieldElement(impl_, std::move(c));
  }
  std::vector<BigInt> weight(n, 1);
  for (std::uint64_t i = 0; index > 0; ++i) {
    const std::uint64_t digit = index % 3;
    index /= 3;
    const unsigned k = static_cast<unsigned>(i % n);
    if (digit == 1) c[k] += Rational(weight[k]);
    if (digit == 2) c[k] -= Rational(weight[k]);
    weight[k] *= 3;
  }
  return FieldElement(impl_, std::move(c));
}

std::vector<FieldElement> Field::tower_generators() const {
  std::vector<FieldElement> out;
  for (const auto& t : impl_->tower) out.push_back(FieldElement(impl_, t));
  return out;
}

bool Field::operator==(const Field& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->spec == other.impl_->spec;
}

namespace {

class Parser {
 public:
  Parser(const Field& f, const std::string& s) : f_(f), s_(s) {}

  FieldElement run() {
    FieldElement v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " in \"" + s_ + "\" at " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  FieldElement expr() {
    FieldElement v = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        v += term();
      } else if (peek('-')) {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }
  FieldElement term() {
    FieldElement v = unary();
    while (true) {
      skip();
      if (peek('*')) {
        ++pos_;
        v *= unary();
      } else if (peek('/')) {
        ++pos_;
        v /= unary();
      } else if (pos_ < s_.size() && (s_[pos_] == 'z' || s_[pos_] == '(')) {
        v *= power();
      } else {
        return v;
      }
    }
  }
  FieldElement unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  FieldElement power() {
    FieldElement base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      bool neg = false;
      bool paren = false;
      if (peek('(')) {
        paren = true;
        ++pos_;
      }
      if (peek('-')) {
        neg = true;
        ++pos_;
      }
      BigInt e = integer();
      if (paren) {
        if (!peek(')')) fail("expected ')'");
        ++pos_;
      }
      return base.pow(neg ? BigInt(-e) : e);
    }
    return base;
  }
  BigInt integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(s_.substr(start, pos_ - start));
  }
  FieldElement primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'z') {
      ++pos_;
      if (f_.degree() == 1) fail("field has no generator z");
      return f_.gen();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return f_.from_rational(Rational(integer()));
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Field& f_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement Field::parse(const std::string& text) const { return Parser(*this, text).run(); }

// ---------------------------------------------------------------------------
// FieldElement

Field FieldElement::field() const { return Field(f_); }

const FieldImpl& FieldElement::impl() const {
  if (!f_) throw Error(ErrorCode::MixedFields, "uninitialized field element");
  return *f_;
}

void FieldElement::check_same(const FieldElement& b) const {
  if (f_ == b.f_) {
    if (!f_) throw Error(ErrorCode::MixedFields, "uninitialized field element");
    return;
  }
  if (!f_ || !b.f_ || !(f_->spec == b.f_->spec)) throw Error(ErrorCode::MixedFields, "operands from different fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool FieldElement::is_scalar() const {
  return c_.size() <= 1 || std::all_of(c_.begin() + 1, c_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  check_same(b);
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->ar.add(c_[i], b.c_[i]);
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& b) const {
  check_same(b);
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->ar.sub(c_[i], b.c_[i]);
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  const FieldImpl& f = impl();
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.ar.neg(c_[i]);
  return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& b) const {
  check_same(b);
  return FieldElement(f_, mul_raw(*f_, c_, b.c_));
}

FieldElement FieldElement::operator/(const FieldElement& b) const { return *this * b.inv(); }

bool FieldElement::operator==(const FieldElement& b) const {
  check_same(b);
  return c_ == b.c_;
}

FieldElement FieldElement::inv() const {
  const FieldImpl& f = impl();
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (f.n == 1) return FieldElement(f_, {f.ar.inv(c_[0])});
  Poly a(c_.begin(), c_.end());
  detail::trim(a);
  detail::Xgcd r = detail::xgcd(f.ar, a, f.modulus);
  if (detail::degree(r.g) != 0) throw Error(ErrorCode::DivisionByZero, "element is not invertible");
  return FieldElement(f_, pad(f.ar, r.s, f.n));
}

FieldElement FieldElement::pow(const BigInt& e) const {
  const FieldImpl& f = impl();
  if (e < 0) return inv().pow(BigInt(-e));
  std::vector<Rational> result(f.n);
  result[0] = 1;
  std::vector<Rational> base = c_;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul_raw(f, result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul_raw(f, result, base);
  }
  return FieldElement(f_, std::move(result));
}

std::optional<std::uint64_t> FieldElement::mult_order(std::uint64_t bound) const {
  if (is_zero()) return std::nullopt;
  FieldElement x = *this;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (x.is_one()) return n;
    x *= *this;
  }
  return std::nullopt;
}

namespace {

bool is_positive(const FieldImpl& f, const std::vector<Rational>& c) {
  for (const Rational& v : c) {
    if (sgn(v) == 0) continue;
    if (f.ar.rational()) return sgn(v) > 0;
    return 2 * v.get_num() < f.ar.modulus();
  }
  return true;
}

std::optional<Rational> rational_sqrt(const Rational& a) {
  if (sgn(a) < 0) return std::nullopt;
  if (mpz_perfect_square_p(a.get_num_mpz_t()) == 0 || mpz_perfect_square_p(a.get_den_mpz_t()) == 0) return std::nullopt;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), a.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), a.get_den_mpz_t());
  return Rational(n, d);
}

// Multiprecision complex arithmetic for the refinement stage of
// number_field_sqrt.
struct MpComplex {
  mpf_class re, im;
};

MpComplex mp_make(mp_bitcnt_t bits, long double re = 0, long double im = 0) {
  return {mpf_class(static_cast<double>(re), bits), mpf_class(static_cast<double>(im), bits)};
}

MpComplex mp_add(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
MpComplex mp_sub(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
MpComplex mp_mul(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
mpf_class mp_norm(const MpComplex& a) { return a.re * a.re + a.im * a.im; }
MpComplex mp_div(const MpComplex& a, const MpComplex& b) {
  const mpf_class d = mp_norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

MpComplex mp_sqrt(const MpComplex& v, mp_bitcnt_t bits) {
  const mpf_class r = sqrt(mp_norm(v));
  mpf_class sre(0, bits), sim(0, bits);
  sre = sqrt(mpf_class((r + v.re) / 2, bits));
  sim = sqrt(mpf_class((r - v.re) / 2, bits));
  if (sgn(v.im) < 0) sim = -sim;
  return {sre, sim};
}

// Coefficients y with y(root_j) = s_j, by Gaussian elimination.
std::vector<MpComplex> mp_vandermonde_solve(const std::vector<MpComplex>& roots, std::vector<MpComplex> s,
                                            mp_bitcnt_t bits) {
  const std::size_t n = roots.size();
  std::vector<std::vector<MpComplex>> a(n, std::vector<MpComplex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    MpComplex p = mp_make(bits, 1);
    for (std::size_t k = 0; k < n; ++k) {
      a[i][k] = p;
      p = mp_mul(p, roots[i]);
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (mp_norm(a[r][c]) > mp_norm(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(s[c], s[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const MpComplex factor = mp_div(a[r][c], a[c][c]);
      for (std::size_t k = c; k < n; ++k) a[r][k] = mp_sub(a[r][k], mp_mul(factor, a[c][k]));
      s[r] = mp_sub(s[r], mp_mul(factor, s[c]));
    }
  }
  std::vector<MpComplex> y(n, mp_make(bits));
  for (std::size_t c = n; c-- > 0;) {
    MpComplex acc = s[c];
    for (std::size_t k = c + 1; k < n; ++k) acc = mp_sub(acc, mp_mul(a[c][k], y[k]));
    y[c] = mp_div(acc, a[c][c]);
  }
  return y;
}

// Rounds y * den to integers and verifies the square exactly.
std::optional<std::vector<Rational>> round_and_verify(const FieldImpl& f, const std::vector<Rational>& b,
                                                      const std::vector<mpf_class>& coeff, const BigInt& den) {
  std::vector<Rational> y(coeff.size());
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    mpf_class v = coeff[k] * mpf_class(den, coeff[k].get_prec());
    v = floor(v + 0.5);
    y[k] = Rational(BigInt(v), den);
    y[k].canonicalize();
  }
  if (mul_raw(f, y, y) == b) return y;
  return std::nullopt;
}

// Repeats the embedding computation for one sign pattern at a working
// precision large enough for the coefficients of b.
std::optional<std::vector<Rational>> refine_sqrt(const FieldImpl& f, const std::vector<Rational>& b,
                                                 const std::vector<detail::Complex>& sq_hint) {
  const unsigned n = f.n;
  std::size_t size_bits = 0;
  for (const Rational& c : b) size_bits = std::max(size_bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
  const mp_bitcnt_t saved_prec = mpf_get_default_prec();
  struct RestorePrec {
    mp_bitcnt_t bits;
    ~RestorePrec() { mpf_set_default_prec(bits); }
  } restore{saved_prec};
  const mp_bitcnt_t start = static_cast<mp_bitcnt_t>(128 + 2 * size_bits);
  for (mp_bitcnt_t bits = start; bits <= 2 * start; bits *= 2) {
    // gmpxx temporaries take the default precision.
    mpf_set_default_prec(bits);
    std::vector<MpComplex> roots(n);
    for (unsigned j = 0; j < n; ++j) {
      MpComplex z = mp_make(bits, f.roots[j].real(), f.roots[j].imag());
      const mpf_class tol(std::ldexp(1.0, -static_cast<int>(std::min<mp_bitcnt_t>(bits, 1000)) + 8), bits);
      for (int iter = 0; iter < 100; ++iter) {
        MpComplex v = mp_make(bits), dv = mp_make(bits);
        for (std::size_t i = f.modulus.size(); i-- > 0;) {
          dv = mp_add(mp_mul(dv, z), v);
          v = mp_add(mp_mul(v, z), MpComplex{mpf_class(f.modulus[i], bits), mpf_class(0, bits)});
        }
        const MpComplex step = mp_div(v, dv);
        z = mp_sub(z, step);
        if (mp_norm(step) < tol * tol) break;
      }
      roots[j] = z;
    }
    std::vector<MpComplex> sq(n);
    for (unsigned j = 0; j < n; ++j) {
      MpComplex v = mp_make(bits);
      for (unsigned k = n; k-- > 0;) v = mp_add(mp_mul(v, roots[j]), MpComplex{mpf_class(b[k], bits), mpf_class(0, bits)});
      MpComplex r = mp_sqrt(v, bits);
      // Take the branch matching the long double value of this pattern.
      const MpComplex hint = mp_make(bits, sq_hint[j].real(), sq_hint[j].imag());
      const MpComplex neg{-r.re, -r.im};
      if (mp_norm(mp_sub(neg, hint)) < mp_norm(mp_sub(r, hint))) r = neg;
      sq[j] = r;
    }
    const std::vector<MpComplex> y = mp_vandermonde_solve(roots, sq, bits);
    std::vector<mpf_class> coeff;
    mpf_class scale(0, bits), imag(0, bits);
    for (const auto& c : y) {
      coeff.push_back(c.re);
      scale = std::max<mpf_class>(scale, abs(c.re));
      imag = std::max<mpf_class>(imag, abs(c.im));
    }
    // A wrong sign pattern leaves imaginary parts far above the working
    // precision.
    mpf_class eps(1, bits);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), bits / 2);
    if (imag > eps * (scale + 1)) return std::nullopt;
    for (const BigInt& den : {BigInt(1), f.root_denominator}) {
      if (auto r = round_and_verify(f, b, coeff, den)) return r;
    }
  }
  return std::nullopt;
}

// Square root in a number field: numeric recovery through the complex
// embeddings with exact verification (long double first, then a
// multiprecision pass on the sign patterns that give real coefficients), or
// a non-residue certificate modulo a prime where the minimal polynomial has
// a root.
std::optional<std::vector<Rational>> number_field_sqrt(const FieldImpl& f, const std::vector<Rational>& a) {
  if (!f.integral || f.roots.empty()) {
    throw Error(ErrorCode::UnsupportedField, "square roots need an integral minimal polynomial of degree <= 20");
  }
  const unsigned n = f.n;
  BigInt den = 1;
  for (const Rational& c : a) den = lcm(den, BigInt(c.get_den()));
  // b = a*d^2 is integral; d = sqrt(den) when den is a square keeps b small.
  BigInt d = den;
  if (mpz_perfect_square_p(den.get_mpz_t()) != 0) mpz_sqrt(d.get_mpz_t(), den.get_mpz_t());
  std::vector<Rational> b(n);
  for (unsigned i = 0; i < n; ++i) b[i] = a[i] * Rational(d * d);

  std::vector<detail::Complex> sq(n);
  for (unsigned j = 0; j < n; ++j) {
    detail::Complex v = 0;
    for (unsigned k = n; k-- > 0;) v = v * f.roots[j] + static_cast<long double>(b[k].get_d());
    sq[j] = std::sqrt(v);
  }
  const std::vector<BigInt> denominators = {BigInt(1), f.root_denominator};
  const std::uint64_t patterns = 1ULL << (n - 1);
  std::vector<std::pair<long double, std::vector<detail::Complex>>> candidates;
  long double scale = 0;
  for (unsigned k = 0; k < n; ++k) {
    long double row = 0;
    for (unsigned j = 0; j < n; ++j) row += std::abs(f.vandermonde_inv[k][j]) * std::abs(sq[j]);
    scale = std::max(scale, row);
  }
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::vector<long double> coeff(n);
    bool real = true;
    long double residual = 0;
    for (unsigned k = 0; k < n && real; ++k) {
      detail::Complex s = 0;
      for (unsigned j = 0; j < n; ++j) {
        const bool flip = j > 0 && ((mask >> (j - 1)) & 1U);
        s += f.vandermonde_inv[k][j] * (flip ? -sq[j] : sq[j]);
      }
      residual = std::max(residual, std::abs(s.imag()));
      if (std::abs(s.imag()) > 1e-9L * (1 + scale)) real = false;
      coeff[k] = s.real();
    }
    if (!real) continue;
    std::vector<detail::Complex> signed_sq(n);
    for (unsigned j = 0; j < n; ++j) signed_sq[j] = (j > 0 && ((mask >> (j - 1)) & 1U)) ? -sq[j] : sq[j];
    candidates.push_back({residual, std::move(signed_sq)});
    for (const BigInt& den : denominators) {
      const long double scale = static_cast<long double>(den.get_d());
      std::vector<Rational> y(n);
      bool close = true;
      for (unsigned k = 0; k < n && close; ++k) {
        const long double v = coeff[k] * scale;
        const long double r = std::round(v);
        if (std::abs(v - r) > 1e-3L || std::abs(r) > 1e17L) close = false;
        y[k] = Rational(BigInt(static_cast<long>(r)), den);
      }
      if (!close) continue;
      if (mul_raw(f, y, y) == b) {
        for (auto& c : y) c /= Rational(d);
        return y;
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [residual, c] : candidates) {
    if (auto y = refine_sqrt(f, b, c)) {
      for (auto& v : *y) v /= Rational(d);
      return y;
    }
  }
  // Non-residue certificate: z -> r mod l is a ring map on integral elements.
  int tried = 0;
  for (unsigned long l = 3; l < 5000 && tried < 200; l += 2) {
    if (!detail::is_prime(BigInt(l))) continue;
    const PrimeArith ar{BigInt(l)};
    bool bad = false;
    for (const Rational& c : b) {
      if (c.get_den() % l == 0) bad = true;
    }
    if (bad) continue;
    Poly m(f.modulus.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ar.reduce(f.modulus[i]);
    if (detail::degree(detail::gcd(ar, m, detail::derivative(ar, m))) != 0) continue;
    for (unsigned long r = 0; r < l; ++r) {
      Rational mv = 0;
      for (std::size_t i = m.size(); i-- > 0;) mv = ar.add(ar.mul(mv, Rational(r)), m[i]);
      if (sgn(mv) != 0) continue;
      ++tried;
      Rational bv = 0;
      for (std::size_t i = n; i-- > 0;) bv = ar.add(ar.mul(bv, Rational(r)), ar.reduce(b[i]));
      if (sgn(bv) == 0) continue;
      BigInt legendre;
      mpz_powm(legendre.get_mpz_t(), bv.get_num_mpz_t(), BigInt((l - 1) / 2).get_mpz_t(), BigInt(l).get_mpz_t());
      if (legendre != 1) return std::nullopt;
    }
  }
  throw Error(ErrorCode::UnsupportedField, "could not decide whether the element is a square");
}

}  // namespace

std::optional<FieldElement> FieldElement::sqrt() const {
  const FieldImpl& f = impl();
  if (is_zero()) return *this;
  auto canonical = [&](FieldElement x) {
    if (!is_positive(f, x.c_)) x = -x;
    return x;
  };
  if (f.ar.rational()) {
    if (is_scalar()) {
      if (auto r = rational_sqrt(c_[0])) return field().from_rational(*r);
      if (f.n == 1) return std::nullopt;
    }
    auto y = number_field_sqrt(f, c_);
    if (!y) return std::nullopt;
    return canonical(FieldElement(f_, *y));
  }
  const BigInt q = *field().order();
  if (f.ar.modulus() == 2) return pow(BigInt(q / 2));
  const BigInt half = (q - 1) / 2;
  if (!pow(half).is_one()) return std::nullopt;
  BigInt t = q - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  FieldElement nonres;
  for (std::uint64_t k = 2;; ++k) {
    FieldElement cand = field().element_at(k);
    if (!cand.pow(half).is_one()) {
      nonres = cand;
      break;
    }
  }
  FieldElement c = nonres.pow(t);
  FieldElement x = pow(BigInt((t + 1) / 2));
  FieldElement b = pow(t);
  unsigned m = s;
  while (!b.is_one()) {
    unsigned i = 0;
    FieldElement bb = b;
    while (!bb.is_one()) {
      bb *= bb;
      ++i;
    }
    FieldElement w = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) w *= w;
    x *= w;
    c = w * w;
    b *= c;
    m = i;
  }
  return canonical(x);
}

std::vector<std::string> FieldElement::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const Rational& c : c_) out.push_back(rational_str(c));
  return out;
}

std::string FieldElement::key() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += rational_str(c_[i]);
  }
  return out;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Rational c = c_[k];
    if (sgn(c) == 0) continue;
    bool neg = f_ && f_->ar.rational() && sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << rational_str(c);
    } else {
      if (c != 1) os << rational_str(c) << '*';
      os << 'z';
      if (k > 1) os << '^' << k;
    }
  }
  if (first) os << '0';
  return os.str();
}

std::size_t FieldElement::hash() const { return std::hash<std::string>{}(key()); }

}  // namespace skewgroup
