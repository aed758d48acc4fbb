#include "skewgroup/families.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <numeric>

#include "skewgroup/detail/poly.hpp"
#include "skewgroup/error.hpp"

namespace skewgroup {

namespace {

std::string cyclic_name(std::uint64_t n) { return n == 1 ? "trivial" : "cyclic(" + std::to_string(n) + ")"; }

unsigned check_prime(unsigned p) {
  if (p < 2 || !detail::is_prime(BigInt(p))) throw Error(ErrorCode::InvalidParameters, std::to_string(p) + " is not prime");
  return p;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

unsigned least_primitive_root(unsigned p) {
  if (p == 2) return 1;
  const auto qs = detail::prime_factors(p - 1);
  for (unsigned g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : qs) ok = ok && powmod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
  throw Error(ErrorCode::InvalidParameters, "no primitive root");
}

unsigned least_nonresidue(unsigned p) {
  for (unsigned c = 2; c < p; ++c) {
    if (powmod(c, (p - 1) / 2, p) != 1) return c;
  }
  throw Error(ErrorCode::InvalidParameters, "F_" + std::to_string(p) + " has no quadratic non-residue");
}

// F_p-dimension of the span of elements of a finite field.
std::size_t fp_rank(const std::vector<FieldElement>& xs, unsigned p) {
  std::vector<std::vector<long long>> rows;
  for (const auto& x : xs) {
    std::vector<long long> r;
    for (const auto& c : x.coeffs()) r.push_back(c.get_num().get_si());
    rows.push_back(r);
  }
  const long long m = p;
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] % m == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const long long inv = static_cast<long long>(powmod(static_cast<std::uint64_t>(rows[rank][c]), p - 2, p));
    for (auto& v : rows[rank]) v = v * inv % m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const long long f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % m + m) % m;
    }
    ++rank;
  }
  return rank;
}

Family finish(Family f) {
  require_valid(f.config);
  return f;
}

}  // namespace

FieldElement root_of_unity(const Field& f, unsigned big_n, unsigned n) {
  if (n == 0 || big_n % n != 0) throw Error(ErrorCode::InvalidParameters, "root order must divide the cyclotomic level");
  if (n == 1) return f.one();
  if (big_n <= 2) return f.from_int(-1);
  return f.gen().pow(static_cast<long long>(big_n / n));
}

Family standard_construction(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "standard construction needs n >= 1");
  const Field f = Field::cyclotomic(n);
  const FieldElement eps = root_of_unity(f, n, n);
  std::vector<Mat2> ms;
  for (unsigned j = 0; j < n; ++j) ms.push_back(Mat2::diag(eps.pow(static_cast<long long>(j)), eps.pow(-static_cast<long long>(j))));
  Family fam;
  fam.name = "standard_construction";
  fam.params = {{"n", std::to_string(n)}};
  fam.config = LineConfig(f, ms);
  fam.expected_order = n <= 2 ? 1 : std::lcm<std::uint64_t>(2, n);
  fam.expected_label = cyclic_name(fam.expected_order);
  return finish(fam);
}

Family cyclic_4line(unsigned m, unsigned n) {
  if (m < 2 || n < 2) throw Error(ErrorCode::InvalidParameters, "u1 and u2 must differ from 1");
  const unsigned big = std::lcm(m, n);
  const Field f = Field::cyclotomic(big);
  const FieldElement u1 = root_of_unity(f, big, m);
  FieldElement u2 = root_of_unity(f, big, n);
  if (u1 == u2) u2 = u1.inv();
  if (u1 == u2) throw Error(ErrorCode::InvalidParameters, "u1 = u2 = -1 gives no valid configuration");
  const FieldElement one = f.one();
  const FieldElement a = u1 * (one - u2) / (u1 - u2);
  const FieldElement d = (one - u2) / (u1 - u2);
  Family fam;
  fam.name = "cyclic_4line";
  fam.params = {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"a", a.to_string()}, {"d", d.to_string()}};
  fam.config = LineConfig(f, {Mat2::identity(f), Mat2::diag(a, d)});
  fam.expected_order = big;
  fam.expected_label = cyclic_name(big);
  return finish(fam);
}

namespace {

Field finite_field(unsigned p, unsigned degree) {
  check_prime(p);
  if (degree == 0) throw Error(ErrorCode::InvalidParameters, "field degree must be >= 1");
  if (degree == 1) return Field::prime(p);
  // least monic irreducible in lexicographic order of lower coefficients
  const std::uint64_t total = static_cast<std::uint64_t>(std::pow(static_cast<double>(p), degree));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::vector<Rational> poly;
    std::uint64_t v = idx;
    for (unsigned k = 0; k < degree; ++k) {
      poly.emplace_back(static_cast<unsigned long>(v % p));
      v /= p;
    }
    poly.emplace_back(1);
    try {
      return Field::make(FieldSpec::extension(FieldSpec::prime(p), poly));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ReducibleMinpoly) throw;
    }
  }
  throw Error(ErrorCode::InvalidParameters, "no irreducible polynomial found");
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out;
}

}  // namespace

Family elementary_abelian(unsigned p, unsigned degree, const std::vector<std::string>& a_values, const std::string& b_text) {
  const Field f = finite_field(p, degree);
  if (a_values.empty()) throw Error(ErrorCode::InvalidParameters, "at least one a value is required");
  const FieldElement b = f.parse(b_text);
  if (b.is_zero()) throw Error(ErrorCode::InvalidParameters, "b must be nonzero");
  std::vector<Mat2> ms{Mat2::identity(f)};
  std::vector<FieldElement> translations;
  for (const auto& text : a_values) {
    const FieldElement a = f.parse(text);
    if (a.is_scalar()) throw Error(ErrorCode::InvalidParameters, "a = " + text + " lies in the prime field");
    ms.emplace_back(a, b, f.zero(), a);
    translations.push_back(b / a);
    translations.push_back(b / (a - f.one()));
  }
  Family fam;
  fam.name = "elementary_abelian";
  fam.params = {{"p", std::to_string(p)}, {"degree", std::to_string(degree)}, {"a", join(a_values)}, {"b", b_text}};
  fam.config = LineConfig(f, ms);
  const std::size_t rank = fp_rank(translations, p);
  fam.expected_order = 1;
  for (std::size_t i = 0; i < rank; ++i) fam.expected_order *= p;
  fam.expected_label = rank == 1 ? cyclic_name(p) : "elementary_abelian(" + std::to_string(p) + "," + std::to_string(rank) + ")";
  return finish(fam);
}

Family affine(unsigned p, AffineMode mode) {
  check_prime(p);
  if (p == 2) throw Error(ErrorCode::InvalidParameters, "affine example needs odd p");
  const unsigned g = least_primitive_root(p);
  Field f;
  FieldElement a;
  Family fam;
  fam.name = "affine";
  if (mode == AffineMode::Sqrt) {
    f = Field::make(FieldSpec::extension(FieldSpec::prime(p), std::vector<Rational>{Rational(-static_cast<long>(g)), 0, 1}));
    a = f.gen();
    fam.params = {{"p", std::to_string(p)}, {"mode", "sqrt"}, {"a", "sqrt(" + std::to_string(g) + ")"}};
    fam.expected_order = static_cast<std::uint64_t>(p) * p * 2 * (p - 1);
    fam.expected_label = "affine(" + std::to_string(p * p) + "," + std::to_string(2 * (p - 1)) + ")";
  } else {
    // quadratic extension so that P^1 has points with trivial stabilizer
    const unsigned c = least_nonresidue(p);
    f = Field::make(FieldSpec::extension(FieldSpec::prime(p), std::vector<Rational>{Rational(-static_cast<long>(c)), 0, 1}));
    a = f.from_int(g);
    fam.params = {{"p", std::to_string(p)}, {"mode", "primitive"}, {"a", std::to_string(g)}};
    fam.expected_order = static_cast<std::uint64_t>(p) * (p - 1);
    fam.expected_label = "affine(" + std::to_string(p) + "," + std::to_string(p - 1) + ")";
  }
  const FieldElement m1 = f.from_int(-1);
  try {
    fam.config = LineConfig(f, {Mat2::identity(f), Mat2(m1, f.one(), f.zero(), m1), Mat2::diag(a, a.inv())});
    return finish(fam);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidConfig) throw;
    throw Error(ErrorCode::InvalidParameters, std::string("affine example is degenerate for these parameters: ") + e.what());
  }
}

Family c3_scaled(unsigned n, unsigned exponent) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "n must be positive");
  const unsigned big = std::lcm(3u, n);
  const Field f = Field::cyclotomic(big);
  const FieldElement eps = root_of_unity(f, big, 3);
  const FieldElement s = root_of_unity(f, big, n).pow(static_cast<long long>(exponent));
  if (s.is_one()) throw Error(ErrorCode::InvalidParameters, "s must differ from 1");
  const unsigned ord_s = n / std::gcd(n, exponent % n == 0 ? n : exponent % n);
  const FieldElement one = f.one();
  const FieldElement t = (eps * (one + s) + s) / (one - s);
  std::vector<Mat2> ms;
  for (int j = 0; j < 3; ++j) ms.push_back(Mat2::diag(eps.pow(j), eps.pow(-j)));
  for (int j = 0; j < 3; ++j) ms.push_back(Mat2::diag(t * eps.pow(j), t * eps.pow(-j)));
  Family fam;
  fam.name = "c3_scaled";
  fam.params = {{"n", std::to_string(n)}, {"exponent", std::to_string(exponent)}, {"t", t.to_string()}};
  try {
    fam.config = LineConfig(f, ms);
    require_valid(fam.config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidConfig) throw;
    throw Error(ErrorCode::InvalidParameters, std::string("t gives intersecting lines: ") + e.what());
  }
  fam.expected_order = std::lcm<std::uint64_t>(6, ord_s);
  fam.expected_label = cyclic_name(fam.expected_order);
  return fam;
}

Family example_a5() {
  const Field f = Field::cyclotomic(20);
  const FieldElement i = f.gen().pow(5LL);
  const FieldElement one = f.one();
  const FieldElement half = f.from_rational(Rational(1, 2));
  const FieldElement sqrt5 = *f.from_int(5).sqrt();
  const FieldElement phi = (one + sqrt5) * half;
  const FieldElement phinv = phi - one;
  const Mat2 m2(half * (one + i), half * (one + i), half * (i - one), half * (one - i));
  const Mat2 m3(half * (phi + phinv * i), half, -half, half * (phi - phinv * i));
  Family fam;
  fam.name = "example_a5";
  fam.config = LineConfig(f, {Mat2::identity(f), m2, m3});
  fam.expected_order = 60;
  fam.expected_label = "A5";
  return finish(fam);
}

Family example_s4(bool with_sqrt3) {
  const Field f = with_sqrt3 ? Field::cyclotomic(24) : Field::cyclotomic(4);
  const FieldElement i = with_sqrt3 ? f.gen().pow(6LL) : f.gen();
  const FieldElement one = f.one();
  const FieldElement half = f.from_rational(Rational(1, 2));
  const Mat2 m2(half * (one + i), half * (one + i), half * (i - one), half * (one - i));
  const Mat2 m3(f.zero(), one, -one, f.zero());
  Family fam;
  fam.name = "example_s4";
  fam.params = {{"field", with_sqrt3 ? "Q(zeta_24)" : "Q(i)"}};
  fam.config = LineConfig(f, {Mat2::identity(f), m2, m3});
  fam.expected_order = 24;
  fam.expected_label = "S4";
  return finish(fam);
}

Family example_a4() {
  const Field f = Field::cyclotomic(12);
  const FieldElement eps = f.gen().pow(2LL);
  const FieldElement a = f.one();
  const Mat2 m2(eps, a, f.zero(), eps.inv());
  const Mat2 m3(eps, f.zero(), a.inv(), eps.inv());
  Family fam;
  fam.name = "example_a4";
  fam.params = {{"a", "1"}};
  fam.config = LineConfig(f, {Mat2::identity(f), m2, m3});
  fam.expected_order = 12;
  fam.expected_label = "A4";
  return finish(fam);
}

Family prop_case2(unsigned p) {
  check_prime(p);
  if (p == 2) throw Error(ErrorCode::InvalidParameters, "needs odd p");
  const unsigned c = least_nonresidue(p);
  const Field f = Field::make(FieldSpec::extension(FieldSpec::prime(p), std::vector<Rational>{Rational(-static_cast<long>(c)), 0, 1}));
  const FieldElement a = f.gen();
  Family fam;
  fam.name = "prop_case2";
  fam.params = {{"p", std::to_string(p)}, {"a", "z"}, {"b", "1"}};
  fam.config = LineConfig(f, {Mat2::identity(f), Mat2(a, f.one(), f.zero(), a)});
  fam.expected_order = static_cast<std::uint64_t>(p) * p;
  fam.expected_label = "elementary_abelian(" + std::to_string(p) + ",2)";
  return finish(fam);
}

namespace {

class Params {
 public:
  explicit Params(const std::vector<std::pair<std::string, std::string>>& kv) : kv_(kv.begin(), kv.end()) {}

  unsigned uint(const std::string& key, std::optional<unsigned> def = std::nullopt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
      if (def) return *def;
      throw Error(ErrorCode::InvalidParameters, "missing parameter " + key);
    }
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(it->second, &used);
      if (used == it->second.size() && v <= 1'000'000) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidParameters, "parameter " + key + " must be a non-negative integer");
  }

  std::string str(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
  }

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto c = s.find(',', start);
    out.push_back(s.substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

}  // namespace

Family build_family(const std::string& name, const std::vector<std::pair<std::string, std::string>>& kv) {
  const Params p(kv);
  if (name == "standard_construction") return standard_construction(p.uint("n"));
  if (name == "cyclic_4line") return cyclic_4line(p.uint("m"), p.uint("n"));
  if (name == "elementary_abelian") {
    return elementary_abelian(p.uint("p"), p.uint("degree", 2u), split_commas(p.str("a", "z")), p.str("b", "1"));
  }
  if (name == "affine") {
    const std::string mode = p.str("mode", "sqrt");
    if (mode != "sqrt" && mode != "primitive") throw Error(ErrorCode::InvalidParameters, "affine mode must be sqrt or primitive");
    return affine(p.uint("p"), mode == "sqrt" ? AffineMode::Sqrt : AffineMode::Primitive);
  }
  if (name == "c3_scaled") return c3_scaled(p.uint("n"), p.uint("exponent", 1u));
  if (name == "example_a5") return example_a5();
  if (name == "example_s4") return example_s4(p.str("sqrt3", "false") == "true");
  if (name == "example_a4") return example_a4();
  if (name == "prop_case2") return prop_case2(p.uint("p"));
  throw Error(ErrorCode::InvalidParameters, "unknown family \"" + name + "\"");
}

}  // namespace skewgroup
