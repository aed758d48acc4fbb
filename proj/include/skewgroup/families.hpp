#pragma once

// Builders for the standard families of configurations and the worked
// examples, each carrying its expected group as metadata.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skewgroup/config.hpp"

namespace skewgroup {

struct Family {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  LineConfig config;
  std::uint64_t expected_order = 0;
  /// Classification name, e.g. "cyclic(6)".
  std::string expected_label;
};

/// {0, inf} plus diag(eps^j, eps^-j), j = 0..n-1, eps a primitive n-th root
/// of unity, over Q(zeta_n). Expected order lcm(2, n); 1 when -eps^j is
/// scalar throughout (n <= 2). Errors: InvalidParameters.
Family standard_construction(unsigned n);

/// {0, inf, I, diag(a, d)} with a = u1(1-u2)/(u1-u2), d = (1-u2)/(u1-u2),
/// u1 and u2 primitive roots of unity of orders m and n (u2 = u1^-1 when
/// m = n). Expected cyclic(lcm(m, n)). Errors: InvalidParameters.
Family cyclic_4line(unsigned m, unsigned n);

/// {0, inf, I} plus Jordan blocks [[a_i, b], [0, a_i]] over F_{p^k}. The
/// a_i and b are exact expressions in the generator z. Expected order
/// p^dim U with U the F_p-span of b/a_i and b/(a_i - 1).
/// Errors: InvalidParameters, InvalidConfig.
Family elementary_abelian(unsigned p, unsigned degree, const std::vector<std::string>& a_values,
                          const std::string& b);

enum class AffineMode { Sqrt, Primitive };

/// {0, inf, I, [[-1, 1], [0, -1]], diag(a, a^-1)}. Sqrt mode: a = sqrt(g) in
/// F_p[z]/(z^2 - g), g the least primitive root mod p, expected
/// affine(p^2, 2(p-1)). Primitive mode: a = g over F_p[z]/(z^2 - c), c the
/// least non-residue, expected affine(p, p-1). Errors: InvalidParameters.
Family affine(unsigned p, AffineMode mode);

/// {0, inf} u C3 u t C3 with eps of order 3, s = zeta_n^e and
/// t = (eps(1+s)+s)/(1-s), over Q(zeta_lcm(3,n)). Expected cyclic(lcm(6, ord s)).
/// Errors: InvalidParameters.
Family c3_scaled(unsigned n, unsigned exponent = 1);

/// {0, inf, I, M2, M3} of the icosahedral example over Q(zeta_20).
Family example_a5();
/// Octahedral example over Q(i), or over Q(zeta_24) when sqrt(3) is needed.
Family example_s4(bool with_sqrt3 = false);
/// Tetrahedral example over Q(zeta_12) with a = 1.
Family example_a4();
/// {0, inf, I, [[z, 1], [0, z]]} over F_p[z]/(z^2 - c), c the least
/// non-residue mod p. Expected elementary_abelian(p, 2). Errors: InvalidParameters.
Family prop_case2(unsigned p);

/// Root of unity eps with eps^n = 1 of exact order n in Q(zeta_N), N a
/// multiple of n; z is the primitive N-th root.
FieldElement root_of_unity(const Field& cyclotomic_n, unsigned big_n, unsigned n);

/// Builds a family by name from string parameters (CLI entry point).
/// Errors: InvalidParameters.
Family build_family(const std::string& name, const std::vector<std::pair<std::string, std::string>>& params);

}  // namespace skewgroup
