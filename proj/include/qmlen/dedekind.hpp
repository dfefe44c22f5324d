#ifndef QMLEN_DEDEKIND_HPP
#define QMLEN_DEDEKIND_HPP

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace qmlen {

/// Dedekind sum s(d, c) = sum_{k=1}^{c-1} ((k/c)) ((k d / c)), c >= 1.
///
/// Uses s(d, c) = s(d/g, c/g) for g = gcd(d, c), periodicity in d, and the
/// reciprocity law s(d, c) + s(c, d) = (d^2 + c^2 + 1) / (12 d c) - 1/4 for
/// coprime positive d, c. Runs in O(log c) steps.
inline Rational dedekind_sum(Integer d, Integer c) {
  if (c <= 0) {
    throw domain_error("dedekind_sum requires c >= 1, got c = " + c.str());
  }
  const Integer g = gcd(d, c);
  if (g > 1) {
    d /= g;
    c /= g;
  }
  d %= c;
  if (d < 0) {
    d += c;
  }
  Rational result = 0;
  int sign = 1;
  while (d != 0) {
    // here 0 < d < c, gcd(d, c) = 1
    Rational term = make_rational(d * d + c * c + 1, 12 * d * c) - Rational(1, 4);
    result += sign * term;
    Integer next = c % d;
    c = d;
    d = next;
    sign = -sign;
  }
  return result;
}

/// Rademacher's Phi function on SL(2,Z).
///   c != 0:  (a + d)/c - 12 sign(c) s(d, |c|)
///   c == 0:  b/d
/// Phi(-M) = Phi(M), so it descends to PSL(2,Z).
inline Rational dedekind_phi(const IntMatrix2 &m) {
  if (m.c() == 0) {
    return make_rational(m.b(), m.d());
  }
  return make_rational(m.a() + m.d(), m.c()) - 12 * sign(m.c()) * dedekind_sum(m.d(), abs(m.c()));
}

/// Phi(AB) - Phi(A) - Phi(B). Always one of -3, 0, 3; anything else means
/// the Phi implementation is broken and we refuse to continue.
inline Rational phi_cocycle_defect(const IntMatrix2 &a, const IntMatrix2 &b) {
  Rational v = dedekind_phi(a * b) - dedekind_phi(a) - dedekind_phi(b);
  if (v != 0 && v != 3 && v != -3) {
    throw internal_error("Phi cocycle value " + to_fraction(v) + " outside {-3, 0, 3} for A = " + a.str() +
                         ", B = " + b.str());
  }
  return v;
}

} // namespace qmlen

#endif // QMLEN_DEDEKIND_HPP
