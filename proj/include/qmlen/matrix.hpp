#ifndef QMLEN_MATRIX_HPP
#define QMLEN_MATRIX_HPP

#include <cctype>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace qmlen {

/// [[a, b], [c, d]] with integer entries and determinant one.
class IntMatrix2 {
public:
  IntMatrix2() : a_(1), b_(0), c_(0), d_(1) {}

  IntMatrix2(Integer a, Integer b, Integer c, Integer d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) {
      throw domain_error("matrix " + str() + " does not have determinant 1");
    }
  }

  static IntMatrix2 identity() { return {}; }

  const Integer &a() const noexcept { return a_; }
  const Integer &b() const noexcept { return b_; }
  const Integer &c() const noexcept { return c_; }
  const Integer &d() const noexcept { return d_; }

  Integer trace() const { return a_ + d_; }

  IntMatrix2 operator*(const IntMatrix2 &o) const {
    return IntMatrix2(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                      c_ * o.b_ + d_ * o.d_, unchecked{});
  }

  IntMatrix2 operator-() const { return IntMatrix2(-a_, -b_, -c_, -d_, unchecked{}); }

  IntMatrix2 inverse() const { return IntMatrix2(d_, -b_, -c_, a_, unchecked{}); }

  /// |a| + |b| + |c| + |d|
  Integer size_measure() const { return abs(a_) + abs(b_) + abs(c_) + abs(d_); }

  std::string str() const {
    return "[[" + a_.str() + "," + b_.str() + "],[" + c_.str() + "," + d_.str() + "]]";
  }

  bool operator==(const IntMatrix2 &) const = default;

private:
  struct unchecked {};
  IntMatrix2(Integer a, Integer b, Integer c, Integer d, unchecked)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  Integer a_, b_, c_, d_;
};

/// An element of PSL(2,Z): the class {M, -M}, stored as the representative
/// whose first nonzero entry (in the order a, b, c, d) is positive.
class ProjMatrix2 {
public:
  ProjMatrix2() = default;
  explicit ProjMatrix2(const IntMatrix2 &m) : rep_(canonical(m)) {}

  const IntMatrix2 &rep() const noexcept { return rep_; }

  bool operator==(const ProjMatrix2 &) const = default;

private:
  static IntMatrix2 canonical(const IntMatrix2 &m) {
    for (const Integer *x : {&m.a(), &m.b(), &m.c(), &m.d()}) {
      if (*x != 0) {
        return *x > 0 ? m : -m;
      }
    }
    return m;  // unreachable: determinant one
  }

  IntMatrix2 rep_;
};

namespace matrices {

inline IntMatrix2 S() { return IntMatrix2(0, -1, 1, 0); }
inline IntMatrix2 T() { return IntMatrix2(1, 1, 0, 1); }
inline IntMatrix2 U() { return IntMatrix2(0, -1, 1, 1); }

} // namespace matrices

namespace detail {

/// Parses "[[a,b],[c,d]]" (whitespace allowed) or a product of named
/// generators such as "S T^-3 U'" where I, S, T, U, V = U^2 are known.
inline IntMatrix2 parse_matrix_text(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (pos >= text.size() || text[pos] != ch) {
      throw parse_error(std::string("expected '") + ch + "'", pos);
    }
    ++pos;
  };
  auto integer = [&] {
    skip_ws();
    return parse_integer_at(text, pos, 0);
  };

  skip_ws();
  if (pos < text.size() && text[pos] == '[') {
    expect('[');
    expect('[');
    Integer a = integer();
    expect(',');
    Integer b = integer();
    expect(']');
    expect(',');
    expect('[');
    Integer c = integer();
    expect(',');
    Integer d = integer();
    expect(']');
    expect(']');
    skip_ws();
    if (pos != text.size()) {
      throw parse_error("trailing characters after matrix", pos);
    }
    if (a * d - b * c != 1) {
      throw parse_error("matrix does not have determinant 1", 0);
    }
    return IntMatrix2(a, b, c, d);
  }

  IntMatrix2 result;
  bool any = false;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      break;
    }
    IntMatrix2 gen;
    switch (text[pos]) {
    case 'I': gen = IntMatrix2::identity(); break;
    case 'S': gen = matrices::S(); break;
    case 'T': gen = matrices::T(); break;
    case 'U': gen = matrices::U(); break;
    case 'V': gen = matrices::U() * matrices::U(); break;
    default: throw parse_error("expected matrix literal or one of I, S, T, U, V", pos);
    }
    ++pos;
    Integer exponent = 1;
    if (pos < text.size() && text[pos] == '\'') {
      exponent = -1;
      ++pos;
    } else if (pos < text.size() && text[pos] == '^') {
      ++pos;
      exponent = parse_integer_at(text, pos, 0);
    }
    IntMatrix2 base = exponent < 0 ? gen.inverse() : gen;
    Integer e = exponent < 0 ? Integer(-exponent) : exponent;
    IntMatrix2 p;
    while (e > 0) {
      if ((e & 1) != 0) {
        p = p * base;
      }
      base = base * base;
      e >>= 1;
    }
    result = result * p;
    any = true;
  }
  if (!any) {
    throw parse_error("empty matrix expression", 0);
  }
  return result;
}

/// Order of a determinant-one matrix by direct powering up to `bound`.
/// `identity_test` decides when a power counts as trivial.
template <class IsIdentity>
Order order_by_powering(const IntMatrix2 &m, int bound, IsIdentity identity_test) {
  IntMatrix2 p = m;
  for (int k = 1; k <= bound; ++k) {
    if (identity_test(p)) {
      return Order::finite(static_cast<std::uint64_t>(k));
    }
    p = p * m;
  }
  return Order::infinite();
}

} // namespace detail

/// SL(2,Z) with exact big-integer entries.
class SL2Z {
public:
  using element_type = IntMatrix2;

  std::string name() const { return "sl2z"; }
  IntMatrix2 identity() const { return IntMatrix2::identity(); }
  bool contains(const IntMatrix2 &) const { return true; }
  IntMatrix2 multiply(const IntMatrix2 &x, const IntMatrix2 &y) const { return x * y; }
  IntMatrix2 inverse(const IntMatrix2 &x) const { return x.inverse(); }

  /// Trace classification, cross-checked against powering up to 12.
  Order order(const IntMatrix2 &m) const {
    const Integer t = m.trace();
    Order by_trace = Order::infinite();
    if (t == 0) {
      by_trace = Order::finite(4);
    } else if (t == 1) {
      by_trace = Order::finite(6);
    } else if (t == -1) {
      by_trace = Order::finite(3);
    } else if (t == 2 && m == identity()) {
      by_trace = Order::finite(1);
    } else if (t == -2 && m == -identity()) {
      by_trace = Order::finite(2);
    }
    const Order by_power =
        detail::order_by_powering(m, 12, [](const IntMatrix2 &p) { return p == IntMatrix2::identity(); });
    if (by_trace != by_power) {
      throw internal_error("order mismatch for " + m.str() + ": trace gives " + by_trace.str() +
                           ", powering gives " + by_power.str());
    }
    return by_trace;
  }

  std::string format(const IntMatrix2 &m) const { return m.str(); }
  IntMatrix2 parse(std::string_view text) const { return detail::parse_matrix_text(text); }
};

/// PSL(2,Z) = SL(2,Z)/{+-1}.
class PSL2Z {
public:
  using element_type = ProjMatrix2;

  std::string name() const { return "psl2z"; }
  ProjMatrix2 identity() const { return ProjMatrix2(); }
  bool contains(const ProjMatrix2 &) const { return true; }
  ProjMatrix2 multiply(const ProjMatrix2 &x, const ProjMatrix2 &y) const {
    return ProjMatrix2(x.rep() * y.rep());
  }
  ProjMatrix2 inverse(const ProjMatrix2 &x) const { return ProjMatrix2(x.rep().inverse()); }

  /// Classification by |trace|, cross-checked against powering up to 6.
  Order order(const ProjMatrix2 &g) const {
    const Integer t = abs(g.rep().trace());
    Order by_trace = Order::infinite();
    if (t == 0) {
      by_trace = Order::finite(2);
    } else if (t == 1) {
      by_trace = Order::finite(3);
    } else if (t == 2 && g == identity()) {
      by_trace = Order::finite(1);
    }
    const Order by_power = detail::order_by_powering(g.rep(), 6, [](const IntMatrix2 &p) {
      return p == IntMatrix2::identity() || p == -IntMatrix2::identity();
    });
    if (by_trace != by_power) {
      throw internal_error("order mismatch for " + g.rep().str() + ": trace gives " + by_trace.str() +
                           ", powering gives " + by_power.str());
    }
    return by_trace;
  }

  std::string format(const ProjMatrix2 &g) const { return g.rep().str(); }
  ProjMatrix2 parse(std::string_view text) const { return ProjMatrix2(detail::parse_matrix_text(text)); }

  ProjMatrix2 image(const IntMatrix2 &m) const { return ProjMatrix2(m); }
};

} // namespace qmlen

template <>
struct std::hash<qmlen::IntMatrix2> {
  std::size_t operator()(const qmlen::IntMatrix2 &m) const noexcept {
    std::hash<qmlen::Integer> h;
    std::size_t seed = h(m.a());
    for (const qmlen::Integer *x : {&m.b(), &m.c(), &m.d()}) {
      seed ^= h(*x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

template <>
struct std::hash<qmlen::ProjMatrix2> {
  std::size_t operator()(const qmlen::ProjMatrix2 &g) const noexcept {
    return std::hash<qmlen::IntMatrix2>{}(g.rep());
  }
};

#endif // QMLEN_MATRIX_HPP
