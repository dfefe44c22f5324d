#ifndef QMLEN_GROUP_HPP
#define QMLEN_GROUP_HPP

#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "rational.hpp"

namespace qmlen {

/// Order of a group element: Finite(m) with m >= 1, or Infinite.
class Order {
public:
  static Order finite(std::uint64_t m) {
    if (m == 0) {
      throw domain_error("finite order must be positive");
    }
    return Order(m);
  }
  static Order infinite() { return Order(0); }

  bool is_finite() const noexcept { return value_ != 0; }
  /// Only meaningful when is_finite().
  std::uint64_t value() const noexcept { return value_; }

  bool operator==(const Order &) const = default;

  std::string str() const {
    return is_finite() ? "Finite(" + std::to_string(value_) + ")" : std::string("Infinite");
  }

private:
  explicit Order(std::uint64_t v) : value_(v) {}
  std::uint64_t value_;
};

/// A concrete group instance. Elements are canonical-form values, so
/// equality of elements is equality in the group.
template <class G>
concept Group = requires(const G &g, const typename G::element_type &x, std::string_view text) {
  typename G::element_type;
  requires std::equality_comparable<typename G::element_type>;
  { std::hash<typename G::element_type>{}(x) } -> std::convertible_to<std::size_t>;
  { g.name() } -> std::convertible_to<std::string>;
  { g.identity() } -> std::same_as<typename G::element_type>;
  { g.multiply(x, x) } -> std::same_as<typename G::element_type>;
  { g.inverse(x) } -> std::same_as<typename G::element_type>;
  { g.order(x) } -> std::same_as<Order>;
  { g.format(x) } -> std::convertible_to<std::string>;
  { g.parse(text) } -> std::same_as<typename G::element_type>;
  { g.contains(x) } -> std::convertible_to<bool>;
};

template <Group G>
using element_t = typename G::element_type;

/// g^n by repeated squaring; negative n inverts first.
template <Group G>
element_t<G> power(const G &group, const element_t<G> &g, const Integer &n) {
  element_t<G> base = n < 0 ? group.inverse(g) : g;
  Integer e = n < 0 ? Integer(-n) : n;
  element_t<G> result = group.identity();
  while (e > 0) {
    if ((e & 1) != 0) {
      result = group.multiply(result, base);
    }
    e >>= 1;
    if (e > 0) {
      base = group.multiply(base, base);
    }
  }
  return result;
}

template <Group G>
element_t<G> power(const G &group, const element_t<G> &g, long long n) {
  return power(group, g, Integer(n));
}

/// x y x^-1 y^-1
template <Group G>
element_t<G> commutator(const G &group, const element_t<G> &x, const element_t<G> &y) {
  return group.multiply(group.multiply(x, y), group.multiply(group.inverse(x), group.inverse(y)));
}

/// h g h^-1
template <Group G>
element_t<G> conjugate(const G &group, const element_t<G> &h, const element_t<G> &g) {
  return group.multiply(group.multiply(h, g), group.inverse(h));
}

template <Group G>
bool is_identity(const G &group, const element_t<G> &g) {
  return g == group.identity();
}

} // namespace qmlen

#endif // QMLEN_GROUP_HPP
