#ifndef QMLEN_WITNESS_HPP
#define QMLEN_WITNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "psl_normal_form.hpp"

namespace qmlen {

struct TorsionOfOrder {
  std::uint64_t m = 1;
  bool operator==(const TorsionOfOrder &) const = default;
};

template <Group G>
struct CommutatorOf {
  element_t<G> x;
  element_t<G> y;
  bool operator==(const CommutatorOf &) const = default;
};

template <Group G>
using Claim = std::variant<TorsionOfOrder, CommutatorOf<G>>;

template <Group G>
struct Factor {
  element_t<G> element;
  Claim<G> claim;
  bool operator==(const Factor &) const = default;
};

/// target = factors[0] * factors[1] * ... with a checkable claim on each
/// factor. A verified witness proves l_S(target) <= factors.size() for any S
/// containing the claimed kind of element.
template <Group G>
struct FactorizationWitness {
  element_t<G> target;
  std::vector<Factor<G>> factors;
  bool operator==(const FactorizationWitness &) const = default;
};

struct VerificationReport {
  bool ok = true;
  std::optional<std::size_t> failing_index;
  std::string reason;

  static VerificationReport pass() { return {}; }
  static VerificationReport fail(std::optional<std::size_t> index, std::string reason) {
    return {false, index, std::move(reason)};
  }
};

/// Checks, in order: membership of all elements, that the product equals the
/// target, then each factor's claim. Reports the first failure.
template <Group G>
VerificationReport verify_witness(const G &group, const FactorizationWitness<G> &w) {
  if (!group.contains(w.target)) {
    return VerificationReport::fail(std::nullopt, "target not in " + group.name());
  }
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (!group.contains(w.factors[i].element)) {
      return VerificationReport::fail(i, "factor not in " + group.name() + " at index " + std::to_string(i));
    }
    if (const auto *c = std::get_if<CommutatorOf<G>>(&w.factors[i].claim)) {
      if (!group.contains(c->x) || !group.contains(c->y)) {
        return VerificationReport::fail(i, "commutator entries not in " + group.name() + " at index " +
                                               std::to_string(i));
      }
    }
  }
  element_t<G> product = group.identity();
  for (const auto &f : w.factors) {
    product = group.multiply(product, f.element);
  }
  if (product != w.target) {
    return VerificationReport::fail(std::nullopt, "product mismatch");
  }
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    const auto &f = w.factors[i];
    if (const auto *t = std::get_if<TorsionOfOrder>(&f.claim)) {
      const Order o = group.order(f.element);
      if (!o.is_finite() || o.value() != t->m) {
        return VerificationReport::fail(i, "order claim failed at index " + std::to_string(i));
      }
    } else {
      const auto &c = std::get<CommutatorOf<G>>(f.claim);
      if (commutator(group, c.x, c.y) != f.element) {
        return VerificationReport::fail(i, "commutator claim failed at index " + std::to_string(i));
      }
    }
  }
  return VerificationReport::pass();
}

/// For involutions s, t and g = s t, a two-factor torsion witness for g^n:
///   g^(2m)   = (a t a^-1) * t
///   g^(2m+1) = (a t a^-1) * (t s t^-1)
/// with a = g^(m-1) s. Negative n uses g^-1 = t s.
template <Group G>
FactorizationWitness<G> involution_power_witness(const G &group, const element_t<G> &s, const element_t<G> &t,
                                                 long long n) {
  if (group.order(s) != Order::finite(2) || group.order(t) != Order::finite(2)) {
    throw domain_error("involution_power_witness needs two elements of order 2");
  }
  if (n == 0) {
    throw domain_error("involution_power_witness needs a nonzero exponent");
  }
  const element_t<G> target = power(group, group.multiply(s, t), n);
  const element_t<G> &s1 = n > 0 ? s : t;
  const element_t<G> &t1 = n > 0 ? t : s;
  const long long e = n > 0 ? n : -n;
  const element_t<G> g = group.multiply(s1, t1);
  const long long m = e / 2;
  const element_t<G> alpha = group.multiply(power(group, g, m - 1), s1);
  FactorizationWitness<G> w{target, {}};
  w.factors.push_back({conjugate(group, alpha, t1), TorsionOfOrder{2}});
  if (e % 2 == 0) {
    w.factors.push_back({t1, TorsionOfOrder{2}});
  } else {
    w.factors.push_back({conjugate(group, t1, s1), TorsionOfOrder{2}});
  }
  return w;
}

/// Lifts a PSL(2,Z) torsion witness to SL(2,Z) for a chosen preimage
/// `target` of w.target. Factors lift to their sign-canonical
/// representatives; if their product comes out as -target, the last factor
/// is negated (-M is torsion whenever M is, with order recomputed). An empty
/// witness for target -I becomes the single factor -I.
inline FactorizationWitness<SL2Z> lift_torsion_witness(const FactorizationWitness<PSL2Z> &w,
                                                       const IntMatrix2 &target) {
  const SL2Z sl;
  if (ProjMatrix2(target) != w.target) {
    throw domain_error("lift target " + target.str() + " is not a preimage of " + w.target.rep().str());
  }
  FactorizationWitness<SL2Z> lifted{target, {}};
  IntMatrix2 product;
  for (const auto &f : w.factors) {
    if (!std::holds_alternative<TorsionOfOrder>(f.claim)) {
      throw domain_error("only torsion witnesses can be lifted");
    }
    const IntMatrix2 &m = f.element.rep();
    const Order o = sl.order(m);
    if (!o.is_finite()) {
      throw domain_error("lifted factor " + m.str() + " has infinite order");
    }
    lifted.factors.push_back({m, TorsionOfOrder{o.value()}});
    product = product * m;
  }
  if (product == -target) {
    if (lifted.factors.empty()) {
      lifted.factors.push_back({-IntMatrix2::identity(), TorsionOfOrder{2}});
    } else {
      Factor<SL2Z> &last = lifted.factors.back();
      last.element = -last.element;
      last.claim = TorsionOfOrder{sl.order(last.element).value()};
    }
  } else if (product != target) {
    throw internal_error("lifted product " + product.str() + " is not +-" + target.str());
  }
  return lifted;
}

namespace sl2z_example {

inline IntMatrix2 g() { return IntMatrix2(2, 1, 1, 1); }
inline IntMatrix2 s() { return IntMatrix2(0, 1, -1, 0); }
inline IntMatrix2 t() { return IntMatrix2(-1, -1, 2, 1); }

} // namespace sl2z_example

/// Two torsion factors for g^n, g = [[2,1],[1,1]]: the images of
/// [[0,1],[-1,0]] and [[-1,-1],[2,1]] are involutions in PSL(2,Z) whose
/// product is the image of g, and the lift only adjusts signs.
inline FactorizationWitness<SL2Z> sl2z_example_witness(long long n) {
  const SL2Z sl;
  const PSL2Z psl;
  const auto proj = involution_power_witness(psl, psl.image(sl2z_example::s()), psl.image(sl2z_example::t()), n);
  return lift_torsion_witness(proj, power(sl, sl2z_example::g(), n));
}

/// The projective two-factor witness behind sl2z_example_witness.
inline FactorizationWitness<PSL2Z> psl2z_example_witness(long long n) {
  const PSL2Z psl;
  return involution_power_witness(psl, psl.image(sl2z_example::s()), psl.image(sl2z_example::t()), n);
}

/// With a = f^-1 t f commuting with t, g = a t^-1 satisfies
/// g^n = a^n t^-n = [f^-1, t^n], a single commutator for every n.
template <Group G>
FactorizationWitness<G> twist_commutator_witness(const G &group, const element_t<G> &f, const element_t<G> &t,
                                                 long long n) {
  if (n < 1) {
    throw domain_error("twist_commutator_witness needs n >= 1");
  }
  const element_t<G> f_inv = group.inverse(f);
  const element_t<G> moved = conjugate(group, f_inv, t);
  if (commutator(group, moved, t) != group.identity()) {
    throw domain_error("f^-1 t f does not commute with t");
  }
  const element_t<G> g = group.multiply(moved, group.inverse(t));
  const element_t<G> t_n = power(group, t, n);
  FactorizationWitness<G> w{power(group, g, n), {}};
  w.factors.push_back({commutator(group, f_inv, t_n), CommutatorOf<G>{f_inv, t_n}});
  return w;
}

/// Upper bound on the torsion length of g in PSL(2,Z): the syllables of the
/// free-product normal form, each of order 2 or 3.
struct ProjectiveTorsionUpper {
  std::size_t k = 0;
  FactorizationWitness<PSL2Z> witness;
};

inline ProjectiveTorsionUpper torsion_length_upper_projective(const ProjMatrix2 &g) {
  if (g == ProjMatrix2()) {
    throw domain_error("torsion_length_upper_projective needs a nonidentity element");
  }
  const SyllableWord word = psl_normal_form(g);
  ProjectiveTorsionUpper out{word.size(), {g, {}}};
  for (Syllable s : word.syllables()) {
    out.witness.factors.push_back(
        {ProjMatrix2(syllable_matrix(s)), TorsionOfOrder{static_cast<std::uint64_t>(syllable_order(s))}});
  }
  return out;
}

/// Torsion witness in SL(2,Z) from the projective normal form, one factor per syllable.
inline FactorizationWitness<SL2Z> torsion_witness_sl2z(const IntMatrix2 &g) {
  const ProjMatrix2 image(g);
  if (image == ProjMatrix2()) {
    FactorizationWitness<SL2Z> w{g, {}};
    if (g != IntMatrix2::identity()) {
      w.factors.push_back({g, TorsionOfOrder{2}});
    }
    return w;
  }
  return lift_torsion_witness(torsion_length_upper_projective(image).witness, g);
}

} // namespace qmlen

#endif // QMLEN_WITNESS_HPP
