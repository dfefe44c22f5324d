#ifndef QMLEN_BOUNDS_HPP
#define QMLEN_BOUNDS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "quasimorphism.hpp"
#include "rational.hpp"

namespace qmlen {

/// Which inequality produced a lower bound.
///
///   word_length                n|phi(g)| <= l_S(g^n) C + (l_S(g^n) - 1) D
///   stable_word_length         ||g||_S >= |phi(g)| / (C + D)
///   commutator_length          n|phi(g)| <= (2 c(g^n) - 1) D
///   stable_commutator_length   ||g||_C >= |phi(g)| / (2 D)
///   torsion_length             n|phi(g)| <= (t(g^n) - 1) D
///   stable_torsion_length      ||g||_T >= |phi(g)| / D
///   dehn_twist_commutator      c(g^n) >= 1 + n k / (6 (3h - 1))
///   dehn_twist_stable_torsion  ||g||_T >= k / (3 (3h - 1))
///
/// C bounds |phi| on S; D is the defect of phi. The last two concern a
/// product of k right-handed Dehn twists on disjoint essential curves in a
/// closed genus-h surface; they are formulas, not computed from phi.
enum class Inequality {
  word_length,
  stable_word_length,
  commutator_length,
  stable_commutator_length,
  torsion_length,
  stable_torsion_length,
  dehn_twist_commutator,
  dehn_twist_stable_torsion,
};

inline std::string to_string(Inequality i) {
  switch (i) {
  case Inequality::word_length: return "qm-length";
  case Inequality::stable_word_length: return "qm-stable-length";
  case Inequality::commutator_length: return "qm-commutator";
  case Inequality::stable_commutator_length: return "qm-stable-commutator";
  case Inequality::torsion_length: return "qm-torsion";
  case Inequality::stable_torsion_length: return "qm-stable-torsion";
  case Inequality::dehn_twist_commutator: return "dehn-commutator";
  case Inequality::dehn_twist_stable_torsion: return "dehn-stable-torsion";
  }
  return "?";
}

inline Inequality inequality_from_string(std::string_view s) {
  for (Inequality i : {Inequality::word_length, Inequality::stable_word_length, Inequality::commutator_length,
                       Inequality::stable_commutator_length, Inequality::torsion_length,
                       Inequality::stable_torsion_length, Inequality::dehn_twist_commutator,
                       Inequality::dehn_twist_stable_torsion}) {
    if (to_string(i) == s) {
      return i;
    }
  }
  throw domain_error("unknown inequality tag '" + std::string(s) + "'");
}

inline bool is_stable(Inequality i) {
  return i == Inequality::stable_word_length || i == Inequality::stable_commutator_length ||
         i == Inequality::stable_torsion_length || i == Inequality::dehn_twist_stable_torsion;
}

enum class QuantityKind { length, comm_length, torsion_length, stable_length, stable_comm, stable_torsion };

inline std::string to_string(QuantityKind k) {
  switch (k) {
  case QuantityKind::length: return "length";
  case QuantityKind::comm_length: return "comm-length";
  case QuantityKind::torsion_length: return "torsion-length";
  case QuantityKind::stable_length: return "stable-length";
  case QuantityKind::stable_comm: return "stable-comm";
  case QuantityKind::stable_torsion: return "stable-torsion";
  }
  return "?";
}

inline QuantityKind quantity_kind_from_string(std::string_view s) {
  for (QuantityKind k : {QuantityKind::length, QuantityKind::comm_length, QuantityKind::torsion_length,
                         QuantityKind::stable_length, QuantityKind::stable_comm, QuantityKind::stable_torsion}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  throw domain_error("unknown quantity kind '" + std::string(s) + "'");
}

/// The length quantity being bounded. `n` is the power of g (0 for stable
/// quantities); `s_label` names S for the word-length kinds.
struct Quantity {
  QuantityKind kind = QuantityKind::length;
  long long n = 0;
  std::string s_label;
  bool operator==(const Quantity &) const = default;
};

struct QmInputs {
  std::string qm_id;
  CertifiedValue phi_g;
  Rational defect_upper;
  Rational c_upper;
  bool operator==(const QmInputs &) const = default;
};

struct DehnInputs {
  long long genus = 2;
  long long twists = 1;
  long long n = 0;
  bool operator==(const DehnInputs &) const = default;
};

/// A lower bound with everything needed to recompute it.
struct BoundCertificate {
  Quantity quantity;
  Rational bound;
  std::optional<Integer> ceiling;  ///< set for length-valued (non-stable) bounds
  Inequality inequality = Inequality::word_length;
  std::variant<QmInputs, DehnInputs> inputs;
  bool operator==(const BoundCertificate &) const = default;
};

/// The bound as a function of the recorded inputs alone.
inline Rational recompute_bound(Inequality inequality, const Quantity &q,
                                const std::variant<QmInputs, DehnInputs> &inputs) {
  if (const auto *d = std::get_if<DehnInputs>(&inputs)) {
    if (d->genus < 2 || d->twists < 1) {
      throw domain_error("Dehn twist bounds need genus >= 2 and at least one twist");
    }
    const Integer denom = 3 * d->genus - 1;
    if (inequality == Inequality::dehn_twist_commutator) {
      return 1 + make_rational(Integer(d->n) * d->twists, 6 * denom);
    }
    if (inequality == Inequality::dehn_twist_stable_torsion) {
      return make_rational(Integer(d->twists), 3 * denom);
    }
    throw domain_error("Dehn twist inputs paired with " + to_string(inequality));
  }
  const auto &in = std::get<QmInputs>(inputs);
  const CertifiedValue a = in.phi_g.abs();
  if (!in.phi_g.excludes_zero()) {
    throw no_certificate_error("phi(g) enclosure [" + to_fraction(in.phi_g.lo) + ", " + to_fraction(in.phi_g.hi) +
                               "] contains 0: no lower bound");
  }
  const Rational &phi = a.lo;
  const Rational &d = in.defect_upper;
  const Rational &c = in.c_upper;
  const Rational n(q.n);
  auto nonzero = [](const Rational &x, const char *what) {
    if (x == 0) {
      throw domain_error(std::string(what) + " is zero: the inequality gives no finite bound");
    }
  };
  switch (inequality) {
  case Inequality::word_length: nonzero(c + d, "C + D"); return (n * phi + d) / (c + d);
  case Inequality::stable_word_length: nonzero(c + d, "C + D"); return phi / (c + d);
  case Inequality::commutator_length: nonzero(d, "D"); return (n * phi / d + 1) / 2;
  case Inequality::stable_commutator_length: nonzero(d, "D"); return phi / (2 * d);
  case Inequality::torsion_length: nonzero(d, "D"); return n * phi / d + 1;
  case Inequality::stable_torsion_length: nonzero(d, "D"); return phi / d;
  default: throw domain_error("quasimorphism inputs paired with " + to_string(inequality));
  }
}

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

/// Re-derives the bound from the recorded inputs and compares exactly.
inline CertificateCheck verify_certificate(const BoundCertificate &cert) {
  Rational again;
  try {
    again = recompute_bound(cert.inequality, cert.quantity, cert.inputs);
  } catch (const std::exception &e) {
    return {false, e.what()};
  }
  if (again != cert.bound) {
    return {false, "bound mismatch: recorded " + to_fraction(cert.bound) + ", recomputed " + to_fraction(again)};
  }
  const bool stable = is_stable(cert.inequality);
  if (stable && cert.ceiling) {
    return {false, "stable bound carries a ceiling"};
  }
  if (!stable && (!cert.ceiling || *cert.ceiling != ceil(cert.bound))) {
    return {false, "ceiling mismatch"};
  }
  if (const auto *in = std::get_if<QmInputs>(&cert.inputs)) {
    if (cert.bound > 0 && !in->phi_g.excludes_zero()) {
      return {false, "positive bound from an enclosure that contains 0"};
    }
    const bool forced_c_ok =
        (cert.inequality != Inequality::commutator_length && cert.inequality != Inequality::stable_commutator_length &&
         cert.inequality != Inequality::torsion_length && cert.inequality != Inequality::stable_torsion_length) ||
        ((cert.inequality == Inequality::commutator_length ||
          cert.inequality == Inequality::stable_commutator_length) &&
         in->c_upper == in->defect_upper) ||
        ((cert.inequality == Inequality::torsion_length || cert.inequality == Inequality::stable_torsion_length) &&
         in->c_upper == 0);
    if (!forced_c_ok) {
      return {false, "C does not match the value forced by the inequality"};
    }
  }
  return {};
}

namespace detail {

inline Quantity quantity_for(Inequality i, long long n, const std::string &s_label) {
  switch (i) {
  case Inequality::word_length: return {QuantityKind::length, n, s_label};
  case Inequality::stable_word_length: return {QuantityKind::stable_length, 0, s_label};
  case Inequality::commutator_length:
  case Inequality::dehn_twist_commutator: return {QuantityKind::comm_length, n, "C"};
  case Inequality::stable_commutator_length: return {QuantityKind::stable_comm, 0, "C"};
  case Inequality::torsion_length: return {QuantityKind::torsion_length, n, "T"};
  case Inequality::stable_torsion_length:
  case Inequality::dehn_twist_stable_torsion: return {QuantityKind::stable_torsion, 0, "T"};
  }
  return {};
}

/// C is D for commutators and 0 for torsion elements; otherwise the caller's value.
inline Rational forced_c(Inequality i, const Rational &c_upper, const Rational &defect) {
  switch (i) {
  case Inequality::commutator_length:
  case Inequality::stable_commutator_length: return defect;
  case Inequality::torsion_length:
  case Inequality::stable_torsion_length: return 0;
  default: return c_upper;
  }
}

template <Group G>
BoundCertificate qm_certificate(const Quasimorphism<G> &phi, const CertifiedValue &phi_g, long long n,
                                Inequality kind, const Rational &c_upper, const std::string &s_label) {
  if (!phi.homogeneous) {
    throw domain_error("lower bounds need a homogeneous quasimorphism; homogenize '" + phi.id + "' first");
  }
  if (c_upper < 0) {
    throw domain_error("C must be nonnegative");
  }
  if (!phi_g.excludes_zero()) {
    throw no_certificate_error("phi(g) enclosure [" + to_fraction(phi_g.lo) + ", " + to_fraction(phi_g.hi) +
                               "] contains 0: no lower bound from '" + phi.id + "'");
  }
  BoundCertificate cert;
  cert.inequality = kind;
  cert.quantity = quantity_for(kind, n, s_label);
  cert.inputs = QmInputs{phi.id, phi_g, phi.defect_upper, forced_c(kind, c_upper, phi.defect_upper)};
  cert.bound = recompute_bound(kind, cert.quantity, cert.inputs);
  if (!is_stable(kind)) {
    cert.ceiling = ceil(cert.bound);
  }
  return cert;
}

} // namespace detail

/// Lower bound on l_S(g^n), c(g^n) or t(g^n). Uses the low end of |phi(g)|
/// and the declared defect, so the result is sound whenever the defect
/// declaration is.
template <Group G>
BoundCertificate bound_from_qm(const Quasimorphism<G> &phi, const CertifiedValue &phi_g, long long n,
                               Inequality kind, const Rational &c_upper = 0, const std::string &s_label = "S") {
  if (kind != Inequality::word_length && kind != Inequality::commutator_length &&
      kind != Inequality::torsion_length) {
    throw domain_error("bound_from_qm takes a length inequality, got " + to_string(kind));
  }
  if (n < 1) {
    throw domain_error("bound_from_qm needs n >= 1");
  }
  return detail::qm_certificate(phi, phi_g, n, kind, c_upper, s_label);
}

/// Lower bound on ||g||_S, ||g||_C or ||g||_T.
template <Group G>
BoundCertificate stable_bound_from_qm(const Quasimorphism<G> &phi, const CertifiedValue &phi_g, Inequality kind,
                                      const Rational &c_upper = 0, const std::string &s_label = "S") {
  if (kind != Inequality::stable_word_length && kind != Inequality::stable_commutator_length &&
      kind != Inequality::stable_torsion_length) {
    throw domain_error("stable_bound_from_qm takes a stable inequality, got " + to_string(kind));
  }
  return detail::qm_certificate(phi, phi_g, 0, kind, c_upper, s_label);
}

/// C(phi, S) = max_{s in S} |phi(s)| for a finite S.
template <Group G>
Rational c_upper_for(const Quasimorphism<G> &phi, const std::vector<element_t<G>> &s) {
  Rational c = 0;
  for (const auto &x : s) {
    c = std::max(c, Rational(abs(phi(x))));
  }
  return c;
}

struct DehnTwistBounds {
  Rational comm_lower;            ///< lower bound on c(g^n)
  Rational stable_torsion_lower;  ///< lower bound on ||g||_T
};

/// For g a product of k right-handed Dehn twists along disjoint essential
/// curves on a closed surface of genus h >= 2.
inline DehnTwistBounds mcg_dehn_bounds(long long h, long long k, long long n) {
  if (h < 2) {
    throw domain_error("Dehn twist bounds need genus h >= 2, got " + std::to_string(h));
  }
  if (k < 1 || n < 1) {
    throw domain_error("Dehn twist bounds need k >= 1 and n >= 1");
  }
  const DehnInputs in{h, k, n};
  return {recompute_bound(Inequality::dehn_twist_commutator, {}, in),
          recompute_bound(Inequality::dehn_twist_stable_torsion, {}, in)};
}

inline std::pair<BoundCertificate, BoundCertificate> mcg_dehn_certificates(long long h, long long k, long long n) {
  const DehnTwistBounds b = mcg_dehn_bounds(h, k, n);
  BoundCertificate comm{detail::quantity_for(Inequality::dehn_twist_commutator, n, "C"), b.comm_lower,
                        ceil(b.comm_lower), Inequality::dehn_twist_commutator, DehnInputs{h, k, n}};
  BoundCertificate tors{detail::quantity_for(Inequality::dehn_twist_stable_torsion, 0, "T"),
                        b.stable_torsion_lower, std::nullopt, Inequality::dehn_twist_stable_torsion,
                        DehnInputs{h, k, 0}};
  return {comm, tors};
}

struct Residual {
  Rational residual;
  Rational bound;
};

/// For g^n = prod h_i^(a_i) (N factors) and homogeneous phi:
///   |phi(g) - sum (a_i / n) phi(h_i)| <= (N - 1) D / n.
/// The product is verified first; a violated inequality means the defect
/// declaration is false and is reported as an internal error.
template <Group G>
Residual wbg_residual(const Quasimorphism<G> &phi, const G &group, const element_t<G> &g,
                      const std::vector<std::pair<element_t<G>, Integer>> &family, long long n) {
  if (!phi.homogeneous) {
    throw domain_error("wbg_residual needs a homogeneous quasimorphism");
  }
  if (n < 1) {
    throw domain_error("wbg_residual needs n >= 1");
  }
  element_t<G> product = group.identity();
  for (const auto &[h, a] : family) {
    product = group.multiply(product, power(group, h, a));
  }
  if (product != power(group, g, n)) {
    throw domain_error("family product does not equal g^n");
  }
  Rational sum = 0;
  for (const auto &[h, a] : family) {
    sum += Rational(a) * phi(h);
  }
  const Rational nn(n);
  Residual r{abs(phi(g) - sum / nn),
             Rational(static_cast<long long>(family.empty() ? 0 : family.size() - 1)) * phi.defect_upper / nn};
  if (r.residual > r.bound) {
    throw internal_error("residual " + to_fraction(r.residual) + " exceeds " + to_fraction(r.bound) +
                         ": declared defect of '" + phi.id + "' is too small");
  }
  return r;
}

} // namespace qmlen

#endif // QMLEN_BOUNDS_HPP
