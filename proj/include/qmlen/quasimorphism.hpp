#ifndef QMLEN_QUASIMORPHISM_HPP
#define QMLEN_QUASIMORPHISM_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dedekind.hpp"
#include "errors.hpp"
#include "free_group.hpp"
#include "group.hpp"
#include "length.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "rational.hpp"

namespace qmlen {

/// A real-valued map on a group together with a declared upper bound on its
/// defect sup |f(xy) - f(x) - f(y)|. Every certificate built from it is
/// only as sound as `defect_upper`.
template <Group G>
struct Quasimorphism {
  std::string id;
  std::string group;
  std::function<Rational(const element_t<G> &)> evaluate;
  Rational defect_upper;
  bool homogeneous = false;

  Rational operator()(const element_t<G> &x) const { return evaluate(x); }
};

struct ExactFormula {
  bool operator==(const ExactFormula &) const = default;
};

struct LimitEstimate {
  Integer n_used;
  bool operator==(const LimitEstimate &) const = default;
};

using Provenance = std::variant<ExactFormula, LimitEstimate>;

/// A closed interval [lo, hi] of exact rationals known to contain a value.
struct CertifiedValue {
  Rational lo;
  Rational hi;
  Provenance provenance = ExactFormula{};

  static CertifiedValue exact(const Rational &v) { return {v, v, ExactFormula{}}; }

  Rational width() const { return hi - lo; }
  bool contains(const Rational &x) const { return lo <= x && x <= hi; }
  bool excludes_zero() const { return lo > 0 || hi < 0; }

  /// The interval {|x| : x in [lo, hi]}.
  CertifiedValue abs() const {
    if (lo >= 0) {
      return {lo, hi, provenance};
    }
    if (hi <= 0) {
      return {-hi, -lo, provenance};
    }
    return {Rational(0), std::max(Rational(-lo), hi), provenance};
  }

  bool operator==(const CertifiedValue &) const = default;
};

/// phi(g) = lim f(g^n)/n, enclosed using |phi(g) - f(g^n)/n| <= D(f)/n with
/// the smallest n such that the interval width 2 D(f)/n is at most
/// `target_width`. A homogeneous f is returned exactly.
template <Group G>
CertifiedValue homogenize(const Quasimorphism<G> &f, const G &group, const element_t<G> &g,
                          const Rational &target_width) {
  if (target_width <= 0) {
    throw domain_error("homogenize target width must be positive");
  }
  if (f.homogeneous) {
    return CertifiedValue::exact(f(g));
  }
  Integer n = ceil(2 * f.defect_upper / target_width);
  if (n < 1) {
    n = 1;
  }
  const Rational center = f(power(group, g, n)) / Rational(n);
  const Rational err = f.defect_upper / Rational(n);
  return {center - err, center + err, LimitEstimate{n}};
}

/// Same as above with an explicit power n.
template <Group G>
CertifiedValue homogenize_at(const Quasimorphism<G> &f, const G &group, const element_t<G> &g, const Integer &n) {
  if (n < 1) {
    throw domain_error("homogenization power must be positive");
  }
  const Rational center = f(power(group, g, n)) / Rational(n);
  const Rational err = f.defect_upper / Rational(n);
  return {center - err, center + err, LimitEstimate{n}};
}

// --- SL(2,Z) / PSL(2,Z) ----------------------------------------------------------

/// The defect of Phi: the cocycle Phi(AB) - Phi(A) - Phi(B) takes values in {-3, 0, 3}.
inline const Rational &dedekind_phi_defect() {
  static const Rational d(3);
  return d;
}

/// Declared defect of the homogenized Phi. Homogenization can double a
/// defect, and here it does: for A = T^-4, B = [[0,-1],[1,2]] the values
/// are -4, -1 and psi(AB) = 1, a gap of 6.
inline const Rational &rademacher_defect() {
  static const Rational d(6);
  return d;
}

inline Quasimorphism<SL2Z> dedekind_phi_qm() {
  return {"dedekind-phi", "sl2z", [](const IntMatrix2 &m) { return dedekind_phi(m); }, dedekind_phi_defect(),
          false};
}

/// The homogenization of Phi (the Rademacher function), as an exact integer.
/// The width-1/2 enclosure must contain exactly one integer; anything else
/// means Phi or its defect bound is wrong.
inline Integer rademacher(const IntMatrix2 &m) {
  const SL2Z group;
  const CertifiedValue v = homogenize(dedekind_phi_qm(), group, m, Rational(1, 2));
  const Integer lo = ceil(v.lo);
  const Integer hi = floor(v.hi);
  if (lo != hi) {
    throw internal_error("homogenized Phi enclosure [" + to_fraction(v.lo) + ", " + to_fraction(v.hi) +
                         "] for " + m.str() + " does not pin down one integer");
  }
  return lo;
}

inline Integer rademacher(const ProjMatrix2 &g) { return rademacher(g.rep()); }

inline Quasimorphism<SL2Z> rademacher_qm() {
  return {"rademacher", "sl2z", [](const IntMatrix2 &m) { return Rational(rademacher(m)); }, rademacher_defect(),
          true};
}

/// Phi and the Rademacher function are even, so both descend to PSL(2,Z).
inline Quasimorphism<PSL2Z> to_projective(const Quasimorphism<SL2Z> &f) {
  auto eval = f.evaluate;
  return {f.id, "psl2z", [eval](const ProjMatrix2 &g) { return eval(g.rep()); }, f.defect_upper, f.homogeneous};
}

// --- free groups -----------------------------------------------------------------

/// Overlapping occurrences of w in g minus those of w^-1.
inline long long brooks_value(const FreeWord &w, const FreeWord &g) {
  if (w.empty()) {
    throw domain_error("Brooks counting word must be nonempty");
  }
  auto count = [&g](const std::vector<int> &pattern) {
    const auto &text = g.letters();
    long long n = 0;
    if (pattern.size() > text.size()) {
      return n;
    }
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
      if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) {
        ++n;
      }
    }
    return n;
  };
  return count(w.letters()) - count(w.inverse().letters());
}

/// Declared defect of the Brooks function of w: 2(2|w| - 3) for |w| >= 2.
/// A single letter gives an exponent sum, which is a homomorphism.
inline Rational brooks_defect(const FreeWord &w) {
  const auto len = static_cast<long long>(w.length());
  return len <= 1 ? Rational(0) : Rational(2 * (2 * len - 3));
}

inline Quasimorphism<FreeGroup> brooks_qm(const FreeGroup &group, const FreeWord &w,
                                          std::optional<Rational> defect_override = std::nullopt) {
  if (w.empty()) {
    throw domain_error("Brooks counting word must be nonempty");
  }
  if (!group.contains(w)) {
    throw domain_error("Brooks word not in " + group.name());
  }
  return {"brooks:" + group.format(w), group.name(),
          [w](const FreeWord &g) { return Rational(brooks_value(w, g)); },
          defect_override.value_or(brooks_defect(w)), w.length() <= 1};
}

/// The cyclically reduced core of g (g = u core u^-1).
inline FreeWord cyclic_core(const FreeWord &g) {
  const auto &l = g.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return FreeWord::reduce(g.rank(), std::vector<int>(l.begin() + static_cast<std::ptrdiff_t>(i),
                                                     l.begin() + static_cast<std::ptrdiff_t>(j)));
}

/// The homogenization of the Brooks function of w, exactly. For a
/// cyclically reduced h, f(h^(n+1)) - f(h^n) is eventually the number of
/// occurrences of w in the cyclic word h (wrapping as often as needed)
/// minus those of w^-1; conjugation invariance handles the rest.
inline long long brooks_homogenized_value(const FreeWord &w, const FreeWord &g) {
  if (w.empty()) {
    throw domain_error("Brooks counting word must be nonempty");
  }
  const FreeWord h = cyclic_core(g);
  const auto &text = h.letters();
  const std::size_t len = text.size();
  if (len == 0) {
    return 0;
  }
  auto count = [&](const std::vector<int> &pattern) {
    long long n = 0;
    for (std::size_t i = 0; i < len; ++i) {
      bool match = true;
      for (std::size_t j = 0; j < pattern.size() && match; ++j) {
        match = text[(i + j) % len] == pattern[j];
      }
      n += match ? 1 : 0;
    }
    return n;
  };
  return count(w.letters()) - count(w.inverse().letters());
}

/// Homogenized Brooks quasimorphism; homogenization at most doubles the defect.
inline Quasimorphism<FreeGroup> brooks_homogenized_qm(const FreeGroup &group, const FreeWord &w) {
  const Quasimorphism<FreeGroup> base = brooks_qm(group, w);
  return {"brooks-h:" + group.format(w), group.name(),
          [w](const FreeWord &g) { return Rational(brooks_homogenized_value(w, g)); }, 2 * base.defect_upper, true};
}

// --- registry --------------------------------------------------------------------

/// Looks up "dedekind-phi" or "rademacher".
inline Quasimorphism<SL2Z> make_quasimorphism(const SL2Z &, std::string_view id) {
  if (id == "dedekind-phi") {
    return dedekind_phi_qm();
  }
  if (id == "rademacher") {
    return rademacher_qm();
  }
  throw domain_error("no quasimorphism '" + std::string(id) + "' registered for sl2z");
}

inline Quasimorphism<PSL2Z> make_quasimorphism(const PSL2Z &, std::string_view id) {
  return to_projective(make_quasimorphism(SL2Z{}, id));
}

/// Looks up "brooks:<word>" or its homogenization "brooks-h:<word>", e.g. "brooks:a1a2".
inline Quasimorphism<FreeGroup> make_quasimorphism(const FreeGroup &group, std::string_view id) {
  constexpr std::string_view plain = "brooks:";
  constexpr std::string_view homogenized = "brooks-h:";
  if (id.starts_with(plain)) {
    return brooks_qm(group, group.parse(id.substr(plain.size())));
  }
  if (id.starts_with(homogenized)) {
    return brooks_homogenized_qm(group, group.parse(id.substr(homogenized.size())));
  }
  throw domain_error("no quasimorphism '" + std::string(id) + "' registered for " + group.name());
}

/// Finite groups carry no nonzero homogeneous quasimorphisms.
inline Quasimorphism<SymmetricGroup> make_quasimorphism(const SymmetricGroup &group, std::string_view id) {
  throw domain_error("no quasimorphism '" + std::string(id) + "' registered for " + group.name() +
                     " (homogeneous quasimorphisms vanish on finite groups)");
}

// --- defect search ---------------------------------------------------------------

template <Group G>
struct DefectSearchResult {
  Rational max_defect;          ///< certified lower bound on D(f)
  element_t<G> witness_x;       ///< a pair attaining max_defect
  element_t<G> witness_y;
  std::size_t ball_size = 0;
  std::size_t pairs_checked = 0;
  int radius = 0;
  bool exceeds_declared = false; ///< max_defect > f.defect_upper: the declaration is false
};

/// Thrown when the ball cap stops a defect search; the partial maximum is
/// still a valid lower bound on the defect.
class defect_search_incomplete : public resource_error {
public:
  defect_search_incomplete(const std::string &what, int partial_radius, Rational partial_max)
      : resource_error(what, partial_radius), partial_max_(std::move(partial_max)) {}
  const Rational &partial_max() const noexcept { return partial_max_; }

private:
  Rational partial_max_;
};

/// max |f(xy) - f(x) - f(y)| over all pairs in the ball of the given radius
/// for the symmetrized generators.
template <Group G>
DefectSearchResult<G> defect_search(const Quasimorphism<G> &f, const G &group,
                                    const std::vector<element_t<G>> &generators, int radius,
                                    std::size_t cap = default_ball_cap) {
  if (radius < 1) {
    throw domain_error("defect_search radius must be at least 1");
  }
  const GeneratingSet<G> s = GeneratingSet<G>(group, generators).symmetrized(group);
  const Ball<G> b = grow_ball(group, s, radius, cap);

  std::vector<Rational> values;
  values.reserve(b.size());
  for (const auto &x : b.elements()) {
    values.push_back(f(x));
  }
  DefectSearchResult<G> result{Rational(0), group.identity(), group.identity(), b.size(), 0, b.radius(), false};
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Rational gap = abs(f(group.multiply(b.elements()[i], b.elements()[j])) - values[i] - values[j]);
      ++result.pairs_checked;
      if (gap > result.max_defect) {
        result.max_defect = gap;
        result.witness_x = b.elements()[i];
        result.witness_y = b.elements()[j];
      }
    }
  }
  result.exceeds_declared = result.max_defect > f.defect_upper;
  if (!b.complete()) {
    throw defect_search_incomplete("defect search ball exceeded " + std::to_string(cap) + " elements after radius " +
                                       std::to_string(b.radius()) + "; partial max " +
                                       to_fraction(result.max_defect),
                                   b.radius(), result.max_defect);
  }
  return result;
}

} // namespace qmlen

#endif // QMLEN_QUASIMORPHISM_HPP
