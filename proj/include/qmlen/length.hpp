#ifndef QMLEN_LENGTH_HPP
#define QMLEN_LENGTH_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "permutation.hpp"

namespace qmlen {

/// Default cap on the number of stored canonical forms.
inline constexpr std::size_t default_ball_cap = std::size_t{1} << 22;

/// Largest symmetric group we are willing to enumerate in full (8! = 40320).
inline constexpr int default_max_degree = 8;

/// A finite subset S of a group, deduplicated, in insertion order.
template <Group G>
class GeneratingSet {
public:
  GeneratingSet(const G &group, const std::vector<element_t<G>> &elements, std::string label = "S")
      : label_(std::move(label)) {
    std::unordered_set<element_t<G>> seen;
    for (const auto &s : elements) {
      if (!group.contains(s)) {
        throw domain_error("generating set element not in " + group.name());
      }
      if (seen.insert(s).second) {
        elements_.push_back(s);
      }
    }
    symmetric_ = true;
    for (const auto &s : elements_) {
      if (!seen.contains(group.inverse(s))) {
        symmetric_ = false;
        break;
      }
    }
  }

  /// S together with all inverses.
  GeneratingSet symmetrized(const G &group) const {
    std::vector<element_t<G>> all = elements_;
    for (const auto &s : elements_) {
      all.push_back(group.inverse(s));
    }
    return GeneratingSet(group, all, label_);
  }

  const std::vector<element_t<G>> &elements() const noexcept { return elements_; }
  const std::string &label() const noexcept { return label_; }
  bool symmetric() const noexcept { return symmetric_; }
  std::size_t size() const noexcept { return elements_.size(); }

private:
  std::vector<element_t<G>> elements_;
  std::string label_;
  bool symmetric_ = false;
};

/// Products of at most `radius()` elements of S, each with its minimal factor count.
template <Group G>
class Ball {
public:
  std::optional<int> find(const element_t<G> &x) const {
    auto it = index_.find(x);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return lengths_[it->second];
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<element_t<G>> &elements() const noexcept { return elements_; }
  const std::vector<int> &lengths() const noexcept { return lengths_; }

  /// Largest radius whose layer was fully enumerated.
  int radius() const noexcept { return radius_; }
  /// True when a layer came up empty: the ball is every product of elements of S.
  bool closed() const noexcept { return closed_; }
  /// False when the storage cap stopped enumeration early.
  bool complete() const noexcept { return complete_; }

private:
  template <Group H>
  friend Ball<H> grow_ball(const H &, const GeneratingSet<H> &, int, std::size_t, const element_t<H> *);

  bool insert(const element_t<G> &x, int len) {
    auto [it, fresh] = index_.try_emplace(x, elements_.size());
    if (fresh) {
      elements_.push_back(x);
      lengths_.push_back(len);
    }
    return fresh;
  }

  std::vector<element_t<G>> elements_;
  std::vector<int> lengths_;
  std::unordered_map<element_t<G>, std::size_t> index_;
  int radius_ = 0;
  bool closed_ = false;
  bool complete_ = true;
};

/// Breadth-first enumeration; stops early (complete() == false) at the cap,
/// or as soon as `stop_at` is found if given.
template <Group G>
Ball<G> grow_ball(const G &group, const GeneratingSet<G> &s, int radius, std::size_t cap,
                  const element_t<G> *stop_at = nullptr) {
  Ball<G> ball;
  ball.insert(group.identity(), 0);
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    if (stop_at != nullptr && ball.find(*stop_at)) {
      return ball;
    }
    const std::size_t layer_end = ball.size();
    if (layer_begin == layer_end) {
      ball.closed_ = true;
      return ball;
    }
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto &gen : s.elements()) {
        if (ball.size() >= cap) {
          ball.complete_ = false;
          return ball;
        }
        // copy: insert may reallocate elements_
        const element_t<G> x = ball.elements_[i];
        ball.insert(group.multiply(x, gen), r);
      }
    }
    layer_begin = layer_end;
    ball.radius_ = r;
  }
  if (layer_begin == ball.size()) {
    ball.closed_ = true;
  }
  return ball;
}

/// The full ball of the given radius; throws resource_error at the cap.
template <Group G>
Ball<G> ball(const G &group, const GeneratingSet<G> &s, int radius, std::size_t cap = default_ball_cap) {
  if (radius < 1) {
    throw domain_error("ball radius must be at least 1");
  }
  Ball<G> b = grow_ball(group, s, radius, cap);
  if (!b.complete()) {
    throw resource_error("ball exceeded " + std::to_string(cap) + " elements after radius " +
                             std::to_string(b.radius()),
                         b.radius());
  }
  return b;
}

/// CSV with columns element,length in BFS order.
template <Group G>
void write_ball_csv(std::ostream &out, const G &group, const Ball<G> &b) {
  out << "element,length\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    out << '"' << group.format(b.elements()[i]) << "\"," << b.lengths()[i] << '\n';
  }
}

/// l_S(g), or a proven lower bound when the search is inconclusive.
struct LengthResult {
  enum class Kind { exact, at_least };

  Kind kind = Kind::exact;
  long long k = 0;
  int radius_searched = 0;
  /// The search closed without finding g: no factorization exists at all.
  bool unreachable = false;
  /// The storage cap cut the search short.
  bool truncated = false;

  static LengthResult exact(long long k, int radius) { return {Kind::exact, k, radius, false, false}; }
  static LengthResult at_least(long long k, int radius) { return {Kind::at_least, k, radius, false, false}; }

  bool is_exact() const noexcept { return kind == Kind::exact; }

  std::string str() const {
    return (is_exact() ? "Exact(" : "AtLeast(") + std::to_string(k) + ")";
  }

  bool operator==(const LengthResult &) const = default;
};

enum class SearchStrategy { single_ball, meet_in_the_middle };

/// Minimal number of factors from S whose product is g, searched up to max_radius.
template <Group G>
LengthResult length_exact(const G &group, const element_t<G> &g, const GeneratingSet<G> &s, int max_radius,
                          SearchStrategy strategy = SearchStrategy::single_ball,
                          std::size_t cap = default_ball_cap) {
  if (!group.contains(g)) {
    throw domain_error("element not in " + group.name());
  }
  if (g == group.identity()) {
    return LengthResult::exact(0, 0);
  }
  if (max_radius < 1) {
    return LengthResult::at_least(1, 0);
  }

  if (strategy == SearchStrategy::single_ball) {
    Ball<G> b = grow_ball(group, s, max_radius, cap, &g);
    if (auto len = b.find(g)) {
      return LengthResult::exact(*len, *len);
    }
    LengthResult r = LengthResult::at_least(static_cast<long long>(b.radius()) + 1, b.radius());
    r.truncated = !b.complete();
    r.unreachable = b.closed();
    return r;
  }

  // g = x y with l(x) <= ceil(r/2), l(y) <= floor(r/2).
  const int left_radius = (max_radius + 1) / 2;
  const int right_radius = max_radius / 2;
  Ball<G> left = grow_ball(group, s, left_radius, cap);
  Ball<G> right = grow_ball(group, s, std::max(right_radius, 0), cap);
  std::optional<long long> best;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto y = group.multiply(group.inverse(left.elements()[i]), g);
    if (auto ly = right.find(y)) {
      const long long total = left.lengths()[i] + static_cast<long long>(*ly);
      if (!best || total < *best) {
        best = total;
      }
    }
  }
  const bool complete = left.complete() && right.complete();
  if (best && complete) {
    return LengthResult::exact(*best, static_cast<int>(*best));
  }
  if (!complete) {
    // Fall back to what the partial balls prove.
    const int proven = std::min(left.radius(), right.radius());
    if (best && *best <= proven + 1) {
      return LengthResult::exact(*best, static_cast<int>(*best));
    }
    LengthResult r = LengthResult::at_least(proven + 1, proven);
    r.truncated = true;
    return r;
  }
  LengthResult r = LengthResult::at_least(max_radius + 1, max_radius);
  r.unreachable = left.closed();
  return r;
}

// --- finite permutation groups -------------------------------------------------

/// Every element of the symmetric group, identity first.
inline std::vector<Permutation> enumerate_group(const SymmetricGroup &group, int max_degree = default_max_degree) {
  if (group.degree() > max_degree) {
    throw resource_error(group.name() + " exceeds the enumeration cap of degree " + std::to_string(max_degree), 0);
  }
  std::vector<int> im(static_cast<std::size_t>(group.degree()));
  for (int i = 0; i < group.degree(); ++i) {
    im[static_cast<std::size_t>(i)] = i;
  }
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// {x y x^-1 y^-1 : x, y in elements}, by brute force over all pairs.
template <Group G>
std::vector<element_t<G>> commutator_set(const G &group, const std::vector<element_t<G>> &elements) {
  std::vector<element_t<G>> out;
  std::unordered_set<element_t<G>> seen;
  for (const auto &x : elements) {
    for (const auto &y : elements) {
      auto c = commutator(group, x, y);
      if (seen.insert(c).second) {
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

/// All commutators of the full symmetric group. c is a commutator iff c y is
/// conjugate to y for some y, and conjugacy in S_n is equality of cycle type,
/// so it suffices to test one representative per class.
inline std::vector<Permutation> commutator_set(const SymmetricGroup &group, int max_degree = default_max_degree) {
  const auto elements = enumerate_group(group, max_degree);
  std::unordered_map<std::string, bool> class_is_commutator;
  auto key = [](const Permutation &p) {
    std::string k;
    for (int len : p.cycle_type()) {
      k += std::to_string(len) + ",";
    }
    return k;
  };
  for (const auto &c : elements) {
    auto [it, fresh] = class_is_commutator.try_emplace(key(c), false);
    if (!fresh) {
      continue;
    }
    for (const auto &y : elements) {
      if (c.compose(y).cycle_type() == y.cycle_type()) {
        it->second = true;
        break;
      }
    }
  }
  std::vector<Permutation> out;
  for (const auto &c : elements) {
    if (class_is_commutator[key(c)]) {
      out.push_back(c);
    }
  }
  return out;
}

/// Commutator length c(g) in a finite permutation group. With no ambient
/// subgroup given, the group is the full symmetric group; otherwise
/// `ambient` lists every element of the subgroup whose commutators are used.
inline LengthResult commutator_length_finite(const SymmetricGroup &group, const Permutation &g,
                                             const std::vector<Permutation> *ambient = nullptr,
                                             int max_degree = default_max_degree) {
  if (group.degree() > max_degree) {
    throw resource_error(group.name() + " exceeds the enumeration cap of degree " + std::to_string(max_degree), 0);
  }
  const auto commutators = ambient ? commutator_set(group, *ambient) : commutator_set(group, max_degree);
  const GeneratingSet<SymmetricGroup> c(group, commutators, "C");
  const int bound = static_cast<int>(std::min<std::size_t>(enumerate_group(group, max_degree).size(), 1 << 20));
  return length_exact(group, g, c, bound);
}

/// Torsion length t(g) in a finite permutation group: every element is
/// torsion, so this is 1 for g != e. Computed by search over T and checked.
inline LengthResult torsion_length_finite(const SymmetricGroup &group, const Permutation &g,
                                          int max_degree = default_max_degree) {
  auto elements = enumerate_group(group, max_degree);
  elements.erase(elements.begin());  // identity
  const GeneratingSet<SymmetricGroup> t(group, elements, "T");
  LengthResult r = length_exact(group, g, t, 2);
  const long long expected = g == group.identity() ? 0 : 1;
  if (!r.is_exact() || r.k != expected) {
    throw internal_error("torsion length of a finite-group element must be " + std::to_string(expected) +
                         ", search returned " + r.str());
  }
  return r;
}

} // namespace qmlen

#endif // QMLEN_LENGTH_HPP
