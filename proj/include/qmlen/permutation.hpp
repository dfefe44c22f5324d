#ifndef QMLEN_PERMUTATION_HPP
#define QMLEN_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace qmlen {

/// A bijection of {0, ..., degree-1}; images()[p] is the image of p.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int p : images_) {
      if (p < 0 || static_cast<std::size_t>(p) >= images_.size() || seen[static_cast<std::size_t>(p)]) {
        throw domain_error("image table is not a bijection");
      }
      seen[static_cast<std::size_t>(p)] = true;
    }
  }

  static Permutation identity(int degree) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im), unchecked{});
  }

  /// Product of the given disjoint or overlapping cycles, composed right to left.
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>> &cycles) {
    Permutation result = identity(degree);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      result = cycle(degree, *it).compose(result);
    }
    return result;
  }

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<int> &images() const noexcept { return images_; }
  int operator()(int p) const { return images_[static_cast<std::size_t>(p)]; }

  /// (this * other)(p) = this(other(p)).
  Permutation compose(const Permutation &other) const {
    std::vector<int> im(images_.size());
    for (std::size_t p = 0; p < im.size(); ++p) {
      im[p] = images_[static_cast<std::size_t>(other.images_[p])];
    }
    return Permutation(std::move(im), unchecked{});
  }

  Permutation inverse() const {
    std::vector<int> im(images_.size());
    for (std::size_t p = 0; p < im.size(); ++p) {
      im[static_cast<std::size_t>(images_[p])] = static_cast<int>(p);
    }
    return Permutation(std::move(im), unchecked{});
  }

  /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == static_cast<int>(start)) {
        continue;
      }
      std::vector<int> cyc;
      for (int p = static_cast<int>(start); !seen[static_cast<std::size_t>(p)]; p = images_[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = true;
        cyc.push_back(p);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  /// Sorted cycle lengths including fixed points; determines the conjugacy class in S_n.
  std::vector<int> cycle_type() const {
    std::vector<int> type;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start]) {
        continue;
      }
      int len = 0;
      for (std::size_t p = start; !seen[p]; p = static_cast<std::size_t>(images_[p])) {
        seen[p] = true;
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
  }

  bool is_even() const {
    int transpositions = 0;
    for (const auto &c : cycles()) {
      transpositions += static_cast<int>(c.size()) - 1;
    }
    return transpositions % 2 == 0;
  }

  bool operator==(const Permutation &) const = default;

private:
  struct unchecked {};
  Permutation(std::vector<int> images, unchecked) : images_(std::move(images)) {}

  static Permutation cycle(int degree, const std::vector<int> &points) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(degree), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
      int p = points[i];
      if (p < 0 || p >= degree) {
        throw domain_error("point " + std::to_string(p) + " out of range for degree " + std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(p)]) {
        throw domain_error("point " + std::to_string(p) + " repeated within a cycle");
      }
      used[static_cast<std::size_t>(p)] = true;
      im[static_cast<std::size_t>(p)] = points[(i + 1) % points.size()];
    }
    return Permutation(std::move(im), unchecked{});
  }

  std::vector<int> images_;
};

/// The symmetric group on {0, ..., degree-1}.
class SymmetricGroup {
public:
  using element_type = Permutation;

  explicit SymmetricGroup(int degree) : degree_(degree) {
    if (degree < 1) {
      throw domain_error("permutation degree must be positive");
    }
  }

  int degree() const noexcept { return degree_; }
  std::string name() const { return "perm:" + std::to_string(degree_); }
  Permutation identity() const { return Permutation::identity(degree_); }
  bool contains(const Permutation &p) const { return p.degree() == degree_; }

  Permutation cycles(const std::vector<std::vector<int>> &cs) const { return Permutation::from_cycles(degree_, cs); }

  Permutation multiply(const Permutation &x, const Permutation &y) const {
    check(x);
    check(y);
    return x.compose(y);
  }

  Permutation inverse(const Permutation &x) const {
    check(x);
    return x.inverse();
  }

  /// lcm of the cycle lengths.
  Order order(const Permutation &x) const {
    check(x);
    std::uint64_t l = 1;
    for (const auto &c : x.cycles()) {
      const std::uint64_t len = c.size();
      const std::uint64_t g = std::gcd(l, len);
      if (l / g > UINT64_MAX / len) {
        throw domain_error("permutation order exceeds 64 bits");
      }
      l = l / g * len;
    }
    return Order::finite(l);
  }

  /// Cycle notation, "(0 1 2)(3 4)"; the identity is "()".
  std::string format(const Permutation &x) const {
    const auto cs = x.cycles();
    if (cs.empty()) {
      return "()";
    }
    std::string out;
    for (const auto &c : cs) {
      out += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
          out += ' ';
        }
        out += std::to_string(c[i]);
      }
      out += ')';
    }
    return out;
  }

  /// Cycle notation with space- or comma-separated points; "()", "e" or ""
  /// for the identity. Cycles are composed right to left.
  Permutation parse(std::string_view text) const {
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip_ws();
    if (pos < text.size() && text[pos] == 'e') {
      ++pos;
      skip_ws();
      if (pos != text.size()) {
        throw parse_error("unexpected text after identity", pos);
      }
      return identity();
    }
    std::vector<std::vector<int>> cs;
    while (true) {
      skip_ws();
      if (pos >= text.size()) {
        break;
      }
      if (text[pos] != '(') {
        throw parse_error("expected '('", pos);
      }
      ++pos;
      std::vector<int> cyc;
      std::vector<bool> used(static_cast<std::size_t>(degree_), false);
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        if (!cyc.empty() && pos < text.size() && text[pos] == ',') {
          ++pos;
          skip_ws();
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
        if (pos == start || pos - start > 9) {
          throw parse_error("expected point", start);
        }
        int p = std::stoi(std::string(text.substr(start, pos - start)));
        if (p >= degree_) {
          throw parse_error("point out of range for " + name(), start);
        }
        if (used[static_cast<std::size_t>(p)]) {
          throw parse_error("point repeated within a cycle", start);
        }
        used[static_cast<std::size_t>(p)] = true;
        cyc.push_back(p);
      }
      cs.push_back(std::move(cyc));
    }
    return Permutation::from_cycles(degree_, cs);
  }

private:
  void check(const Permutation &x) const {
    if (x.degree() != degree_) {
      throw domain_error("permutation of degree " + std::to_string(x.degree()) + " used in " + name());
    }
  }

  int degree_;
};

} // namespace qmlen

template <>
struct std::hash<qmlen::Permutation> {
  std::size_t operator()(const qmlen::Permutation &p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : p.images()) {
      h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    }
    return h;
  }
};

#endif // QMLEN_PERMUTATION_HPP
