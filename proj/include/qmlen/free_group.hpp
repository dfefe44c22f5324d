#ifndef QMLEN_FREE_GROUP_HPP
#define QMLEN_FREE_GROUP_HPP

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace qmlen {

/// A freely reduced word. Letter +i is generator a_i, -i is its inverse (1-based).
class FreeWord {
public:
  FreeWord() = default;

  /// Freely reduces `letters`; throws domain_error on a zero or out-of-range index.
  static FreeWord reduce(int rank, const std::vector<int> &letters) {
    if (rank < 1) {
      throw domain_error("free group rank must be positive");
    }
    FreeWord w;
    w.rank_ = rank;
    for (int x : letters) {
      if (x == 0 || std::abs(x) > rank) {
        throw domain_error("generator index " + std::to_string(x) + " out of range for rank " +
                           std::to_string(rank));
      }
      w.push(x);
    }
    return w;
  }

  int rank() const noexcept { return rank_; }
  const std::vector<int> &letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  FreeWord inverse() const {
    FreeWord w;
    w.rank_ = rank_;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back(-*it);
    }
    return w;
  }

  /// Appends `other`, cancelling across the junction.
  FreeWord concat(const FreeWord &other) const {
    FreeWord w = *this;
    w.letters_.reserve(letters_.size() + other.letters_.size());
    for (int x : other.letters_) {
      w.push(x);
    }
    return w;
  }

  bool operator==(const FreeWord &) const = default;

private:
  void push(int x) {
    if (!letters_.empty() && letters_.back() == -x) {
      letters_.pop_back();
    } else {
      letters_.push_back(x);
    }
  }

  int rank_ = 1;
  std::vector<int> letters_;
};

/// The free group on generators a1..a<rank>.
class FreeGroup {
public:
  using element_type = FreeWord;

  explicit FreeGroup(int rank) : rank_(rank) {
    if (rank < 1) {
      throw domain_error("free group rank must be positive");
    }
  }

  int rank() const noexcept { return rank_; }
  std::string name() const { return "free:" + std::to_string(rank_); }

  FreeWord identity() const { return FreeWord::reduce(rank_, {}); }

  /// The word a_i (i >= 1) or a_i^-1 (i <= -1).
  FreeWord generator(int i) const { return FreeWord::reduce(rank_, {i}); }

  FreeWord word(const std::vector<int> &letters) const { return FreeWord::reduce(rank_, letters); }

  bool contains(const FreeWord &w) const { return w.rank() == rank_; }

  FreeWord multiply(const FreeWord &x, const FreeWord &y) const {
    check(x);
    check(y);
    return x.concat(y);
  }

  FreeWord inverse(const FreeWord &x) const {
    check(x);
    return x.inverse();
  }

  /// Free groups are torsion-free.
  Order order(const FreeWord &x) const {
    check(x);
    return x.empty() ? Order::finite(1) : Order::infinite();
  }

  /// "a1a2a1'"; the identity is "e".
  std::string format(const FreeWord &x) const {
    if (x.empty()) {
      return "e";
    }
    std::string out;
    for (int l : x.letters()) {
      out += 'a';
      out += std::to_string(std::abs(l));
      if (l < 0) {
        out += '\'';
      }
    }
    return out;
  }

  /// Accepts "e", "1", the empty string, or a sequence of a<i> / a<i>' tokens
  /// with optional whitespace. The result is freely reduced.
  FreeWord parse(std::string_view text) const {
    std::vector<int> letters;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip_ws();
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == '1')) {
      ++pos;
      skip_ws();
      if (pos != text.size()) {
        throw parse_error("unexpected text after identity", pos);
      }
      return identity();
    }
    while (pos < text.size()) {
      if (text[pos] != 'a') {
        throw parse_error("expected generator 'a<i>'", pos);
      }
      std::size_t start = ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos == start || pos - start > 9) {
        throw parse_error("expected generator index", start);
      }
      int idx = std::stoi(std::string(text.substr(start, pos - start)));
      if (idx < 1 || idx > rank_) {
        throw parse_error("generator index out of range for " + name(), start);
      }
      int sign = 1;
      if (pos < text.size() && text[pos] == '\'') {
        sign = -1;
        ++pos;
      }
      letters.push_back(sign * idx);
      skip_ws();
    }
    return FreeWord::reduce(rank_, letters);
  }

private:
  void check(const FreeWord &x) const {
    if (x.rank() != rank_) {
      throw domain_error("word of rank " + std::to_string(x.rank()) + " used in " + name());
    }
  }

  int rank_;
};

} // namespace qmlen

template <>
struct std::hash<qmlen::FreeWord> {
  std::size_t operator()(const qmlen::FreeWord &w) const noexcept {
    std::size_t h = std::hash<int>{}(w.rank());
    for (int x : w.letters()) {
      h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

#endif // QMLEN_FREE_GROUP_HPP
