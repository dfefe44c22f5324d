#ifndef QMLEN_PSL_NORMAL_FORM_HPP
#define QMLEN_PSL_NORMAL_FORM_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace qmlen {

/// Generators of PSL(2,Z) = Z/2 * Z/3: S of order 2, U of order 3, V = U^2.
enum class Syllable { S, U, V };

inline char syllable_char(Syllable s) {
  switch (s) {
  case Syllable::S: return 'S';
  case Syllable::U: return 'U';
  case Syllable::V: return 'V';
  }
  return '?';
}

/// The SL(2,Z) matrix we use for each syllable.
inline IntMatrix2 syllable_matrix(Syllable s) {
  switch (s) {
  case Syllable::S: return matrices::S();
  case Syllable::U: return matrices::U();
  case Syllable::V: return matrices::U() * matrices::U();
  }
  return {};
}

/// Order of the syllable in PSL(2,Z).
inline int syllable_order(Syllable s) { return s == Syllable::S ? 2 : 3; }

/// An alternating word over {S} and {U, V}. Construction through `push`
/// performs free-product cancellation, so the alternation invariant holds.
class SyllableWord {
public:
  SyllableWord() = default;

  const std::vector<Syllable> &syllables() const noexcept { return syllables_; }
  std::size_t size() const noexcept { return syllables_.size(); }
  bool empty() const noexcept { return syllables_.empty(); }

  /// Right-multiplies by one syllable and renormalizes.
  void push(Syllable s) {
    if (syllables_.empty()) {
      syllables_.push_back(s);
      return;
    }
    Syllable &top = syllables_.back();
    if (top == Syllable::S) {
      if (s == Syllable::S) {
        syllables_.pop_back();
      } else {
        syllables_.push_back(s);
      }
      return;
    }
    if (s == Syllable::S) {
      syllables_.push_back(s);
    } else if (top == s) {  // UU = V, VV = U
      top = (s == Syllable::U) ? Syllable::V : Syllable::U;
    } else {  // UV = VU = 1
      syllables_.pop_back();
    }
  }

  ProjMatrix2 evaluate() const {
    IntMatrix2 m;
    for (Syllable s : syllables_) {
      m = m * syllable_matrix(s);
    }
    return ProjMatrix2(m);
  }

  /// No two adjacent syllables from the same free factor.
  bool is_alternating() const {
    for (std::size_t i = 1; i < syllables_.size(); ++i) {
      const bool prev_s = syllables_[i - 1] == Syllable::S;
      const bool cur_s = syllables_[i] == Syllable::S;
      if (prev_s == cur_s) {
        return false;
      }
    }
    return true;
  }

  /// "SUSV"; the empty word is "e".
  std::string str() const {
    if (syllables_.empty()) {
      return "e";
    }
    std::string out;
    for (Syllable s : syllables_) {
      out += syllable_char(s);
    }
    return out;
  }

  /// Parses a string over {S, U, V} (or "e"), reducing as it goes.
  static SyllableWord parse(std::string_view text) {
    SyllableWord w;
    if (text == "e") {
      return w;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
      case 'S': w.push(Syllable::S); break;
      case 'U': w.push(Syllable::U); break;
      case 'V': w.push(Syllable::V); break;
      default: throw parse_error("expected S, U or V", i);
      }
    }
    return w;
  }

  bool operator==(const SyllableWord &) const = default;

private:
  std::vector<Syllable> syllables_;
};

/// Bit length of |x|; 0 for x = 0.
inline std::size_t msb_bound(const Integer &x) {
  return x == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(abs(x))) + 1;
}

/// Upper limit on the length of a normal form we are willing to materialize.
inline constexpr std::size_t max_normal_form_length = std::size_t{1} << 26;

/// The unique alternating word in S, U, V evaluating to g.
///
/// Euclid-style reduction on the first column: each step left-multiplies by
/// T^-q and then S so that |c| strictly decreases, ending at a power of T.
/// Since T = S U and T^-1 = V S in PSL(2,Z), the T-powers expand into
/// syllables, and free-product cancellation yields the normal form.
inline SyllableWord psl_normal_form(const ProjMatrix2 &g) {
  IntMatrix2 m = g.rep();
  std::vector<Integer> t_powers;  // g = T^q1 S T^q2 S ... T^qk S T^e
  const std::size_t step_bound = 2 * msb_bound(m.c()) + 4;
  while (m.c() != 0) {
    if (t_powers.size() > step_bound) {
      throw internal_error("normal form reduction exceeded its step bound for " + g.rep().str());
    }
    const Integer q = m.a() / m.c();  // truncating: |a - q c| < |c|
    const Integer prev_c = abs(m.c());
    const IntMatrix2 shifted(m.a() - q * m.c(), m.b() - q * m.d(), m.c(), m.d());
    m = matrices::S() * shifted;
    if (abs(m.c()) >= prev_c) {
      throw internal_error("normal form reduction failed to decrease |c|");
    }
    t_powers.push_back(q);
  }
  // c == 0 forces a = d = +-1 and m = +-T^(a b).
  const Integer last = m.a() * m.b();

  Integer total = 0;
  for (const auto &q : t_powers) {
    total += 2 * abs(q) + 1;
  }
  total += 2 * abs(last);
  if (total > max_normal_form_length) {
    throw resource_error("normal form longer than " + std::to_string(max_normal_form_length) + " syllables", 0);
  }

  SyllableWord word;
  auto push_t_power = [&word](const Integer &q) {
    for (Integer i = 0; i < abs(q); ++i) {
      if (q > 0) {
        word.push(Syllable::S);
        word.push(Syllable::U);
      } else {
        word.push(Syllable::V);
        word.push(Syllable::S);
      }
    }
  };
  for (const auto &q : t_powers) {
    push_t_power(q);
    word.push(Syllable::S);
  }
  push_t_power(last);

  if (!word.is_alternating() || word.evaluate() != g) {
    throw internal_error("normal form round trip failed for " + g.rep().str());
  }
  return word;
}

} // namespace qmlen

#endif // QMLEN_PSL_NORMAL_FORM_HPP
