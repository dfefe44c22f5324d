#ifndef QMLEN_ANY_GROUP_HPP
#define QMLEN_ANY_GROUP_HPP

#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"
#include "free_group.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace qmlen {

/// One of the supported concrete groups, chosen at run time.
using AnyGroup = std::variant<FreeGroup, SL2Z, PSL2Z, SymmetricGroup>;

/// "free:<rank>", "sl2z", "psl2z" or "perm:<degree>".
inline AnyGroup parse_group(std::string_view spec) {
  auto suffix_int = [&](std::string_view prefix) {
    std::string_view rest = spec.substr(prefix.size());
    if (rest.empty() || rest.size() > 6 || rest.find_first_not_of("0123456789") != std::string_view::npos) {
      throw parse_error("expected a positive integer after '" + std::string(prefix) + "'", prefix.size());
    }
    return std::stoi(std::string(rest));
  };
  if (spec == "sl2z") {
    return SL2Z{};
  }
  if (spec == "psl2z") {
    return PSL2Z{};
  }
  if (spec.starts_with("free:")) {
    return FreeGroup(suffix_int("free:"));
  }
  if (spec.starts_with("perm:")) {
    return SymmetricGroup(suffix_int("perm:"));
  }
  throw parse_error("unknown group '" + std::string(spec) + "' (expected free:<rank>, sl2z, psl2z or perm:<degree>)", 0);
}

} // namespace qmlen

#endif // QMLEN_ANY_GROUP_HPP
