#ifndef QMLEN_SERIALIZE_HPP
#define QMLEN_SERIALIZE_HPP

#include <json.hpp>

#include <string>
#include <variant>

#include "bounds.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "quasimorphism.hpp"
#include "rational.hpp"
#include "witness.hpp"

namespace qmlen {

using json = nlohmann::json;

inline constexpr int document_version = 1;

/// A JSON document does not match the expected schema. `path` is a JSON
/// pointer to the offending value.
class schema_error : public std::runtime_error {
public:
  schema_error(std::string path, const std::string &what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

namespace detail {

inline const json &field(const json &obj, const std::string &path, const char *key) {
  if (!obj.is_object()) {
    throw schema_error(path, "expected object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw schema_error(path + "/" + key, "missing field");
  }
  return *it;
}

inline std::string string_field(const json &obj, const std::string &path, const char *key) {
  const json &v = field(obj, path, key);
  if (!v.is_string()) {
    throw schema_error(path + "/" + key, "expected string");
  }
  return v.get<std::string>();
}

inline long long integer_field(const json &obj, const std::string &path, const char *key) {
  const json &v = field(obj, path, key);
  if (!v.is_number_integer()) {
    throw schema_error(path + "/" + key, "expected integer");
  }
  return v.get<long long>();
}

inline Rational rational_field(const json &obj, const std::string &path, const char *key) {
  const std::string s = string_field(obj, path, key);
  try {
    return parse_rational(s);
  } catch (const parse_error &e) {
    throw schema_error(path + "/" + key, std::string("expected exact fraction \"p/q\": ") + e.what());
  }
}

inline Integer integer_string_field(const json &obj, const std::string &path, const char *key) {
  const Rational q = rational_field(obj, path, key);
  if (denominator(q) != 1) {
    throw schema_error(path + "/" + key, "expected an integer");
  }
  return numerator(q);
}

template <Group G>
element_t<G> element_field(const G &group, const json &obj, const std::string &path, const char *key) {
  const std::string s = string_field(obj, path, key);
  try {
    return group.parse(s);
  } catch (const parse_error &e) {
    throw schema_error(path + "/" + key, std::string("malformed ") + group.name() + " element: " + e.what());
  } catch (const domain_error &e) {
    throw schema_error(path + "/" + key, std::string("invalid ") + group.name() + " element: " + e.what());
  }
}

inline void check_header(const json &doc, const std::string &type) {
  if (!doc.is_object()) {
    throw schema_error("", "expected a JSON object");
  }
  const long long version = integer_field(doc, "", "version");
  if (version != document_version) {
    throw schema_error("/version", "unsupported version " + std::to_string(version));
  }
  const std::string t = string_field(doc, "", "type");
  if (t != type) {
    throw schema_error("/type", "expected \"" + type + "\", got \"" + t + "\"");
  }
}

} // namespace detail

// --- witnesses -------------------------------------------------------------------

template <Group G>
json to_json(const G &group, const FactorizationWitness<G> &w) {
  json factors = json::array();
  for (const auto &f : w.factors) {
    json claim;
    if (const auto *t = std::get_if<TorsionOfOrder>(&f.claim)) {
      claim = {{"kind", "torsion"}, {"order", t->m}};
    } else {
      const auto &c = std::get<CommutatorOf<G>>(f.claim);
      claim = {{"kind", "commutator"}, {"x", group.format(c.x)}, {"y", group.format(c.y)}};
    }
    factors.push_back({{"element", group.format(f.element)}, {"claim", claim}});
  }
  return {{"version", document_version},
          {"type", "factorization-witness"},
          {"group", group.name()},
          {"target", group.format(w.target)},
          {"factors", factors}};
}

/// Reads a factorization witness; the document's "group" must match `group`.
template <Group G>
FactorizationWitness<G> witness_from_json(const G &group, const json &doc) {
  detail::check_header(doc, "factorization-witness");
  const std::string gname = detail::string_field(doc, "", "group");
  if (gname != group.name()) {
    throw schema_error("/group", "document is for " + gname + ", expected " + group.name());
  }
  FactorizationWitness<G> w{detail::element_field(group, doc, "", "target"), {}};
  const json &factors = detail::field(doc, "", "factors");
  if (!factors.is_array()) {
    throw schema_error("/factors", "expected array");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string path = "/factors/" + std::to_string(i);
    const json &f = factors[i];
    const auto element = detail::element_field(group, f, path, "element");
    const json &claim = detail::field(f, path, "claim");
    const std::string cpath = path + "/claim";
    const std::string kind = detail::string_field(claim, cpath, "kind");
    if (kind == "torsion") {
      const long long m = detail::integer_field(claim, cpath, "order");
      if (m < 1) {
        throw schema_error(cpath + "/order", "expected positive integer");
      }
      w.factors.push_back({element, TorsionOfOrder{static_cast<std::uint64_t>(m)}});
    } else if (kind == "commutator") {
      w.factors.push_back({element, CommutatorOf<G>{detail::element_field(group, claim, cpath, "x"),
                                                    detail::element_field(group, claim, cpath, "y")}});
    } else {
      throw schema_error(cpath + "/kind", "expected \"torsion\" or \"commutator\"");
    }
  }
  return w;
}

// --- certificates ----------------------------------------------------------------

inline json to_json(const CertifiedValue &v) {
  json prov;
  if (const auto *l = std::get_if<LimitEstimate>(&v.provenance)) {
    prov = {{"kind", "limit-estimate"}, {"n", l->n_used.str()}};
  } else {
    prov = {{"kind", "exact-formula"}};
  }
  return {{"lo", to_fraction(v.lo)}, {"hi", to_fraction(v.hi)}, {"provenance", prov}};
}

inline CertifiedValue certified_value_from_json(const json &j, const std::string &path) {
  CertifiedValue v{detail::rational_field(j, path, "lo"), detail::rational_field(j, path, "hi"), ExactFormula{}};
  if (v.lo > v.hi) {
    throw schema_error(path, "lo exceeds hi");
  }
  const json &prov = detail::field(j, path, "provenance");
  const std::string kind = detail::string_field(prov, path + "/provenance", "kind");
  if (kind == "limit-estimate") {
    const std::string n = detail::string_field(prov, path + "/provenance", "n");
    try {
      v.provenance = LimitEstimate{Integer(n)};
    } catch (const std::exception &) {
      throw schema_error(path + "/provenance/n", "expected decimal integer");
    }
  } else if (kind != "exact-formula") {
    throw schema_error(path + "/provenance/kind", "expected \"exact-formula\" or \"limit-estimate\"");
  }
  return v;
}

inline json to_json(const BoundCertificate &c) {
  json inputs;
  if (const auto *q = std::get_if<QmInputs>(&c.inputs)) {
    inputs = {{"kind", "quasimorphism"},
              {"qm", q->qm_id},
              {"phi_g", to_json(q->phi_g)},
              {"defect_upper", to_fraction(q->defect_upper)},
              {"c_upper", to_fraction(q->c_upper)}};
  } else {
    const auto &d = std::get<DehnInputs>(c.inputs);
    inputs = {{"kind", "dehn-twist"}, {"genus", d.genus}, {"twists", d.twists}, {"n", d.n}};
  }
  json doc = {{"version", document_version},
              {"type", "bound-certificate"},
              {"quantity", {{"kind", to_string(c.quantity.kind)}, {"n", c.quantity.n}, {"s_label", c.quantity.s_label}}},
              {"inequality", to_string(c.inequality)},
              {"inputs", inputs},
              {"bound", to_fraction(c.bound)}};
  if (c.ceiling) {
    doc["ceiling"] = to_fraction(*c.ceiling);
  }
  return doc;
}

inline BoundCertificate certificate_from_json(const json &doc) {
  detail::check_header(doc, "bound-certificate");
  BoundCertificate c;
  const json &q = detail::field(doc, "", "quantity");
  try {
    c.quantity.kind = quantity_kind_from_string(detail::string_field(q, "/quantity", "kind"));
  } catch (const domain_error &e) {
    throw schema_error("/quantity/kind", e.what());
  }
  c.quantity.n = detail::integer_field(q, "/quantity", "n");
  c.quantity.s_label = detail::string_field(q, "/quantity", "s_label");
  try {
    c.inequality = inequality_from_string(detail::string_field(doc, "", "inequality"));
  } catch (const domain_error &e) {
    throw schema_error("/inequality", e.what());
  }
  const json &in = detail::field(doc, "", "inputs");
  const std::string kind = detail::string_field(in, "/inputs", "kind");
  if (kind == "quasimorphism") {
    c.inputs = QmInputs{detail::string_field(in, "/inputs", "qm"),
                        certified_value_from_json(detail::field(in, "/inputs", "phi_g"), "/inputs/phi_g"),
                        detail::rational_field(in, "/inputs", "defect_upper"),
                        detail::rational_field(in, "/inputs", "c_upper")};
  } else if (kind == "dehn-twist") {
    c.inputs = DehnInputs{detail::integer_field(in, "/inputs", "genus"), detail::integer_field(in, "/inputs", "twists"),
                          detail::integer_field(in, "/inputs", "n")};
  } else {
    throw schema_error("/inputs/kind", "expected \"quasimorphism\" or \"dehn-twist\"");
  }
  c.bound = detail::rational_field(doc, "", "bound");
  if (doc.contains("ceiling")) {
    c.ceiling = detail::integer_string_field(doc, "", "ceiling");
  }
  return c;
}

/// The "type" of a document, after checking the version.
inline std::string document_type(const json &doc) {
  if (!doc.is_object()) {
    throw schema_error("", "expected a JSON object");
  }
  const long long version = detail::integer_field(doc, "", "version");
  if (version != document_version) {
    throw schema_error("/version", "unsupported version " + std::to_string(version));
  }
  return detail::string_field(doc, "", "type");
}

} // namespace qmlen

#endif // QMLEN_SERIALIZE_HPP
