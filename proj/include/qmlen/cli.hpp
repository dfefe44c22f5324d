#ifndef QMLEN_CLI_HPP
#define QMLEN_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "any_group.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "length.hpp"
#include "quasimorphism.hpp"
#include "serialize.hpp"
#include "witness.hpp"

namespace qmlen::cli {

enum exit_code : int {
  ok = 0,
  usage = 1,
  inconclusive = 2,
  no_bound = 3,
  verification_failed = 4,
};

struct Options {
  std::string group;
  std::string element;
  std::string qm;
  std::string kind = "torsion";
  std::string gens = "standard";
  std::string strategy = "single";
  std::string width = "1/1000";
  std::string json_path;
  std::string csv_path;
  std::string ball_csv_path;
  std::string file;
  std::string construction;
  std::string s, t, f;
  int n_max = 12;
  int radius = 6;
  long long n = 1;
  bool symmetric = false;
  std::optional<long long> dehn_genus;
  std::optional<long long> dehn_twists;
};

namespace detail {

inline void write_file(const std::string &path, const std::string &content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw domain_error("cannot write '" + path + "'");
  }
  os << content;
}

inline std::string read_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw domain_error("cannot read '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

inline std::string csv_quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') {
      out += '"';
    }
  }
  return out + "\"";
}

/// "7/6 (~1.166667)"; the decimal is only ever shown next to the exact value.
inline std::string show(const Rational &q) {
  if (denominator(q) == 1) {
    return to_fraction(q);
  }
  return to_fraction(q) + " (~" + to_decimal(q) + ")";
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

template <Group G>
element_t<G> parse_element(const G &group, const std::string &text, const char *what) {
  try {
    return group.parse(text);
  } catch (const parse_error &e) {
    throw parse_error(std::string(what) + " '" + text + "': " + e.message(), e.position());
  }
}

template <Group G>
GeneratingSet<G> parse_generators(const G &group, const Options &o) {
  std::vector<element_t<G>> elements;
  std::string label = o.gens == "standard" ? "std" : o.gens == "transpositions" ? "transp" : "S";
  if (o.gens == "standard" || o.gens == "transpositions" || o.gens == "commutators") {
    if constexpr (std::is_same_v<G, FreeGroup>) {
      if (o.gens != "standard") {
        throw domain_error("generator keyword '" + o.gens + "' is only defined for perm groups");
      }
      for (int i = 1; i <= group.rank(); ++i) {
        elements.push_back(group.generator(i));
        elements.push_back(group.generator(-i));
      }
    } else if constexpr (std::is_same_v<G, SymmetricGroup>) {
      if (o.gens == "commutators") {
        elements = commutator_set(group);
        label = "C";
      } else {
        for (int i = 0; i < group.degree(); ++i) {
          for (int j = i + 1; j < group.degree(); ++j) {
            elements.push_back(group.cycles({{i, j}}));
          }
        }
      }
    } else {
      if (o.gens != "standard") {
        throw domain_error("generator keyword '" + o.gens + "' is only defined for perm groups");
      }
      elements = {group.parse("S"), group.parse("T"), group.parse("T'")};
      label = "{S,T,T'}";
    }
  } else {
    std::stringstream ss(o.gens);
    std::string item;
    while (std::getline(ss, item, ';')) {
      item = trim(item);
      if (!item.empty()) {
        elements.push_back(parse_element(group, item, "generator"));
      }
    }
    if (elements.empty()) {
      throw parse_error("empty generating set", 0);
    }
  }
  GeneratingSet<G> s(group, elements, label);
  return o.symmetric ? s.symmetrized(group) : s;
}

template <Group G>
std::string format_generators(const G &group, const GeneratingSet<G> &s) {
  std::string out;
  for (const auto &x : s.elements()) {
    out += (out.empty() ? "" : ";") + group.format(x);
  }
  return out;
}

template <Group G>
CertifiedValue certified_phi(const Quasimorphism<G> &f, const G &group, const element_t<G> &x,
                             const Rational &width) {
  return f.homogeneous ? CertifiedValue::exact(f(x)) : homogenize(f, group, x, width);
}

/// The homogenization of f, usable for certificates: its values are only
/// available as enclosures, its defect is at most 2 D(f).
template <Group G>
Quasimorphism<G> homogenized(const Quasimorphism<G> &f) {
  if (f.homogeneous) {
    return f;
  }
  const std::string id = f.id;
  return {"homogenized:" + id, f.group,
          [id](const element_t<G> &) -> Rational {
            throw domain_error("homogenized:" + id + " is only available as an enclosure");
          },
          2 * f.defect_upper, true};
}

// --- length -------------------------------------------------------------------

template <Group G>
int cmd_length(const G &group, const Options &o, std::ostream &out) {
  const auto g = parse_element(group, o.element, "element");
  const auto s = parse_generators(group, o);
  if (o.radius < 1) {
    throw domain_error("--radius must be positive");
  }
  SearchStrategy strategy = SearchStrategy::single_ball;
  if (o.strategy == "mitm") {
    strategy = SearchStrategy::meet_in_the_middle;
  } else if (o.strategy != "single") {
    throw domain_error("--strategy must be 'single' or 'mitm'");
  }
  const LengthResult r = length_exact(group, g, s, o.radius, strategy);

  out << "l_" << s.label() << "(" << group.format(g) << ") = " << r.str() << "\n";
  out << "radius searched: " << r.radius_searched << "\n";
  if (r.unreachable) {
    out << "note: the subgroup generated by " << s.label() << " was exhausted; g is not in it\n";
  }
  if (r.truncated) {
    out << "note: storage cap reached; lower bound only\n";
  }

  const std::string kind = r.is_exact() ? "exact" : "at-least";
  if (!o.json_path.empty()) {
    json gens = json::array();
    for (const auto &x : s.elements()) {
      gens.push_back(group.format(x));
    }
    json doc = {{"version", document_version},
                {"type", "length-result"},
                {"group", group.name()},
                {"element", group.format(g)},
                {"generators", {{"label", s.label()}, {"elements", gens}, {"symmetric", s.symmetric()}}},
                {"max_radius", o.radius},
                {"strategy", o.strategy},
                {"result",
                 {{"kind", kind},
                  {"k", r.k},
                  {"radius_searched", r.radius_searched},
                  {"unreachable", r.unreachable},
                  {"truncated", r.truncated}}}};
    write_file(o.json_path, dump(doc));
  }
  if (!o.csv_path.empty()) {
    std::ostringstream csv;
    csv << "group,element,generators,max_radius,strategy,kind,k,radius_searched,unreachable,truncated\n";
    csv << group.name() << ',' << csv_quote(group.format(g)) << ',' << csv_quote(format_generators(group, s)) << ','
        << o.radius << ',' << o.strategy << ',' << kind << ',' << r.k << ',' << r.radius_searched << ','
        << (r.unreachable ? "true" : "false") << ',' << (r.truncated ? "true" : "false") << '\n';
    write_file(o.csv_path, csv.str());
  }
  if (!o.ball_csv_path.empty()) {
    std::ostringstream csv;
    write_ball_csv(csv, group, ball(group, s, r.is_exact() ? std::max<int>(1, static_cast<int>(r.k)) : o.radius));
    write_file(o.ball_csv_path, csv.str());
  }
  return r.is_exact() ? ok : inconclusive;
}

// --- table --------------------------------------------------------------------

struct LowerBound {
  Inequality inequality;
  Rational bound;
  std::optional<Integer> ceiling;
};

struct UpperWitness {
  std::size_t factors = 0;
  std::string witness;
};

struct ReportRow {
  long long n = 0;
  std::vector<LowerBound> lower_bounds;
  bool no_bound = false;
  std::optional<UpperWitness> upper_witness;
  bool consistent = true;
};

inline void check_consistency(ReportRow &row) {
  row.consistent = true;
  if (row.upper_witness) {
    for (const auto &lb : row.lower_bounds) {
      if (lb.bound > Rational(static_cast<long long>(row.upper_witness->factors))) {
        row.consistent = false;
      }
    }
  }
}

template <Group G>
std::size_t verified_count(const G &group, const FactorizationWitness<G> &w) {
  const auto report = verify_witness(group, w);
  if (!report.ok) {
    throw internal_error("generated witness failed verification: " + report.reason);
  }
  return w.factors.size();
}

/// The smallest available verified upper witness for g^n of the given kind.
template <Group G>
std::optional<UpperWitness> upper_witness(const G &group, const element_t<G> &g, long long n, QuantityKind kind,
                                          const GeneratingSet<G> &s, bool standard_gens) {
  const element_t<G> gn = power(group, g, n);
  std::optional<UpperWitness> best;
  auto offer = [&best](std::size_t count, const char *id) {
    if (!best || count < best->factors) {
      best = UpperWitness{count, id};
    }
  };
  if (kind == QuantityKind::torsion_length) {
    if constexpr (std::is_same_v<G, PSL2Z>) {
      if (gn == group.identity()) {
        offer(0, "identity");
      } else {
        offer(verified_count(group, torsion_length_upper_projective(gn).witness), "syllables");
      }
      if (g == group.image(sl2z_example::g())) {
        offer(verified_count(group, psl2z_example_witness(n)), "involution-pair");
      }
    } else if constexpr (std::is_same_v<G, SL2Z>) {
      offer(verified_count(group, torsion_witness_sl2z(gn)), "syllables");
      if (g == sl2z_example::g()) {
        offer(verified_count(group, sl2z_example_witness(n)), "involution-pair-lift");
      }
    }
  } else if (kind == QuantityKind::length) {
    if constexpr (std::is_same_v<G, FreeGroup>) {
      if (standard_gens) {
        offer(gn.length(), "reduced-word");
      }
    }
    (void)s;
  }
  return best;
}

inline Inequality inequality_for_kind(const std::string &kind) {
  if (kind == "length") return Inequality::word_length;
  if (kind == "comm") return Inequality::commutator_length;
  if (kind == "torsion") return Inequality::torsion_length;
  if (kind == "stable-length") return Inequality::stable_word_length;
  if (kind == "stable-comm") return Inequality::stable_commutator_length;
  if (kind == "stable-torsion") return Inequality::stable_torsion_length;
  throw domain_error("--kind must be one of length, comm, torsion, stable-length, stable-comm, stable-torsion");
}

inline json row_json(const ReportRow &row) {
  json lbs = json::array();
  for (const auto &lb : row.lower_bounds) {
    json j = {{"inequality", to_string(lb.inequality)}, {"bound", to_fraction(lb.bound)}};
    if (lb.ceiling) {
      j["ceiling"] = to_fraction(*lb.ceiling);
    }
    lbs.push_back(j);
  }
  json up = nullptr;
  if (row.upper_witness) {
    up = {{"factors", row.upper_witness->factors}, {"witness", row.upper_witness->witness}};
  }
  return {{"n", row.n}, {"lower_bounds", lbs}, {"no_bound", row.no_bound}, {"upper_witness", up},
          {"consistent", row.consistent}};
}

inline std::string rows_csv(const std::vector<ReportRow> &rows) {
  std::ostringstream csv;
  csv << "n,inequality,bound,ceiling,no_bound,upper_factors,upper_witness,consistent\n";
  for (const auto &row : rows) {
    auto emit = [&](const std::string &tag, const std::string &bound, const std::string &ceiling) {
      csv << row.n << ',' << tag << ',' << bound << ',' << ceiling << ',' << (row.no_bound ? "true" : "false") << ','
          << (row.upper_witness ? std::to_string(row.upper_witness->factors) : "") << ','
          << (row.upper_witness ? row.upper_witness->witness : "") << ',' << (row.consistent ? "true" : "false")
          << '\n';
    };
    if (row.lower_bounds.empty()) {
      emit("", "", "");
    }
    for (const auto &lb : row.lower_bounds) {
      emit(to_string(lb.inequality), to_fraction(lb.bound), lb.ceiling ? to_fraction(*lb.ceiling) : "");
    }
  }
  return csv.str();
}

inline void print_rows(std::ostream &out, const std::vector<ReportRow> &rows) {
  out << "n\tinequality\tbound\tceiling\tupper\twitness\tconsistent\n";
  for (const auto &row : rows) {
    const std::string upper = row.upper_witness ? std::to_string(row.upper_witness->factors) : "-";
    const std::string wid = row.upper_witness ? row.upper_witness->witness : "-";
    const std::string cons = row.consistent ? "yes" : "NO";
    if (row.no_bound) {
      out << row.n << "\tno bound\t-\t-\t" << upper << '\t' << wid << '\t' << cons << '\n';
    }
    for (const auto &lb : row.lower_bounds) {
      out << row.n << '\t' << to_string(lb.inequality) << '\t' << show(lb.bound) << '\t'
          << (lb.ceiling ? lb.ceiling->str() : "-") << '\t' << upper << '\t' << wid << '\t' << cons << '\n';
    }
  }
}

inline int finish_table(const std::vector<ReportRow> &rows, json doc, const Options &o, std::ostream &out) {
  bool all_consistent = true;
  bool any_no_bound = false;
  json jrows = json::array();
  for (const auto &row : rows) {
    all_consistent = all_consistent && row.consistent;
    any_no_bound = any_no_bound || row.no_bound;
    jrows.push_back(row_json(row));
  }
  print_rows(out, rows);
  doc["rows"] = jrows;
  doc["all_consistent"] = all_consistent;
  if (!o.json_path.empty()) {
    write_file(o.json_path, dump(doc));
  }
  if (!o.csv_path.empty()) {
    write_file(o.csv_path, rows_csv(rows));
  }
  if (!all_consistent) {
    out << "INCONSISTENT: a lower bound exceeds a verified upper witness\n";
    return verification_failed;
  }
  return any_no_bound ? no_bound : ok;
}

inline int cmd_table_dehn(const Options &o, std::ostream &out) {
  if (!o.dehn_twists) {
    throw domain_error("Dehn twist mode needs both --dehn-genus and --dehn-twists");
  }
  const long long h = *o.dehn_genus;
  const long long k = *o.dehn_twists;
  const Inequality ineq = inequality_for_kind(o.kind);
  std::vector<ReportRow> rows;
  if (ineq == Inequality::commutator_length) {
    if (o.n_max < 1) {
      throw domain_error("--n-max must be positive");
    }
    for (long long n = 1; n <= o.n_max; ++n) {
      const auto [comm, tors] = mcg_dehn_certificates(h, k, n);
      rows.push_back({n, {{comm.inequality, comm.bound, comm.ceiling}}, false, std::nullopt, true});
    }
  } else if (ineq == Inequality::stable_torsion_length) {
    const auto [comm, tors] = mcg_dehn_certificates(h, k, 1);
    rows.push_back({0, {{tors.inequality, tors.bound, tors.ceiling}}, false, std::nullopt, true});
  } else {
    throw domain_error("Dehn twist mode supports --kind comm or stable-torsion");
  }
  out << "# product of " << k << " right-handed Dehn twist(s) on disjoint essential curves, genus " << h << "\n";
  json doc = {{"version", document_version}, {"type", "bound-table"},   {"group", "mcg"},
              {"genus", h},                  {"twists", k},             {"kind", o.kind}};
  return finish_table(rows, doc, o, out);
}

template <Group G>
int cmd_table(const G &group, const Options &o, std::ostream &out) {
  const auto g = parse_element(group, o.element, "element");
  if (o.qm.empty()) {
    throw domain_error("table needs --qm");
  }
  const Quasimorphism<G> f = make_quasimorphism(group, o.qm);
  const Quasimorphism<G> phi = homogenized(f);
  const Rational width = parse_rational(o.width);
  const Inequality ineq = inequality_for_kind(o.kind);
  const CertifiedValue phi_g = certified_phi(f, group, g, width);

  const bool standard_gens = o.gens == "standard";
  const GeneratingSet<G> s = parse_generators(group, o);
  Rational c_upper = 0;
  if (ineq == Inequality::word_length || ineq == Inequality::stable_word_length) {
    for (const auto &x : s.elements()) {
      c_upper = std::max(c_upper, certified_phi(f, group, x, width).abs().hi);
    }
  }

  out << "# " << group.name() << ", g = " << group.format(g) << ", quasimorphism " << phi.id << "\n";
  out << "# phi(g) in [" << to_fraction(phi_g.lo) << ", " << to_fraction(phi_g.hi) << "]"
      << (std::holds_alternative<ExactFormula>(phi_g.provenance) ? " (exact)" : " (limit estimate)")
      << ", D <= " << to_fraction(phi.defect_upper);
  if (ineq == Inequality::word_length || ineq == Inequality::stable_word_length) {
    out << ", C(" << s.label() << ") <= " << to_fraction(c_upper);
  }
  out << "\n";

  const bool vanishes = !phi_g.excludes_zero();
  if (vanishes) {
    out << "# phi(g) enclosure contains 0: this quasimorphism gives no bound\n";
  }

  std::vector<ReportRow> rows;
  if (is_stable(ineq)) {
    ReportRow row{0, {}, vanishes, std::nullopt, true};
    if (!vanishes) {
      const auto cert = stable_bound_from_qm(phi, phi_g, ineq, c_upper, s.label());
      row.lower_bounds.push_back({cert.inequality, cert.bound, cert.ceiling});
    }
    rows.push_back(row);
  } else {
    if (o.n_max < 1) {
      throw domain_error("--n-max must be positive");
    }
    // rows are independent; they are computed and merged in index order
    for (long long n = 1; n <= o.n_max; ++n) {
      ReportRow row{n, {}, vanishes, std::nullopt, true};
      if (!vanishes) {
        const auto cert = bound_from_qm(phi, phi_g, n, ineq, c_upper, s.label());
        row.lower_bounds.push_back({cert.inequality, cert.bound, cert.ceiling});
      }
      row.upper_witness = upper_witness(group, g, n, qmlen::detail::quantity_for(ineq, n, s.label()).kind, s, standard_gens);
      check_consistency(row);
      rows.push_back(row);
    }
  }

  json doc = {{"version", document_version},
              {"type", "bound-table"},
              {"group", group.name()},
              {"element", group.format(g)},
              {"qm", phi.id},
              {"kind", o.kind},
              {"phi_g", to_json(phi_g)},
              {"defect_upper", to_fraction(phi.defect_upper)},
              {"c_upper", to_fraction(c_upper)}};
  return finish_table(rows, doc, o, out);
}

// --- verify -------------------------------------------------------------------

inline int report_verification(bool passed, const std::string &what, const std::string &reason,
                               std::optional<std::size_t> index, const Options &o, std::ostream &out) {
  if (passed) {
    out << "OK: " << what << " verified\n";
  } else {
    out << "FAILED: " << reason << "\n";
  }
  if (!o.json_path.empty()) {
    json doc = {{"version", document_version},
                {"type", "verification-report"},
                {"subject", what},
                {"ok", passed},
                {"reason", reason},
                {"failing_index", index ? json(*index) : json(nullptr)}};
    write_file(o.json_path, dump(doc));
  }
  return passed ? ok : verification_failed;
}

inline int cmd_verify(const Options &o, std::ostream &out) {
  json doc;
  try {
    doc = json::parse(read_file(o.file));
  } catch (const json::parse_error &e) {
    throw schema_error("", std::string("invalid JSON: ") + e.what());
  }
  const std::string type = document_type(doc);
  if (type == "factorization-witness") {
    const std::string gname = qmlen::detail::string_field(doc, "", "group");
    AnyGroup any = [&] {
      try {
        return parse_group(gname);
      } catch (const std::exception &e) {
        throw schema_error("/group", e.what());
      }
    }();
    return std::visit(
        [&](const auto &group) {
          const auto w = witness_from_json(group, doc);
          const auto report = verify_witness(group, w);
          return report_verification(report.ok,
                                     "factorization witness (" + std::to_string(w.factors.size()) + " factors)",
                                     report.reason, report.failing_index, o, out);
        },
        any);
  }
  if (type == "bound-certificate") {
    const BoundCertificate cert = certificate_from_json(doc);
    const CertificateCheck check = verify_certificate(cert);
    return report_verification(check.ok, "bound certificate " + to_string(cert.inequality) + " >= " +
                                             to_fraction(cert.bound),
                               check.reason, std::nullopt, o, out);
  }
  throw schema_error("/type", "expected \"factorization-witness\" or \"bound-certificate\", got \"" + type + "\"");
}

// --- qm-eval ------------------------------------------------------------------

template <Group G>
int cmd_qm_eval(const G &group, const Options &o, std::ostream &out) {
  const auto g = parse_element(group, o.element, "element");
  if (o.qm.empty()) {
    throw domain_error("qm-eval needs --qm");
  }
  const Quasimorphism<G> f = make_quasimorphism(group, o.qm);
  const CertifiedValue v = certified_phi(f, group, g, parse_rational(o.width));
  const Rational raw = f(g);
  out << f.id << "(" << group.format(g) << ") = " << show(raw) << "\n";
  out << "defect <= " << to_fraction(f.defect_upper) << (f.homogeneous ? ", homogeneous" : "") << "\n";
  if (const auto *l = std::get_if<LimitEstimate>(&v.provenance)) {
    out << "homogenization in [" << to_fraction(v.lo) << ", " << to_fraction(v.hi) << "] (n = " << l->n_used.str()
        << ")\n";
  } else {
    out << "homogenization = " << show(v.lo) << " (exact)\n";
  }
  if (!o.json_path.empty()) {
    json doc = {{"version", document_version},
                {"type", "qm-value"},
                {"group", group.name()},
                {"element", group.format(g)},
                {"qm", f.id},
                {"defect_upper", to_fraction(f.defect_upper)},
                {"homogeneous", f.homogeneous},
                {"raw", to_fraction(raw)},
                {"homogenization", to_json(v)}};
    write_file(o.json_path, dump(doc));
  }
  return ok;
}

// --- defect-search ------------------------------------------------------------

template <Group G>
int cmd_defect_search(const G &group, const Options &o, std::ostream &out) {
  if (o.qm.empty()) {
    throw domain_error("defect-search needs --qm");
  }
  const Quasimorphism<G> f = make_quasimorphism(group, o.qm);
  const GeneratingSet<G> s = parse_generators(group, o);
  const auto r = defect_search(f, group, s.elements(), o.radius);
  out << "max |f(xy) - f(x) - f(y)| on the radius-" << r.radius << " ball (" << r.ball_size
      << " elements, " << r.pairs_checked << " pairs): " << to_fraction(r.max_defect) << "\n";
  out << "attained at x = " << group.format(r.witness_x) << ", y = " << group.format(r.witness_y) << "\n";
  out << "declared defect " << to_fraction(f.defect_upper) << ": "
      << (r.exceeds_declared ? "VIOLATED" : "consistent") << "\n";
  if (!o.json_path.empty()) {
    json doc = {{"version", document_version},
                {"type", "defect-search"},
                {"group", group.name()},
                {"qm", f.id},
                {"generators", format_generators(group, s)},
                {"radius", r.radius},
                {"ball_size", r.ball_size},
                {"pairs_checked", r.pairs_checked},
                {"max_defect", to_fraction(r.max_defect)},
                {"witness_x", group.format(r.witness_x)},
                {"witness_y", group.format(r.witness_y)},
                {"declared_defect", to_fraction(f.defect_upper)},
                {"exceeds_declared", r.exceeds_declared}};
    write_file(o.json_path, dump(doc));
  }
  return r.exceeds_declared ? verification_failed : ok;
}

// --- witness ------------------------------------------------------------------

template <Group G>
int emit_witness(const G &group, const FactorizationWitness<G> &w, const Options &o, std::ostream &out) {
  const auto report = verify_witness(group, w);
  if (!report.ok) {
    throw internal_error("constructed witness failed verification: " + report.reason);
  }
  const std::string text = dump(to_json(group, w));
  if (o.json_path.empty()) {
    out << text;
  } else {
    write_file(o.json_path, text);
    out << "wrote " << w.factors.size() << "-factor witness for " << group.format(w.target) << " to "
        << o.json_path << "\n";
  }
  return ok;
}

template <Group G>
int cmd_witness(const G &group, const Options &o, std::ostream &out) {
  const std::string &c = o.construction;
  if (c == "involution") {
    return emit_witness(group,
                        involution_power_witness(group, parse_element(group, o.s, "--s"),
                                                 parse_element(group, o.t, "--t"), o.n),
                        o, out);
  }
  if (c == "twist-commutator") {
    return emit_witness(
        group, twist_commutator_witness(group, parse_element(group, o.f, "--f"), parse_element(group, o.t, "--t"), o.n),
        o, out);
  }
  if (c == "example") {
    if constexpr (std::is_same_v<G, SL2Z>) {
      return emit_witness(group, sl2z_example_witness(o.n), o, out);
    } else if constexpr (std::is_same_v<G, PSL2Z>) {
      return emit_witness(group, psl2z_example_witness(o.n), o, out);
    } else {
      throw domain_error("the 'example' construction lives in sl2z or psl2z");
    }
  }
  if (c == "syllables") {
    if constexpr (std::is_same_v<G, SL2Z>) {
      return emit_witness(group, torsion_witness_sl2z(parse_element(group, o.element, "element")), o, out);
    } else if constexpr (std::is_same_v<G, PSL2Z>) {
      return emit_witness(group, torsion_length_upper_projective(parse_element(group, o.element, "element")).witness,
                          o, out);
    } else {
      throw domain_error("the 'syllables' construction lives in sl2z or psl2z");
    }
  }
  throw domain_error("--construction must be one of example, involution, twist-commutator, syllables");
}

} // namespace detail

/// Runs the command line `args` (without the program name). Never throws;
/// returns the process exit code.
inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Certified bounds on word, commutator and torsion lengths", "qmlen"};
  app.require_subcommand(1);

  auto group_opt = [&](CLI::App *sub, bool required) {
    auto *opt = sub->add_option("--group", o.group, "free:<rank> | sl2z | psl2z | perm:<degree>");
    if (required) {
      opt->required();
    }
  };

  auto *length = app.add_subcommand("length", "exact S-length by ball search");
  group_opt(length, true);
  length->add_option("--element", o.element, "the element g")->required();
  length->add_option("--gens", o.gens, "';'-separated generators, or standard | transpositions | commutators");
  length->add_flag("--symmetric", o.symmetric, "close the generating set under inverses");
  length->add_option("--radius", o.radius, "maximum search radius");
  length->add_option("--strategy", o.strategy, "single | mitm");
  length->add_option("--json", o.json_path, "write the result as JSON");
  length->add_option("--csv", o.csv_path, "write the result as CSV");
  length->add_option("--ball-csv", o.ball_csv_path, "dump the searched ball as CSV");

  auto *table = app.add_subcommand("table", "lower bounds for g^n, n = 1..n-max, with upper witnesses");
  group_opt(table, false);
  table->add_option("--element", o.element, "the element g");
  table->add_option("--qm", o.qm, "quasimorphism id");
  table->add_option("--kind", o.kind, "length | comm | torsion | stable-length | stable-comm | stable-torsion");
  table->add_option("--n-max", o.n_max, "largest power");
  table->add_option("--gens", o.gens, "generating set S for --kind length");
  table->add_flag("--symmetric", o.symmetric, "close S under inverses");
  table->add_option("--width", o.width, "enclosure width for non-homogeneous quasimorphisms");
  table->add_option("--dehn-genus", o.dehn_genus, "Dehn twist mode: surface genus h >= 2");
  table->add_option("--dehn-twists", o.dehn_twists, "Dehn twist mode: number k of disjoint twists");
  table->add_option("--json", o.json_path, "write the table as JSON");
  table->add_option("--csv", o.csv_path, "write the table as CSV");

  auto *verify = app.add_subcommand("verify", "check a witness or certificate document");
  verify->add_option("file", o.file, "JSON document")->required();
  verify->add_option("--json", o.json_path, "write the report as JSON");

  auto *qm_eval = app.add_subcommand("qm-eval", "evaluate a quasimorphism and its homogenization");
  group_opt(qm_eval, true);
  qm_eval->add_option("--element", o.element, "the element g")->required();
  qm_eval->add_option("--qm", o.qm, "quasimorphism id")->required();
  qm_eval->add_option("--width", o.width, "enclosure width for the homogenization");
  qm_eval->add_option("--json", o.json_path, "write the value as JSON");

  auto *defect = app.add_subcommand("defect-search", "maximal defect over a ball");
  group_opt(defect, true);
  defect->add_option("--qm", o.qm, "quasimorphism id")->required();
  defect->add_option("--gens", o.gens, "generators of the ball (inverses are added)");
  defect->add_option("--radius", o.radius, "ball radius");
  defect->add_option("--json", o.json_path, "write the result as JSON");

  auto *witness = app.add_subcommand("witness", "generate a verified factorization witness");
  group_opt(witness, true);
  witness->add_option("--construction", o.construction, "example | involution | twist-commutator | syllables")
      ->required();
  witness->add_option("--n", o.n, "exponent");
  witness->add_option("--s", o.s, "first involution");
  witness->add_option("--t", o.t, "second involution, or the twist");
  witness->add_option("--f", o.f, "the element moving the twist");
  witness->add_option("--element", o.element, "target (syllables)");
  witness->add_option("--json", o.json_path, "write the witness here instead of stdout");

  std::vector<std::string> argv_store{"qmlen"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_store) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  }

  try {
    auto with_group = [&](auto &&fn) {
      return std::visit([&](const auto &group) { return fn(group); }, parse_group(o.group));
    };
    if (length->parsed()) {
      return with_group([&](const auto &g) { return detail::cmd_length(g, o, out); });
    }
    if (table->parsed()) {
      if (o.dehn_genus) {
        return detail::cmd_table_dehn(o, out);
      }
      if (o.group.empty() || o.element.empty()) {
        throw domain_error("table needs --group and --element (or --dehn-genus/--dehn-twists)");
      }
      return with_group([&](const auto &g) { return detail::cmd_table(g, o, out); });
    }
    if (verify->parsed()) {
      return detail::cmd_verify(o, out);
    }
    if (qm_eval->parsed()) {
      return with_group([&](const auto &g) { return detail::cmd_qm_eval(g, o, out); });
    }
    if (defect->parsed()) {
      return with_group([&](const auto &g) { return detail::cmd_defect_search(g, o, out); });
    }
    return with_group([&](const auto &g) { return detail::cmd_witness(g, o, out); });
  } catch (const parse_error &e) {
    err << "parse error: " << e.what() << "\n";
    return usage;
  } catch (const schema_error &e) {
    err << "schema error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what() << "\n";
    return usage;
  } catch (const domain_error &e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const no_certificate_error &e) {
    err << "no bound: " << e.what() << "\n";
    return no_bound;
  } catch (const resource_error &e) {
    err << "inconclusive: " << e.what() << " (complete through radius " << e.partial_radius() << ")\n";
    return inconclusive;
  } catch (const internal_error &e) {
    err << "internal error: " << e.what() << "\n";
    return verification_failed;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
}

} // namespace qmlen::cli

#endif // QMLEN_CLI_HPP
