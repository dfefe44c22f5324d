#include <gtest/gtest.h>

#include <qmlen/qmlen.hpp>

using namespace qmlen;

namespace {

std::string schema_path_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const schema_error &e) {
    return e.path();
  }
  return "<no error>";
}

} // namespace

TEST(WitnessJson, RoundTripMatrix) {
  const SL2Z sl;
  const auto w = sl2z_example_witness(5);
  const json doc = to_json(sl, w);
  EXPECT_EQ(doc["type"], "factorization-witness");
  EXPECT_EQ(doc["group"], "sl2z");
  EXPECT_EQ(witness_from_json(sl, doc), w);
  EXPECT_EQ(witness_from_json(sl, json::parse(doc.dump())), w);
}

TEST(WitnessJson, RoundTripCommutatorClaims) {
  const SymmetricGroup s6(6);
  const auto w = twist_commutator_witness(s6, s6.cycles({{0, 3}, {1, 4}, {2, 5}}), s6.cycles({{0, 1, 2}}), 4);
  const json doc = to_json(s6, w);
  EXPECT_EQ(doc["factors"][0]["claim"]["kind"], "commutator");
  EXPECT_EQ(witness_from_json(s6, doc), w);
}

TEST(WitnessJson, SchemaPaths) {
  const SL2Z sl;
  const json good = to_json(sl, sl2z_example_witness(2));
  auto mutate = [&](auto edit) {
    json doc = good;
    edit(doc);
    return schema_path_of([&] { witness_from_json(sl, doc); });
  };
  EXPECT_EQ(mutate([](json &d) { d["factors"][1]["claim"].erase("kind"); }), "/factors/1/claim/kind");
  EXPECT_EQ(mutate([](json &d) { d["factors"][0]["claim"]["order"] = "four"; }), "/factors/0/claim/order");
  EXPECT_EQ(mutate([](json &d) { d["factors"][0]["claim"]["order"] = 0; }), "/factors/0/claim/order");
  EXPECT_EQ(mutate([](json &d) { d["factors"][0]["element"] = "[[1,2],[3,4]]"; }), "/factors/0/element");
  EXPECT_EQ(mutate([](json &d) { d["factors"][0]["claim"]["kind"] = "magic"; }), "/factors/0/claim/kind");
  EXPECT_EQ(mutate([](json &d) { d["factors"] = 3; }), "/factors");
  EXPECT_EQ(mutate([](json &d) { d["version"] = 2; }), "/version");
  EXPECT_EQ(mutate([](json &d) { d.erase("target"); }), "/target");
  EXPECT_EQ(mutate([](json &d) { d["type"] = "bound-certificate"; }), "/type");
  EXPECT_EQ(mutate([](json &d) { d["group"] = "psl2z"; }), "/group");
}

TEST(CertificateJson, RoundTrip) {
  const auto phi = rademacher_qm();
  const auto c = bound_from_qm(phi, CertifiedValue::exact(1), 9, Inequality::torsion_length, 0, "T");
  const json doc = to_json(c);
  EXPECT_EQ(doc["bound"], "5/2");
  EXPECT_EQ(doc["ceiling"], "3/1");
  EXPECT_EQ(doc["inequality"], "qm-torsion");
  EXPECT_EQ(certificate_from_json(doc), c);

  const auto s = stable_bound_from_qm(phi, CertifiedValue::exact(1), Inequality::stable_torsion_length);
  EXPECT_FALSE(to_json(s).contains("ceiling"));
  EXPECT_EQ(certificate_from_json(to_json(s)), s);

  const auto [comm, tors] = mcg_dehn_certificates(2, 1, 30);
  EXPECT_EQ(certificate_from_json(to_json(comm)), comm);
  EXPECT_EQ(to_json(tors)["bound"], "1/15");
}

TEST(CertificateJson, LimitEstimateProvenance) {
  const SL2Z sl;
  const auto v = homogenize(dedekind_phi_qm(), sl, matrices::T(), Rational(1, 8));
  const json j = to_json(v);
  EXPECT_EQ(j["provenance"]["kind"], "limit-estimate");
  EXPECT_EQ(certified_value_from_json(j, ""), v);
}

TEST(CertificateJson, SchemaPaths) {
  const json good = to_json(bound_from_qm(rademacher_qm(), CertifiedValue::exact(1), 3, Inequality::torsion_length));
  auto mutate = [&](auto edit) {
    json doc = good;
    edit(doc);
    return schema_path_of([&] { certificate_from_json(doc); });
  };
  EXPECT_EQ(mutate([](json &d) { d["bound"] = 1.5; }), "/bound");
  EXPECT_EQ(mutate([](json &d) { d["bound"] = "1.5"; }), "/bound");
  EXPECT_EQ(mutate([](json &d) { d["inputs"]["phi_g"]["lo"] = "x"; }), "/inputs/phi_g/lo");
  EXPECT_EQ(mutate([](json &d) { d["inputs"]["phi_g"]["lo"] = "5/1"; }), "/inputs/phi_g");
  EXPECT_EQ(mutate([](json &d) { d["inputs"]["kind"] = "oracle"; }), "/inputs/kind");
  EXPECT_EQ(mutate([](json &d) { d["inequality"] = "Eq99"; }), "/inequality");
  EXPECT_EQ(mutate([](json &d) { d["quantity"]["kind"] = "width"; }), "/quantity/kind");
  EXPECT_EQ(mutate([](json &d) { d["ceiling"] = "3/2"; }), "/ceiling");
}

TEST(Json, DeterministicBytes) {
  const SL2Z sl;
  EXPECT_EQ(to_json(sl, sl2z_example_witness(7)).dump(2), to_json(sl, sl2z_example_witness(7)).dump(2));
  const json a = to_json(bound_from_qm(rademacher_qm(), CertifiedValue::exact(1), 4, Inequality::torsion_length));
  const json b = to_json(bound_from_qm(rademacher_qm(), CertifiedValue::exact(1), 4, Inequality::torsion_length));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Json, DocumentType) {
  EXPECT_EQ(document_type(to_json(SL2Z{}, sl2z_example_witness(1))), "factorization-witness");
  EXPECT_EQ(schema_path_of([] { document_type(json::array()); }), "");
  EXPECT_EQ(schema_path_of([] { document_type(json{{"version", "1"}}); }), "/version");
}
