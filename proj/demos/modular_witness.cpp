// Builds a torsion factorization of [[2,1],[1,1]]^n, round-trips it through JSON and verifies it.
#include <iostream>

#include <qmlen/qmlen.hpp>

using namespace qmlen;

int main(int argc, char **argv) {
  const long long n = argc > 1 ? std::stoll(argv[1]) : 5;
  const SL2Z sl;
  const auto w = sl2z_example_witness(n);
  const json doc = to_json(sl, w);
  std::cout << doc.dump(2) << "\n";

  const auto back = witness_from_json(sl, json::parse(doc.dump()));
  const auto v = verify_witness(sl, back);
  std::cerr << (v.ok ? "verified: " : "FAILED: ") << w.factors.size() << " torsion factors for g^" << n << "\n";
  return v.ok ? 0 : 4;
}
