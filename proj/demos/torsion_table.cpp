// Lower and upper bounds on the torsion length of T^n in PSL(2,Z).
#include <iostream>

#include <qmlen/qmlen.hpp>

using namespace qmlen;

int main() {
  const PSL2Z psl;
  const auto phi = to_projective(rademacher_qm());
  const ProjMatrix2 t = psl.image(matrices::T());
  const CertifiedValue value = CertifiedValue::exact(phi(t));

  std::cout << "n  lower  ceiling  upper\n";
  for (long long n = 1; n <= 12; ++n) {
    const auto cert = bound_from_qm(phi, value, n, Inequality::torsion_length);
    if (!verify_certificate(cert).ok) {
      return 1;
    }
    const auto upper = torsion_length_upper_projective(power(psl, t, n));
    if (!verify_witness(psl, upper.witness).ok) {
      return 1;
    }
    std::cout << n << "  " << to_fraction(cert.bound) << "  " << *cert.ceiling << "  " << upper.k << "\n";
  }
  const auto stable = stable_bound_from_qm(phi, value, Inequality::stable_torsion_length);
  std::cout << "stable torsion length of T >= " << to_fraction(stable.bound) << "\n";
}
