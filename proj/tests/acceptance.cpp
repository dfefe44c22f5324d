// Acceptance run: one PASS/FAIL line per criterion, with its time limit.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <qmlen/qmlen.hpp>

using namespace qmlen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Checker {
public:
  void expect(bool ok, const std::string &what) {
    if (!ok) {
      if (failures_ < 3) {
        notes_ += (notes_.empty() ? "" : "; ") + what;
      }
      ++failures_;
    }
  }
  void note(const std::string &what) { extra_ += (extra_.empty() ? "" : "; ") + what; }
  Outcome outcome() const {
    std::string d = extra_;
    if (failures_ > 0) {
      d += (d.empty() ? "" : "; ") + std::to_string(failures_) + " failed check(s): " + notes_;
    }
    return {failures_ == 0, d};
  }

private:
  int failures_ = 0;
  std::string notes_;
  std::string extra_;
};

IntMatrix2 random_sl2z(std::mt19937_64 &rng, int max_len) {
  const IntMatrix2 gens[] = {matrices::S(), matrices::T(), matrices::T().inverse(), matrices::U()};
  std::uniform_int_distribution<int> pick(0, 3), len(0, max_len);
  IntMatrix2 m;
  for (int i = len(rng); i > 0; --i) {
    m = m * gens[pick(rng)];
  }
  return m;
}

Permutation random_perm(std::mt19937_64 &rng, int degree) {
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

// s(d, c) straight from the sawtooth definition, in integers:
// ((k/c)) = (2k - c) / 2c and ((kd/c)) = (2r - c) / 2c with r = kd mod c, or 0 when r = 0.
Rational dedekind_direct(long long d, long long c) {
  long long num = 0;
  for (long long k = 1; k < c; ++k) {
    long long r = (k * d) % c;
    if (r < 0) {
      r += c;
    }
    if (r != 0) {
      num += (2 * k - c) * (2 * r - c);
    }
  }
  return make_rational(num, 4 * c * c);
}

// Smallest number of factors by enumerating all tuples over S.
template <Group G>
std::optional<int> naive_length(const G &group, const element_t<G> &g, const std::vector<element_t<G>> &s,
                                int max_k) {
  std::vector<element_t<G>> layer{group.identity()};
  for (int k = 0; k <= max_k; ++k) {
    for (const auto &x : layer) {
      if (x == g) {
        return k;
      }
    }
    std::vector<element_t<G>> next;
    for (const auto &x : layer) {
      for (const auto &y : s) {
        next.push_back(group.multiply(x, y));
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

// --- criteria ---------------------------------------------------------------------

Outcome modular_example() {
  Checker c;
  const SL2Z sl;
  const PSL2Z psl;
  const IntMatrix2 s(0, 1, -1, 0), t(-1, -1, 2, 1), g(2, 1, 1, 1);
  c.expect(s * t == g, "s t != g");
  c.expect(sl.order(s) == Order::finite(4), "order(s) != 4");
  c.expect(sl.order(t) == Order::finite(4), "order(t) != 4");
  std::size_t max_sl = 0, max_psl = 0;
  for (long long n = -50; n <= 50; ++n) {
    if (n == 0) {
      continue;
    }
    const auto w = sl2z_example_witness(n);
    c.expect(w.target == power(sl, g, n), "target mismatch at n=" + std::to_string(n));
    c.expect(verify_witness(sl, w).ok, "sl2z witness fails at n=" + std::to_string(n));
    c.expect(w.factors.size() <= 3, "more than 3 factors at n=" + std::to_string(n));
    const auto p = psl2z_example_witness(n);
    c.expect(verify_witness(psl, p).ok, "psl2z witness fails at n=" + std::to_string(n));
    c.expect(p.factors.size() <= 2, "more than 2 projective factors at n=" + std::to_string(n));
    max_sl = std::max(max_sl, w.factors.size());
    max_psl = std::max(max_psl, p.factors.size());
  }
  c.note("max factors sl2z " + std::to_string(max_sl) + ", psl2z " + std::to_string(max_psl));
  return c.outcome();
}

Outcome involution_pairs() {
  Checker c;
  const SymmetricGroup s8(8);
  const Permutation ps = s8.cycles({{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const Permutation pt = s8.cycles({{1, 2}, {3, 4}, {5, 6}});
  const PSL2Z psl;
  const ProjMatrix2 ms = psl.image(sl2z_example::s()), mt = psl.image(sl2z_example::t());
  for (long long n = 1; n <= 100; ++n) {
    const auto a = involution_power_witness(s8, ps, pt, n);
    c.expect(verify_witness(s8, a).ok && a.factors.size() == 2, "perm witness at n=" + std::to_string(n));
    c.expect(a.target == power(s8, s8.multiply(ps, pt), n), "perm target at n=" + std::to_string(n));
    const auto b = involution_power_witness(psl, ms, mt, n);
    c.expect(verify_witness(psl, b).ok && b.factors.size() == 2, "psl2z witness at n=" + std::to_string(n));
  }
  return c.outcome();
}

Outcome twist_commutator() {
  Checker c;
  const SymmetricGroup s6(6);
  const Permutation t = s6.cycles({{0, 1, 2}});
  const Permutation f = s6.cycles({{0, 3}, {1, 4}, {2, 5}});  // moves supp(t) off itself
  for (long long n = 1; n <= 50; ++n) {
    const auto w = twist_commutator_witness(s6, f, t, n);
    c.expect(verify_witness(s6, w).ok && w.factors.size() == 1, "n=" + std::to_string(n));
  }
  return c.outcome();
}

Outcome quasimorphism_integrity() {
  Checker c;
  for (long long cc = 1; cc <= 200; ++cc) {
    for (long long d = 0; d < cc; ++d) {
      if (dedekind_sum(d, cc) != dedekind_direct(d, cc)) {
        c.expect(false, "s(" + std::to_string(d) + "," + std::to_string(cc) + ")");
      }
    }
  }
  const SL2Z sl;
  const auto gens = GeneratingSet<SL2Z>(sl, {matrices::S(), matrices::T()}).symmetrized(sl);
  const auto b = ball(sl, gens, 6);
  std::size_t pairs = 0;
  for (const auto &x : b.elements()) {
    for (const auto &y : b.elements()) {
      const Rational v = phi_cocycle_defect(x, y);  // throws outside {-3, 0, 3}
      c.expect(v == 0 || v == 3 || v == -3, "cocycle on ball");
      ++pairs;
    }
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10000; ++i) {
    const Rational v = phi_cocycle_defect(random_sl2z(rng, 16), random_sl2z(rng, 16));
    c.expect(v == 0 || v == 3 || v == -3, "cocycle on random pair");
  }
  const auto r = defect_search(dedekind_phi_qm(), sl, {matrices::S(), matrices::T()}, 5);
  c.expect(r.max_defect <= 3, "defect_search found " + to_fraction(r.max_defect));
  c.note("ball " + std::to_string(b.size()) + " elements, " + std::to_string(pairs) + " pairs; defect_search max " +
         to_fraction(r.max_defect));
  return c.outcome();
}

Outcome rademacher_values() {
  Checker c;
  const SL2Z sl;
  for (long long n = -30; n <= 30; ++n) {
    c.expect(rademacher(power(sl, matrices::T(), n)) == n, "T^" + std::to_string(n));
  }
  c.expect(rademacher(matrices::S()) == 0, "S");
  c.expect(rademacher(matrices::U()) == 0, "U");
  c.expect(rademacher(IntMatrix2(2, 1, 1, 1)) == 0, "g");
  return c.outcome();
}

Outcome bound_formulas() {
  Checker c;
  const PSL2Z psl;
  const auto phi = to_projective(rademacher_qm());
  const ProjMatrix2 t = psl.image(matrices::T());
  const CertifiedValue v = CertifiedValue::exact(phi(t));
  bool third_bound_holds = true;
  bool sandwich = true;
  for (long long n = 1; n <= 100; ++n) {
    const auto cert = bound_from_qm(phi, v, n, Inequality::torsion_length);
    third_bound_holds = third_bound_holds && cert.bound == Rational(n, 3) + 1;
    const auto upper = torsion_length_upper_projective(power(psl, t, n));
    sandwich = sandwich && verify_witness(psl, upper.witness).ok && cert.bound <= Rational(upper.k);
  }
  const auto st = stable_bound_from_qm(phi, v, Inequality::stable_torsion_length);
  const auto sc = stable_bound_from_qm(phi, v, Inequality::stable_commutator_length);
  c.expect(third_bound_holds, "torsion bound at n=1 is " + to_fraction(bound_from_qm(phi, v, 1, Inequality::torsion_length).bound) + ", not 4/3");
  c.expect(st.bound == Rational(1, 3), "stable torsion bound " + to_fraction(st.bound) + ", not 1/3");
  c.expect(st.bound == 2 * sc.bound, "stable torsion != 2 x stable commutator");
  c.expect(sandwich, "lower bound above a syllable witness");
  c.note("declared defect " + to_fraction(phi.defect_upper) + "; stable torsion = 2 x stable comm: " +
         (st.bound == 2 * sc.bound ? "yes" : "no") + "; sandwich n<=100: " + (sandwich ? "yes" : "no"));
  return c.outcome();
}

Outcome dehn_calculators() {
  Checker c;
  const long long h = 2, k = 1, n = 30;
  const auto b = mcg_dehn_bounds(h, k, n);
  const Rational comm = 1 + make_rational(n * k, 6 * (3 * h - 1));
  const Rational tors = make_rational(k, 3 * (3 * h - 1));
  c.expect(b.comm_lower == comm && comm == 2, "commutator bound " + to_fraction(b.comm_lower));
  c.expect(b.stable_torsion_lower == tors && tors == Rational(1, 15),
           "stable torsion bound " + to_fraction(b.stable_torsion_lower));
  c.note("c-bound " + to_fraction(b.comm_lower) + ", stable torsion " + to_fraction(b.stable_torsion_lower));
  return c.outcome();
}

Outcome residual_bound() {
  Checker c;
  const SL2Z sl;
  const auto phi = rademacher_qm();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> nn(1, 16), count(1, 5), expo(-4, 4);
  auto family_for = [&](const IntMatrix2 &g, long long n, const std::vector<std::pair<IntMatrix2, Integer>> &head) {
    auto family = head;
    IntMatrix2 prefix;
    for (const auto &[h, a] : head) {
      prefix = prefix * power(sl, h, a);
    }
    family.emplace_back(prefix.inverse() * power(sl, g, n), 1);
    return family;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix2 g = random_sl2z(rng, 10);
    const long long n = nn(rng);
    std::vector<std::pair<IntMatrix2, Integer>> head;
    for (int i = count(rng); i > 0; --i) {
      head.emplace_back(random_sl2z(rng, 8), expo(rng));
    }
    const auto family = family_for(g, n, head);
    const Rational limit = Rational(static_cast<long long>(family.size() - 1)) * phi.defect_upper / n;
    const auto r = wbg_residual(phi, sl, g, family, n);
    c.expect(r.residual <= limit && r.bound == limit, "residual above (N-1)D/n");
    // same N at 2n: the bound halves and still holds
    const auto r2 = wbg_residual(phi, sl, g, family_for(g, 2 * n, head), 2 * n);
    c.expect(r2.bound * 2 == r.bound && r2.residual <= r2.bound, "doubling n");
  }
  return c.outcome();
}

Outcome engine_oracles() {
  Checker c;
  const SymmetricGroup s5(5);
  const auto all = enumerate_group(s5);
  std::vector<Permutation> a5;
  for (const auto &p : all) {
    if (p.is_even()) {
      a5.push_back(p);
    }
  }
  for (const auto &g : a5) {
    if (g == s5.identity()) {
      continue;
    }
    bool is_commutator = false;  // brute-force Ore check over all pairs
    for (std::size_t i = 0; i < all.size() && !is_commutator; ++i) {
      for (std::size_t j = 0; j < all.size() && !is_commutator; ++j) {
        is_commutator = commutator(s5, all[i], all[j]) == g;
      }
    }
    const auto r = commutator_length_finite(s5, g);
    c.expect(is_commutator && r.is_exact() && r.k == 1, "c(" + s5.format(g) + ")");
  }
  std::mt19937_64 rng(9);
  std::size_t compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int degree = 4 + trial % 3;
    const SymmetricGroup sd(degree);
    const GeneratingSet<SymmetricGroup> s(sd, {random_perm(rng, degree), random_perm(rng, degree),
                                               random_perm(rng, degree)});
    const int radius = 1 + trial % 4;
    const auto b = ball(sd, s, radius);
    for (const auto &g : b.elements()) {
      const auto expected = naive_length(sd, g, s.elements(), radius);
      const auto got = length_exact(sd, g, s, radius);
      const auto mitm = length_exact(sd, g, s, radius, SearchStrategy::meet_in_the_middle);
      c.expect(expected && got.is_exact() && got.k == *expected && mitm == got, "length of " + sd.format(g));
      ++compared;
    }
  }
  const SL2Z sl;
  for (int trial = 0; trial < 5; ++trial) {
    const GeneratingSet<SL2Z> s(sl, {random_sl2z(rng, 3), random_sl2z(rng, 3), random_sl2z(rng, 3)});
    const auto b = ball(sl, s, 4);
    for (const auto &g : b.elements()) {
      const auto expected = naive_length(sl, g, s.elements(), 4);
      const auto got = length_exact(sl, g, s, 4);
      c.expect(expected && got.is_exact() && got.k == *expected, "length of " + sl.format(g));
      ++compared;
    }
  }
  c.note(std::to_string(compared) + " ball elements compared");
  return c.outcome();
}

Outcome homogenization_contract() {
  Checker c;
  const SL2Z sl;
  const FreeGroup f(2);
  const auto phi = dedekind_phi_qm();
  const auto brooks = brooks_homogenized_qm(f, f.parse("a1a2a2"));
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> e(-6, 6), letter(0, 3), len(0, 10);
  const int letters[] = {1, -1, 2, -2};
  auto word = [&] {
    std::vector<int> raw;
    for (int i = len(rng); i > 0; --i) {
      raw.push_back(letters[letter(rng)]);
    }
    return FreeWord::reduce(2, raw);
  };
  for (int i = 0; i < 1000; ++i) {
    const IntMatrix2 g = random_sl2z(rng, 10), h = random_sl2z(rng, 10);
    const Integer n = 1 + i % 37;
    const auto a = homogenize_at(phi, sl, g, n);
    const auto b = homogenize_at(phi, sl, g, 2 * n);
    c.expect(b.width() * 2 == a.width(), "width did not halve");
    const Integer v = rademacher(g);
    c.expect(a.contains(Rational(v)) && b.contains(Rational(v)), "enclosure misses the value");
    const int k = e(rng);
    c.expect(rademacher(power(sl, g, k)) == k * v, "homogeneity");
    c.expect(rademacher(h * g * h.inverse()) == v, "conjugacy invariance");
    c.expect(rademacher(g.inverse()) == -v, "antisymmetry");
    const FreeWord x = word(), y = word();
    const Rational bx = brooks(x);
    c.expect(brooks(power(f, x, k)) == k * bx, "brooks homogeneity");
    c.expect(brooks(conjugate(f, y, x)) == bx, "brooks conjugacy invariance");
    c.expect(brooks(f.inverse(x)) == -bx, "brooks antisymmetry");
  }
  return c.outcome();
}

struct Criterion {
  int id;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "order-4 factorization of [[2,1],[1,1]]^n (<= 3 factors, projective <= 2), |n| <= 50", 5,
       modular_example},
      {2, "two-involution witnesses, exponents 1..100, permutations and PSL(2,Z)", 5, involution_pairs},
      {3, "single-commutator twist witness, n <= 50, disjoint supports", 1, twist_commutator},
      {4, "Dedekind sums c <= 200, cocycle in {-3,0,3} on radius-6 ball and 10^4 pairs, defect <= 3", 60,
       quasimorphism_integrity},
      {5, "Rademacher values on T^n, S, U, [[2,1],[1,1]]", 10, rademacher_values},
      {6, "bounds for T: torsion n/3 + 1, stable torsion 1/3, 2x stable comm, sandwich n <= 100", 10,
       bound_formulas},
      {7, "Dehn twist calculators at h=2, k=1, n=30 -> 2 and 1/15", 1, dehn_calculators},
      {8, "residual <= (N-1)D/n on 100 random families; bound halves as n doubles", 10, residual_bound},
      {9, "commutator length 1 on A5 \\ {e}; BFS equals naive enumeration, radius <= 4", 60, engine_oracles},
      {10, "homogenization width halves; homogeneity, conjugacy, antisymmetry on 10^3 cases", 30,
       homogenization_contract},
  };

  int failed = 0;
  for (const auto &c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / limit %.0f s", seconds, c.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " [" << timing
              << (in_time ? "" : ", TOO SLOW") << ", exact arithmetic]";
    if (!o.detail.empty()) {
      std::cout << " -- " << o.detail;
    }
    std::cout << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
