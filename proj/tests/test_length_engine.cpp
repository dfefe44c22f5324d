#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <qmlen/qmlen.hpp>

using namespace qmlen;

namespace {

// Smallest k <= max_k such that some k-tuple over S multiplies to g, by
// enumerating all tuples layer by layer (no deduplication).
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

Permutation random_perm(std::mt19937_64 &rng, int degree) {
  std::vector<int> im(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) {
    im[static_cast<std::size_t>(i)] = i;
  }
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

} // namespace

TEST(Ball, LineGraph) {
  const FreeGroup f(1);
  const GeneratingSet<FreeGroup> s(f, {f.generator(1), f.generator(-1)});
  const auto b = ball(f, s, 3);
  EXPECT_EQ(b.size(), 7u);
  EXPECT_EQ(b.find(f.identity()), 0);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(b.find(power(f, f.generator(1), k)), k);
    EXPECT_EQ(b.find(power(f, f.generator(1), -k)), k);
  }
  EXPECT_FALSE(b.find(power(f, f.generator(1), 4)));
}

TEST(Ball, TranspositionsCoverS3) {
  const SymmetricGroup s3(3);
  const GeneratingSet<SymmetricGroup> s(s3, {s3.cycles({{0, 1}}), s3.cycles({{0, 2}}), s3.cycles({{1, 2}})});
  EXPECT_EQ(ball(s3, s, 2).size(), 6u);
}

TEST(Ball, ModularGeneratorsRadiusTwo) {
  const SL2Z sl;
  const GeneratingSet<SL2Z> s(sl, {matrices::S(), matrices::T(), matrices::T().inverse()});
  const auto b = ball(sl, s, 2);
  EXPECT_LE(b.size(), 1u + 3 + 9);
  std::set<std::string> expected;
  for (const auto &x : s.elements()) {
    expected.insert(sl.format(x));
    for (const auto &y : s.elements()) {
      expected.insert(sl.format(x * y));
    }
  }
  expected.insert(sl.format(sl.identity()));
  EXPECT_EQ(b.size(), expected.size());
}

TEST(Ball, CapRaisesResourceError) {
  const FreeGroup f(2);
  const GeneratingSet<FreeGroup> s(f, {f.generator(1), f.generator(2)}, "S");
  try {
    ball(f, s.symmetrized(f), 10, 100);
    FAIL();
  } catch (const resource_error &e) {
    EXPECT_EQ(e.partial_radius(), 3);  // 1 + 4 + 12 + 36 = 53 < 100 < 161
  }
  EXPECT_THROW(ball(f, s, 0), domain_error);
}

TEST(Ball, CsvDump) {
  const FreeGroup f(1);
  const GeneratingSet<FreeGroup> s(f, {f.generator(1)});
  std::ostringstream os;
  write_ball_csv(os, f, ball(f, s, 2));
  EXPECT_EQ(os.str(), "element,length\n\"e\",0\n\"a1\",1\n\"a1a1\",2\n");
}

TEST(GeneratingSet, DeduplicatesAndDetectsSymmetry) {
  const FreeGroup f(2);
  const GeneratingSet<FreeGroup> s(f, {f.generator(1), f.generator(1), f.generator(-1)});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.symmetric());
  const GeneratingSet<FreeGroup> t(f, {f.generator(1), f.generator(2)});
  EXPECT_FALSE(t.symmetric());
  EXPECT_TRUE(t.symmetrized(f).symmetric());
  EXPECT_EQ(t.symmetrized(f).size(), 4u);
}

TEST(LengthExact, Examples) {
  const SymmetricGroup s3(3);
  const GeneratingSet<SymmetricGroup> tr(s3, {s3.cycles({{0, 1}}), s3.cycles({{0, 2}}), s3.cycles({{1, 2}})});
  EXPECT_EQ(length_exact(s3, s3.identity(), tr, 4), LengthResult::exact(0, 0));
  const auto r = length_exact(s3, s3.cycles({{0, 1, 2}}), tr, 4);
  EXPECT_EQ(r.str(), "Exact(2)");

  const FreeGroup f(1);
  const GeneratingSet<FreeGroup> line(f, {f.generator(1), f.generator(-1)});
  const auto a4 = length_exact(f, power(f, f.generator(1), 4), line, 3);
  EXPECT_EQ(a4.str(), "AtLeast(4)");
  EXPECT_EQ(a4.radius_searched, 3);
  EXPECT_FALSE(a4.unreachable);
}

TEST(LengthExact, UnreachableWhenSubgroupIsExhausted) {
  const SymmetricGroup s4(4);
  const GeneratingSet<SymmetricGroup> s(s4, {s4.cycles({{0, 1}})});
  const auto r = length_exact(s4, s4.cycles({{2, 3}}), s, 10);
  EXPECT_FALSE(r.is_exact());
  EXPECT_TRUE(r.unreachable);
}

TEST(LengthExact, TruncatedAtCap) {
  const FreeGroup f(2);
  const GeneratingSet<FreeGroup> s = GeneratingSet<FreeGroup>(f, {f.generator(1), f.generator(2)}).symmetrized(f);
  const auto r = length_exact(f, f.parse("a1a2a1a2a1a2"), s, 8, SearchStrategy::single_ball, 100);
  EXPECT_FALSE(r.is_exact());
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.k, 4);
}

TEST(LengthExact, AgreesWithNaiveOracleOnS5) {
  const SymmetricGroup s5(5);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const std::vector<Permutation> gens{random_perm(rng, 5), random_perm(rng, 5), random_perm(rng, 5)};
    const GeneratingSet<SymmetricGroup> s(s5, gens);
    const auto b = ball(s5, s, 4);
    for (const auto &g : b.elements()) {
      const auto expected = naive_length(s5, g, s.elements(), 4);
      ASSERT_TRUE(expected);
      const auto single = length_exact(s5, g, s, 4);
      const auto mitm = length_exact(s5, g, s, 4, SearchStrategy::meet_in_the_middle);
      EXPECT_EQ(single.k, *expected);
      EXPECT_EQ(mitm.k, *expected);
      EXPECT_TRUE(single.is_exact() && mitm.is_exact());
    }
  }
}

TEST(LengthExact, MeetInTheMiddleMatchesSingleBall) {
  const FreeGroup f(2);
  const GeneratingSet<FreeGroup> s = GeneratingSet<FreeGroup>(f, {f.generator(1), f.generator(2)}).symmetrized(f);
  for (const char *w : {"e", "a1", "a1a2a1'", "a1a1a2a2a1'a2'", "a2a2a2a2a2a2a2"}) {
    const FreeWord g = f.parse(w);
    for (int r = 1; r <= 6; ++r) {
      EXPECT_EQ(length_exact(f, g, s, r).str(), length_exact(f, g, s, r, SearchStrategy::meet_in_the_middle).str())
          << w << " radius " << r;
    }
  }
}

TEST(CommutatorLength, AlternatingGroupOnFivePoints) {
  const SymmetricGroup s5(5);
  const auto all = enumerate_group(s5);
  std::vector<Permutation> a5;
  for (const auto &p : all) {
    if (p.is_even()) {
      a5.push_back(p);
    }
  }
  ASSERT_EQ(a5.size(), 60u);
  // brute force: every element of A5 is x y x^-1 y^-1 for some x, y in A5
  std::set<std::vector<int>> commutators;
  for (const auto &x : a5) {
    for (const auto &y : a5) {
      commutators.insert(commutator(s5, x, y).images());
    }
  }
  EXPECT_EQ(commutators.size(), 60u);
  for (const auto &g : a5) {
    const auto r = commutator_length_finite(s5, g);
    EXPECT_EQ(r.str(), g == s5.identity() ? "Exact(0)" : "Exact(1)") << s5.format(g);
  }
}

TEST(CommutatorLength, OddPermutationIsOutOfReach) {
  const SymmetricGroup s4(4);
  std::vector<Permutation> a4;
  for (const auto &p : enumerate_group(s4)) {
    if (p.is_even()) {
      a4.push_back(p);
    }
  }
  const auto r = commutator_length_finite(s4, s4.cycles({{0, 1}}), &a4);
  EXPECT_FALSE(r.is_exact());
  EXPECT_TRUE(r.unreachable);
}

TEST(CommutatorLength, ClassTestMatchesPairEnumeration) {
  for (int d = 2; d <= 5; ++d) {
    const SymmetricGroup sd(d);
    auto fast = commutator_set(sd);
    auto slow = commutator_set(sd, enumerate_group(sd));
    std::set<std::vector<int>> a, b;
    for (const auto &p : fast) a.insert(p.images());
    for (const auto &p : slow) b.insert(p.images());
    EXPECT_EQ(a, b) << "degree " << d;
  }
}

TEST(CommutatorLength, DegreeCap) {
  EXPECT_THROW(commutator_length_finite(SymmetricGroup(9), SymmetricGroup(9).identity()), resource_error);
}

TEST(TorsionLength, FiniteGroup) {
  const SymmetricGroup s5(5);
  EXPECT_EQ(torsion_length_finite(s5, s5.identity()).str(), "Exact(0)");
  EXPECT_EQ(torsion_length_finite(s5, s5.cycles({{0, 3}})).str(), "Exact(1)");
  EXPECT_EQ(torsion_length_finite(s5, s5.cycles({{0, 1, 2, 3, 4}})).str(), "Exact(1)");
}

TEST(TorsionUpper, Examples) {
  const PSL2Z psl;
  const auto s = torsion_length_upper_projective(psl.image(matrices::S()));
  EXPECT_EQ(s.k, 1u);
  EXPECT_EQ(s.witness.factors[0].element, psl.image(matrices::S()));
  const auto t = torsion_length_upper_projective(psl.image(matrices::T()));
  EXPECT_GE(t.k, 2u);
  EXPECT_TRUE(verify_witness(psl, t.witness).ok);
  EXPECT_THROW(torsion_length_upper_projective(ProjMatrix2()), domain_error);
}

TEST(TorsionUpper, PowersOfTNondecreasing) {
  const PSL2Z psl;
  std::size_t prev = 0;
  for (int n = 1; n <= 50; ++n) {
    const auto u = torsion_length_upper_projective(power(psl, psl.image(matrices::T()), n));
    EXPECT_GE(u.k, prev);
    prev = u.k;
    EXPECT_TRUE(verify_witness(psl, u.witness).ok);
    for (const auto &f : u.witness.factors) {
      const auto m = std::get<TorsionOfOrder>(f.claim).m;
      EXPECT_TRUE(m == 2 || m == 3);
    }
  }
}
