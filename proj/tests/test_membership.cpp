#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "slpforge/membership.hpp"
#include "slpforge/zoo.hpp"

using namespace slpforge;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(MemberOracle, Examples) {
  const auto z5 = make_cyclic(5);
  EXPECT_TRUE(member_oracle(z5, std::vector<Element>{2}, 1));
  const auto w = make_obstruction_witness(WitnessVariant::LRB, 5);
  std::vector<Element> fewer(w.generators.begin() + 1, w.generators.end());
  EXPECT_FALSE(member_oracle(w.semigroup, fewer, w.target));
  EXPECT_TRUE(member_oracle(w.semigroup, w.generators, w.target));
  for (Element g : w.generators) EXPECT_TRUE(member_oracle(w.semigroup, w.generators, g));
  EXPECT_EQ(kind_of([&] { member_oracle(z5, std::vector<Element>{2}, 5); }), ErrorKind::OutOfRange);
}

TEST(MemberCertified, PermutativeMemberHasWidthTwo) {
  const auto g = make_abelian({2, 2, 2, 2});
  const auto ans = member_certified(g, abelian_unit_vectors({2, 2, 2, 2}), 15, "permutative");
  ASSERT_TRUE(ans.member);
  ASSERT_TRUE(ans.certificate);
  EXPECT_EQ(ans.cost.width, 2u);
  EXPECT_TRUE(ans.oracle_agrees);
}

TEST(MemberCertified, NonMemberHasNoCertificate) {
  const auto z6 = make_cyclic(6);
  const auto ans = member_certified(z6, std::vector<Element>{2}, 3);
  EXPECT_FALSE(ans.member);
  EXPECT_FALSE(ans.certificate);
}

TEST(MemberCertified, SolvableGroupViaAuto) {
  const auto s4 = make_symmetric(4);
  CompressConfig cfg;
  cfg.diameter_limit = 0;
  for (Element t = 0; t < s4.size(); ++t) {
    const auto ans = member_certified(s4, s4.generating_set(), t, "auto", cfg);
    ASSERT_TRUE(ans.member);
    EXPECT_EQ(ans.strategy, "group-solvable-bw");
    EXPECT_LE(ans.cost.width, 5u);
    EXPECT_EQ(verify(s4, *ans.certificate, t).verified, true);
  }
}

TEST(MemberCertified, StrategyFailureSurfaces) {
  const auto rb = make_rectangular_band(2, 2);
  EXPECT_EQ(kind_of([&] { member_certified(rb, rb.generating_set(), 0, "group-bsz"); }), ErrorKind::CompressorFailed);
  EXPECT_EQ(kind_of([&] { member_certified(rb, rb.generating_set(), 0, "nope"); }), ErrorKind::InvalidArgument);
}

TEST(MemberCertified, AgreesWithOracleOnSmallZoo) {
  std::vector<Semigroup> zoo;
  zoo.push_back(make_cyclic(12));
  zoo.push_back(make_dihedral(5));
  zoo.push_back(make_heisenberg(3));
  zoo.push_back(make_rectangular_band(3, 3));
  zoo.push_back(make_rb_times_group(2, 2, make_cyclic(3)));
  zoo.push_back(make_subset_semilattice(4));
  zoo.push_back(make_free_lrb(3));
  zoo.push_back(make_obstruction_witness(WitnessVariant::T, 5).semigroup);
  std::mt19937_64 rng(99);
  for (const auto& s : zoo) {
    ASSERT_LE(s.size(), 80u);
    for (int trial = 0; trial < 20; ++trial) {
      const auto sigma = oracle::random_subset(rng, s.size(), 3);
      const auto reach = oracle::closure(s, sigma);
      for (Element t = 0; t < s.size(); ++t) {
        const auto ans = member_certified(s, sigma, t);
        EXPECT_EQ(ans.member, reach.count(t) == 1) << s.name() << " t=" << t;
        if (ans.member) {
          ASSERT_TRUE(ans.certificate);
          EXPECT_EQ(evaluate(s, *ans.certificate).output, t);
        }
      }
    }
  }
}

TEST(Irredundancy, ObstructionWitnessesNeedEveryGenerator) {
  for (auto v : {WitnessVariant::LRB, WitnessVariant::RRB, WitnessVariant::T}) {
    const auto w = make_obstruction_witness(v, 10);
    EXPECT_EQ(irredundancy(w.semigroup, w.generators, w.target).size(), 10u);
  }
  const auto u = make_u_witness(8);
  EXPECT_EQ(irredundancy(u.semigroup, u.generators, u.target).size(), 8u);
}

TEST(Irredundancy, RedundantGenerators) {
  const auto z6 = make_cyclic(6);
  EXPECT_TRUE(irredundancy(z6, std::vector<Element>{1, 5}, 3).empty());
  EXPECT_EQ(irredundancy(z6, std::vector<Element>{1, 2}, 3), std::vector<Element>{1});
  EXPECT_EQ(kind_of([&] { irredundancy(z6, std::vector<Element>{1, 5}, 3, 1); }), ErrorKind::BudgetExceeded);
}
