#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "slpforge/grouplab.hpp"
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

Element perm(std::size_t n, const std::vector<std::vector<int>>& cycles) {
  return permutation_index(n, false, permutation_from_cycles(n, cycles));
}

// Subgroup generated by all brute-force commutators.
ElementSet brute_commutator_subgroup(const GroupView& g, const ElementSet& h) {
  std::vector<Element> comms;
  h.for_each([&](Element a) {
    h.for_each([&](Element b) { comms.push_back(g.commutator(a, b)); });
  });
  const auto c = oracle::closure(g.base(), comms);
  ElementSet out(g.base().size());
  for (Element x : c) out.insert(x);
  return out;
}

}  // namespace

TEST(GroupView, Examples) {
  const auto z7 = make_cyclic(7);
  const auto g = group_view(z7);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inverse(3), 4u);
  EXPECT_EQ(g.exponent(), 7u);

  const auto s = make_rb_times_group(2, 2, make_cyclic(3));
  const auto d = band_of_groups_decomposition(s);
  const auto sub = group_view(s, d.carriers[1]);
  EXPECT_EQ(sub.order(), 3u);
  EXPECT_EQ(sub.identity(), d.idempotents[1]);
  for (Element x : sub.elements()) EXPECT_EQ(s.product(x, sub.inverse(x)), sub.identity());

  EXPECT_EQ(kind_of([] {
              const auto lrb = make_free_lrb(2);
              group_view(lrb);
            }),
            ErrorKind::NotAGroup);
}

TEST(GroupView, InversesAcrossGroups) {
  for (const auto& s : {make_dihedral(5), make_symmetric(4), make_heisenberg(3), make_symmetric(5, true)}) {
    const auto g = group_view(s);
    for (Element x : g.elements()) {
      EXPECT_EQ(s.product(x, g.inverse(x)), g.identity());
      EXPECT_EQ(s.product(g.inverse(x), x), g.identity());
      EXPECT_EQ(s.power(x, g.exponent() - 1 + (g.exponent() == 1 ? 1 : 0)), g.exponent() == 1 ? x : g.inverse(x));
    }
  }
}

TEST(MinimalGeneratingSubset, Examples) {
  const auto z6 = make_cyclic(6);
  const auto g6 = group_view(z6);
  const std::vector<Element> sigma{1, 2, 3};
  EXPECT_EQ(minimal_generating_subset(g6, sigma), (std::vector<Element>{1}));
  const std::vector<Element> id{0};
  EXPECT_EQ(minimal_generating_subset(g6, id), (std::vector<Element>{0}));

  const auto k4 = make_abelian({2, 2});
  const auto gk = group_view(k4);
  const std::vector<Element> inv{1, 2, 3};
  const auto d = minimal_generating_subset(gk, inv);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(oracle::closure(k4, d).size(), 4u);
}

TEST(MinimalGeneratingSubset, LogBoundAndSameClosure) {
  std::mt19937_64 rng(3);
  for (const auto& s : {make_dihedral(6), make_symmetric(4), make_heisenberg(3), make_abelian({2, 2, 2, 2})}) {
    const auto g = group_view(s);
    for (int trial = 0; trial < 40; ++trial) {
      const auto sigma = oracle::random_subset(rng, s.size(), 8);
      const auto d = minimal_generating_subset(g, sigma);
      const auto full = oracle::closure(s, sigma);
      EXPECT_EQ(oracle::closure(s, d), full);
      EXPECT_LE(static_cast<double>(d.size()), std::log2(static_cast<double>(full.size())) + 1e-9 + (full.size() == 1));
    }
  }
}

TEST(NormalClosure, Examples) {
  const auto z = make_abelian({2, 3, 4});
  const auto gz = group_view(z);
  const std::vector<Element> delta{5}, sigma{1, 2, 6};
  EXPECT_TRUE(normal_closure_set(gz, delta, sigma).added.empty());

  const auto s3 = make_symmetric(3);
  const auto g = group_view(s3);
  const std::vector<Element> gens{perm(3, {{1, 2}}), perm(3, {{1, 2, 3}})};
  const std::vector<Element> t{perm(3, {{1, 2}})};
  const auto nc = normal_closure_set(g, t, gens);
  EXPECT_EQ(nc.added.size(), 1u);
  EXPECT_EQ(nc.subgroup.size(), 6u);
  const auto [src, h] = nc.provenance[0];
  EXPECT_EQ(nc.added[0], g.conjugate(src, h));

  const std::vector<Element> c{perm(3, {{1, 2, 3}})};
  const auto a3 = normal_closure_set(g, c, gens);
  EXPECT_TRUE(a3.added.empty());
  EXPECT_EQ(a3.subgroup.size(), 3u);
}

TEST(NormalClosure, ConjugationStableAndLogBound) {
  std::mt19937_64 rng(5);
  for (const auto& s : {make_symmetric(4), make_dihedral(8), make_heisenberg(3)}) {
    const auto g = group_view(s);
    const auto& sigma = s.generating_set();
    for (int trial = 0; trial < 30; ++trial) {
      const auto delta = oracle::random_subset(rng, s.size(), 2);
      const auto nc = normal_closure_set(g, delta, sigma);
      for (Element x : nc.subgroup.to_vector())
        for (Element h : sigma) EXPECT_TRUE(nc.subgroup.contains(g.conjugate(x, h)));
      for (std::size_t i = 0; i < nc.added.size(); ++i)
        EXPECT_EQ(nc.added[i], g.conjugate(nc.provenance[i].first, nc.provenance[i].second));
      const double ratio = static_cast<double>(nc.subgroup.size()) / oracle::closure(s, delta).size();
      EXPECT_LE(static_cast<double>(nc.added.size()), std::log2(ratio) + 1e-9);
    }
  }
}

TEST(DerivedSeries, Examples) {
  const auto s3 = make_symmetric(3);
  const auto c = derived_series(group_view(s3));
  ASSERT_EQ(c.terms.size(), 3u);
  EXPECT_EQ(c.terms[1].size(), 3u);
  EXPECT_TRUE(c.reaches_trivial());

  const auto ab = derived_series(group_view(make_abelian({4, 6})));
  EXPECT_EQ(ab.terms.size(), 2u);

  const auto a5 = make_symmetric(5, true);
  const auto c5 = derived_series(group_view(a5));
  EXPECT_EQ(c5.terms.size(), 1u);
  EXPECT_FALSE(c5.reaches_trivial());
}

TEST(DerivedSeries, TermsAreBruteForceCommutatorsAndNormalInWholeGroup) {
  for (const auto& s : {make_symmetric(4), make_heisenberg(3), make_dihedral(8), make_dihedral(9)}) {
    const auto g = group_view(s);
    const auto c = derived_series(g);
    EXPECT_TRUE(c.reaches_trivial());
    for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) EXPECT_EQ(c.terms[i + 1], brute_commutator_subgroup(g, c.terms[i]));
    for (const auto& term : c.terms) {
      const auto v = term.to_vector();
      const auto nc = normal_closure_set(g, v, g.elements());
      EXPECT_EQ(nc.subgroup, term);
    }
  }
}

TEST(QuotientGroup, Examples) {
  const auto s3 = make_symmetric(3);
  const auto g = group_view(s3);
  EXPECT_EQ(quotient_group(g, g.carrier()).quotient.size(), 1u);
  const auto c = derived_series(g);
  const auto q = quotient_group(g, c.terms[1]);
  EXPECT_EQ(q.quotient.size(), 2u);
  EXPECT_EQ(q.quotient, make_cyclic(2));
  const std::vector<Element> t{perm(3, {{1, 2}})};
  EXPECT_EQ(kind_of([&] { quotient_group(g, subgroup_closure(g, t)); }), ErrorKind::NotNormal);
}

TEST(QuotientGroup, ProjectionIsHomomorphismAndSectionSplits) {
  for (const auto& s : {make_symmetric(4), make_heisenberg(3), make_dihedral(12)}) {
    const auto g = group_view(s);
    const auto c = derived_series(g);
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const auto q = quotient_group(g, c.terms[i]);
      for (Element a : g.elements())
        for (Element b : g.elements())
          ASSERT_EQ(q.projection[s.product(a, b)], q.quotient.product(q.projection[a], q.projection[b]));
      for (Element k = 0; k < q.quotient.size(); ++k) {
        EXPECT_EQ(q.projection[q.section[k]], k);
        for (Element x : g.elements())
          if (q.projection[x] == k) {
            EXPECT_LE(q.section[k], x);
          }
      }
    }
  }
}
