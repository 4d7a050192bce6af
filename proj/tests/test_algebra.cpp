#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "oracles.hpp"
#include "slpforge/algebra.hpp"
#include "slpforge/cayley_io.hpp"
#include "slpforge/decomposition.hpp"
#include "slpforge/identity.hpp"
#include "slpforge/zoo.hpp"

using namespace slpforge;

namespace {

Semigroup additive(std::size_t m) { return make_cyclic(m); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

// a, a^2, a^3 with a^4 = a^2
Semigroup cyclic_index2_period2() {
  auto reduce = [](std::size_t e) { return e <= 3 ? e : 2 + (e - 2) % 2; };
  RawTable raw(3, std::vector<Element>(3));
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) raw[i - 1][j - 1] = static_cast<Element>(reduce(i + j) - 1);
  return validate_table(raw);
}

std::vector<Semigroup> small_zoo() {
  std::vector<Semigroup> z;
  z.push_back(make_cyclic(6));
  z.push_back(make_dihedral(4));
  z.push_back(make_symmetric(3));
  z.push_back(make_rectangular_band(2, 3));
  z.push_back(make_free_lrb(3));
  z.push_back(make_free_t(3));
  z.push_back(make_obstruction_witness(WitnessVariant::LRB, 5).semigroup);
  z.push_back(make_obstruction_witness(WitnessVariant::T, 5).semigroup);
  z.push_back(make_u_witness(4).semigroup);
  z.push_back(cyclic_index2_period2());
  z.push_back(make_clifford(make_cyclic(4), make_cyclic(2), {0, 1, 0, 1}));
  z.push_back(make_nilpotent_extension(make_rb_times_group(2, 2, make_cyclic(3)), {0, 5, 10}, 3).semigroup);
  return z;
}

}  // namespace

TEST(ValidateTable, TrivialAndCyclic) {
  const auto t = validate_table({{0}});
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.omega(0), 0u);
  const auto z3 = validate_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  EXPECT_EQ(z3.size(), 3u);
  EXPECT_EQ(z3.identity(), Element{0});
}

TEST(ValidateTable, CorruptedEntryReportsGenuineWitness) {
  RawTable raw = make_cyclic(3).to_raw();
  raw[1][1] = 0;
  try {
    validate_table(raw);
    FAIL() << "accepted a non-associative table";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAssociative);
    std::smatch m;
    const std::string what = e.what();
    ASSERT_TRUE(std::regex_search(what, m, std::regex(R"(\((\d+)\*(\d+)\)\*(\d+))")));
    const std::size_t a = std::stoul(m[1]), b = std::stoul(m[2]), c = std::stoul(m[3]);
    EXPECT_NE(raw[raw[a][b]][c], raw[a][raw[b][c]]);
  }
}

TEST(ValidateTable, LargeTableUsesGeneratorTestButStillRejects) {
  RawTable raw = make_cyclic(300).to_raw();
  raw[17][40] = 3;
  EXPECT_EQ(kind_of([&] { validate_table(raw); }), ErrorKind::NotAssociative);
}

TEST(ValidateTable, OutOfRange) {
  EXPECT_EQ(kind_of([] { validate_table({{0, 2}, {1, 0}}); }), ErrorKind::OutOfRange);
}

TEST(Omega, Examples) {
  const auto z6 = make_cyclic(6);
  for (Element g = 0; g < 6; ++g) EXPECT_EQ(z6.omega(g), 0u);
  const auto t2 = make_free_t(2);
  const Element zero = *t2.zero();
  EXPECT_EQ(t2.omega(0), zero);
  EXPECT_EQ(t2.omega(1), zero);
  const auto c = cyclic_index2_period2();
  EXPECT_EQ(c.omega(0), oracle::omega(c, 0));
  EXPECT_EQ(c.omega(0), 1u);  // a^2
}

TEST(Omega, IdempotentAndInsideCyclicSubsemigroupAcrossZoo) {
  for (const auto& s : small_zoo()) {
    for (Element x = 0; x < s.size(); ++x) {
      const Element w = s.omega(x);
      EXPECT_TRUE(s.is_idempotent(w));
      const auto p = oracle::powers(s, x);
      EXPECT_NE(std::find(p.begin(), p.end(), w), p.end());
      EXPECT_EQ(w, oracle::omega(s, x));
      EXPECT_EQ(s.omega_plus_one(x), oracle::omega_plus_one(s, x));
      EXPECT_EQ(s.index(x) + s.period(x) - 1, p.size());
    }
  }
}

TEST(Closure, Examples) {
  const auto z5 = additive(5);
  const std::vector<Element> two{2};
  EXPECT_EQ(closure(z5, std::span<const Element>(two)).size(), 5u);
  const auto rb = make_rectangular_band(2, 3);
  const RectangularBandModel m{2, 3};
  const std::vector<Element> g{m.index(0, 0), m.index(1, 2)};
  const auto c = closure(rb, std::span<const Element>(g));
  EXPECT_EQ(c, ElementSet(6, {m.index(0, 0), m.index(1, 2), m.index(0, 2), m.index(1, 0)}));
  const auto all = ElementSet::full(rb.size());
  EXPECT_EQ(closure(rb, all), all);
  EXPECT_EQ(kind_of([&] { closure(rb, std::span<const Element>{}); }), ErrorKind::EmptyGenerators);
}

TEST(Closure, MonotoneIdempotentAndMatchesFixpointOracle) {
  std::mt19937_64 rng(7);
  for (const auto& s : small_zoo()) {
    for (int trial = 0; trial < 20; ++trial) {
      auto a = oracle::random_subset(rng, s.size(), 4);
      auto b = a;
      for (Element x : oracle::random_subset(rng, s.size(), 3)) b.push_back(x);
      const auto ca = closure(s, std::span<const Element>(a));
      const auto cb = closure(s, std::span<const Element>(b));
      EXPECT_TRUE(ca.is_subset_of(cb));
      EXPECT_EQ(closure(s, ca), ca);
      const auto o = oracle::closure(s, a);
      EXPECT_EQ(ca.to_vector(), std::vector<Element>(o.begin(), o.end()));
    }
  }
}

TEST(ShortestWord, Examples) {
  const auto z5 = additive(5);
  const std::vector<Element> two{2};
  const auto w = shortest_word(z5, std::span<const Element>(two), 1);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 3u);
  EXPECT_EQ(shortest_word(z5, std::span<const Element>(two), 2)->size(), 1u);

  const auto lrb = make_obstruction_witness(WitnessVariant::LRB, 6);
  const auto word = shortest_word(lrb.semigroup, std::span<const Element>(lrb.generators), lrb.target);
  ASSERT_TRUE(word);
  EXPECT_EQ(*word, (Word{0, 1, 2, 3, 4, 5}));
}

TEST(ShortestWord, MinimalAgainstLevelOracle) {
  std::mt19937_64 rng(11);
  for (const auto& s : small_zoo()) {
    if (s.size() > 60) continue;
    for (int trial = 0; trial < 10; ++trial) {
      const auto gens = oracle::random_subset(rng, s.size(), 3);
      const WordTable table(s, gens);
      for (Element t = 0; t < s.size(); ++t) {
        const auto len = oracle::word_length(s, gens, t);
        const auto w = table.word(t);
        ASSERT_EQ(len.has_value(), w.has_value());
        if (!w) continue;
        EXPECT_EQ(w->size(), *len);
        EXPECT_EQ(evaluate_word(s, std::span<const Element>(gens), *w), t);
      }
    }
  }
}

TEST(ShortestWord, TiesBreakLexicographically) {
  // Z4 over {1, 3}: 2 = 1+1 = 3+3; the lexicographically first word is (0, 0).
  const auto z4 = additive(4);
  const std::vector<Element> g{1, 3};
  EXPECT_EQ(*shortest_word(z4, std::span<const Element>(g), 2), (Word{0, 0}));
  EXPECT_EQ(*shortest_word(z4, std::span<const Element>(g), 0), (Word{0, 1}));
}

TEST(Identity, Examples) {
  EXPECT_TRUE(satisfies_identity(make_cyclic(6), "x y = y x"));
  EXPECT_TRUE(satisfies_identity(make_rectangular_band(2, 2), "x y z = x z"));
  EXPECT_FALSE(satisfies_identity(make_free_lrb(2), "x y x = y x"));
  EXPECT_TRUE(satisfies_identity(make_free_lrb(2), "x y x = x y"));
}

TEST(Identity, ZeroSides) {
  const auto t = make_free_t(3);
  EXPECT_TRUE(satisfies_identity(t, "x^2 = 0"));
  EXPECT_TRUE(satisfies_identity(t, "x y x = 0"));
  EXPECT_FALSE(satisfies_identity(t, "x y = 0"));
  EXPECT_FALSE(satisfies_identity(make_cyclic(3), "x = 0"));
  EXPECT_EQ(kind_of([] { parse_identity("0 = 0"); }), ErrorKind::ParseError);
}

TEST(Identity, OmegaTerms) {
  for (const auto& s : small_zoo()) {
    const bool cr = [&] {
      for (Element x = 0; x < s.size(); ++x)
        if (oracle::omega_plus_one(s, x) != x) return false;
      return true;
    }();
    EXPECT_EQ(satisfies_identity(s, "x = x^w+1"), cr) << s.name();
    EXPECT_TRUE(satisfies_identity(s, "x^w x^w = x^w"));
    EXPECT_TRUE(satisfies_identity(s, "(x^w)^w = x^w"));
  }
  const auto id = parse_identity("x1 (x2 x1)^w+1 = x2^3");
  EXPECT_EQ(id.variable_count, 2u);
}

TEST(Identity, BudgetExceeded) {
  const auto s = make_cyclic(100);
  EXPECT_EQ(kind_of([&] { satisfies_identity(s, "a b c d e = e d c b a", 1'000'000); }), ErrorKind::BudgetExceeded);
}

TEST(IdealPower, Examples) {
  const auto z = make_dihedral(5);
  EXPECT_EQ(ideal_power(z, 1).size(), z.size());
  EXPECT_EQ(ideal_power(z, 4).size(), z.size());

  const auto ext = make_nilpotent_extension(make_cyclic(5), {1, 2}, 3);
  const auto s3 = ideal_power(ext.semigroup, 3);
  // oracle: values of all products of exactly three elements
  ElementSet brute(ext.semigroup.size());
  const auto n = ext.semigroup.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) brute.insert(ext.semigroup.product(ext.semigroup.product(a, b), c));
  EXPECT_EQ(s3, brute);
  for (Element x = 0; x < n; ++x) EXPECT_EQ(s3.contains(x), x >= ext.word_count);
}

TEST(IdealPower, ChainDecreasesAndStabilizes) {
  for (const auto& s : small_zoo()) {
    ElementSet prev = ideal_power(s, 1);
    bool stable = false;
    for (std::size_t k = 2; k <= s.size() + 1; ++k) {
      const auto cur = ideal_power(s, k);
      EXPECT_TRUE(cur.is_subset_of(prev));
      if (cur == prev) {
        stable = true;
        break;
      }
      prev = cur;
    }
    EXPECT_TRUE(stable) << s.name();
  }
}

TEST(ReesQuotient, Examples) {
  const auto z = make_dihedral(3);
  const auto q = rees_quotient(z, ElementSet::full(z.size()));
  EXPECT_EQ(q.quotient.size(), 1u);
  EXPECT_EQ(kind_of([] { rees_quotient(make_cyclic(4), ElementSet(4, {0})); }), ErrorKind::NotAnIdeal);
}

TEST(ReesQuotient, FreeTModuloNonIntervalProductsIsTheTWitness) {
  const auto free_t = make_free_t(3);
  const auto words = detail::repetition_free_words(3);
  auto is_interval = [](const std::vector<std::uint8_t>& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i] != w[i - 1] + 1) return false;
    return true;
  };
  ElementSet ideal(free_t.size());
  ideal.insert(*free_t.zero());
  for (std::size_t i = 0; i < words.size(); ++i)
    if (!is_interval(words[i])) ideal.insert(static_cast<Element>(i));
  const auto q = rees_quotient(free_t, ideal);
  const IntervalWitnessModel model(WitnessVariant::T, 3);
  ASSERT_EQ(q.quotient.size(), model.size());
  // map: interval word -> quotient index; compare products with the closed form
  std::vector<Element> to_q(model.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    if (is_interval(words[i]))
      to_q[model.index(words[i].front() + 1, words[i].back() + 1)] = q.projection[i];
  to_q[model.zero()] = q.zero;
  for (Element a = 0; a < model.size(); ++a)
    for (Element b = 0; b < model.size(); ++b)
      EXPECT_EQ(q.quotient.product(to_q[a], to_q[b]), to_q[model.product(a, b)]);
}

TEST(DirectProduct, Examples) {
  const auto k4 = direct_product(make_cyclic(2), make_cyclic(2));
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) EXPECT_EQ(k4.product(a, b), a ^ b);
  const auto s = make_dihedral(3);
  EXPECT_EQ(direct_product(s, validate_table({{0}})), s);
  const auto lz = validate_table({{0, 0}, {1, 1}});
  const auto rz = validate_table({{0, 1}, {0, 1}});
  EXPECT_EQ(direct_product(lz, rz), make_rectangular_band(2, 2));
}

TEST(CompletelyRegular, Examples) {
  const auto g = make_symmetric(3);
  EXPECT_EQ(completely_regular_elements(g).size(), g.size());
  const auto t = make_free_t(2);
  EXPECT_EQ(completely_regular_elements(t), ElementSet(t.size(), {*t.zero()}));
  const auto cl = make_clifford(make_cyclic(4), make_cyclic(2), {0, 1, 0, 1});
  const auto ext = make_nilpotent_extension(cl, {1, 5}, 3);
  const auto cr = completely_regular_elements(ext.semigroup);
  for (Element x = 0; x < ext.semigroup.size(); ++x) {
    EXPECT_EQ(cr.contains(x), oracle::omega_plus_one(ext.semigroup, x) == x);
    EXPECT_EQ(cr.contains(x), x >= ext.word_count);
  }
}

TEST(Decomposition, Group) {
  const auto g = make_dihedral(4);
  const auto d = band_of_groups_decomposition(g);
  EXPECT_EQ(d.band.size(), 1u);
  EXPECT_EQ(d.carriers[0].size(), g.size());
  EXPECT_EQ(d.idempotents[0], 0u);
}

TEST(Decomposition, RectangularBandTimesZ3) {
  const auto s = make_rb_times_group(2, 2, make_cyclic(3));
  const auto d = band_of_groups_decomposition(s);
  EXPECT_EQ(d.band.size(), 4u);
  EXPECT_TRUE(satisfies_identity(d.band, "x y z = x z"));
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_EQ(d.carriers[a].size(), 3u);
    // H-classes are {(i,j)} x Z3: encoded as rb * 3 + z
    const Element rb = d.idempotents[a] / 3;
    d.carriers[a].for_each([&](Element x) { EXPECT_EQ(x / 3, rb); });
  }
}

TEST(Decomposition, ErrorCases) {
  EXPECT_EQ(kind_of([] { band_of_groups_decomposition(make_free_lrb(3)); }), ErrorKind::BandNotNormal);
  EXPECT_NO_THROW(band_of_groups_decomposition(make_free_lrb(2)));
  EXPECT_EQ(kind_of([] { band_of_groups_decomposition(make_free_t(2)); }), ErrorKind::NotCompletelyRegular);
}

TEST(Decomposition, NormalityAgreesWithFourVariableIdentity) {
  for (const auto& b : {make_free_lrb(2), make_free_lrb(3), make_rectangular_band(2, 3), make_subset_semilattice(3)}) {
    bool threw = false;
    try {
      check_normal_band(b);
    } catch (const Error&) {
      threw = true;
    }
    EXPECT_EQ(!threw, satisfies_identity(b, "u x y v = u y x v")) << b.name();
  }
}

TEST(Decomposition, ClassProductsLandInProductClass) {
  std::vector<Semigroup> cases{make_rb_times_group(2, 3, make_cyclic(4)),
                               make_clifford(make_cyclic(4), make_cyclic(2), {0, 1, 0, 1}),
                               make_rb_times_group(1, 2, make_symmetric(3))};
  for (const auto& s : cases) {
    const auto d = band_of_groups_decomposition(s);
    for (Element x = 0; x < s.size(); ++x)
      for (Element y = 0; y < s.size(); ++y) {
        const Element ab = d.band.product(d.projection[x], d.projection[y]);
        EXPECT_TRUE(d.carriers[ab].contains(s.product(x, y)));
      }
    for (std::size_t a = 0; a < d.class_count(); ++a) {
      const Element e = d.idempotents[a];
      d.carriers[a].for_each([&](Element x) {
        EXPECT_EQ(s.product(e, x), x);
        EXPECT_EQ(s.product(x, e), x);
        EXPECT_EQ(s.omega_plus_one(x), x);
      });
    }
  }
}

TEST(CayleyIo, RoundTripIsBitExact) {
  const auto w = make_obstruction_witness(WitnessVariant::RRB, 5);
  const std::string text = format_cayley(w.semigroup, w.generators, w.target);
  const auto f = parse_cayley(text);
  EXPECT_EQ(f.semigroup, w.semigroup);
  EXPECT_EQ(*f.generators, w.generators);
  EXPECT_EQ(*f.target, w.target);
  EXPECT_EQ(f.semigroup.name(), w.semigroup.name());
  EXPECT_EQ(format_cayley(f), text);
}

TEST(CayleyIo, CommentsAnywhereAndErrors) {
  const auto f = parse_cayley("# hello\nCAYLEY 2\n0 1\n# between rows\n1 0\n");
  EXPECT_EQ(f.semigroup, make_cyclic(2));
  EXPECT_FALSE(f.generators);
  EXPECT_EQ(kind_of([] { parse_cayley("CAYLEY 2\n0 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_cayley("CAYLEY 2\n0 1\n1 x\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_cayley("CAYLEY 2\n0 1\n1 2\n"); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([] { parse_cayley("CAYLEY 2\n1 1\n0 0\n"); }), ErrorKind::NotAssociative);
}
