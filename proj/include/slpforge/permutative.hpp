#pragma once

// Bounded-diameter products, the central-commutation scan, and the width-2
// permutative compressor (normal form u s_1^v_1 ... s_m^v_m v).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/slp.hpp"

namespace slpforge {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Left-to-right product of a shortest word: width 2, length 2|w| - 1.
inline Slp compress_bounded_diameter(const WordTable& words, Element t, std::size_t max_length = kUnlimited) {
  const auto w = words.word(t);
  if (!w) fail(ErrorKind::DiameterExceeded, "target " + std::to_string(t) + " is not generated");
  if (w->size() > max_length)
    fail(ErrorKind::DiameterExceeded,
         "shortest word has length " + std::to_string(w->size()) + " > " + std::to_string(max_length));
  return word_program(words.generators(), *w);
}

template <FiniteSemigroup S>
Slp compress_bounded_diameter(const S& s, std::span<const Element> gens, Element t, std::size_t max_length = kUnlimited) {
  return compress_bounded_diameter(WordTable(s, gens), t, max_length);
}

/// T^k for T = <gens>, as products of at least k generators.
inline ElementSet generated_ideal_power(const Semigroup& s, const ElementSet& t_set, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "power must be positive");
  ElementSet cur = t_set;
  for (std::size_t j = 1; j < k; ++j) {
    ElementSet next = set_product(s, cur, t_set);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

/// Does a x y b = a y x b hold for all a, b in T^k and x, y in T = <gens>?
/// Swapping adjacent letters inside a word needs only generator pairs, since
/// the contexts stay inside the ideal T^k.  k = 0 is plain commutativity.
inline bool central_commutation_holds(const Semigroup& s, std::span<const Element> gens, std::size_t k,
                                      std::uint64_t budget = 100'000'000) {
  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Element p = s.product(gens[i], gens[j]), q = s.product(gens[j], gens[i]);
      if (p != q) pairs.emplace_back(p, q);
    }
  if (pairs.empty()) return true;
  if (k == 0) return false;
  const auto ideal = generated_ideal_power(s, closure(s, gens), k).to_vector();
  const std::uint64_t m = ideal.size();
  if (m * m * pairs.size() > budget) fail(ErrorKind::BudgetExceeded, "central commutation scan too large");
  for (const auto& [p, q] : pairs)
    for (Element a : ideal) {
      const Element ap = s.product(a, p), aq = s.product(a, q);
      if (ap == aq) continue;
      for (Element b : ideal)
        if (s.product(ap, b) != s.product(aq, b)) return false;
    }
  return true;
}

/// Least k <= kmax at which central commutation holds.
inline std::optional<std::size_t> central_commutation_level(const Semigroup& s, std::span<const Element> gens,
                                                            std::size_t kmax, std::uint64_t budget = 100'000'000) {
  for (std::size_t k = 0; k <= kmax; ++k)
    if (central_commutation_holds(s, gens, k, budget)) return k;
  return std::nullopt;
}

struct PermNormalForm {
  std::vector<Element> prefix;
  std::vector<Element> factors;  ///< s_1 ... s_m
  std::vector<std::uint64_t> exponents;
  std::vector<Element> suffix;
};

template <FiniteSemigroup S>
Element evaluate_normal_form(const S& s, const PermNormalForm& nf) {
  std::optional<Element> acc;
  auto push = [&](Element x) { acc = acc ? s.product(*acc, x) : x; };
  for (Element x : nf.prefix) push(x);
  for (std::size_t i = 0; i < nf.factors.size(); ++i)
    for (std::uint64_t e = 0; e < nf.exponents[i]; ++e) push(nf.factors[i]);
  for (Element x : nf.suffix) push(x);
  if (!acc) fail(ErrorKind::InvalidArgument, "empty normal form");
  return *acc;
}

/// Lexicographically least exponents with t = u s_1^v_1 ... s_m^v_m v, by
/// backward reachability over S with an adjoined identity followed by a
/// greedy forward pass.  Zero exponents are pruned.
inline PermNormalForm minimize_exponents(const Semigroup& s, std::span<const Element> prefix,
                                         std::span<const Element> order, std::span<const Element> suffix, Element t) {
  const std::size_t n = s.size();
  const auto one = static_cast<Element>(n);
  auto mul = [&](Element a, Element b) { return a == one ? b : b == one ? a : s.product(a, b); };
  auto value = [&](std::span<const Element> w) {
    Element acc = one;
    for (Element x : w) acc = mul(acc, x);
    return acc;
  };
  const Element u = value(prefix), v = value(suffix);
  const std::size_t m = order.size();
  std::vector<std::vector<Element>> powers(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Element x = order[i];
    const std::uint64_t count = std::uint64_t{s.index(x)} + s.period(x);
    powers[i].push_back(one);
    Element p = x;
    for (std::uint64_t e = 1; e < count; ++e) {
      powers[i].push_back(p);
      p = s.product(p, x);
    }
  }
  std::vector<std::vector<bool>> reach(m + 1, std::vector<bool>(n + 1, false));
  for (Element x = 0; x <= n; ++x) reach[m][x] = mul(x, v) == t;
  for (std::size_t i = m; i-- > 0;)
    for (Element x = 0; x <= n; ++x)
      for (Element p : powers[i])
        if (reach[i + 1][mul(x, p)]) {
          reach[i][x] = true;
          break;
        }
  if (!reach[0][u]) fail(ErrorKind::Unreachable, "no exponents realize the target");
  PermNormalForm nf;
  nf.prefix.assign(prefix.begin(), prefix.end());
  nf.suffix.assign(suffix.begin(), suffix.end());
  Element p = u;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint64_t e = 0; e < powers[i].size(); ++e) {
      const Element q = mul(p, powers[i][e]);
      if (reach[i + 1][q]) {
        if (e > 0) {
          nf.factors.push_back(order[i]);
          nf.exponents.push_back(e);
        }
        p = q;
        break;
      }
    }
  }
  return nf;
}

/// Width-2 program for a normal form: simultaneous square-and-multiply over
/// the factors (reloading each generator), then the prefix on the left and
/// the suffix on the right.  A single factor keeps its base loaded instead.
inline Slp emit_normal_form(const PermNormalForm& nf) {
  SlpBuilder b;
  std::optional<Value> acc;
  if (nf.factors.size() == 1) {
    acc = b.power(b.load(nf.factors[0]), nf.exponents[0]);
  } else if (!nf.factors.empty()) {
    int bits = 0;
    for (auto e : nf.exponents) bits = std::max(bits, static_cast<int>(std::bit_width(e)));
    for (int bit = bits - 1; bit >= 0; --bit) {
      if (acc) acc = b.mul(*acc, *acc);
      for (std::size_t j = 0; j < nf.factors.size(); ++j)
        if ((nf.exponents[j] >> bit) & 1u) {
          const Value x = b.load(nf.factors[j]);
          acc = acc ? b.mul(*acc, x) : x;
        }
    }
  }
  for (std::size_t i = nf.prefix.size(); i-- > 0;) {
    const Value x = b.load(nf.prefix[i]);
    acc = acc ? b.mul(x, *acc) : x;
  }
  for (Element y : nf.suffix) {
    const Value x = b.load(y);
    acc = acc ? b.mul(*acc, x) : x;
  }
  if (!acc) fail(ErrorKind::InvalidArgument, "empty normal form");
  return b.finish(*acc);
}

/// Permutative compression with a central-commutation level k that the
/// caller has verified.
inline Slp compress_permutative_at(const Semigroup& s, const WordTable& words, Element t, std::size_t k) {
  const auto w = words.word(t);
  if (!w) fail(ErrorKind::Unreachable, "target " + std::to_string(t) + " is not generated");
  const auto& gens = words.generators();
  if (w->size() <= 2 * k) return word_program(gens, *w);
  std::vector<Element> prefix, suffix, order;
  for (std::size_t i = 0; i < k; ++i) {
    prefix.push_back(gens[(*w)[i]]);
    suffix.push_back(gens[(*w)[w->size() - k + i]]);
  }
  for (std::size_t i = k; i + k < w->size(); ++i) {
    const Element x = gens[(*w)[i]];
    if (std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
  }
  return emit_normal_form(minimize_exponents(s, prefix, order, suffix, t));
}

inline Slp compress_permutative_level(const Semigroup& s, std::span<const Element> gens, Element t, std::size_t k) {
  if (!central_commutation_holds(s, gens, k))
    fail(ErrorKind::NotPermutative, "a x y b = a y x b fails at level " + std::to_string(k));
  return compress_permutative_at(s, WordTable(s, gens), t, k);
}

inline Slp compress_permutative(const Semigroup& s, std::span<const Element> gens, Element t, std::size_t kmax = 6) {
  const auto k = central_commutation_level(s, gens, kmax);
  if (!k) fail(ErrorKind::NotPermutative, "no central commutation level up to " + std::to_string(kmax));
  return compress_permutative_at(s, WordTable(s, gens), t, *k);
}

}  // namespace slpforge
