#pragma once

// Brute-force reference implementations used as independent oracles.
// Deliberately naive: fixpoints over whole sets, explicit power lists.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "slpforge/semigroup.hpp"

namespace oracle {

using slpforge::Element;
using slpforge::Semigroup;

// Fixpoint of X := X u X*X starting from gens.
template <class S>
std::set<Element> closure(const S& s, const std::vector<Element>& gens) {
  std::set<Element> x(gens.begin(), gens.end());
  for (;;) {
    std::set<Element> next = x;
    for (Element a : x)
      for (Element b : x) next.insert(s.product(a, b));
    if (next.size() == x.size()) return x;
    x = std::move(next);
  }
}

inline std::vector<Element> powers(const Semigroup& s, Element a) {
  std::vector<Element> out{a};
  for (;;) {
    const Element p = s.product(out.back(), a);
    for (Element q : out)
      if (q == p) return out;
    out.push_back(p);
  }
}

inline Element omega(const Semigroup& s, Element a) {
  for (Element p : powers(s, a))
    if (s.product(p, p) == p) return p;
  return slpforge::kNoElement;
}

inline Element omega_plus_one(const Semigroup& s, Element a) { return s.product(omega(s, a), a); }

// Length of a shortest word over gens with value t, from level sets
// L_1 = gens, L_{l+1} = L_l * gens.
template <class S>
std::optional<std::size_t> word_length(const S& s, const std::vector<Element>& gens, Element t) {
  std::set<Element> level(gens.begin(), gens.end());
  std::set<std::set<Element>> seen;
  for (std::size_t l = 1;; ++l) {
    if (level.count(t)) return l;
    if (!seen.insert(level).second) return std::nullopt;
    std::set<Element> next;
    for (Element a : level)
      for (Element g : gens) next.insert(s.product(a, g));
    level = std::move(next);
  }
}

inline std::vector<Element> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_size));
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  const std::size_t k = count(rng);
  std::set<Element> out;
  while (out.size() < std::min(k, n)) out.insert(pick(rng));
  return {out.begin(), out.end()};
}

}  // namespace oracle
