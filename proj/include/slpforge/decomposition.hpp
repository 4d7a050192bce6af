#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slpforge/element_set.hpp"
#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// S as a band B of groups S_alpha.  Band indices follow the ascending order
/// of the idempotents e_alpha.
struct BandDecomposition {
  Semigroup band;
  std::vector<Element> projection;  ///< S -> B
  std::vector<Element> idempotents; ///< alpha -> e_alpha
  std::vector<ElementSet> carriers; ///< alpha -> S_alpha

  std::size_t class_count() const noexcept { return idempotents.size(); }
};

inline constexpr std::uint64_t kDefaultNormalityBudget = 200'000'000;

/// Checks uxyv = uyxv on a band.  Two elements c, d satisfy cv = dv for all v
/// iff their rows coincide, so comparing row classes of uxy and uyx covers
/// every v at once: |B|^3 comparisons instead of |B|^4.
inline void check_normal_band(const Semigroup& b, std::uint64_t budget = kDefaultNormalityBudget) {
  const std::size_t m = b.size();
  if (static_cast<std::uint64_t>(m) * m * m > budget)
    fail(ErrorKind::BudgetExceeded, "normality scan on a band of size " + std::to_string(m));
  std::map<std::vector<Element>, std::uint32_t> ids;
  std::vector<std::uint32_t> row_class(m);
  for (Element c = 0; c < m; ++c) {
    const auto r = b.row(c);
    row_class[c] = ids.try_emplace(std::vector<Element>(r.begin(), r.end()), static_cast<std::uint32_t>(ids.size()))
                       .first->second;
  }
  for (Element u = 0; u < m; ++u)
    for (Element x = 0; x < m; ++x) {
      const Element ux = b.product(u, x);
      for (Element y = 0; y < m; ++y) {
        const Element uxy = b.product(ux, y);
        const Element uyx = b.product(b.product(u, y), x);
        if (row_class[uxy] == row_class[uyx]) continue;
        Element v = 0;
        while (b.product(uxy, v) == b.product(uyx, v)) ++v;
        fail(ErrorKind::BandNotNormal, "u x y v != u y x v at u=" + std::to_string(u) + " x=" + std::to_string(x) +
                                           " y=" + std::to_string(y) + " v=" + std::to_string(v));
      }
    }
}

/// Band-of-groups decomposition of a completely regular semigroup.  The
/// H-class of s is the maximal subgroup around s^w, so classes are keyed by
/// the idempotent power.
inline BandDecomposition band_of_groups_decomposition(const Semigroup& s,
                                                      std::uint64_t normality_budget = kDefaultNormalityBudget) {
  const std::size_t n = s.size();
  for (Element x = 0; x < n; ++x)
    if (!s.is_completely_regular(x))
      fail(ErrorKind::NotCompletelyRegular, "element " + std::to_string(x) + " has x^(w+1) != x");

  BandDecomposition d;
  std::vector<Element> class_of(n, kNoElement);
  for (Element x = 0; x < n; ++x)
    if (s.omega(x) == x) {
      class_of[x] = static_cast<Element>(d.idempotents.size());
      d.idempotents.push_back(x);
    }
  d.projection.resize(n);
  for (Element x = 0; x < n; ++x) d.projection[x] = class_of[s.omega(x)];
  const std::size_t m = d.idempotents.size();
  d.carriers.assign(m, ElementSet(n));
  for (Element x = 0; x < n; ++x) d.carriers[d.projection[x]].insert(x);

  RawTable raw(m, std::vector<Element>(m));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) raw[a][b] = d.projection[s.product(d.idempotents[a], d.idempotents[b])];
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element want = raw[d.projection[x]][d.projection[y]];
      if (d.projection[s.product(x, y)] != want)
        fail(ErrorKind::HNotCongruence, "class of " + std::to_string(x) + "*" + std::to_string(y) +
                                            " differs from the class product of their idempotents");
    }
  d.band = validate_table(raw, s.name().empty() ? "" : s.name() + "/H");
  check_normal_band(d.band, normality_budget);
  return d;
}

}  // namespace slpforge
