#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/decomposition.hpp"
#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// A semigroup together with a generating set Sigma and a distinguished target.
struct Witness {
  Semigroup semigroup;
  std::vector<Element> generators;
  Element target = kNoElement;
};

/// Materializes any closed-form model as a validated Cayley table.
template <FiniteSemigroup M>
Semigroup tabulate(const M& model, std::string name = {}, std::span<const Element> hint = {}) {
  const std::size_t n = model.size();
  if (n > kMaxTableElements) fail(ErrorKind::BudgetExceeded, name + " has " + std::to_string(n) + " elements");
  RawTable raw(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) raw[a][b] = model.product(a, b);
  return validate_table(raw, std::move(name), hint);
}

// ---------------------------------------------------------------- groups

/// Permutations of {0..n-1} as image vectors.  Products compose left to
/// right: (p*q)(i) = q(p(i)).
using Permutation = std::vector<std::uint8_t>;

inline std::vector<Permutation> all_permutations(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool is_even(const Permutation& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 == 0;
}

/// Builds a permutation of {1..n} from disjoint cycles written 1-based,
/// e.g. {{1,2},{3,4}}.
inline Permutation permutation_from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int from = c[i], to = c[(i + 1) % c.size()];
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > n || static_cast<std::size_t>(to) > n)
        fail(ErrorKind::InvalidArgument, "cycle entry out of range");
      p[static_cast<std::size_t>(from - 1)] = static_cast<std::uint8_t>(to - 1);
    }
  return p;
}

inline Semigroup permutation_group(const std::vector<Permutation>& perms, std::string name,
                                   std::span<const Element> hint = {}) {
  std::map<Permutation, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], static_cast<Element>(i));
  const std::size_t n = perms.size();
  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Permutation c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[b][perms[a][i]];
      const auto it = index.find(c);
      if (it == index.end()) fail(ErrorKind::InvalidArgument, "permutation set not closed");
      raw[a][b] = it->second;
    }
  return validate_table(raw, std::move(name), hint);
}

/// Lex-ordered elements of S_n (alt = false) or A_n (alt = true).
inline std::vector<Permutation> permutation_elements(std::size_t n, bool alt) {
  auto perms = all_permutations(n);
  if (alt) std::erase_if(perms, [](const Permutation& p) { return !is_even(p); });
  return perms;
}

inline Element permutation_index(std::size_t n, bool alt, const Permutation& p) {
  const auto perms = permutation_elements(n, alt);
  const auto it = std::find(perms.begin(), perms.end(), p);
  if (it == perms.end()) fail(ErrorKind::InvalidArgument, "permutation not in the group");
  return static_cast<Element>(it - perms.begin());
}

inline constexpr std::size_t kGroupBudget = kMaxTableElements;

inline Semigroup make_cyclic(std::size_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "cyclic order must be positive");
  if (m > kGroupBudget) fail(ErrorKind::BudgetExceeded, "cyclic " + std::to_string(m));
  RawTable raw(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) raw[a][b] = static_cast<Element>((a + b) % m);
  const Element one = m > 1 ? 1 : 0;
  return validate_table(raw, "cyclic " + std::to_string(m), std::span<const Element>(&one, 1));
}

/// Unit vectors of make_abelian (factors of order 1 skipped).
inline std::vector<Element> abelian_unit_vectors(const std::vector<std::size_t>& orders) {
  std::vector<Element> units;
  std::size_t stride = 1;
  for (std::size_t m : orders) {
    if (m > 1) units.push_back(static_cast<Element>(stride));
    stride *= m;
  }
  return units;
}

/// Z_m1 x ... x Z_md; (a1, ..., ad) has index a1 + m1*(a2 + m2*(...)).
inline Semigroup make_abelian(const std::vector<std::size_t>& orders) {
  if (orders.empty()) fail(ErrorKind::InvalidArgument, "abelian needs at least one factor");
  std::size_t n = 1;
  for (std::size_t m : orders) {
    if (m == 0) fail(ErrorKind::InvalidArgument, "factor order must be positive");
    if (n > kGroupBudget / m) fail(ErrorKind::BudgetExceeded, "abelian group too large");
    n *= m;
  }
  const std::size_t d = orders.size();
  std::vector<std::vector<std::uint16_t>> coords(n, std::vector<std::uint16_t>(d));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    for (std::size_t i = 0; i < d; ++i) {
      coords[x][i] = static_cast<std::uint16_t>(r % orders[i]);
      r /= orders[i];
    }
  }
  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t idx = 0;
      for (std::size_t i = d; i-- > 0;) idx = idx * orders[i] + (coords[a][i] + coords[b][i]) % orders[i];
      raw[a][b] = static_cast<Element>(idx);
    }
  const auto units = abelian_unit_vectors(orders);
  std::string name = "abelian";
  for (std::size_t m : orders) name += " " + std::to_string(m);
  return validate_table(raw, name, units);
}

/// Symmetries of the m-gon, order 2m; r^i f^j has index i + m*j.
inline Semigroup make_dihedral(std::size_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "dihedral needs m >= 1");
  if (2 * m > kGroupBudget) fail(ErrorKind::BudgetExceeded, "dihedral " + std::to_string(m));
  const std::size_t n = 2 * m;
  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a % m, j = a / m, k = b % m, l = b / m;
      // r^i f^j r^k f^l = r^(i + (-1)^j k) f^(j+l)
      const std::size_t rot = j == 0 ? (i + k) % m : (i + m - k) % m;
      raw[a][b] = static_cast<Element>(rot + m * ((j + l) % 2));
    }
  const std::vector<Element> hint{static_cast<Element>(m > 1 ? 1 : 0), static_cast<Element>(m)};
  return validate_table(raw, "dihedral " + std::to_string(m), hint);
}

/// Unitriangular 3x3 matrices over Z_p; (a, b, c) has index a + p*b + p^2*c
/// and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
inline Semigroup make_heisenberg(std::size_t p) {
  if (p < 2) fail(ErrorKind::InvalidArgument, "heisenberg needs p >= 2");
  if (p * p * p > kGroupBudget) fail(ErrorKind::BudgetExceeded, "heisenberg " + std::to_string(p));
  const std::size_t n = p * p * p;
  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a = x % p, b = x / p % p, c = x / (p * p);
      const std::size_t a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
      raw[x][y] = static_cast<Element>((a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p));
    }
  const std::vector<Element> hint{1, static_cast<Element>(p)};
  return validate_table(raw, "heisenberg " + std::to_string(p), hint);
}

inline Semigroup make_symmetric(std::size_t n, bool alt = false) {
  if (n == 0 || n > 5) fail(ErrorKind::BudgetExceeded, "permutation groups are limited to n <= 5");
  return permutation_group(permutation_elements(n, alt), (alt ? "alt " : "sym ") + std::to_string(n));
}

inline Semigroup make_group(const std::string& family, const std::vector<std::size_t>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      fail(ErrorKind::InvalidArgument, family + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (family == "cyclic") {
    need(1);
    return make_cyclic(params[0]);
  }
  if (family == "abelian") return make_abelian(params);
  if (family == "dihedral") {
    need(1);
    return make_dihedral(params[0]);
  }
  if (family == "heisenberg") {
    need(1);
    return make_heisenberg(params[0]);
  }
  if (family == "sym" || family == "alt") {
    need(1);
    return make_symmetric(params[0], family == "alt");
  }
  fail(ErrorKind::UnknownFamily, "unknown group family '" + family + "'");
}

// ------------------------------------------------------- witness families

enum class WitnessVariant { LRB, RRB, T };

/// Closed-form interval model behind the LRB/RRB/T obstruction witnesses.
/// Intervals [i..j], 1 <= i <= j <= n, are numbered by i then j; the T
/// variant appends a zero as the last element.
class IntervalWitnessModel {
 public:
  IntervalWitnessModel(WitnessVariant v, std::size_t n) : variant_(v), n_(n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "witness needs n >= 1");
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i; j <= n; ++j) {
        lo_.push_back(static_cast<std::uint16_t>(i));
        hi_.push_back(static_cast<std::uint16_t>(j));
      }
    intervals_ = lo_.size();
  }

  std::size_t size() const noexcept { return intervals_ + (variant_ == WitnessVariant::T ? 1 : 0); }
  std::size_t n() const noexcept { return n_; }
  WitnessVariant variant() const noexcept { return variant_; }

  Element index(std::size_t i, std::size_t j) const noexcept {
    // intervals starting before i: sum_{r<i} (n - r + 1)
    const std::size_t before = (i - 1) * n_ - (i - 1) * (i - 2) / 2;
    return static_cast<Element>(before + (j - i));
  }
  std::pair<std::size_t, std::size_t> interval(Element e) const { return {lo_.at(e), hi_.at(e)}; }
  Element zero() const noexcept { return variant_ == WitnessVariant::T ? static_cast<Element>(intervals_) : kNoElement; }

  Element product(Element a, Element b) const noexcept {
    switch (variant_) {
      case WitnessVariant::LRB: return lrb(a, b);
      case WitnessVariant::RRB: return mirror(lrb(mirror(b), mirror(a)));
      case WitnessVariant::T: {
        if (a == intervals_ || b == intervals_) return static_cast<Element>(intervals_);
        if (lo_[b] == hi_[a] + 1) return index(lo_[a], hi_[b]);
        return static_cast<Element>(intervals_);
      }
    }
    return 0;
  }

  std::vector<Element> generators() const {
    std::vector<Element> g;
    for (std::size_t i = 1; i <= n_; ++i) g.push_back(index(i, i));
    return g;
  }
  Element target() const noexcept { return index(1, n_); }

 private:
  Element lrb(Element a, Element b) const noexcept {
    const std::size_t i = lo_[a], j = hi_[a], k = lo_[b], l = hi_[b];
    if (k >= j + 2) return b;
    return index(i, std::max(j, l));
  }
  Element mirror(Element a) const noexcept { return index(n_ + 1 - hi_[a], n_ + 1 - lo_[a]); }

  WitnessVariant variant_;
  std::size_t n_;
  std::size_t intervals_ = 0;
  std::vector<std::uint16_t> lo_, hi_;
};

inline std::string to_string(WitnessVariant v) {
  switch (v) {
    case WitnessVariant::LRB: return "lrb";
    case WitnessVariant::RRB: return "rrb";
    case WitnessVariant::T: return "t";
  }
  return "?";
}

inline Witness make_obstruction_witness(WitnessVariant v, std::size_t n) {
  if (n < 2 || n > 200) fail(ErrorKind::InvalidArgument, "witness parameter must lie in [2, 200]");
  const IntervalWitnessModel model(v, n);
  const auto gens = model.generators();
  Witness w{tabulate(model, to_string(v) + "-witness " + std::to_string(n), gens), gens, model.target()};
  const std::size_t expect = n * (n + 1) / 2 + (v == WitnessVariant::T ? 1 : 0);
  if (w.semigroup.size() != expect) fail(ErrorKind::VerificationFailed, "witness has unexpected size");
  return w;
}

/// Nonempty subsets of [n] plus a zero; disjoint sets multiply to their
/// union, everything else to zero.  Subset with bit mask M has index M - 1;
/// the zero is index 2^n - 1.
class SubsetWitnessModel {
 public:
  explicit SubsetWitnessModel(std::size_t n) : n_(n) {
    if (n < 1 || n > 30) fail(ErrorKind::InvalidArgument, "subset witness needs 1 <= n <= 30");
  }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  Element zero() const noexcept { return static_cast<Element>(size() - 1); }
  Element product(Element a, Element b) const noexcept {
    if (a == zero() || b == zero()) return zero();
    const std::uint32_t x = a + 1, y = b + 1;
    return (x & y) ? zero() : static_cast<Element>((x | y) - 1);
  }
  std::vector<Element> generators() const {
    std::vector<Element> g;
    for (std::size_t i = 0; i < n_; ++i) g.push_back(static_cast<Element>((std::size_t{1} << i) - 1));
    return g;
  }
  Element target() const noexcept { return static_cast<Element>(size() - 2); }

 private:
  std::size_t n_;
};

inline Witness make_u_witness(std::size_t n) {
  if (n < 2 || n > 16) fail(ErrorKind::InvalidArgument, "u-witness parameter must lie in [2, 16]");
  const SubsetWitnessModel model(n);
  const auto gens = model.generators();
  return {tabulate(model, "u-witness " + std::to_string(n), gens), gens, model.target()};
}

inline constexpr std::size_t kPowerWitnessBudget = 100'000;

/// S = <s_1, ..., s_n> inside M^n, where s_i carries s in coordinate i and
/// the identity of M elsewhere.  Elements are numbered in discovery order.
inline Witness make_power_witness(const Semigroup& m, Element s, std::size_t n) {
  const auto e = m.identity();
  if (!e) fail(ErrorKind::InvalidArgument, "power witness needs a monoid");
  if (s >= m.size() || s == *e) fail(ErrorKind::InvalidArgument, "power witness needs s != identity");
  if (n < 1) fail(ErrorKind::InvalidArgument, "power witness needs n >= 1");
  using Tuple = std::vector<Element>;
  std::map<Tuple, Element> index;
  std::vector<Tuple> elems;
  auto intern = [&](Tuple t) {
    auto [it, inserted] = index.try_emplace(t, static_cast<Element>(elems.size()));
    if (inserted) {
      if (elems.size() >= std::min(kPowerWitnessBudget, kMaxTableElements))
        fail(ErrorKind::BudgetExceeded, "power witness closure too large");
      elems.push_back(std::move(t));
    }
    return it->second;
  };
  std::vector<Element> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Tuple t(n, *e);
    t[i] = s;
    gens.push_back(intern(std::move(t)));
  }
  auto mul = [&](const Tuple& a, const Tuple& b) {
    Tuple c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = m.product(a[i], b[i]);
    return c;
  };
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (Element g : gens) intern(mul(elems[head], elems[g]));
  const std::size_t k = elems.size();
  RawTable raw(k, std::vector<Element>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) raw[a][b] = index.at(mul(elems[a], elems[b]));
  Element t = gens[0];
  Witness w{validate_table(raw, "power-witness " + std::to_string(n), gens), gens, 0};
  for (std::size_t i = 1; i < n; ++i) t = w.semigroup.product(t, gens[i]);
  w.target = t;
  return w;
}

/// Two-element semilattice {e > 0}: index 0 is e, index 1 is 0.
inline Semigroup make_two_semilattice() { return validate_table({{0, 1}, {1, 1}}, "semilattice 2"); }

/// All subsets of [n] under union; a subset's index is its bit mask.
inline Semigroup make_subset_semilattice(std::size_t n) {
  if (n > 13) fail(ErrorKind::BudgetExceeded, "semilattice 2^[n] needs n <= 13");
  const std::size_t m = std::size_t{1} << n;
  RawTable raw(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) raw[a][b] = static_cast<Element>(a | b);
  std::vector<Element> singles;
  for (std::size_t i = 0; i < n; ++i) singles.push_back(static_cast<Element>(std::size_t{1} << i));
  return validate_table(raw, "semilattice " + std::to_string(n), singles);
}

inline std::vector<Element> subset_singletons(std::size_t n) {
  std::vector<Element> singles;
  for (std::size_t i = 0; i < n; ++i) singles.push_back(static_cast<Element>(std::size_t{1} << i));
  return singles;
}

// ------------------------------------------------------------ bands

/// (a, b) in [p] x [q] has index a*q + b; (a,b)(c,d) = (a,d).
struct RectangularBandModel {
  std::size_t p, q;
  std::size_t size() const noexcept { return p * q; }
  Element product(Element x, Element y) const noexcept {
    return static_cast<Element>((x / q) * q + y % q);
  }
  Element index(std::size_t a, std::size_t b) const noexcept { return static_cast<Element>(a * q + b); }
  /// (i mod p, i mod q) for i < max(p, q): every row and column is hit, so
  /// each (a, d) = (a, *)(*, d) is a product of two of them.
  std::vector<Element> diagonal_generators() const {
    std::vector<Element> g;
    for (std::size_t i = 0; i < std::max(p, q); ++i) g.push_back(index(i % p, i % q));
    return g;
  }
};

inline Semigroup make_rectangular_band(std::size_t p, std::size_t q) {
  if (p < 1 || q < 1) fail(ErrorKind::InvalidArgument, "rectangular band needs p, q >= 1");
  if (p * q > 10'000) fail(ErrorKind::BudgetExceeded, "rectangular band with pq > 10^4");
  const RectangularBandModel model{p, q};
  const auto hint = model.diagonal_generators();
  return tabulate(model, "rb " + std::to_string(p) + " " + std::to_string(q), hint);
}

/// RB(p, q) x G.
inline Semigroup make_rb_times_group(std::size_t p, std::size_t q, const Semigroup& g) {
  Semigroup s = direct_product(make_rectangular_band(p, q), g);
  band_of_groups_decomposition(s);
  return s;
}

/// Two-level Clifford semigroup G1 u G0 over the semilattice {1 > 0}.  G1
/// keeps indices [0, |G1|), G0 is shifted by |G1|; cross products push the
/// G1 factor through phi.
inline Semigroup make_clifford(const Semigroup& g1, const Semigroup& g0, const std::vector<Element>& phi) {
  const std::size_t n1 = g1.size(), n0 = g0.size();
  if (phi.size() != n1) fail(ErrorKind::InvalidArgument, "phi must be defined on all of G1");
  for (Element x : phi)
    if (x >= n0) fail(ErrorKind::OutOfRange, "phi value outside G0");
  for (Element a = 0; a < n1; ++a)
    for (Element b = 0; b < n1; ++b)
      if (phi[g1.product(a, b)] != g0.product(phi[a], phi[b]))
        fail(ErrorKind::NotAHomomorphism, "phi(" + std::to_string(a) + "*" + std::to_string(b) + ") != phi(" +
                                              std::to_string(a) + ")*phi(" + std::to_string(b) + ")");
  const std::size_t n = n1 + n0;
  RawTable raw(n, std::vector<Element>(n));
  auto down = [&](Element x) { return x < n1 ? phi[x] : static_cast<Element>(x - n1); };
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a < n1 && b < n1)
        raw[a][b] = g1.product(a, b);
      else
        raw[a][b] = static_cast<Element>(n1 + g0.product(down(a), down(b)));
    }
  Semigroup s = validate_table(raw, "clifford");
  try {
    band_of_groups_decomposition(s);
  } catch (const Error& e) {
    fail(ErrorKind::DecompositionFailed, e.what());
  }
  return s;
}

// ------------------------------------------------- nilpotent extensions

struct NilpotentExtension {
  Semigroup semigroup;
  std::vector<Element> projection;  ///< element -> value in the base
  std::vector<Element> generators;  ///< the single-letter words
  std::size_t word_count = 0;       ///< indices below this are words of length < k
  std::size_t k = 0;
};

inline constexpr std::size_t kExtensionWordBudget = 4096;

/// Words over an alphabet of size a with length < k, ordered by length then
/// lexicographically, followed by E = {eval(w) : |w| >= k} in ascending base
/// order.  Products concatenate while short and evaluate in the base
/// otherwise, so the k-th ideal power is exactly E.
inline NilpotentExtension make_nilpotent_extension(const Semigroup& base, const std::vector<Element>& assignment,
                                                   std::size_t k) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "nilpotent extension needs k >= 2");
  const std::size_t a = assignment.size();
  if (a == 0) fail(ErrorKind::EmptyGenerators, "empty alphabet");
  for (Element x : assignment)
    if (x >= base.size()) fail(ErrorKind::OutOfRange, "assignment value outside the base");
  std::vector<std::vector<std::uint16_t>> words;
  std::vector<std::size_t> level_start;
  std::vector<std::uint16_t> cur;
  for (std::size_t len = 1; len < k; ++len) {
    level_start.push_back(words.size());
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) {
      count *= a;
      if (words.size() + count > kExtensionWordBudget) fail(ErrorKind::BudgetExceeded, "too many short words");
    }
    std::vector<std::uint16_t> w(len, 0);
    for (std::size_t c = 0; c < count; ++c) {
      words.push_back(w);
      for (std::size_t i = len; i-- > 0;) {
        if (++w[i] < a) break;
        w[i] = 0;
      }
    }
  }
  std::map<std::vector<std::uint16_t>, Element> word_index;
  for (std::size_t i = 0; i < words.size(); ++i) word_index.emplace(words[i], static_cast<Element>(i));

  auto eval = [&](const std::vector<std::uint16_t>& w) {
    Element acc = assignment[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) acc = base.product(acc, assignment[w[i]]);
    return acc;
  };

  // V_l = values of length-l words; E is generated by V_k, ..., V_{2k-1}.
  ElementSet letters(base.size(), assignment);
  ElementSet v = letters;
  ElementSet seeds(base.size());
  for (std::size_t len = 2; len <= 2 * k - 1; ++len) {
    v = set_product(base, v, letters);
    if (len >= k) seeds |= v;
  }
  const ElementSet e = closure(base, seeds);
  const auto evals = e.to_vector();
  const std::size_t w = words.size();
  const std::size_t n = w + evals.size();
  if (n > kMaxTableElements) fail(ErrorKind::BudgetExceeded, "nilpotent extension too large");
  std::vector<Element> base_to_ext(base.size(), kNoElement);
  for (std::size_t i = 0; i < evals.size(); ++i) base_to_ext[evals[i]] = static_cast<Element>(w + i);

  NilpotentExtension out;
  out.k = k;
  out.word_count = w;
  out.projection.resize(n);
  for (std::size_t i = 0; i < w; ++i) out.projection[i] = eval(words[i]);
  for (std::size_t i = 0; i < evals.size(); ++i) out.projection[w + i] = evals[i];

  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x < w && y < w && words[x].size() + words[y].size() < k) {
        auto c = words[x];
        c.insert(c.end(), words[y].begin(), words[y].end());
        raw[x][y] = word_index.at(c);
      } else {
        const Element p = base.product(out.projection[x], out.projection[y]);
        if (base_to_ext[p] == kNoElement) fail(ErrorKind::VerificationFailed, "long product escaped E");
        raw[x][y] = base_to_ext[p];
      }
    }
  for (std::size_t i = 0; i < a; ++i) out.generators.push_back(static_cast<Element>(i));
  out.semigroup = validate_table(raw, "nilpotent extension", out.generators);

  ElementSet tail(n);
  for (std::size_t i = w; i < n; ++i) tail.insert(static_cast<Element>(i));
  if (!ideal_power(out.semigroup, k).is_subset_of(tail))
    fail(ErrorKind::VerificationFailed, "k-th ideal power not inside the embedded base");
  return out;
}

// ------------------------------------------------------- free objects

namespace detail {

/// Repetition-free words over n letters, by length then lexicographically.
inline std::vector<std::vector<std::uint8_t>> repetition_free_words(std::size_t n) {
  std::vector<std::vector<std::uint8_t>> words;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::uint8_t> w(len, 0);
    for (;;) {
      std::vector<bool> seen(n, false);
      bool ok = true;
      for (auto c : w) {
        if (seen[c]) ok = false;
        seen[c] = true;
      }
      if (ok) words.push_back(w);
      std::size_t i = len;
      while (i-- > 0) {
        if (++w[i] < n) break;
        w[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return words;
}

}  // namespace detail

/// Free left regular band on n letters: repetition-free words, product =
/// concatenation keeping first occurrences.  Words are ordered by length,
/// then lexicographically.
inline Semigroup make_free_lrb(std::size_t n) {
  if (n < 1 || n > 5) fail(ErrorKind::InvalidArgument, "free lrb limited to n <= 5");
  const auto words = detail::repetition_free_words(n);
  std::map<std::vector<std::uint8_t>, Element> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<Element>(i));
  const std::size_t m = words.size();
  RawTable raw(m, std::vector<Element>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      auto c = words[x];
      for (auto ch : words[y])
        if (std::find(c.begin(), c.end(), ch) == c.end()) c.push_back(ch);
      raw[x][y] = index.at(c);
    }
  return validate_table(raw, "free lrb " + std::to_string(n));
}

/// Free object on n letters for x^2 = xyx = 0: repetition-free words plus a
/// zero (last index).
inline Semigroup make_free_t(std::size_t n) {
  if (n < 1 || n > 5) fail(ErrorKind::InvalidArgument, "free t limited to n <= 5");
  const auto words = detail::repetition_free_words(n);
  std::map<std::vector<std::uint8_t>, Element> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<Element>(i));
  const std::size_t m = words.size() + 1;
  const auto zero = static_cast<Element>(m - 1);
  RawTable raw(m, std::vector<Element>(m, zero));
  for (std::size_t x = 0; x + 1 < m; ++x)
    for (std::size_t y = 0; y + 1 < m; ++y) {
      auto c = words[x];
      bool clash = false;
      for (auto ch : words[y]) {
        if (std::find(words[x].begin(), words[x].end(), ch) != words[x].end()) clash = true;
        c.push_back(ch);
      }
      if (!clash) raw[x][y] = index.at(c);
    }
  return validate_table(raw, "free t " + std::to_string(n));
}

}  // namespace slpforge
