#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slpforge/element_set.hpp"
#include "slpforge/error.hpp"

namespace slpforge {

/// Anything with a finite carrier [0, size()) and an associative product.
/// Cayley-table semigroups model it, and so do the closed-form witness
/// families that are too large to tabulate.
template <class S>
concept FiniteSemigroup = requires(const S& s, Element a, Element b) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.product(a, b) } -> std::convertible_to<Element>;
};

/// Largest Cayley table the library will materialize (n^2 entries).
inline constexpr std::size_t kMaxTableElements = 8192;

/// Number of elements up to which associativity is checked on every triple.
inline constexpr std::size_t kFullAssociativityScan = 200;

using RawTable = std::vector<std::vector<Element>>;

class Semigroup;
Semigroup validate_table(const RawTable& raw, std::string name = {}, std::span<const Element> generator_hint = {});

/// Immutable, validated Cayley-table semigroup.
///
/// Construction verifies the table and caches, per element, the index and
/// period of its cyclic subsemigroup, the idempotent power s^w, s^(w+1), the
/// group inverse of completely regular elements, and the J-preorder.  All
/// queries afterwards are read-only.
class Semigroup {
 public:
  Semigroup() = default;

  std::size_t size() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }

  Element product(Element a, Element b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + static_cast<std::size_t>(a) * n_, n_};
  }

  Element omega(Element s) const noexcept { return omega_[s]; }
  Element omega_plus_one(Element s) const noexcept { return omega_plus_one_[s]; }
  std::uint32_t index(Element s) const noexcept { return index_[s]; }
  std::uint32_t period(Element s) const noexcept { return period_[s]; }
  bool is_idempotent(Element s) const noexcept { return product(s, s) == s; }
  bool is_completely_regular(Element s) const noexcept { return omega_plus_one_[s] == s; }

  /// Inverse of s inside the maximal subgroup containing it; kNoElement when
  /// s is not completely regular.
  Element group_inverse(Element s) const noexcept { return inverse_[s]; }

  /// s^e for e >= 1, reduced through the index/period of s.
  Element power(Element s, std::uint64_t e) const {
    const std::uint64_t idx = index_[s], per = period_[s];
    if (e > idx) e = idx + (e - idx) % per;
    Element acc = s;
    for (int bit = 62 - std::countl_zero(e); bit >= 0; --bit) {
      acc = product(acc, acc);
      if ((e >> bit) & 1u) acc = product(acc, s);
    }
    return acc;
  }

  /// Generating set found during validation (lowest indices first).
  const std::vector<Element>& generating_set() const noexcept { return generators_; }

  /// a <=_J b, i.e. a lies in S^1 b S^1.
  bool leq_j(Element a, Element b) const { return jreach_[jclass_[b]].contains(jclass_[a]); }
  std::uint32_t j_class(Element a) const noexcept { return jclass_[a]; }
  std::size_t j_class_count() const noexcept { return jreach_.size(); }

  std::optional<Element> zero() const {
    for (Element z = 0; z < n_; ++z) {
      bool ok = true;
      for (Element x = 0; x < n_ && ok; ++x) ok = product(z, x) == z && product(x, z) == z;
      if (ok) return z;
    }
    return std::nullopt;
  }

  std::optional<Element> identity() const {
    for (Element e = 0; e < n_; ++e) {
      bool ok = true;
      for (Element x = 0; x < n_ && ok; ++x) ok = product(e, x) == x && product(x, e) == x;
      if (ok) return e;
    }
    return std::nullopt;
  }

  RawTable to_raw() const {
    RawTable raw(n_, std::vector<Element>(n_));
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b) raw[a][b] = product(a, b);
    return raw;
  }

  friend bool operator==(const Semigroup& a, const Semigroup& b) { return a.n_ == b.n_ && a.table_ == b.table_; }

 private:
  friend Semigroup validate_table(const RawTable&, std::string, std::span<const Element>);

  void compute_powers();
  void compute_j_order();

  std::size_t n_ = 0;
  std::string name_;
  std::vector<Element> table_;
  std::vector<Element> omega_, omega_plus_one_, inverse_;
  std::vector<std::uint32_t> index_, period_;
  std::vector<Element> generators_;
  std::vector<std::uint32_t> jclass_;
  std::vector<ElementSet> jreach_;
};

namespace detail {

/// Greedy generating set: scan candidates (hint first, then ascending
/// indices) and keep every candidate not yet reachable as a left-normed
/// product of the kept ones.
template <class Mul>
std::vector<Element> greedy_generators(std::size_t n, Mul&& mul, std::span<const Element> hint) {
  std::vector<Element> gens;
  ElementSet covered(n);
  std::vector<Element> members;
  auto absorb = [&](std::vector<Element> frontier) {
    while (!frontier.empty()) {
      const Element x = frontier.back();
      frontier.pop_back();
      for (Element g : gens) {
        const Element y = mul(x, g);
        if (covered.insert(y)) {
          members.push_back(y);
          frontier.push_back(y);
        }
      }
    }
  };
  auto add = [&](Element g) {
    if (covered.contains(g)) return;
    gens.push_back(g);
    std::vector<Element> frontier;
    for (Element x : members) {
      const Element y = mul(x, g);
      if (covered.insert(y)) frontier.push_back(y);
    }
    if (covered.insert(g)) frontier.push_back(g);
    for (Element y : frontier) members.push_back(y);
    absorb(std::move(frontier));
  };
  for (Element g : hint)
    if (g < n) add(g);
  for (Element g = 0; g < n && covered.size() < n; ++g) add(g);
  return gens;
}

}  // namespace detail

inline void Semigroup::compute_powers() {
  omega_.assign(n_, 0);
  omega_plus_one_.assign(n_, 0);
  inverse_.assign(n_, kNoElement);
  index_.assign(n_, 0);
  period_.assign(n_, 0);
  std::vector<std::uint32_t> seen_at(n_, 0);
  std::vector<std::uint32_t> stamp(n_, 0);
  std::vector<Element> powers;
  for (Element s = 0; s < n_; ++s) {
    const std::uint32_t epoch = s + 1;
    powers.clear();
    Element p = s;
    std::uint32_t i = 1;
    while (stamp[p] != epoch) {
      stamp[p] = epoch;
      seen_at[p] = i;
      powers.push_back(p);
      p = product(p, s);
      ++i;
    }
    const std::uint32_t idx = seen_at[p];
    const std::uint32_t per = i - idx;
    index_[s] = idx;
    period_[s] = per;
    auto pow = [&](std::uint64_t e) {
      if (e > powers.size()) e = idx + (e - idx) % per;
      return powers[e - 1];
    };
    const std::uint64_t m = ((idx + per - 1) / per) * per;
    omega_[s] = pow(m);
    omega_plus_one_[s] = pow(m + 1);
    if (idx == 1) inverse_[s] = per == 1 ? s : pow(per - 1);
  }
}

inline void Semigroup::compute_j_order() {
  // Tarjan's SCC algorithm on x -> x*g, x -> g*x over the generating set.
  // SCCs come out in reverse topological order, so each class can fold in
  // the reach sets of its successors as soon as it is emitted.
  const std::size_t n = n_;
  constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Element> stack;
  jclass_.assign(n, kUnvisited);
  std::vector<std::vector<std::uint32_t>> class_succ;
  std::uint32_t counter = 0;
  const std::size_t degree = 2 * generators_.size();
  auto succ = [&](Element x, std::size_t k) {
    const Element g = generators_[k / 2];
    return (k % 2 == 0) ? product(x, g) : product(g, x);
  };
  struct Frame {
    Element v;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::vector<std::vector<Element>> members_of;
  for (Element root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < degree) {
        const Element w = succ(f.v, f.next++);
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      const Element v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == order[v]) {
        const auto cls = static_cast<std::uint32_t>(members_of.size());
        members_of.emplace_back();
        Element w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          jclass_[w] = cls;
          members_of.back().push_back(w);
        } while (w != v);
      }
    }
  }
  const std::size_t k = members_of.size();
  jreach_.assign(k, ElementSet(k));
  for (std::uint32_t c = 0; c < k; ++c) {
    jreach_[c].insert(c);
    for (Element x : members_of[c])
      for (std::size_t e = 0; e < degree; ++e) {
        const std::uint32_t d = jclass_[succ(x, e)];
        if (d != c && !jreach_[c].contains(d)) jreach_[c] |= jreach_[d];
      }
  }
}

/// Validates a raw square table and returns the immutable semigroup.
///
/// Throws OutOfRange for an entry >= n and NotAssociative with a witness
/// triple (a, b, c) such that (ab)c != a(bc).
inline Semigroup validate_table(const RawTable& raw, std::string name, std::span<const Element> generator_hint) {
  const std::size_t n = raw.size();
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty table");
  if (n > kMaxTableElements)
    fail(ErrorKind::BudgetExceeded, "table with " + std::to_string(n) + " elements exceeds the table budget");
  Semigroup s;
  s.n_ = n;
  s.name_ = std::move(name);
  s.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (raw[a].size() != n) fail(ErrorKind::InvalidArgument, "row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      const Element v = raw[a][b];
      if (v >= n)
        fail(ErrorKind::OutOfRange, "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " +
                                        std::to_string(v) + " is not below " + std::to_string(n));
      s.table_[a * n + b] = v;
    }
  }
  auto mul = [&](Element a, Element b) { return s.product(a, b); };
  s.generators_ = detail::greedy_generators(n, mul, generator_hint);

  auto witness = [](Element a, Element b, Element c) {
    fail(ErrorKind::NotAssociative,
         "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) + " != " + std::to_string(a) +
             "*(" + std::to_string(b) + "*" + std::to_string(c) + ")");
  };
  if (n <= kFullAssociativityScan) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = mul(a, b);
        for (Element c = 0; c < n; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) witness(a, b, c);
      }
  } else {
    // Light's test: it suffices that every generator g associates in the
    // middle position, (x g) y = x (g y).
    for (Element g : s.generators_)
      for (Element x = 0; x < n; ++x) {
        const Element xg = mul(x, g);
        const auto xg_row = s.row(xg);
        const auto g_row = s.row(g);
        const auto x_row = s.row(x);
        for (Element y = 0; y < n; ++y)
          if (xg_row[y] != x_row[g_row[y]]) witness(x, g, y);
      }
  }
  s.compute_powers();
  s.compute_j_order();
  return s;
}

}  // namespace slpforge
