#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slpforge/element_set.hpp"
#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// A word over a generator list, stored as positions into that list.
using Word = std::vector<std::size_t>;

/// Subsemigroup generated by `gens`: breadth-first closure under right
/// multiplication by the generators, which reaches every product of them.
template <FiniteSemigroup S>
ElementSet closure(const S& s, std::span<const Element> gens) {
  if (gens.empty()) fail(ErrorKind::EmptyGenerators, "closure of an empty generating set");
  ElementSet out(s.size());
  std::vector<Element> queue;
  for (Element g : gens)
    if (out.insert(g)) queue.push_back(g);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element g : gens) {
      const Element y = s.product(x, g);
      if (out.insert(y)) queue.push_back(y);
    }
  }
  return out;
}

template <FiniteSemigroup S>
ElementSet closure(const S& s, const ElementSet& gens) {
  const auto v = gens.to_vector();
  return closure(s, std::span<const Element>(v));
}

/// Breadth-first word table over a generator list.  For every reachable
/// element it records a shortest word, ties broken by the lexicographically
/// smallest sequence of generator positions.
class WordTable {
 public:
  template <FiniteSemigroup S>
  WordTable(const S& s, std::span<const Element> gens)
      : gens_(gens.begin(), gens.end()),
        parent_(s.size(), kNoElement),
        last_(s.size(), 0),
        length_(s.size(), 0) {
    if (gens_.empty()) fail(ErrorKind::EmptyGenerators, "word table over an empty generating set");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const Element g = gens_[i];
      if (length_[g] == 0) {
        length_[g] = 1;
        last_[g] = i;
        order_.push_back(g);
      }
    }
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Element x = order_[head];
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        const Element y = s.product(x, gens_[i]);
        if (length_[y] == 0) {
          length_[y] = length_[x] + 1;
          parent_[y] = x;
          last_[y] = i;
          order_.push_back(y);
        }
      }
    }
  }

  bool reachable(Element t) const { return t < length_.size() && length_[t] != 0; }
  std::size_t length(Element t) const { return length_[t]; }

  /// Elements in discovery order (non-decreasing word length).
  const std::vector<Element>& discovered() const noexcept { return order_; }
  const std::vector<Element>& generators() const noexcept { return gens_; }

  std::optional<Word> word(Element t) const {
    if (!reachable(t)) return std::nullopt;
    Word w(length_[t]);
    for (std::size_t i = w.size(); i-- > 0;) {
      w[i] = last_[t];
      t = parent_[t];
    }
    return w;
  }

  std::size_t diameter() const {
    std::size_t d = 0;
    for (Element e : order_) d = std::max<std::size_t>(d, length_[e]);
    return d;
  }

 private:
  std::vector<Element> gens_;
  std::vector<Element> parent_;
  std::vector<std::size_t> last_;
  std::vector<std::uint32_t> length_;
  std::vector<Element> order_;
};

/// Minimum-length word over `gens` with value t, or nullopt when t is not in
/// the generated subsemigroup.
template <FiniteSemigroup S>
std::optional<Word> shortest_word(const S& s, std::span<const Element> gens, Element t) {
  return WordTable(s, gens).word(t);
}

template <FiniteSemigroup S>
Element evaluate_word(const S& s, std::span<const Element> gens, const Word& w) {
  Element acc = gens[w.at(0)];
  for (std::size_t i = 1; i < w.size(); ++i) acc = s.product(acc, gens[w[i]]);
  return acc;
}

/// {a*b : a in A, b in B}.
inline ElementSet set_product(const Semigroup& s, const ElementSet& a, const ElementSet& b) {
  ElementSet out(s.size());
  const auto bv = b.to_vector();
  a.for_each([&](Element x) {
    const auto row = s.row(x);
    for (Element y : bv) out.insert(row[y]);
  });
  return out;
}

/// S^k: values of all products of exactly k elements.
inline ElementSet ideal_power(const Semigroup& s, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "ideal_power needs k >= 1");
  const ElementSet all = ElementSet::full(s.size());
  ElementSet cur = all;
  for (std::size_t j = 1; j < k; ++j) {
    ElementSet next = set_product(s, cur, all);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

inline ElementSet completely_regular_elements(const Semigroup& s) {
  ElementSet out(s.size());
  for (Element x = 0; x < s.size(); ++x)
    if (s.is_completely_regular(x)) out.insert(x);
  return out;
}

struct ReesQuotient {
  Semigroup quotient;
  std::vector<Element> projection;  ///< S -> quotient
  Element zero = kNoElement;        ///< image of the ideal (last index)
};

/// S/I with the ideal collapsed to a zero.  Elements outside I keep their
/// relative order; the zero is appended last.
inline ReesQuotient rees_quotient(const Semigroup& s, const ElementSet& ideal) {
  if (ideal.empty()) fail(ErrorKind::NotAnIdeal, "empty set");
  const std::size_t n = s.size();
  ideal.for_each([&](Element i) {
    for (Element x = 0; x < n; ++x) {
      if (!ideal.contains(s.product(x, i)))
        fail(ErrorKind::NotAnIdeal, std::to_string(x) + "*" + std::to_string(i) + " leaves the set");
      if (!ideal.contains(s.product(i, x)))
        fail(ErrorKind::NotAnIdeal, std::to_string(i) + "*" + std::to_string(x) + " leaves the set");
    }
  });
  ReesQuotient q;
  q.projection.assign(n, 0);
  Element next = 0;
  for (Element x = 0; x < n; ++x)
    if (!ideal.contains(x)) q.projection[x] = next++;
  q.zero = next;
  for (Element x = 0; x < n; ++x)
    if (ideal.contains(x)) q.projection[x] = q.zero;
  const std::size_t m = next + 1;
  RawTable raw(m, std::vector<Element>(m, q.zero));
  for (Element a = 0; a < n; ++a) {
    if (ideal.contains(a)) continue;
    for (Element b = 0; b < n; ++b) {
      if (ideal.contains(b)) continue;
      raw[q.projection[a]][q.projection[b]] = q.projection[s.product(a, b)];
    }
  }
  q.quotient = validate_table(raw, s.name().empty() ? "" : s.name() + "/I");
  return q;
}

/// Componentwise product; (a, b) is encoded as a * |T| + b.
inline Semigroup direct_product(const Semigroup& s, const Semigroup& t) {
  const std::size_t n = s.size() * t.size();
  if (n > kMaxTableElements) fail(ErrorKind::BudgetExceeded, "direct product of size " + std::to_string(n));
  const std::size_t m = t.size();
  RawTable raw(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto a = static_cast<Element>(x / m), b = static_cast<Element>(x % m);
      const auto c = static_cast<Element>(y / m), d = static_cast<Element>(y % m);
      raw[x][y] = static_cast<Element>(s.product(a, c) * m + t.product(b, d));
    }
  std::vector<Element> hint;
  for (Element g : s.generating_set())
    for (Element h : t.generating_set()) hint.push_back(static_cast<Element>(g * m + h));
  std::string name;
  if (!s.name().empty() && !t.name().empty()) name = s.name() + "x" + t.name();
  return validate_table(raw, name, hint);
}

/// A subsemigroup re-indexed as a semigroup of its own.
struct Subsemigroup {
  Semigroup semigroup;
  std::vector<Element> embed;   ///< sub index -> ambient element
  std::vector<Element> locate;  ///< ambient element -> sub index or kNoElement

  Element to_sub(Element x) const {
    const Element y = locate.at(x);
    if (y == kNoElement) fail(ErrorKind::InvalidArgument, "element " + std::to_string(x) + " outside subsemigroup");
    return y;
  }
  std::vector<Element> to_sub(std::span<const Element> xs) const {
    std::vector<Element> out;
    out.reserve(xs.size());
    for (Element x : xs) out.push_back(to_sub(x));
    return out;
  }
  std::vector<Element> to_ambient(std::span<const Element> xs) const {
    std::vector<Element> out;
    out.reserve(xs.size());
    for (Element x : xs) out.push_back(embed.at(x));
    return out;
  }
};

/// Restricts S to a product-closed carrier; members keep their relative order.
inline Subsemigroup restrict_to(const Semigroup& s, const ElementSet& carrier, std::span<const Element> hint = {}) {
  Subsemigroup sub;
  sub.embed = carrier.to_vector();
  sub.locate.assign(s.size(), kNoElement);
  for (std::size_t i = 0; i < sub.embed.size(); ++i) sub.locate[sub.embed[i]] = static_cast<Element>(i);
  const std::size_t m = sub.embed.size();
  RawTable raw(m, std::vector<Element>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Element p = s.product(sub.embed[i], sub.embed[j]);
      if (sub.locate[p] == kNoElement) fail(ErrorKind::InvalidArgument, "carrier is not closed under the product");
      raw[i][j] = sub.locate[p];
    }
  std::vector<Element> sub_hint;
  for (Element h : hint)
    if (h < s.size() && sub.locate[h] != kNoElement) sub_hint.push_back(sub.locate[h]);
  sub.semigroup = validate_table(raw, s.name(), sub_hint);
  return sub;
}

}  // namespace slpforge
