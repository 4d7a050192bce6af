#pragma once

#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/element_set.hpp"
#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// A group carried by a product-closed subset of a semigroup.  Elements keep
/// their ambient indices; the view does not own the semigroup.
class GroupView {
 public:
  GroupView() = default;
  GroupView(const Semigroup& base, ElementSet carrier, Element identity)
      : base_(&base), carrier_(std::move(carrier)), identity_(identity), elements_(carrier_.to_vector()) {}

  const Semigroup& base() const noexcept { return *base_; }
  const ElementSet& carrier() const noexcept { return carrier_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  Element identity() const noexcept { return identity_; }
  bool contains(Element g) const noexcept { return carrier_.contains(g); }

  Element product(Element a, Element b) const noexcept { return base_->product(a, b); }
  Element inverse(Element g) const noexcept { return base_->group_inverse(g); }
  Element conjugate(Element g, Element h) const noexcept { return product(product(inverse(h), g), h); }
  Element commutator(Element g, Element h) const noexcept {
    return product(product(inverse(g), inverse(h)), product(g, h));
  }
  std::uint32_t element_order(Element g) const noexcept { return base_->period(g); }

  /// Least common multiple of the element orders; g^(exponent-1) = g^-1.
  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (Element g : elements_) e = std::lcm(e, static_cast<std::uint64_t>(element_order(g)));
    return e;
  }

 private:
  const Semigroup* base_ = nullptr;
  ElementSet carrier_;
  Element identity_ = kNoElement;
  std::vector<Element> elements_;
};

inline GroupView group_view(const Semigroup& s, const ElementSet& carrier) {
  if (carrier.empty()) fail(ErrorKind::NotAGroup, "empty carrier");
  const auto elems = carrier.to_vector();
  for (Element a : elems)
    for (Element b : elems)
      if (!carrier.contains(s.product(a, b)))
        fail(ErrorKind::NotAGroup, "carrier not closed: " + std::to_string(a) + "*" + std::to_string(b));
  Element e = kNoElement;
  for (Element a : elems)
    if (s.is_idempotent(a)) {
      if (e != kNoElement)
        fail(ErrorKind::NotAGroup, "two idempotents " + std::to_string(e) + " and " + std::to_string(a));
      e = a;
    }
  // A unique idempotent that is the w-power of every element makes each
  // cyclic subsemigroup a cyclic group around e.
  for (Element a : elems)
    if (s.omega(a) != e || !s.is_completely_regular(a))
      fail(ErrorKind::NotAGroup, "element " + std::to_string(a) + " has no inverse");
  return GroupView(s, carrier, e);
}

inline GroupView group_view(const Semigroup& s) { return group_view(s, ElementSet::full(s.size())); }

/// Incrementally grown subgroup <gens>, always containing the identity.
class SubgroupClosure {
 public:
  explicit SubgroupClosure(const GroupView& g) : g_(&g), set_(g.base().size()) {
    set_.insert(g.identity());
    elems_.push_back(g.identity());
  }
  SubgroupClosure(const GroupView& g, std::span<const Element> gens) : SubgroupClosure(g) {
    for (Element x : gens) add(x);
  }

  /// Adds x as a generator; returns true when the subgroup grew.
  bool add(Element x) {
    if (set_.contains(x)) return false;
    gens_.push_back(x);
    const std::size_t old = elems_.size();
    for (std::size_t i = 0; i < old; ++i) push(g_->product(elems_[i], x));
    for (std::size_t head = old; head < elems_.size(); ++head) {
      const Element y = elems_[head];
      for (Element k : gens_) push(g_->product(y, k));
    }
    return true;
  }

  bool contains(Element x) const noexcept { return set_.contains(x); }
  std::size_t size() const noexcept { return elems_.size(); }
  const ElementSet& set() const noexcept { return set_; }
  const std::vector<Element>& generators() const noexcept { return gens_; }

 private:
  void push(Element y) {
    if (set_.insert(y)) elems_.push_back(y);
  }

  const GroupView* g_;
  ElementSet set_;
  std::vector<Element> elems_;
  std::vector<Element> gens_;
};

inline ElementSet subgroup_closure(const GroupView& g, std::span<const Element> gens) {
  return SubgroupClosure(g, gens).set();
}

/// Ascending pass adding every element that enlarges the closure, then an
/// ascending pass dropping every element the others already generate.  The
/// result generates <sigma> and, by Lagrange, has at most log2|<sigma>| members.
inline std::vector<Element> minimal_generating_subset(const GroupView& g, std::span<const Element> sigma) {
  std::vector<Element> sorted(sigma.begin(), sigma.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Element> kept;
  SubgroupClosure h(g);
  for (Element x : sorted)
    if (h.add(x)) kept.push_back(x);
  const std::size_t target = h.size();
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Element> rest;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.push_back(kept[j]);
    if (SubgroupClosure(g, rest).size() == target)
      kept = std::move(rest);
    else
      ++i;
  }
  if (kept.empty() && !sorted.empty()) kept.push_back(g.identity());
  return kept;
}

struct NormalClosure {
  ElementSet subgroup;                              ///< <Delta u Xi u N>
  std::vector<Element> added;                       ///< Xi, in insertion order
  std::vector<std::pair<Element, Element>> provenance;  ///< added[i] = h^-1 g h as (g, h)
};

/// Greedy normal closure of <Delta> modulo a normal subgroup N (given by
/// generators).  Scans g over Delta then Xi as it grows, h over Sigma, and
/// adds g^h whenever it escapes the current subgroup.  Since the subgroup
/// only grows, one pass suffices.
inline NormalClosure normal_closure_set(const GroupView& g, std::span<const Element> delta, std::span<const Element> sigma,
                                        std::span<const Element> modulo = {}) {
  SubgroupClosure h(g, modulo);
  std::vector<Element> pool;
  for (Element d : delta) {
    h.add(d);
    pool.push_back(d);
  }
  NormalClosure out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (Element s : sigma) {
      const Element c = g.conjugate(pool[i], s);
      if (h.add(c)) {
        pool.push_back(c);
        out.added.push_back(c);
        out.provenance.emplace_back(pool[i], s);
      }
    }
  out.subgroup = h.set();
  return out;
}

struct SeriesChain {
  std::vector<ElementSet> terms;  ///< G = terms[0] >= terms[1] >= ...

  std::size_t length() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }
  bool reaches_trivial() const noexcept { return !terms.empty() && terms.back().size() == 1; }
};

/// G^(i+1) = <[a, b] : a, b in G^(i)>, every pair enumerated.  Stops at the
/// trivial group or when the series stabilizes.
inline SeriesChain derived_series(const GroupView& g) {
  SeriesChain chain;
  chain.terms.push_back(g.carrier());
  for (;;) {
    const ElementSet& cur = chain.terms.back();
    if (cur.size() == 1) break;
    const auto elems = cur.to_vector();
    ElementSet comms(g.base().size());
    for (Element a : elems)
      for (Element b : elems) comms.insert(g.commutator(a, b));
    SubgroupClosure next(g);
    comms.for_each([&](Element c) { next.add(c); });
    if (next.size() == cur.size()) break;
    chain.terms.push_back(next.set());
  }
  return chain;
}

inline bool is_solvable(const GroupView& g) { return derived_series(g).reaches_trivial(); }

struct QuotientGroup {
  Semigroup quotient;
  std::vector<Element> projection;  ///< ambient element -> coset index (kNoElement outside G)
  std::vector<Element> section;     ///< coset index -> least element of the coset
};

/// G/N with cosets numbered by ascending least representative.
inline QuotientGroup quotient_group(const GroupView& g, const ElementSet& n) {
  const auto nelems = n.to_vector();
  for (Element x : nelems)
    if (!g.contains(x)) fail(ErrorKind::NotNormal, "element " + std::to_string(x) + " of N lies outside G");
  for (Element h : g.elements())
    for (Element x : nelems) {
      const Element c = g.conjugate(x, h);
      if (!n.contains(c))
        fail(ErrorKind::NotNormal, std::to_string(h) + "^-1 * " + std::to_string(x) + " * " + std::to_string(h) +
                                       " = " + std::to_string(c) + " is not in N");
    }
  QuotientGroup q;
  q.projection.assign(g.base().size(), kNoElement);
  for (Element x : g.elements()) {
    if (q.projection[x] != kNoElement) continue;
    const auto idx = static_cast<Element>(q.section.size());
    q.section.push_back(x);  // elements are visited in ascending order
    for (Element y : nelems) q.projection[g.product(x, y)] = idx;
  }
  const std::size_t m = q.section.size();
  RawTable raw(m, std::vector<Element>(m));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) raw[a][b] = q.projection[g.product(q.section[a], q.section[b])];
  q.quotient = validate_table(raw);
  return q;
}

}  // namespace slpforge
