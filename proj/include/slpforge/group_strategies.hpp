#pragma once

// Group compressors: cube doubling, subnormal chains, the derived-series
// generating set (unbounded width) and the polycyclic set with its
// bounded-width evaluation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/grouplab.hpp"
#include "slpforge/permutative.hpp"
#include "slpforge/slp.hpp"

namespace slpforge {

namespace detail {

inline SubgroupClosure checked_subgroup(const GroupView& g, std::span<const Element> sigma, Element t) {
  if (sigma.empty()) fail(ErrorKind::EmptyGenerators, "group strategy over an empty generating set");
  for (Element s : sigma)
    if (!g.contains(s)) fail(ErrorKind::NotInSubgroup, "generator " + std::to_string(s) + " lies outside the group");
  SubgroupClosure h(g, sigma);
  if (!h.contains(t)) fail(ErrorKind::NotInSubgroup, "target " + std::to_string(t) + " is not in <Sigma>");
  return h;
}

// identity of the group as sigma0^ord(sigma0)
inline Value emit_identity(SlpBuilder& b, const GroupView& g, Element sigma0, Value v0) {
  return b.power(v0, g.element_order(sigma0));
}

}  // namespace detail

// --------------------------------------------------------- cube doubling

struct ReachabilityResult {
  Slp group_program;            ///< may contain INV
  std::vector<Element> cube;    ///< h_1 ... h_m
  std::vector<std::size_t> cube_sizes;  ///< |K| after each append
  std::size_t rounds = 0;
};

/// Grows h_1..h_m until t lies in K^-1 K for the cube
/// K = {h_1^e1 ... h_m^em : e in {0,1}^m}.  Each new h = a s (a in K^-1 K,
/// s in Sigma, scanned in index order) escapes K^-1 K, so |K| doubles.
inline ReachabilityResult compress_group_reachability(const GroupView& g, std::span<const Element> sigma, Element t) {
  detail::checked_subgroup(g, sigma, t);
  std::vector<Element> sorted_sigma(sigma.begin(), sigma.end());
  std::sort(sorted_sigma.begin(), sorted_sigma.end());
  sorted_sigma.erase(std::unique(sorted_sigma.begin(), sorted_sigma.end()), sorted_sigma.end());

  ReachabilityResult res;
  std::vector<Element> cube{g.identity()};  // indexed by mask
  struct Split {
    std::uint32_t b, c;
  };
  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<Split> quotient;  // K^-1 K by element, first split found
  auto in_quotient = [&](Element x) { return quotient[x].b != kNone; };
  auto rebuild = [&] {
    quotient.assign(g.base().size(), Split{kNone, kNone});
    for (std::uint32_t bm = 0; bm < cube.size(); ++bm) {
      const Element bi = g.inverse(cube[bm]);
      for (std::uint32_t cm = 0; cm < cube.size(); ++cm) {
        Split& sp = quotient[g.product(bi, cube[cm])];
        if (sp.b == kNone) sp = Split{bm, cm};
      }
    }
  };
  rebuild();
  struct Origin {
    Split a;
    Element sigma;
  };
  std::vector<Origin> origins;
  while (!in_quotient(t)) {
    std::optional<Origin> found;
    for (Element a = 0; a < quotient.size() && !found; ++a) {
      if (!in_quotient(a)) continue;
      for (Element s : sorted_sigma)
        if (!in_quotient(g.product(a, s))) {
          found = Origin{quotient[a], s};
          break;
        }
    }
    if (!found) fail(ErrorKind::NotInSubgroup, "K^-1 K is closed under Sigma but misses the target");
    const Element a = g.product(g.inverse(cube[found->a.b]), cube[found->a.c]);
    const Element h = g.product(a, found->sigma);
    const std::size_t old = cube.size();
    for (std::size_t m = 0; m < old; ++m) cube.push_back(g.product(cube[m], h));
    ElementSet distinct(g.base().size(), cube);
    if (distinct.size() != cube.size()) fail(ErrorKind::VerificationFailed, "cube failed to double");
    res.cube.push_back(h);
    res.cube_sizes.push_back(cube.size());
    origins.push_back(*found);
    rebuild();
  }
  res.rounds = res.cube.size();

  SlpBuilder b;
  std::vector<Value> hv;
  auto cube_value = [&](std::uint32_t mask) -> std::optional<Value> {
    std::optional<Value> acc;
    for (std::size_t i = 0; i < hv.size(); ++i)
      if ((mask >> i) & 1u) acc = acc ? b.mul(*acc, hv[i]) : hv[i];
    return acc;
  };
  auto quotient_value = [&](Split s) -> std::optional<Value> {
    std::optional<Value> acc;
    if (auto bv = cube_value(s.b)) acc = b.inv(*bv);
    if (auto cv = cube_value(s.c)) acc = acc ? b.mul(*acc, *cv) : *cv;
    return acc;
  };
  for (const auto& o : origins) {
    const Value sv = b.load(o.sigma);
    const auto av = quotient_value(o.a);
    hv.push_back(av ? b.mul(*av, sv) : sv);
  }
  auto out = quotient_value(quotient[t]);
  if (!out) {
    const Value x = hv.empty() ? b.load(sorted_sigma[0]) : hv[0];
    out = b.mul(x, b.inv(x));
  }
  res.group_program = b.finish(*out);
  return res;
}

inline Slp compress_group_bsz(const GroupView& g, std::span<const Element> sigma, Element t) {
  return eliminate_inverses(g, compress_group_reachability(g, sigma, t).group_program);
}

// ------------------------------------------------------ subnormal chains

/// Compresses a target of a quotient group over the images of the step's
/// generators.
using QuotientStrategy = std::function<Slp(const Semigroup& q, std::span<const Element> gens, Element target)>;

inline Slp abelian_quotient_strategy(const Semigroup& q, std::span<const Element> gens, Element target) {
  return compress_permutative_at(q, WordTable(q, gens), target, 0);
}

/// Checks that sigma meets every chain term in a generating set.
inline void check_adapted(const GroupView& g, const std::vector<ElementSet>& chain, std::span<const Element> sigma) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::vector<Element> inside;
    for (Element s : sigma)
      if (chain[i].contains(s)) inside.push_back(s);
    if (SubgroupClosure(g, inside).size() != chain[i].size())
      fail(ErrorKind::NotAdapted, "Sigma does not generate chain term " + std::to_string(i));
  }
}

/// Emits t = t_1 t_2 ... t_m where t_i is compressed in G_(i-1)/G_i and lifted
/// through the first generator of each coset.  `leaf` supplies the value of a
/// generator of sigma.  Returns the value of t in b.
inline Value emit_adapt_subnormal(SlpBuilder& b, const GroupView& g, const std::vector<ElementSet>& chain,
                                  std::span<const Element> sigma, Element t, const QuotientStrategy& strategy,
                                  const std::function<Value(Element)>& leaf) {
  if (chain.empty() || chain.back().size() != 1) fail(ErrorKind::NotAdapted, "chain does not end in the trivial group");
  check_adapted(g, chain, sigma);
  if (!chain[0].contains(t)) fail(ErrorKind::NotInSubgroup, "target outside the top of the chain");
  std::optional<Value> acc;
  Element rest = t;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (chain[i].contains(rest)) continue;
    const GroupView top(g.base(), chain[i - 1], g.identity());
    const auto q = quotient_group(top, chain[i]);
    std::vector<Element> qgens;
    std::map<Element, Element> preimage;
    for (Element s : sigma)
      if (chain[i - 1].contains(s)) {
        const Element c = q.projection[s];
        if (preimage.emplace(c, s).second) qgens.push_back(c);
      }
    const Slp qprog = strategy(q.quotient, qgens, q.projection[rest]);
    Slp lifted = qprog;
    for (auto& e : lifted.alphabet) e = preimage.at(e);
    const Element ti = evaluate(g.base(), lifted).output;
    const Value v = import_program(b, lifted, [&](std::uint32_t sym) { return leaf(lifted.alphabet[sym]); }).output;
    acc = acc ? b.mul(*acc, v) : v;
    rest = g.product(g.inverse(ti), rest);
    if (!chain[i].contains(rest)) fail(ErrorKind::VerificationFailed, "quotient step left the residual outside G_i");
  }
  if (!acc) {
    if (sigma.empty()) fail(ErrorKind::InvalidArgument, "empty generating set");
    acc = detail::emit_identity(b, g, sigma[0], leaf(sigma[0]));
  }
  return *acc;
}

inline Slp adapt_subnormal(const GroupView& g, const std::vector<ElementSet>& chain, std::span<const Element> sigma,
                           Element t, const QuotientStrategy& strategy = abelian_quotient_strategy) {
  SlpBuilder b;
  return b.finish(emit_adapt_subnormal(b, g, chain, sigma, t, strategy, [&](Element s) { return b.load(s); }));
}

// ------------------------------------------- derived-series generating set

struct DerivedRecord {
  enum class Kind { Gen, Conj, Comm } kind;
  Element value;
  std::size_t a = 0;    ///< Conj, Comm: first record
  std::size_t b = 0;    ///< Comm: second record
  Element by = 0;       ///< Conj: conjugating generator
};

struct DerivedGenerators {
  std::vector<DerivedRecord> records;
  std::vector<std::vector<std::size_t>> levels;  ///< Delta_i as record indices
  std::vector<ElementSet> series;                ///< derived series of <Sigma>
  ElementSet subgroup;

  std::vector<Element> delta() const {
    std::vector<Element> out;
    for (const auto& lv : levels)
      for (std::size_t r : lv) out.push_back(records[r].value);
    return out;
  }
};

/// Delta_0 greedy over Sigma modulo G'; then per level a normal closure of
/// Delta_(i-1) (Xi), a greedy commutator set Theta over Delta_(i-1) and Xi,
/// and a normal closure of Theta, all modulo G^(i+1).
inline DerivedGenerators build_derived_generators(const GroupView& g, std::span<const Element> sigma) {
  if (sigma.empty()) fail(ErrorKind::EmptyGenerators, "derived generators over an empty set");
  DerivedGenerators out;
  SubgroupClosure h(g, sigma);
  out.subgroup = h.set();
  const GroupView hv(g.base(), out.subgroup, g.identity());
  const auto series = derived_series(hv);
  if (!series.reaches_trivial()) fail(ErrorKind::NotSolvable, "derived series stabilizes above the trivial group");
  out.series = series.terms;
  const std::size_t d = out.series.size() - 1;
  auto mod = [&](std::size_t i) { return i < out.series.size() ? out.series[i].to_vector() : std::vector<Element>{}; };

  std::map<Element, std::size_t> record_of;
  auto add = [&](DerivedRecord r) {
    const auto [it, fresh] = record_of.try_emplace(r.value, out.records.size());
    if (fresh) out.records.push_back(r);
    return it->second;
  };
  for (Element s : sigma) add({DerivedRecord::Kind::Gen, s});

  std::vector<std::size_t> level0;
  {
    SubgroupClosure c(hv, mod(1));
    for (Element s : sigma)
      if (c.add(s)) level0.push_back(record_of.at(s));
  }
  out.levels.push_back(level0);
  for (std::size_t i = 1; i < d; ++i) {
    const auto& prev = out.levels[i - 1];
    const auto modulo = mod(i + 1);
    std::vector<Element> prev_vals;
    for (std::size_t r : prev) prev_vals.push_back(out.records[r].value);
    const auto xi = normal_closure_set(hv, prev_vals, sigma, modulo);
    std::vector<std::size_t> pool = prev;
    for (std::size_t j = 0; j < xi.added.size(); ++j) {
      const auto [base, by] = xi.provenance[j];
      pool.push_back(add({DerivedRecord::Kind::Conj, xi.added[j], record_of.at(base), 0, by}));
    }
    SubgroupClosure theta_span(hv, modulo);
    std::vector<std::size_t> theta;
    for (std::size_t x : pool)
      for (std::size_t y : pool) {
        const Element c = hv.commutator(out.records[x].value, out.records[y].value);
        if (theta_span.add(c)) theta.push_back(add({DerivedRecord::Kind::Comm, c, x, y}));
      }
    std::vector<Element> theta_vals;
    for (std::size_t r : theta) theta_vals.push_back(out.records[r].value);
    const auto xi2 = normal_closure_set(hv, theta_vals, sigma, modulo);
    std::vector<std::size_t> level = theta;
    for (std::size_t j = 0; j < xi2.added.size(); ++j) {
      const auto [base, by] = xi2.provenance[j];
      level.push_back(add({DerivedRecord::Kind::Conj, xi2.added[j], record_of.at(base), 0, by}));
    }
    out.levels.push_back(level);
  }
  return out;
}

/// Unbounded-width solvable compressor: Delta from the derived series, the
/// chain walked with abelian quotients, inverses eliminated at the end.
class SolvableCompressor {
 public:
  SolvableCompressor(const GroupView& g, std::span<const Element> sigma)
      : g_(&g), sigma_(sigma.begin(), sigma.end()), gens_(build_derived_generators(g, sigma)),
        view_(g.base(), gens_.subgroup, g.identity()) {}

  const DerivedGenerators& generators() const noexcept { return gens_; }

  Slp group_program(Element t) const {
    if (!gens_.subgroup.contains(t)) fail(ErrorKind::NotInSubgroup, "target " + std::to_string(t) + " is not in <Sigma>");
    SlpBuilder b;
    std::vector<std::optional<Value>> memo(gens_.records.size());
    std::function<Value(std::size_t)> value = [&](std::size_t r) -> Value {
      if (memo[r]) return *memo[r];
      const auto& rec = gens_.records[r];
      Value v = 0;
      switch (rec.kind) {
        case DerivedRecord::Kind::Gen: v = b.load(rec.value); break;
        case DerivedRecord::Kind::Conj: {
          const Value x = value(rec.a), h = b.load(rec.by);
          v = b.mul(b.mul(b.inv(h), x), h);
          break;
        }
        case DerivedRecord::Kind::Comm: {
          const Value x = value(rec.a), y = value(rec.b);
          v = b.mul(b.mul(b.inv(x), b.inv(y)), b.mul(x, y));
          break;
        }
      }
      memo[r] = v;
      return v;
    };
    std::map<Element, std::size_t> leaf_record;
    for (const auto& lv : gens_.levels)
      for (std::size_t r : lv) leaf_record.try_emplace(gens_.records[r].value, r);
    const auto delta = gens_.delta();
    // trivial <Sigma>: the derived generators drop the identity
    if (delta.empty()) return b.finish(detail::emit_identity(b, *g_, sigma_.at(0), b.load(sigma_.at(0))));
    const Value out = emit_adapt_subnormal(b, view_, gens_.series, delta, t, abelian_quotient_strategy,
                                           [&](Element e) { return value(leaf_record.at(e)); });
    return b.finish(out);
  }

  Slp compress(Element t) const { return eliminate_inverses(view_, group_program(t)); }

 private:
  const GroupView* g_;
  std::vector<Element> sigma_;
  DerivedGenerators gens_;
  GroupView view_;
};

inline Slp compress_group_solvable(const GroupView& g, std::span<const Element> sigma, Element t) {
  return SolvableCompressor(g, sigma).compress(t);
}

// ----------------------------------------------------- polycyclic sets

struct PolycyclicRecord {
  Element value;
  std::size_t layer;
  std::size_t parent = 0;  ///< layer >= 1: record of g
  Element base = 0;        ///< layer 0: the generator conjugated
  Word u, v;               ///< conjugators as words over Sigma (v unused on layer 0)
};

struct PolycyclicGenSet {
  std::vector<Element> sigma;
  std::vector<PolycyclicRecord> records;
  std::vector<std::size_t> chain;        ///< r_1 ... r_n, top to bottom
  std::vector<ElementSet> chain_terms;   ///< G_0 = <Sigma> ... G_n = 1, G_j = <r_(j+1) ... r_n>
  std::size_t layers = 0;
};

/// Layers Pi^0 = Sigma-conjugates of Sigma, Pi^(i+1) = conjugates of
/// [g, g^v] for g in Pi^i, conjugators ranging over elements with words of
/// length <= ceil(log2 |<Sigma>|).  The chain is grown from the bottom,
/// taking at each step the first record (deepest layers first) that enlarges
/// the current subgroup and normalizes it.
inline PolycyclicGenSet build_polycyclic_set(const GroupView& g, std::span<const Element> sigma) {
  if (sigma.empty()) fail(ErrorKind::EmptyGenerators, "polycyclic set over an empty generating set");
  PolycyclicGenSet out;
  out.sigma.assign(sigma.begin(), sigma.end());
  SubgroupClosure h(g, sigma);
  const GroupView hv(g.base(), h.set(), g.identity());
  const auto series = derived_series(hv);
  if (!series.reaches_trivial()) fail(ErrorKind::NotSolvable, "derived series stabilizes above the trivial group");

  std::size_t k = 0;
  while ((std::size_t{1} << k) < h.size()) ++k;
  const WordTable words(g.base(), sigma);
  struct Conj {
    Element value;
    Word word;
  };
  std::vector<Conj> conjugators{{g.identity(), {}}};
  for (Element x : words.discovered())
    if (words.length(x) <= k && x != g.identity()) conjugators.push_back({x, *words.word(x)});

  std::vector<std::size_t> prev;
  {
    std::map<Element, std::size_t> seen;
    for (const auto& c : conjugators)
      for (Element s : sigma) {
        const Element v = g.conjugate(s, c.value);
        if (seen.try_emplace(v, out.records.size()).second) {
          out.records.push_back({v, 0, 0, s, c.word, {}});
          prev.push_back(out.records.size() - 1);
        }
      }
  }
  const std::size_t max_layer = series.terms.size() - 1;
  for (std::size_t layer = 1; layer <= max_layer && !prev.empty(); ++layer) {
    struct Comm {
      Element value;
      std::size_t parent;
      const Word* v;
    };
    std::vector<Comm> comms;
    std::map<Element, bool> seen_comm;
    for (std::size_t r : prev)
      for (const auto& c : conjugators) {
        const Element gv = out.records[r].value;
        const Element x = g.commutator(gv, g.conjugate(gv, c.value));
        if (x == g.identity()) continue;
        if (seen_comm.try_emplace(x, true).second) comms.push_back({x, r, &c.word});
      }
    std::vector<std::size_t> next;
    std::map<Element, std::size_t> seen;
    for (const auto& c : conjugators)
      for (const auto& x : comms) {
        const Element v = g.conjugate(x.value, c.value);
        if (seen.try_emplace(v, out.records.size()).second) {
          out.records.push_back({v, layer, x.parent, 0, c.word, *x.v});
          next.push_back(out.records.size() - 1);
        }
      }
    prev = std::move(next);
    if (!prev.empty()) out.layers = layer;
  }
  out.layers += 1;

  std::vector<std::size_t> candidates(out.records.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return out.records[a].layer > out.records[b].layer; });
  SubgroupClosure cur(hv);
  std::vector<std::size_t> bottom_up;
  std::vector<ElementSet> terms_bottom_up{cur.set()};
  while (cur.size() < h.size()) {
    std::optional<std::size_t> pick;
    for (std::size_t r : candidates) {
      const Element x = out.records[r].value;
      if (cur.contains(x)) continue;
      bool normalizes = true;
      for (Element y : cur.generators())
        if (!cur.contains(g.conjugate(y, x))) {
          normalizes = false;
          break;
        }
      if (normalizes) {
        pick = r;
        break;
      }
    }
    if (!pick) fail(ErrorKind::ChainVerificationFailed, "no record normalizes the partial chain");
    cur.add(out.records[*pick].value);
    bottom_up.push_back(*pick);
    terms_bottom_up.push_back(cur.set());
  }
  out.chain.assign(bottom_up.rbegin(), bottom_up.rend());
  out.chain_terms.assign(terms_bottom_up.rbegin(), terms_bottom_up.rend());

  // independent check of the finished chain
  for (std::size_t j = 0; j + 1 < out.chain_terms.size(); ++j) {
    const Element r = out.records[out.chain[j]].value;
    const auto lower = out.chain_terms[j + 1].to_vector();
    for (Element y : lower)
      if (!out.chain_terms[j + 1].contains(g.conjugate(y, r)))
        fail(ErrorKind::ChainVerificationFailed, "step " + std::to_string(j) + " is not normal");
    std::vector<Element> gens{r};
    for (std::size_t i = j + 1; i < out.chain.size(); ++i) gens.push_back(out.records[out.chain[i]].value);
    if (SubgroupClosure(hv, gens).set() != out.chain_terms[j])
      fail(ErrorKind::ChainVerificationFailed, "step " + std::to_string(j) + " is not generated by its records");
  }
  return out;
}

/// Bounded-width solvable compressor.  Each chain step contributes
/// r_j^e for the least e with the residual in r_j^e G_j; record values are
/// rebuilt from provenance by an accumulator that is inverted (by powering)
/// whenever the next token's sign disagrees with its orientation.
class BoundedSolvableCompressor {
 public:
  BoundedSolvableCompressor(const GroupView& g, std::span<const Element> sigma)
      : g_(&g), pcgs_(build_polycyclic_set(g, sigma)) {}

  const PolycyclicGenSet& polycyclic_set() const noexcept { return pcgs_; }

  Slp compress(Element t) const {
    if (!pcgs_.chain_terms[0].contains(t))
      fail(ErrorKind::NotInSubgroup, "target " + std::to_string(t) + " is not in <Sigma>");
    SlpBuilder b;
    std::optional<Value> acc;
    Element rest = t;
    for (std::size_t j = 0; j < pcgs_.chain.size(); ++j) {
      const Element r = pcgs_.records[pcgs_.chain[j]].value;
      std::uint64_t e = 0;
      while (!pcgs_.chain_terms[j + 1].contains(rest)) {
        rest = g_->product(g_->inverse(r), rest);
        ++e;
      }
      if (e == 0) continue;
      const Value rv = b.power(record_value(b, pcgs_.chain[j]), e);
      acc = acc ? b.mul(*acc, rv) : rv;
    }
    if (!acc) acc = detail::emit_identity(b, *g_, pcgs_.sigma[0], b.load(pcgs_.sigma[0]));
    return b.finish(*acc);
  }

 private:
  struct Token {
    bool is_g;
    Element sym;  ///< generator when !is_g
    bool inverse;
  };

  // Accumulator that may hold the inverse of the product so far.
  struct Machine {
    SlpBuilder& b;
    const GroupView& g;
    std::optional<Value> r;
    Element value;  // true product so far
    bool inverted = false;

    void flip() {
      const Element held = inverted ? g.inverse(value) : value;
      const std::uint32_t ord = g.element_order(held);
      if (ord > 1) r = ord == 2 ? *r : b.power(*r, ord - 1);
      inverted = !inverted;
    }
    // flip before the token's operand is loaded, so it is not live meanwhile
    void orient(bool inverse) {
      if (r && inverse != inverted) flip();
    }
    void push(Value x, Element xv, bool inverse) {
      const Element tv = inverse ? g.inverse(xv) : xv;
      if (!r) {
        r = x;
        inverted = inverse;
        value = tv;
        return;
      }
      orient(inverse);
      r = inverted ? b.mul(x, *r) : b.mul(*r, x);
      value = g.product(value, tv);
    }
    Value finish() {
      if (inverted) flip();
      return *r;
    }
  };

  Value record_value(SlpBuilder& b, std::size_t idx) const {
    const auto& rec = pcgs_.records[idx];
    const auto& sig = pcgs_.sigma;
    std::vector<Token> tokens;
    auto word_inv = [&](const Word& w) {
      for (std::size_t i = w.size(); i-- > 0;) tokens.push_back({false, sig[w[i]], true});
    };
    auto word_fwd = [&](const Word& w) {
      for (std::size_t i : w) tokens.push_back({false, sig[i], false});
    };
    std::optional<Value> gval;
    Element gelem = 0;
    if (rec.layer == 0) {
      word_inv(rec.u);
      tokens.push_back({false, rec.base, false});
      word_fwd(rec.u);
    } else {
      gval = record_value(b, rec.parent);
      gelem = pcgs_.records[rec.parent].value;
      // u^-1 g^-1 v^-1 g^-1 v g v^-1 g v u
      word_inv(rec.u);
      tokens.push_back({true, 0, true});
      word_inv(rec.v);
      tokens.push_back({true, 0, true});
      word_fwd(rec.v);
      tokens.push_back({true, 0, false});
      word_inv(rec.v);
      tokens.push_back({true, 0, false});
      word_fwd(rec.v);
      word_fwd(rec.u);
    }
    Machine m{b, *g_, std::nullopt, g_->identity()};
    for (const auto& tk : tokens) {
      m.orient(tk.inverse);
      if (tk.is_g)
        m.push(*gval, gelem, tk.inverse);
      else
        m.push(b.load(tk.sym), tk.sym, tk.inverse);
    }
    if (m.value != rec.value) fail(ErrorKind::VerificationFailed, "record rebuilt to the wrong value");
    return m.finish();
  }

  const GroupView* g_;
  PolycyclicGenSet pcgs_;
};

inline Slp compress_group_solvable_bounded(const GroupView& g, std::span<const Element> sigma, Element t) {
  return BoundedSolvableCompressor(g, sigma).compress(t);
}

}  // namespace slpforge
