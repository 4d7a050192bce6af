#pragma once

// Normal bands of groups, the nilpotent peel, and the general pipeline
// (peel, then x y z = x y^(w+1) z to move the middle of a word into the
// completely regular part).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/decomposition.hpp"
#include "slpforge/group_strategies.hpp"
#include "slpforge/permutative.hpp"
#include "slpforge/slp.hpp"

namespace slpforge {

enum class GroupStrategy { Auto, Reachability, Solvable, SolvableBounded };
enum class BandMode { Wide, Narrow };

inline std::string to_string(GroupStrategy g) {
  switch (g) {
    case GroupStrategy::Auto: return "auto";
    case GroupStrategy::Reachability: return "group-bsz";
    case GroupStrategy::Solvable: return "group-solvable";
    case GroupStrategy::SolvableBounded: return "group-solvable-bw";
  }
  return "?";
}

/// A group compressor bound to one group and generating set.
class GroupCompressor {
 public:
  GroupCompressor(const GroupView& g, std::span<const Element> sigma, GroupStrategy kind) : g_(&g), sigma_(sigma.begin(), sigma.end()) {
    if (kind == GroupStrategy::Auto) {
      const GroupView h(g.base(), subgroup_closure(g, sigma), g.identity());
      kind = is_solvable(h) ? GroupStrategy::SolvableBounded : GroupStrategy::Reachability;
    }
    kind_ = kind;
    if (kind == GroupStrategy::Solvable) solvable_ = std::make_unique<SolvableCompressor>(g, sigma);
    if (kind == GroupStrategy::SolvableBounded) bounded_ = std::make_unique<BoundedSolvableCompressor>(g, sigma);
  }

  GroupStrategy kind() const noexcept { return kind_; }

  Slp compress(Element t) const {
    switch (kind_) {
      case GroupStrategy::Solvable: return solvable_->compress(t);
      case GroupStrategy::SolvableBounded: return bounded_->compress(t);
      default: return compress_group_bsz(*g_, sigma_, t);
    }
  }

 private:
  const GroupView* g_;
  std::vector<Element> sigma_;
  GroupStrategy kind_ = GroupStrategy::Reachability;
  std::unique_ptr<SolvableCompressor> solvable_;
  std::unique_ptr<BoundedSolvableCompressor> bounded_;
};

// ------------------------------------------------------- normal bands

struct BandClass {
  Element idempotent;                  ///< e_alpha, ambient
  ElementSet carrier;                  ///< S_alpha, ambient
  std::vector<Element> sigma_alpha;    ///< e s e, ambient
  std::vector<std::vector<Element>> witness;  ///< s or (s1, s2) for each entry of sigma_alpha
};

struct NormalBandResult {
  Slp program;
  Slp group_program;  ///< over sigma_alpha
  Element alpha = 0;
  Element idempotent = 0;
};

/// Compression in a normal band of groups T = <Sigma>: e_alpha from a
/// permutative program in the band, then a group program over Sigma_alpha
/// in S_alpha whose loads are replaced by e s e.  Wide mode keeps e_alpha in
/// a register throughout; narrow mode lets a pair witness overwrite it and
/// recomputes it as x^w from a live group value.
class NormalBandCompressor {
 public:
  NormalBandCompressor(const Semigroup& s, std::span<const Element> sigma, GroupStrategy group = GroupStrategy::Auto,
                       BandMode mode = BandMode::Wide, std::size_t kmax = 6,
                       std::uint64_t budget = kDefaultNormalityBudget)
      : ambient_(&s), group_(group), mode_(mode) {
    if (sigma.empty()) fail(ErrorKind::EmptyGenerators, "normal band over an empty generating set");
    sub_ = std::make_shared<Subsemigroup>(restrict_to(s, closure(s, sigma), sigma));
    for (Element x : sigma) {
      const Element y = sub_->to_sub(x);
      if (std::find(sigma_.begin(), sigma_.end(), y) == sigma_.end()) sigma_.push_back(y);
    }
    try {
      dec_ = band_of_groups_decomposition(sub_->semigroup, budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BudgetExceeded) throw;
      fail(ErrorKind::DecompositionFailed, e.what());
    }
    for (Element x : sigma_) {
      const Element beta = dec_.projection[x];
      if (std::find(band_gens_.begin(), band_gens_.end(), beta) == band_gens_.end()) {
        band_gens_.push_back(beta);
        lift_[beta] = x;
      } else {
        lift_[beta] = std::min(lift_[beta], x);
      }
    }
    const auto k = central_commutation_level(dec_.band, band_gens_, kmax);
    if (!k) fail(ErrorKind::DecompositionFailed, "band is not permutative up to level " + std::to_string(kmax));
    band_level_ = *k;
    band_words_ = std::make_unique<WordTable>(dec_.band, band_gens_);
  }

  NormalBandCompressor(const NormalBandCompressor&) = delete;
  NormalBandCompressor& operator=(const NormalBandCompressor&) = delete;

  const BandDecomposition& decomposition() const noexcept { return dec_; }
  const Subsemigroup& restriction() const noexcept { return *sub_; }
  BandMode mode() const noexcept { return mode_; }

  /// Class data in ambient indices; builds Sigma_alpha and checks it
  /// generates S_alpha.
  BandClass band_class(Element alpha) { return to_ambient(data(alpha)); }

  NormalBandResult compress_detailed(Element t) {
    if (t >= ambient_->size() || sub_->locate[t] == kNoElement)
      fail(ErrorKind::Unreachable, "target " + std::to_string(t) + " is not generated");
    const Element ts = sub_->locate[t];
    const Element alpha = dec_.projection[ts];
    ClassData& cd = data(alpha);
    const Slp gprog = cd.compressor->compress(ts);
    NormalBandResult res;
    res.alpha = alpha;
    res.idempotent = sub_->embed[cd.e];
    res.group_program = gprog;
    for (auto& x : res.group_program.alphabet) x = sub_->embed[x];
    res.program = splice(cd, gprog);
    for (auto& x : res.program.alphabet) x = sub_->embed[x];
    return res;
  }

  Slp compress(Element t) { return compress_detailed(t).program; }

 private:
  struct ClassData {
    Element e;
    std::vector<Element> sigma_alpha;
    std::vector<std::vector<Element>> witness;
    std::map<Element, std::size_t> index_of;
    std::unique_ptr<GroupView> view;
    std::unique_ptr<GroupCompressor> compressor;
  };

  BandClass to_ambient(const ClassData& cd) const {
    BandClass out;
    out.idempotent = sub_->embed[cd.e];
    out.carrier = ElementSet(ambient_->size());
    cd.view->carrier().for_each([&](Element x) { out.carrier.insert(sub_->embed[x]); });
    out.sigma_alpha = sub_->to_ambient(cd.sigma_alpha);
    for (const auto& w : cd.witness) out.witness.push_back(sub_->to_ambient(w));
    return out;
  }

  ClassData& data(Element alpha) {
    if (auto it = classes_.find(alpha); it != classes_.end()) return *it->second;
    const Semigroup& t = sub_->semigroup;
    auto cd = std::make_unique<ClassData>();
    cd->e = dec_.idempotents[alpha];
    const ElementSet& carrier = dec_.carriers[alpha];
    auto consider = [&](Element p, std::vector<Element> w) {
      if (!t.leq_j(cd->e, p)) return;
      const Element v = t.product(t.product(cd->e, p), cd->e);
      if (!carrier.contains(v))
        fail(ErrorKind::DecompositionFailed, "e s e left the class of e for s = " + std::to_string(sub_->embed[p]));
      if (cd->index_of.emplace(v, cd->sigma_alpha.size()).second) {
        cd->sigma_alpha.push_back(v);
        cd->witness.push_back(std::move(w));
      }
    };
    for (Element x : sigma_) consider(x, {x});
    for (Element x : sigma_)
      for (Element y : sigma_) consider(t.product(x, y), {x, y});
    cd->view = std::make_unique<GroupView>(t, carrier, cd->e);
    if (cd->sigma_alpha.empty() || subgroup_closure(*cd->view, cd->sigma_alpha) != carrier)
      fail(ErrorKind::DecompositionFailed, "Sigma_alpha does not generate S_alpha for class " + std::to_string(alpha));
    cd->compressor = std::make_unique<GroupCompressor>(*cd->view, cd->sigma_alpha, group_);
    return *classes_.emplace(alpha, std::move(cd)).first->second;
  }

  // e_alpha from scratch: permutative program in B, lifted, then x^w
  Value emit_idempotent(SlpBuilder& b, Element alpha) const {
    const Semigroup& t = sub_->semigroup;
    Slp lifted = compress_permutative_at(dec_.band, *band_words_, alpha, band_level_);
    for (auto& x : lifted.alphabet) x = lift_.at(x);
    const Element x = evaluate(t, lifted).output;
    const Value xv = import_program(b, lifted, plain_leaves(b, lifted)).output;
    return b.power(xv, t.period(x));
  }

  Slp splice(const ClassData& cd, const Slp& gprog) const {
    const Semigroup& t = sub_->semigroup;
    const ElementSet& carrier = cd.view->carrier();
    const Element alpha = dec_.projection[cd.e];
    check_program(gprog);
    std::uint32_t regs = gprog.output + 1;
    for (const auto& in : gprog.code) regs = std::max({regs, in.dst + 1, in.a + 1, in.b + 1});
    // read_later[i][r]: register r is read after instruction i before being rewritten
    const std::size_t n = gprog.code.size();
    std::vector<std::vector<bool>> read_later(n, std::vector<bool>(regs, false));
    {
      std::vector<bool> live(regs, false);
      live[gprog.output] = true;
      for (std::size_t i = n; i-- > 0;) {
        read_later[i] = live;
        const auto& in = gprog.code[i];
        live[in.dst] = false;
        if (in.op != Op::Load) live[in.a] = true;
        if (in.op == Op::Mul) live[in.b] = true;
      }
    }
    SlpBuilder b;
    std::vector<std::optional<Value>> val(regs);
    std::vector<Element> elem(regs, kNoElement);
    std::optional<Value> e;
    auto from_live = [&](std::size_t i, std::uint32_t dst) -> std::optional<Value> {
      for (std::uint32_t r = 0; r < regs; ++r)
        if (r != dst && read_later[i][r] && val[r]) return b.power(*val[r], t.period(elem[r]));
      return std::nullopt;
    };
    auto fresh_e = [&](std::size_t i, std::uint32_t dst) -> Value {
      if (auto v = from_live(i, dst)) return *v;
      return emit_idempotent(b, alpha);
    };
    for (std::size_t i = 0; i < n; ++i) {
      const auto& in = gprog.code[i];
      Value v = 0;
      Element x = kNoElement;
      switch (in.op) {
        case Op::Load: {
          x = gprog.alphabet[in.a];
          const auto& w = cd.witness.at(cd.index_of.at(x));
          Element wv = w[0];
          for (std::size_t j = 1; j < w.size(); ++j) wv = t.product(wv, w[j]);
          auto load_witness = [&] {
            Value acc = b.load(w[0]);
            for (std::size_t j = 1; j < w.size(); ++j) acc = b.mul(acc, b.load(w[j]));
            return acc;
          };
          if (carrier.contains(wv)) {
            v = load_witness();  // already in the group
            break;
          }
          if (mode_ == BandMode::Narrow && w.size() > 1) {
            const Value p = load_witness();
            if (auto ne = from_live(i, in.dst))
              e = *ne;
            else if (!e)
              e = emit_idempotent(b, alpha);
            v = b.mul(b.mul(*e, p), *e);
            break;
          }
          if (!e) e = fresh_e(i, in.dst);
          v = b.mul(b.mul(*e, load_witness()), *e);
          break;
        }
        case Op::Mul:
          v = b.mul(*val[in.a], *val[in.b]);
          x = t.product(elem[in.a], elem[in.b]);
          break;
        case Op::Inv: fail(ErrorKind::InvalidProgram, "group program still uses INV");
      }
      val[in.dst] = v;
      elem[in.dst] = x;
    }
    return b.finish(*val[gprog.output]);
  }

  const Semigroup* ambient_;
  GroupStrategy group_;
  BandMode mode_;
  std::shared_ptr<Subsemigroup> sub_;
  std::vector<Element> sigma_;  // sub indices
  BandDecomposition dec_;
  std::vector<Element> band_gens_;
  std::map<Element, Element> lift_;
  std::size_t band_level_ = 0;
  std::unique_ptr<WordTable> band_words_;
  std::map<Element, std::unique_ptr<ClassData>> classes_;
};

inline Slp compress_normal_band(const Semigroup& s, std::span<const Element> sigma, Element t,
                                GroupStrategy group = GroupStrategy::Auto, BandMode mode = BandMode::Wide) {
  return NormalBandCompressor(s, sigma, group, mode).compress(t);
}

// ---------------------------------------------------------- sandwich

/// x y z = x y^(w+1) z for x, y, z in the ideal, and the completely regular
/// elements of the ideal closed under the product.  Elements of equal row
/// act alike on the right, so each (x, y) costs one row comparison at most.
inline bool sandwich_holds(const Semigroup& s, const ElementSet& ideal, std::uint64_t budget = 100'000'000) {
  const auto xs = ideal.to_vector();
  const std::uint64_t m = xs.size();
  if (m * m * m > budget) fail(ErrorKind::BudgetExceeded, "sandwich scan too large");
  for (Element x : xs)
    for (Element y : xs) {
      const Element a = s.product(x, y), c = s.product(x, s.omega_plus_one(y));
      if (a == c) continue;
      for (Element z : xs)
        if (s.product(a, z) != s.product(c, z)) return false;
    }
  std::vector<Element> cr;
  for (Element x : xs)
    if (s.is_completely_regular(x)) cr.push_back(x);
  for (Element x : cr)
    for (Element y : cr)
      if (!s.is_completely_regular(s.product(x, y))) return false;
  return true;
}

/// Least k <= kmax where the sandwich identity holds on T^k, T = <gens>.
inline std::optional<std::size_t> sandwich_level(const Semigroup& s, std::span<const Element> gens, std::size_t kmax,
                                                 std::uint64_t budget = 100'000'000) {
  const ElementSet t = closure(s, gens);
  ElementSet cur = t;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > 1) cur = set_product(s, cur, t);
    if (sandwich_holds(s, cur, budget)) return k;
  }
  return std::nullopt;
}

// ----------------------------------------------------- nilpotent peel

using InnerStrategy = std::function<Slp(const Semigroup& s, std::span<const Element> delta, Element t)>;

/// Generators of T^k: values of words of length k .. 2k-1, each with the
/// shortest word found first.
class NilpotentPeel {
 public:
  NilpotentPeel(const Semigroup& s, std::span<const Element> sigma, std::size_t k)
      : s_(&s), k_(k), sigma_(sigma.begin(), sigma.end()), words_(s, sigma) {
    if (k == 0) fail(ErrorKind::InvalidArgument, "peel level must be positive");
    ideal_ = generated_ideal_power(s, closure(s, sigma), k);
    std::vector<std::pair<Element, Word>> level;
    for (std::size_t i = 0; i < sigma_.size(); ++i) level.push_back({sigma_[i], Word{i}});
    std::map<Element, std::size_t> seen_delta;
    for (std::size_t len = 1; len <= 2 * k - 1; ++len) {
      if (len > 1) {
        std::vector<std::pair<Element, Word>> next;
        ElementSet seen(s.size());
        for (const auto& [x, w] : level)
          for (std::size_t i = 0; i < sigma_.size(); ++i) {
            const Element y = s.product(x, sigma_[i]);
            if (!seen.insert(y)) continue;
            Word wy = w;
            wy.push_back(i);
            next.push_back({y, std::move(wy)});
          }
        level = std::move(next);
      }
      if (len < k) continue;
      for (const auto& [x, w] : level)
        if (seen_delta.emplace(x, delta_.size()).second) {
          delta_.push_back(x);
          witness_.emplace(x, word_program(sigma_, w));
        }
    }
    if (closure(s, delta_) != ideal_) fail(ErrorKind::VerificationFailed, "Delta does not generate T^k");
  }

  std::size_t level() const noexcept { return k_; }
  const ElementSet& ideal() const noexcept { return ideal_; }
  const std::vector<Element>& delta() const noexcept { return delta_; }
  const std::map<Element, Slp>& witnesses() const noexcept { return witness_; }

  Slp compress(Element t, const InnerStrategy& inner) const {
    if (!words_.reachable(t)) fail(ErrorKind::Unreachable, "target " + std::to_string(t) + " is not generated");
    if (!ideal_.contains(t)) return word_program(sigma_, *words_.word(t));
    return substitute(inner(*s_, delta_, t));
  }

  /// Replaces every Delta load by its witness word.
  Slp substitute(const Slp& main) const { return inline_subroutine(main, witness_, main.alphabet); }

 private:
  const Semigroup* s_;
  std::size_t k_;
  std::vector<Element> sigma_;
  WordTable words_;
  ElementSet ideal_;
  std::vector<Element> delta_;
  std::map<Element, Slp> witness_;
};

inline Slp nilpotent_peel(const Semigroup& s, std::span<const Element> sigma, Element t, std::size_t k,
                          const InnerStrategy& inner) {
  return NilpotentPeel(s, sigma, k).compress(t, inner);
}

// ----------------------------------------------------------- general

struct GeneralResult {
  Slp program;      ///< over Sigma
  Slp inner;        ///< over Delta, leaves rewritten to the original letters
  Slp inner_tilde;  ///< over Delta and the s^(w+1), before the rewrite
  std::size_t level = 0;
  std::size_t group_width = 0;  ///< width of the group program inside, 0 if none ran
};

/// The general pipeline on T = <Sigma>: peel at the least sandwich level k,
/// then on T^k take a shortest Delta-word u s_1 ... s_m v, compress
/// s_1^(w+1) ... s_m^(w+1) in the normal band of groups they generate, map
/// each leaf back to a letter with the same (w+1)-power and wrap in u, v.
class GeneralCompressor {
 public:
  GeneralCompressor(const Semigroup& s, std::span<const Element> sigma, std::size_t kmax = 6,
                    GroupStrategy group = GroupStrategy::Auto, BandMode mode = BandMode::Narrow,
                    std::uint64_t budget = 100'000'000)
      : s_(&s), group_(group), mode_(mode), kmax_(kmax), reach_(closure(s, sigma)) {
    const auto k = sandwich_level(s, sigma, kmax, budget);
    if (!k) fail(ErrorKind::NotEligible, "x y z = x y^(w+1) z fails on T^k for every k <= " + std::to_string(kmax));
    peel_ = std::make_unique<NilpotentPeel>(s, sigma, *k);
    delta_words_ = std::make_unique<WordTable>(s, peel_->delta());
  }

  std::size_t level() const noexcept { return peel_->level(); }
  const NilpotentPeel& peel() const noexcept { return *peel_; }

  GeneralResult compress_detailed(Element t) {
    GeneralResult res;
    res.level = peel_->level();
    const Semigroup& s = *s_;
    if (!reach_.contains(t)) fail(ErrorKind::Unreachable, "target " + std::to_string(t) + " is not generated");
    if (!peel_->ideal().contains(t)) {
      res.program = peel_->compress(t, {});
      return res;
    }
    const auto& delta = peel_->delta();
    const auto w = delta_words_->word(t);
    if (!w) fail(ErrorKind::Unreachable, "target not generated by Delta");
    if (w->size() <= 2) {
      res.inner = res.inner_tilde = word_program(delta, *w);
    } else {
      const Element u = delta[w->front()], v = delta[w->back()];
      std::vector<Element> middle;
      for (std::size_t i = 1; i + 1 < w->size(); ++i) middle.push_back(delta[(*w)[i]]);
      std::vector<Element> tilde_set;
      std::map<Element, Element> preimage;
      Element tt = kNoElement;
      for (Element x : middle) {
        const Element y = s.omega_plus_one(x);
        tt = tt == kNoElement ? y : s.product(tt, y);
        auto [it, fresh] = preimage.emplace(y, x);
        if (fresh)
          tilde_set.push_back(y);
        else
          it->second = std::min(it->second, x);
      }
      std::sort(tilde_set.begin(), tilde_set.end());
      auto& nb = band_for(tilde_set);
      const auto nr = nb.compress_detailed(tt);
      const Slp& p = nr.program;
      res.group_width = nr.group_program.width();
      res.inner_tilde = wrap(u, p, v, [](Element x) { return x; });
      res.inner = wrap(u, p, v, [&](Element x) { return preimage.at(x); });
    }
    res.program = peel_->substitute(res.inner);
    return res;
  }

  Slp compress(Element t) { return compress_detailed(t).program; }

 private:
  template <class Leaf>
  static Slp wrap(Element u, const Slp& p, Element v, Leaf leaf) {
    SlpBuilder b;
    const Value uv = b.load(u);
    const Value pv = import_program(b, p, [&](std::uint32_t sym) { return b.load(leaf(p.alphabet[sym])); }).output;
    return b.finish(b.mul(b.mul(uv, pv), b.load(v)));
  }

  NormalBandCompressor& band_for(const std::vector<Element>& tilde) {
    auto it = bands_.find(tilde);
    if (it == bands_.end())
      it = bands_.emplace(tilde, std::make_unique<NormalBandCompressor>(*s_, tilde, group_, mode_, kmax_)).first;
    return *it->second;
  }

  const Semigroup* s_;
  GroupStrategy group_;
  BandMode mode_;
  std::size_t kmax_;
  ElementSet reach_;
  std::unique_ptr<NilpotentPeel> peel_;
  std::unique_ptr<WordTable> delta_words_;
  std::map<std::vector<Element>, std::unique_ptr<NormalBandCompressor>> bands_;
};

inline Slp compress_general(const Semigroup& s, std::span<const Element> sigma, Element t, std::size_t kmax = 6) {
  return GeneralCompressor(s, sigma, kmax).compress(t);
}

}  // namespace slpforge
