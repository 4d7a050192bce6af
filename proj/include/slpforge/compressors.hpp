#pragma once

// Classification of <Sigma> and the strategy dispatcher.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/band_strategies.hpp"
#include "slpforge/decomposition.hpp"
#include "slpforge/group_strategies.hpp"
#include "slpforge/identity.hpp"
#include "slpforge/permutative.hpp"
#include "slpforge/slp.hpp"

namespace slpforge {

struct CompressConfig {
  std::size_t kmax = 6;
  std::size_t diameter_limit = 33;
  std::uint64_t budget = 100'000'000;
  BandMode band_mode = BandMode::Wide;
};

/// Flags of T = <Sigma>.  An empty optional means the scan ran over budget.
struct ClassReport {
  std::size_t size = 0;  ///< |T|
  std::size_t diameter = 0;
  std::optional<bool> completely_regular;
  std::optional<bool> band, normal_band, left_regular_band, right_regular_band;
  std::optional<bool> group, solvable;
  std::optional<bool> decomposition;  ///< band of groups with a normal band
  std::optional<std::size_t> commutation_level;  ///< central commutation k*
  bool commutation_known = true;
  std::optional<std::size_t> sandwich_level;
  bool sandwich_known = true;
  std::size_t nilpotency = 0;  ///< least k with T^k = T^(k+1)
  std::vector<std::string> recommended;  ///< eligible strategies in dispatch order
};

inline const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names{"bounded-diameter", "permutative", "group-bsz",    "group-solvable",
                                              "group-solvable-bw", "normal-band", "general",     "auto"};
  return names;
}

inline bool is_strategy_name(std::string_view s) {
  for (const auto& n : strategy_names())
    if (n == s) return true;
  return false;
}

struct CompressResult {
  Slp program;
  std::string strategy;
  CostReport cost;
};

class Compressor {
 public:
  Compressor(const Semigroup& s, std::span<const Element> gens, CompressConfig cfg = {})
      : s_(&s), gens_(gens.begin(), gens.end()), cfg_(cfg) {
    if (gens_.empty()) fail(ErrorKind::EmptyGenerators, "compressor over an empty generating set");
    for (Element g : gens_)
      if (g >= s.size()) fail(ErrorKind::OutOfRange, "generator " + std::to_string(g) + " outside S");
    words_ = std::make_unique<WordTable>(s, gens_);
    carrier_ = ElementSet(s.size());
    for (Element x : words_->discovered()) carrier_.insert(x);
  }

  Compressor(const Compressor&) = delete;
  Compressor& operator=(const Compressor&) = delete;

  const Semigroup& semigroup() const noexcept { return *s_; }
  const std::vector<Element>& generators() const noexcept { return gens_; }
  const ElementSet& carrier() const noexcept { return carrier_; }
  const CompressConfig& config() const noexcept { return cfg_; }

  const ClassReport& report() {
    if (!report_) report_ = classify();
    return *report_;
  }

  CompressResult compress(Element t, std::string_view strategy = "auto") {
    if (!is_strategy_name(strategy)) fail(ErrorKind::InvalidArgument, "unknown strategy '" + std::string(strategy) + "'");
    if (t >= s_->size() || !carrier_.contains(t))
      fail(ErrorKind::Unreachable, "target " + std::to_string(t) + " is not in <Sigma>");
    CompressResult res;
    if (strategy == "auto") {
      res = run_auto(t);
    } else {
      res.program = run(std::string(strategy), t);
      res.strategy = strategy;
    }
    res.cost = verify(*s_, res.program, t, res.strategy);
    if (!res.cost.verified)
      fail(ErrorKind::VerificationFailed, res.strategy + " produced " + std::to_string(res.cost.value) + " instead of " +
                                              std::to_string(t));
    return res;
  }

 private:
  static bool is_ineligible(ErrorKind k) {
    switch (k) {
      case ErrorKind::DecompositionFailed:
      case ErrorKind::NotEligible:
      case ErrorKind::NotPermutative:
      case ErrorKind::NotSolvable:
      case ErrorKind::BudgetExceeded:
      case ErrorKind::NotCompletelyRegular:
      case ErrorKind::BandNotNormal:
      case ErrorKind::HNotCongruence:
      case ErrorKind::NotAGroup:
      case ErrorKind::DiameterExceeded: return true;
      default: return false;
    }
  }

  CompressResult run_auto(Element t) {
    static const std::array<const char*, 6> order{"bounded-diameter", "permutative", "group", "normal-band", "general",
                                                  "bounded-diameter"};
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::string name = order[i];
      try {
        if (name == "group") name = group_solvable() ? "group-solvable-bw" : "group-bsz";
        if (i == 0 && words_->diameter() > cfg_.diameter_limit) continue;
        return {run(name, t), name, {}};
      } catch (const Error& e) {
        if (!is_ineligible(e.kind())) throw;
      }
    }
    fail(ErrorKind::NotEligible, "no strategy applies");
  }

  Slp run(const std::string& name, Element t) {
    if (name == "bounded-diameter") return compress_bounded_diameter(*words_, t);
    if (name == "permutative") {
      const auto k = commutation_level();
      if (!k) fail(ErrorKind::NotPermutative, "no central commutation level up to " + std::to_string(cfg_.kmax));
      return compress_permutative_at(*s_, *words_, t, *k);
    }
    if (name == "group-bsz") return compress_group_bsz(group(), gens_, t);
    if (name == "group-solvable") {
      if (!solvable_) solvable_ = std::make_unique<SolvableCompressor>(group(), gens_);
      return solvable_->compress(t);
    }
    if (name == "group-solvable-bw") {
      if (!bounded_) bounded_ = std::make_unique<BoundedSolvableCompressor>(group(), gens_);
      return bounded_->compress(t);
    }
    if (name == "normal-band") {
      if (!band_)
        once(band_error_, [&] {
          band_ = std::make_unique<NormalBandCompressor>(*s_, gens_, GroupStrategy::Auto, cfg_.band_mode, cfg_.kmax,
                                                         cfg_.budget);
        });
      return band_->compress(t);
    }
    if (name == "general") {
      if (!general_)
        once(general_error_, [&] {
          general_ = std::make_unique<GeneralCompressor>(*s_, gens_, cfg_.kmax, GroupStrategy::Auto, BandMode::Narrow,
                                                         cfg_.budget);
        });
      return general_->compress(t);
    }
    fail(ErrorKind::InvalidArgument, "unknown strategy '" + name + "'");
  }

  using CachedError = std::optional<Error>;

  // runs f once; a failure is remembered and rethrown on later calls
  template <class F>
  static void once(CachedError& err, F&& f) {
    if (err) throw *err;
    try {
      f();
    } catch (const Error& e) {
      err = e;
      throw;
    }
  }

  std::optional<std::size_t> commutation_level() {
    if (!commutation_)
      once(commutation_error_, [&] { commutation_ = central_commutation_level(*s_, gens_, cfg_.kmax, cfg_.budget); });
    return *commutation_;
  }

  const GroupView& group() {
    if (!group_) once(group_error_, [&] { group_ = std::make_unique<GroupView>(group_view(*s_, carrier_)); });
    return *group_;
  }

  bool group_solvable() {
    if (!solvable_flag_) solvable_flag_ = is_solvable(group());
    return *solvable_flag_;
  }

  ClassReport classify() {
    ClassReport r;
    r.size = carrier_.size();
    r.diameter = words_->diameter();
    const auto sub = restrict_to(*s_, carrier_, gens_);
    const Semigroup& t = sub.semigroup;
    bool cr = true;
    for (Element x = 0; x < t.size(); ++x) cr = cr && t.is_completely_regular(x);
    r.completely_regular = cr;
    auto flag = [&](std::string_view id) -> std::optional<bool> {
      try {
        return satisfies_identity(t, id, cfg_.budget);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        return std::nullopt;
      }
    };
    r.band = flag("xx = x");
    if (r.band == true) {
      r.left_regular_band = flag("xyx = xy");
      r.right_regular_band = flag("xyx = yx");
      try {
        check_normal_band(t, cfg_.budget);
        r.normal_band = true;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BandNotNormal)
          r.normal_band = false;
        else if (e.kind() != ErrorKind::BudgetExceeded)
          throw;
      }
    } else if (r.band == false) {
      r.left_regular_band = r.right_regular_band = r.normal_band = false;
    }
    try {
      group();
      r.group = true;
      r.solvable = group_solvable();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotAGroup) throw;
      r.group = false;
    }
    if (cr) {
      try {
        band_of_groups_decomposition(t, cfg_.budget);
        r.decomposition = true;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded)
          r.decomposition = std::nullopt;
        else
          r.decomposition = false;
      }
    } else {
      r.decomposition = false;
    }
    try {
      r.commutation_level = commutation_level();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.commutation_known = false;
    }
    try {
      r.sandwich_level = sandwich_level(*s_, gens_, cfg_.kmax, cfg_.budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      r.sandwich_known = false;
    }
    {
      ElementSet cur = carrier_;
      r.nilpotency = 1;
      for (;;) {
        ElementSet next = set_product(*s_, cur, carrier_);
        if (next == cur) break;
        cur = std::move(next);
        ++r.nilpotency;
      }
    }
    if (r.diameter <= cfg_.diameter_limit) r.recommended.push_back("bounded-diameter");
    if (r.commutation_level) r.recommended.push_back("permutative");
    if (r.group == true) r.recommended.push_back(r.solvable == true ? "group-solvable-bw" : "group-bsz");
    if (r.decomposition == true) r.recommended.push_back("normal-band");
    if (r.sandwich_level) r.recommended.push_back("general");
    if (r.diameter > cfg_.diameter_limit) r.recommended.push_back("bounded-diameter");
    return r;
  }

  const Semigroup* s_;
  std::vector<Element> gens_;
  CompressConfig cfg_;
  std::unique_ptr<WordTable> words_;
  ElementSet carrier_;
  std::optional<ClassReport> report_;
  std::optional<std::optional<std::size_t>> commutation_;
  std::unique_ptr<GroupView> group_;
  std::optional<bool> solvable_flag_;
  std::unique_ptr<SolvableCompressor> solvable_;
  std::unique_ptr<BoundedSolvableCompressor> bounded_;
  std::unique_ptr<NormalBandCompressor> band_;
  std::unique_ptr<GeneralCompressor> general_;
  CachedError commutation_error_, group_error_, band_error_, general_error_;
};

inline ClassReport classify(const Semigroup& s, std::span<const Element> gens, CompressConfig cfg = {}) {
  return Compressor(s, gens, cfg).report();
}

}  // namespace slpforge
