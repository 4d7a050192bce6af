#pragma once

// Membership in <Sigma>: closure oracle, certificates from the compressors,
// and the generators every program for t has to load.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slpforge/compressors.hpp"

namespace slpforge {

inline bool member_oracle(const Semigroup& s, std::span<const Element> sigma, Element t) {
  if (t >= s.size()) fail(ErrorKind::OutOfRange, "target " + std::to_string(t) + " outside S");
  if (sigma.empty()) return false;
  return closure(s, sigma).contains(t);
}

struct MembershipAnswer {
  bool member = false;
  std::optional<Slp> certificate;
  bool oracle_agrees = true;
  CostReport cost;
  std::string strategy;
};

/// The oracle decides; members additionally get a verified certificate.
/// Keeps one compressor per (S, Sigma) so repeated queries share its caches.
class MembershipSolver {
 public:
  MembershipSolver(const Semigroup& s, std::span<const Element> sigma, std::string_view strategy = "auto",
                   CompressConfig cfg = {})
      : s_(&s), sigma_(sigma.begin(), sigma.end()), strategy_(strategy), cfg_(cfg) {
    if (!is_strategy_name(strategy))
      fail(ErrorKind::InvalidArgument, "unknown strategy '" + std::string(strategy) + "'");
  }

  MembershipAnswer solve(Element t) {
    MembershipAnswer ans;
    ans.member = member_oracle(*s_, sigma_, t);
    if (!ans.member) return ans;
    try {
      if (!compressor_) compressor_ = std::make_unique<Compressor>(*s_, sigma_, cfg_);
      auto r = compressor_->compress(t, strategy_);
      ans.cost = r.cost;
      ans.strategy = r.strategy;
      ans.certificate = std::move(r.program);
    } catch (const Error& e) {
      fail(ErrorKind::CompressorFailed, strategy_ + " failed on a member: " + e.what());
    }
    ans.oracle_agrees = ans.cost.verified && ans.cost.value == t;
    if (!ans.oracle_agrees) fail(ErrorKind::CompressorFailed, "certificate disagrees with the oracle");
    return ans;
  }

 private:
  const Semigroup* s_;
  std::vector<Element> sigma_;
  std::string strategy_;
  CompressConfig cfg_;
  std::unique_ptr<Compressor> compressor_;
};

inline MembershipAnswer member_certified(const Semigroup& s, std::span<const Element> sigma, Element t,
                                         std::string_view strategy = "auto", CompressConfig cfg = {}) {
  return MembershipSolver(s, sigma, strategy, cfg).solve(t);
}

inline constexpr std::size_t kIrredundancyBudget = 4096;

/// {g in Sigma : t not in <Sigma \ {g}>}.  When this is all of Sigma every
/// program for t loads each generator, so its length is at least |Sigma|.
inline std::vector<Element> irredundancy(const Semigroup& s, std::span<const Element> sigma, Element t,
                                         std::size_t budget = kIrredundancyBudget) {
  if (sigma.size() > budget) fail(ErrorKind::BudgetExceeded, "irredundancy over more than " + std::to_string(budget) + " generators");
  std::vector<Element> gens(sigma.begin(), sigma.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Element> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Element> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (!member_oracle(s, rest, t)) out.push_back(gens[i]);
  }
  return out;
}

}  // namespace slpforge
