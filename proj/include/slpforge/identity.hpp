#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// One side of an identity: a product of variables and parenthesized
/// subterms raised to w or w+1, or the constant zero.
struct OmegaTerm {
  enum class Kind { Variable, Product, OmegaPower, OmegaPlusOne, Zero };

  Kind kind = Kind::Product;
  std::size_t variable = 0;
  std::vector<OmegaTerm> children;

  static OmegaTerm var(std::size_t i) { return {Kind::Variable, i, {}}; }
  static OmegaTerm product(std::vector<OmegaTerm> factors) { return {Kind::Product, 0, std::move(factors)}; }
  static OmegaTerm omega(OmegaTerm t) { return {Kind::OmegaPower, 0, {std::move(t)}}; }
  static OmegaTerm omega_plus_one(OmegaTerm t) { return {Kind::OmegaPlusOne, 0, {std::move(t)}}; }
  static OmegaTerm zero() { return {Kind::Zero, 0, {}}; }

  bool is_zero() const noexcept { return kind == Kind::Zero; }

  std::size_t variable_bound() const {
    if (kind == Kind::Variable) return variable + 1;
    std::size_t m = 0;
    for (const auto& c : children) m = std::max(m, c.variable_bound());
    return m;
  }

  Element evaluate(const Semigroup& s, const std::vector<Element>& assignment) const {
    switch (kind) {
      case Kind::Variable: return assignment[variable];
      case Kind::Product: {
        Element acc = children.front().evaluate(s, assignment);
        for (std::size_t i = 1; i < children.size(); ++i) acc = s.product(acc, children[i].evaluate(s, assignment));
        return acc;
      }
      case Kind::OmegaPower: return s.omega(children.front().evaluate(s, assignment));
      case Kind::OmegaPlusOne: return s.omega_plus_one(children.front().evaluate(s, assignment));
      case Kind::Zero: break;
    }
    fail(ErrorKind::InvalidArgument, "zero has no value under substitution");
  }
};

struct Identity {
  OmegaTerm lhs, rhs;
  std::size_t variable_count = 0;
  std::vector<std::string> variable_names;
};

namespace detail {

class IdentityParser {
 public:
  explicit IdentityParser(std::string_view text) : text_(text) {}

  Identity parse() {
    Identity id;
    id.lhs = side();
    skip_ws();
    if (consume("=") || consume("~")) {
      // accepted separators: "=", "~"
    } else {
      error("expected '='");
    }
    id.rhs = side();
    skip_ws();
    if (pos_ != text_.size()) error("trailing characters");
    if (id.lhs.is_zero() && id.rhs.is_zero()) error("both sides are zero");
    id.variable_count = names_.size();
    id.variable_names.resize(names_.size());
    for (const auto& [name, idx] : names_) id.variable_names[idx] = name;
    return id;
  }

 private:
  OmegaTerm side() {
    skip_ws();
    if (peek() == '0') {
      ++pos_;
      return OmegaTerm::zero();
    }
    return product(false);
  }

  OmegaTerm product(bool nested) {
    std::vector<OmegaTerm> factors;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
        auto f = factor();
        for (auto& g : f) factors.push_back(std::move(g));
      } else {
        break;
      }
    }
    if (factors.empty()) error(nested ? "empty parentheses" : "expected a term");
    if (factors.size() == 1) return std::move(factors.front());
    return OmegaTerm::product(std::move(factors));
  }

  std::vector<OmegaTerm> factor() {
    OmegaTerm base;
    if (peek() == '(') {
      ++pos_;
      base = product(true);
      skip_ws();
      if (!consume(")")) error("expected ')'");
    } else {
      std::string name(1, text_[pos_++]);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) name += text_[pos_++];
      auto [it, inserted] = names_.try_emplace(name, names_.size());
      base = OmegaTerm::var(it->second);
    }
    skip_ws();
    if (!consume("^")) return {std::move(base)};
    skip_ws();
    if (consume("w") || consume("omega")) {
      skip_ws();
      if (consume("+1")) return {OmegaTerm::omega_plus_one(std::move(base))};
      if (consume("+")) {
        skip_ws();
        if (!consume("1")) error("expected 'w+1'");
        return {OmegaTerm::omega_plus_one(std::move(base))};
      }
      return {OmegaTerm::omega(std::move(base))};
    }
    std::size_t k = 0;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      k = k * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
      digits = true;
    }
    if (!digits || k == 0) error("expected exponent");
    return std::vector<OmegaTerm>(k, base);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> names_;
};

}  // namespace detail

/// Parses identities such as "x y x = y x", "x = x^w+1", "(x y)^w z = 0".
/// Variables are letters optionally followed by digits; they are numbered
/// by first appearance.  "x^3" abbreviates "x x x".
inline Identity parse_identity(std::string_view text) { return detail::IdentityParser(text).parse(); }

inline constexpr std::uint64_t kDefaultSubstitutionBudget = 100'000'000;

/// Exhaustive check over all |S|^m substitutions.  A side equal to zero
/// holds iff S has a zero and every substitution of the other side yields it.
inline bool satisfies_identity(const Semigroup& s, const OmegaTerm& lhs, const OmegaTerm& rhs,
                               std::uint64_t budget = kDefaultSubstitutionBudget) {
  const std::size_t m = std::max(lhs.variable_bound(), rhs.variable_bound());
  const std::size_t n = s.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > budget / n) fail(ErrorKind::BudgetExceeded, "identity needs more than " + std::to_string(budget) + " substitutions");
    total *= n;
  }
  if (total > budget) fail(ErrorKind::BudgetExceeded, "identity needs more than " + std::to_string(budget) + " substitutions");

  std::optional<Element> zero;
  if (lhs.is_zero() || rhs.is_zero()) {
    zero = s.zero();
    if (!zero) return false;
  }
  std::vector<Element> assignment(m, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    const Element a = lhs.is_zero() ? *zero : lhs.evaluate(s, assignment);
    const Element b = rhs.is_zero() ? *zero : rhs.evaluate(s, assignment);
    if (a != b) return false;
    for (std::size_t i = 0; i < m; ++i) {
      if (++assignment[i] < n) break;
      assignment[i] = 0;
    }
  }
  return true;
}

inline bool satisfies_identity(const Semigroup& s, const Identity& id, std::uint64_t budget = kDefaultSubstitutionBudget) {
  return satisfies_identity(s, id.lhs, id.rhs, budget);
}

inline bool satisfies_identity(const Semigroup& s, std::string_view text, std::uint64_t budget = kDefaultSubstitutionBudget) {
  return satisfies_identity(s, parse_identity(text), budget);
}

}  // namespace slpforge
