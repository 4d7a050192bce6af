#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "slpforge/algebra.hpp"
#include "slpforge/element_set.hpp"
#include "slpforge/error.hpp"
#include "slpforge/grouplab.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

enum class Op : std::uint8_t { Load, Mul, Inv };

/// LOAD: dst <- alphabet[a].  MUL: dst <- a * b.  INV: dst <- a^-1.
struct Instruction {
  Op op = Op::Load;
  std::uint32_t dst = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Slp {
  std::vector<Element> alphabet;
  std::vector<Instruction> code;
  std::uint32_t output = 0;

  std::size_t length() const noexcept { return code.size(); }

  /// Number of distinct registers referenced by any instruction.
  std::size_t width() const {
    std::vector<std::uint32_t> regs;
    for (const auto& in : code) {
      regs.push_back(in.dst);
      if (in.op != Op::Load) regs.push_back(in.a);
      if (in.op == Op::Mul) regs.push_back(in.b);
    }
    std::sort(regs.begin(), regs.end());
    return static_cast<std::size_t>(std::unique(regs.begin(), regs.end()) - regs.begin());
  }

  bool uses_inverse() const {
    return std::any_of(code.begin(), code.end(), [](const Instruction& in) { return in.op == Op::Inv; });
  }

  std::size_t load_count() const {
    return static_cast<std::size_t>(
        std::count_if(code.begin(), code.end(), [](const Instruction& in) { return in.op == Op::Load; }));
  }

  friend bool operator==(const Slp&, const Slp&) = default;
};

/// Static check: symbols in range and every register read after assignment.
inline void check_program(const Slp& p) {
  if (p.code.empty()) fail(ErrorKind::InvalidProgram, "empty program");
  std::vector<bool> assigned;
  auto touch = [&](std::uint32_t r) {
    if (r >= assigned.size()) assigned.resize(r + 1, false);
  };
  for (std::size_t i = 0; i < p.code.size(); ++i) {
    const auto& in = p.code[i];
    auto need = [&](std::uint32_t r) {
      touch(r);
      if (!assigned[r])
        fail(ErrorKind::InvalidProgram, "instruction " + std::to_string(i) + " reads unassigned register r" + std::to_string(r));
    };
    switch (in.op) {
      case Op::Load:
        if (in.a >= p.alphabet.size())
          fail(ErrorKind::InvalidProgram, "instruction " + std::to_string(i) + " loads unknown symbol " + std::to_string(in.a));
        break;
      case Op::Mul:
        need(in.a);
        need(in.b);
        break;
      case Op::Inv: need(in.a); break;
    }
    touch(in.dst);
    assigned[in.dst] = true;
  }
  touch(p.output);
  if (!assigned[p.output]) fail(ErrorKind::InvalidProgram, "output register r" + std::to_string(p.output) + " never assigned");
}

struct EvalTrace {
  Element output = kNoElement;
  std::vector<Element> registers;  ///< final register contents (kNoElement if unassigned)
  std::vector<Element> log;        ///< value written by each instruction
  std::vector<Element> value_set;  ///< sorted distinct values ever assigned
};

template <class S>
concept HasGroupInverse = requires(const S& s, Element x) {
  { s.group_inverse(x) } -> std::convertible_to<Element>;
};

template <FiniteSemigroup S>
EvalTrace evaluate(const S& s, const Slp& p) {
  check_program(p);
  for (Element e : p.alphabet)
    if (e >= s.size()) fail(ErrorKind::InvalidProgram, "alphabet element " + std::to_string(e) + " outside the semigroup");
  EvalTrace tr;
  std::uint32_t regs = p.output + 1;
  for (const auto& in : p.code) regs = std::max({regs, in.dst + 1, in.a + 1, in.b + 1});
  tr.registers.assign(regs, kNoElement);
  tr.log.reserve(p.code.size());
  for (const auto& in : p.code) {
    Element v = kNoElement;
    switch (in.op) {
      case Op::Load: v = p.alphabet[in.a]; break;
      case Op::Mul: v = s.product(tr.registers[in.a], tr.registers[in.b]); break;
      case Op::Inv:
        if constexpr (HasGroupInverse<S>) {
          v = s.group_inverse(tr.registers[in.a]);
          if (v == kNoElement)
            fail(ErrorKind::InverseOutsideGroup, "element " + std::to_string(tr.registers[in.a]) + " lies in no subgroup");
        } else {
          fail(ErrorKind::InverseOutsideGroup, "semigroup model has no group inverses");
        }
        break;
    }
    tr.registers[in.dst] = v;
    tr.log.push_back(v);
  }
  tr.output = tr.registers[p.output];
  tr.value_set = tr.log;
  std::sort(tr.value_set.begin(), tr.value_set.end());
  tr.value_set.erase(std::unique(tr.value_set.begin(), tr.value_set.end()), tr.value_set.end());
  return tr;
}

/// Evaluation inside a group G: INV is the inverse in G, and every value
/// must stay in G.
inline EvalTrace evaluate(const GroupView& g, const Slp& p) {
  const auto tr = evaluate(g.base(), p);
  for (Element v : tr.value_set)
    if (!g.contains(v)) fail(ErrorKind::InverseOutsideGroup, "value " + std::to_string(v) + " leaves the group");
  return tr;
}

struct CostReport {
  std::size_t length = 0;
  std::size_t width = 0;
  std::string strategy;
  bool verified = false;
  Element value = kNoElement;
};

template <FiniteSemigroup S>
CostReport verify(const S& s, const Slp& p, Element t, std::string strategy = {}) {
  const auto tr = evaluate(s, p);
  return {p.length(), p.width(), std::move(strategy), tr.output == t, tr.output};
}

// ------------------------------------------------------------- builder

/// SSA construction of programs.  Every emitted instruction defines a fresh
/// value; finish() removes dead code and assigns registers by optimal
/// interval colouring (a dying operand's register may hold the result), so
/// the width equals the maximum number of simultaneously live values.
class SlpBuilder {
 public:
  using Value = std::uint32_t;

  SlpBuilder() = default;
  explicit SlpBuilder(std::span<const Element> alphabet) {
    for (Element e : alphabet) symbol(e);
  }

  std::uint32_t symbol(Element e) {
    const auto [it, inserted] = symbols_.try_emplace(e, static_cast<std::uint32_t>(alphabet_.size()));
    if (inserted) alphabet_.push_back(e);
    return it->second;
  }

  Value load_symbol(std::uint32_t sym) { return push({Op::Load, sym, 0}); }
  Value load(Element e) { return load_symbol(symbol(e)); }
  Value mul(Value a, Value b) {
    check(a);
    check(b);
    return push({Op::Mul, a, b});
  }
  Value inv(Value a) {
    check(a);
    return push({Op::Inv, a, 0});
  }

  /// Product of a non-empty sequence, left to right.
  Value product(std::span<const Value> vs) {
    if (vs.empty()) fail(ErrorKind::InvalidArgument, "empty product");
    Value acc = vs[0];
    for (std::size_t i = 1; i < vs.size(); ++i) acc = mul(acc, vs[i]);
    return acc;
  }

  /// x^n, n >= 1, by MSB-first square and multiply: (L-1) squarings and
  /// popcount(n)-1 multiplications for an L-bit exponent.
  Value power(Value x, std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "exponent must be positive");
    if (n == 1) return x;
    const int top = 63 - std::countl_zero(n);
    Value acc = mul(x, x);
    if ((n >> (top - 1)) & 1u) acc = mul(acc, x);
    for (int bit = top - 2; bit >= 0; --bit) {
      acc = mul(acc, acc);
      if ((n >> bit) & 1u) acc = mul(acc, x);
    }
    return acc;
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Element>& alphabet() const noexcept { return alphabet_; }

  Slp finish(Value out) const {
    check(out);
    const std::size_t n = nodes_.size();
    std::vector<bool> live(n, false);
    live[out] = true;
    for (std::size_t i = n; i-- > 0;) {
      if (!live[i]) continue;
      const Node& nd = nodes_[i];
      if (nd.op != Op::Load) live[nd.a] = true;
      if (nd.op == Op::Mul) live[nd.b] = true;
    }
    constexpr std::size_t kForever = static_cast<std::size_t>(-1);
    std::vector<std::size_t> last_use(n, 0);
    last_use[out] = kForever;
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i]) continue;
      const Node& nd = nodes_[i];
      if (nd.op != Op::Load && last_use[nd.a] != kForever) last_use[nd.a] = i;
      if (nd.op == Op::Mul && last_use[nd.b] != kForever) last_use[nd.b] = i;
    }
    Slp p;
    std::vector<std::uint32_t> sym_map(alphabet_.size(), static_cast<std::uint32_t>(-1));
    std::vector<std::uint32_t> reg(n, 0);
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> free_regs;
    std::uint32_t next_reg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i]) continue;
      const Node& nd = nodes_[i];
      Instruction in{nd.op, 0, 0, 0};
      if (nd.op == Op::Load) {
        if (sym_map[nd.a] == static_cast<std::uint32_t>(-1)) {
          sym_map[nd.a] = static_cast<std::uint32_t>(p.alphabet.size());
          p.alphabet.push_back(alphabet_[nd.a]);
        }
        in.a = sym_map[nd.a];
      } else {
        in.a = reg[nd.a];
        if (nd.op == Op::Mul) in.b = reg[nd.b];
        if (last_use[nd.a] == i) free_regs.push(reg[nd.a]);
        if (nd.op == Op::Mul && nd.b != nd.a && last_use[nd.b] == i) free_regs.push(reg[nd.b]);
      }
      if (free_regs.empty()) {
        reg[i] = next_reg++;
      } else {
        reg[i] = free_regs.top();
        free_regs.pop();
      }
      in.dst = reg[i];
      p.code.push_back(in);
    }
    p.output = reg[out];
    return p;
  }

 private:
  struct Node {
    Op op;
    std::uint32_t a, b;
  };

  Value push(Node nd) {
    nodes_.push_back(nd);
    return static_cast<Value>(nodes_.size() - 1);
  }
  void check(Value v) const {
    if (v >= nodes_.size()) fail(ErrorKind::InvalidProgram, "unknown value " + std::to_string(v));
  }

  std::vector<Node> nodes_;
  std::vector<Element> alphabet_;
  std::map<Element, std::uint32_t> symbols_;
};

using Value = SlpBuilder::Value;

/// Maps a symbol of an imported program to a value in the target builder.
using LeafProvider = std::function<Value(std::uint32_t symbol)>;

struct Imported {
  Value output;
  std::vector<std::optional<Value>> registers;  ///< register contents after the last instruction
  std::vector<Value> values;                    ///< value written by each instruction
};

/// Replays p into b; LOADs are served by `leaf`, INVs are emitted as INV.
inline Imported import_program(SlpBuilder& b, const Slp& p, const LeafProvider& leaf) {
  check_program(p);
  Imported out;
  std::uint32_t regs = p.output + 1;
  for (const auto& in : p.code) regs = std::max({regs, in.dst + 1, in.a + 1, in.b + 1});
  out.registers.assign(regs, std::nullopt);
  for (const auto& in : p.code) {
    Value v = 0;
    switch (in.op) {
      case Op::Load: v = leaf(in.a); break;
      case Op::Mul: v = b.mul(*out.registers[in.a], *out.registers[in.b]); break;
      case Op::Inv: v = b.inv(*out.registers[in.a]); break;
    }
    out.registers[in.dst] = v;
    out.values.push_back(v);
  }
  out.output = *out.registers[p.output];
  return out;
}

inline LeafProvider plain_leaves(SlpBuilder& b, const Slp& p) {
  return [&b, &p](std::uint32_t sym) { return b.load(p.alphabet[sym]); };
}

// ------------------------------------------------------- basic programs

/// Square-and-multiply program for symbol^n on exactly two registers
/// (r0 keeps the base; a single LOAD when n = 1).  Written out directly:
/// the allocator would fold powers of two into one register.
inline Slp fast_exp(Element symbol, std::uint64_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "exponent must be positive");
  Slp p{{symbol}, {{Op::Load, 0, 0, 0}}, 0};
  if (n == 1) return p;
  const int top = 63 - std::countl_zero(n);
  p.code.push_back({Op::Mul, 1, 0, 0});
  if ((n >> (top - 1)) & 1u) p.code.push_back({Op::Mul, 1, 1, 0});
  for (int bit = top - 2; bit >= 0; --bit) {
    p.code.push_back({Op::Mul, 1, 1, 1});
    if ((n >> bit) & 1u) p.code.push_back({Op::Mul, 1, 1, 0});
  }
  p.output = 1;
  return p;
}

/// Left-to-right product of a word over `gens`: 2|w| - 1 instructions, width 2.
inline Slp word_program(std::span<const Element> gens, const Word& w) {
  if (w.empty()) fail(ErrorKind::InvalidArgument, "empty word");
  SlpBuilder b;
  Value acc = b.load(gens[w[0]]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = b.mul(acc, b.load(gens[w[i]]));
  return b.finish(acc);
}

// ------------------------------------------------------- composition

/// Runs `sub` first, then `main`, where every LOAD in `main` of an element in
/// `delta` is served by a value of `sub` holding that element (a register
/// still holding it at the end of `sub` when there is one).
template <FiniteSemigroup S>
Slp append_compose(const S& s, const Slp& main, const Slp& sub, std::span<const Element> delta) {
  const auto trace = evaluate(s, sub);
  SlpBuilder b;
  const auto imp = import_program(b, sub, plain_leaves(b, sub));
  std::map<Element, Value> holder;
  for (std::size_t i = 0; i < trace.log.size(); ++i) holder.emplace(trace.log[i], imp.values[i]);
  for (std::size_t r = 0; r < imp.registers.size(); ++r)
    if (imp.registers[r] && trace.registers[r] != kNoElement) holder[trace.registers[r]] = *imp.registers[r];
  const ElementSet dset(s.size(), delta);
  const auto res = import_program(b, main, [&](std::uint32_t sym) -> Value {
    const Element e = main.alphabet[sym];
    if (!dset.contains(e)) return b.load(e);
    const auto it = holder.find(e);
    if (it == holder.end()) fail(ErrorKind::MissingSubvalue, "no value of the subprogram equals " + std::to_string(e));
    return it->second;
  });
  return b.finish(res.output);
}

/// Replaces every LOAD of a symbol with a subprogram by a fresh copy of
/// that subprogram.
inline Slp inline_subroutine(const Slp& main, const std::map<Element, Slp>& subs) {
  SlpBuilder b;
  std::function<Value(const Slp&, std::uint32_t)> leaf;
  const auto res = import_program(b, main, [&](std::uint32_t sym) -> Value {
    const Element e = main.alphabet[sym];
    const auto it = subs.find(e);
    if (it == subs.end()) return b.load(e);
    return import_program(b, it->second, plain_leaves(b, it->second)).output;
  });
  return b.finish(res.output);
}

/// As inline_subroutine, but only the listed symbols must have subprograms;
/// missing ones are an error.
inline Slp inline_subroutine(const Slp& main, const std::map<Element, Slp>& subs, std::span<const Element> delta) {
  for (Element e : delta)
    if (!subs.count(e)) fail(ErrorKind::MissingSubprogram, "no subprogram for symbol " + std::to_string(e));
  return inline_subroutine(main, subs);
}

// ----------------------------------------------------- inverse elimination

/// Emits, into b, values for the inverses of `gens` (a list of group
/// elements) with the prefix/suffix construction
///   h_i = g_1...g_i, k_i = g_i...g_n, gbar = h_n^(ord-1), g_i^-1 = k_(i+1) gbar h_(i-1).
/// `load` supplies the value of each g_i.
inline std::vector<Value> emit_generator_inverses(SlpBuilder& b, const GroupView& g, std::span<const Element> gens,
                                                  std::span<const Value> load) {
  const std::size_t n = gens.size();
  std::vector<Value> inv(n);
  if (n == 0) return inv;
  std::vector<Value> h(n), k(n);
  std::vector<Element> hv(n);
  h[0] = load[0];
  hv[0] = gens[0];
  for (std::size_t i = 1; i < n; ++i) {
    h[i] = b.mul(h[i - 1], load[i]);
    hv[i] = g.product(hv[i - 1], gens[i]);
  }
  k[n - 1] = load[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) k[i] = b.mul(load[i], k[i + 1]);
  const std::uint32_t ord = g.element_order(hv[n - 1]);
  const bool trivial = ord == 1;  // h_n is the identity
  std::optional<Value> gbar;
  if (!trivial) gbar = ord == 2 ? h[n - 1] : b.power(h[n - 1], ord - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Value> acc;
    if (i + 1 < n) acc = k[i + 1];
    if (gbar) acc = acc ? b.mul(*acc, *gbar) : *gbar;
    if (i > 0) acc = acc ? b.mul(*acc, h[i - 1]) : h[i - 1];
    if (!acc) {
      // n == 1 and g_1 = h_1 is the identity: its own inverse
      acc = load[0];
    }
    inv[i] = *acc;
  }
  return inv;
}

/// Turns a group SLP into an ordinary SLP computing the same element.  Every
/// value is mirrored by its inverse; INV swaps the pair, so it costs nothing.
inline Slp eliminate_inverses(const GroupView& g, const Slp& prog) {
  check_program(prog);
  for (Element e : prog.alphabet)
    if (!g.contains(e)) fail(ErrorKind::InvalidProgram, "alphabet element " + std::to_string(e) + " outside the group");
  if (!prog.uses_inverse()) {
    SlpBuilder b;
    return b.finish(import_program(b, prog, plain_leaves(b, prog)).output);
  }
  std::vector<Element> loaded;
  for (const auto& in : prog.code)
    if (in.op == Op::Load) loaded.push_back(prog.alphabet[in.a]);
  const auto basis = minimal_generating_subset(g, loaded);

  SlpBuilder b;
  std::vector<Value> basis_vals;
  for (Element x : basis) basis_vals.push_back(b.load(x));
  const auto basis_inv = emit_generator_inverses(b, g, basis, basis_vals);
  std::map<Element, Value> inv_of;
  for (std::size_t i = 0; i < basis.size(); ++i) inv_of.emplace(basis[i], basis_inv[i]);

  // Inverse of a symbol outside the basis: the cheaper of x^(ord-1) and the
  // reversed shortest word over basis inverses.
  std::optional<WordTable> words;
  auto symbol_inverse = [&](Element x, Value xv) -> Value {
    if (auto it = inv_of.find(x); it != inv_of.end()) return it->second;
    const std::uint32_t ord = g.element_order(x);
    const std::size_t power_cost = ord <= 2 ? 0 : static_cast<std::size_t>(std::bit_width(ord - 1u) - 1 + std::popcount(ord - 1u) - 1);
    if (!words) words.emplace(g.base(), std::span<const Element>(basis));
    const auto w = words->word(x);
    Value v;
    if (w && w->size() - 1 < power_cost) {
      v = inv_of.at(basis[w->back()]);
      for (std::size_t i = w->size() - 1; i-- > 0;) v = b.mul(v, inv_of.at(basis[(*w)[i]]));
    } else {
      v = ord <= 2 ? xv : b.power(xv, ord - 1);
    }
    inv_of.emplace(x, v);
    return v;
  };

  struct Pair {
    Value fwd, inv;
  };
  std::vector<std::optional<Pair>> regs(prog.output + 1);
  for (const auto& in : prog.code)
    regs.resize(std::max<std::size_t>(regs.size(), std::max({in.dst, in.a, in.b}) + 1));
  for (const auto& in : prog.code) {
    switch (in.op) {
      case Op::Load: {
        // reloading keeps the setup values short-lived; only the inverses stay pinned
        const Element x = prog.alphabet[in.a];
        const Value fwd = b.load(x);
        regs[in.dst] = Pair{fwd, symbol_inverse(x, fwd)};
        break;
      }
      case Op::Mul: {
        const Pair a = *regs[in.a], c = *regs[in.b];
        regs[in.dst] = Pair{b.mul(a.fwd, c.fwd), b.mul(c.inv, a.inv)};
        break;
      }
      case Op::Inv: {
        const Pair a = *regs[in.a];
        regs[in.dst] = Pair{a.inv, a.fwd};
        break;
      }
    }
  }
  return b.finish(regs[prog.output]->fwd);
}

// ------------------------------------------------------------ file format

inline std::string format_slp(const Slp& p) {
  std::string out = "SLP\nA";
  for (Element e : p.alphabet) out += " " + std::to_string(e);
  out += "\n";
  for (const auto& in : p.code) {
    switch (in.op) {
      case Op::Load: out += "L " + std::to_string(in.dst) + " " + std::to_string(in.a) + "\n"; break;
      case Op::Mul:
        out += "M " + std::to_string(in.dst) + " " + std::to_string(in.a) + " " + std::to_string(in.b) + "\n";
        break;
      case Op::Inv: out += "I " + std::to_string(in.dst) + " " + std::to_string(in.a) + "\n"; break;
    }
  }
  out += "O " + std::to_string(p.output) + "\n";
  return out;
}

inline Slp parse_slp(std::string_view text) {
  Slp p;
  std::size_t pos = 0, line_no = 0;
  bool header = false, alphabet = false, done = false;
  auto num = [&](std::string_view tok) {
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      fail(ErrorKind::ParseError, "bad number '" + std::string(tok) + "' on line " + std::to_string(line_no));
    return v;
  };
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::vector<std::string_view> t;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      const std::size_t j = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (i > j) t.push_back(line.substr(j, i - j));
    }
    if (t.empty() || t[0].front() == '#') continue;
    if (done) fail(ErrorKind::ParseError, "content after the output line");
    auto arity = [&](std::size_t k) {
      if (t.size() != k) fail(ErrorKind::ParseError, "wrong operand count on line " + std::to_string(line_no));
    };
    if (!header) {
      if (t.size() != 1 || t[0] != "SLP") fail(ErrorKind::ParseError, "expected 'SLP' header");
      header = true;
    } else if (!alphabet) {
      if (t[0] != "A") fail(ErrorKind::ParseError, "expected alphabet line");
      for (std::size_t i = 1; i < t.size(); ++i) p.alphabet.push_back(num(t[i]));
      alphabet = true;
    } else if (t[0] == "L") {
      arity(3);
      p.code.push_back({Op::Load, num(t[1]), num(t[2]), 0});
    } else if (t[0] == "M") {
      arity(4);
      p.code.push_back({Op::Mul, num(t[1]), num(t[2]), num(t[3])});
    } else if (t[0] == "I") {
      arity(3);
      p.code.push_back({Op::Inv, num(t[1]), num(t[2]), 0});
    } else if (t[0] == "O") {
      arity(2);
      p.output = num(t[1]);
      done = true;
    } else {
      fail(ErrorKind::ParseError, "unknown instruction '" + std::string(t[0]) + "' on line " + std::to_string(line_no));
    }
  }
  if (!done) fail(ErrorKind::ParseError, "missing output line");
  check_program(p);
  return p;
}

}  // namespace slpforge
