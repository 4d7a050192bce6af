#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slpforge/bench.hpp"
#include "slpforge/cayley_io.hpp"
#include "slpforge/compressors.hpp"
#include "slpforge/families.hpp"
#include "slpforge/membership.hpp"

using namespace slpforge;

namespace {

constexpr int kExitInput = 2;

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    out.push_back(detail::parse_uint(std::string_view(text).substr(pos, end - pos), what));
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(sep, pos);
    if (end == std::string::npos) end = text.size();
    if (end > pos) out.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

struct Common {
  std::string cayley, gens;
  std::optional<Element> target;
  std::size_t kmax = 6;
  std::uint64_t budget = 100'000'000;
  std::string band_mode = "wide";

  void add_input(CLI::App* app) {
    app->add_option("--cayley", cayley, "Cayley table file (.cay)")->required();
    app->add_option("--gens", gens, "comma-separated generators, overrides the # GENS line");
    app->add_option("--target", target, "target element, overrides the # TARGET line");
  }
  void add_config(CLI::App* app) {
    app->add_option("--kmax", kmax, "largest level tried by the identity scans");
    app->add_option("--budget", budget, "work budget for exhaustive scans");
    app->add_option("--band-mode", band_mode, "normal band splicing: wide or narrow")
        ->check(CLI::IsMember({"wide", "narrow"}));
  }
  CompressConfig config() const {
    CompressConfig c;
    c.kmax = kmax;
    c.budget = budget;
    c.band_mode = band_mode == "narrow" ? BandMode::Narrow : BandMode::Wide;
    return c;
  }
};

struct Loaded {
  CayleyFile file;
  std::vector<Element> gens;
};

Loaded load(const Common& c) {
  Loaded l{load_cayley(c.cayley), {}};
  if (!c.gens.empty()) {
    for (auto g : parse_list(c.gens, "generator")) l.gens.push_back(static_cast<Element>(g));
  } else if (l.file.generators) {
    l.gens = *l.file.generators;
  } else {
    l.gens = l.file.semigroup.generating_set();
  }
  for (Element g : l.gens)
    if (g >= l.file.semigroup.size()) fail(ErrorKind::OutOfRange, "generator " + std::to_string(g) + " outside S");
  return l;
}

Element target_of(const Common& c, const Loaded& l) {
  if (c.target) {
    if (*c.target >= l.file.semigroup.size())
      fail(ErrorKind::OutOfRange, "target " + std::to_string(*c.target) + " outside S");
    return *c.target;
  }
  if (l.file.target) return *l.file.target;
  fail(ErrorKind::InvalidArgument, "no --target given and no # TARGET line in " + c.cayley);
}

std::string flag(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "unknown"; }

std::string level(const std::optional<std::size_t>& k, bool known) {
  if (!known) return "unknown";
  return k ? std::to_string(*k) : "none";
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slpforge: straight-line programs over finite semigroups"};
  app.require_subcommand(1);

  // gen
  std::string family, params, out;
  std::optional<std::size_t> n_param;
  std::optional<Element> gen_target;
  auto* gen = app.add_subcommand("gen", "write a zoo member as a .cay file");
  gen->add_option("--family", family, "family name (see zoo)")->required();
  gen->add_option("--params", params, "comma-separated parameters");
  gen->add_option("--n", n_param, "single parameter");
  gen->add_option("--target", gen_target, "target written to the # TARGET line");
  gen->add_option("--out", out, "output file (default stdout)");

  // classify
  Common cls;
  auto* classify_cmd = app.add_subcommand("classify", "report the identities of <Sigma>");
  cls.add_input(classify_cmd);
  cls.add_config(classify_cmd);

  // compress
  Common cmp;
  std::string strategy = "auto", slp_out;
  std::uint64_t seed = 1;
  auto* compress = app.add_subcommand("compress", "compress a target into an SLP");
  cmp.add_input(compress);
  cmp.add_config(compress);
  compress->add_option("--strategy", strategy, "strategy name")->check(CLI::IsMember(strategy_names()));
  compress->add_option("--out", slp_out, "output .slp file (default stdout)");
  compress->add_option("--seed", seed, "accepted for uniformity; compression is deterministic");

  // verify
  Common ver;
  std::string slp_in;
  auto* verify_cmd = app.add_subcommand("verify", "check that an SLP evaluates to the target");
  ver.add_input(verify_cmd);
  verify_cmd->add_option("--slp", slp_in, "program file (.slp)")->required();

  // member
  Common mem;
  std::string member_strategy = "auto", cert_out;
  auto* member = app.add_subcommand("member", "decide membership; exit 0 member, 1 non-member, 2 input error");
  mem.add_input(member);
  mem.add_config(member);
  member->add_option("--strategy", member_strategy, "certificate strategy")->check(CLI::IsMember(strategy_names()));
  member->add_option("--out", cert_out, "write the certificate here");

  // zoo
  auto* zoo = app.add_subcommand("zoo", "list the families known to gen and bench");

  // bench
  BenchSpec bench_spec;
  std::string bench_params, bench_prefix, bench_range, bench_sets, bench_strategies = "auto", bench_out;
  std::size_t bench_kmax = 6;
  std::uint64_t bench_budget = 100'000'000;
  auto* bench = app.add_subcommand("bench", "sweep a family and write CSV");
  bench->add_option("--family", bench_spec.family, "family name")->required();
  bench->add_option("--params", bench_params, "one instance: comma-separated parameters");
  bench->add_option("--range", bench_range, "lo..hi: one instance per value, appended to --prefix");
  bench->add_option("--prefix", bench_prefix, "comma-separated parameters placed before the --range value");
  bench->add_option("--param-sets", bench_sets, "instances separated by ';', parameters by ','");
  bench->add_option("--strategies", bench_strategies, "comma-separated strategies");
  bench->add_option("--targets", bench_spec.targets, "targets per instance (0 = all)");
  bench->add_option("--seed", bench_spec.seed, "sampling seed");
  bench->add_flag("--timing", bench_spec.timing, "record wall time (otherwise ms = 0)");
  bench->add_option("--out", bench_out, "CSV file (default stdout)");
  bench->add_option("--kmax", bench_kmax, "largest level tried by the identity scans");
  bench->add_option("--budget", bench_budget, "work budget for exhaustive scans");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (gen->parsed()) {
      std::vector<std::size_t> p = parse_list(params, "parameter");
      if (n_param) p.push_back(*n_param);
      const Instance inst = make_family(family, p);
      std::optional<Element> t = gen_target ? gen_target : inst.target;
      if (t && *t >= inst.semigroup.size()) fail(ErrorKind::OutOfRange, "target outside S");
      emit(out, format_cayley(inst.semigroup, inst.generators, t));
      return 0;
    }
    if (classify_cmd->parsed()) {
      const auto l = load(cls);
      const auto r = slpforge::classify(l.file.semigroup, l.gens, cls.config());
      std::cout << "size: " << r.size << "\n"
                << "diameter: " << r.diameter << "\n"
                << "completely-regular: " << flag(r.completely_regular) << "\n"
                << "band: " << flag(r.band) << "\n"
                << "normal-band: " << flag(r.normal_band) << "\n"
                << "left-regular-band: " << flag(r.left_regular_band) << "\n"
                << "right-regular-band: " << flag(r.right_regular_band) << "\n"
                << "group: " << flag(r.group) << "\n"
                << "solvable: " << (r.group == false ? std::string("n/a") : flag(r.solvable)) << "\n"
                << "band-of-groups: " << flag(r.decomposition) << "\n"
                << "commutation-level: " << level(r.commutation_level, r.commutation_known) << "\n"
                << "sandwich-level: " << level(r.sandwich_level, r.sandwich_known) << "\n"
                << "nilpotency: " << r.nilpotency << "\n"
                << "recommended: " << join(r.recommended) << "\n";
      return 0;
    }
    if (compress->parsed()) {
      const auto l = load(cmp);
      const Element t = target_of(cmp, l);
      Compressor c(l.file.semigroup, l.gens, cmp.config());
      const auto r = c.compress(t, strategy);
      emit(slp_out, format_slp(r.program));
      std::fprintf(stderr, "strategy=%s length=%zu width=%zu\n", r.strategy.c_str(), r.cost.length, r.cost.width);
      return 0;
    }
    if (verify_cmd->parsed()) {
      const auto l = load(ver);
      const Element t = target_of(ver, l);
      const Slp p = parse_slp(read_text_file(slp_in));
      for (Element a : p.alphabet)
        if (a >= l.file.semigroup.size()) fail(ErrorKind::OutOfRange, "program loads " + std::to_string(a));
      const auto r = verify(l.file.semigroup, p, t);
      std::cout << (r.verified ? "verified" : "mismatch") << " value=" << r.value << " length=" << r.length
                << " width=" << r.width << "\n";
      return r.verified ? 0 : 1;
    }
    if (member->parsed()) {
      const auto l = load(mem);
      const Element t = target_of(mem, l);
      const auto ans = member_certified(l.file.semigroup, l.gens, t, member_strategy, mem.config());
      if (!ans.member) {
        std::cout << "non-member\n";
        return 1;
      }
      std::cout << "member strategy=" << ans.strategy << " length=" << ans.cost.length << " width=" << ans.cost.width
                << "\n";
      if (!cert_out.empty()) emit(cert_out, format_slp(*ans.certificate));
      return 0;
    }
    if (zoo->parsed()) {
      for (const auto& f : family_list()) std::printf("%-20s %-10s %s\n", f.name.c_str(), f.params.c_str(), f.about.c_str());
      return 0;
    }
    if (bench->parsed()) {
      if (!bench_params.empty()) bench_spec.param_sets.push_back(parse_list(bench_params, "parameter"));
      for (const auto& set : split(bench_sets, ';')) bench_spec.param_sets.push_back(parse_list(set, "parameter"));
      if (!bench_range.empty()) {
        const auto dots = bench_range.find("..");
        if (dots == std::string::npos) fail(ErrorKind::InvalidArgument, "--range expects lo..hi");
        const auto lo = detail::parse_uint(std::string_view(bench_range).substr(0, dots), "range bound");
        const auto hi = detail::parse_uint(std::string_view(bench_range).substr(dots + 2), "range bound");
        const auto prefix = parse_list(bench_prefix, "parameter");
        for (auto v = lo; v <= hi; ++v) {
          auto p = prefix;
          p.push_back(v);
          bench_spec.param_sets.push_back(std::move(p));
        }
      }
      bench_spec.strategies = split(bench_strategies, ',');
      bench_spec.threads = thread_count_from_env();
      bench_spec.config.kmax = bench_kmax;
      bench_spec.config.budget = bench_budget;
      const auto r = run_bench(bench_spec);
      emit(bench_out, r.csv);
      return r.all_verified ? 0 : 1;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
