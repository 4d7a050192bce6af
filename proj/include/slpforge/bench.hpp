#pragma once

// Sweep harness: compress sampled targets over a family of instances and
// emit one CSV row per (instance, target, strategy).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "slpforge/compressors.hpp"
#include "slpforge/families.hpp"

namespace slpforge {

struct BenchSpec {
  std::string family;
  std::vector<std::vector<std::size_t>> param_sets;
  std::vector<std::string> strategies{"auto"};
  std::size_t targets = 8;  ///< per instance; 0 means every element of <Sigma>
  std::uint64_t seed = 1;
  bool timing = false;
  std::size_t threads = 1;
  CompressConfig config;
};

struct BenchRecord {
  std::string family;
  std::string params;
  std::size_t n = 0;
  Element target = 0;
  std::string strategy;
  std::size_t length = 0;
  std::size_t width = 0;
  double log2n = 0;
  bool verified = false;
  double ms = 0;
};

struct BenchOutput {
  std::vector<BenchRecord> rows;
  std::string csv;
  bool all_verified = true;
};

inline constexpr const char* kBenchHeader = "family,params,N,target,strategy,length,width,log2N,verified,ms";

inline std::size_t thread_count_from_env() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* v = std::getenv("SLPFORGE_THREADS")) {
    const long k = std::strtol(v, nullptr, 10);
    if (k >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(k));
  }
  return n;
}

inline std::string join_params(const std::vector<std::size_t>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + std::to_string(p[i]);
  return s;
}

namespace detail {

inline std::vector<Element> sample_targets(const ElementSet& reach, std::size_t want, std::uint64_t seed) {
  auto all = reach.to_vector();
  if (want == 0 || want >= all.size()) return all;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(want);
  std::sort(all.begin(), all.end());
  return all;
}

inline std::vector<BenchRecord> bench_instance(const BenchSpec& spec, std::size_t idx) {
  const auto& params = spec.param_sets[idx];
  const Instance inst = make_family(spec.family, params);
  const auto& s = inst.semigroup;
  Compressor comp(s, inst.generators, spec.config);
  const auto targets = sample_targets(comp.carrier(), spec.targets, spec.seed * 1'000'003u + idx);
  std::vector<BenchRecord> out;
  for (Element t : targets)
    for (const auto& name : spec.strategies) {
      BenchRecord r{spec.family, join_params(params), s.size(), t, name, 0, 0, std::log2(double(s.size())), false, 0};
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto res = comp.compress(t, name);
        r.length = res.cost.length;
        r.width = res.cost.width;
        r.verified = res.cost.verified;
        if (name == "auto") r.strategy = "auto/" + res.strategy;
      } catch (const Error&) {
        r.verified = false;
      }
      if (spec.timing)
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      out.push_back(std::move(r));
    }
  return out;
}

inline std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace detail

// auto rows carry the chosen strategy; summaries group them under auto
inline std::string summary_key(const std::string& strategy) {
  return strategy.starts_with("auto/") ? std::string("auto") : strategy;
}

/// Least-squares line through (log2 N, max length) per strategy.
struct BenchFit {
  std::string strategy;
  double slope = 0, intercept = 0;
  std::size_t points = 0;
};

inline std::vector<BenchFit> fit_max_length(const std::vector<BenchRecord>& rows) {
  std::map<std::string, std::map<std::size_t, std::size_t>> best;
  for (const auto& r : rows)
    if (r.verified) {
      auto& m = best[summary_key(r.strategy)][r.n];
      m = std::max(m, r.length);
    }
  std::vector<BenchFit> fits;
  for (const auto& [name, per_n] : best) {
    BenchFit f{name, 0, 0, per_n.size()};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, len] : per_n) {
      const double x = std::log2(double(n)), y = double(len);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double k = double(per_n.size()), den = k * sxx - sx * sx;
    if (per_n.size() >= 2 && den > 0) {
      f.slope = (k * sxy - sx * sy) / den;
      f.intercept = (sy - f.slope * sx) / k;
    } else if (!per_n.empty()) {
      f.intercept = sy / k;
    }
    fits.push_back(f);
  }
  return fits;
}

inline BenchOutput run_bench(const BenchSpec& spec) {
  for (const auto& name : spec.strategies)
    if (!is_strategy_name(name)) fail(ErrorKind::InvalidArgument, "unknown strategy '" + name + "'");
  const std::size_t m = spec.param_sets.size();
  std::vector<std::vector<BenchRecord>> per(m);
  std::vector<std::string> errors(m);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < m; i = next++) {
      try {
        per[i] = detail::bench_instance(spec, i);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t nt = std::max<std::size_t>(1, std::min(spec.threads, m));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!errors[i].empty())
      fail(ErrorKind::InvalidArgument, spec.family + " " + join_params(spec.param_sets[i]) + ": " + errors[i]);
  BenchOutput out;
  for (auto& v : per)
    for (auto& r : v) out.rows.push_back(std::move(r));
  out.csv = std::string(kBenchHeader) + "\n";
  for (const auto& r : out.rows) {
    out.csv += r.family + "," + r.params + "," + std::to_string(r.n) + "," + std::to_string(r.target) + "," + r.strategy +
               "," + std::to_string(r.length) + "," + std::to_string(r.width) + "," + detail::format_double(r.log2n, 4) +
               "," + (r.verified ? "true" : "false") + "," + detail::format_double(r.ms, 3) + "\n";
    out.all_verified = out.all_verified && r.verified;
  }
  if (!out.rows.empty()) {
    std::map<std::pair<std::string, std::size_t>, std::pair<std::size_t, std::size_t>> best;
    for (const auto& r : out.rows)
      if (r.verified) {
        auto& b = best[{summary_key(r.strategy), r.n}];
        b.first = std::max(b.first, r.length);
        b.second = std::max(b.second, r.width);
      }
    out.csv += "# max,strategy,N,length,width\n";
    for (const auto& [key, v] : best)
      out.csv += "# max," + key.first + "," + std::to_string(key.second) + "," + std::to_string(v.first) + "," +
                 std::to_string(v.second) + "\n";
    out.csv += "# fit,strategy,slope,intercept,points\n";
    for (const auto& f : fit_max_length(out.rows))
      out.csv += "# fit," + f.strategy + "," + detail::format_double(f.slope, 4) + "," +
                 detail::format_double(f.intercept, 4) + "," + std::to_string(f.points) + "\n";
  }
  return out;
}

}  // namespace slpforge
