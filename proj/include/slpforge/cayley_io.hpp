#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "slpforge/error.hpp"
#include "slpforge/semigroup.hpp"

namespace slpforge {

/// Contents of a .cay file: the table plus the optional sidecar comments
/// `# NAME`, `# GENS` and `# TARGET`.
struct CayleyFile {
  Semigroup semigroup;
  std::optional<std::vector<Element>> generators;
  std::optional<Element> target;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > j) out.push_back(line.substr(j, i - j));
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    fail(ErrorKind::ParseError, "bad " + std::string(what) + " '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline CayleyFile parse_cayley(std::string_view text) {
  CayleyFile out;
  std::string name;
  std::size_t n = 0;
  bool header = false;
  RawTable raw;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto toks = detail::split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks[0].front() == '#') {
      // "# KEY ..." or "#KEY ..."
      std::vector<std::string_view> rest(toks.begin() + 1, toks.end());
      std::string_view key = toks[0].substr(1);
      if (key.empty() && !rest.empty()) {
        key = rest.front();
        rest.erase(rest.begin());
      }
      if (key == "NAME") {
        const auto at = line.find("NAME");
        std::string_view v = line.substr(at + 4);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.remove_suffix(1);
        name = std::string(v);
      } else if (key == "GENS") {
        std::vector<Element> g;
        for (auto t : rest) g.push_back(static_cast<Element>(detail::parse_uint(t, "generator")));
        out.generators = std::move(g);
      } else if (key == "TARGET" && rest.size() == 1) {
        out.target = static_cast<Element>(detail::parse_uint(rest[0], "target"));
      }
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      if (toks.size() != 2 || toks[0] != "CAYLEY") fail(ErrorKind::ParseError, "expected 'CAYLEY <n>' on line " + std::to_string(line_no));
      n = detail::parse_uint(toks[1], "size");
      if (n == 0) fail(ErrorKind::ParseError, "empty table");
      if (n > kMaxTableElements) fail(ErrorKind::BudgetExceeded, "table of size " + std::to_string(n));
      raw.reserve(n);
      header = true;
    } else {
      if (raw.size() == n) fail(ErrorKind::ParseError, "extra row on line " + std::to_string(line_no));
      if (toks.size() != n) fail(ErrorKind::ParseError, "row on line " + std::to_string(line_no) + " has " +
                                                            std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
      std::vector<Element> row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<Element>(detail::parse_uint(toks[i], "entry"));
      raw.push_back(std::move(row));
    }
    if (end == text.size()) break;
  }
  if (!header) fail(ErrorKind::ParseError, "missing CAYLEY header");
  if (raw.size() != n) fail(ErrorKind::ParseError, "expected " + std::to_string(n) + " rows, got " + std::to_string(raw.size()));
  std::vector<Element> hint;
  if (out.generators)
    for (Element g : *out.generators) {
      if (g >= n) fail(ErrorKind::OutOfRange, "generator " + std::to_string(g));
      hint.push_back(g);
    }
  if (out.target && *out.target >= n) fail(ErrorKind::OutOfRange, "target " + std::to_string(*out.target));
  out.semigroup = validate_table(raw, name, hint);
  return out;
}

/// Canonical form: header, NAME/GENS/TARGET comments, then the rows.
inline std::string format_cayley(const Semigroup& s, const std::optional<std::vector<Element>>& gens = std::nullopt,
                                 std::optional<Element> target = std::nullopt) {
  std::string out = "CAYLEY " + std::to_string(s.size()) + "\n";
  if (!s.name().empty()) out += "# NAME " + s.name() + "\n";
  if (gens) {
    out += "# GENS";
    for (Element g : *gens) out += " " + std::to_string(g);
    out += "\n";
  }
  if (target) out += "# TARGET " + std::to_string(*target) + "\n";
  out.reserve(out.size() + s.size() * s.size() * 5);
  char buf[16];
  for (Element a = 0; a < s.size(); ++a) {
    const auto row = s.row(a);
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (b) out += ' ';
      const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, row[b]);
      out.append(buf, p);
    }
    out += '\n';
  }
  return out;
}

inline std::string format_cayley(const CayleyFile& f) { return format_cayley(f.semigroup, f.generators, f.target); }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::InvalidArgument, "write failed for " + path);
}

inline CayleyFile load_cayley(const std::string& path) { return parse_cayley(read_text_file(path)); }

}  // namespace slpforge
