#pragma once

// Named zoo families with integer parameters, as used by the command line.

#include <optional>
#include <string>
#include <vector>

#include "slpforge/zoo.hpp"

namespace slpforge {

struct Instance {
  Semigroup semigroup;
  std::vector<Element> generators;
  std::optional<Element> target;
};

struct FamilyInfo {
  std::string name;
  std::string params;
  std::string about;
};

inline const std::vector<FamilyInfo>& family_list() {
  static const std::vector<FamilyInfo> list{
      {"cyclic", "m", "Z_m"},
      {"abelian", "m1,...,md", "Z_m1 x ... x Z_md, unit vectors"},
      {"abelian-power", "m,d", "Z_m^d, unit vectors"},
      {"dihedral", "m", "symmetries of the m-gon, order 2m"},
      {"heisenberg", "p", "unitriangular 3x3 over Z_p"},
      {"sym", "n", "S_n, n <= 5"},
      {"alt", "n", "A_n, n <= 5"},
      {"lrb-witness", "n", "intervals of [n], left regular"},
      {"rrb-witness", "n", "intervals of [n], right regular"},
      {"t-witness", "n", "intervals of [n] with zero"},
      {"u-witness", "n", "subsets of [n] with zero, disjoint union"},
      {"power-witness", "m,n", "<s_1..s_n> in (Z_m)^n, s = 1"},
      {"semilattice", "n", "subsets of [n] under union"},
      {"rb", "p,q", "rectangular band"},
      {"rb-group", "p,q,m", "RB(p,q) x Z_m"},
      {"clifford", "m1,m0", "Z_m1 over Z_m0 via reduction mod m0"},
      {"extension-rb", "p,q,m,k", "nilpotent extension of RB(p,q) x Z_m"},
      {"extension-clifford", "m1,m0,k", "nilpotent extension of the Clifford semigroup"},
      {"free-lrb", "n", "free left regular band"},
      {"free-t", "n", "repetition-free words with zero"},
  };
  return list;
}

namespace detail {

inline void need_params(const std::string& family, const std::vector<std::size_t>& p, std::size_t k) {
  if (p.size() != k)
    fail(ErrorKind::InvalidArgument, family + " takes " + std::to_string(k) + " parameter(s), got " +
                                         std::to_string(p.size()));
}

inline Instance from_witness(Witness w) { return {std::move(w.semigroup), std::move(w.generators), w.target}; }

inline Instance with_default_gens(Semigroup s) {
  auto g = s.generating_set();
  return {std::move(s), std::move(g), std::nullopt};
}

inline Semigroup clifford_mod(std::size_t m1, std::size_t m0) {
  if (m0 == 0 || m1 % m0) fail(ErrorKind::InvalidArgument, "clifford needs m0 dividing m1");
  std::vector<Element> phi(m1);
  for (std::size_t i = 0; i < m1; ++i) phi[i] = static_cast<Element>(i % m0);
  return make_clifford(make_cyclic(m1), make_cyclic(m0), phi);
}

inline Instance extension_of(const Semigroup& base, std::size_t k) {
  auto ext = make_nilpotent_extension(base, base.generating_set(), k);
  return {std::move(ext.semigroup), std::move(ext.generators), std::nullopt};
}

}  // namespace detail

inline Instance make_family(const std::string& family, const std::vector<std::size_t>& p) {
  using detail::need_params;
  using detail::with_default_gens;
  if (family == "cyclic" || family == "dihedral" || family == "heisenberg" || family == "sym" || family == "alt" ||
      family == "abelian")
    return with_default_gens(make_group(family, p));
  if (family == "abelian-power") {
    need_params(family, p, 2);
    return with_default_gens(make_abelian(std::vector<std::size_t>(p[1], p[0])));
  }
  if (family == "lrb-witness" || family == "rrb-witness" || family == "t-witness") {
    need_params(family, p, 1);
    const auto v = family[0] == 'l' ? WitnessVariant::LRB : family[0] == 'r' ? WitnessVariant::RRB : WitnessVariant::T;
    return detail::from_witness(make_obstruction_witness(v, p[0]));
  }
  if (family == "u-witness") {
    need_params(family, p, 1);
    return detail::from_witness(make_u_witness(p[0]));
  }
  if (family == "power-witness") {
    need_params(family, p, 2);
    return detail::from_witness(make_power_witness(make_cyclic(p[0]), 1, p[1]));
  }
  if (family == "semilattice") {
    need_params(family, p, 1);
    return with_default_gens(make_subset_semilattice(p[0]));
  }
  if (family == "rb") {
    need_params(family, p, 2);
    return with_default_gens(make_rectangular_band(p[0], p[1]));
  }
  if (family == "rb-group") {
    need_params(family, p, 3);
    return with_default_gens(make_rb_times_group(p[0], p[1], make_cyclic(p[2])));
  }
  if (family == "clifford") {
    need_params(family, p, 2);
    return with_default_gens(detail::clifford_mod(p[0], p[1]));
  }
  if (family == "extension-rb") {
    need_params(family, p, 4);
    return detail::extension_of(make_rb_times_group(p[0], p[1], make_cyclic(p[2])), p[3]);
  }
  if (family == "extension-clifford") {
    need_params(family, p, 3);
    return detail::extension_of(detail::clifford_mod(p[0], p[1]), p[2]);
  }
  if (family == "free-lrb") {
    need_params(family, p, 1);
    return with_default_gens(make_free_lrb(p[0]));
  }
  if (family == "free-t") {
    need_params(family, p, 1);
    return with_default_gens(make_free_t(p[0]));
  }
  fail(ErrorKind::UnknownFamily, "unknown family '" + family + "'");
}

}  // namespace slpforge
