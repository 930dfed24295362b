#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roquette/cohomology.hpp"
#include "roquette/constructors.hpp"
#include "roquette/group.hpp"
#include "roquette/lattice.hpp"

namespace roq {

/// O_p(G), the largest normal p-subgroup, as the core of one Sylow p-subgroup.
inline SubgroupSet p_core(const Group& g, unsigned p) {
  if (!is_prime(p)) throw Error("p_core: p must be prime");
  if (g.order() % p != 0) return trivial_subgroup(g);
  return core(g, sylow_subgroup(g, p));
}

/// F(G), generated by the O_p(G) for p dividing |G|.
inline SubgroupSet fitting(const Group& g) {
  SubgroupSet f = trivial_subgroup(g);
  for (unsigned p : g.prime_factors()) f = extend(g, f, p_core(g, p).elements);
  return f;
}

/// Nilpotent iff every Sylow subgroup is normal.
inline bool is_nilpotent(const Group& g) {
  for (unsigned p : g.prime_factors())
    if (!is_normal(g, sylow_subgroup(g, p))) return false;
  return true;
}

struct RoquetteVerdict {
  bool is_roquette = true;
  /// A normal abelian non-cyclic subgroup (the first in lattice order) when not Roquette.
  std::optional<SubgroupSet> witness;
  /// Whether the elementary-abelian criterion gives the same verdict.
  bool method_agreement = true;
};

/// Method A: some normal abelian subgroup is not cyclic.
/// Method B: some normal elementary abelian subgroup has rank >= 2.
inline RoquetteVerdict is_roquette(const Group& g, const SubgroupLattice& lat) {
  if (lat.subgroups.empty() || lat.subgroups.front().members.size() != g.order())
    throw Error("is_roquette: lattice missing or built for another group");
  RoquetteVerdict v;
  bool b_found = false;
  for (auto i : normal_subgroups(lat)) {
    const auto& s = lat.subgroups[i];
    auto props = subgroup_properties(g, s);
    if (props.is_abelian && !props.is_cyclic && !v.witness) v.witness = s;
    if (props.is_elementary_abelian && props.rank.value_or(0) >= 2) b_found = true;
  }
  v.is_roquette = !v.witness.has_value();
  v.method_agreement = v.is_roquette == !b_found;
  return v;
}

enum class RoquetteClass { cyclic, quaternion, dihedral, semidihedral, not_roquette };

inline const char* to_string(RoquetteClass c) {
  switch (c) {
    case RoquetteClass::cyclic: return "cyclic";
    case RoquetteClass::quaternion: return "quaternion";
    case RoquetteClass::dihedral: return "dihedral";
    case RoquetteClass::semidihedral: return "semidihedral";
    case RoquetteClass::not_roquette: return "not_roquette";
  }
  return "?";
}

/// Classifies a p-group by its element-order census.
inline RoquetteClass classify_roquette_p_group(const Group& g) {
  if (g.prime_factors().size() > 1) throw Error("classify_roquette_p_group: not a p-group");
  const auto whole = whole_group(g);
  auto props = subgroup_properties(g, whole);
  if (props.is_cyclic) return RoquetteClass::cyclic;
  if (g.prime_factors().front() != 2) return RoquetteClass::not_roquette;
  const std::size_t n = g.order();
  if (props.element_orders.count(static_cast<unsigned>(n / 2)) == 0) return RoquetteClass::not_roquette;
  const std::size_t involutions = props.element_orders.count(2) ? props.element_orders.at(2) : 0;
  const std::size_t fours = props.element_orders.count(4) ? props.element_orders.at(4) : 0;
  if (!props.is_abelian && involutions == 1) return RoquetteClass::quaternion;
  if (n >= 16 && involutions == n / 2 + 1 && fours == 2) return RoquetteClass::dihedral;
  if (n >= 16 && !props.is_abelian && involutions == n / 4 + 1 && fours == n / 4 + 2)
    return RoquetteClass::semidihedral;
  return RoquetteClass::not_roquette;
}

/// For C_n x| S with <alpha_p> <= S: E = <g_p^(p^(k-1))> x D, D a complement of C_n
/// over <alpha_p>. Checked to be normal and elementary abelian of rank 2.
inline SubgroupSet nonroquette_witness_for_alpha(const CyclicExtension& ext, unsigned p) {
  const auto n = ext.n;
  if (!is_prime(p) || n % (std::size_t{p} * p) != 0) throw Error("alpha witness: p^2 must divide n");
  if (prime_part(n, 2).first == 4) throw Error("alpha witness: the 2-part of n must not be 4");
  const unsigned alpha = alpha_p(n, p);
  const auto& g = ext.group;
  auto q = quotient(g, ext.kernel);
  const Elem lift = ext.of(0, ext.unit_index(alpha));
  const Elem image[] = {q.projection(lift)};
  auto h = closure(q.group, image);
  auto d = find_complement(g, ext.kernel, q, h);
  if (!d) throw Error("alpha witness: complement not found");
  const Elem socle[] = {ext.of(n / p, 0)};
  auto e = extend(g, *d, socle);
  auto props = subgroup_properties(g, e);
  if (!is_normal(g, e) || !props.is_elementary_abelian || props.rank.value_or(0) != 2)
    throw Error("alpha witness: E is not a normal elementary abelian subgroup of rank 2");
  return e;
}

}  // namespace roq
