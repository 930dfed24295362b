#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "roquette/error.hpp"
#include "roquette/group.hpp"
#include "roquette/parallel.hpp"

namespace roq {

/// Every subgroup of a group, with its conjugacy classes.
///
/// Subgroups are sorted by order, then lexicographically by element list. Class
/// representatives are the first member of each class in that order; classes are
/// numbered by the position of their representative.
struct SubgroupLattice {
  std::vector<SubgroupSet> subgroups;
  std::vector<std::size_t> class_reps;
  std::vector<std::size_t> class_of;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;

  std::size_t size() const { return subgroups.size(); }
  std::size_t class_count() const { return class_reps.size(); }

  std::optional<std::size_t> find(const ElementSet& members) const {
    auto it = index.find(members);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> class_members(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      if (class_of[i] == c) out.push_back(i);
    return out;
  }
};

struct EnumerationOptions {
  unsigned jobs = 1;
  /// Stop with BudgetExceeded once this many subgroups are known (0 = unlimited).
  std::size_t max_subgroups = 0;
};

namespace detail {

inline bool subgroup_less(const SubgroupSet& a, const SubgroupSet& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements < b.elements;
}

/// Conjugacy orbit of s under g, s first.
inline std::vector<SubgroupSet> conjugacy_orbit(const Group& g, const SubgroupSet& s) {
  std::vector<SubgroupSet> orbit{s};
  std::unordered_set<ElementSet, ElementSetHash> seen{s.members};
  for (std::size_t q = 0; q < orbit.size(); ++q)
    for (Elem t : g.generators()) {
      SubgroupSet c = conjugate_subgroup(g, t, orbit[q]);
      if (seen.insert(c.members).second) orbit.push_back(std::move(c));
    }
  return orbit;
}

/// Elements of prime-power order > 1 that have the least index among the
/// generators of their cyclic subgroup.
inline std::vector<Elem> extension_candidates(const Group& g) {
  std::vector<Elem> out;
  for (Elem x = 1; x < g.order(); ++x) {
    const unsigned o = g.element_order(x);
    if (prime_factors(o).size() != 1) continue;
    bool least = true;
    Elem y = x;
    for (unsigned k = 2; k < o && least; ++k) {
      y = g.mul(y, x);
      if (std::gcd(k, o) == 1 && y < x) least = false;
    }
    if (least) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Sorts the subgroups, indexes them and recomputes conjugacy classes.
inline SubgroupLattice finalize_lattice(const Group& g, std::vector<SubgroupSet> subgroups) {
  SubgroupLattice lat;
  std::sort(subgroups.begin(), subgroups.end(), detail::subgroup_less);
  lat.subgroups = std::move(subgroups);
  lat.index.reserve(lat.subgroups.size());
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
    if (!lat.index.emplace(lat.subgroups[i].members, i).second) throw Error("subgroup list has duplicates");
  constexpr auto unset = static_cast<std::size_t>(-1);
  lat.class_of.assign(lat.subgroups.size(), unset);
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
    if (lat.class_of[i] != unset) continue;
    const std::size_t c = lat.class_reps.size();
    lat.class_reps.push_back(i);
    for (const auto& conj : detail::conjugacy_orbit(g, lat.subgroups[i])) {
      auto j = lat.find(conj.members);
      if (!j) throw Error("subgroup list is not closed under conjugation");
      lat.class_of[*j] = c;
    }
  }
  return lat;
}

/// All subgroups of g by layered cyclic extension.
///
/// Seeds are the trivial and all cyclic subgroups. Each new conjugacy class
/// representative S is extended by every candidate element x outside S
/// (prime-power order, least index in <x>); the closure <S, x> is added together
/// with its conjugates. Working on class representatives only is complete:
/// conjugating a chain of extensions gives a chain starting at the representative.
inline SubgroupLattice enumerate_subgroups(const Group& g, const EnumerationOptions& opt = {}) {
  const auto candidates = detail::extension_candidates(g);
  std::vector<SubgroupSet> found;
  std::unordered_set<ElementSet, ElementSetHash> known;
  std::size_t classes = 0;
  std::vector<std::size_t> frontier;

  auto add_class = [&](const SubgroupSet& s) {
    if (known.count(s.members)) return;
    ++classes;
    frontier.push_back(found.size());
    for (auto& c : detail::conjugacy_orbit(g, s)) {
      known.insert(c.members);
      found.push_back(std::move(c));
    }
    if (opt.max_subgroups && found.size() > opt.max_subgroups)
      throw BudgetExceeded("subgroup enumeration exceeded the budget of " + std::to_string(opt.max_subgroups) +
                               " subgroups (order " + std::to_string(g.order()) + ")",
                           found.size(), classes);
  };

  add_class(trivial_subgroup(g));
  for (Elem x = 1; x < g.order(); ++x) {
    const Elem gx[] = {x};
    auto c = closure(g, gx);
    if (!known.count(c.members)) add_class(c);
  }

  while (!frontier.empty()) {
    std::vector<std::size_t> layer;
    layer.swap(frontier);
    std::vector<std::vector<SubgroupSet>> results(layer.size());
    parallel_for(layer.size(), opt.jobs, [&](std::size_t li) {
      const SubgroupSet& s = found[layer[li]];
      std::unordered_set<ElementSet, ElementSetHash> local;
      for (Elem x : candidates) {
        if (s.contains(x)) continue;
        auto h = extend(g, s, x);
        if (local.insert(h.members).second) results[li].push_back(std::move(h));
      }
    });
    for (auto& rs : results)
      for (auto& h : rs) add_class(h);
  }
  return finalize_lattice(g, std::move(found));
}

/// Class index -> member subgroup indices.
inline std::vector<std::vector<std::size_t>> conjugacy_classes(const SubgroupLattice& lat) {
  std::vector<std::vector<std::size_t>> out(lat.class_count());
  for (std::size_t i = 0; i < lat.size(); ++i) out[lat.class_of[i]].push_back(i);
  return out;
}

/// Indices of the normal subgroups (singleton classes).
inline std::vector<std::size_t> normal_subgroups(const SubgroupLattice& lat) {
  std::vector<std::size_t> sizes(lat.class_count(), 0);
  for (auto c : lat.class_of) ++sizes[c];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (sizes[lat.class_of[i]] == 1) out.push_back(i);
  return out;
}

/// Representatives T != 1 whose G-core (the intersection of the class) is trivial.
inline std::vector<std::size_t> trivial_core_classes(const SubgroupLattice& lat) {
  auto classes = conjugacy_classes(lat);
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& rep = lat.subgroups[lat.class_reps[c]];
    if (rep.is_trivial()) continue;
    ElementSet core = rep.members;
    for (auto i : classes[c]) core &= lat.subgroups[i].members;
    if (core.count() == 1) out.push_back(lat.class_reps[c]);
  }
  return out;
}

/// One Sylow p-subgroup, grown from 1 by adjoining normalizing p-elements.
inline SubgroupSet sylow_subgroup(const Group& g, unsigned p) {
  if (!is_prime(p) || g.order() % p != 0) throw Error("sylow: p must be a prime dividing the group order");
  const std::size_t target = prime_part(g.order(), p).first;
  SubgroupSet s = trivial_subgroup(g);
  while (s.order() < target) {
    bool grown = false;
    for (Elem x = 1; x < g.order() && !grown; ++x) {
      if (s.contains(x) || prime_part(g.element_order(x), p).first != g.element_order(x)) continue;
      if (!normalizes(g, x, s)) continue;
      s = extend(g, s, x);
      grown = true;
    }
    if (!grown) throw Error("sylow: no normalizing p-element found");
  }
  return s;
}

}  // namespace roq
