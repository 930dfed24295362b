#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "roquette/group.hpp"

namespace roq {

/// Cheap isomorphism invariants compared before any search.
struct GroupFingerprint {
  std::size_t order = 0;
  std::vector<std::size_t> order_census;  // order_census[k] = number of elements of order k
  std::size_t center_order = 0;
  std::vector<std::size_t> derived_series;  // orders down the derived series

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

inline GroupFingerprint fingerprint(const Group& g) {
  GroupFingerprint f;
  f.order = g.order();
  for (Elem x = 0; x < g.order(); ++x) {
    unsigned o = g.element_order(x);
    if (f.order_census.size() <= o) f.order_census.resize(o + 1, 0);
    ++f.order_census[o];
  }
  f.center_order = center(g).order();
  // Derived series by repeated commutator closure inside the current term.
  SubgroupSet cur = whole_group(g);
  while (true) {
    f.derived_series.push_back(cur.order());
    std::vector<Elem> comms;
    ElementSet seen(g.order());
    for (Elem x : cur.elements)
      for (Elem y : cur.elements) {
        Elem c = g.commutator(x, y);
        if (!seen.test(c)) {
          seen.set(c);
          comms.push_back(c);
        }
      }
    std::sort(comms.begin(), comms.end());
    SubgroupSet next = closure(g, comms);
    if (next.order() == cur.order()) break;
    cur = std::move(next);
  }
  return f;
}

/// An isomorphism g -> h, if one exists.
///
/// Backtracks over images of a greedy generating set of g, restricted to elements
/// of equal order, and checks each complete assignment by Cayley-graph extension.
inline std::optional<Homomorphism> find_isomorphism(const Group& g, const Group& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (!(fingerprint(g) == fingerprint(h))) return std::nullopt;
  const auto& gens = g.generators();
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < h.order(); ++y)
      if (h.element_order(y) == g.element_order(gens[i])) candidates[i].push_back(y);

  std::vector<Elem> images(gens.size());
  std::optional<Homomorphism> found;
  auto search = [&](auto&& self, std::size_t depth, const SubgroupSet& span) -> bool {
    if (depth == gens.size()) {
      if (span.order() != h.order()) return false;
      auto hom = homomorphism_from_generators(g, h, gens, images);
      if (!hom) return false;
      found = std::move(hom);
      return true;
    }
    for (Elem y : candidates[depth]) {
      if (span.contains(y) && depth > 0) continue;  // image generator must enlarge the image
      images[depth] = y;
      if (self(self, depth + 1, extend(h, span, y))) return true;
    }
    return false;
  };
  search(search, 0, trivial_subgroup(h));
  return found;
}

inline bool are_isomorphic(const Group& g, const Group& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace roq
