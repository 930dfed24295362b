#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "roquette/error.hpp"
#include "roquette/group.hpp"
#include "roquette/lattice.hpp"
#include "roquette/parallel.hpp"

namespace roq {

struct ExpansivityResult {
  SubgroupSet subgroup;
  bool expansive = true;
  /// Least-index g outside N_G(T) whose core equals T.
  std::optional<Elem> witness_g;
  /// (g, |core|) for each coset g N_G(T) examined, when tracing.
  std::vector<std::pair<Elem, std::size_t>> trace;
};

/// T is expansive when, for every g outside N = N_G(T), the N-core of
/// (gTg^-1 n N) T properly contains T. The core never drops below T, so a
/// witness is a g where it equals T. gTg^-1 depends only on the coset gN, so
/// one g per coset is tested, in index order.
inline ExpansivityResult is_expansive(const Group& g, const SubgroupSet& t, bool trace = false) {
  if (t.members.size() != g.order() || !t.contains(0)) throw ContainmentError("is_expansive: T is not a subgroup of G");
  ExpansivityResult res{t, true, std::nullopt, {}};
  const auto n = normalizer(g, t);
  ElementSet visited = n.members;
  for (Elem x = 0; x < g.order(); ++x) {
    if (visited.test(x)) continue;
    for (Elem y : n.elements) visited.set(g.mul(x, y));
    ElementSet meet = conjugate_members(g, x, t) & n.members;
    auto xt = extend(g, t, meet.to_vector());
    auto c = core_in(g, n, xt);
    if (trace) res.trace.emplace_back(x, c.order());
    if (c.order() == t.order()) {
      res.expansive = false;
      res.witness_g = x;
      break;
    }
  }
  return res;
}

struct ScanEntry {
  std::size_t subgroup_index;  // representative in the lattice
  ExpansivityResult result;
};

/// is_expansive on one representative of each class of nontrivial subgroups
/// with trivial G-core, in class order.
inline std::vector<ScanEntry> scan_expansive_trivial_core(const Group& g, const SubgroupLattice& lat, unsigned jobs = 1,
                                                          bool trace = false) {
  if (lat.subgroups.empty() || lat.subgroups.front().members.size() != g.order())
    throw Error("scan: lattice missing or built for another group");
  auto reps = trivial_core_classes(lat);
  std::vector<ScanEntry> out(reps.size());
  parallel_for(reps.size(), jobs, [&](std::size_t i) {
    out[i] = ScanEntry{reps[i], is_expansive(g, lat.subgroups[reps[i]], trace)};
  });
  return out;
}

inline std::size_t count_expansive(const std::vector<ScanEntry>& scan) {
  std::size_t c = 0;
  for (const auto& e : scan) c += e.result.expansive ? 1 : 0;
  return c;
}

}  // namespace roq
