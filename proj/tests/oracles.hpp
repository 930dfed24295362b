#pragma once

// Brute-force reference computations used by the tests. They work directly on
// multiplication tables with std::set and share no code with the library
// beyond Group::mul / Group::inv.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "roquette/roquette.hpp"

namespace oracle {

using roq::Elem;
using roq::Group;
using ESet = std::set<Elem>;

inline ESet naive_closure(const Group& g, const std::vector<Elem>& gens) {
  ESet s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur(s.begin(), s.end());
    for (Elem a : cur)
      for (Elem b : gens) {
        Elem c = g.mul(a, b);
        if (s.insert(c).second) grew = true;
      }
  }
  return s;
}

inline ESet as_set(const roq::SubgroupSet& s) { return {s.elements.begin(), s.elements.end()}; }

/// Every subgroup, as the closures of all generator subsets of size at most
/// floor(log2 |G|) (every subgroup of G needs no more generators than that).
inline std::set<ESet> all_subgroups(const Group& g) {
  std::size_t d = 0;
  while ((std::size_t{1} << (d + 1)) <= g.order()) ++d;
  std::set<ESet> out{{0}};
  std::vector<Elem> pick;
  std::function<void(Elem)> rec = [&](Elem from) {
    if (!pick.empty()) out.insert(naive_closure(g, pick));
    if (pick.size() == d) return;
    for (Elem x = from; x < g.order(); ++x) {
      pick.push_back(x);
      rec(x + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

inline ESet conjugate(const Group& g, Elem x, const ESet& s) {
  ESet out;
  for (Elem y : s) out.insert(g.mul(g.mul(x, y), g.inv(x)));
  return out;
}

inline bool is_normal(const Group& g, const ESet& s) {
  for (Elem x = 0; x < g.order(); ++x)
    if (conjugate(g, x, s) != s) return false;
  return true;
}

/// Intersection of all conjugates of s by elements of `by`.
inline ESet core(const Group& g, const ESet& by, const ESet& s) {
  ESet c = s;
  for (Elem x : by) {
    ESet k = conjugate(g, x, s), tmp;
    std::set_intersection(c.begin(), c.end(), k.begin(), k.end(), std::inserter(tmp, tmp.end()));
    c = tmp;
  }
  return c;
}

inline ESet whole(const Group& g) {
  ESet s;
  for (Elem x = 0; x < g.order(); ++x) s.insert(x);
  return s;
}

inline ESet normalizer(const Group& g, const ESet& s) {
  ESet n;
  for (Elem x = 0; x < g.order(); ++x)
    if (conjugate(g, x, s) == s) n.insert(x);
  return n;
}

inline bool is_abelian(const Group& g, const ESet& s) {
  for (Elem a : s)
    for (Elem b : s)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline unsigned elem_order(const Group& g, Elem x) {
  unsigned k = 1;
  for (Elem y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

/// Isomorphism by trying every assignment of g's generators to elements of h
/// of the same order and checking the induced map on all products.
inline bool isomorphic(const Group& g, const Group& h) {
  if (g.order() != h.order()) return false;
  const auto gens = g.generators();
  // words: every element of g as (parent, generator) in BFS order
  std::vector<std::pair<Elem, std::size_t>> how(g.order(), {0, 0});
  std::vector<Elem> order{0};
  std::vector<bool> seen(g.order(), false);
  seen[0] = true;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = g.mul(order[q], gens[i]);
      if (!seen[y]) {
        seen[y] = true;
        how[y] = {order[q], i};
        order.push_back(y);
      }
    }
  std::vector<Elem> img(gens.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == gens.size()) {
      std::vector<Elem> f(g.order(), 0);
      std::vector<bool> used(h.order(), false);
      used[0] = true;
      for (std::size_t k = 1; k < order.size(); ++k) {
        Elem y = order[k];
        f[y] = h.mul(f[how[y].first], img[how[y].second]);
        if (used[f[y]]) return false;
        used[f[y]] = true;
      }
      for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
          if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
      return true;
    }
    for (Elem y = 0; y < h.order(); ++y) {
      if (elem_order(h, y) != elem_order(g, gens[i])) continue;
      img[i] = y;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

/// The group on the cosets xN, built by multiplying explicit coset sets.
inline Group coset_group(const Group& g, const ESet& n) {
  std::vector<ESet> cosets;
  std::map<ESet, Elem> index;
  for (Elem x = 0; x < g.order(); ++x) {
    ESet c;
    for (Elem y : n) c.insert(g.mul(x, y));
    if (!index.count(c)) {
      index[c] = static_cast<Elem>(cosets.size());
      cosets.push_back(c);
    }
  }
  const std::size_t m = cosets.size();
  std::vector<Elem> t(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Elem prod = g.mul(*cosets[a].begin(), *cosets[b].begin());
      ESet c;
      for (Elem y : n) c.insert(g.mul(prod, y));
      t[a * m + b] = index.at(c);
    }
  return Group(m, std::move(t));
}

inline std::size_t power_mod(std::size_t b, std::size_t k, std::size_t n) {
  std::size_t r = 1 % n;
  for (std::size_t i = 0; i < k; ++i) r = r * b % n;
  return r;
}

/// Cyclic group of order m = <s> acting on Z/n by s.x = e x. Counts 1-cocycles
/// by testing f(s^a s^b) = f(s^a) + s^a f(s^b) on all pairs for every choice of
/// f(s) (other values are forced by the cocycle rule along powers of s).
inline std::size_t h1_order(std::size_t n, std::size_t m, std::size_t e) {
  auto act = [&](std::size_t a, std::size_t x) { return power_mod(e, a, n) * x % n; };
  std::set<std::vector<std::size_t>> z1;  // distinct functions; for m = 1 every v gives f = 0
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> f(m, 0);
    for (std::size_t a = 1; a < m; ++a) f[a] = (f[a - 1] + act(a - 1, v)) % n;
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = 0; b < m && ok; ++b)
        if (f[(a + b) % m] != (f[a] + act(a, f[b])) % n) ok = false;
    if (ok) z1.insert(f);
  }
  std::set<std::vector<std::size_t>> b1;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> f(m);
    for (std::size_t a = 0; a < m; ++a) f[a] = (act(a, c) + n - c) % n;
    b1.insert(f);
  }
  return z1.size() / b1.size();
}

/// Normalized 2-cocycles (f(1,x) = f(x,1) = 0) enumerated over all values on
/// pairs of non-identity elements; coboundaries from normalized 1-cochains.
inline std::size_t h2_order(std::size_t n, std::size_t m, std::size_t e) {
  auto act = [&](std::size_t a, std::size_t x) { return power_mod(e, a, n) * x % n; };
  const std::size_t free_slots = (m - 1) * (m - 1);
  std::vector<std::size_t> f(m * m, 0);
  auto at = [&](std::size_t a, std::size_t b) -> std::size_t& { return f[a * m + b]; };
  std::vector<std::size_t> slot(free_slots, 0);
  std::size_t z2 = 0;
  for (;;) {
    for (std::size_t i = 0; i < free_slots; ++i) at(1 + i / (m - 1), 1 + i % (m - 1)) = slot[i];
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = 0; b < m && ok; ++b)
        for (std::size_t c = 0; c < m && ok; ++c)
          if ((act(a, at(b, c)) + at(a, (b + c) % m)) % n != (at((a + b) % m, c) + at(a, b)) % n) ok = false;
    if (ok) ++z2;
    std::size_t i = 0;
    while (i < free_slots && ++slot[i] == n) slot[i++] = 0;
    if (i == free_slots) break;
  }
  std::set<std::vector<std::size_t>> b2;
  std::vector<std::size_t> c(m, 0);
  for (;;) {
    std::vector<std::size_t> d(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) d[a * m + b] = (act(a, c[b]) + c[a] + n - c[(a + b) % m]) % n;
    b2.insert(d);
    std::size_t i = 1;
    while (i < m && ++c[i] == n) c[i++] = 0;
    if (i == m) break;
  }
  return z2 / b2.size();
}

/// Small deterministic generator so property tests are reproducible.
struct Lcg {
  std::uint64_t state;
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

/// Groups of order at most 24 reachable through the constructors.
inline std::vector<std::pair<std::string, Group>> small_corpus() {
  using namespace roq;
  std::vector<std::pair<std::string, Group>> out;
  for (std::size_t n = 1; n <= 24; ++n) out.emplace_back("cyclic:" + std::to_string(n), build_cyclic(n));
  out.emplace_back("dihedral:8", build_two_group(TwoGroupKind::dihedral, 8));
  out.emplace_back("dihedral:16", build_two_group(TwoGroupKind::dihedral, 16));
  out.emplace_back("quaternion:8", build_two_group(TwoGroupKind::quaternion, 8));
  out.emplace_back("quaternion:16", build_two_group(TwoGroupKind::quaternion, 16));
  out.emplace_back("semidihedral:16", build_two_group(TwoGroupKind::semidihedral, 16));
  auto c = [](std::size_t n) { return build_cyclic(n); };
  out.emplace_back("C2xC2", build_direct_product(c(2), c(2)));
  out.emplace_back("C2xC2xC2", build_direct_product(build_direct_product(c(2), c(2)), c(2)));
  out.emplace_back("C2^4", build_direct_product(build_direct_product(c(2), c(2)), build_direct_product(c(2), c(2))));
  out.emplace_back("C2xC4", build_direct_product(c(2), c(4)));
  out.emplace_back("C4xC4", build_direct_product(c(4), c(4)));
  out.emplace_back("C2xC8", build_direct_product(c(2), c(8)));
  out.emplace_back("C3xC3", build_direct_product(c(3), c(3)));
  out.emplace_back("C2xC2xC3", build_direct_product(build_direct_product(c(2), c(2)), c(3)));
  out.emplace_back("C2xC2xC2xC3", build_direct_product(build_direct_product(c(2), c(2)), c(6)));
  out.emplace_back("Q8xC2", build_direct_product(build_two_group(TwoGroupKind::quaternion, 8), c(2)));
  out.emplace_back("D8xC2", build_direct_product(build_two_group(TwoGroupKind::dihedral, 8), c(2)));
  out.emplace_back("Q8xC3", build_direct_product(build_two_group(TwoGroupKind::quaternion, 8), c(3)));
  out.emplace_back("S3xC3", build_direct_product(build_permutation_group(3, {{1, 2, 0}, {1, 0, 2}}).group, c(3)));
  out.emplace_back("S3xC4", build_direct_product(build_permutation_group(3, {{1, 2, 0}, {1, 0, 2}}).group, c(4)));
  out.emplace_back("S3xC2xC2", build_direct_product(build_permutation_group(3, {{1, 2, 0}, {1, 0, 2}}).group,
                                                    build_direct_product(c(2), c(2))));
  out.emplace_back("A4", build_permutation_group(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}).group);
  out.emplace_back("S4", build_permutation_group(4, {{1, 2, 3, 0}, {1, 0, 2, 3}}).group);
  out.emplace_back("A4xC2", build_direct_product(build_permutation_group(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}).group, c(2)));
  out.emplace_back("sl2:3", build_sl2(3).group);
  for (std::size_t n = 2; n <= 24; ++n) {
    auto units = build_units_mod_n(n);
    // every subgroup of the unit group, through its own lattice
    auto lat = enumerate_subgroups(units.table);
    for (const auto& s : lat.subgroups) {
      if (s.is_trivial() || n * s.order() > 24) continue;
      std::vector<unsigned> gens;
      for (Elem x : s.generators) gens.push_back(units.units[x]);
      std::string name = "semidirect cyclic:" + std::to_string(n) + " units:[";
      for (std::size_t i = 0; i < gens.size(); ++i) name += (i ? "," : "") + std::to_string(gens[i]);
      out.emplace_back(name + "]", build_cyclic_extension(n, gens).group);
    }
  }
  return out;
}

}  // namespace oracle
