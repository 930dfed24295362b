#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roquette/element_set.hpp"
#include "roquette/error.hpp"

namespace roq {

class Group;
struct SubgroupSet;

namespace detail {
std::vector<Elem> greedy_generators(const Group& g, std::span<const Elem> elements);
}

/// Distinct primes dividing n, ascending.
inline std::vector<unsigned> prime_factors(std::size_t n) {
  std::vector<unsigned> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<unsigned>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// Largest power of p dividing n, returned as (p^k, k).
inline std::pair<std::size_t, unsigned> prime_part(std::size_t n, std::size_t p) {
  std::size_t q = 1;
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    q *= p;
    ++k;
  }
  return {q, k};
}

/// A finite group stored as its full multiplication table.
///
/// Index 0 is the identity. The table is validated on construction: identity row
/// and column, Latin square, two-sided inverses, and associativity (exhaustive up
/// to order 256, 10^5 seeded random triples above that).
class Group {
 public:
  Group(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels = {})
      : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
    if (order_ == 0) throw Error("group order must be positive");
    if (table_.size() != order_ * order_) throw Error("multiplication table has wrong size");
    if (!labels_.empty() && labels_.size() != order_) throw Error("label count does not match order");
    validate();
    primes_ = roq::prime_factors(order_);
    compute_orders();
    std::vector<Elem> all(order_);
    std::iota(all.begin(), all.end(), Elem{0});
    generators_ = detail::greedy_generators(*this, all);
  }

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  Elem commutator(Elem x, Elem y) const { return mul(mul(x, y), mul(inv_[x], inv_[y])); }
  Elem power(Elem x, std::size_t k) const {
    Elem r = 0;
    for (std::size_t i = 0; i < k % orders_[x]; ++i) r = mul(r, x);
    return r;
  }
  unsigned element_order(Elem x) const { return orders_[x]; }
  const std::vector<unsigned>& prime_factors() const { return primes_; }
  const std::vector<Elem>& generators() const { return generators_; }
  const std::vector<Elem>& table() const { return table_; }

  bool has_labels() const { return !labels_.empty(); }
  std::string label(Elem x) const { return labels_.empty() ? std::to_string(x) : labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// FNV-1a over the table; identifies a concrete table for the lattice cache.
  std::uint64_t table_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](std::uint64_t v) {
      for (int i = 0; i < 4; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
      }
    };
    feed(order_);
    for (auto v : table_) feed(v);
    return h;
  }

 private:
  void validate() {
    const auto n = order_;
    for (std::size_t x = 0; x < n; ++x) {
      if (mul(0, x) != x || mul(x, 0) != x) throw Error("index 0 is not the identity");
    }
    inv_.assign(n, 0);
    std::vector<std::uint8_t> seen(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        Elem v = table_[x * n + y];
        if (v >= n || seen[v]) throw Error("multiplication table row is not a permutation");
        seen[v] = 1;
        if (v == 0) inv_[x] = static_cast<Elem>(y);
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t x = 0; x < n; ++x) {
        Elem v = table_[x * n + y];
        if (seen[v]) throw Error("multiplication table column is not a permutation");
        seen[v] = 1;
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (mul(inv_[x], static_cast<Elem>(x)) != 0) throw Error("left and right inverses differ");
    if (n <= 256) {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          Elem ab = mul(a, b);
          for (Elem c = 0; c < n; ++c)
            if (mul(ab, c) != mul(a, mul(b, c))) throw Error("multiplication is not associative");
        }
    } else {
      std::mt19937_64 rng(0x5eedu);
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
      for (int i = 0; i < 100000; ++i) {
        Elem a = pick(rng), b = pick(rng), c = pick(rng);
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw Error("multiplication is not associative");
      }
    }
  }

  void compute_orders() {
    orders_.assign(order_, 1);
    for (Elem x = 1; x < order_; ++x) {
      Elem y = x;
      unsigned k = 1;
      while (y != 0) {
        y = mul(y, x);
        ++k;
      }
      orders_[x] = k;
    }
  }

  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<std::string> labels_;
  std::vector<Elem> inv_;
  std::vector<unsigned> orders_;
  std::vector<unsigned> primes_;
  std::vector<Elem> generators_;
};

/// A subgroup: membership bit-set, sorted element list and a generating set.
struct SubgroupSet {
  ElementSet members;
  std::vector<Elem> elements;
  std::vector<Elem> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem x) const { return members.test(x); }
  bool is_trivial() const { return elements.size() == 1; }
  bool is_subgroup_of(const SubgroupSet& other) const { return members.is_subset_of(other.members); }

  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) { return a.members == b.members; }
};

/// Index map between two groups; validated with is_homomorphism.
struct Homomorphism {
  std::vector<Elem> image_of;
  Elem operator()(Elem x) const { return image_of[x]; }
};

inline SubgroupSet trivial_subgroup(const Group& g) {
  SubgroupSet s{ElementSet(g.order()), {0}, {}};
  s.members.set(0);
  return s;
}

/// <S, extra>, built as a union of right cosets of S (Dimino's method).
inline SubgroupSet extend(const Group& g, const SubgroupSet& s, std::span<const Elem> extra) {
  std::vector<Elem> gens = s.generators;
  ElementSet members = s.members;
  std::vector<Elem> elems = s.elements;
  std::vector<Elem> reps{0};
  bool grew = false;
  for (Elem e : extra) {
    if (members.test(e)) continue;
    grew = true;
    gens.push_back(e);
    // Process the reps found so far against every generator, including the new one.
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (Elem t : gens) {
        Elem y = g.mul(reps[r], t);
        if (members.test(y)) continue;
        for (Elem x : s.elements) {
          Elem z = g.mul(x, y);
          members.set(z);
          elems.push_back(z);
        }
        reps.push_back(y);
      }
    }
  }
  if (!grew) return s;
  std::sort(elems.begin(), elems.end());
  return SubgroupSet{std::move(members), std::move(elems), std::move(gens)};
}

inline SubgroupSet extend(const Group& g, const SubgroupSet& s, Elem x) {
  return extend(g, s, std::span<const Elem>(&x, 1));
}

/// Smallest subgroup containing gens.
inline SubgroupSet closure(const Group& g, std::span<const Elem> gens) {
  for (Elem x : gens)
    if (x >= g.order()) throw Error("generator index out of range");
  return extend(g, trivial_subgroup(g), gens);
}

inline SubgroupSet closure(const Group& g, std::initializer_list<Elem> gens) {
  return closure(g, std::span<const Elem>(gens.begin(), gens.size()));
}

namespace detail {
inline std::vector<Elem> greedy_generators(const Group& g, std::span<const Elem> elements) {
  SubgroupSet cur = trivial_subgroup(g);
  std::vector<Elem> gens;
  for (Elem x : elements) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = extend(g, cur, x);
    if (cur.order() == elements.size()) break;
  }
  return gens;
}
}  // namespace detail

/// Wraps a list of elements already known to form a subgroup.
inline SubgroupSet subgroup_from_elements(const Group& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  SubgroupSet s{ElementSet(g.order()), std::move(elements), {}};
  for (Elem x : s.elements) s.members.set(x);
  s.generators = detail::greedy_generators(g, s.elements);
  return s;
}

inline SubgroupSet subgroup_from_members(const Group& g, const ElementSet& members) {
  return subgroup_from_elements(g, members.to_vector());
}

inline SubgroupSet whole_group(const Group& g) {
  SubgroupSet s{ElementSet(g.order()), {}, g.generators()};
  s.elements.resize(g.order());
  std::iota(s.elements.begin(), s.elements.end(), Elem{0});
  for (Elem x : s.elements) s.members.set(x);
  return s;
}

/// Checks the SubgroupSet invariants against g: identity, closure, Lagrange, generators.
inline bool is_valid_subgroup(const Group& g, const SubgroupSet& s) {
  if (s.members.size() != g.order() || !s.contains(0)) return false;
  if (s.members.count() != s.elements.size()) return false;
  if (!std::is_sorted(s.elements.begin(), s.elements.end())) return false;
  for (Elem x : s.elements) {
    if (!s.contains(x) || !s.contains(g.inv(x))) return false;
    for (Elem y : s.elements)
      if (!s.contains(g.mul(x, y))) return false;
  }
  if (g.order() % s.order() != 0) return false;
  return closure(g, s.generators) == s;
}

/// {g s g^-1 : s in S}
inline SubgroupSet conjugate_subgroup(const Group& g, Elem x, const SubgroupSet& s) {
  SubgroupSet out{ElementSet(g.order()), {}, {}};
  out.elements.reserve(s.order());
  for (Elem e : s.elements) {
    Elem c = g.conj(x, e);
    out.members.set(c);
    out.elements.push_back(c);
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.generators.reserve(s.generators.size());
  for (Elem e : s.generators) out.generators.push_back(g.conj(x, e));
  return out;
}

inline ElementSet conjugate_members(const Group& g, Elem x, const SubgroupSet& s) {
  ElementSet out(g.order());
  for (Elem e : s.elements) out.set(g.conj(x, e));
  return out;
}

inline SubgroupSet intersection(const Group& g, const SubgroupSet& a, const SubgroupSet& b) {
  return subgroup_from_members(g, a.members & b.members);
}

/// True iff x normalizes s (checked on the generators of s).
inline bool normalizes(const Group& g, Elem x, const SubgroupSet& s) {
  for (Elem t : s.generators)
    if (!s.contains(g.conj(x, t))) return false;
  return true;
}

/// Whether s is normalized by every element of `in`; requires s <= in.
inline bool is_normal(const Group& g, const SubgroupSet& s, const SubgroupSet& in) {
  if (!s.is_subgroup_of(in)) throw ContainmentError("is_normal: subgroup not contained in the ambient subgroup");
  for (Elem x : in.generators)
    if (!normalizes(g, x, s)) return false;
  return true;
}

inline bool is_normal(const Group& g, const SubgroupSet& s) { return is_normal(g, s, whole_group(g)); }

/// N_within(S); within defaults to the whole group.
inline SubgroupSet normalizer(const Group& g, const SubgroupSet& s, const SubgroupSet& within) {
  std::vector<Elem> out;
  for (Elem x : within.elements)
    if (normalizes(g, x, s)) out.push_back(x);
  return subgroup_from_elements(g, std::move(out));
}

inline SubgroupSet normalizer(const Group& g, const SubgroupSet& s) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (normalizes(g, x, s)) out.push_back(x);
  return subgroup_from_elements(g, std::move(out));
}

/// C_G(X) for an arbitrary element set X.
inline SubgroupSet centralizer(const Group& g, std::span<const Elem> xs, const SubgroupSet& within) {
  std::vector<Elem> out;
  for (Elem y : within.elements) {
    bool ok = true;
    for (Elem x : xs)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return subgroup_from_elements(g, std::move(out));
}

inline SubgroupSet centralizer(const Group& g, std::span<const Elem> xs) { return centralizer(g, xs, whole_group(g)); }

inline SubgroupSet centralizer(const Group& g, const SubgroupSet& s) { return centralizer(g, s.generators); }

/// Largest subgroup of X normal in N, i.e. the intersection of all N-conjugates of X.
inline SubgroupSet core_in(const Group& g, const SubgroupSet& n, const SubgroupSet& x) {
  if (!x.is_subgroup_of(n)) throw ContainmentError("core_in: X is not contained in N");
  ElementSet cur = x.members;
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = cur.to_vector();
    for (Elem t : n.generators) {
      ElementSet conj(g.order());
      for (Elem e : elems) conj.set(g.conj(t, e));
      ElementSet next = cur & conj;
      if (!(next == cur)) {
        cur = std::move(next);
        elems = cur.to_vector();
        changed = true;
      }
    }
  }
  return subgroup_from_members(g, cur);
}

inline SubgroupSet core(const Group& g, const SubgroupSet& x) { return core_in(g, whole_group(g), x); }

inline SubgroupSet center(const Group& g) { return centralizer(g, g.generators()); }

/// Subgroup generated by all commutators.
inline SubgroupSet derived_subgroup(const Group& g) {
  ElementSet comms(g.order());
  std::vector<Elem> gens;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      Elem c = g.commutator(x, y);
      if (!comms.test(c)) {
        comms.set(c);
        gens.push_back(c);
      }
    }
  std::sort(gens.begin(), gens.end());
  return closure(g, gens);
}

inline bool is_homomorphism(const Group& dom, const Group& cod, const Homomorphism& h) {
  if (h.image_of.size() != dom.order() || h.image_of[0] != 0) return false;
  for (Elem x : h.image_of)
    if (x >= cod.order()) return false;
  for (Elem x = 0; x < dom.order(); ++x)
    for (Elem y = 0; y < dom.order(); ++y)
      if (h(dom.mul(x, y)) != cod.mul(h(x), h(y))) return false;
  return true;
}

/// Extends an assignment on generators along the Cayley graph of dom.
///
/// Returns nullopt when the generators do not generate dom or when two paths to
/// the same element disagree (the assignment is then not a homomorphism).
/// compose(a, b) must realize image(x * y) = compose(image(x), image(y)).
template <class T, class Compose>
std::optional<std::vector<T>> extend_on_generators(const Group& dom, std::span<const Elem> gens,
                                                   std::span<const T> images, const T& identity,
                                                   Compose compose) {
  std::vector<std::optional<T>> map(dom.order());
  map[0] = identity;
  std::vector<Elem> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Elem x = queue[q];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = dom.mul(x, gens[i]);
      T img = compose(*map[x], images[i]);
      if (map[y]) {
        if (!(*map[y] == img)) return std::nullopt;
      } else {
        map[y] = std::move(img);
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != dom.order()) return std::nullopt;
  std::vector<T> out;
  out.reserve(dom.order());
  for (auto& v : map) out.push_back(std::move(*v));
  return out;
}

/// Homomorphism dom -> cod determined by generator images, if one exists.
inline std::optional<Homomorphism> homomorphism_from_generators(const Group& dom, const Group& cod,
                                                                std::span<const Elem> gens,
                                                                std::span<const Elem> images) {
  auto map = extend_on_generators<Elem>(dom, gens, images, Elem{0},
                                        [&cod](Elem a, Elem b) { return cod.mul(a, b); });
  if (!map) return std::nullopt;
  return Homomorphism{std::move(*map)};
}

struct Quotient {
  Group group;
  Homomorphism projection;
  /// Minimal-index representative of each coset; quotient element i is coset i.
  std::vector<Elem> representatives;
};

/// G/N over minimal-index coset representatives.
inline Quotient quotient(const Group& g, const SubgroupSet& n) {
  if (!is_normal(g, n)) throw Error("quotient: subgroup is not normal");
  const std::size_t m = g.order() / n.order();
  std::vector<Elem> coset_of(g.order(), static_cast<Elem>(-1));
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset_of[x] != static_cast<Elem>(-1)) continue;
    auto id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem y : n.elements) coset_of[g.mul(x, y)] = id;
  }
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = coset_of[g.mul(reps[a], reps[b])];
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(m);
    for (Elem r : reps) labels.push_back(g.label(r) + "N");
  }
  return Quotient{Group(m, std::move(table), std::move(labels)), Homomorphism{std::move(coset_of)}, std::move(reps)};
}

struct SubgroupProperties {
  bool is_abelian = false;
  bool is_cyclic = false;
  bool is_elementary_abelian = false;
  /// log_p |S| when S is elementary abelian (0 for the trivial group).
  std::optional<unsigned> rank;
  std::size_t exponent = 1;
  /// element order -> number of elements of that order
  std::map<unsigned, std::size_t> element_orders;
};

inline bool is_abelian(const Group& g, const SubgroupSet& s) {
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (std::size_t j = i + 1; j < s.generators.size(); ++j)
      if (g.mul(s.generators[i], s.generators[j]) != g.mul(s.generators[j], s.generators[i])) return false;
  return true;
}

inline bool is_cyclic(const Group& g, const SubgroupSet& s) {
  for (Elem x : s.elements)
    if (g.element_order(x) == s.order()) return true;
  return false;
}

inline SubgroupProperties subgroup_properties(const Group& g, const SubgroupSet& s) {
  SubgroupProperties p;
  p.is_abelian = is_abelian(g, s);
  for (Elem x : s.elements) {
    unsigned o = g.element_order(x);
    ++p.element_orders[o];
    p.exponent = std::lcm(p.exponent, static_cast<std::size_t>(o));
  }
  p.is_cyclic = p.element_orders.rbegin()->first == s.order();
  if (s.order() == 1) {
    p.is_elementary_abelian = true;
    p.rank = 0;
  } else if (p.is_abelian && is_prime(p.exponent)) {
    p.is_elementary_abelian = true;
    unsigned r = 0;
    for (std::size_t n = s.order(); n > 1; n /= p.exponent) ++r;
    p.rank = r;
  }
  return p;
}

}  // namespace roq
