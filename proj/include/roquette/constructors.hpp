#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "roquette/error.hpp"
#include "roquette/group.hpp"

namespace roq {

namespace detail {
inline void check_bound(std::size_t order, std::size_t bound, const char* what) {
  if (order > bound)
    throw BoundExceeded(std::string(what) + ": order " + std::to_string(order) + " exceeds bound " +
                        std::to_string(bound));
}

inline std::size_t mod(long long a, std::size_t n) {
  long long r = a % static_cast<long long>(n);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(n) : r);
}

inline std::size_t pow_mod(std::size_t base, std::size_t e, std::size_t n) {
  std::size_t r = 1 % n;
  base %= n;
  while (e) {
    if (e & 1) r = r * base % n;
    base = base * base % n;
    e >>= 1;
  }
  return r;
}
}  // namespace detail

/// C_n with element i = g^i.
inline Group build_cyclic(std::size_t n, std::size_t bound = kDefaultOrderBound) {
  if (n == 0) throw Error("cyclic: order must be positive");
  detail::check_bound(n, bound, "cyclic");
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  return Group(n, std::move(t));
}

enum class TwoGroupKind { dihedral, semidihedral, quaternion };

inline const char* to_string(TwoGroupKind k) {
  switch (k) {
    case TwoGroupKind::dihedral: return "dihedral";
    case TwoGroupKind::semidihedral: return "semidihedral";
    case TwoGroupKind::quaternion: return "quaternion";
  }
  return "?";
}

/// Dihedral, semidihedral or generalized quaternion group of order 2^n.
///
/// Elements are r^a s^b at index a + b * 2^(n-1), with r of order 2^(n-1).
/// Dihedral groups of order 4 and 8 are accepted (they are not Roquette);
/// semidihedral needs order >= 16 and quaternion order >= 8.
inline Group build_two_group(TwoGroupKind kind, std::size_t order, std::size_t bound = kDefaultOrderBound) {
  if (order < 4 || (order & (order - 1)) != 0) throw Error("two-group order must be a power of 2, at least 4");
  if (kind == TwoGroupKind::semidihedral && order < 16) throw Error("semidihedral groups need order >= 16");
  if (kind == TwoGroupKind::quaternion && order < 8) throw Error("quaternion groups need order >= 8");
  detail::check_bound(order, bound, to_string(kind));
  const std::size_t m = order / 2;  // order of r
  // s r s^-1 = r^e and s^2 = r^sq
  const std::size_t e = kind == TwoGroupKind::semidihedral ? m / 2 - 1 : m - 1;
  const std::size_t sq = kind == TwoGroupKind::quaternion ? m / 2 : 0;
  auto idx = [m](std::size_t a, std::size_t b) { return static_cast<Elem>(a % m + b * m); };
  std::vector<Elem> t(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t a = x % m, b = x / m;
    labels[x] = "r^" + std::to_string(a) + (b ? "s" : "");
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t c = y % m, d = y / m;
      // r^a s^b r^c s^d = r^(a + c e^b) s^(b+d)
      std::size_t exp = (a + (b ? c * e : c)) % m;
      std::size_t sb = b + d;
      if (sb == 2) {
        exp = (exp + sq) % m;
        sb = 0;
      }
      t[x * order + y] = idx(exp, sb);
    }
  }
  return Group(order, std::move(t), std::move(labels));
}

/// Index of the Heisenberg triple (a, b, c) in build_extraspecial(p).
inline Elem heisenberg_index(unsigned p, std::size_t a, std::size_t b, std::size_t c) {
  return static_cast<Elem>(a % p + p * (b % p) + p * p * (c % p));
}

/// Extraspecial group of order p^3 and exponent p (p odd), as Heisenberg triples
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'). f1 = (1,0,0), f2 = (0,1,0), z = (0,0,1).
inline Group build_extraspecial(unsigned p, std::size_t bound = kDefaultOrderBound) {
  if (p == 2 || !is_prime(p)) throw Error("extraspecial: p must be an odd prime");
  const std::size_t n = std::size_t{p} * p * p;
  detail::check_bound(n, bound, "extraspecial");
  std::vector<Elem> t(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t a = x % p, b = (x / p) % p, c = x / (std::size_t{p} * p);
    labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (std::size_t{p} * p);
      t[x * n + y] = heisenberg_index(p, a + a2, b + b2, c + c2 + a * b2);
    }
  }
  return Group(n, std::move(t), std::move(labels));
}

/// Componentwise product; (g1, g2) has index g1 * |G2| + g2.
inline Group build_direct_product(const Group& g1, const Group& g2, std::size_t bound = kDefaultOrderBound) {
  const std::size_t n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  detail::check_bound(n, bound, "direct product");
  std::vector<Elem> t(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    Elem a = static_cast<Elem>(x / n2), b = static_cast<Elem>(x % n2);
    labels[x] = "(" + g1.label(a) + "," + g2.label(b) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      Elem c = static_cast<Elem>(y / n2), d = static_cast<Elem>(y % n2);
      t[x * n + y] = static_cast<Elem>(g1.mul(a, c) * n2 + g2.mul(b, d));
    }
  }
  return Group(n, std::move(t), std::move(labels));
}

/// An automorphism, as the permutation it induces on element indices.
using Automorphism = std::vector<Elem>;

inline Automorphism identity_automorphism(std::size_t n) {
  Automorphism a(n);
  std::iota(a.begin(), a.end(), Elem{0});
  return a;
}

/// (a o b)(x) = a(b(x))
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

inline bool is_automorphism(const Group& g, const Automorphism& a) {
  if (a.size() != g.order() || a[0] != 0) return false;
  std::vector<std::uint8_t> hit(g.order());
  for (Elem v : a) {
    if (v >= g.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      if (a[g.mul(x, y)] != g.mul(a[x], a[y])) return false;
  return true;
}

/// Automorphism of g determined by images of gens; throws if the assignment does not extend.
inline Automorphism automorphism_from_generators(const Group& g, std::span<const Elem> gens,
                                                 std::span<const Elem> images) {
  auto hom = homomorphism_from_generators(g, g, gens, images);
  if (!hom) throw Error("generator images do not define an endomorphism");
  std::vector<std::uint8_t> hit(g.order());
  for (Elem v : hom->image_of) {
    if (hit[v]) throw Error("generator images define a non-injective endomorphism");
    hit[v] = 1;
  }
  return std::move(hom->image_of);
}

/// A homomorphism K -> Aut(N): auto_of[k] is the automorphism of N by which k acts.
struct ActionHomomorphism {
  std::vector<Automorphism> auto_of;
};

/// auto_of[k1 k2] = auto_of[k1] o auto_of[k2], and each auto_of[k] is an automorphism of n.
inline bool is_valid_action(const Group& k, const Group& n, const ActionHomomorphism& act) {
  if (act.auto_of.size() != k.order()) return false;
  for (const auto& a : act.auto_of)
    if (!is_automorphism(n, a)) return false;
  for (Elem x = 0; x < k.order(); ++x)
    for (Elem y : k.generators())
      if (act.auto_of[k.mul(x, y)] != compose(act.auto_of[x], act.auto_of[y])) return false;
  return act.auto_of[0] == identity_automorphism(n.order());
}

/// Index of (n, k) in build_semidirect(N, K, ...): lexicographic in (n, k).
inline Elem semidirect_index(Elem n, Elem k, std::size_t k_order) {
  return static_cast<Elem>(n * k_order + k);
}

/// N x| K with (n1,k1)(n2,k2) = (n1 * act[k1](n2), k1 k2).
inline Group build_semidirect(const Group& n, const Group& k, const ActionHomomorphism& act,
                              std::size_t bound = kDefaultOrderBound) {
  const std::size_t nn = n.order(), nk = k.order(), total = nn * nk;
  detail::check_bound(total, bound, "semidirect product");
  if (!is_valid_action(k, n, act)) throw Error("semidirect: action is not a homomorphism into Aut(N)");
  std::vector<Elem> t(total * total);
  std::vector<std::string> labels(total);
  for (std::size_t x = 0; x < total; ++x) {
    Elem n1 = static_cast<Elem>(x / nk), k1 = static_cast<Elem>(x % nk);
    labels[x] = "(" + n.label(n1) + "," + k.label(k1) + ")";
    const auto& a = act.auto_of[k1];
    for (std::size_t y = 0; y < total; ++y) {
      Elem n2 = static_cast<Elem>(y / nk), k2 = static_cast<Elem>(y % nk);
      t[x * total + y] = semidirect_index(n.mul(n1, a[n2]), k.mul(k1, k2), nk);
    }
  }
  return Group(total, std::move(t), std::move(labels));
}

/// The group structure of a subgroup, with element i of the result = s.elements[i].
inline Group subgroup_as_group(const Group& g, const SubgroupSet& s) {
  const std::size_t m = s.order();
  std::vector<Elem> pos(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i) pos[s.elements[i]] = static_cast<Elem>(i);
  std::vector<Elem> t(m * m);
  std::vector<std::string> labels;
  if (g.has_labels())
    for (Elem x : s.elements) labels.push_back(g.label(x));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = pos[g.mul(s.elements[a], s.elements[b])];
  return Group(m, std::move(t), std::move(labels));
}

struct CentralProduct {
  Group group;
  Homomorphism from_first;   // G1 -> G1 o G2
  Homomorphism from_second;  // G2 -> G1 o G2
};

/// (G1 x G2)/N with N = {(z, theta(z)^-1) : z in Z1}; theta[i] is the image of z1.elements[i].
inline CentralProduct build_central_product(const Group& g1, const Group& g2, const SubgroupSet& z1,
                                            const SubgroupSet& z2, const std::vector<Elem>& theta,
                                            std::size_t bound = kDefaultOrderBound) {
  const auto c1 = center(g1), c2 = center(g2);
  if (!z1.is_subgroup_of(c1) || !z2.is_subgroup_of(c2)) throw Error("central product: Z_i is not central");
  if (theta.size() != z1.order() || z1.order() != z2.order())
    throw Error("central product: theta is not a bijection Z1 -> Z2");
  std::map<Elem, Elem> th;
  std::set<Elem> img;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!z2.contains(theta[i])) throw Error("central product: theta leaves Z2");
    th[z1.elements[i]] = theta[i];
    img.insert(theta[i]);
  }
  if (img.size() != z2.order()) throw Error("central product: theta is not injective");
  for (Elem a : z1.elements)
    for (Elem b : z1.elements)
      if (th[g1.mul(a, b)] != g2.mul(th[a], th[b])) throw Error("central product: theta is not a homomorphism");
  Group prod = build_direct_product(g1, g2, bound * z1.order());
  const std::size_t n2 = g2.order();
  std::vector<Elem> nel;
  for (Elem z : z1.elements) nel.push_back(static_cast<Elem>(z * n2 + g2.inv(th[z])));
  auto n = subgroup_from_elements(prod, nel);
  detail::check_bound(prod.order() / n.order(), bound, "central product");
  auto q = quotient(prod, n);
  Homomorphism f1{std::vector<Elem>(g1.order())}, f2{std::vector<Elem>(g2.order())};
  for (Elem x = 0; x < g1.order(); ++x) f1.image_of[x] = q.projection(static_cast<Elem>(x * n2));
  for (Elem y = 0; y < g2.order(); ++y) f2.image_of[y] = q.projection(y);
  return CentralProduct{std::move(q.group), std::move(f1), std::move(f2)};
}

/// Aut(C_n) as multiplication by units; element i of `table` is units[i].
struct AutomorphismGroup {
  std::size_t n = 0;
  std::vector<unsigned> units;  // ascending, units[0] = 1
  std::vector<Automorphism> elements;
  Group table;

  Elem index_of_unit(unsigned u) const {
    auto it = std::lower_bound(units.begin(), units.end(), u % n);
    if (it == units.end() || *it != u % n) throw Error("not a unit modulo n");
    return static_cast<Elem>(it - units.begin());
  }
};

inline Automorphism cyclic_power_map(std::size_t n, std::size_t u) {
  Automorphism a(n);
  for (std::size_t x = 0; x < n; ++x) a[x] = static_cast<Elem>(x * u % n);
  return a;
}

inline AutomorphismGroup build_units_mod_n(std::size_t n, std::size_t bound = kDefaultOrderBound) {
  if (n == 0) throw Error("units: modulus must be positive");
  detail::check_bound(n, bound, "units mod n");
  std::vector<unsigned> units;
  for (std::size_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(static_cast<unsigned>(u));
  if (n == 1) units = {0};
  const std::size_t m = units.size();
  std::map<unsigned, Elem> pos;
  for (std::size_t i = 0; i < m; ++i) pos[units[i]] = static_cast<Elem>(i);
  std::vector<Elem> t(m * m);
  std::vector<std::string> labels(m);
  std::vector<Automorphism> autos;
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = "x" + std::to_string(units[a]);
    autos.push_back(cyclic_power_map(n, units[a]));
    for (std::size_t b = 0; b < m; ++b)
      t[a * m + b] = pos[static_cast<unsigned>(std::size_t{units[a]} * units[b] % n)];
  }
  // n = 1: the single "unit" 0 acts as the identity of the trivial group.
  return AutomorphismGroup{n, std::move(units), std::move(autos), Group(m, std::move(t), std::move(labels))};
}

/// Exponent u of alpha_p : g_p -> g_p^(1 + p^(k-1)), fixing the co-p part of C_n.
/// The identity when p^2 does not divide n.
inline unsigned alpha_p(std::size_t n, unsigned p) {
  if (!is_prime(p) || n % p != 0) throw Error("alpha_p: p must be a prime dividing n");
  auto [q, k] = prime_part(n, p);
  if (k < 2) return 1 % n;
  const std::size_t rest = n / q;
  const std::size_t target = (1 + q / p) % q;  // 1 + p^(k-1) mod p^k
  // CRT: u = target mod q, u = 1 mod rest
  for (std::size_t u = 1; u < n + 1; ++u)
    if (u % q == target % q && u % rest == 1 % rest) return static_cast<unsigned>(u % n);
  throw Error("alpha_p: CRT failed");
}

/// Multiplicative order of u modulo n.
inline std::size_t unit_order(std::size_t u, std::size_t n) {
  if (n == 1) return 1;
  if (std::gcd(u, n) != 1) throw Error("unit_order: " + std::to_string(u) + " is not a unit mod " + std::to_string(n));
  std::size_t k = 1, x = u % n;
  while (x != 1 % n) {
    x = x * u % n;
    ++k;
  }
  return k;
}

/// Permutation group generated by the given permutations of {0..degree-1}.
/// Elements are listed in breadth-first order from the identity.
struct PermutationGroup {
  Group group;
  std::vector<std::vector<unsigned>> perms;
};

inline PermutationGroup build_permutation_group(std::size_t degree, const std::vector<std::vector<unsigned>>& gens,
                                                std::size_t bound = kDefaultOrderBound) {
  using Perm = std::vector<unsigned>;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<Perm> elems{id};
  std::map<Perm, Elem> pos{{id, 0}};
  auto mulp = [](const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& g : gens) {
      if (g.size() != degree) throw Error("permutation has wrong degree");
      Perm c = mulp(elems[q], g);
      if (!pos.count(c)) {
        pos[c] = static_cast<Elem>(elems.size());
        elems.push_back(c);
        detail::check_bound(elems.size(), bound, "permutation group");
      }
    }
  const std::size_t n = elems.size();
  std::vector<Elem> t(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::string s = "[";
    for (std::size_t i = 0; i < degree; ++i) s += (i ? " " : "") + std::to_string(elems[a][i]);
    labels[a] = s + "]";
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = pos[mulp(elems[a], elems[b])];
  }
  return PermutationGroup{Group(n, std::move(t), std::move(labels)), std::move(elems)};
}

/// 2x2 matrix over F_p, row-major {a, b, c, d}.
using Mat2 = std::array<unsigned, 4>;

struct Sl2 {
  unsigned p = 0;
  Group group;
  std::vector<Mat2> matrix;  // matrix[x] for element x
  Elem upper = 0;            // [[1,1],[0,1]]
  Elem lower = 0;            // [[1,0],[1,1]]

  Elem index_of(const Mat2& m) const {
    auto it = std::find(matrix.begin(), matrix.end(), m);
    if (it == matrix.end()) throw Error("matrix is not in SL(2,p)");
    return static_cast<Elem>(it - matrix.begin());
  }
};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, unsigned p) {
  return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
          (x[2] * y[1] + x[3] * y[3]) % p};
}

/// SL(2,p) for an odd prime p; identity first, then lexicographic (a,b,c,d).
inline Sl2 build_sl2(unsigned p, std::size_t bound = kDefaultOrderBound) {
  if (p == 2 || !is_prime(p)) throw Error("SL(2,p): p must be an odd prime");
  detail::check_bound(std::size_t{p} * (std::size_t{p} * p - 1), bound, "SL(2,p)");
  std::vector<Mat2> ms{{1, 0, 0, 1}};
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      for (unsigned c = 0; c < p; ++c)
        for (unsigned d = 0; d < p; ++d) {
          Mat2 m{a, b, c, d};
          if ((a * d + p * p - b * c) % p == 1 && m != Mat2{1, 0, 0, 1}) ms.push_back(m);
        }
  const std::size_t n = ms.size();
  std::map<Mat2, Elem> pos;
  for (std::size_t i = 0; i < n; ++i) pos[ms[i]] = static_cast<Elem>(i);
  std::vector<Elem> t(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& m = ms[x];
    labels[x] = "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," +
                std::to_string(m[3]) + "]]";
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = pos[mat_mul(ms[x], ms[y], p)];
  }
  Sl2 out{p, Group(n, std::move(t), std::move(labels)), ms, 0, 0};
  out.upper = out.index_of({1, 1, 0, 1});
  out.lower = out.index_of({1, 0, 1, 1});
  return out;
}

/// Upper-triangular matrices of SL(2,p), order p(p-1).
inline SubgroupSet borel_subgroup(const Sl2& s) {
  std::vector<Elem> el;
  for (std::size_t x = 0; x < s.matrix.size(); ++x)
    if (s.matrix[x][2] == 0) el.push_back(static_cast<Elem>(x));
  return subgroup_from_elements(s.group, el);
}

/// Upper unitriangular matrices, order p.
inline SubgroupSet unipotent_subgroup(const Sl2& s) { return closure(s.group, {s.upper}); }

/// P = E o C_{p^i} with the SL(2,p) action fixing z and acting on P/Z by matrices.
struct ExtraspecialAction {
  unsigned p = 0;
  unsigned i = 0;
  Group P;
  Sl2 sl2;
  ActionHomomorphism act;  // indexed by SL(2,p) elements
  Elem f1 = 0, f2 = 0, z = 0;
  SubgroupSet E;  // image of the extraspecial factor
  SubgroupSet Z;  // Z(P), cyclic of order p^i
};

/// Builds P and the SL(2,p) action from the two transvection actions
///   [[1,1],[0,1]]: f1 -> f1, f2 -> f1 f2, z -> z
///   [[1,0],[1,1]]: f1 -> f1 f2, f2 -> f2, z -> z
/// extended along the Cayley graph of SL(2,p). Throws if the extension is
/// inconsistent or the generated automorphism group is not of order |SL(2,p)|.
inline ExtraspecialAction build_sl2_action_on_P(unsigned p, unsigned i, std::size_t bound = kDefaultOrderBound) {
  if (i < 1) throw Error("extraspecial action: i must be at least 1");
  std::size_t pi = 1;
  for (unsigned k = 0; k < i; ++k) pi *= p;
  const std::size_t sl_order = std::size_t{p} * (std::size_t{p} * p - 1);
  detail::check_bound(std::size_t{p} * p * pi * sl_order, bound, "P x| SL(2,p)");
  Group e = build_extraspecial(p, bound);
  Group c = build_cyclic(pi, bound);
  auto ze = closure(e, {heisenberg_index(p, 0, 0, 1)});
  auto zc = closure(c, {static_cast<Elem>(pi / p)});
  std::vector<Elem> theta;
  for (Elem x : ze.elements) theta.push_back(static_cast<Elem>((x / (p * p)) * (pi / p) % pi));
  auto cp = build_central_product(e, c, ze, zc, theta, bound);

  ExtraspecialAction out{p, i, std::move(cp.group), build_sl2(p, bound), {}, 0, 0, 0, {}, {}};
  const Group& P = out.P;
  out.f1 = cp.from_first(heisenberg_index(p, 1, 0, 0));
  out.f2 = cp.from_first(heisenberg_index(p, 0, 1, 0));
  out.z = cp.from_second(1);
  {
    std::vector<Elem> eimg(cp.from_first.image_of.begin(), cp.from_first.image_of.end());
    out.E = subgroup_from_elements(P, eimg);
  }
  out.Z = center(P);

  const std::vector<Elem> gens{out.f1, out.f2, out.z};
  const Elem f1f2 = P.mul(out.f1, out.f2);
  const std::vector<Elem> up_img{out.f1, f1f2, out.z};
  const std::vector<Elem> lo_img{f1f2, out.f2, out.z};
  std::vector<Automorphism> gen_autos{automorphism_from_generators(P, gens, up_img),
                                      automorphism_from_generators(P, gens, lo_img)};
  const std::vector<Elem> sl_gens{out.sl2.upper, out.sl2.lower};
  auto map = extend_on_generators<Automorphism>(out.sl2.group, sl_gens, gen_autos, identity_automorphism(P.order()),
                                                [](const Automorphism& a, const Automorphism& b) { return compose(a, b); });
  if (!map) throw Error("extraspecial action: generator actions do not satisfy the relations of SL(2,p)");
  std::set<Automorphism> distinct(map->begin(), map->end());
  if (distinct.size() != sl_order) throw Error("extraspecial action: closure order mismatch (action not faithful)");
  out.act.auto_of = std::move(*map);
  return out;
}

/// P x| K for K a subgroup of SL(2,p) acting by restriction.
struct ExtraspecialSemidirect {
  Group group;
  std::size_t p_order = 0;
  std::size_t k_order = 0;
  SubgroupSet P;               // {(x, 1)}
  SubgroupSet K;               // {(1, k)}
  std::vector<Elem> k_to_sl2;  // K index -> SL(2,p) element

  Elem of(Elem x, Elem k) const { return semidirect_index(x, k, k_order); }
  Elem p_part(Elem g) const { return static_cast<Elem>(g / k_order); }
  Elem k_part(Elem g) const { return static_cast<Elem>(g % k_order); }
};

inline ExtraspecialSemidirect build_extraspecial_semidirect(const ExtraspecialAction& a, const SubgroupSet& k,
                                                            std::size_t bound = kDefaultOrderBound) {
  Group kg = subgroup_as_group(a.sl2.group, k);
  ActionHomomorphism act;
  for (Elem x : k.elements) act.auto_of.push_back(a.act.auto_of[x]);
  Group g = build_semidirect(a.P, kg, act, bound);
  const std::size_t nk = kg.order();
  std::vector<Elem> pe, ke;
  for (Elem x = 0; x < a.P.order(); ++x) pe.push_back(semidirect_index(x, 0, nk));
  for (Elem y = 0; y < nk; ++y) ke.push_back(y);
  auto P = subgroup_from_elements(g, pe);
  auto K = subgroup_from_elements(g, ke);
  return ExtraspecialSemidirect{std::move(g), a.P.order(), nk, std::move(P), std::move(K), k.elements};
}

/// C_n x| S for S <= Aut(C_n) generated by the given units.
struct CyclicExtension {
  std::size_t n = 0;
  std::vector<unsigned> units;  // S, ascending; K index -> unit
  Group group;
  SubgroupSet kernel;           // C_n = {(x, 1)}
  SubgroupSet complement;       // S = {(0, s)}
  std::vector<unsigned> pi;     // element -> unit by which it acts on C_n

  Elem of(std::size_t x, std::size_t k) const { return semidirect_index(static_cast<Elem>(x % n), static_cast<Elem>(k), units.size()); }
  std::size_t c_part(Elem g) const { return g / units.size(); }
  std::size_t s_part(Elem g) const { return g % units.size(); }
  Elem unit_index(unsigned u) const {
    auto it = std::find(units.begin(), units.end(), u % n);
    if (it == units.end()) throw Error("unit not in S");
    return static_cast<Elem>(it - units.begin());
  }
};

/// Subgroup of (Z/n)^x generated by the given units, ascending.
inline std::vector<unsigned> unit_subgroup(std::size_t n, const std::vector<unsigned>& gens) {
  std::set<unsigned> s{static_cast<unsigned>(1 % n)};
  std::vector<unsigned> queue(s.begin(), s.end());
  for (unsigned g : gens)
    if (std::gcd(static_cast<std::size_t>(g), n) != 1 && n > 1) throw Error("generator " + std::to_string(g) + " is not a unit mod " + std::to_string(n));
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (unsigned g : gens) {
      auto v = static_cast<unsigned>(std::size_t{queue[q]} * g % n);
      if (s.insert(v).second) queue.push_back(v);
    }
  return {s.begin(), s.end()};
}

inline CyclicExtension build_cyclic_extension(std::size_t n, const std::vector<unsigned>& unit_gens,
                                              std::size_t bound = kDefaultOrderBound) {
  Group c = build_cyclic(n, bound);
  auto units = unit_subgroup(n, unit_gens);
  const std::size_t m = units.size();
  detail::check_bound(n * m, bound, "cyclic extension");
  std::map<unsigned, Elem> pos;
  for (std::size_t i = 0; i < m; ++i) pos[units[i]] = static_cast<Elem>(i);
  std::vector<Elem> t(m * m);
  std::vector<std::string> labels(m);
  ActionHomomorphism act;
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = "x" + std::to_string(units[a]);
    act.auto_of.push_back(cyclic_power_map(n, units[a]));
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = pos[static_cast<unsigned>(std::size_t{units[a]} * units[b] % n)];
  }
  Group s(m, std::move(t), std::move(labels));
  Group g = build_semidirect(c, s, act, bound);
  std::vector<Elem> ke, se;
  std::vector<unsigned> pi(g.order());
  for (Elem x = 0; x < g.order(); ++x) pi[x] = units[x % m];
  for (std::size_t x = 0; x < n; ++x) ke.push_back(semidirect_index(static_cast<Elem>(x), 0, m));
  for (std::size_t y = 0; y < m; ++y) se.push_back(static_cast<Elem>(y));
  auto kernel = subgroup_from_elements(g, ke);
  auto comp = subgroup_from_elements(g, se);
  return CyclicExtension{n, std::move(units), std::move(g), std::move(kernel), std::move(comp), std::move(pi)};
}

/// Q_8 x| S_3 with S_3 permuting the axes i, j, k: the 3-cycle i -> j -> k and the
/// involution i -> j^-1, j -> i^-1, k -> k^-1. (The lift i <-> j conjugates the
/// 3-cycle to its inverse only modulo Inn(Q_8), so it does not give an action.)
struct Q8S3 {
  Group group;
  SubgroupSet q8;
  SubgroupSet s3;
};

inline Q8S3 build_q8_s3() {
  Group q8 = build_two_group(TwoGroupKind::quaternion, 8);
  const Elem i = 1, j = 4, k = q8.mul(i, j);
  const std::vector<Elem> gens{i, j};
  auto cyc = automorphism_from_generators(q8, gens, std::vector<Elem>{j, k});
  auto swap = automorphism_from_generators(q8, gens, std::vector<Elem>{q8.inv(j), q8.inv(i)});
  auto s3 = build_permutation_group(3, {{1, 2, 0}, {1, 0, 2}});
  // Generators of the permutation group are reached at BFS indices; map them explicitly.
  std::vector<Elem> s3_gens;
  for (const auto& perm : std::vector<std::vector<unsigned>>{{1, 2, 0}, {1, 0, 2}})
    s3_gens.push_back(static_cast<Elem>(std::find(s3.perms.begin(), s3.perms.end(), perm) - s3.perms.begin()));
  std::vector<Automorphism> imgs{cyc, swap};
  auto map = extend_on_generators<Automorphism>(s3.group, s3_gens, imgs, identity_automorphism(8),
                                                [](const Automorphism& a, const Automorphism& b) { return compose(a, b); });
  if (!map) throw Error("Q8 x| S3: axis permutations do not define an action");
  Group g = build_semidirect(q8, s3.group, ActionHomomorphism{std::move(*map)});
  std::vector<Elem> qe, se;
  for (Elem x = 0; x < 8; ++x) qe.push_back(semidirect_index(x, 0, 6));
  for (Elem y = 0; y < 6; ++y) se.push_back(y);
  auto qs = subgroup_from_elements(g, qe);
  auto ss = subgroup_from_elements(g, se);
  return Q8S3{std::move(g), std::move(qs), std::move(ss)};
}

}  // namespace roq
