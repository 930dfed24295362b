#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "roquette/constructors.hpp"
#include "roquette/error.hpp"
#include "roquette/group.hpp"

namespace roq {

/// A cyclic group of order m acting on C_n = Z/n by g -> g^e.
struct CyclicModuleAction {
  std::size_t n = 1;
  std::size_t m = 1;
  std::size_t e = 1;
};

/// Action generated by g -> g^e; m is the multiplicative order of e mod n.
inline CyclicModuleAction make_cyclic_action(std::size_t n, std::size_t e) {
  if (n == 0) throw Error("cyclic action: modulus must be positive");
  if (std::gcd(e, n) != 1 && n > 1) throw Error("cyclic action: exponent is not a unit");
  return CyclicModuleAction{n, unit_order(e, n), e % n};
}

struct CohomologyResult {
  /// Cyclic factor orders, ascending; empty for the trivial group.
  std::vector<std::size_t> factors;
  std::optional<std::size_t> cocycle_dim;
  std::optional<std::size_t> coboundary_dim;

  std::size_t order() const {
    std::size_t o = 1;
    for (auto f : factors) o *= f;
    return o;
  }
  bool is_trivial() const { return factors.empty(); }
};

namespace detail {
inline void check_cyclic_action(const CyclicModuleAction& a) {
  if (a.n == 0 || a.m == 0) throw Error("cyclic action: n and m must be positive");
  if (a.n > 1 && std::gcd(a.e, a.n) != 1) throw Error("cyclic action: exponent is not a unit");
  if (pow_mod(a.e, a.m, a.n) != 1 % a.n) throw Error("cyclic action: e^m is not 1 mod n");
}

/// Applies x -> coeff * x on Z/n and returns (|kernel|, image as a membership mask).
struct EndoData {
  std::size_t kernel_order = 0;
  std::vector<std::uint8_t> kernel;
  std::vector<std::uint8_t> image;
};

inline EndoData endomorphism(std::size_t n, std::size_t coeff) {
  EndoData d{0, std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = x * (coeff % n) % n;
    d.image[y] = 1;
    if (y == 0) {
      d.kernel[x] = 1;
      ++d.kernel_order;
    }
  }
  return d;
}

inline std::size_t count(const std::vector<std::uint8_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

/// |A| / |B| for B <= A <= Z/n; the quotient of a cyclic group is cyclic.
inline CohomologyResult cyclic_quotient(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (b[x] && !a[x]) throw Error("cohomology: image is not contained in the kernel");
  const std::size_t q = count(a) / count(b);
  CohomologyResult r;
  if (q > 1) r.factors.push_back(q);
  return r;
}

inline std::size_t norm_coefficient(const CyclicModuleAction& a) {
  std::size_t s = 0, pw = 1 % a.n;
  for (std::size_t i = 0; i < a.m; ++i) {
    s = (s + pw) % a.n;
    pw = pw * a.e % a.n;
  }
  return s;
}
}  // namespace detail

/// Norm map t(x) = prod_{i<m} alpha^i(x), written additively as x -> (1 + e + ... + e^(m-1)) x.
inline std::size_t norm_map(const CyclicModuleAction& a, std::size_t x) {
  return x * detail::norm_coefficient(a) % a.n;
}

/// H^1 = Ker(t) / Im(x -> alpha(x) x^-1).
inline CohomologyResult h1_cyclic(const CyclicModuleAction& a) {
  detail::check_cyclic_action(a);
  auto t = detail::endomorphism(a.n, detail::norm_coefficient(a));
  auto delta = detail::endomorphism(a.n, (a.e + a.n - 1) % a.n);
  return detail::cyclic_quotient(t.kernel, delta.image);
}

/// H^2 = C_{C_n}(alpha) / Im(t).
inline CohomologyResult h2_cyclic(const CyclicModuleAction& a) {
  detail::check_cyclic_action(a);
  auto t = detail::endomorphism(a.n, detail::norm_coefficient(a));
  auto delta = detail::endomorphism(a.n, (a.e + a.n - 1) % a.n);
  return detail::cyclic_quotient(delta.kernel, t.image);
}

/// A linear action of a group on F_p^dim; matrix_of[g] is row-major dim x dim.
struct FpLinearAction {
  unsigned p = 2;
  std::size_t dim = 0;
  std::vector<std::vector<unsigned>> matrix_of;

  std::vector<unsigned> apply(Elem g, const std::vector<unsigned>& v) const {
    std::vector<unsigned> out(dim, 0);
    const auto& m = matrix_of[g];
    for (std::size_t r = 0; r < dim; ++r) {
      unsigned long long s = 0;
      for (std::size_t c = 0; c < dim; ++c) s += static_cast<unsigned long long>(m[r * dim + c]) * v[c];
      out[r] = static_cast<unsigned>(s % p);
    }
    return out;
  }
};

/// Natural action of SL(2,p) on column vectors of F_p^2.
inline FpLinearAction natural_module(const Sl2& s) {
  FpLinearAction a{s.p, 2, {}};
  for (const auto& m : s.matrix) a.matrix_of.emplace_back(m.begin(), m.end());
  return a;
}

/// Row reduction over F_p, one row at a time.
class FpEchelon {
 public:
  FpEchelon(unsigned p, std::size_t cols) : p_(p), cols_(cols) {}

  /// Reduces the row against the basis and keeps it if independent. Returns true if kept.
  bool insert(std::vector<unsigned> row) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto piv = pivots_[i];
      if (row[piv] == 0) continue;
      const unsigned f = row[piv];
      const auto& b = rows_[i];
      for (std::size_t c = piv; c < cols_; ++c) row[c] = static_cast<unsigned>((row[c] + (p_ - f) * b[c]) % p_);
    }
    std::size_t piv = 0;
    while (piv < cols_ && row[piv] == 0) ++piv;
    if (piv == cols_) return false;
    const unsigned inv = inverse(row[piv]);
    for (std::size_t c = piv; c < cols_; ++c) row[c] = static_cast<unsigned>(static_cast<unsigned long long>(row[c]) * inv % p_);
    // Keep the basis fully reduced at the new pivot column.
    for (auto& b : rows_) {
      if (b[piv] == 0) continue;
      const unsigned f = b[piv];
      for (std::size_t c = 0; c < cols_; ++c) b[c] = static_cast<unsigned>((b[c] + (p_ - f) * row[c]) % p_);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  unsigned inverse(unsigned a) const {
    unsigned r = 1;
    for (unsigned e = p_ - 2, b = a; e; e >>= 1, b = b * b % p_)
      if (e & 1) r = r * b % p_;
    return r;
  }

  unsigned p_;
  std::size_t cols_;
  std::vector<std::vector<unsigned>> rows_;
  std::vector<std::size_t> pivots_;
};

/// H^1(G, V) for V = F_p^dim, from the full pair system f(gh) = f(g) + g f(h).
inline CohomologyResult h1_linear(const Group& g, const FpLinearAction& act) {
  if (!is_prime(act.p)) throw Error("h1_linear: p must be prime");
  if (act.matrix_of.size() != g.order()) throw Error("h1_linear: one matrix per group element required");
  const std::size_t d = act.dim, n = g.order(), vars = n * d;
  for (const auto& m : act.matrix_of)
    if (m.size() != d * d) throw Error("h1_linear: degenerate action matrix");
  for (Elem x = 0; x < n; ++x)
    for (Elem y : g.generators()) {
      // matrix_of must be a homomorphism
      const auto& a = act.matrix_of[x];
      const auto& b = act.matrix_of[y];
      const auto& ab = act.matrix_of[g.mul(x, y)];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          unsigned long long s = 0;
          for (std::size_t k = 0; k < d; ++k) s += static_cast<unsigned long long>(a[r * d + k]) * b[k * d + c];
          if (s % act.p != ab[r * d + c] % act.p) throw Error("h1_linear: degenerate action matrices (not a homomorphism)");
        }
    }

  FpEchelon eqs(act.p, vars);
  const unsigned p = act.p;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = g.mul(x, y);
      const auto& m = act.matrix_of[x];
      for (std::size_t r = 0; r < d; ++r) {
        std::vector<unsigned> row(vars, 0);
        row[xy * d + r] = (row[xy * d + r] + 1) % p;
        row[x * d + r] = (row[x * d + r] + p - 1) % p;
        for (std::size_t c = 0; c < d; ++c)
          row[y * d + c] = static_cast<unsigned>((row[y * d + c] + static_cast<unsigned long long>(p - m[r * d + c] % p)) % p);
        eqs.insert(std::move(row));
      }
    }
  const std::size_t cocycle_dim = vars - eqs.rank();

  FpEchelon cob(p, vars);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<unsigned> a(d, 0);
    a[k] = 1;
    std::vector<unsigned> row(vars, 0);
    for (Elem x = 0; x < n; ++x) {
      auto ga = act.apply(x, a);
      for (std::size_t r = 0; r < d; ++r) row[x * d + r] = (ga[r] + p - a[r]) % p;
    }
    cob.insert(std::move(row));
  }
  const std::size_t coboundary_dim = cob.rank();
  CohomologyResult res;
  for (std::size_t k = coboundary_dim; k < cocycle_dim; ++k) res.factors.push_back(p);
  res.cocycle_dim = cocycle_dim;
  res.coboundary_dim = coboundary_dim;
  return res;
}

namespace detail {
inline void check_quotient(const Group& g, const SubgroupSet& n, const Quotient& q, const SubgroupSet& h) {
  if (q.projection.image_of.size() != g.order() || h.members.size() != q.group.order())
    throw Error("complement search: invalid quotient data");
  for (Elem x = 0; x < g.order(); ++x)
    if ((q.projection(x) == 0) != n.contains(x)) throw Error("complement search: quotient kernel is not N");
}

template <class Visit>
void for_each_complement(const Group& g, const SubgroupSet& n, const Quotient& q, const SubgroupSet& h, Visit visit) {
  check_quotient(g, n, q, h);
  const auto& hgens = h.generators;
  std::vector<std::vector<Elem>> lifts(hgens.size());
  for (std::size_t i = 0; i < hgens.size(); ++i)
    for (Elem x = 0; x < g.order(); ++x)
      if (q.projection(x) == hgens[i] && g.element_order(x) == q.group.element_order(hgens[i])) lifts[i].push_back(x);
  std::vector<Elem> choice(hgens.size());
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == hgens.size()) {
      auto d = closure(g, choice);
      if (d.order() != h.order()) return true;
      if ((d.members & n.members).count() != 1) return true;
      return visit(d);
    }
    for (Elem x : lifts[depth]) {
      choice[depth] = x;
      if (!self(self, depth + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
}
}  // namespace detail

/// A subgroup D with D n N = 1 and pi(D) = H, searched over lifts of the
/// generators of H in index order; nullopt when the extension does not split over H.
inline std::optional<SubgroupSet> find_complement(const Group& g, const SubgroupSet& n, const Quotient& q,
                                                  const SubgroupSet& h) {
  std::optional<SubgroupSet> found;
  detail::for_each_complement(g, n, q, h, [&](SubgroupSet d) {
    found = std::move(d);
    return false;
  });
  return found;
}

/// Every complement D (D n N = 1, pi(D) = H), sorted by element list.
inline std::vector<SubgroupSet> all_complements(const Group& g, const SubgroupSet& n, const Quotient& q,
                                                const SubgroupSet& h) {
  std::vector<SubgroupSet> out;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  detail::for_each_complement(g, n, q, h, [&](SubgroupSet d) {
    if (seen.insert(d.members).second) out.push_back(std::move(d));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const SubgroupSet& a, const SubgroupSet& b) { return a.elements < b.elements; });
  return out;
}

struct ComplementClasses {
  std::size_t under_n = 0;  // orbits under conjugation by N
  std::size_t under_g = 0;  // classes under conjugation by G
};

inline ComplementClasses complement_conjugacy_classes(const Group& g, const SubgroupSet& n,
                                                      const std::vector<SubgroupSet>& complements) {
  auto count_classes = [&](const std::vector<Elem>& conjugators) {
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> pos;
    for (std::size_t i = 0; i < complements.size(); ++i) pos.emplace(complements[i].members, i);
    std::vector<std::size_t> parent(complements.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < complements.size(); ++i)
      for (Elem c : conjugators) {
        auto it = pos.find(conjugate_members(g, c, complements[i]));
        if (it != pos.end()) parent[find(i)] = find(it->second);
      }
    std::size_t classes = 0;
    for (std::size_t i = 0; i < complements.size(); ++i)
      if (find(i) == i) ++classes;
    return classes;
  };
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return ComplementClasses{count_classes(n.elements), count_classes(all)};
}

}  // namespace roq
