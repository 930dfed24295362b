#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "roquette/cache.hpp"
#include "roquette/cohomology.hpp"
#include "roquette/constructors.hpp"
#include "roquette/definition.hpp"
#include "roquette/expansivity.hpp"
#include "roquette/group.hpp"
#include "roquette/lattice.hpp"
#include "roquette/parallel.hpp"
#include "roquette/report.hpp"
#include "roquette/structure.hpp"

namespace roq {

struct SuiteOptions {
  unsigned jobs = 1;
  const LatticeCache* cache = nullptr;
  /// Lattices of smaller groups are enumerated every time.
  std::size_t cache_min_order = 500;
  /// Subgroup budget per lattice (0 = unlimited); exceeding it skips the group.
  std::size_t max_subgroups = 0;
  std::vector<std::size_t> cyclic_n{5, 7, 8, 9, 15, 16, 20, 21, 24, 27, 32, 33};
  std::size_t cohomology_max_n = 200;
  /// Adds P = E o C_9 (order 1944 with SL(2,3)) where a suite supports it.
  bool include_heavy = false;
};

struct GroupContext {
  const BuiltGroup& built;
  const SubgroupLattice* lattice;
  unsigned jobs;
  std::vector<CheckOutcome> checks;

  const Group& group() const { return built.group; }
  const SubgroupLattice& lat() const {
    if (!lattice) throw Error("check needs a subgroup lattice");
    return *lattice;
  }
  void check(std::string id, bool ok, std::string detail = {}, std::vector<Witness> witnesses = {}) {
    checks.push_back({std::move(id), ok ? Outcome::pass : Outcome::fail, std::move(detail), std::move(witnesses)});
  }
};

struct GroupTask {
  std::string definition;
  std::string tag;
  bool needs_lattice = true;
  std::function<void(GroupContext&)> run;
};

struct SuiteSpec {
  std::string name;
  std::vector<GroupTask> tasks;
  std::vector<std::string> notes;
};

inline Witness subgroup_witness(std::string role, const SubgroupSet& s) { return {std::move(role), s.elements}; }
inline Witness element_witness(std::string role, Elem x) { return {std::move(role), {x}}; }

inline std::string group_fingerprint(const Group& g) {
  std::ostringstream out;
  out << g.order() << '-' << std::hex << std::setw(16) << std::setfill('0') << g.table_hash();
  return out.str();
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline std::vector<std::size_t> normal_elementary_abelian(const Group& g, const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  for (auto i : normal_subgroups(lat))
    if (!lat.subgroups[i].is_trivial() && subgroup_properties(g, lat.subgroups[i]).is_elementary_abelian) out.push_back(i);
  return out;
}

inline std::string count_text(std::size_t scanned, std::size_t expansive) {
  return std::to_string(scanned) + " trivial-core classes, " + std::to_string(expansive) + " expansive";
}

/// First expansive entry of a scan, as witnesses.
inline std::vector<Witness> expansive_witnesses(const std::vector<ScanEntry>& scan) {
  std::vector<Witness> out;
  for (const auto& e : scan)
    if (e.result.expansive) {
      out.push_back(subgroup_witness("expansive subgroup", e.result.subgroup));
      break;
    }
  return out;
}

// ---------------------------------------------------------------------------
// 2-groups and odd p-groups

inline void check_scan_empty(GroupContext& c) {
  auto scan = scan_expansive_trivial_core(c.group(), c.lat(), c.jobs);
  const auto exp = count_expansive(scan);
  c.check("no-expansive-trivial-core", exp == 0, count_text(scan.size(), exp), expansive_witnesses(scan));
}

inline void check_unique_order_p(GroupContext& c, unsigned p) {
  const auto& lat = c.lat();
  std::vector<std::size_t> minimal;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.subgroups[i].order() == p) minimal.push_back(i);
  bool ok = minimal.size() == 1;
  if (ok)
    for (const auto& s : lat.subgroups)
      if (!s.is_trivial() && !lat.subgroups[minimal[0]].is_subgroup_of(s)) ok = false;
  c.check("unique-minimal-subgroup", ok, std::to_string(minimal.size()) + " subgroups of order " + std::to_string(p));
}

inline bool is_dihedral_of_order_8(const Group& g, const SubgroupSet& s) {
  auto props = subgroup_properties(g, s);
  auto count = [&](unsigned o) { return props.element_orders.count(o) ? props.element_orders.at(o) : 0; };
  return s.order() == 8 && !props.is_abelian && count(2) == 5 && count(4) == 2;
}

/// Non-central subgroups of order 2 in a dihedral or semidihedral group.
inline void check_noncentral_involutions(GroupContext& c, std::size_t expected_classes) {
  const auto& g = c.group();
  const auto& lat = c.lat();
  const auto z = center(g);
  std::vector<std::size_t> reps;
  bool others_contain_z = true;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& s = lat.subgroups[i];
    if (s.is_trivial()) continue;
    const bool noncentral_involution = s.order() == 2 && !s.is_subgroup_of(z);
    if (!noncentral_involution && !z.is_subgroup_of(s)) others_contain_z = false;
    if (noncentral_involution && lat.class_reps[lat.class_of[i]] == i) reps.push_back(i);
  }
  c.check("center-order-2", z.order() == 2, "|Z| = " + std::to_string(z.order()));
  c.check("noncentral-involution-classes", reps.size() == expected_classes,
          std::to_string(reps.size()) + " classes, expected " + std::to_string(expected_classes));
  c.check("other-subgroups-contain-center", others_contain_z);
  bool tower = true;
  std::vector<Witness> bad;
  for (auto i : reps) {
    const auto& t = lat.subgroups[i];
    auto s = normalizer(g, t);
    auto tz = extend(g, t, z.elements);
    auto sp = subgroup_properties(g, s);
    auto ns = normalizer(g, s);
    if (!(s == tz) || !sp.is_elementary_abelian || sp.rank.value_or(0) != 2 || !is_dihedral_of_order_8(g, ns)) {
      tower = false;
      bad.push_back(subgroup_witness("T", t));
    }
  }
  c.check("normalizer-tower", tower, "N(T) = TZ is a Klein group and N(N(T)) is dihedral of order 8", bad);
}

// ---------------------------------------------------------------------------
// P x| SL(2,p) with P = E o C_{p^i}

struct ExtraspecialContext {
  ExtraspecialAction a;
  ExtraspecialSemidirect es;
  std::vector<Elem> sl_to_k;  // SL(2,p) element -> K index, or -1
  SubgroupSet P, K, E, Z;
  SubgroupSet f1_line;  // <f1>
  SubgroupSet T;        // the order-p subgroup of E in f1 Z normalized by the whole Borel subgroup
  SubgroupSet borel;    // Borel subgroup of SL(2,p), intersected with K

  ExtraspecialContext(unsigned p, unsigned i, const SubgroupSet* k_in_sl = nullptr)
      : a(build_sl2_action_on_P(p, i)),
        es(build_extraspecial_semidirect(a, k_in_sl ? *k_in_sl : whole_group(a.sl2.group))),
        sl_to_k(a.sl2.group.order(), static_cast<Elem>(-1)),
        P(es.P),
        K(es.K),
        E(embed_p(a.E)),
        Z(embed_p(a.Z)),
        f1_line(embed_p(closure(a.P, {a.f1}))),
        T(embed_p(borel_line(a))),
        borel(trivial_subgroup(es.group)) {
    for (std::size_t k = 0; k < es.k_to_sl2.size(); ++k) sl_to_k[es.k_to_sl2[k]] = static_cast<Elem>(k);
    std::vector<Elem> b;
    for (Elem x : borel_subgroup(a.sl2).elements)
      if (sl_to_k[x] != static_cast<Elem>(-1)) b.push_back(es.of(0, sl_to_k[x]));
    borel = subgroup_from_elements(es.group, b);
  }

  /// With the generator formulas, -I sends f1 to f1^-1 times a nontrivial central
  /// element, so <f1> itself is only normalized by the unipotent subgroup. The
  /// Borel subgroup normalizes exactly one <f1 c> with c in Z(E).
  static SubgroupSet borel_line(const ExtraspecialAction& a) {
    const auto& P = a.P;
    const auto b = borel_subgroup(a.sl2);
    for (Elem x : a.E.elements) {
      if (x == 0 || P.element_order(x) != a.p || !a.Z.contains(P.mul(x, P.inv(a.f1)))) continue;
      auto line = closure(P, {x});
      bool fixed = true;
      for (Elem s : b.elements) fixed = fixed && line.contains(a.act.auto_of[s][x]);
      if (fixed) return line;
    }
    throw Error("no Borel-invariant line in E");
  }

  const Group& g() const { return es.group; }
  Elem pe(Elem x) const { return es.of(x, 0); }
  Elem ke(Elem k) const { return es.of(0, k); }
  /// Action of the K element with index k on P.
  const Automorphism& act(Elem k) const { return a.act.auto_of[es.k_to_sl2[k]]; }

  SubgroupSet embed_p(const SubgroupSet& s) const {
    std::vector<Elem> v;
    for (Elem x : s.elements) v.push_back(es.of(x, 0));
    return subgroup_from_elements(es.group, v);
  }
  /// Subgroups of K, as subgroups of G.
  std::vector<SubgroupSet> k_subgroups() const {
    Group kg = subgroup_as_group(g(), K);
    std::vector<SubgroupSet> out;
    for (const auto& s : enumerate_subgroups(kg).subgroups) {
      std::vector<Elem> v;
      for (Elem x : s.elements) v.push_back(K.elements[x]);
      out.push_back(subgroup_from_elements(g(), v));
    }
    return out;
  }
};

/// s fixes e modulo Z  =>  s fixes e.
inline void check_fixed_mod_center(GroupContext& c, const ExtraspecialContext& x) {
  const auto& P = x.a.P;
  bool ok = true;
  std::vector<Witness> w;
  for (Elem k = 0; k < x.es.k_order && ok; ++k)
    for (Elem e = 0; e < P.order() && ok; ++e) {
      const Elem image = x.act(k)[e];
      if (x.a.Z.contains(P.mul(image, P.inv(e))) && image != e) {
        ok = false;
        w = {element_witness("s", x.ke(k)), element_witness("e", x.pe(e))};
      }
    }
  c.check("fixed-mod-center-is-fixed", ok, "all s in K, e in P", w);
}

/// N_G(S) = N_P(S) x| N_K(S) for S <= K.
inline void check_normalizer_splits(GroupContext& c, const ExtraspecialContext& x, const std::vector<SubgroupSet>& ks) {
  const auto& g = x.g();
  bool ok = true;
  std::vector<Witness> w;
  for (const auto& s : ks) {
    auto n = normalizer(g, s);
    auto np = normalizer(g, s, x.P);
    auto nk = normalizer(g, s, x.K);
    ElementSet prod(g.order());
    for (Elem a : np.elements)
      for (Elem b : nk.elements) prod.set(g.mul(a, b));
    if (!(prod == n.members)) {
      ok = false;
      w.push_back(subgroup_witness("S", s));
      break;
    }
  }
  c.check("normalizer-splits-over-P", ok, std::to_string(ks.size()) + " subgroups of K", w);
}

/// N_P(S) = N_E(S) Z.
inline void check_p_normalizer_from_e(GroupContext& c, const ExtraspecialContext& x, const std::vector<SubgroupSet>& subs,
                                      const std::string& scope) {
  const auto& g = x.g();
  bool ok = true;
  std::vector<Witness> w;
  for (const auto& s : subs) {
    auto np = normalizer(g, s, x.P);
    auto nez = extend(g, normalizer(g, s, x.E), x.Z.elements);
    if (!(np == nez)) {
      ok = false;
      w.push_back(subgroup_witness("S", s));
      break;
    }
  }
  c.check("p-normalizer-from-e", ok, std::to_string(subs.size()) + " " + scope, w);
}

/// H <= K acts trivially on e in P  <=>  e normalizes H.
inline void check_trivial_action_iff_normalizes(GroupContext& c, const ExtraspecialContext& x,
                                                const std::vector<SubgroupSet>& ks) {
  bool ok = true;
  std::vector<Witness> w;
  for (const auto& h : ks) {
    for (Elem e = 0; e < x.es.p_order && ok; ++e) {
      bool fixes = true;
      for (Elem k : h.elements) fixes = fixes && x.act(x.es.k_part(k))[e] == e;
      if (fixes != normalizes(x.g(), x.pe(e), h)) {
        ok = false;
        w = {subgroup_witness("H", h), element_witness("e", x.pe(e))};
      }
    }
    if (!ok) break;
  }
  c.check("trivial-action-iff-normalizes", ok, std::to_string(ks.size()) + " subgroups of K, all e in P", w);
}

/// Subgroups S with S n P = 1, i.e. S = {phi(h) h : h in H} for a 1-cocycle phi.
inline std::vector<std::size_t> p_free_subgroups(const ExtraspecialContext& x, const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if ((lat.subgroups[i].members & x.P.members).count() == 1) out.push_back(i);
  return out;
}

struct CocycleView {
  SubgroupSet h;                // K-part of S, in G
  std::vector<Elem> phi_of;     // K index -> phi(h) in G, for h in H
};

inline CocycleView cocycle_view(const ExtraspecialContext& x, const SubgroupSet& s) {
  CocycleView v;
  v.phi_of.assign(x.es.k_order, 0);
  std::vector<Elem> hs;
  for (Elem y : s.elements) {
    const Elem k = x.es.k_part(y);
    hs.push_back(x.ke(k));
    v.phi_of[k] = x.pe(x.es.p_part(y));
  }
  v.h = subgroup_from_elements(x.g(), hs);
  return v;
}

/// x = e m normalizes S iff m normalizes H and e m(phi(h)) (m h m^-1)(e^-1) = phi(m h m^-1) for h in H.
inline void check_cocycle_normalizer_criterion(GroupContext& c, const ExtraspecialContext& x) {
  const auto& g = x.g();
  const auto& lat = c.lat();
  bool ok = true;
  std::vector<Witness> w;
  auto pfree = p_free_subgroups(x, lat);
  for (auto i : pfree) {
    const auto& s = lat.subgroups[i];
    auto v = cocycle_view(x, s);
    for (Elem y = 0; y < g.order() && ok; ++y) {
      const Elem e = x.pe(x.es.p_part(y)), m = x.ke(x.es.k_part(y));
      bool crit = normalizes(g, m, v.h);
      for (Elem hk = 0; hk < x.es.k_order && crit; ++hk) {
        const Elem h = x.ke(hk);
        if (!v.h.contains(h)) continue;
        const Elem mh = g.conj(m, h);
        const Elem lhs = g.mul(g.mul(e, g.conj(m, v.phi_of[hk])), g.conj(mh, g.inv(e)));
        crit = lhs == v.phi_of[x.es.k_part(mh)];
      }
      if (crit != normalizes(g, y, s)) {
        ok = false;
        w = {subgroup_witness("S", s), element_witness("x", y)};
      }
    }
    if (!ok) break;
  }
  c.check("cocycle-normalizer-criterion", ok, std::to_string(pfree.size()) + " subgroups with S n P = 1, all x in G", w);
}

/// N_P(S) = C_P(S) <= C_P(H) = N_P(H) for S n P = 1.
inline void check_cocycle_normalizer_centralizes(GroupContext& c, const ExtraspecialContext& x) {
  const auto& g = x.g();
  const auto& lat = c.lat();
  bool ok = true;
  std::vector<Witness> w;
  auto pfree = p_free_subgroups(x, lat);
  for (auto i : pfree) {
    const auto& s = lat.subgroups[i];
    auto v = cocycle_view(x, s);
    auto nps = normalizer(g, s, x.P);
    auto cps = centralizer(g, s.generators, x.P);
    auto cph = centralizer(g, v.h.generators, x.P);
    auto nph = normalizer(g, v.h, x.P);
    if (!(nps == cps) || !cps.is_subgroup_of(cph) || !(cph == nph)) {
      ok = false;
      w.push_back(subgroup_witness("S", s));
      break;
    }
  }
  c.check("cocycle-normalizer-centralizes", ok, std::to_string(pfree.size()) + " subgroups with S n P = 1", w);
}

/// N_G(<f1>) = (T x Z) x| Borel, and its Sylow p-subgroup is normal.
inline void check_line_normalizer(GroupContext& c, const ExtraspecialContext& x) {
  const auto& g = x.g();
  auto n = normalizer(g, x.T);
  auto tz = extend(g, x.T, x.Z.elements);
  ElementSet expected(g.order());
  for (Elem a : tz.elements)
    for (Elem b : x.borel.elements) expected.set(g.mul(a, b));
  c.check("line-normalizer-borel", expected == n.members, "|N_G(T)| = " + std::to_string(n.order()),
          {subgroup_witness("T", x.T)});
  bool conjugate = false;
  for (Elem e : x.E.elements) conjugate = conjugate || conjugate_subgroup(g, e, x.T) == x.f1_line;
  c.check("line-conjugate-to-f1", conjugate, "T is E-conjugate to <f1>");
  Group ng = subgroup_as_group(g, n);
  auto syl = sylow_subgroup(ng, x.a.p);
  c.check("line-normalizer-sylow-normal", is_normal(ng, syl), "Sylow of order " + std::to_string(syl.order()));
}

/// For S n P = 1 with N_P(S) = Z and g in E: every element of gSg^-1 n N_G(S)
/// is g(phi(h) h)g^-1 with h fixing g.
inline void check_conjugate_meets_normalizer(GroupContext& c, const ExtraspecialContext& x) {
  const auto& g = x.g();
  const auto& lat = c.lat();
  bool ok = true;
  std::size_t tested = 0;
  std::vector<Witness> w;
  for (auto i : p_free_subgroups(x, lat)) {
    const auto& s = lat.subgroups[i];
    if (!(normalizer(g, s, x.P) == x.Z)) continue;
    ++tested;
    auto ns = normalizer(g, s);
    for (Elem e : x.E.elements) {
      const Elem pe = x.es.p_part(e);
      for (Elem y : s.elements) {
        if (!ns.contains(g.conj(e, y))) continue;
        if (x.act(x.es.k_part(y))[pe] != pe) {
          ok = false;
          w = {subgroup_witness("S", s), element_witness("g", e), element_witness("s", y)};
        }
      }
    }
    if (!ok) break;
  }
  c.check("conjugate-meets-normalizer-fixes", ok, std::to_string(tested) + " subgroups with S n P = 1 and N_P(S) = Z", w);
}

inline void extraspecial_structure(GroupContext& c, const ExtraspecialContext& x) {
  const auto& g = x.g();
  c.check("center-is-center-of-P", center(g) == x.Z && center(x.a.P) == x.a.Z,
          "|Z(G)| = " + std::to_string(center(g).order()));
  auto q = quotient(x.a.P, x.a.Z);
  auto props = subgroup_properties(q.group, whole_group(q.group));
  c.check("P-mod-Z-rank-2", props.is_elementary_abelian && props.rank.value_or(0) == 2,
          "|P/Z| = " + std::to_string(q.group.order()));
}

// ---------------------------------------------------------------------------
// C_n x| S

inline CyclicExtension extension_for(std::size_t n, const std::vector<unsigned>& gens) {
  return build_cyclic_extension(n, gens);
}

inline std::string extension_definition(std::size_t n, const std::vector<unsigned>& gens) {
  std::string d = "semidirect cyclic:" + std::to_string(n) + " units:[";
  for (std::size_t i = 0; i < gens.size(); ++i) d += (i ? "," : "") + std::to_string(gens[i]);
  return d + "]";
}

/// Unit generators of every subgroup of (Z/n)^x.
inline std::vector<std::vector<unsigned>> unit_subgroup_generators(std::size_t n) {
  auto units = build_units_mod_n(n);
  std::vector<std::vector<unsigned>> out;
  for (const auto& s : enumerate_subgroups(units.table).subgroups) {
    std::vector<unsigned> gens;
    for (Elem e : s.generators) gens.push_back(units.units[e]);
    out.push_back(gens);
  }
  return out;
}

/// p with p^2 | n whose alpha_p lies in S (as a unit mod n).
inline std::vector<unsigned> alphas_in(const CyclicExtension& ext) {
  std::vector<unsigned> out;
  for (unsigned p : prime_factors(ext.n))
    if (ext.n % (std::size_t{p} * p) == 0 &&
        std::find(ext.units.begin(), ext.units.end(), alpha_p(ext.n, p)) != ext.units.end())
      out.push_back(p);
  return out;
}

/// p with p^2 | n whose alpha_p, read modulo the p-part, lies in the projection of S.
inline std::vector<unsigned> alphas_in_projection(const CyclicExtension& ext) {
  std::vector<unsigned> out;
  for (unsigned p : prime_factors(ext.n)) {
    auto [q, k] = prime_part(ext.n, p);
    if (k < 2) continue;
    const std::size_t target = 1 + q / p;
    for (unsigned u : ext.units)
      if (u % q == target) {
        out.push_back(p);
        break;
      }
  }
  return out;
}

inline void cyclic_extension_checks(GroupContext& c, std::size_t n, const std::vector<unsigned>& gens) {
  const auto ext = extension_for(n, gens);
  const auto& g = c.group();
  if (g.table_hash() != ext.group.table_hash()) throw Error("cyclic extension rebuilt differently");
  const auto& lat = c.lat();
  auto verdict = is_roquette(g, lat);
  auto scan = scan_expansive_trivial_core(g, lat, c.jobs);
  const auto exp = count_expansive(scan);

  auto with_alpha = alphas_in(ext);
  if (with_alpha.empty()) {
    c.check("alpha-in-S-not-roquette", true, "S contains no alpha_p");
  } else {
    std::vector<Witness> w;
    bool ok = !verdict.is_roquette;
    std::string detail = "p =";
    for (unsigned p : with_alpha) {
      detail += " " + std::to_string(p);
      try {
        auto e = nonroquette_witness_for_alpha(ext, p);
        ok = ok && lat.find(e.members).has_value();
        w.push_back(subgroup_witness("E for p=" + std::to_string(p), e));
      } catch (const Error& err) {
        ok = false;
        detail += " (" + std::string(err.what()) + ")";
      }
    }
    c.check("alpha-in-S-not-roquette", ok, detail, w);
  }

  auto in_projection = alphas_in_projection(ext);
  if (in_projection.empty())
    c.check("no-alpha-projection-no-expansive", exp == 0, count_text(scan.size(), exp), expansive_witnesses(scan));
  else
    c.check("no-alpha-projection-no-expansive", true, "hypothesis not met");

  if (verdict.is_roquette)
    c.check("not-roquette-has-expansive", true, "Roquette");
  else
    c.check("not-roquette-has-expansive", exp > 0, count_text(scan.size(), exp), expansive_witnesses(scan));

  c.check("criteria-agree", verdict.method_agreement);
  c.check("kernel-in-fitting", ext.kernel.is_subgroup_of(fitting(g)));
}

/// N_{C_n}(D) = C_{C_n}(D) = C_{C_n}(pi(D)) for every D with D n C_n = 1.
inline void check_complement_normalizer(GroupContext& c, const CyclicExtension& ext) {
  const auto& g = c.group();
  const auto& lat = c.lat();
  bool ok = true;
  std::size_t tested = 0;
  std::vector<Witness> w;
  for (const auto& d : lat.subgroups) {
    if ((d.members & ext.kernel.members).count() != 1) continue;
    ++tested;
    auto n = normalizer(g, d, ext.kernel);
    auto cd = centralizer(g, d.generators, ext.kernel);
    std::vector<Elem> fixed;
    for (std::size_t x = 0; x < ext.n; ++x) {
      bool f = true;
      for (Elem y : d.elements) f = f && (x * ext.pi[y]) % ext.n == x;
      if (f) fixed.push_back(ext.of(x, 0));
    }
    if (!(n == cd) || !(cd == subgroup_from_elements(g, fixed))) {
      ok = false;
      w.push_back(subgroup_witness("D", d));
      break;
    }
  }
  c.check("complement-normalizer-is-centralizer", ok, std::to_string(tested) + " subgroups meeting C_n trivially", w);
}

/// Fixed points of H on C_n are the product of the fixed points of its
/// projections on the primary components.
inline void check_centralizer_splits(GroupContext& c, std::size_t n) {
  bool ok = true;
  std::size_t tested = 0;
  std::vector<Witness> w;
  for (const auto& gens : unit_subgroup_generators(n)) {
    auto h = unit_subgroup(n, gens);
    ++tested;
    std::vector<Elem> direct;
    for (std::size_t x = 0; x < n; ++x) {
      bool f = true;
      for (unsigned u : h) f = f && (x * u) % n == x;
      if (f) direct.push_back(static_cast<Elem>(x));
    }
    std::vector<Elem> product{0};
    for (unsigned p : prime_factors(n)) {
      const std::size_t q = prime_part(n, p).first;
      std::vector<Elem> next;
      for (std::size_t y = 0; y < q; ++y) {
        bool f = true;
        for (unsigned u : h) f = f && (y * (u % q)) % q == y;
        if (!f) continue;
        for (Elem base : product) next.push_back(static_cast<Elem>((base + (n / q) * y) % n));
      }
      product = std::move(next);
    }
    std::sort(product.begin(), product.end());
    if (product != direct) {
      ok = false;
      w.push_back({"H as units", {h.begin(), h.end()}});
      break;
    }
  }
  c.check("centralizer-splits-over-primes", ok, std::to_string(tested) + " subgroups H of Aut(C_n)", w);
}

/// In C_{2^k} x| <b> with b inversion-like, g b(g^-1) centralized by <b> forces b = 1.
inline void check_inversion_commutator(GroupContext& c, const CyclicExtension& ext) {
  const auto& g = c.group();
  auto fixed = centralizer(g, ext.complement.generators, ext.kernel);
  const Elem gen = ext.of(1, 0);
  bool ok = true;
  for (Elem b : ext.complement.elements) {
    const Elem x = g.mul(gen, g.conj(b, g.inv(gen)));
    if (fixed.contains(x) && b != 0) ok = false;
  }
  c.check("inversion-type-commutator", ok, "|C(b)| = " + std::to_string(fixed.order()));
}

// ---------------------------------------------------------------------------
// Suite assembly

inline GroupTask task(std::string def, std::string tag, bool lattice, std::function<void(GroupContext&)> run) {
  return GroupTask{std::move(def), std::move(tag), lattice, std::move(run)};
}

inline std::vector<GroupTask> two_group_tasks() {
  std::vector<GroupTask> out;
  for (const char* d : {"cyclic:8", "cyclic:16", "cyclic:32", "quaternion:8", "quaternion:16", "quaternion:32"})
    out.push_back(task(d, "two-groups", true, [](GroupContext& c) { check_unique_order_p(c, 2); }));
  for (const char* d : {"dihedral:16", "dihedral:32"})
    out.push_back(task(d, "two-groups", true, [](GroupContext& c) { check_noncentral_involutions(c, 2); }));
  for (const char* d : {"semidihedral:16", "semidihedral:32"})
    out.push_back(task(d, "two-groups", true, [](GroupContext& c) { check_noncentral_involutions(c, 1); }));
  return out;
}

inline std::vector<GroupTask> odd_p_group_tasks() {
  std::vector<GroupTask> out;
  for (const char* d : {"cyclic:27", "direct cyclic:9 cyclic:3", "direct cyclic:3 direct cyclic:3 cyclic:3", "extraspecial:3",
                        "central:3:2", "cyclic:25", "direct cyclic:5 cyclic:5", "extraspecial:5"})
    out.push_back(task(d, "odd-p-groups", true, [](GroupContext& c) {
      auto v = is_roquette(c.group(), c.lat());
      const bool cyclic = is_cyclic(c.group(), whole_group(c.group()));
      c.check("roquette-iff-cyclic", v.is_roquette == cyclic,
              std::string(v.is_roquette ? "Roquette" : "not Roquette") + ", " + (cyclic ? "cyclic" : "not cyclic"),
              v.witness ? std::vector<Witness>{subgroup_witness("normal non-cyclic abelian", *v.witness)} : std::vector<Witness>{});
    }));
  return out;
}

inline std::vector<GroupTask> extraspecial_lemma_tasks(bool heavy) {
  std::vector<GroupTask> out;
  out.push_back(task("extsl2:3:1", "extraspecial", true, [](GroupContext& c) {
    ExtraspecialContext x(3, 1);
    if (x.g().table_hash() != c.group().table_hash()) throw Error("extraspecial group rebuilt differently");
    auto ks = x.k_subgroups();
    extraspecial_structure(c, x);
    check_fixed_mod_center(c, x);
    check_normalizer_splits(c, x, ks);
    check_p_normalizer_from_e(c, x, c.lat().subgroups, "subgroups of G");
    check_trivial_action_iff_normalizes(c, x, ks);
    check_cocycle_normalizer_criterion(c, x);
    check_cocycle_normalizer_centralizes(c, x);
    check_line_normalizer(c, x);
    check_conjugate_meets_normalizer(c, x);
  }));
  out.push_back(task("extsl2:3:2", "extraspecial", heavy, [heavy](GroupContext& c) {
    ExtraspecialContext x(3, 2);
    if (x.g().table_hash() != c.group().table_hash()) throw Error("extraspecial group rebuilt differently");
    auto ks = x.k_subgroups();
    extraspecial_structure(c, x);
    check_fixed_mod_center(c, x);
    check_normalizer_splits(c, x, ks);
    check_p_normalizer_from_e(c, x, heavy ? c.lat().subgroups : ks, heavy ? "subgroups of G" : "subgroups of K");
    check_trivial_action_iff_normalizes(c, x, ks);
    check_line_normalizer(c, x);
    if (heavy) {
      check_cocycle_normalizer_criterion(c, x);
      check_cocycle_normalizer_centralizes(c, x);
      check_conjugate_meets_normalizer(c, x);
    }
  }));
  return out;
}

inline std::vector<GroupTask> cyclic_lemma_tasks() {
  std::vector<GroupTask> out;
  for (std::size_t n : {8, 9, 15, 16, 21, 27}) {
    auto units = build_units_mod_n(n).units;
    std::vector<unsigned> gens(units.begin(), units.end());
    out.push_back(task(extension_definition(n, gens), "cyclic", true, [n, gens](GroupContext& c) {
      check_complement_normalizer(c, extension_for(n, gens));
      check_centralizer_splits(c, n);
    }));
  }
  for (unsigned k : {3u, 4u}) {
    const unsigned q = 1u << k;
    for (unsigned b : {q - 1, q / 2 - 1}) {
      std::vector<unsigned> gens{b};
      out.push_back(task(extension_definition(q, gens), "cyclic", false,
                         [q, gens](GroupContext& c) { check_inversion_commutator(c, extension_for(q, gens)); }));
    }
  }
  return out;
}

inline SuiteSpec roquette_p_groups_suite() {
  SuiteSpec s{"roquette-p-groups", {}, {}};
  const std::vector<std::pair<const char*, RoquetteClass>> groups{
      {"cyclic:8", RoquetteClass::cyclic},          {"cyclic:16", RoquetteClass::cyclic},
      {"quaternion:8", RoquetteClass::quaternion},  {"quaternion:16", RoquetteClass::quaternion},
      {"quaternion:32", RoquetteClass::quaternion}, {"dihedral:16", RoquetteClass::dihedral},
      {"dihedral:32", RoquetteClass::dihedral},     {"semidihedral:16", RoquetteClass::semidihedral},
      {"semidihedral:32", RoquetteClass::semidihedral}};
  for (const auto& [def, expected] : groups)
    s.tasks.push_back(task(def, "two-groups", true, [expected = expected](GroupContext& c) {
      auto cls = classify_roquette_p_group(c.group());
      c.check("classification", cls == expected, to_string(cls));
      c.check("roquette", is_roquette(c.group(), c.lat()).is_roquette);
      check_scan_empty(c);
    }));
  return s;
}

inline SuiteSpec lemma_structure_suite(const SuiteOptions& opt) {
  SuiteSpec s{"lemma-structure", {}, {}};
  for (auto* part : {&two_group_tasks, &odd_p_group_tasks, &cyclic_lemma_tasks})
    for (auto& t : (*part)()) s.tasks.push_back(std::move(t));
  for (auto& t : extraspecial_lemma_tasks(opt.include_heavy)) s.tasks.push_back(std::move(t));
  if (!opt.include_heavy)
    s.notes.push_back("extsl2:3:2 checked without its full subgroup lattice; pass --heavy for exhaustive quantification");
  return s;
}

inline SuiteSpec cyclic_fitting_suite(const SuiteOptions& opt) {
  SuiteSpec s{"cyclic-fitting", {}, {}};
  s.notes.push_back("only split extensions C_n x| S are constructed");
  std::string excluded;
  for (std::size_t n : opt.cyclic_n) {
    if (prime_part(n, 2).first == 4) {
      excluded += (excluded.empty() ? "" : ", ") + std::to_string(n);
      continue;
    }
    for (const auto& gens : unit_subgroup_generators(n))
      s.tasks.push_back(task(extension_definition(n, gens), "cyclic", true,
                             [n, gens](GroupContext& c) { cyclic_extension_checks(c, n, gens); }));
  }
  if (!excluded.empty()) s.notes.push_back("excluded, 2-part of n equal to 4: " + excluded);
  return s;
}

inline SuiteSpec cohomology_tables_suite(const SuiteOptions& opt) {
  SuiteSpec s{"cohomology-tables", {}, {}};
  for (std::size_t n = 2; n <= opt.cohomology_max_n; ++n) {
    bool any = false;
    for (unsigned p : prime_factors(n)) any = any || n % (std::size_t{p} * p) == 0;
    if (!any) continue;
    s.tasks.push_back(task("cyclic:" + std::to_string(n), "cohomology", false, [n](GroupContext& c) {
      for (unsigned p : prime_factors(n)) {
        auto [q, k] = prime_part(n, p);
        if (k < 2) continue;
        const auto a = make_cyclic_action(n, alpha_p(n, p));
        const auto h1 = h1_cyclic(a), h2 = h2_cyclic(a);
        const bool c2 = p == 2 && q == 4;
        const std::vector<std::size_t> expected = c2 ? std::vector<std::size_t>{2} : std::vector<std::size_t>{};
        const std::string ps = "p=" + std::to_string(p);
        c.check("h1-" + ps, h1.factors == expected, "|H1| = " + std::to_string(h1.order()));
        c.check("h2-" + ps, h2.factors == expected, "|H2| = " + std::to_string(h2.order()));
        const auto local = make_cyclic_action(q, alpha_p(q, p));
        c.check("primary-part-" + ps, h1_cyclic(local).factors == h1.factors && h2_cyclic(local).factors == h2.factors);
        if (p != 2) {
          bool ok = true;
          for (std::size_t x = 0; x < q; ++x) ok = ok && norm_map(local, x) == (x * p) % q;
          c.check("norm-is-p-th-power-" + ps, ok);
        }
      }
    }));
  }
  return s;
}

inline SuiteSpec extraspecial_sl2_suite(const SuiteOptions& opt) {
  SuiteSpec s{"extraspecial-sl2", {}, {}};
  s.tasks.push_back(task("sl2:3", "cohomology", false, [](GroupContext& c) {
    auto sl = build_sl2(3);
    auto h = h1_linear(sl.group, natural_module(sl));
    c.check("h1-natural-module-trivial", h.is_trivial() && h.coboundary_dim == 2u,
            "cocycle dim " + std::to_string(h.cocycle_dim.value_or(0)) + ", coboundary dim " +
                std::to_string(h.coboundary_dim.value_or(0)));
  }));
  std::vector<std::string> defs{"extsl2:3:1"};
  if (opt.include_heavy)
    defs.push_back("extsl2:3:2");
  else
    s.notes.push_back("extsl2:3:2 (order 1944) omitted; pass --heavy to include it");
  for (const auto& d : defs)
    s.tasks.push_back(task(d, "extraspecial", true, [](GroupContext& c) {
      c.check("trivial-core-classes-found", !trivial_core_classes(c.lat()).empty());
      check_scan_empty(c);
    }));
  return s;
}

inline SuiteSpec extraspecial_borel_suite() {
  SuiteSpec s{"extraspecial-borel", {}, {}};
  for (const char* k : {"trivial", "center", "unipotent", "borel", "c4", "q8", "full"})
    s.tasks.push_back(task(std::string("extsl2:3:1:") + k, "extraspecial", true, [k = std::string(k)](GroupContext& c) {
      auto a = build_sl2_action_on_P(3, 1);
      const auto& sl = a.sl2.group;
      const auto ksl = sl2_subgroup(a.sl2, k);
      const auto borel = borel_subgroup(a.sl2);
      bool in_borel = false;
      for (Elem y = 0; y < sl.order() && !in_borel; ++y)
        in_borel = conjugate_subgroup(sl, y, ksl).is_subgroup_of(borel);

      auto scan = scan_expansive_trivial_core(c.group(), c.lat(), c.jobs);
      const auto exp = count_expansive(scan);
      c.check("expansive-iff-in-borel", (exp > 0) == in_borel,
               std::string(in_borel ? "K in a Borel subgroup, " : "K not in a Borel subgroup, ") + count_text(scan.size(), exp),
               exp > 0 ? expansive_witnesses(scan) : std::vector<Witness>{});
      if (in_borel) {
        ExtraspecialContext e(3, 1, &ksl);
        if (e.g().table_hash() != c.group().table_hash()) throw Error("extraspecial group rebuilt differently");
        auto r = is_expansive(e.g(), e.T);
        c.check("line-subgroup-expansive", r.expansive && core(e.g(), e.T).is_trivial(),
                "T = <f1>, order " + std::to_string(e.T.order()), {subgroup_witness("T", e.T)});
      }
    }));
  return s;
}

inline SuiteSpec q8_s3_suite() {
  SuiteSpec s{"q8-s3", {}, {}};
  s.tasks.push_back(task("q8s3", "q8s3", true, [](GroupContext& c) {
    const auto& g = c.group();
    const auto& q8 = c.built.named.at("Q8");
    const auto& s3 = c.built.named.at("S3");
    auto v = is_roquette(g, c.lat());
    c.check("roquette", v.is_roquette && v.method_agreement);
    auto r = is_expansive(g, s3);
    c.check("complement-expansive", r.expansive, "S3 of order " + std::to_string(s3.order()),
            r.witness_g ? std::vector<Witness>{element_witness("g", *r.witness_g)} : std::vector<Witness>{});
    c.check("fitting-is-q8", fitting(g) == q8 && p_core(g, 3).is_trivial());
  }));
  return s;
}

inline std::vector<std::string> criterion_corpus() {
  std::vector<std::string> defs{"cyclic:1",        "cyclic:12",       "direct cyclic:2 cyclic:2", "dihedral:8",
                                "quaternion:8",    "quaternion:16",   "dihedral:16",              "semidihedral:16",
                                "semidihedral:32", "cyclic:27",       "direct cyclic:3 cyclic:3", "extraspecial:3",
                                "central:3:2",     "sl2:3",           "q8s3",                     "direct quaternion:8 cyclic:3",
                                "direct dihedral:8 cyclic:3"};
  for (const char* k : {"trivial", "center", "unipotent", "borel", "c4", "q8", "full"})
    defs.push_back(std::string("extsl2:3:1:") + k);
  for (std::size_t n : {8, 9, 16, 27})
    for (const auto& gens : unit_subgroup_generators(n)) defs.push_back(extension_definition(n, gens));
  return defs;
}

inline SuiteSpec roquette_criterion_suite() {
  SuiteSpec s{"roquette-criterion", {}, {}};
  for (const auto& d : criterion_corpus())
    s.tasks.push_back(task(d, "criterion", true, [](GroupContext& c) {
      const auto& g = c.group();
      auto v = is_roquette(g, c.lat());
      c.check("criteria-agree", v.method_agreement, v.is_roquette ? "Roquette" : "not Roquette",
              v.witness ? std::vector<Witness>{subgroup_witness("normal non-cyclic abelian", *v.witness)} : std::vector<Witness>{});
      auto f = fitting(g);
      c.check("fitting-normal-nilpotent", is_normal(g, f) && is_nilpotent(subgroup_as_group(g, f)),
              "|F| = " + std::to_string(f.order()));
      bool inside = true;
      for (auto i : normal_elementary_abelian(g, c.lat())) inside = inside && c.lat().subgroups[i].is_subgroup_of(f);
      c.check("elementary-abelian-in-fitting", inside);
      if (g.prime_factors().size() == 1) {
        auto cls = classify_roquette_p_group(g);
        c.check("classification-consistent", (cls != RoquetteClass::not_roquette) == v.is_roquette, to_string(cls));
      }
    }));
  return s;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roquette-p-groups", "lemma-structure",    "cyclic-fitting",
                                              "cohomology-tables", "extraspecial-sl2",   "extraspecial-borel",
                                              "q8-s3",             "roquette-criterion"};
  return names;
}

inline SuiteSpec make_suite(const std::string& name, const SuiteOptions& opt = {}) {
  if (name == "roquette-p-groups") return detail::roquette_p_groups_suite();
  if (name == "lemma-structure") return detail::lemma_structure_suite(opt);
  if (name == "cyclic-fitting") return detail::cyclic_fitting_suite(opt);
  if (name == "cohomology-tables") return detail::cohomology_tables_suite(opt);
  if (name == "extraspecial-sl2") return detail::extraspecial_sl2_suite(opt);
  if (name == "extraspecial-borel") return detail::extraspecial_borel_suite();
  if (name == "q8-s3") return detail::q8_s3_suite();
  if (name == "roquette-criterion") return detail::roquette_criterion_suite();
  throw Error("unknown suite '" + name + "'");
}

/// Runs one task: build, lattice (cached above opt.cache_min_order), checks.
inline GroupReport run_task(const GroupTask& t, const SuiteOptions& opt, unsigned inner_jobs) {
  GroupReport r;
  r.definition = t.definition;
  auto t0 = detail::Clock::now();
  auto built = parse_group_definition(t.definition);
  r.timings.build_ms = detail::ms_since(t0);
  r.order = built.group.order();
  r.fingerprint = group_fingerprint(built.group);

  std::optional<SubgroupLattice> lat;
  if (t.needs_lattice) {
    t0 = detail::Clock::now();
    try {
      const bool use_cache = opt.cache && built.group.order() >= opt.cache_min_order;
      bool cached = false;
      lat = lattice_with_cache(built.group, use_cache ? opt.cache : nullptr, {inner_jobs, opt.max_subgroups}, &cached);
      r.lattice = LatticeStats{lat->size(), lat->class_count(), trivial_core_classes(*lat).size(), cached};
    } catch (const BudgetExceeded& e) {
      r.timings.lattice_ms = detail::ms_since(t0);
      r.checks.push_back({"lattice", Outcome::skipped,
                          std::string(e.what()) + "; " + std::to_string(e.subgroups_found) + " subgroups in " +
                              std::to_string(e.classes_found) + " classes found",
                          {}});
      return r;
    }
    r.timings.lattice_ms = detail::ms_since(t0);
  }

  t0 = detail::Clock::now();
  GroupContext ctx{built, lat ? &*lat : nullptr, inner_jobs, {}};
  try {
    t.run(ctx);
  } catch (const std::exception& e) {
    ctx.checks.push_back({"error", Outcome::fail, e.what(), {}});
  }
  r.checks = std::move(ctx.checks);
  r.timings.checks_ms = detail::ms_since(t0);
  return r;
}

/// Tasks run on opt.jobs workers; a single-task suite hands the workers to the
/// lattice and scan instead. Group reports keep task order.
inline VerificationReport run_suite(const SuiteSpec& spec, const SuiteOptions& opt = {}) {
  VerificationReport report;
  report.suite = spec.name;
  report.notes = spec.notes;
  report.groups.resize(spec.tasks.size());
  const unsigned jobs = std::max(1u, opt.jobs);
  const bool outer = spec.tasks.size() > 1;
  parallel_for(spec.tasks.size(), outer ? jobs : 1u,
               [&](std::size_t i) { report.groups[i] = run_task(spec.tasks[i], opt, outer ? 1u : jobs); });
  return report;
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  return run_suite(make_suite(name, opt), opt);
}

}  // namespace roq
