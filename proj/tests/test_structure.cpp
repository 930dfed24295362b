#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace roq;

namespace {

/// Largest normal p-subgroup by scanning every subgroup.
oracle::ESet normal_p_subgroup_oracle(const Group& g, unsigned p) {
  oracle::ESet best{0};
  for (const auto& s : oracle::all_subgroups(g)) {
    std::size_t n = s.size();
    while (n % p == 0) n /= p;
    if (n == 1 && s.size() > best.size() && oracle::is_normal(g, s)) best = s;
  }
  return best;
}

/// Normal elementary abelian subgroups of rank 2 by scanning every subgroup.
std::vector<oracle::ESet> normal_rank2_oracle(const Group& g) {
  std::vector<oracle::ESet> out;
  for (const auto& s : oracle::all_subgroups(g)) {
    if (s.size() < 4 || !oracle::is_abelian(g, s) || !oracle::is_normal(g, s)) continue;
    auto primes = prime_factors(s.size());
    if (primes.size() != 1 || s.size() != std::size_t{primes[0]} * primes[0]) continue;
    bool exp_p = true;
    for (Elem x : s) exp_p = exp_p && oracle::elem_order(g, x) <= primes[0];
    if (exp_p) out.push_back(s);
  }
  return out;
}

RoquetteVerdict verdict(const Group& g) { return is_roquette(g, enumerate_subgroups(g)); }

}  // namespace

TEST(PCore, Examples) {
  auto q = build_q8_s3();
  auto o2 = p_core(q.group, 2);
  EXPECT_EQ(o2.members, q.q8.members);
  EXPECT_EQ(oracle::as_set(o2), oracle::core(q.group, oracle::whole(q.group), oracle::as_set(sylow_subgroup(q.group, 2))));
  auto sl = build_sl2(3).group;
  EXPECT_TRUE(p_core(sl, 3).is_trivial());
  EXPECT_EQ(oracle::as_set(p_core(sl, 3)), normal_p_subgroup_oracle(sl, 3));
  auto c = build_cyclic(12);
  EXPECT_EQ(oracle::as_set(p_core(c, 2)), (oracle::ESet{0, 3, 6, 9}));
  EXPECT_TRUE(p_core(c, 5).is_trivial());
  EXPECT_THROW(p_core(c, 4), Error);
}

TEST(PCore, MatchesNormalSubgroupScan) {
  for (const auto& [name, g] : oracle::small_corpus())
    for (unsigned p : g.prime_factors()) EXPECT_EQ(oracle::as_set(p_core(g, p)), normal_p_subgroup_oracle(g, p)) << name;
}

TEST(Fitting, Examples) {
  auto q = build_q8_s3();
  auto f = fitting(q.group);
  auto product = extend(q.group, p_core(q.group, 2), p_core(q.group, 3).elements);
  EXPECT_EQ(f.members, product.members);
  EXPECT_EQ(f.members, q.q8.members);
  for (std::size_t n : {9u, 16u, 21u}) {
    auto units = build_units_mod_n(n);
    std::vector<unsigned> gens(units.units.begin() + 1, units.units.end());
    auto ext = build_cyclic_extension(n, gens);
    EXPECT_TRUE(ext.kernel.is_subgroup_of(fitting(ext.group))) << n;
  }
  auto a = build_direct_product(build_cyclic(6), build_cyclic(4));
  EXPECT_EQ(fitting(a).order(), 24u);
}

TEST(Fitting, NormalNilpotentAndContainsNormalElementaryAbelian) {
  for (const auto& [name, g] : oracle::small_corpus()) {
    auto f = fitting(g);
    EXPECT_TRUE(is_normal(g, f)) << name;
    EXPECT_TRUE(is_nilpotent(subgroup_as_group(g, f))) << name;
    for (const auto& e : normal_rank2_oracle(g))
      for (Elem x : e) EXPECT_TRUE(f.contains(x)) << name;
  }
}

TEST(IsRoquette, Examples) {
  auto q16 = verdict(build_two_group(TwoGroupKind::quaternion, 16));
  EXPECT_TRUE(q16.is_roquette);
  EXPECT_FALSE(q16.witness);
  auto k = build_direct_product(build_cyclic(2), build_cyclic(2));
  auto vk = verdict(k);
  EXPECT_FALSE(vk.is_roquette);
  ASSERT_TRUE(vk.witness);
  EXPECT_EQ(vk.witness->order(), 4u);
  auto q = build_q8_s3();
  auto vq = verdict(q.group);
  EXPECT_TRUE(vq.is_roquette);
  EXPECT_TRUE(vq.method_agreement);
  EXPECT_THROW(is_roquette(q.group, enumerate_subgroups(k)), Error);
}

TEST(IsRoquette, WitnessAndAgreementOnCorpus) {
  for (const auto& [name, g] : oracle::small_corpus()) {
    auto v = verdict(g);
    EXPECT_TRUE(v.method_agreement) << name;
    EXPECT_EQ(v.witness.has_value(), !v.is_roquette);
    // oracle: a normal abelian non-cyclic subgroup exists
    bool found = false;
    for (const auto& s : oracle::all_subgroups(g)) {
      if (!oracle::is_abelian(g, s) || !oracle::is_normal(g, s)) continue;
      bool cyclic = false;
      for (Elem x : s) cyclic = cyclic || oracle::elem_order(g, x) == s.size();
      found = found || !cyclic;
    }
    EXPECT_EQ(v.is_roquette, !found) << name;
    if (v.witness) {
      auto props = subgroup_properties(g, *v.witness);
      EXPECT_TRUE(is_normal(g, *v.witness));
      EXPECT_TRUE(props.is_abelian);
      EXPECT_FALSE(props.is_cyclic);
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_roquette_p_group(build_cyclic(27)), RoquetteClass::cyclic);
  EXPECT_EQ(classify_roquette_p_group(build_two_group(TwoGroupKind::semidihedral, 32)), RoquetteClass::semidihedral);
  EXPECT_EQ(classify_roquette_p_group(build_direct_product(build_cyclic(3), build_cyclic(3))), RoquetteClass::not_roquette);
  EXPECT_EQ(classify_roquette_p_group(build_two_group(TwoGroupKind::quaternion, 32)), RoquetteClass::quaternion);
  EXPECT_EQ(classify_roquette_p_group(build_two_group(TwoGroupKind::dihedral, 16)), RoquetteClass::dihedral);
  EXPECT_EQ(classify_roquette_p_group(build_two_group(TwoGroupKind::dihedral, 8)), RoquetteClass::not_roquette);
  EXPECT_EQ(classify_roquette_p_group(build_extraspecial(3)), RoquetteClass::not_roquette);
  EXPECT_THROW(classify_roquette_p_group(build_cyclic(6)), Error);
}

TEST(Classify, ConsistentWithIsRoquette) {
  std::size_t p_groups = 0;
  for (const auto& [name, g] : oracle::small_corpus()) {
    if (g.prime_factors().size() != 1) continue;
    ++p_groups;
    auto c = classify_roquette_p_group(g);
    EXPECT_EQ(c != RoquetteClass::not_roquette, verdict(g).is_roquette) << name << " " << to_string(c);
  }
  for (std::size_t n : {32u, 64u}) {
    for (auto kind : {TwoGroupKind::dihedral, TwoGroupKind::semidihedral, TwoGroupKind::quaternion}) {
      auto g = build_two_group(kind, n);
      EXPECT_NE(classify_roquette_p_group(g), RoquetteClass::not_roquette);
      EXPECT_TRUE(verdict(g).is_roquette);
    }
  }
  EXPECT_GT(p_groups, 20u);
}

TEST(AlphaWitness, Examples) {
  for (auto [n, p] : std::vector<std::pair<std::size_t, unsigned>>{{9, 3}, {8, 2}, {25, 5}}) {
    auto ext = build_cyclic_extension(n, {alpha_p(n, p)});
    auto e = nonroquette_witness_for_alpha(ext, p);
    auto props = subgroup_properties(ext.group, e);
    EXPECT_TRUE(props.is_elementary_abelian);
    EXPECT_EQ(props.rank, 2u);
    EXPECT_EQ(e.order(), std::size_t{p} * p);
    EXPECT_TRUE(oracle::is_normal(ext.group, oracle::as_set(e)));
    EXPECT_TRUE(oracle::is_abelian(ext.group, oracle::as_set(e)));
    for (Elem x : e.elements) EXPECT_LE(oracle::elem_order(ext.group, x), p);
    if (ext.group.order() <= 32) {
      auto expected = normal_rank2_oracle(ext.group);
      EXPECT_NE(std::find(expected.begin(), expected.end(), oracle::as_set(e)), expected.end()) << n;
    }
    EXPECT_FALSE(verdict(ext.group).is_roquette);
  }
}

TEST(AlphaWitness, HypothesisViolations) {
  EXPECT_THROW(nonroquette_witness_for_alpha(build_cyclic_extension(12, {7}), 2), Error);  // 2-part is 4
  EXPECT_THROW(nonroquette_witness_for_alpha(build_cyclic_extension(15, {4}), 3), Error);  // 9 does not divide 15
  EXPECT_THROW(nonroquette_witness_for_alpha(build_cyclic_extension(9, {8}), 3), Error);   // alpha_3 not in S
}
