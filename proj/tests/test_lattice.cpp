#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace roq;

namespace {

std::set<oracle::ESet> as_sets(const SubgroupLattice& lat) {
  std::set<oracle::ESet> out;
  for (const auto& s : lat.subgroups) out.insert(oracle::as_set(s));
  return out;
}

}  // namespace

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_subgroups(build_cyclic(12)).size(), 6u);
  auto q8 = build_two_group(TwoGroupKind::quaternion, 8);
  auto lq = enumerate_subgroups(q8);
  EXPECT_EQ(lq.size(), 6u);
  EXPECT_EQ(as_sets(lq), oracle::all_subgroups(q8));
  auto sl = build_sl2(3).group;
  auto oracle_count = oracle::all_subgroups(sl).size();
  EXPECT_EQ(oracle_count, 15u);
  EXPECT_EQ(enumerate_subgroups(sl).size(), oracle_count);
}

TEST(Enumerate, MatchesPowersetClosureUpToOrder24) {
  std::size_t groups = 0;
  for (const auto& [name, g] : oracle::small_corpus()) {
    auto lat = enumerate_subgroups(g);
    EXPECT_EQ(as_sets(lat), oracle::all_subgroups(g)) << name;
    ++groups;
  }
  EXPECT_GT(groups, 60u);
}

TEST(Enumerate, LatticeInvariants) {
  for (const auto& [name, g] : oracle::small_corpus()) {
    auto lat = enumerate_subgroups(g);
    ASSERT_TRUE(lat.subgroups.front().is_trivial()) << name;
    ASSERT_EQ(lat.subgroups.back().order(), g.order()) << name;
    for (std::size_t i = 1; i < lat.size(); ++i)
      EXPECT_TRUE(detail::subgroup_less(lat.subgroups[i - 1], lat.subgroups[i])) << "sorted by order then elements";
    // closed under conjugation, classes are orbits, class size = index of normalizer
    auto classes = conjugacy_classes(lat);
    std::size_t total = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      total += classes[c].size();
      const auto& rep = lat.subgroups[lat.class_reps[c]];
      EXPECT_EQ(classes[c].size(), g.order() / normalizer(g, rep).order()) << name;
      EXPECT_EQ(lat.class_reps[c], classes[c].front()) << "representative is the least member";
      for (Elem x = 0; x < g.order(); ++x) {
        auto k = lat.find(conjugate_members(g, x, rep));
        ASSERT_TRUE(k) << name;
        EXPECT_EQ(lat.class_of[*k], c);
      }
    }
    EXPECT_EQ(total, lat.size());
  }
}

TEST(Enumerate, DeterministicAcrossJobCounts) {
  for (const char* def : {"sl2:3", "q8s3", "extsl2:3:1:borel", "semidirect cyclic:16 units:[3,15]"}) {
    auto g = parse_group_definition(def).group;
    auto one = enumerate_subgroups(g, {1, 0});
    for (unsigned jobs : {2u, 4u}) {
      auto many = enumerate_subgroups(g, {jobs, 0});
      ASSERT_EQ(one.size(), many.size()) << def;
      for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one.subgroups[i].elements, many.subgroups[i].elements);
      EXPECT_EQ(one.class_reps, many.class_reps);
      EXPECT_EQ(one.class_of, many.class_of);
    }
  }
}

TEST(Enumerate, BudgetExceededReportsProgress) {
  auto g = build_sl2(3).group;
  try {
    enumerate_subgroups(g, {1, 5});
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.subgroups_found, 5u);
    EXPECT_GT(e.classes_found, 0u);
  }
}

TEST(Classes, TwoGroupInvolutions) {
  auto count_noncentral_involution_classes = [](const Group& g) {
    auto lat = enumerate_subgroups(g);
    auto z = center(g);
    std::vector<std::size_t> sizes;
    for (auto& members : conjugacy_classes(lat)) {
      const auto& rep = lat.subgroups[members.front()];
      if (rep.order() == 2 && !rep.is_subgroup_of(z)) sizes.push_back(members.size());
    }
    return sizes;
  };
  EXPECT_EQ(count_noncentral_involution_classes(build_two_group(TwoGroupKind::dihedral, 16)),
            (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(count_noncentral_involution_classes(build_two_group(TwoGroupKind::semidihedral, 16)).size(), 1u);
}

TEST(Classes, NormalSubgroupsAreSingletons) {
  auto d = build_two_group(TwoGroupKind::dihedral, 16);
  auto lat = enumerate_subgroups(d);
  for (auto i : normal_subgroups(lat)) EXPECT_TRUE(oracle::is_normal(d, oracle::as_set(lat.subgroups[i])));
  std::size_t normal = 0;
  for (const auto& s : lat.subgroups) normal += oracle::is_normal(d, oracle::as_set(s));
  EXPECT_EQ(normal, normal_subgroups(lat).size());
  auto c = build_cyclic(18);
  auto lc = enumerate_subgroups(c);
  EXPECT_EQ(normal_subgroups(lc).size(), lc.size());
}

TEST(TrivialCore, Examples) {
  auto q8 = build_two_group(TwoGroupKind::quaternion, 8);
  EXPECT_TRUE(trivial_core_classes(enumerate_subgroups(q8)).empty());
  auto d = build_two_group(TwoGroupKind::dihedral, 16);
  auto lat = enumerate_subgroups(d);
  auto reps = trivial_core_classes(lat);
  // oracle: classes whose representative has a trivial core by brute force
  std::vector<std::size_t> expected;
  for (auto r : lat.class_reps) {
    auto s = oracle::as_set(lat.subgroups[r]);
    if (s.size() > 1 && oracle::core(d, oracle::whole(d), s).size() == 1) expected.push_back(r);
  }
  EXPECT_EQ(reps, expected);
  ASSERT_EQ(reps.size(), 2u);
  for (auto r : reps) EXPECT_EQ(lat.subgroups[r].order(), 2u);
}

TEST(TrivialCore, MatchesOracleOnCorpus) {
  for (const auto& [name, g] : oracle::small_corpus()) {
    auto lat = enumerate_subgroups(g);
    std::vector<std::size_t> expected;
    for (auto r : lat.class_reps) {
      auto s = oracle::as_set(lat.subgroups[r]);
      if (s.size() > 1 && oracle::core(g, oracle::whole(g), s).size() == 1) expected.push_back(r);
    }
    EXPECT_EQ(trivial_core_classes(lat), expected) << name;
  }
}

TEST(Sylow, Examples) {
  auto sl = build_sl2(3).group;
  EXPECT_EQ(sylow_subgroup(sl, 3).order(), 3u);
  auto s2 = sylow_subgroup(sl, 2);
  EXPECT_EQ(s2.order(), 8u);
  EXPECT_TRUE(oracle::isomorphic(subgroup_as_group(sl, s2), build_two_group(TwoGroupKind::quaternion, 8)));
  auto c12 = build_cyclic(12);
  auto s = sylow_subgroup(c12, 2);
  EXPECT_EQ(oracle::as_set(s), (oracle::ESet{0, 3, 6, 9}));
  EXPECT_THROW(sylow_subgroup(c12, 5), Error);
  EXPECT_THROW(sylow_subgroup(c12, 4), Error);
}

TEST(Sylow, OrderIsFullPrimePart) {
  for (const auto& [name, g] : oracle::small_corpus())
    for (unsigned p : g.prime_factors()) {
      auto s = sylow_subgroup(g, p);
      EXPECT_EQ(s.order(), prime_part(g.order(), p).first) << name << " p=" << p;
      EXPECT_TRUE(is_valid_subgroup(g, s));
    }
}
