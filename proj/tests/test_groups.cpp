#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pg/group.hpp"
#include "pg/instances.hpp"

using namespace pg;
using namespace pg::instances;

namespace {

// brute-force subgroup count: every subset closed under the operations
long subgroup_count_by_subsets(const FiniteGroup &G) {
  long count = 0;
  int n = G.size();
  REQUIRE(n <= 10);
  for (long mask = 1; mask < (1l << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1l << i))
        members.push_back(i);
    if (is_subgroup_members(G, members))
      ++count;
  }
  return count;
}

} // namespace

TEST_CASE("closure enumeration") {
  FiniteGroup triv = FiniteGroup::from_generators(1, {});
  CHECK(triv.size() == 1);

  FiniteGroup d16 = dihedral_group(8);
  CHECK(d16.size() == 16);

  Gl3Instance gl3 = gl3_f2();
  CHECK(gl3.G.size() == 168);
  CHECK(gl3.s_members.size() == 8);

  // the Sylow 2-subgroup of GL3(F2) is dihedral of order 8
  SubgroupView sv = sub_as_group(gl3.G, gl3.s_members, "S");
  int max_order = 0;
  for (int i = 0; i < sv.group.size(); ++i)
    max_order = std::max(max_order, sv.group.element_order(i));
  CHECK(max_order == 4);
}

TEST_CASE("closure size is generator-order independent") {
  FiniteGroup s4 = symmetric_group(4);
  std::vector<Perm> gens = s4.generators();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(gens.begin(), gens.end(), rng);
    FiniteGroup again = FiniteGroup::from_generators(4, gens);
    CHECK(again.size() == 24);
    CHECK(again.same_elements(s4));
  }
}

TEST_CASE("subgroups") {
  FiniteGroup triv = FiniteGroup::from_generators(1, {});
  CHECK(subgroups(triv).size() == 1);

  // cyclic groups have one subgroup per divisor
  FiniteGroup c4 = cyclic_group(4);
  CHECK(subgroups(c4).size() == 3);
  FiniteGroup c12 = cyclic_group(12);
  CHECK(subgroups(c12).size() == 6);

  FiniteGroup d8 = dihedral_group(4);
  auto subs = subgroups(d8);
  CHECK(static_cast<long>(subs.size()) == subgroup_count_by_subsets(d8));
  CHECK(subs.size() == 10);

  for (const Subgroup &h : subs) {
    CHECK(is_subgroup_members(d8, h.members));
    CHECK(d8.size() % h.order() == 0); // Lagrange
  }
}

TEST_CASE("subgroup set is stable under regeneration") {
  FiniteGroup d8 = dihedral_group(4);
  auto subs = subgroups(d8);
  // rebuild the group from a different generating set
  std::vector<Perm> gens;
  for (const Subgroup &h : subs)
    if (h.order() == 2)
      gens.push_back(d8.element(h.members[0] == 0 ? h.members[1]
                                                  : h.members[0]));
  FiniteGroup again = FiniteGroup::from_generators(4, gens);
  REQUIRE(again.same_elements(d8));
  auto subs2 = subgroups(again);
  REQUIRE(subs.size() == subs2.size());
  for (size_t i = 0; i < subs.size(); ++i)
    CHECK(subs[i].members == subs2[i].members);
}

TEST_CASE("sylow subgroups") {
  Gl3Instance gl3 = gl3_f2();
  Subgroup syl = sylow_subgroup(gl3.G, 2);
  CHECK(syl.order() == 8);
  CHECK(is_subgroup_members(gl3.G, syl.members));

  FiniteGroup c6 = cyclic_group(6);
  CHECK(sylow_subgroup(c6, 5).order() == 1);
  FiniteGroup s3 = symmetric_group(3);
  CHECK(sylow_subgroup(s3, 3).order() == 3);

  for (const FiniteGroup &G : {symmetric_group(4), dihedral_group(6)})
    for (long p : {2l, 3l})
      CHECK(sylow_subgroup(G, p).order() == p_part(G.size(), p));

  CHECK_THROWS_AS(sylow_subgroup(s3, 4), ArgumentError);
}

TEST_CASE("normalizer") {
  FiniteGroup s3 = symmetric_group(3);
  Subgroup whole = whole_group(s3);
  CHECK(normalizer(s3, whole).order() == 6);

  // <(12)> is self-normalising in S3
  Subgroup refl{&s3, {0, s3.index_of(Perm(std::vector<uint16_t>{1, 0, 2}))}};
  std::sort(refl.members.begin(), refl.members.end());
  CHECK(normalizer(s3, refl).members == refl.members);

  Gl3Instance gl3 = gl3_f2();
  Subgroup v{&gl3.G, gl3.v_members};
  Subgroup nv = normalizer(gl3.G, v);
  CHECK(nv.order() == 24);
  // orbit-stabiliser: conjugates of V times |N_G(V)| recovers |G|
  std::set<std::vector<int>> conjugates;
  for (int g = 0; g < gl3.G.size(); ++g)
    conjugates.insert(conjugate_members(gl3.G, gl3.v_members, g));
  CHECK(static_cast<long>(conjugates.size()) * nv.order() == gl3.G.size());

  // normalizer always contains the subgroup
  FiniteGroup d8 = dihedral_group(4);
  for (const Subgroup &h : subgroups(d8)) {
    Subgroup n = normalizer(d8, h);
    CHECK(std::includes(n.members.begin(), n.members.end(), h.members.begin(),
                        h.members.end()));
  }
  Subgroup fake{&s3, {1, 2}};
  CHECK_THROWS_AS(normalizer(s3, fake), ArgumentError);
}

TEST_CASE("p-core") {
  FiniteGroup d8 = dihedral_group(4);
  CHECK(p_core(d8, 2).order() == 8); // p-groups are their own core

  FiniteGroup s3 = symmetric_group(3);
  CHECK(p_core(s3, 3).order() == 3);
  CHECK(p_core(s3, 2).order() == 1);

  for (const FiniteGroup &G : {symmetric_group(4), dihedral_group(6)})
    for (long p : {2l, 3l}) {
      Subgroup core = p_core(G, p);
      Subgroup syl = sylow_subgroup(G, p);
      CHECK(std::includes(syl.members.begin(), syl.members.end(),
                          core.members.begin(), core.members.end()));
    }
}

TEST_CASE("group homs") {
  FiniteGroup c4 = cyclic_group(4);
  FiniteGroup c2 = cyclic_group(2);
  // C2 -> C4 sending the involution to a^2
  GroupHom h{whole_group(c2), whole_group(c4), {0, 2}};
  CHECK(is_injective_hom(h));
  GroupHom bad{whole_group(c2), whole_group(c4), {0, 1}};
  CHECK(!is_homomorphism(bad));
}

TEST_CASE("direct product and subgroup views") {
  FiniteGroup v4 = klein_four();
  CHECK(v4.size() == 4);
  for (int i = 1; i < v4.size(); ++i)
    CHECK(v4.element_order(i) == 2);

  FiniteGroup s3 = symmetric_group(3);
  Subgroup a3 = sylow_subgroup(s3, 3);
  SubgroupView view = sub_as_group(s3, a3.members, "A3");
  CHECK(view.group.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(view.view_of.at(view.parent_of[i]) == i);
}

TEST_CASE("order bound is enforced") {
  std::vector<uint16_t> big(600);
  for (int i = 0; i < 600; ++i)
    big[i] = static_cast<uint16_t>((i + 1) % 600);
  CHECK_THROWS_AS(FiniteGroup::from_generators(600, {Perm(std::move(big))}),
                  ResourceError);
}
