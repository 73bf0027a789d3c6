#include <doctest.h>

#include <algorithm>
#include <random>

#include "pg/fusion.hpp"
#include "pg/instances.hpp"
#include "pg/realize.hpp"
#include "pg/sampling.hpp"

using namespace pg;
using namespace pg::instances;

TEST_CASE("inner fusion") {
  FusionSystem f2 = inner_fusion(cyclic_group(2));
  CHECK(f2.object_count() == 2);
  for (int p = 0; p < f2.object_count(); ++p)
    for (int q = 0; q < f2.object_count(); ++q) {
      size_t expect = f2.object(p).size() <= f2.object(q).size() &&
                              std::includes(f2.object(q).begin(),
                                            f2.object(q).end(),
                                            f2.object(p).begin(),
                                            f2.object(p).end())
                          ? 1
                          : 0;
      CHECK(f2.homset(p, q).size() == expect);
    }

  FusionSystem triv = inner_fusion(cyclic_group(1));
  CHECK(triv.object_count() == 1);
  CHECK(triv.homset(0, 0).size() == 1);

  // |Hom_S(V,V)| = |N_S(V) / C_S(V)| = 2 for a Klein subgroup of D8
  FiniteGroup d8 = dihedral_group(4);
  FusionSystem fd8 = inner_fusion(d8);
  for (int i = 0; i < fd8.object_count(); ++i) {
    const auto &mem = fd8.object(i);
    if (mem.size() != 4)
      continue;
    bool cyclic = false;
    for (int x : mem)
      if (d8.element_order(x) == 4)
        cyclic = true;
    if (!cyclic)
      CHECK(fd8.homset(i, i).size() == 2);
  }

  CHECK_THROWS_AS(inner_fusion(cyclic_group(6)), ArgumentError);
}

TEST_CASE("generated fusion") {
  FiniteGroup c3 = cyclic_group(3);
  FusionSystem plain = generate_fusion(c3, {});
  FusionSystem inner = inner_fusion(c3);
  CHECK(fusion_equal(plain, inner));

  // adjoining the inversion gives Hom(S,S) = {id, inv}
  FusionSystem inv = generate_fusion(c3, {FusionGenerator{{0, 1, 2}, {0, 2, 1}}});
  int top = inv.object_index({0, 1, 2});
  REQUIRE(top >= 0);
  CHECK(inv.homset(top, top).size() == 2);
  CHECK(check_fusion_axioms(inv).ok());

  // regenerating from the system's own morphisms is idempotent
  std::vector<FusionGenerator> gens;
  for (int p = 0; p < inv.object_count(); ++p)
    for (int q = 0; q < inv.object_count(); ++q)
      for (const auto &img : inv.homset(p, q))
        gens.push_back(FusionGenerator{inv.object(p), img});
  FusionSystem again = generate_fusion(c3, gens);
  CHECK(fusion_equal(inv, again));

  CHECK_THROWS_AS(generate_fusion(c3, {FusionGenerator{{0, 1, 2}, {0, 1, 1}}}),
                  ArgumentError);
}

TEST_CASE("fusion of a group") {
  FiniteGroup d8 = dihedral_group(4);
  std::vector<int> all;
  for (int i = 0; i < d8.size(); ++i)
    all.push_back(i);
  FusionSystem self = fusion_of_group(d8, all);
  CHECK(fusion_equal(self, inner_fusion(d8)));

  // GL3(F2) fuses Aut(V) = S3 on each Klein subgroup of S
  Gl3Instance gl3 = gl3_f2();
  FusionSystem fg = fusion_of_group(gl3.G, gl3.s_members);
  SubgroupView sv = sub_as_group(gl3.G, gl3.s_members, "S");
  std::vector<int> v_view;
  for (int x : gl3.v_members)
    v_view.push_back(sv.view_of.at(x));
  std::sort(v_view.begin(), v_view.end());
  int vi = fg.object_index(v_view);
  REQUIRE(vi >= 0);
  CHECK(fg.homset(vi, vi).size() == 6);
  CHECK(check_fusion_axioms(fg).ok());

  // the inner fusion of D8 differs, in particular on Hom(V,V)
  FusionSystem fs = inner_fusion(sv.group);
  FusionDifference diff;
  CHECK(!fusion_equal(fs, fg, &diff));
  CHECK(diff.source >= 0);
  CHECK(fs.homset(vi, vi).size() == 2);
  CHECK(fg.homset(vi, vi).size() == 6);

  // S3 over <(12)>: no extra fusion on C2
  FiniteGroup s3 = symmetric_group(3);
  Subgroup syl = sylow_subgroup(s3, 2);
  FusionSystem f = fusion_of_group(s3, syl.members);
  SubgroupView sv2 = sub_as_group(s3, syl.members, "C2");
  CHECK(fusion_equal(f, inner_fusion(sv2.group)));
}

TEST_CASE("fusion of a pregroup matches the group case on full domains") {
  FiniteGroup s3 = symmetric_group(3);
  Pregroup P = group_as_pregroup(s3);
  Subgroup syl = sylow_subgroup(s3, 2);
  // carrier indices coincide with the element indices of the parent group
  SubgroupView sv = sub_as_group(s3, syl.members, "S");
  PgFusionContext ctx{sv.group, sv.parent_of};
  FusionSystem via_pregroup =
      fusion_of_pregroup(P, PgSubgroup{&P, syl.members}, &ctx);
  FusionSystem via_group = fusion_of_group(s3, syl.members);
  CHECK(fusion_equal(via_pregroup, via_group));
}

TEST_CASE("fusion of the gl3 locality pregroup") {
  Gl3Locality loc = gl3_locality();
  const Pregroup &L = loc.built.pg;
  PgFusionContext ctx{loc.s_group, loc.pg_of_s};
  FusionSystem from_pregroup =
      fusion_of_pregroup(L, PgSubgroup{&L, loc.s_carrier}, &ctx);

  // generated by the conjugation maps of the two normalisers
  Gl3Instance gl3 = gl3_f2();
  SubgroupView sv = sub_as_group(gl3.G, gl3.s_members, "S");
  std::vector<FusionGenerator> gens;
  for (const std::vector<int> &nm : {gl3.nv_members, gl3.nvprime_members})
    for (const Subgroup &h : subgroups(sv.group)) {
      std::vector<int> src_parent;
      for (int x : h.members)
        src_parent.push_back(sv.parent_of[x]);
      std::sort(src_parent.begin(), src_parent.end());
      for (int g : nm) {
        std::vector<int> img;
        bool inside = true;
        for (int x : src_parent) {
          int y = gl3.G.conj(x, g);
          auto it = sv.view_of.find(y);
          if (it == sv.view_of.end()) {
            inside = false;
            break;
          }
          img.push_back(it->second);
        }
        if (!inside)
          continue;
        std::vector<int> src_view;
        for (int x : src_parent)
          src_view.push_back(sv.view_of.at(x));
        gens.push_back(FusionGenerator{src_view, img});
      }
    }
  FusionSystem generated = generate_fusion(sv.group, gens);
  CHECK(from_pregroup.same_s(generated));
  CHECK(fusion_equal(from_pregroup, generated));
}

TEST_CASE("conjugate Sylow subgroups give isomorphic fusion systems") {
  FiniteGroup s4 = symmetric_group(4);
  Subgroup s = sylow_subgroup(s4, 2);
  FusionSystem base = fusion_of_group(s4, s.members);
  for (int g : {1, 5, 9}) {
    std::vector<int> conj = conjugate_members(s4, s.members, g);
    FusionSystem other = fusion_of_group(s4, conj);
    // translate: P -> P^g, phi -> c_g phi c_g^-1, and compare homset sizes
    SubgroupView sv = sub_as_group(s4, s.members, "S");
    SubgroupView sv2 = sub_as_group(s4, conj, "Sg");
    REQUIRE(base.object_count() == other.object_count());
    long total = 0, total2 = 0;
    for (int p = 0; p < base.object_count(); ++p)
      for (int q = 0; q < base.object_count(); ++q) {
        // object P of base corresponds to P^g of other
        std::vector<int> pg_members, qg_members;
        for (int x : base.object(p))
          pg_members.push_back(sv2.view_of.at(s4.conj(sv.parent_of[x], g)));
        for (int x : base.object(q))
          qg_members.push_back(sv2.view_of.at(s4.conj(sv.parent_of[x], g)));
        std::sort(pg_members.begin(), pg_members.end());
        std::sort(qg_members.begin(), qg_members.end());
        int p2 = other.object_index(pg_members);
        int q2 = other.object_index(qg_members);
        REQUIRE(p2 >= 0);
        REQUIRE(q2 >= 0);
        CHECK(base.homset(p, q).size() == other.homset(p2, q2).size());
        total += static_cast<long>(base.homset(p, q).size());
        total2 += static_cast<long>(other.homset(p2, q2).size());
      }
    CHECK(total == total2);
  }
}

namespace {

// every fusion system over S, by brute force: all choices of morphism sets
// between the inner maps and the full injective sets, filtered by the
// axioms.  Only feasible for tiny S.
std::vector<FusionSystem> all_fusion_systems(const FiniteGroup &S) {
  FusionSystem inner = inner_fusion(S);
  int n = inner.object_count();
  // optional morphisms: injective homs not already inner
  struct Slot {
    int p, q;
    std::vector<int> img;
  };
  std::vector<Slot> optional_maps;
  for (int p = 0; p < n; ++p) {
    SubgroupView pv = sub_as_group(S, inner.object(p), "P");
    std::vector<int> whole(S.size());
    for (int i = 0; i < S.size(); ++i)
      whole[i] = i;
    for (const auto &hom : sampling::injective_homs(pv.group, S, whole, 256)) {
      // express as an image vector aligned with the sorted member list
      std::vector<int> img(pv.group.size());
      for (int x = 0; x < pv.group.size(); ++x) {
        int pos = inner.member_pos(p, pv.parent_of[x]);
        img[pos] = hom[x];
      }
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      for (int q = 0; q < n; ++q) {
        if (!std::includes(inner.object(q).begin(), inner.object(q).end(),
                           sorted.begin(), sorted.end()))
          continue;
        if (!inner.homset(p, q).count(img))
          optional_maps.push_back(Slot{p, q, img});
      }
    }
  }
  REQUIRE(optional_maps.size() <= 12);
  std::vector<FusionSystem> out;
  for (long mask = 0; mask < (1l << optional_maps.size()); ++mask) {
    FusionSystem cand = inner;
    for (size_t k = 0; k < optional_maps.size(); ++k)
      if (mask & (1l << k))
        cand.add(optional_maps[k].p, optional_maps[k].q, optional_maps[k].img);
    if (check_fusion_axioms(cand).ok())
      out.push_back(std::move(cand));
  }
  return out;
}

} // namespace

TEST_CASE("generated fusion is the intersection of all containing systems") {
  for (const FiniteGroup &S : {cyclic_group(2), cyclic_group(4)}) {
    std::vector<FusionSystem> all = all_fusion_systems(S);
    REQUIRE(!all.empty());
    // pick generator sets and compare against the brute-force intersection
    std::vector<std::vector<FusionGenerator>> gen_sets;
    gen_sets.push_back({});
    if (S.size() == 4)
      gen_sets.push_back({FusionGenerator{{0, 1, 2, 3}, {0, 3, 2, 1}}});
    for (const auto &gens : gen_sets) {
      FusionSystem generated = generate_fusion(S, gens);
      CHECK(check_fusion_axioms(generated).ok());
      // intersect every enumerated system containing the generators
      FusionSystem expect(S);
      bool first = true;
      for (const FusionSystem &cand : all) {
        bool contains = true;
        for (const FusionGenerator &g : gens) {
          std::vector<int> src = g.source;
          std::sort(src.begin(), src.end());
          int p = cand.object_index(src);
          std::vector<int> aligned(src.size());
          for (size_t k = 0; k < g.source.size(); ++k)
            aligned[cand.member_pos(p, g.source[k])] = g.images[k];
          std::vector<int> img_sorted = aligned;
          std::sort(img_sorted.begin(), img_sorted.end());
          int q = cand.object_index(img_sorted);
          if (q < 0 || !cand.homset(p, q).count(aligned))
            contains = false;
        }
        if (!contains)
          continue;
        if (first) {
          expect = cand;
          first = false;
        } else {
          // intersect morphism-set by morphism-set
          FusionSystem inter(S);
          for (int p = 0; p < expect.object_count(); ++p)
            for (int q = 0; q < expect.object_count(); ++q)
              for (const auto &m : expect.homset(p, q))
                if (cand.homset(p, q).count(m))
                  inter.add(p, q, m);
          expect = std::move(inter);
        }
      }
      REQUIRE(!first);
      CHECK(fusion_equal(generated, expect));
    }
  }
}

TEST_CASE("generator order does not change the fixpoint") {
  FiniteGroup d8 = dihedral_group(4);
  LSData d = ls_d8_klein();
  std::vector<FusionGenerator> gens = ls_fusion_generators(d);
  // add an inner map as a redundant generator and shuffle
  gens.push_back(FusionGenerator{{0}, {0}});
  FusionSystem base = generate_fusion(d.S, gens);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(gens.begin(), gens.end(), rng);
    CHECK(fusion_equal(generate_fusion(d.S, gens), base));
  }
}

TEST_CASE("robinson round trips, one and two factors") {
  for (const RobinsonData &d : {robinson_s3(), robinson_two_factors()}) {
    BuiltRobinson b = robinson_pregroup(d);
    FusionSystem want =
        generate_fusion(d.S, robinson_fusion_generators(d));
    FusionSystem got = fusion_of_robinson_pregroup(b);
    CHECK(fusion_equal(want, got));
    CHECK(check_fusion_axioms(got).ok());
  }
}

TEST_CASE("sylow certificates in pregroups") {
  // the p-group itself
  FiniteGroup d8 = dihedral_group(4);
  Pregroup P = group_as_pregroup(d8);
  std::vector<int> all;
  for (int i = 0; i < d8.size(); ++i)
    all.push_back(i);
  SylowResult res = is_sylow_in_pregroup(P, PgSubgroup{&P, all});
  CHECK(res.is_sylow);
  for (const SylowChain &c : res.certificates)
    CHECK(c.steps.empty());

  // the C2 u C4 counterexample: the maximal 2-subgroup is not Sylow
  BuiltAmalgam b = amalgam_pregroup(amalgam_c2_c4());
  std::vector<int> bmem;
  for (int i = 0; i < b.pg.size(); ++i)
    if (b.b_of[i] >= 0)
      bmem.push_back(i);
  std::sort(bmem.begin(), bmem.end());
  SylowResult neg = is_sylow_in_pregroup(b.pg, PgSubgroup{&b.pg, bmem});
  CHECK(!neg.is_sylow);
  CHECK(neg.counterexample.size() == 2);

  // Leary-Stancu pregroups have S as a Sylow subgroup, with short chains
  for (const LSData &d : {ls_c3_inversion(), ls_c4_center(), ls_d8_klein()}) {
    BuiltLs built = leary_stancu_pregroup(d);
    SylowResult syl = is_sylow_in_pregroup(
        built.pg, PgSubgroup{&built.pg, s_carrier_members(d.S)});
    CHECK(syl.is_sylow);
    for (const SylowChain &c : syl.certificates) {
      CHECK(c.steps.size() <= 1);
      // re-verify each chain step
      std::vector<int> cur = c.start;
      for (const SylowStep &st : c.steps) {
        PgSubgroup q{&built.pg, cur};
        PgConjugation conj = conjugate_subgroup(built.pg, q, st.conjugator);
        CHECK(conj.image.members == st.members);
        cur = st.members;
      }
    }
  }
}
