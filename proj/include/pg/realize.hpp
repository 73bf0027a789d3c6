#pragma once

#include <vector>

#include "pg/constructions.hpp"
#include "pg/fusion.hpp"

namespace pg {

// Both explicit constructions lay out the carrier with S first, in S's own
// element order, so identifying the abstract S with its carrier copy is the
// identity on indices.
inline PgFusionContext carrier_context(const FiniteGroup &S) {
  PgFusionContext ctx;
  ctx.s_group = S;
  ctx.pg_of_s.resize(S.size());
  for (int i = 0; i < S.size(); ++i)
    ctx.pg_of_s[i] = i;
  return ctx;
}

inline std::vector<int> s_carrier_members(const FiniteGroup &S) {
  std::vector<int> m(S.size());
  for (int i = 0; i < S.size(); ++i)
    m[i] = i;
  return m;
}

inline FusionSystem fusion_of_ls_pregroup(const BuiltLs &b) {
  PgFusionContext ctx = carrier_context(b.data.S);
  return fusion_of_pregroup(b.pg,
                            PgSubgroup{&b.pg, s_carrier_members(b.data.S)},
                            &ctx);
}

inline FusionSystem fusion_of_robinson_pregroup(const BuiltRobinson &b) {
  PgFusionContext ctx = carrier_context(b.data.S);
  return fusion_of_pregroup(b.pg,
                            PgSubgroup{&b.pg, s_carrier_members(b.data.S)},
                            &ctx);
}

inline std::vector<FusionGenerator>
ls_fusion_generators(const LSData &d) {
  std::vector<FusionGenerator> gens;
  for (const LsGenerator &g : d.gens)
    gens.push_back(FusionGenerator{g.p_members, g.phi});
  return gens;
}

// Generators of the fusion system generated by the factor systems
// F_{S_i}(G_i): every conjugation map of G_i between subgroups of S_i'
// pulled back to S through f_i.
inline std::vector<FusionGenerator>
robinson_fusion_generators(const RobinsonData &d) {
  std::vector<FusionGenerator> gens;
  for (const RobinsonFactor &f : d.factors) {
    const FiniteGroup &G = f.G;
    std::vector<int> f_map(d.S.size(), -1), f_inv(G.size(), -1);
    for (size_t k = 0; k < f.s_members.size(); ++k) {
      f_map[f.s_members[k]] = f.f_images[k];
      f_inv[f.f_images[k]] = f.s_members[k];
    }
    SubgroupView sv = sub_as_group(d.S, f.s_members, "S_i");
    for (const Subgroup &h : subgroups(sv.group)) {
      std::vector<int> src;
      for (int x : h.members)
        src.push_back(sv.parent_of[x]);
      std::sort(src.begin(), src.end());
      for (int g = 0; g < G.size(); ++g) {
        std::vector<int> img;
        bool inside = true;
        for (int x : src) {
          int y = G.conj(f_map[x], g);
          if (f_inv[y] < 0) {
            inside = false;
            break;
          }
          img.push_back(f_inv[y]);
        }
        if (inside)
          gens.push_back(FusionGenerator{src, img});
      }
    }
  }
  return gens;
}

} // namespace pg
