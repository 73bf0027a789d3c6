#pragma once

#include <string>
#include <vector>

#include "pg/constructions.hpp"
#include "pg/errors.hpp"
#include "pg/group.hpp"
#include "pg/pregroup.hpp"

namespace pg {
namespace instances {

// cyclic group of order n acting on n points; elements labelled 1, a, a2, ...
inline FiniteGroup cyclic_group(int n, const std::string &gen = "a") {
  std::vector<uint16_t> im(n);
  for (int i = 0; i < n; ++i)
    im[i] = static_cast<uint16_t>((i + 1) % n);
  FiniteGroup G = FiniteGroup::from_generators(
      n, n > 1 ? std::vector<Perm>{Perm(std::move(im))} : std::vector<Perm>{},
      "C" + std::to_string(n));
  std::vector<std::string> labels(n);
  for (int k = 0; k < n; ++k)
    labels[k] = k == 0 ? "1" : (k == 1 ? gen : gen + std::to_string(k));
  // the k-th power of the n-cycle is the k-th element in lexicographic order
  G.set_labels(std::move(labels));
  return G;
}

// dihedral group of order 2n on n points
inline FiniteGroup dihedral_group(int n) {
  std::vector<uint16_t> rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = static_cast<uint16_t>((i + 1) % n);
    refl[i] = static_cast<uint16_t>((n - i) % n);
  }
  return FiniteGroup::from_generators(n, {Perm(std::move(rot)),
                                          Perm(std::move(refl))},
                                      "D" + std::to_string(2 * n));
}

inline FiniteGroup symmetric_group(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<uint16_t> t(n), c(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<uint16_t>(i);
      c[i] = static_cast<uint16_t>((i + 1) % n);
    }
    std::swap(t[0], t[1]);
    gens = {Perm(std::move(t)), Perm(std::move(c))};
  }
  return FiniteGroup::from_generators(n, std::move(gens),
                                      "S" + std::to_string(n));
}

inline FiniteGroup klein_four() {
  return direct_product(cyclic_group(2, "x"), cyclic_group(2, "y"), "V4");
}

// --- GL_3(F_2) on the seven nonzero vectors -----------------------------------

struct Gl3Instance {
  FiniteGroup G;              // order 168 on 7 points
  std::vector<int> s_members; // upper unitriangular subgroup, dihedral of order 8
  std::vector<int> v_members, vprime_members, c4_members; // order-4 subgroups
  std::vector<int> nv_members, nvprime_members;           // their normalisers
};

inline Gl3Instance gl3_f2() {
  // vector index v in {1..7} encodes coordinates (bit0, bit1, bit2)
  auto perm_of_matrix = [](const int m[3][3]) -> std::optional<Perm> {
    std::vector<uint16_t> im(7);
    std::vector<bool> seen(7, false);
    for (int v = 1; v <= 7; ++v) {
      int y = 0;
      for (int r = 0; r < 3; ++r) {
        int bit = 0;
        for (int c = 0; c < 3; ++c)
          bit ^= m[r][c] & ((v >> c) & 1);
        y |= bit << r;
      }
      if (y == 0 || seen[y - 1])
        return std::nullopt;
      seen[y - 1] = true;
      im[v - 1] = static_cast<uint16_t>(y - 1);
    }
    return Perm(std::move(im));
  };

  std::vector<Perm> all;
  std::vector<Perm> unitriangular;
  for (int code = 0; code < 512; ++code) {
    int m[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        m[r][c] = (code >> (3 * r + c)) & 1;
    auto p = perm_of_matrix(m);
    if (!p)
      continue;
    all.push_back(*p);
    if (m[0][0] == 1 && m[1][1] == 1 && m[2][2] == 1 && m[1][0] == 0 &&
        m[2][0] == 0 && m[2][1] == 0)
      unitriangular.push_back(*p);
  }

  Gl3Instance inst;
  inst.G = FiniteGroup::from_generators(7, all, "GL3F2");
  if (inst.G.size() != 168)
    throw Error("GL3(F2) enumeration broke");
  for (const Perm &p : unitriangular)
    inst.s_members.push_back(inst.G.index_of(p));
  std::sort(inst.s_members.begin(), inst.s_members.end());

  SubgroupView sview = sub_as_group(inst.G, inst.s_members, "S");
  std::vector<std::vector<int>> kleins;
  for (const Subgroup &h : subgroups(sview.group)) {
    if (h.order() != 4)
      continue;
    std::vector<int> mem;
    bool cyclic = false;
    for (int x : h.members) {
      if (sview.group.element_order(x) == 4)
        cyclic = true;
      mem.push_back(sview.parent_of[x]);
    }
    std::sort(mem.begin(), mem.end());
    if (cyclic)
      inst.c4_members = mem;
    else
      kleins.push_back(mem);
  }
  if (kleins.size() != 2 || inst.c4_members.empty())
    throw Error("unexpected subgroup structure of the Sylow 2-subgroup");
  inst.v_members = kleins[0];
  inst.vprime_members = kleins[1];
  inst.nv_members = normalizer(inst.G, Subgroup{&inst.G, inst.v_members}).members;
  inst.nvprime_members =
      normalizer(inst.G, Subgroup{&inst.G, inst.vprime_members}).members;
  return inst;
}

// The locality N_G(V) u_S N_G(V') as an amalgam pregroup, together with the
// carrier member sets of the four objects.
struct Gl3Locality {
  BuiltAmalgam built;
  std::vector<int> s_carrier, v_carrier, vprime_carrier, c4_carrier;
  // identification of the carrier copy of S with the abstract S
  FiniteGroup s_group;
  std::vector<int> pg_of_s;
};

inline Gl3Locality gl3_locality() {
  Gl3Instance inst = gl3_f2();
  SubgroupView av = sub_as_group(inst.G, inst.nv_members, "NV");
  SubgroupView bv = sub_as_group(inst.G, inst.nvprime_members, "NVp");
  SubgroupView cv = sub_as_group(inst.G, inst.s_members, "S");

  AmalgamData d;
  d.A = av.group;
  d.B = bv.group;
  d.C = cv.group;
  d.phi_a.resize(cv.group.size());
  d.phi_b.resize(cv.group.size());
  for (int c = 0; c < cv.group.size(); ++c) {
    const Perm &p = inst.G.element(cv.parent_of[c]);
    d.phi_a[c] = av.group.index_of(p);
    d.phi_b[c] = bv.group.index_of(p);
    if (d.phi_a[c] < 0 || d.phi_b[c] < 0)
      throw Error("S does not embed in both normalisers");
  }

  Gl3Locality loc;
  loc.built = amalgam_pregroup(d);
  auto carrier_of_g = [&](int g_elem) {
    int c = cv.group.index_of(inst.G.element(g_elem));
    if (c < 0)
      throw Error("element outside S");
    return loc.built.carrier_of_a[d.phi_a[c]];
  };
  for (int x : inst.s_members)
    loc.s_carrier.push_back(carrier_of_g(x));
  for (int x : inst.v_members)
    loc.v_carrier.push_back(carrier_of_g(x));
  for (int x : inst.vprime_members)
    loc.vprime_carrier.push_back(carrier_of_g(x));
  for (int x : inst.c4_members)
    loc.c4_carrier.push_back(carrier_of_g(x));
  std::sort(loc.s_carrier.begin(), loc.s_carrier.end());
  std::sort(loc.v_carrier.begin(), loc.v_carrier.end());
  std::sort(loc.vprime_carrier.begin(), loc.vprime_carrier.end());
  std::sort(loc.c4_carrier.begin(), loc.c4_carrier.end());

  loc.s_group = cv.group;
  loc.pg_of_s.resize(cv.group.size());
  for (int c = 0; c < cv.group.size(); ++c)
    loc.pg_of_s[c] = loc.built.carrier_of_a[d.phi_a[c]];
  return loc;
}

// --- canonical amalgam and HNN-style instances ----------------------------------

inline AmalgamData amalgam_c2_c3() {
  AmalgamData d;
  d.A = cyclic_group(2, "a");
  d.B = cyclic_group(3, "b");
  d.C = cyclic_group(1);
  d.phi_a = {0};
  d.phi_b = {0};
  return d;
}

inline AmalgamData amalgam_c2_c4() {
  AmalgamData d;
  d.A = cyclic_group(2, "a");
  d.B = cyclic_group(4, "b");
  d.C = cyclic_group(1);
  d.phi_a = {0};
  d.phi_b = {0};
  return d;
}

inline AmalgamData amalgam_c4_c4_over_c2() {
  AmalgamData d;
  d.A = cyclic_group(4, "a");
  d.B = cyclic_group(4, "b");
  d.C = cyclic_group(2, "c");
  d.phi_a = {0, 2}; // c -> a^2
  d.phi_b = {0, 2};
  return d;
}

// one stable letter with trivial P_1 = Q_1
inline LSData ls_c2_trivial() {
  LSData d;
  d.S = cyclic_group(2, "s");
  d.gens.push_back(LsGenerator{{0}, {0}, {0}});
  return d;
}

// S = C3 with the inversion automorphism
inline LSData ls_c3_inversion() {
  LSData d;
  d.S = cyclic_group(3, "a");
  d.gens.push_back(LsGenerator{{0, 1, 2}, {0, 1, 2}, {0, 2, 1}});
  return d;
}

// S = C4 with the identity on the central subgroup of order 2
inline LSData ls_c4_center() {
  LSData d;
  d.S = cyclic_group(4, "a");
  d.gens.push_back(LsGenerator{{0, 2}, {0, 2}, {0, 2}});
  return d;
}

// S = V4 with an isomorphism between two distinct subgroups of order 2
inline LSData ls_v4_swap() {
  LSData d;
  d.S = klein_four();
  // the two involutions moving disjoint point sets
  int x = -1, y = -1;
  for (int i = 1; i < d.S.size(); ++i) {
    const Perm &p = d.S.element(i);
    if (p[0] != 0 && p[2] == 2)
      x = i;
    if (p[0] == 0 && p[2] != 2)
      y = i;
  }
  if (x < 0 || y < 0)
    throw Error("klein four structure unexpected");
  std::vector<int> pm{0, x}, qm{0, y};
  std::sort(pm.begin(), pm.end());
  std::sort(qm.begin(), qm.end());
  LsGenerator g;
  g.p_members = pm;
  g.q_members = qm;
  g.phi = {0, y};
  d.gens.push_back(std::move(g));
  return d;
}

// S = D8 with a cyclic rotation of the involutions of one Klein subgroup
inline LSData ls_d8_klein() {
  LSData d;
  d.S = dihedral_group(4);
  std::vector<int> v;
  for (const Subgroup &h : subgroups(d.S)) {
    if (h.order() != 4)
      continue;
    bool cyclic = false;
    for (int x : h.members)
      if (d.S.element_order(x) == 4)
        cyclic = true;
    if (!cyclic) {
      v = h.members;
      break;
    }
  }
  if (v.size() != 4)
    throw Error("D8 has no Klein subgroup?");
  // 1 -> 1, m1 -> m2 -> m3 -> m1
  LsGenerator g;
  g.p_members = v;
  g.q_members = v;
  g.phi = {v[0], v[2], v[3], v[1]};
  d.gens.push_back(std::move(g));
  return d;
}

// two identical stable letters, for the duplicate-letter obstruction
inline LSData ls_duplicate_letters() {
  LSData d;
  d.S = cyclic_group(4, "a");
  d.gens.push_back(LsGenerator{{0, 2}, {0, 2}, {0, 2}});
  d.gens.push_back(LsGenerator{{0, 2}, {0, 2}, {0, 2}});
  return d;
}

// S = C2 inside S3 via its Sylow 2-subgroup
inline RobinsonData robinson_s3() {
  RobinsonData d;
  d.S = cyclic_group(2, "s");
  RobinsonFactor f;
  f.G = symmetric_group(3);
  Subgroup syl = sylow_subgroup(f.G, 2);
  f.s_members = {0, 1};
  f.f_images = {0, syl.members[0] == 0 ? syl.members[1] : syl.members[0]};
  d.factors.push_back(std::move(f));
  return d;
}

// S = C4 with S_1 of index 2: the p-core condition N_S(core) = S_1 fails
inline RobinsonData robinson_bad_normalizer() {
  RobinsonData d;
  d.S = cyclic_group(4, "a");
  RobinsonFactor f;
  f.G = symmetric_group(3);
  Subgroup syl = sylow_subgroup(f.G, 2);
  int t = syl.members[0] == 0 ? syl.members[1] : syl.members[0];
  f.s_members = {0, 2};
  f.f_images = {0, t};
  d.factors.push_back(std::move(f));
  return d;
}

// degenerate factor equal to S itself
inline RobinsonData robinson_degenerate() {
  RobinsonData d;
  d.S = cyclic_group(2, "s");
  RobinsonFactor f;
  f.G = cyclic_group(2, "s");
  f.s_members = {0, 1};
  f.f_images = {0, 1};
  d.factors.push_back(std::move(f));
  return d;
}

// two copies of S3 glued along the same C2
inline RobinsonData robinson_two_factors() {
  RobinsonData d = robinson_s3();
  d.factors.push_back(d.factors[0]);
  return d;
}

} // namespace instances
} // namespace pg
