#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pg/errors.hpp"
#include "pg/group.hpp"
#include "pg/partial.hpp"
#include "pg/pregroup.hpp"

namespace pg {

// --- coset machinery ------------------------------------------------------

// Right cosets H\G.  reps lists the chosen representatives in ascending
// order (so the identity represents H itself); rep_of maps every element to
// the representative of its coset H*x.
struct RightCosets {
  std::vector<int> reps;
  std::vector<int> rep_of;
  std::vector<int> rep_pos; // element -> position of its rep in reps
};

inline RightCosets right_cosets(const FiniteGroup &G,
                                const std::vector<int> &H) {
  RightCosets rc;
  rc.rep_of.assign(G.size(), -1);
  rc.rep_pos.assign(G.size(), -1);
  for (int x = 0; x < G.size(); ++x) {
    if (rc.rep_of[x] >= 0)
      continue;
    int pos = static_cast<int>(rc.reps.size());
    rc.reps.push_back(x);
    for (int h : H) {
      int y = G.mult(h, x);
      rc.rep_of[y] = x;
      rc.rep_pos[y] = pos;
    }
  }
  return rc;
}

// Left cosets G/H with least-element representatives.
inline RightCosets left_cosets(const FiniteGroup &G,
                               const std::vector<int> &H) {
  RightCosets rc;
  rc.rep_of.assign(G.size(), -1);
  rc.rep_pos.assign(G.size(), -1);
  for (int x = 0; x < G.size(); ++x) {
    if (rc.rep_of[x] >= 0)
      continue;
    int pos = static_cast<int>(rc.reps.size());
    rc.reps.push_back(x);
    for (int h : H) {
      int y = G.mult(x, h);
      rc.rep_of[y] = x;
      rc.rep_pos[y] = pos;
    }
  }
  return rc;
}

// Validates a user-supplied right transversal for H\G: exactly one
// representative per coset and the identity among them.
inline RightCosets right_cosets_from(const FiniteGroup &G,
                                     const std::vector<int> &H,
                                     const std::vector<int> &reps) {
  RightCosets rc;
  rc.rep_of.assign(G.size(), -1);
  rc.rep_pos.assign(G.size(), -1);
  rc.reps = reps;
  bool has_identity = false;
  for (size_t pos = 0; pos < reps.size(); ++pos) {
    int x = reps[pos];
    if (x == G.identity())
      has_identity = true;
    for (int h : H) {
      int y = G.mult(h, x);
      if (rc.rep_of[y] >= 0)
        throw ArgumentError("transversal hits a coset twice");
      rc.rep_of[y] = x;
      rc.rep_pos[y] = static_cast<int>(pos);
    }
  }
  for (int x = 0; x < G.size(); ++x)
    if (rc.rep_of[x] < 0)
      throw ArgumentError("transversal misses a coset");
  if (!has_identity)
    throw ArgumentError("transversal must contain the identity");
  return rc;
}

// --- amalgams --------------------------------------------------------------

struct AmalgamData {
  FiniteGroup A, B, C;
  std::vector<int> phi_a; // C element index -> A element index
  std::vector<int> phi_b; // C element index -> B element index
};

inline void validate_amalgam_data(const AmalgamData &d) {
  GroupHom ha{whole_group(d.C), whole_group(d.A), d.phi_a};
  GroupHom hb{whole_group(d.C), whole_group(d.B), d.phi_b};
  ha.source.parent = &d.C;
  ha.target.parent = &d.A;
  hb.source.parent = &d.C;
  hb.target.parent = &d.B;
  if (!is_injective_hom(ha) || !is_injective_hom(hb))
    throw ArgumentError("amalgam: edge maps must be injective homomorphisms");
}

struct BuiltAmalgam {
  Pregroup pg;
  AmalgamData data;
  std::vector<int> a_of, b_of;            // carrier -> factor index or -1
  std::vector<int> carrier_of_a, carrier_of_b;
};

// The pregroup A u_C B on (A \ phi_A(C)) u C u (B \ phi_B(C)); a pair is in
// the domain iff both entries come from A or both from B.
inline BuiltAmalgam amalgam_pregroup(const AmalgamData &d) {
  validate_amalgam_data(d);
  const FiniteGroup &A = d.A, &B = d.B, &C = d.C;

  std::vector<int> c_of_a(A.size(), -1), c_of_b(B.size(), -1);
  for (int c = 0; c < C.size(); ++c) {
    c_of_a[d.phi_a[c]] = c;
    c_of_b[d.phi_b[c]] = c;
  }

  BuiltAmalgam out;
  out.data = d;
  out.carrier_of_a.assign(A.size(), -1);
  out.carrier_of_b.assign(B.size(), -1);
  int n = 0;
  for (int a = 0; a < A.size(); ++a)
    out.carrier_of_a[a] = n++;
  for (int b = 0; b < B.size(); ++b) {
    if (c_of_b[b] >= 0)
      out.carrier_of_b[b] = out.carrier_of_a[d.phi_a[c_of_b[b]]];
    else
      out.carrier_of_b[b] = n++;
  }
  if (n != A.size() + B.size() - C.size())
    throw Error("amalgam carrier size mismatch");

  out.a_of.assign(n, -1);
  out.b_of.assign(n, -1);
  for (int a = 0; a < A.size(); ++a)
    out.a_of[out.carrier_of_a[a]] = a;
  for (int b = 0; b < B.size(); ++b)
    out.b_of[out.carrier_of_b[b]] = b;

  PregroupBuilder bld(n);
  std::set<std::string> used;
  for (int x = 0; x < n; ++x) {
    std::string lab = out.a_of[x] >= 0 ? A.label(out.a_of[x])
                                       : B.label(out.b_of[x]);
    if (!used.insert(lab).second) {
      lab = "B." + lab;
      if (!used.insert(lab).second)
        throw FormatError("amalgam: cannot disambiguate label '" + lab + "'");
    }
    bld.label(x, lab);
    if (out.a_of[x] >= 0)
      bld.inverse(x, out.carrier_of_a[A.inv(out.a_of[x])]);
    else
      bld.inverse(x, out.carrier_of_b[B.inv(out.b_of[x])]);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (out.a_of[x] >= 0 && out.a_of[y] >= 0)
        bld.product(x, y, out.carrier_of_a[A.mult(out.a_of[x], out.a_of[y])]);
      else if (out.b_of[x] >= 0 && out.b_of[y] >= 0)
        bld.product(x, y, out.carrier_of_b[B.mult(out.b_of[x], out.b_of[y])]);
    }
  out.pg = bld.finish();
  return out;
}

// --- the pregroup for the Leary-Stancu construction -------------------------

struct LsGenerator {
  std::vector<int> p_members; // subgroup P_i of S
  std::vector<int> q_members; // subgroup Q_i of S
  std::vector<int> phi;       // phi[k] = image of p_members[k] in Q_i
};

struct LSData {
  FiniteGroup S;
  std::vector<LsGenerator> gens;
  // right transversals of Q_i\S and P_i\S; computed canonically when empty
  std::vector<std::vector<int>> a_reps, b_reps;
};

inline void validate_ls_data(const LSData &d) {
  for (const LsGenerator &g : d.gens) {
    if (!is_subgroup_members(d.S, g.p_members) ||
        !is_subgroup_members(d.S, g.q_members))
      throw ArgumentError("ls: P_i and Q_i must be subgroups of S");
    GroupHom h{Subgroup{&d.S, g.p_members}, Subgroup{&d.S, g.q_members},
               g.phi};
    if (!is_injective_hom(h))
      throw ArgumentError("ls: phi_i must be an injective homomorphism");
    std::vector<int> im = g.phi;
    std::sort(im.begin(), im.end());
    if (im != g.q_members)
      throw ArgumentError("ls: phi_i must map P_i onto Q_i");
  }
}

struct BuiltLs {
  Pregroup pg;
  LSData data;

  struct Sym {
    int kind; // 0: element of S; 1: a t_i a'; 2: b t_i^-1 b'
    int i = -1;
    int left = 0;    // a resp. b (any element of S)
    int rep_pos = 0; // position of a' in A_i resp. b' in B_i
  };
  std::vector<Sym> syms;
  std::vector<RightCosets> a_cosets, b_cosets; // per generator
  std::vector<long> t_off, tinv_off;

  int t_carrier(int i, int a, int rep_pos) const {
    return static_cast<int>(t_off[i]) +
           a * static_cast<int>(a_cosets[i].reps.size()) + rep_pos;
  }
  int tinv_carrier(int i, int b, int rep_pos) const {
    return static_cast<int>(tinv_off[i]) +
           b * static_cast<int>(b_cosets[i].reps.size()) + rep_pos;
  }
};

inline BuiltLs leary_stancu_pregroup(const LSData &d) {
  validate_ls_data(d);
  const FiniteGroup &S = d.S;
  int r = static_cast<int>(d.gens.size());

  BuiltLs out;
  out.data = d;
  for (int i = 0; i < r; ++i) {
    if (i < static_cast<int>(d.a_reps.size()) && !d.a_reps[i].empty())
      out.a_cosets.push_back(
          right_cosets_from(S, d.gens[i].q_members, d.a_reps[i]));
    else
      out.a_cosets.push_back(right_cosets(S, d.gens[i].q_members));
    if (i < static_cast<int>(d.b_reps.size()) && !d.b_reps[i].empty())
      out.b_cosets.push_back(
          right_cosets_from(S, d.gens[i].p_members, d.b_reps[i]));
    else
      out.b_cosets.push_back(right_cosets(S, d.gens[i].p_members));
  }

  long n = S.size();
  for (int i = 0; i < r; ++i) {
    out.t_off.push_back(n);
    n += static_cast<long>(S.size()) * out.a_cosets[i].reps.size();
    out.tinv_off.push_back(n);
    n += static_cast<long>(S.size()) * out.b_cosets[i].reps.size();
  }
  if (n > 4096)
    throw ResourceError("ls: carrier too large");

  out.syms.resize(n);
  for (int s = 0; s < S.size(); ++s)
    out.syms[s] = {0, -1, s, 0};
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < S.size(); ++a) {
      for (int pos = 0; pos < static_cast<int>(out.a_cosets[i].reps.size());
           ++pos)
        out.syms[out.t_carrier(i, a, pos)] = {1, i, a, pos};
      for (int pos = 0; pos < static_cast<int>(out.b_cosets[i].reps.size());
           ++pos)
        out.syms[out.tinv_carrier(i, a, pos)] = {2, i, a, pos};
    }
  }

  // dense phi maps
  std::vector<std::vector<int>> phi(r, std::vector<int>(S.size(), -1));
  std::vector<std::vector<int>> phi_inv(r, std::vector<int>(S.size(), -1));
  for (int i = 0; i < r; ++i)
    for (size_t k = 0; k < d.gens[i].p_members.size(); ++k) {
      phi[i][d.gens[i].p_members[k]] = d.gens[i].phi[k];
      phi_inv[i][d.gens[i].phi[k]] = d.gens[i].p_members[k];
    }

  PregroupBuilder bld(static_cast<int>(n));

  // labels
  auto token = [&](int i, int eps) {
    return "t" + std::to_string(i + 1) + (eps < 0 ? "^-1" : "");
  };
  for (int s = 0; s < S.size(); ++s) {
    const std::string &lab = S.label(s);
    if (lab.find('*') != std::string::npos)
      throw FormatError("ls: S labels must not contain '*'");
    bld.label(s, lab);
  }
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    int right = sym.kind == 1 ? out.a_cosets[sym.i].reps[sym.rep_pos]
                              : out.b_cosets[sym.i].reps[sym.rep_pos];
    std::string lab;
    if (sym.left != S.identity())
      lab += S.label(sym.left) + "*";
    lab += token(sym.i, sym.kind == 1 ? 1 : -1);
    if (right != S.identity())
      lab += "*" + S.label(right);
    bld.label(static_cast<int>(x), lab);
  }

  // inverses
  for (int s = 0; s < S.size(); ++s)
    bld.inverse(s, S.inv(s));
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    int i = sym.i;
    if (sym.kind == 1) {
      int a = sym.left, ap = out.a_cosets[i].reps[sym.rep_pos];
      // (a t_i a')^-1 = a'^-1 t_i^-1 a^-1, with a^-1 = u b' for u in P_i
      int target = S.inv(a);
      int bp_pos = out.b_cosets[i].rep_pos[target];
      int bp = out.b_cosets[i].rep_of[target];
      int u = S.mult(target, S.inv(bp));
      int v = phi[i][u];
      bld.inverse(static_cast<int>(x),
                  out.tinv_carrier(i, S.mult(S.inv(ap), v), bp_pos));
    } else {
      int b = sym.left, bp = out.b_cosets[i].reps[sym.rep_pos];
      int target = S.inv(b);
      int ap_pos = out.a_cosets[i].rep_pos[target];
      int ap = out.a_cosets[i].rep_of[target];
      int v = S.mult(target, S.inv(ap)); // in Q_i
      int u = phi_inv[i][v];
      bld.inverse(static_cast<int>(x),
                  out.t_carrier(i, S.mult(S.inv(bp), u), ap_pos));
    }
  }

  // products
  for (int s = 0; s < S.size(); ++s)
    for (int s2 = 0; s2 < S.size(); ++s2)
      bld.product(s, s2, S.mult(s, s2));
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    int i = sym.i;
    for (int s = 0; s < S.size(); ++s) {
      // (s, x): absorb into the left coordinate
      if (sym.kind == 1)
        bld.product(s, static_cast<int>(x),
                    out.t_carrier(i, S.mult(s, sym.left), sym.rep_pos));
      else
        bld.product(s, static_cast<int>(x),
                    out.tinv_carrier(i, S.mult(s, sym.left), sym.rep_pos));
      // (x, s): renormalise the right coset coordinate
      if (sym.kind == 1) {
        int ap = out.a_cosets[i].reps[sym.rep_pos];
        int t = S.mult(ap, s);
        int app_pos = out.a_cosets[i].rep_pos[t];
        int app = out.a_cosets[i].rep_of[t];
        int v = S.mult(t, S.inv(app)); // in Q_i
        int u = phi_inv[i][v];
        bld.product(static_cast<int>(x), s,
                    out.t_carrier(i, S.mult(sym.left, u), app_pos));
      } else {
        int bp = out.b_cosets[i].reps[sym.rep_pos];
        int t = S.mult(bp, s);
        int bpp_pos = out.b_cosets[i].rep_pos[t];
        int bpp = out.b_cosets[i].rep_of[t];
        int u = S.mult(t, S.inv(bpp)); // in P_i
        int v = phi[i][u];
        bld.product(static_cast<int>(x), s,
                    out.tinv_carrier(i, S.mult(sym.left, v), bpp_pos));
      }
    }
  }
  // mixed t / t^-1 pairs within the same generator
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < S.size(); ++a)
      for (int appos = 0; appos < static_cast<int>(out.a_cosets[i].reps.size());
           ++appos) {
        int x = out.t_carrier(i, a, appos);
        int ap = out.a_cosets[i].reps[appos];
        for (int b = 0; b < S.size(); ++b)
          for (int bppos = 0;
               bppos < static_cast<int>(out.b_cosets[i].reps.size()); ++bppos) {
            int y = out.tinv_carrier(i, b, bppos);
            int bp = out.b_cosets[i].reps[bppos];
            // (a t_i a', b t_i^-1 b') in D iff a'b in Q_i
            int ab = S.mult(ap, b);
            if (phi_inv[i][ab] >= 0) {
              int z = S.mult(S.mult(a, phi_inv[i][ab]), bp);
              bld.product(x, y, z);
            }
            // (b t_i^-1 b', a t_i a') in D iff b'a in P_i
            int ba = S.mult(bp, a);
            if (phi[i][ba] >= 0) {
              int z = S.mult(S.mult(b, phi[i][ba]), ap);
              bld.product(y, x, z);
            }
          }
      }
  }

  out.pg = bld.finish();
  long expected = S.size();
  for (int i = 0; i < r; ++i)
    expected += static_cast<long>(S.size()) *
                (out.a_cosets[i].reps.size() + out.b_cosets[i].reps.size());
  if (out.pg.size() != expected)
    throw Error("ls carrier size mismatch");
  return out;
}

// --- the pregroup for the Robinson construction -----------------------------

struct RobinsonFactor {
  FiniteGroup G;
  std::vector<int> s_members; // subgroup S_i of S
  std::vector<int> f_images;  // f_i(s_members[k]) in G
};

struct RobinsonData {
  FiniteGroup S;
  std::vector<RobinsonFactor> factors;
};

struct BuiltRobinson {
  Pregroup pg;
  RobinsonData data;

  struct FactorTables {
    std::vector<int> s_prime;        // sorted image of f_i
    std::vector<int> f_map;          // S index -> G index (or -1)
    std::vector<int> f_inv;          // G index -> S index (or -1)
    std::vector<int> h_reps;         // double coset representatives
    std::vector<int> dc_pos;         // G index -> position in h_reps (or -1)
    std::vector<std::vector<int>> t_members; // per rep: T_{i,g} <= S
    std::vector<RightCosets> a_cosets;       // per rep: left cosets S/T_{i,g}
  };
  std::vector<FactorTables> tables;

  struct Sym {
    int kind; // 0: element of S; 1: a g a'
    int i = -1;
    int g_pos = 0;   // position in h_reps
    int rep_pos = 0; // position of a in A_{i,g}
    int right = 0;   // a' (any element of S); for kind 0 the S element
  };
  std::vector<Sym> syms;
  std::vector<std::vector<long>> block_off; // per factor, per rep

  int carrier(int i, int g_pos, int rep_pos, int right) const {
    return static_cast<int>(block_off[i][g_pos]) +
           rep_pos * static_cast<int>(data.S.size()) + right;
  }
};

inline void validate_robinson_data(const RobinsonData &d) {
  for (const RobinsonFactor &f : d.factors) {
    if (!is_subgroup_members(d.S, f.s_members))
      throw ArgumentError("robinson: S_i must be a subgroup of S");
    GroupHom h{Subgroup{&d.S, f.s_members}, whole_group(f.G), f.f_images};
    if (!is_injective_hom(h))
      throw ArgumentError("robinson: f_i must be an injective homomorphism");
    long p = smallest_prime_factor(d.S.size());
    if (p > 1 && !is_p_power(d.S.size(), p))
      throw ArgumentError("robinson: S must be a p-group");
    if (p > 1 &&
        static_cast<long>(f.s_members.size()) != p_part(f.G.size(), p))
      throw ArgumentError("robinson: f_i(S_i) must be a Sylow p-subgroup");
  }
}

inline BuiltRobinson robinson_pregroup(const RobinsonData &d) {
  validate_robinson_data(d);
  const FiniteGroup &S = d.S;
  int r = static_cast<int>(d.factors.size());

  BuiltRobinson out;
  out.data = d;
  out.tables.resize(r);
  for (int i = 0; i < r; ++i) {
    const RobinsonFactor &f = d.factors[i];
    const FiniteGroup &G = f.G;
    auto &tab = out.tables[i];
    tab.f_map.assign(S.size(), -1);
    tab.f_inv.assign(G.size(), -1);
    for (size_t k = 0; k < f.s_members.size(); ++k) {
      tab.f_map[f.s_members[k]] = f.f_images[k];
      tab.f_inv[f.f_images[k]] = f.s_members[k];
    }
    tab.s_prime = f.f_images;
    std::sort(tab.s_prime.begin(), tab.s_prime.end());

    // non-trivial double cosets S' g S'
    tab.dc_pos.assign(G.size(), -1);
    std::vector<bool> seen(G.size(), false);
    for (int sp : tab.s_prime)
      seen[sp] = true;
    for (int x = 0; x < G.size(); ++x) {
      if (seen[x])
        continue;
      int pos = static_cast<int>(tab.h_reps.size());
      tab.h_reps.push_back(x);
      for (int s1 : tab.s_prime)
        for (int s2 : tab.s_prime) {
          int y = G.mult(G.mult(s1, x), s2);
          seen[y] = true;
          tab.dc_pos[y] = pos;
        }
    }

    // T_{i,g} and its left transversal, per representative
    for (int g : tab.h_reps) {
      std::vector<int> t;
      for (int s : f.s_members) {
        int img = tab.f_map[s];
        int conj = G.mult(G.mult(G.inv(g), img), g);
        if (tab.f_inv[conj] >= 0)
          t.push_back(s);
      }
      std::sort(t.begin(), t.end());
      tab.t_members.push_back(t);
      tab.a_cosets.push_back(left_cosets(S, t));
    }
  }

  long n = S.size();
  out.block_off.resize(r);
  for (int i = 0; i < r; ++i)
    for (size_t gp = 0; gp < out.tables[i].h_reps.size(); ++gp) {
      out.block_off[i].push_back(n);
      n += static_cast<long>(out.tables[i].a_cosets[gp].reps.size()) *
           S.size();
    }
  if (n > 4096)
    throw ResourceError("robinson: carrier too large");

  out.syms.resize(n);
  for (int s = 0; s < S.size(); ++s)
    out.syms[s] = {0, -1, 0, 0, s};
  for (int i = 0; i < r; ++i)
    for (size_t gp = 0; gp < out.tables[i].h_reps.size(); ++gp)
      for (int ap = 0;
           ap < static_cast<int>(out.tables[i].a_cosets[gp].reps.size()); ++ap)
        for (int s = 0; s < S.size(); ++s)
          out.syms[out.carrier(i, static_cast<int>(gp), ap, s)] = {
              1, i, static_cast<int>(gp), ap, s};

  PregroupBuilder bld(static_cast<int>(n));

  for (int s = 0; s < S.size(); ++s) {
    const std::string &lab = S.label(s);
    if (lab.find('*') != std::string::npos)
      throw FormatError("robinson: S labels must not contain '*'");
    bld.label(s, lab);
  }
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    const auto &tab = out.tables[sym.i];
    int a = tab.a_cosets[sym.g_pos].reps[sym.rep_pos];
    std::string mid = "g" + std::to_string(sym.i + 1) + "_" +
                      d.factors[sym.i].G.label(tab.h_reps[sym.g_pos]);
    std::string lab;
    if (a != S.identity())
      lab += S.label(a) + "*";
    lab += mid;
    if (sym.right != S.identity())
      lab += "*" + S.label(sym.right);
    bld.label(static_cast<int>(x), lab);
  }

  // carrier index for a g a' with arbitrary a in S (renormalising a into
  // its T_{i,g} coset representative)
  auto normalize_mid = [&](int i, int g_pos, int a_raw, int tail) {
    const auto &tab = out.tables[i];
    const FiniteGroup &G = d.factors[i].G;
    int g = tab.h_reps[g_pos];
    int rep = tab.a_cosets[g_pos].rep_of[a_raw];
    int rep_pos = tab.a_cosets[g_pos].rep_pos[a_raw];
    int v = S.mult(S.inv(rep), a_raw); // in T_{i,g}
    int conj = G.mult(G.mult(G.inv(g), tab.f_map[v]), g);
    int u = tab.f_inv[conj];
    return out.carrier(i, g_pos, rep_pos, S.mult(u, tail));
  };

  // decompose w in S' k S' as f(u) k f(u'); returns (u, u') in S indices
  auto dc_decompose = [&](int i, int w) {
    const auto &tab = out.tables[i];
    const FiniteGroup &G = d.factors[i].G;
    int k = tab.h_reps[tab.dc_pos[w]];
    for (int x : tab.s_prime) {
      int y = G.mult(G.mult(G.inv(k), G.inv(x)), w);
      if (y >= 0 && tab.f_inv[y] >= 0)
        return std::tuple<int, int, int>(tab.dc_pos[w], tab.f_inv[x],
                                         tab.f_inv[y]);
    }
    throw Error("robinson: double coset decomposition failed");
  };

  // inverses
  for (int s = 0; s < S.size(); ++s)
    bld.inverse(s, S.inv(s));
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    const auto &tab = out.tables[sym.i];
    const FiniteGroup &G = d.factors[sym.i].G;
    int a = tab.a_cosets[sym.g_pos].reps[sym.rep_pos];
    int g = tab.h_reps[sym.g_pos];
    auto [kpos, u, up] = dc_decompose(sym.i, G.inv(g));
    bld.inverse(static_cast<int>(x),
                normalize_mid(sym.i, kpos, S.mult(S.inv(sym.right), u),
                              S.mult(up, S.inv(a))));
  }

  // products
  for (int s = 0; s < S.size(); ++s)
    for (int s2 = 0; s2 < S.size(); ++s2)
      bld.product(s, s2, S.mult(s, s2));
  for (long x = S.size(); x < n; ++x) {
    const auto &sym = out.syms[x];
    const auto &tab = out.tables[sym.i];
    int a = tab.a_cosets[sym.g_pos].reps[sym.rep_pos];
    for (int s = 0; s < S.size(); ++s) {
      bld.product(s, static_cast<int>(x),
                  normalize_mid(sym.i, sym.g_pos, S.mult(s, a), sym.right));
      bld.product(static_cast<int>(x), s,
                  out.carrier(sym.i, sym.g_pos, sym.rep_pos,
                              S.mult(sym.right, s)));
    }
  }
  for (int i = 0; i < r; ++i) {
    const auto &tab = out.tables[i];
    const FiniteGroup &G = d.factors[i].G;
    std::vector<int> s_i = d.factors[i].s_members;
    for (long x = S.size(); x < n; ++x) {
      const auto &sx = out.syms[x];
      if (sx.kind != 1 || sx.i != i)
        continue;
      for (long y = S.size(); y < n; ++y) {
        const auto &sy = out.syms[y];
        if (sy.kind != 1 || sy.i != i)
          continue;
        int b = tab.a_cosets[sy.g_pos].reps[sy.rep_pos];
        int mid = S.mult(sx.right, b); // a'b
        if (!std::binary_search(s_i.begin(), s_i.end(), mid))
          continue;
        int g = tab.h_reps[sx.g_pos], h = tab.h_reps[sy.g_pos];
        int a = tab.a_cosets[sx.g_pos].reps[sx.rep_pos];
        int w = G.mult(G.mult(g, tab.f_map[mid]), h);
        if (tab.f_inv[w] >= 0) {
          int z = S.mult(S.mult(a, tab.f_inv[w]), sy.right);
          bld.product(static_cast<int>(x), static_cast<int>(y), z);
        } else {
          auto [kpos, u, up] = dc_decompose(i, w);
          bld.product(static_cast<int>(x), static_cast<int>(y),
                      normalize_mid(i, kpos, S.mult(a, u),
                                    S.mult(up, sy.right)));
        }
      }
    }
  }

  out.pg = bld.finish();
  return out;
}

// --- domain descriptions ----------------------------------------------------

struct DomainDescriptionReport {
  long words_checked = 0;
  std::vector<Word> mismatches;
  bool ok() const { return mismatches.empty(); }
};

namespace detail {
inline void for_each_word(int alphabet, int maxlen,
                          const std::function<void(const Word &)> &fn) {
  double total = 0, p = 1;
  for (int l = 1; l <= maxlen; ++l) {
    p *= alphabet;
    total += p;
  }
  if (total > 5e7)
    throw ResourceError("word sweep too large");
  Word w;
  std::function<void()> rec = [&]() {
    if (!w.empty())
      fn(w);
    if (static_cast<int>(w.size()) == maxlen)
      return;
    for (int x = 0; x < alphabet; ++x) {
      w.push_back(x);
      rec();
      w.pop_back();
    }
  };
  rec();
}
} // namespace detail

// Checks that the explicit condition list describing the multivariate domain
// of a built pregroup agrees with interval membership on every word of
// length <= maxlen.
inline DomainDescriptionReport ls_domain_description_check(const BuiltLs &b,
                                                           int maxlen) {
  const Pregroup &P = b.pg;
  const FiniteGroup &S = b.data.S;
  PartialView view(P);
  DomainDescriptionReport rep;

  auto predicate = [&](const Word &w) {
    int cur_i = -1, prev = -1; // prev: index into w of last non-S letter
    for (size_t k = 0; k < w.size(); ++k) {
      const auto &sym = b.syms[w[k]];
      if (sym.kind == 0)
        continue;
      if (cur_i >= 0 && sym.i != cur_i)
        return false; // mixes stable letters
      cur_i = sym.i;
      if (prev >= 0) {
        const auto &psym = b.syms[w[prev]];
        if (psym.kind == sym.kind)
          return false; // fails to alternate
        int s = S.identity();
        for (size_t m = prev + 1; m < k; ++m)
          s = S.mult(s, b.syms[w[m]].left);
        if (psym.kind == 1) {
          // a t_i a' ... b t_i^-1 b': need a' s b in Q_i
          int ap = b.a_cosets[cur_i].reps[psym.rep_pos];
          int val = S.mult(S.mult(ap, s), sym.left);
          if (!std::binary_search(b.data.gens[cur_i].q_members.begin(),
                                  b.data.gens[cur_i].q_members.end(), val))
            return false;
        } else {
          // b t_i^-1 b' ... a t_i a': need b' s a in P_i
          int bp = b.b_cosets[cur_i].reps[psym.rep_pos];
          int val = S.mult(S.mult(bp, s), sym.left);
          if (!std::binary_search(b.data.gens[cur_i].p_members.begin(),
                                  b.data.gens[cur_i].p_members.end(), val))
            return false;
        }
      }
      prev = static_cast<int>(k);
    }
    return true;
  };

  detail::for_each_word(P.size(), maxlen, [&](const Word &w) {
    ++rep.words_checked;
    if (view.in_domain(w) != predicate(w) &&
        rep.mismatches.size() < 50)
      rep.mismatches.push_back(w);
  });
  return rep;
}

inline DomainDescriptionReport
robinson_domain_description_check(const BuiltRobinson &b, int maxlen) {
  const Pregroup &P = b.pg;
  const FiniteGroup &S = b.data.S;
  PartialView view(P);
  DomainDescriptionReport rep;

  auto predicate = [&](const Word &w) {
    int cur_i = -1, prev = -1;
    for (size_t k = 0; k < w.size(); ++k) {
      const auto &sym = b.syms[w[k]];
      if (sym.kind == 0)
        continue;
      if (cur_i >= 0 && sym.i != cur_i)
        return false;
      cur_i = sym.i;
      if (prev >= 0) {
        const auto &psym = b.syms[w[prev]];
        int s = S.identity();
        for (size_t m = prev + 1; m < k; ++m)
          s = S.mult(s, b.syms[w[m]].right);
        int ap = psym.right;
        int bcoset = b.tables[cur_i].a_cosets[sym.g_pos].reps[sym.rep_pos];
        int val = S.mult(S.mult(ap, s), bcoset);
        const auto &si = b.data.factors[cur_i].s_members;
        if (!std::binary_search(si.begin(), si.end(), val))
          return false;
      }
      prev = static_cast<int>(k);
    }
    return true;
  };

  detail::for_each_word(P.size(), maxlen, [&](const Word &w) {
    ++rep.words_checked;
    if (view.in_domain(w) != predicate(w) &&
        rep.mismatches.size() < 50)
      rep.mismatches.push_back(w);
  });
  return rep;
}

// --- graphs of groups -------------------------------------------------------

struct GogEdge {
  int u = 0, v = 0; // endpoints of the geometric edge
  FiniteGroup edge_group;
  std::vector<int> into_u, into_v; // edge maps
};

struct GraphOfGroups {
  std::vector<FiniteGroup> vertex_groups;
  std::vector<GogEdge> edges;
};

inline void validate_graph_of_groups(const GraphOfGroups &g) {
  int nv = static_cast<int>(g.vertex_groups.size());
  if (nv == 0)
    throw ArgumentError("graph of groups needs at least one vertex");
  for (const GogEdge &e : g.edges) {
    if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv)
      throw ArgumentError("edge endpoint out of range");
    GroupHom hu{whole_group(e.edge_group), whole_group(g.vertex_groups[e.u]),
                e.into_u};
    GroupHom hv{whole_group(e.edge_group), whole_group(g.vertex_groups[e.v]),
                e.into_v};
    if (!is_injective_hom(hu) || !is_injective_hom(hv))
      throw ArgumentError("edge maps must be injective homomorphisms");
  }
  // connectivity
  std::vector<bool> vis(nv, false);
  std::vector<int> stack{0};
  vis[0] = true;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (const GogEdge &e : g.edges) {
      if (e.u == c && !vis[e.v]) {
        vis[e.v] = true;
        stack.push_back(e.v);
      }
      if (e.v == c && !vis[e.u]) {
        vis[e.u] = true;
        stack.push_back(e.u);
      }
    }
  }
  for (bool b : vis)
    if (!b)
      throw ArgumentError("graph of groups must be connected");
}

inline std::vector<int> bfs_spanning_tree(const GraphOfGroups &g) {
  int nv = static_cast<int>(g.vertex_groups.size());
  std::vector<bool> vis(nv, false);
  std::vector<int> tree;
  std::deque<int> q{0};
  vis[0] = true;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (size_t k = 0; k < g.edges.size(); ++k) {
      const GogEdge &e = g.edges[k];
      int other = -1;
      if (e.u == c && !vis[e.v])
        other = e.v;
      else if (e.v == c && !vis[e.u])
        other = e.u;
      if (other >= 0) {
        vis[other] = true;
        tree.push_back(static_cast<int>(k));
        q.push_back(other);
      }
    }
  }
  return tree;
}

inline bool is_spanning_tree(const GraphOfGroups &g,
                             const std::vector<int> &tree) {
  int nv = static_cast<int>(g.vertex_groups.size());
  if (static_cast<int>(tree.size()) != nv - 1)
    return false;
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i)
    parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int k : tree) {
    if (k < 0 || k >= static_cast<int>(g.edges.size()))
      return false;
    int a = find(g.edges[k].u), b = find(g.edges[k].v);
    if (a == b)
      return false;
    parent[a] = b;
  }
  return true;
}

// Fundamental-group presentation with respect to a spanning tree:
// generators are the vertex-group elements and one letter per geometric
// edge; relators are the vertex multiplication tables, the edge relations
// e a^e e^-1 = a^(ebar), and the trivialisation of tree edges.
inline Presentation graph_presentation(const GraphOfGroups &g,
                                       const std::vector<int> *tree = nullptr) {
  validate_graph_of_groups(g);
  std::vector<int> tr = tree ? *tree : bfs_spanning_tree(g);
  if (!is_spanning_tree(g, tr) &&
      !(g.vertex_groups.size() == 1 && tr.empty()))
    throw ArgumentError("not a spanning tree");

  Presentation pres;
  std::vector<std::vector<int>> vgen(g.vertex_groups.size());
  for (size_t v = 0; v < g.vertex_groups.size(); ++v) {
    const FiniteGroup &G = g.vertex_groups[v];
    vgen[v].resize(G.size());
    for (int x = 0; x < G.size(); ++x) {
      vgen[v][x] = static_cast<int>(pres.generators.size());
      pres.generators.push_back("v" + std::to_string(v) + "." + G.label(x));
    }
  }
  std::vector<int> egen(g.edges.size());
  for (size_t k = 0; k < g.edges.size(); ++k) {
    egen[k] = static_cast<int>(pres.generators.size());
    pres.generators.push_back("e" + std::to_string(k));
  }

  for (size_t v = 0; v < g.vertex_groups.size(); ++v) {
    const FiniteGroup &G = g.vertex_groups[v];
    for (int x = 0; x < G.size(); ++x)
      for (int y = 0; y < G.size(); ++y)
        pres.relators.push_back({PresLetter{vgen[v][x], false},
                                 PresLetter{vgen[v][y], false},
                                 PresLetter{vgen[v][G.mult(x, y)], true}});
  }
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const GogEdge &e = g.edges[k];
    for (int a = 0; a < e.edge_group.size(); ++a)
      pres.relators.push_back({PresLetter{egen[k], false},
                               PresLetter{vgen[e.v][e.into_v[a]], false},
                               PresLetter{egen[k], true},
                               PresLetter{vgen[e.u][e.into_u[a]], true}});
  }
  for (int k : tr)
    pres.relators.push_back({PresLetter{egen[k], false}});
  return pres;
}

inline std::vector<std::vector<int>>
all_spanning_trees(const GraphOfGroups &g) {
  int ne = static_cast<int>(g.edges.size());
  int nv = static_cast<int>(g.vertex_groups.size());
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == nv - 1) {
      if (is_spanning_tree(g, pick))
        out.push_back(pick);
      return;
    }
    for (int k = from; k < ne; ++k) {
      pick.push_back(k);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (nv == 1)
    out.push_back({});
  return out;
}

// graph-of-groups views of the two explicit constructions

inline GraphOfGroups amalgam_graph(const AmalgamData &d) {
  GraphOfGroups g;
  g.vertex_groups = {d.A, d.B};
  g.edges.push_back(GogEdge{0, 1, d.C, d.phi_a, d.phi_b});
  return g;
}

// One vertex carrying `vertex` (S itself, or S x U supplied with an
// embedding of S); one loop per generator with edge group P_i, edge maps the
// inclusion and phi_i.
inline GraphOfGroups ls_graph(const LSData &d,
                              const FiniteGroup *vertex = nullptr,
                              const std::vector<int> *embed_s = nullptr) {
  GraphOfGroups g;
  const FiniteGroup &V = vertex ? *vertex : d.S;
  std::vector<int> emb;
  if (embed_s)
    emb = *embed_s;
  else {
    emb.resize(d.S.size());
    for (int i = 0; i < d.S.size(); ++i)
      emb[i] = i;
  }
  g.vertex_groups = {V};
  for (const LsGenerator &gen : d.gens) {
    SubgroupView pv = sub_as_group(d.S, gen.p_members, "P");
    GogEdge e;
    e.u = 0;
    e.v = 0;
    e.edge_group = pv.group;
    e.into_u.resize(pv.group.size());
    e.into_v.resize(pv.group.size());
    for (int x = 0; x < pv.group.size(); ++x) {
      int s_elem = pv.parent_of[x];
      e.into_u[x] = emb[s_elem]; // inclusion
      auto it = std::lower_bound(gen.p_members.begin(), gen.p_members.end(),
                                 s_elem);
      e.into_v[x] = emb[gen.phi[it - gen.p_members.begin()]];
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

} // namespace pg
