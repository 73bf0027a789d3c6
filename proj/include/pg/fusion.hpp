#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pg/errors.hpp"
#include "pg/group.hpp"
#include "pg/pregroup.hpp"

namespace pg {

// A fusion system over a finite p-group S: all subgroups of S as objects,
// and for each ordered pair a set of injective homomorphisms stored as image
// vectors aligned with the sorted member list of the source.
class FusionSystem {
public:
  explicit FusionSystem(FiniteGroup s) : s_(std::move(s)) {
    p_ = smallest_prime_factor(s_.size());
    if (p_ > 1 && !is_p_power(s_.size(), p_))
      throw ArgumentError("fusion: S must be a p-group");
    for (const Subgroup &h : subgroups(s_))
      objects_.push_back(h.members);
    homs_.assign(objects_.size(), std::vector<std::set<std::vector<int>>>(
                                      objects_.size()));
  }

  const FiniteGroup &s() const { return s_; }
  long prime() const { return p_; }

  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::vector<int> &object(int i) const { return objects_[i]; }

  int object_index(const std::vector<int> &members) const {
    for (int i = 0; i < object_count(); ++i)
      if (objects_[i] == members)
        return i;
    return -1;
  }

  const std::set<std::vector<int>> &homset(int p, int q) const {
    return homs_[p][q];
  }

  bool add(int p, int q, const std::vector<int> &images) {
    return homs_[p][q].insert(images).second;
  }

  long total_morphisms() const {
    long c = 0;
    for (const auto &row : homs_)
      for (const auto &set : row)
        c += static_cast<long>(set.size());
    return c;
  }

  bool same_s(const FusionSystem &o) const { return s_.same_elements(o.s_); }

  // position of an element within an object's member list
  int member_pos(int obj, int elem) const {
    const auto &m = objects_[obj];
    auto it = std::lower_bound(m.begin(), m.end(), elem);
    if (it == m.end() || *it != elem)
      return -1;
    return static_cast<int>(it - m.begin());
  }

private:
  FiniteGroup s_;
  long p_ = 0;
  std::vector<std::vector<int>> objects_;
  std::vector<std::vector<std::set<std::vector<int>>>> homs_;
};

namespace detail {

// add c_g restricted to every object and corestricted into every overgroup
// of the image
inline void add_inner_maps(FusionSystem &F) {
  const FiniteGroup &S = F.s();
  for (int s = 0; s < S.size(); ++s)
    for (int p = 0; p < F.object_count(); ++p) {
      std::vector<int> img;
      img.reserve(F.object(p).size());
      for (int x : F.object(p))
        img.push_back(S.conj(x, s));
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      for (int q = 0; q < F.object_count(); ++q)
        if (std::includes(F.object(q).begin(), F.object(q).end(),
                          sorted.begin(), sorted.end()))
          F.add(p, q, img);
    }
}

// least fixpoint under restriction, corestriction, inverses of isomorphisms
// and composition
inline void close_fusion(FusionSystem &F) {
  bool changed = true;
  while (changed) {
    changed = false;
    // restriction to subobjects
    for (int p = 0; p < F.object_count(); ++p)
      for (int q = 0; q < F.object_count(); ++q) {
        auto homs = F.homset(p, q); // copy; we mutate below
        for (const auto &img : homs) {
          for (int p2 = 0; p2 < F.object_count(); ++p2) {
            const auto &sub = F.object(p2);
            if (sub.size() >= F.object(p).size())
              continue;
            if (!std::includes(F.object(p).begin(), F.object(p).end(),
                               sub.begin(), sub.end()))
              continue;
            std::vector<int> rimg;
            rimg.reserve(sub.size());
            for (int x : sub)
              rimg.push_back(img[F.member_pos(p, x)]);
            changed |= F.add(p2, q, rimg);
          }
        }
      }
    // corestriction onto the image, and the inverse isomorphism
    for (int p = 0; p < F.object_count(); ++p)
      for (int q = 0; q < F.object_count(); ++q) {
        auto homs = F.homset(p, q);
        for (const auto &img : homs) {
          std::vector<int> sorted = img;
          std::sort(sorted.begin(), sorted.end());
          int r = F.object_index(sorted);
          if (r < 0)
            throw Error("fusion: image of a morphism is not a subgroup");
          changed |= F.add(p, r, img);
          std::vector<int> inv(sorted.size());
          for (size_t k = 0; k < img.size(); ++k)
            inv[F.member_pos(r, img[k])] = F.object(p)[k];
          changed |= F.add(r, p, inv);
        }
      }
    // composition
    for (int p = 0; p < F.object_count(); ++p)
      for (int q = 0; q < F.object_count(); ++q) {
        if (F.homset(p, q).empty())
          continue;
        auto first = F.homset(p, q);
        for (int r = 0; r < F.object_count(); ++r) {
          auto second = F.homset(q, r);
          for (const auto &phi : first)
            for (const auto &psi : second) {
              std::vector<int> comp(phi.size());
              for (size_t k = 0; k < phi.size(); ++k)
                comp[k] = psi[F.member_pos(q, phi[k])];
              changed |= F.add(p, r, comp);
            }
        }
      }
  }
}

} // namespace detail

inline FusionSystem inner_fusion(const FiniteGroup &S) {
  FusionSystem F(S);
  detail::add_inner_maps(F);
  return F;
}

struct FusionGenerator {
  std::vector<int> source; // sorted member list of a subgroup of S
  std::vector<int> images; // aligned images defining an injective hom
};

inline FusionSystem generate_fusion(const FiniteGroup &S,
                                    const std::vector<FusionGenerator> &gens) {
  FusionSystem F(S);
  detail::add_inner_maps(F);
  for (const FusionGenerator &g : gens) {
    std::vector<int> src = g.source;
    std::sort(src.begin(), src.end());
    int p = F.object_index(src);
    if (p < 0)
      throw ArgumentError("generate_fusion: generator source is not a subgroup");
    std::vector<int> aligned(src.size());
    for (size_t k = 0; k < g.source.size(); ++k)
      aligned[F.member_pos(p, g.source[k])] = g.images[k];
    GroupHom h{Subgroup{&S, src}, whole_group(S), aligned};
    if (!is_injective_hom(h))
      throw ArgumentError("generate_fusion: generator is not an injective hom");
    std::vector<int> img_sorted = aligned;
    std::sort(img_sorted.begin(), img_sorted.end());
    int q = F.object_index(img_sorted);
    if (q < 0)
      throw Error("generate_fusion: generator image is not a subgroup");
    F.add(p, q, aligned);
  }
  detail::close_fusion(F);
  return F;
}

// F_S(G): all conjugation maps c_g between subgroups of S, for g in G.
inline FusionSystem fusion_of_group(const FiniteGroup &G,
                                    const std::vector<int> &s_members) {
  if (G.size() > max_group_order())
    throw ResourceError("fusion_of_group: group order bound exceeded");
  if (!is_subgroup_members(G, s_members))
    throw ArgumentError("fusion_of_group: S is not a subgroup");
  SubgroupView view = sub_as_group(G, s_members, "S");
  FusionSystem F(view.group);
  for (int g = 0; g < G.size(); ++g)
    for (int p = 0; p < F.object_count(); ++p) {
      std::vector<int> img;
      bool inside = true;
      for (int x : F.object(p)) {
        int y = G.conj(view.parent_of[x], g);
        auto it = view.view_of.find(y);
        if (it == view.view_of.end()) {
          inside = false;
          break;
        }
        img.push_back(it->second);
      }
      if (!inside)
        continue;
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      for (int q = 0; q < F.object_count(); ++q)
        if (std::includes(F.object(q).begin(), F.object(q).end(),
                          sorted.begin(), sorted.end()))
          F.add(p, q, img);
    }
  return F;
}

// Identification of an abstract p-group S with a subgroup of a pregroup.
struct PgFusionContext {
  FiniteGroup s_group;
  std::vector<int> pg_of_s; // S element index -> pregroup element index
};

inline PgFusionContext default_context(const Pregroup &P,
                                       const PgSubgroup &S) {
  PgGroupView v = as_group(P, S, "S");
  return PgFusionContext{v.group, v.pg_of};
}

// F_S(P) for a pregroup P: the fusion system generated by the conjugation
// maps c_g defined on subgroups of S with image inside S.  Conjugation maps
// in a pregroup are automatically homomorphisms.
inline FusionSystem fusion_of_pregroup(const Pregroup &P, const PgSubgroup &S,
                                       const PgFusionContext *ctx = nullptr) {
  PgFusionContext local = ctx ? *ctx : default_context(P, S);
  const FiniteGroup &SG = local.s_group;
  if (!is_subgroup(P, S.members))
    throw ArgumentError("fusion_of_pregroup: S is not a subgroup with full "
                        "internal domain");
  long p = smallest_prime_factor(SG.size());
  if (p > 1 && !is_p_power(SG.size(), p))
    throw ArgumentError("fusion_of_pregroup: S must be a p-group");
  std::vector<int> s_of_pg(P.size(), -1);
  for (int i = 0; i < SG.size(); ++i)
    s_of_pg[local.pg_of_s[i]] = i;

  FusionSystem F(SG);
  detail::add_inner_maps(F);
  for (int g = 0; g < P.size(); ++g) {
    // membership of S elements in the conjugation domain of g
    std::vector<int> conj_of(SG.size(), -1);
    for (int i = 0; i < SG.size(); ++i) {
      int x = local.pg_of_s[i];
      if (in_conj_domain(P, x, g)) {
        int y = conjugate_element(P, x, g);
        conj_of[i] = y;
      }
    }
    for (int ob = 0; ob < F.object_count(); ++ob) {
      std::vector<int> img;
      bool ok = true;
      for (int x : F.object(ob)) {
        int y = conj_of[x];
        if (y < 0 || s_of_pg[y] < 0) {
          ok = false;
          break;
        }
        img.push_back(s_of_pg[y]);
      }
      if (!ok)
        continue;
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      int q = F.object_index(sorted);
      if (q < 0)
        throw Error("fusion_of_pregroup: conjugate failed to be a subgroup");
      F.add(ob, q, img);
    }
  }
  detail::close_fusion(F);
  return F;
}

struct FusionDifference {
  int source = -1, target = -1;
  std::vector<int> morphism;
  int only_in = 0; // 1 or 2
};

inline bool fusion_equal(const FusionSystem &F1, const FusionSystem &F2,
                         FusionDifference *diff = nullptr) {
  if (!F1.same_s(F2))
    throw ArgumentError("fusion_equal: different underlying S");
  for (int p = 0; p < F1.object_count(); ++p)
    for (int q = 0; q < F1.object_count(); ++q) {
      const auto &a = F1.homset(p, q);
      const auto &b = F2.homset(p, q);
      if (a == b)
        continue;
      if (diff) {
        for (const auto &m : a)
          if (!b.count(m)) {
            *diff = FusionDifference{p, q, m, 1};
            return false;
          }
        for (const auto &m : b)
          if (!a.count(m)) {
            *diff = FusionDifference{p, q, m, 2};
            return false;
          }
      }
      return false;
    }
  return true;
}

// --- Sylow subgroups of pregroups ---------------------------------------------

struct SylowStep {
  int conjugator;
  std::vector<int> members;
};

struct SylowChain {
  std::vector<int> start; // the p-subgroup
  std::vector<SylowStep> steps;
};

struct SylowResult {
  bool is_sylow = false;
  std::vector<SylowChain> certificates;
  std::vector<int> counterexample; // a p-subgroup with no chain into S
};

// Decides whether S is a Sylow p-subgroup of P: every p-subgroup must reach
// a subgroup of S by a finite chain of one-element conjugations.
inline SylowResult is_sylow_in_pregroup(const Pregroup &P,
                                        const PgSubgroup &S) {
  if (!is_subgroup(P, S.members))
    throw ArgumentError("is_sylow_in_pregroup: S is not a subgroup");
  long p = smallest_prime_factor(static_cast<long>(S.members.size()));
  if (p > 1 && !is_p_power(static_cast<long>(S.members.size()), p))
    throw ArgumentError("is_sylow_in_pregroup: S is not a p-subgroup");

  std::vector<PgSubgroup> subs = subgroups_of_pregroup(P);
  std::vector<std::vector<int>> psubs;
  for (const PgSubgroup &q : subs)
    if (p <= 1 || is_p_power(static_cast<long>(q.members.size()), p))
      psubs.push_back(q.members);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < psubs.size(); ++i)
    index.emplace(psubs[i], static_cast<int>(i));

  // conjugation edges; the relation is symmetric since c_{g^-1} inverts c_g
  int n = static_cast<int>(psubs.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n); // (gi, target)
  for (int i = 0; i < n; ++i) {
    PgSubgroup q{&P, psubs[i]};
    for (int g = 0; g < P.size(); ++g) {
      bool ok = true;
      for (int x : psubs[i])
        if (!in_conj_domain(P, x, g)) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      std::vector<int> img;
      for (int x : psubs[i])
        img.push_back(conjugate_element(P, x, g));
      std::sort(img.begin(), img.end());
      auto it = index.find(img);
      if (it != index.end())
        adj[i].emplace_back(g, it->second);
    }
  }

  // multi-source BFS from the subgroups already inside S, walking edges
  // backwards (conjugate by g^-1)
  std::vector<int> dist(n, -1), par_node(n, -1), par_g(n, -1);
  std::deque<int> bfs;
  for (int i = 0; i < n; ++i)
    if (std::includes(S.members.begin(), S.members.end(), psubs[i].begin(),
                      psubs[i].end())) {
      dist[i] = 0;
      bfs.push_back(i);
    }
  while (!bfs.empty()) {
    int cur = bfs.front();
    bfs.pop_front();
    for (auto [g, tgt] : adj[cur])
      if (dist[tgt] < 0) {
        dist[tgt] = dist[cur] + 1;
        par_node[tgt] = cur;
        par_g[tgt] = P.inverse(g); // tgt --(g^-1)--> cur
        bfs.push_back(tgt);
      }
  }

  SylowResult res;
  for (int i = 0; i < n; ++i) {
    if (dist[i] < 0) {
      res.is_sylow = false;
      res.counterexample = psubs[i];
      res.certificates.clear();
      return res;
    }
    SylowChain chain;
    chain.start = psubs[i];
    int cur = i;
    while (par_node[cur] >= 0) {
      chain.steps.push_back(SylowStep{par_g[cur], psubs[par_node[cur]]});
      cur = par_node[cur];
    }
    res.certificates.push_back(std::move(chain));
  }
  res.is_sylow = true;
  return res;
}

// --- structural checks (used by the test suites) --------------------------------

struct FusionCheckReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// (F1) and (F2) plus closure under restriction and composition, checked
// directly over all object pairs.
inline FusionCheckReport check_fusion_axioms(const FusionSystem &F) {
  FusionCheckReport rep;
  auto note = [&](const std::string &s) {
    if (rep.problems.size() < 50)
      rep.problems.push_back(s);
  };
  const FiniteGroup &S = F.s();

  // (F1) lower bound: every inner map is present
  FusionSystem inner(S);
  detail::add_inner_maps(inner);
  for (int p = 0; p < F.object_count(); ++p)
    for (int q = 0; q < F.object_count(); ++q)
      for (const auto &m : inner.homset(p, q))
        if (!F.homset(p, q).count(m))
          note("missing inner morphism");

  for (int p = 0; p < F.object_count(); ++p)
    for (int q = 0; q < F.object_count(); ++q)
      for (const auto &img : F.homset(p, q)) {
        // (F1) upper bound: injective homomorphisms into Q
        GroupHom h{Subgroup{&S, F.object(p)}, Subgroup{&S, F.object(q)}, img};
        if (!is_injective_hom(h))
          note("morphism is not an injective homomorphism");
        for (int y : img)
          if (!std::binary_search(F.object(q).begin(), F.object(q).end(), y))
            note("morphism image leaves the target");
        // (F2): iso onto the image followed by an inclusion
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        int r = F.object_index(sorted);
        if (r < 0) {
          note("image is not an object");
          continue;
        }
        if (!F.homset(p, r).count(img))
          note("corestriction missing");
        std::vector<int> inv(sorted.size());
        for (size_t k = 0; k < img.size(); ++k)
          inv[F.member_pos(r, img[k])] = F.object(p)[k];
        if (!F.homset(r, p).count(inv))
          note("inverse of corestricted isomorphism missing");
        std::vector<int> incl(F.object(r));
        if (!F.homset(r, q).count(incl))
          note("inclusion missing");
        // closure under restriction
        for (int p2 = 0; p2 < F.object_count(); ++p2) {
          if (F.object(p2).size() >= F.object(p).size())
            continue;
          if (!std::includes(F.object(p).begin(), F.object(p).end(),
                             F.object(p2).begin(), F.object(p2).end()))
            continue;
          std::vector<int> rimg;
          for (int x : F.object(p2))
            rimg.push_back(img[F.member_pos(p, x)]);
          if (!F.homset(p2, q).count(rimg))
            note("restriction missing");
        }
      }

  // closure under composition
  for (int p = 0; p < F.object_count(); ++p)
    for (int q = 0; q < F.object_count(); ++q)
      for (const auto &phi : F.homset(p, q))
        for (int r = 0; r < F.object_count(); ++r)
          for (const auto &psi : F.homset(q, r)) {
            std::vector<int> comp(phi.size());
            for (size_t k = 0; k < phi.size(); ++k)
              comp[k] = psi[F.member_pos(q, phi[k])];
            if (!F.homset(p, r).count(comp))
              note("composition missing");
          }
  return rep;
}

} // namespace pg
