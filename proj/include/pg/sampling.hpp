#pragma once

#include <optional>
#include <random>
#include <vector>

#include "pg/constructions.hpp"
#include "pg/instances.hpp"
#include "pg/pregroup.hpp"

namespace pg {
namespace sampling {

using Rng = std::mt19937;

inline int pick(Rng &rng, int n) {
  return static_cast<int>(rng() % static_cast<unsigned>(n));
}

// --- injective homomorphism search ------------------------------------------

// All injective homomorphisms from A into the subgroup `target` of H,
// returned as image vectors aligned with A's element indices.  Backtracking
// on the least unassigned element with order-preservation pruning and
// multiplicative closure after each assignment.
inline std::vector<std::vector<int>>
injective_homs(const FiniteGroup &A, const FiniteGroup &H,
               const std::vector<int> &target, size_t limit = 10000) {
  std::vector<std::vector<int>> found;
  std::vector<int> img(A.size(), -1);
  img[0] = H.identity();

  std::function<bool(std::vector<int> &)> close = [&](std::vector<int> &m) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < A.size(); ++a) {
        if (m[a] < 0)
          continue;
        for (int b = 0; b < A.size(); ++b) {
          if (m[b] < 0)
            continue;
          int c = A.mult(a, b);
          int t = H.mult(m[a], m[b]);
          if (m[c] < 0) {
            m[c] = t;
            changed = true;
          } else if (m[c] != t) {
            return false;
          }
        }
      }
    }
    return true;
  };

  std::function<void()> rec = [&]() {
    if (found.size() >= limit)
      return;
    int x = -1;
    for (int a = 0; a < A.size(); ++a)
      if (img[a] < 0) {
        x = a;
        break;
      }
    if (x < 0) {
      std::vector<int> seen = img;
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) == seen.end())
        found.push_back(img);
      return;
    }
    int ox = A.element_order(x);
    for (int t : target) {
      if (H.element_order(t) != ox)
        continue;
      std::vector<int> save = img;
      img[x] = t;
      if (close(img))
        rec();
      img = std::move(save);
    }
  };
  rec();
  return found;
}

// --- group zoos --------------------------------------------------------------

inline std::vector<FiniteGroup> p_group_zoo() {
  using namespace instances;
  std::vector<FiniteGroup> zoo;
  zoo.push_back(cyclic_group(2));
  zoo.push_back(cyclic_group(3));
  zoo.push_back(cyclic_group(4));
  zoo.push_back(cyclic_group(8));
  zoo.push_back(cyclic_group(9));
  zoo.push_back(cyclic_group(16));
  zoo.push_back(klein_four());
  zoo.push_back(direct_product(cyclic_group(2, "x"), cyclic_group(4, "y")));
  zoo.push_back(direct_product(cyclic_group(3, "x"), cyclic_group(3, "y")));
  zoo.push_back(dihedral_group(4));
  zoo.push_back(dihedral_group(8));
  return zoo;
}

inline std::vector<FiniteGroup> small_group_zoo() {
  using namespace instances;
  std::vector<FiniteGroup> zoo = p_group_zoo();
  zoo.push_back(symmetric_group(3));
  zoo.push_back(symmetric_group(4));
  zoo.push_back(dihedral_group(6));
  zoo.push_back(cyclic_group(6));
  zoo.push_back(cyclic_group(12));
  zoo.push_back(direct_product(cyclic_group(2, "x"), symmetric_group(3)));
  return zoo;
}

// --- randomized instances ------------------------------------------------------

inline AmalgamData random_amalgam(Rng &rng) {
  std::vector<FiniteGroup> zoo = small_group_zoo();
  for (int attempt = 0; attempt < 100; ++attempt) {
    AmalgamData d;
    d.A = zoo[pick(rng, static_cast<int>(zoo.size()))];
    d.B = zoo[pick(rng, static_cast<int>(zoo.size()))];
    std::vector<Subgroup> subs = subgroups(d.A);
    const Subgroup &c0 = subs[pick(rng, static_cast<int>(subs.size()))];
    SubgroupView cv = sub_as_group(d.A, c0.members, "C");
    std::vector<int> whole_b(d.B.size());
    for (int i = 0; i < d.B.size(); ++i)
      whole_b[i] = i;
    auto homs = injective_homs(cv.group, d.B, whole_b, 500);
    if (homs.empty())
      continue;
    d.C = cv.group;
    d.phi_a.resize(cv.group.size());
    for (int c = 0; c < cv.group.size(); ++c)
      d.phi_a[c] = cv.parent_of[c];
    d.phi_b = homs[pick(rng, static_cast<int>(homs.size()))];
    return d;
  }
  throw Error("random_amalgam: no instance found");
}

inline LSData random_ls(Rng &rng, int max_letters = 2) {
  std::vector<FiniteGroup> zoo = p_group_zoo();
  LSData d;
  d.S = zoo[pick(rng, static_cast<int>(zoo.size()))];
  int r = 1 + pick(rng, max_letters);
  std::vector<Subgroup> subs = subgroups(d.S);
  std::vector<int> whole(d.S.size());
  for (int i = 0; i < d.S.size(); ++i)
    whole[i] = i;
  for (int k = 0; k < r; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100)
        throw Error("random_ls: no generator found");
      const Subgroup &p0 = subs[pick(rng, static_cast<int>(subs.size()))];
      SubgroupView pv = sub_as_group(d.S, p0.members, "P");
      auto homs = injective_homs(pv.group, d.S, whole, 500);
      if (homs.empty())
        continue;
      const auto &hom = homs[pick(rng, static_cast<int>(homs.size()))];
      LsGenerator gen;
      gen.p_members = p0.members;
      gen.phi.resize(p0.members.size());
      for (int x = 0; x < pv.group.size(); ++x) {
        auto it = std::lower_bound(p0.members.begin(), p0.members.end(),
                                   pv.parent_of[x]);
        gen.phi[it - p0.members.begin()] = hom[x];
      }
      gen.q_members = gen.phi;
      std::sort(gen.q_members.begin(), gen.q_members.end());
      d.gens.push_back(std::move(gen));
      break;
    }
  }
  return d;
}

// replaces the canonical transversals by random ones (the identity stays,
// being the representative of the subgroup itself)
inline void randomize_ls_transversals(LSData &d, Rng &rng) {
  d.a_reps.clear();
  d.b_reps.clear();
  auto randomize = [&](const std::vector<int> &H) {
    RightCosets canonical = right_cosets(d.S, H);
    std::vector<int> reps;
    for (int rep : canonical.reps) {
      std::vector<int> coset;
      for (int h : H)
        coset.push_back(d.S.mult(h, rep));
      std::sort(coset.begin(), coset.end());
      if (std::binary_search(coset.begin(), coset.end(), d.S.identity()))
        reps.push_back(d.S.identity());
      else
        reps.push_back(coset[pick(rng, static_cast<int>(coset.size()))]);
    }
    return reps;
  };
  for (const LsGenerator &g : d.gens) {
    d.a_reps.push_back(randomize(g.q_members));
    d.b_reps.push_back(randomize(g.p_members));
  }
}

inline RobinsonData random_robinson(Rng &rng, int max_factors = 2) {
  std::vector<FiniteGroup> zoo = small_group_zoo();
  for (int attempt = 0; attempt < 200; ++attempt) {
    long p = (rng() % 2 == 0) ? 2 : 3;
    const FiniteGroup &g1 = zoo[pick(rng, static_cast<int>(zoo.size()))];
    if (g1.size() % p != 0)
      continue;
    Subgroup syl1 = sylow_subgroup(g1, p);
    RobinsonData d;
    SubgroupView sv = sub_as_group(g1, syl1.members, "S");
    d.S = sv.group;
    RobinsonFactor f1;
    f1.G = g1;
    f1.s_members.resize(d.S.size());
    f1.f_images.resize(d.S.size());
    for (int i = 0; i < d.S.size(); ++i) {
      f1.s_members[i] = i;
      f1.f_images[i] = sv.parent_of[i];
    }
    d.factors.push_back(std::move(f1));
    int extra = pick(rng, max_factors);
    bool ok = true;
    for (int k = 0; k < extra && ok; ++k) {
      ok = false;
      for (int tries = 0; tries < 30; ++tries) {
        const FiniteGroup &g2 = zoo[pick(rng, static_cast<int>(zoo.size()))];
        if (g2.size() % p != 0 || g2.size() == 1)
          continue;
        Subgroup syl2 = sylow_subgroup(g2, p);
        // need a subgroup of S isomorphic to syl2
        std::vector<Subgroup> subs = subgroups(d.S);
        std::vector<const Subgroup *> cands;
        for (const Subgroup &h : subs)
          if (h.order() == syl2.order())
            cands.push_back(&h);
        std::shuffle(cands.begin(), cands.end(), rng);
        for (const Subgroup *h : cands) {
          SubgroupView hv = sub_as_group(d.S, h->members, "S_i");
          auto homs = injective_homs(hv.group, g2, syl2.members, 200);
          if (homs.empty())
            continue;
          const auto &hom = homs[pick(rng, static_cast<int>(homs.size()))];
          RobinsonFactor f;
          f.G = g2;
          f.s_members = h->members;
          f.f_images.resize(h->members.size());
          for (int x = 0; x < hv.group.size(); ++x) {
            auto it = std::lower_bound(h->members.begin(), h->members.end(),
                                       hv.parent_of[x]);
            f.f_images[it - h->members.begin()] = hom[x];
          }
          d.factors.push_back(std::move(f));
          ok = true;
          break;
        }
        if (ok)
          break;
      }
    }
    if (!ok)
      continue;
    return d;
  }
  throw Error("random_robinson: no instance found");
}

// --- table mutations -----------------------------------------------------------

struct MutationStats {
  long tried = 0;
  long detected = 0;
  double rate() const { return tried ? double(detected) / tried : 1.0; }
};

// Applies single-entry mutations (deletion, or a changed product value) to a
// valid table and counts how many the validator flags.
inline MutationStats mutation_sweep(const Pregroup &P, Rng &rng,
                                    long max_mutations = 200) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.right_of(x))
      pairs.emplace_back(x, y);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  MutationStats st;
  for (auto [x, y] : pairs) {
    if (st.tried >= max_mutations)
      break;
    Pregroup del = P.with_product_removed(x, y);
    ++st.tried;
    if (!validate_pregroup(del).ok())
      ++st.detected;
    if (st.tried >= max_mutations)
      break;
    int z = P.product(x, y);
    int z2 = pick(rng, P.size());
    if (z2 == z)
      z2 = (z2 + 1) % P.size();
    Pregroup chg = P.with_product_set(x, y, z2);
    ++st.tried;
    if (!validate_pregroup(chg).ok())
      ++st.detected;
  }
  return st;
}

} // namespace sampling
} // namespace pg
