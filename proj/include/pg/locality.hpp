#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pg/constructions.hpp"
#include "pg/errors.hpp"
#include "pg/group.hpp"
#include "pg/partial.hpp"
#include "pg/pregroup.hpp"

namespace pg {

// A set Delta of subgroups of a designated subgroup S of a pregroup.
struct ObjectSet {
  const Pregroup *parent = nullptr;
  std::vector<std::vector<int>> members_list; // sorted member vectors
  std::vector<int> s_members;

  int index_of(const std::vector<int> &m) const {
    for (size_t i = 0; i < members_list.size(); ++i)
      if (members_list[i] == m)
        return static_cast<int>(i);
    return -1;
  }
};

// Closes a seed list under S-conjugation and overgroups in S; S itself is
// always included.
inline ObjectSet close_objects(const Pregroup &P,
                               const std::vector<std::vector<int>> &seed,
                               const std::vector<int> &s_members) {
  if (!is_subgroup(P, s_members))
    throw ArgumentError("close_objects: S is not a subgroup");
  PgGroupView view = as_group(P, PgSubgroup{&P, s_members}, "S");
  // subgroups of S expressed as pregroup member sets
  std::vector<std::vector<int>> all_subs;
  for (const Subgroup &h : subgroups(view.group)) {
    std::vector<int> m;
    for (int x : h.members)
      m.push_back(view.pg_of[x]);
    std::sort(m.begin(), m.end());
    all_subs.push_back(std::move(m));
  }

  std::set<std::vector<int>> delta;
  delta.insert(s_members);
  std::deque<std::vector<int>> todo;
  for (const auto &m : seed) {
    std::vector<int> s = m;
    std::sort(s.begin(), s.end());
    if (!is_subgroup(P, s))
      throw ArgumentError("close_objects: seed entry is not a subgroup");
    if (!std::includes(s_members.begin(), s_members.end(), s.begin(), s.end()))
      throw ArgumentError("close_objects: seed entry is not contained in S");
    if (delta.insert(s).second)
      todo.push_back(s);
  }
  todo.push_back(s_members);
  while (!todo.empty()) {
    std::vector<int> cur = todo.front();
    todo.pop_front();
    // S-conjugates
    for (int s : s_members) {
      std::vector<int> img;
      for (int x : cur)
        img.push_back(conjugate_element(P, x, s));
      std::sort(img.begin(), img.end());
      if (delta.insert(img).second)
        todo.push_back(std::move(img));
    }
    // overgroups in S
    for (const auto &m : all_subs)
      if (m.size() > cur.size() &&
          std::includes(m.begin(), m.end(), cur.begin(), cur.end()))
        if (delta.insert(m).second)
          todo.push_back(m);
  }

  ObjectSet d;
  d.parent = &P;
  d.s_members = s_members;
  d.members_list.assign(delta.begin(), delta.end());
  std::sort(d.members_list.begin(), d.members_list.end(),
            [](const auto &a, const auto &b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return d;
}

namespace detail {

// per letter g: transition[x] = index of X^g in Delta when X is in the
// conjugation domain of g and the conjugate is again in Delta, else -1
struct DeltaAutomaton {
  std::vector<std::vector<int>> step; // [g][delta index] -> delta index or -1

  explicit DeltaAutomaton(const Pregroup &P, const ObjectSet &delta) {
    int k = static_cast<int>(delta.members_list.size());
    step.assign(P.size(), std::vector<int>(k, -1));
    for (int g = 0; g < P.size(); ++g)
      for (int xi = 0; xi < k; ++xi) {
        const auto &X = delta.members_list[xi];
        bool ok = true;
        std::vector<int> img;
        for (int x : X) {
          if (!in_conj_domain(P, x, g)) {
            ok = false;
            break;
          }
          img.push_back(conjugate_element(P, x, g));
        }
        if (!ok)
          continue;
        std::sort(img.begin(), img.end());
        step[g][xi] = delta.index_of(img);
      }
  }
};

} // namespace detail

// Chain witnessing membership of w in the chained-conjugation domain: a
// sequence X_0,...,X_n in Delta with X_{i-1} inside the conjugation domain
// of g_i and (X_{i-1})^{g_i} = X_i.
inline std::optional<std::vector<int>>
d_delta_member(const Pregroup &P, const ObjectSet &delta, const Word &w) {
  detail::DeltaAutomaton autom(P, delta);
  int k = static_cast<int>(delta.members_list.size());
  if (k == 0)
    return std::nullopt;
  // frontier[i] = set of delta indices reachable as X_i
  std::vector<std::vector<int>> parent(w.size() + 1, std::vector<int>(k, -2));
  for (int x = 0; x < k; ++x)
    parent[0][x] = -1;
  for (size_t i = 0; i < w.size(); ++i) {
    bool any = false;
    for (int x = 0; x < k; ++x) {
      if (parent[i][x] == -2)
        continue;
      int y = autom.step[w[i]][x];
      if (y >= 0 && parent[i + 1][y] == -2) {
        parent[i + 1][y] = x;
        any = true;
      }
    }
    if (!any)
      return std::nullopt;
  }
  int last = -1;
  for (int x = 0; x < k; ++x)
    if (parent[w.size()][x] != -2) {
      last = x;
      break;
    }
  if (last < 0)
    return std::nullopt;
  std::vector<int> chain(w.size() + 1);
  chain[w.size()] = last;
  for (size_t i = w.size(); i-- > 0;)
    chain[i] = parent[i + 1][chain[i + 1]];
  return chain;
}

struct ObjectivityReport {
  bool oa_holds = true;
  std::vector<Word> missing_in_delta; // in the word domain, not in D_Delta
  std::vector<Word> extra_in_delta;   // in D_Delta, not in the word domain
  bool ob_holds = true;
  std::vector<std::string> ob_violations;
  long words_checked = 0;

  bool ok() const { return oa_holds && ob_holds; }
};

// (Oa) is scanned for all words of length <= maxlen in either domain; (Ob)
// is checked exactly.
inline ObjectivityReport check_objectivity(const Pregroup &P,
                                           const ObjectSet &delta,
                                           int maxlen) {
  if (maxlen < 3)
    throw ArgumentError("check_objectivity: maxlen must be >= 3");
  ObjectivityReport rep;
  detail::DeltaAutomaton autom(P, delta);
  int k = static_cast<int>(delta.members_list.size());

  // joint DFS over all words alive in at least one of the two domains
  Word w;
  std::vector<int> suffix;    // suffix products; empty marker via alive flag
  std::vector<char> frontier(k, 1);
  std::function<void(bool, std::vector<char>)> rec =
      [&](bool in_dp, std::vector<char> fr) {
        bool in_delta = std::any_of(fr.begin(), fr.end(),
                                    [](char c) { return c != 0; });
        if (!w.empty()) {
          ++rep.words_checked;
          if (in_dp && !in_delta) {
            rep.oa_holds = false;
            if (rep.missing_in_delta.size() < 20)
              rep.missing_in_delta.push_back(w);
          }
          if (!in_dp && in_delta) {
            rep.oa_holds = false;
            if (rep.extra_in_delta.size() < 20)
              rep.extra_in_delta.push_back(w);
          }
        }
        if (static_cast<int>(w.size()) == maxlen)
          return;
        for (int x = 0; x < P.size(); ++x) {
          // extend the interval products
          bool next_dp = in_dp;
          std::vector<int> ns;
          if (in_dp) {
            ns.resize(suffix.size() + 1);
            for (size_t i = 0; i < suffix.size() && next_dp; ++i) {
              int z = P.product(suffix[i], x);
              if (z < 0)
                next_dp = false;
              else
                ns[i] = z;
            }
            if (next_dp)
              ns[suffix.size()] = x;
          }
          // extend the chain frontier
          std::vector<char> nf(k, 0);
          bool next_delta = false;
          for (int xi = 0; xi < k; ++xi) {
            if (!fr[xi])
              continue;
            int y = autom.step[x][xi];
            if (y >= 0) {
              nf[y] = 1;
              next_delta = true;
            }
          }
          if (!next_dp && !next_delta)
            continue;
          w.push_back(x);
          std::vector<int> save;
          if (next_dp) {
            save = std::move(suffix);
            suffix = std::move(ns);
          }
          rec(next_dp, std::move(nf));
          if (next_dp)
            suffix = std::move(save);
          w.pop_back();
        }
      };
  rec(true, frontier);
  auto by_length = [](const Word &a, const Word &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::sort(rep.missing_in_delta.begin(), rep.missing_in_delta.end(),
            by_length);
  std::sort(rep.extra_in_delta.begin(), rep.extra_in_delta.end(), by_length);

  // (Ob): whenever X^g is a subgroup of Y in Delta, every intermediate
  // subgroup is in Delta
  PgGroupView sview = as_group(P, PgSubgroup{&P, delta.s_members}, "S");
  std::vector<std::vector<int>> s_subgroups;
  for (const Subgroup &h : subgroups(sview.group)) {
    std::vector<int> m;
    for (int x : h.members)
      m.push_back(sview.pg_of[x]);
    std::sort(m.begin(), m.end());
    s_subgroups.push_back(std::move(m));
  }
  std::set<std::vector<int>> delta_set(delta.members_list.begin(),
                                       delta.members_list.end());
  for (int xi = 0; xi < k; ++xi)
    for (int g = 0; g < P.size(); ++g) {
      int yi = autom.step[g][xi];
      if (yi < 0) {
        // the conjugate may be a subgroup outside Delta; (Ob) still applies
        const auto &X = delta.members_list[xi];
        bool ok = true;
        std::vector<int> img;
        for (int x : X) {
          if (!in_conj_domain(P, x, g)) {
            ok = false;
            break;
          }
          img.push_back(conjugate_element(P, x, g));
        }
        if (!ok)
          continue;
        std::sort(img.begin(), img.end());
        for (const auto &Y : delta.members_list) {
          if (!std::includes(Y.begin(), Y.end(), img.begin(), img.end()))
            continue;
          for (const auto &Z : s_subgroups)
            if (std::includes(Z.begin(), Z.end(), img.begin(), img.end()) &&
                std::includes(Y.begin(), Y.end(), Z.begin(), Z.end()) &&
                !delta_set.count(Z)) {
              rep.ob_holds = false;
              if (rep.ob_violations.size() < 20)
                rep.ob_violations.push_back(
                    "subgroup between a conjugate and an object is missing "
                    "from Delta");
            }
        }
      } else {
        const auto &img = delta.members_list[yi];
        for (const auto &Y : delta.members_list) {
          if (!std::includes(Y.begin(), Y.end(), img.begin(), img.end()))
            continue;
          for (const auto &Z : s_subgroups)
            if (std::includes(Z.begin(), Z.end(), img.begin(), img.end()) &&
                std::includes(Y.begin(), Y.end(), Z.begin(), Z.end()) &&
                !delta_set.count(Z)) {
              rep.ob_holds = false;
              if (rep.ob_violations.size() < 20)
                rep.ob_violations.push_back(
                    "subgroup between " + word_str(P, img) + " and an object "
                    "is missing from Delta");
            }
        }
      }
    }
  return rep;
}

struct LocalityReport {
  ObjectivityReport objectivity;
  bool s_in_delta = false;
  bool s_maximal = false;
  std::vector<int> larger_p_subgroup;
  bool exhaustive = false; // the (Oa) scan provably covers all lengths
  int verified_length = 0;
  std::vector<std::string> notes;

  bool is_locality() const {
    return objectivity.ok() && s_in_delta && s_maximal;
  }
};

// Locality check: objectivity, S in Delta, and maximality of S among the
// p-subgroups of P.  The (Oa) scan is length-bounded; when the domain is
// total and some object is fixed by every conjugation the scan is complete,
// and the report says so.
inline LocalityReport check_locality(const Pregroup &P, const ObjectSet &delta,
                                     const PgSubgroup &S, int maxlen) {
  LocalityReport rep;
  rep.verified_length = maxlen;
  rep.s_in_delta = delta.index_of(S.members) >= 0;
  rep.objectivity = check_objectivity(P, delta, maxlen);

  long p = smallest_prime_factor(static_cast<long>(S.members.size()));
  rep.s_maximal = true;
  for (const PgSubgroup &q : subgroups_of_pregroup(P)) {
    if (p > 1 && !is_p_power(static_cast<long>(q.members.size()), p))
      continue;
    if (q.members.size() > S.members.size() &&
        std::includes(q.members.begin(), q.members.end(), S.members.begin(),
                      S.members.end())) {
      rep.s_maximal = false;
      rep.larger_p_subgroup = q.members;
      break;
    }
  }

  // When the domain is total, a nonempty set of objects closed under every
  // single conjugation certifies a chain for every word, so the bounded
  // scan is in fact complete.
  if (P.full_domain()) {
    detail::DeltaAutomaton autom(P, delta);
    int k = static_cast<int>(delta.members_list.size());
    std::vector<char> live(k, 1);
    bool pruned = true;
    while (pruned) {
      pruned = false;
      for (int xi = 0; xi < k; ++xi) {
        if (!live[xi])
          continue;
        for (int g = 0; g < P.size(); ++g) {
          int y = autom.step[g][xi];
          if (y < 0 || !live[y]) {
            live[xi] = 0;
            pruned = true;
            break;
          }
        }
      }
    }
    for (int xi = 0; xi < k; ++xi)
      if (live[xi]) {
        rep.exhaustive = true;
        rep.notes.push_back(
            "domain is total and the objects contain a nonempty family "
            "closed under all conjugations; the scan is exhaustive");
        break;
      }
  }
  return rep;
}

// --- the Leary-Stancu obstruction ---------------------------------------------

struct LsObstruction {
  int obstruction_class; // 1: equal P_i/P_j, 2: P_i = Q_i, 3: P_i < S
  Word word;
  bool in_delta_domain = false;
  bool in_word_domain = true; // must come out false
  ObjectSet delta;

  bool verified() const { return in_delta_domain && !in_word_domain; }
};

// Produces a word in D_Delta \ D_P for the minimal admissible Delta,
// certifying that the construction never carries a locality structure.
inline LsObstruction ls_locality_obstruction(const BuiltLs &b) {
  const Pregroup &P = b.pg;
  const FiniteGroup &S = b.data.S;
  int r = static_cast<int>(b.data.gens.size());
  if (r == 0)
    throw ArgumentError("ls_locality_obstruction: no stable letters");

  std::vector<int> s_members(S.size());
  for (int i = 0; i < S.size(); ++i)
    s_members[i] = i;
  std::vector<std::vector<int>> seed;
  for (const LsGenerator &g : b.data.gens) {
    seed.push_back(g.p_members);
    seed.push_back(g.q_members);
  }
  LsObstruction out;
  out.delta = close_objects(P, seed, s_members);

  // transversals contain the identity, but not necessarily at position 0
  auto pos_of_identity = [&](const RightCosets &rc) {
    for (size_t p = 0; p < rc.reps.size(); ++p)
      if (rc.reps[p] == S.identity())
        return static_cast<int>(p);
    throw Error("transversal lost the identity");
  };

  out.word.clear();
  out.obstruction_class = 0;
  for (int i = 0; i < r && out.obstruction_class == 0; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j)
        continue;
      if (b.data.gens[i].p_members == b.data.gens[j].p_members) {
        out.obstruction_class = 1;
        out.word = {b.tinv_carrier(i, S.identity(),
                                   pos_of_identity(b.b_cosets[i])),
                    b.t_carrier(j, S.identity(),
                                pos_of_identity(b.a_cosets[j]))};
        break;
      }
    }
  // a proper P_i always admits s in N_S(P_i) \ P_i (normalisers grow in
  // p-groups); P_i = S for every i forces Q_i = S = P_i and the (t_i,t_i)
  // obstruction
  if (out.obstruction_class == 0)
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(b.data.gens[i].p_members.size()) == S.size())
        continue;
      const auto &pm = b.data.gens[i].p_members;
      for (int s = 0; s < S.size(); ++s) {
        if (std::binary_search(pm.begin(), pm.end(), s))
          continue;
        std::vector<int> conj;
        for (int x : pm)
          conj.push_back(S.conj(x, s));
        std::sort(conj.begin(), conj.end());
        if (conj == pm) {
          out.obstruction_class = 3;
          out.word = {b.tinv_carrier(i, S.identity(),
                                     pos_of_identity(b.b_cosets[i])),
                      s,
                      b.t_carrier(i, S.identity(),
                                  pos_of_identity(b.a_cosets[i]))};
          break;
        }
      }
      if (out.obstruction_class != 0)
        break;
    }
  if (out.obstruction_class == 0)
    for (int i = 0; i < r; ++i)
      if (b.data.gens[i].p_members == b.data.gens[i].q_members) {
        out.obstruction_class = 2;
        int t = b.t_carrier(i, S.identity(), pos_of_identity(b.a_cosets[i]));
        out.word = {t, t};
        break;
      }
  if (out.obstruction_class == 0)
    throw Error("ls_locality_obstruction: no obstruction class applies");

  out.in_delta_domain = d_delta_member(P, out.delta, out.word).has_value();
  out.in_word_domain = PartialView(P).in_domain(out.word);
  if (!out.verified())
    throw Error("ls obstruction word failed verification");
  return out;
}

// --- the Delta candidate for the Robinson construction --------------------------

struct RobinsonCondition {
  int factor;
  std::string what;
  bool holds = true;
  Word witness;
  bool witness_verified = false;
};

struct RobinsonDeltaResult {
  ObjectSet delta;
  LocalityReport report;
  std::vector<RobinsonCondition> conditions;
};

// Builds Delta from the p-cores of the factors (S-conjugates and overgroups
// included), checks the stated necessary conditions, and runs the locality
// check.
inline RobinsonDeltaResult robinson_delta_candidate(const BuiltRobinson &b,
                                                    int maxlen = 4) {
  const Pregroup &P = b.pg;
  const FiniteGroup &S = b.data.S;
  long p = smallest_prime_factor(S.size());

  std::vector<int> s_members(S.size());
  for (int i = 0; i < S.size(); ++i)
    s_members[i] = i;

  RobinsonDeltaResult out;
  std::vector<std::vector<int>> seed;
  std::vector<std::vector<int>> cores; // pulled back to S
  for (size_t i = 0; i < b.data.factors.size(); ++i) {
    const RobinsonFactor &f = b.data.factors[i];
    std::vector<int> core;
    if (p > 1) {
      Subgroup c = p_core(f.G, p);
      for (int x : c.members) {
        int s = b.tables[i].f_inv[x];
        if (s < 0)
          throw Error("p-core escaped the Sylow subgroup");
        core.push_back(s);
      }
    } else {
      core.push_back(S.identity());
    }
    std::sort(core.begin(), core.end());
    cores.push_back(core);
    seed.push_back(core);
  }
  out.delta = close_objects(P, seed, s_members);

  // necessary condition: N_S(core_i) = S_i
  for (size_t i = 0; i < b.data.factors.size(); ++i) {
    const auto &si = b.data.factors[i].s_members;
    Subgroup core{&S, cores[i]};
    Subgroup ns = normalizer(S, core);
    RobinsonCondition cond;
    cond.factor = static_cast<int>(i);
    cond.what = "N_S(core) = S_i";
    if (ns.members != si) {
      cond.holds = false;
      // witness (g, s, g) with s in N_S(core) \ S_i
      for (int s : ns.members)
        if (!std::binary_search(si.begin(), si.end(), s)) {
          if (!b.tables[i].h_reps.empty()) {
            int g = b.carrier(static_cast<int>(i), 0, 0, S.identity());
            cond.witness = {g, s, g};
            bool in_delta =
                d_delta_member(P, out.delta, cond.witness).has_value();
            bool in_dp = PartialView(P).in_domain(cond.witness);
            cond.witness_verified = in_delta && !in_dp;
          }
          break;
        }
    }
    out.conditions.push_back(std::move(cond));
  }

  // necessary condition: N_S(R) <= S_i for core_i <= R <= T_{i,g}
  for (size_t i = 0; i < b.data.factors.size(); ++i) {
    const auto &si = b.data.factors[i].s_members;
    for (size_t gp = 0; gp < b.tables[i].h_reps.size(); ++gp) {
      const auto &t = b.tables[i].t_members[gp];
      SubgroupView tv = sub_as_group(S, t, "T");
      for (const Subgroup &h : subgroups(tv.group)) {
        std::vector<int> rmem;
        for (int x : h.members)
          rmem.push_back(tv.parent_of[x]);
        std::sort(rmem.begin(), rmem.end());
        if (!std::includes(rmem.begin(), rmem.end(), cores[i].begin(),
                           cores[i].end()))
          continue;
        Subgroup rsub{&S, rmem};
        Subgroup ns = normalizer(S, rsub);
        if (std::includes(si.begin(), si.end(), ns.members.begin(),
                          ns.members.end()))
          continue;
        RobinsonCondition cond;
        cond.factor = static_cast<int>(i);
        cond.what = "N_S(R) <= S_i for core <= R <= T_{i,g}";
        cond.holds = false;
        for (int s : ns.members)
          if (!std::binary_search(si.begin(), si.end(), s)) {
            int g = b.carrier(static_cast<int>(i), static_cast<int>(gp), 0,
                              S.identity());
            cond.witness = {P.inverse(g), s, g};
            bool in_delta =
                d_delta_member(P, out.delta, cond.witness).has_value();
            bool in_dp = PartialView(P).in_domain(cond.witness);
            cond.witness_verified = in_delta && !in_dp;
            break;
          }
        out.conditions.push_back(std::move(cond));
      }
    }
  }

  out.report =
      check_locality(P, out.delta, PgSubgroup{&P, s_members}, maxlen);
  return out;
}

} // namespace pg
