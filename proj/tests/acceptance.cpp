// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances and thresholds are pinned in code.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pg/fusion.hpp"
#include "pg/instances.hpp"
#include "pg/locality.hpp"
#include "pg/realize.hpp"
#include "pg/sampling.hpp"
#include "pg/smith.hpp"
#include "pg/words.hpp"

using namespace pg;
using namespace pg::instances;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

#define EXPECT(cond, msg)                                                      \
  do {                                                                         \
    if (!(cond))                                                               \
      return Outcome{false, std::string("failed: ") + (msg)};                  \
  } while (0)

long ls_expected_size(const LSData &d) {
  long n = d.S.size();
  for (const LsGenerator &g : d.gens)
    n += static_cast<long>(d.S.size()) *
         (d.S.size() / g.q_members.size() + d.S.size() / g.p_members.size());
  return n;
}

// ----- criterion 1: axiom suite ------------------------------------------------

Outcome axiom_suite() {
  auto t0 = Clock::now();
  sampling::Rng rng(20240501);
  std::vector<Pregroup> built;

  int amalgams = 0, lss = 0, robinsons = 0;
  while (amalgams < 10) {
    AmalgamData d = sampling::random_amalgam(rng);
    if (d.A.size() + d.B.size() - d.C.size() > 400)
      continue;
    BuiltAmalgam b = amalgam_pregroup(d);
    EXPECT(validate_pregroup(b.pg).ok(), "random amalgam violated an axiom");
    built.push_back(b.pg);
    ++amalgams;
  }
  while (lss < 10) {
    LSData d = sampling::random_ls(rng);
    if (ls_expected_size(d) > 400)
      continue;
    if (lss % 2 == 1)
      sampling::randomize_ls_transversals(d, rng);
    BuiltLs b = leary_stancu_pregroup(d);
    EXPECT(validate_pregroup(b.pg).ok(),
           "random Leary-Stancu instance violated an axiom");
    built.push_back(b.pg);
    ++lss;
  }
  while (robinsons < 10) {
    RobinsonData d = sampling::random_robinson(rng);
    BuiltRobinson b = robinson_pregroup(d);
    if (b.pg.size() > 400)
      continue;
    EXPECT(validate_pregroup(b.pg).ok(),
           "random Robinson instance violated an axiom");
    built.push_back(b.pg);
    ++robinsons;
  }

  long tried = 0, detected = 0;
  for (const Pregroup &P : built) {
    long budget = P.size() <= 100 ? 40 : 6;
    sampling::MutationStats st = sampling::mutation_sweep(P, rng, budget);
    tried += st.tried;
    detected += st.detected;
  }
  double rate = tried ? double(detected) / tried : 0.0;
  double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << built.size() << " instances valid; mutation detection "
     << detected << "/" << tried << " = " << rate << "; " << elapsed << "s";
  EXPECT(rate >= 0.95, "mutation detection rate below 95%: " + os.str());
  EXPECT(elapsed <= 60.0, "over the 60s budget: " + os.str());
  return Outcome{true, os.str()};
}

// ----- criterion 2: word-problem cross-validation ------------------------------

// verdict oracle interface shared by the two normal-form engines
struct ValueOracle {
  std::function<std::string(const Word &)> key;
};

Outcome cross_validate_instance(const Pregroup &P, const ValueOracle &oracle,
                                std::mt19937 &rng, std::ostringstream &os) {
  // enumerate all words of length <= 3
  std::vector<Word> words;
  words.push_back({});
  for (int len = 1; len <= 3; ++len) {
    size_t begin = 0, end = words.size();
    for (size_t i = begin; i < end; ++i)
      if (static_cast<int>(words[i].size()) == len - 1)
        for (int x = 0; x < P.size(); ++x) {
          Word w = words[i];
          w.push_back(x);
          words.push_back(std::move(w));
        }
  }

  // value buckets from the oracle, and reduction classes from the toolkit
  std::map<std::string, int> bucket_ids;
  std::map<Word, int> reduced_ids;
  std::vector<Word> reduced_reps;
  std::vector<int> bucket_of_word(words.size());
  std::vector<int> class_of_word(words.size());
  std::vector<int> bucket_of_class;
  for (size_t i = 0; i < words.size(); ++i) {
    std::string k = oracle.key(words[i]);
    auto [it, fresh] = bucket_ids.try_emplace(k, bucket_ids.size());
    bucket_of_word[i] = it->second;
    Word red = reduce(P, words[i]).first;
    auto [jt, fresh2] = reduced_ids.try_emplace(red, reduced_ids.size());
    if (fresh2) {
      reduced_reps.push_back(red);
      bucket_of_class.push_back(bucket_of_word[i]);
    }
    class_of_word[i] = jt->second;
    // reduction preserves the universal-group value
    if (oracle.key(red) != k)
      return Outcome{false, "reduction changed the oracle value"};
    if (bucket_of_class[class_of_word[i]] != bucket_of_word[i])
      return Outcome{false, "reduction class straddles oracle buckets"};
  }

  // every ordered pair of reduction classes is decided by
  // equal_in_universal and compared against the oracle; this covers every
  // pair of words, because both verdicts only depend on the reduced words
  long pair_checks = 0;
  size_t k = reduced_reps.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      bool impl = equal_in_universal(P, reduced_reps[i], reduced_reps[j])
                      .equal();
      bool orac = bucket_of_class[i] == bucket_of_class[j];
      ++pair_checks;
      if (impl != orac)
        return Outcome{false,
                       "disagreement on (" + word_str(P, reduced_reps[i]) +
                           ") vs (" + word_str(P, reduced_reps[j]) + ")"};
    }

  // 1000 random pairs of length <= 8, straight through the public entry
  for (int trial = 0; trial < 1000; ++trial) {
    Word w1(rng() % 9), w2(rng() % 9);
    for (int &x : w1)
      x = static_cast<int>(rng() % P.size());
    for (int &x : w2)
      x = static_cast<int>(rng() % P.size());
    bool impl = equal_in_universal(P, w1, w2).equal();
    bool orac = oracle.key(w1) == oracle.key(w2);
    if (impl != orac)
      return Outcome{false, "random-pair disagreement"};
  }

  os << words.size() << " words / " << k << " classes / " << pair_checks
     << " class pairs; ";
  return Outcome{true, ""};
}

Outcome word_problem() {
  std::mt19937 rng(77);
  std::ostringstream os;

  {
    AmalgamData d = amalgam_c4_c4_over_c2();
    BuiltAmalgam b = amalgam_pregroup(d);
    AmalgamOracle oracle(d);
    ValueOracle vo{[&](const Word &w) {
      AmalgamNF nf = oracle.normal_form(amalgam_letters(b, w));
      std::string s = std::to_string(nf.c);
      for (const AmalgamLetter &l : nf.reps)
        s += "|" + std::to_string(l.factor) + ":" + std::to_string(l.elem);
      return s;
    }};
    Outcome o = cross_validate_instance(b.pg, vo, rng, os);
    if (!o.pass)
      return Outcome{false, "amalgam C4*C4/C2: " + o.detail};
  }

  for (const LSData &d : {ls_c3_inversion(), ls_c4_center()}) {
    BuiltLs b = leary_stancu_pregroup(d);
    HnnOracle oracle(hnn_tower_of(d));
    ValueOracle vo{[&](const Word &w) {
      HnnNF nf = oracle.normal_form(hnn_letters(b, w));
      std::string s = std::to_string(nf.head);
      for (const HnnSyllable &syl : nf.tail)
        s += "|" + std::to_string(syl.t) + "^" + std::to_string(syl.eps) +
             ":" + std::to_string(syl.rep);
      return s;
    }};
    Outcome o = cross_validate_instance(b.pg, vo, rng, os);
    if (!o.pass)
      return Outcome{false, "Leary-Stancu instance: " + o.detail};
  }

  // equal-length theorem under random relator rewrites
  long rewrite_pairs = 0;
  for (const Pregroup &P :
       {amalgam_pregroup(amalgam_c4_c4_over_c2()).pg,
        leary_stancu_pregroup(ls_c3_inversion()).pg,
        leary_stancu_pregroup(ls_c4_center()).pg}) {
    auto fibers = product_fibers(P);
    for (int trial = 0; trial < 334; ++trial) {
      Word seed(1 + rng() % 5);
      for (int &x : seed)
        x = static_cast<int>(rng() % P.size());
      auto mutate = [&](Word w) {
        for (int step = 0; step < 4; ++step) {
          int move = static_cast<int>(rng() % 3);
          if (move == 0 && w.size() >= 2) {
            std::vector<int> sites;
            for (size_t i = 0; i + 1 < w.size(); ++i)
              if (P.in_domain(w[i], w[i + 1]))
                sites.push_back(static_cast<int>(i));
            if (!sites.empty()) {
              int i = sites[rng() % sites.size()];
              w[i] = P.product(w[i], w[i + 1]);
              w.erase(w.begin() + i + 1);
              continue;
            }
          }
          if (move == 1) {
            size_t i = rng() % w.size();
            const auto &fib = fibers[w[i]];
            if (!fib.empty()) {
              auto [x, y] = fib[rng() % fib.size()];
              w[i] = x;
              w.insert(w.begin() + i + 1, y);
              continue;
            }
          }
          size_t i = rng() % (w.size() + 1);
          int x = static_cast<int>(rng() % P.size());
          w.insert(w.begin() + i, P.inverse(x));
          w.insert(w.begin() + i, x);
        }
        return w;
      };
      Word w1 = mutate(seed), w2 = mutate(seed);
      ++rewrite_pairs;
      if (reduce(P, w1).first.size() != reduce(P, w2).first.size())
        return Outcome{false, "equal-length theorem violated"};
    }
  }
  os << rewrite_pairs << " rewrite pairs";
  return Outcome{true, os.str()};
}

// ----- criterion 3: the GL3(F2) scenario ----------------------------------------

Outcome gl3_scenario() {
  auto t0 = Clock::now();
  Gl3Locality loc = gl3_locality();
  const Pregroup &P = loc.built.pg;

  EXPECT(loc.built.data.A.size() == 24, "|N_G(V)| != 24");
  EXPECT(loc.built.data.B.size() == 24, "|N_G(V')| != 24");
  EXPECT(P.size() == 40, "|L| != 40");
  EXPECT(validate_pregroup(P).ok(), "locality pregroup invalid");

  ObjectSet delta = close_objects(
      P, {loc.c4_carrier, loc.v_carrier, loc.vprime_carrier}, loc.s_carrier);
  EXPECT(delta.members_list.size() == 4, "Delta is not {C,V,V',S}");

  LocalityReport rep =
      check_locality(P, delta, PgSubgroup{&P, loc.s_carrier}, 4);
  EXPECT(rep.is_locality(), "locality check failed");

  // D_Delta agrees with W(N_G(V)) u W(N_G(V')) on every word of length <= 4
  detail::DeltaAutomaton autom(P, delta);
  int k = static_cast<int>(delta.members_list.size());
  long agree = 0;
  bool mismatch = false;
  Word w;
  std::function<void(std::vector<char>, bool, bool)> rec =
      [&](std::vector<char> fr, bool all_a, bool all_b) {
        if (mismatch)
          return;
        if (!w.empty()) {
          bool chain = std::any_of(fr.begin(), fr.end(),
                                   [](char c) { return c != 0; });
          if (chain != (all_a || all_b)) {
            mismatch = true;
            return;
          }
          ++agree;
        }
        if (w.size() == 4)
          return;
        for (int x = 0; x < P.size(); ++x) {
          bool na = all_a && loc.built.a_of[x] >= 0;
          bool nb = all_b && loc.built.b_of[x] >= 0;
          std::vector<char> nf(k, 0);
          bool alive = false;
          for (int xi = 0; xi < k; ++xi) {
            if (!fr[xi])
              continue;
            int y = autom.step[x][xi];
            if (y >= 0) {
              nf[y] = 1;
              alive = true;
            }
          }
          if (!alive && !na && !nb)
            continue; // both sides dead on every extension
          w.push_back(x);
          rec(std::move(nf), na, nb);
          w.pop_back();
        }
      };
  rec(std::vector<char>(k, 1), true, true);
  EXPECT(!mismatch, "chain membership differs from W(N_G(V)) u W(N_G(V'))");

  double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << "|L|=40, |N|=24/24, locality to length 4, " << agree
     << " words matched, " << elapsed << "s";
  EXPECT(elapsed <= 120.0, "over the 120s budget");
  return Outcome{true, os.str()};
}

// ----- criterion 4: realisability round trips ------------------------------------

// fusion systems over isomorphic S, compared through an explicit isomorphism
bool fusion_isomorphic(const FusionSystem &F1, const FusionSystem &F2) {
  const FiniteGroup &S1 = F1.s(), &S2 = F2.s();
  if (S1.size() != S2.size())
    return false;
  std::vector<int> whole(S2.size());
  for (int i = 0; i < S2.size(); ++i)
    whole[i] = i;
  for (const auto &iso : sampling::injective_homs(S1, S2, whole, 64)) {
    bool ok = true;
    for (int p = 0; p < F1.object_count() && ok; ++p) {
      std::vector<int> pm;
      for (int x : F1.object(p))
        pm.push_back(iso[x]);
      std::sort(pm.begin(), pm.end());
      int p2 = F2.object_index(pm);
      if (p2 < 0) {
        ok = false;
        break;
      }
      for (int q = 0; q < F1.object_count() && ok; ++q) {
        std::vector<int> qm;
        for (int x : F1.object(q))
          qm.push_back(iso[x]);
        std::sort(qm.begin(), qm.end());
        int q2 = F2.object_index(qm);
        if (q2 < 0) {
          ok = false;
          break;
        }
        std::set<std::vector<int>> translated;
        for (const auto &img : F1.homset(p, q)) {
          // reorder the image vector along the sorted translated source
          std::vector<std::pair<int, int>> pairs;
          for (size_t t = 0; t < img.size(); ++t)
            pairs.emplace_back(iso[F1.object(p)[t]], iso[img[t]]);
          std::sort(pairs.begin(), pairs.end());
          std::vector<int> timg;
          for (auto &[src, dst] : pairs)
            timg.push_back(dst);
          translated.insert(std::move(timg));
        }
        if (translated != F2.homset(p2, q2))
          ok = false;
      }
    }
    if (ok)
      return true;
  }
  return false;
}

Outcome realisability() {
  std::ostringstream os;
  long total = 0;
  for (const LSData &d : {ls_c3_inversion(), ls_c4_center(), ls_d8_klein()}) {
    BuiltLs b = leary_stancu_pregroup(d);
    FusionSystem want = generate_fusion(d.S, ls_fusion_generators(d));
    FusionSystem got = fusion_of_ls_pregroup(b);
    EXPECT(check_fusion_axioms(got).ok(),
           "realised fusion system violates (F1)/(F2)");
    FusionDifference diff;
    EXPECT(fusion_equal(want, got, &diff),
           "Leary-Stancu fusion round trip differs");
    SylowResult syl = is_sylow_in_pregroup(
        b.pg, PgSubgroup{&b.pg, s_carrier_members(d.S)});
    EXPECT(syl.is_sylow, "S is not Sylow in the Leary-Stancu pregroup");
    EXPECT(syl.certificates.size() > 0, "no certificates returned");
    for (const SylowChain &c : syl.certificates) {
      std::vector<int> cur = c.start;
      for (const SylowStep &st : c.steps) {
        PgConjugation conj =
            conjugate_subgroup(b.pg, PgSubgroup{&b.pg, cur}, st.conjugator);
        EXPECT(conj.image.members == st.members, "broken Sylow certificate");
        cur = st.members;
      }
      EXPECT(std::includes(s_carrier_members(d.S).begin(),
                           s_carrier_members(d.S).end(), cur.begin(),
                           cur.end()),
             "Sylow chain does not end inside S");
    }
    total += want.total_morphisms();
  }

  RobinsonData rd = robinson_s3();
  BuiltRobinson rb = robinson_pregroup(rd);
  FusionSystem got = fusion_of_robinson_pregroup(rb);
  FiniteGroup s3 = symmetric_group(3);
  Subgroup syl2 = sylow_subgroup(s3, 2);
  FusionSystem from_group = fusion_of_group(s3, syl2.members);
  EXPECT(fusion_isomorphic(got, from_group),
         "Robinson fusion differs from F_{C2}(S3)");
  SylowResult rsyl = is_sylow_in_pregroup(
      rb.pg, PgSubgroup{&rb.pg, s_carrier_members(rd.S)});
  EXPECT(rsyl.is_sylow, "S is not Sylow in the Robinson pregroup");

  os << "3 Leary-Stancu round trips (" << total
     << " morphisms) + Robinson vs F_{C2}(S3)";
  return Outcome{true, os.str()};
}

// ----- criterion 5: non-locality certificates -------------------------------------

Outcome non_locality() {
  std::ostringstream os;
  for (const LSData &d : {ls_c3_inversion(), ls_c4_center(), ls_d8_klein()}) {
    BuiltLs b = leary_stancu_pregroup(d);
    LsObstruction o = ls_locality_obstruction(b);
    EXPECT(o.in_delta_domain, "obstruction word missing from D_Delta");
    EXPECT(!o.in_word_domain, "obstruction word lies in D_P");
    // re-verify with both membership routines, independently of the
    // builder's own flags
    EXPECT(d_delta_member(b.pg, o.delta, o.word).has_value(),
           "chain routine rejects the obstruction word");
    EXPECT(!PartialView(b.pg).in_domain(o.word),
           "interval routine accepts the obstruction word");
    os << "class " << o.obstruction_class << " (" << word_str(b.pg, o.word)
       << "); ";
  }
  return Outcome{true, os.str()};
}

// ----- criterion 6: the Sylow counterexample --------------------------------------

Outcome sylow_counterexample() {
  BuiltAmalgam b = amalgam_pregroup(amalgam_c2_c4());
  std::vector<int> bmem;
  for (int i = 0; i < b.pg.size(); ++i)
    if (b.b_of[i] >= 0)
      bmem.push_back(i);
  std::sort(bmem.begin(), bmem.end());
  EXPECT(bmem.size() == 4, "maximal 2-subgroup has wrong order");
  SylowResult res = is_sylow_in_pregroup(b.pg, PgSubgroup{&b.pg, bmem});
  EXPECT(!res.is_sylow, "C4 wrongly certified as Sylow");
  EXPECT(res.counterexample.size() == 2, "counterexample is not of order 2");
  return Outcome{true, "counterexample {" +
                           word_str(b.pg, res.counterexample) + "}"};
}

// ----- criterion 7: presentation/abelianisation consistency -------------------------

Outcome presentations() {
  // C2 u C3: torsion [6] along both routes
  BuiltAmalgam c23 = amalgam_pregroup(amalgam_c2_c3());
  AbelianInvariants via_pregroup =
      abelian_invariants(universal_presentation(c23.pg));
  AbelianInvariants via_graph =
      abelian_invariants(graph_presentation(amalgam_graph(amalgam_c2_c3())));
  EXPECT(via_pregroup == via_graph, "amalgam abelianisations differ");
  EXPECT(via_pregroup.rank == 0 &&
             via_pregroup.torsion == std::vector<long long>{6},
         "C2*C3 abelianisation is not [6]");

  // one stable letter over C2: rank 1, torsion [2] along both routes
  BuiltLs ls = leary_stancu_pregroup(ls_c2_trivial());
  AbelianInvariants lp = abelian_invariants(universal_presentation(ls.pg));
  AbelianInvariants lg =
      abelian_invariants(graph_presentation(ls_graph(ls_c2_trivial())));
  EXPECT(lp == lg, "HNN abelianisations differ");
  EXPECT(lp.rank == 1 && lp.torsion == std::vector<long long>{2},
         "C2 * Z abelianisation is not rank 1 torsion [2]");

  // spanning-tree independence on every test graph with <= 4 edges
  std::vector<GraphOfGroups> graphs;
  graphs.push_back(amalgam_graph(amalgam_c2_c3()));
  graphs.push_back(ls_graph(ls_c2_trivial()));
  {
    GraphOfGroups g;
    g.vertex_groups = {cyclic_group(2), cyclic_group(3)};
    FiniteGroup triv = cyclic_group(1);
    g.edges.push_back(GogEdge{0, 1, triv, {0}, {0}});
    g.edges.push_back(GogEdge{0, 1, triv, {0}, {0}});
    g.edges.push_back(GogEdge{1, 1, triv, {0}, {0}});
    graphs.push_back(g);
  }
  {
    GraphOfGroups g;
    g.vertex_groups = {cyclic_group(2), cyclic_group(2), cyclic_group(2)};
    FiniteGroup triv = cyclic_group(1);
    g.edges.push_back(GogEdge{0, 1, triv, {0}, {0}});
    g.edges.push_back(GogEdge{1, 2, triv, {0}, {0}});
    g.edges.push_back(GogEdge{2, 0, triv, {0}, {0}});
    g.edges.push_back(GogEdge{0, 1, triv, {0}, {0}});
    graphs.push_back(g);
  }
  long trees_checked = 0;
  for (const GraphOfGroups &g : graphs) {
    auto trees = all_spanning_trees(g);
    EXPECT(!trees.empty(), "graph without spanning trees");
    AbelianInvariants first =
        abelian_invariants(graph_presentation(g, &trees[0]));
    for (const auto &t : trees) {
      ++trees_checked;
      EXPECT(abelian_invariants(graph_presentation(g, &t)) == first,
             "abelian invariants depend on the spanning tree");
    }
  }
  std::ostringstream os;
  os << "[6] and rank1+[2] on both routes; " << trees_checked
     << " spanning trees agree";
  return Outcome{true, os.str()};
}

// ----- criterion 8: simplicial suite -------------------------------------------------

Outcome simplicial() {
  std::vector<std::pair<std::string, Pregroup>> zoo;
  zoo.emplace_back("amalgam-c2c3", amalgam_pregroup(amalgam_c2_c3()).pg);
  zoo.emplace_back("amalgam-c2c4", amalgam_pregroup(amalgam_c2_c4()).pg);
  zoo.emplace_back("amalgam-c4c4",
                   amalgam_pregroup(amalgam_c4_c4_over_c2()).pg);
  zoo.emplace_back("ls-c2", leary_stancu_pregroup(ls_c2_trivial()).pg);
  zoo.emplace_back("ls-c3", leary_stancu_pregroup(ls_c3_inversion()).pg);
  zoo.emplace_back("ls-c4", leary_stancu_pregroup(ls_c4_center()).pg);
  zoo.emplace_back("ls-v4", leary_stancu_pregroup(ls_v4_swap()).pg);
  zoo.emplace_back("ls-d8", leary_stancu_pregroup(ls_d8_klein()).pg);
  zoo.emplace_back("robinson-s3", robinson_pregroup(robinson_s3()).pg);
  zoo.emplace_back("gl3", gl3_locality().built.pg);

  long simplices = 0;
  for (const auto &[name, P] : zoo) {
    EXPECT(P.size() <= 40, name + ": instance over the size gate");
    NerveReport rep = nerve_census(PartialView(P), 3);
    EXPECT(rep.ok(), name + ": simplicial identity violated");
    EXPECT(rep.simplex_counts[0] == 1, name + ": |D_0| != 1");
    EXPECT(rep.simplex_counts[1] == P.size(), name + ": |D_1| != |P|");
    for (long c : rep.simplex_counts)
      simplices += c;
  }

  for (const AmalgamData &d :
       {amalgam_c2_c3(), amalgam_c2_c4(), amalgam_c4_c4_over_c2()}) {
    NerveReport rep = nerve_census(PartialView(amalgam_pregroup(d).pg), 2);
    long expect = static_cast<long>(d.A.size()) * d.A.size() +
                  static_cast<long>(d.B.size()) * d.B.size() -
                  static_cast<long>(d.C.size()) * d.C.size();
    EXPECT(rep.simplex_counts[2] == expect,
           "|D_2| formula fails for an amalgam");
  }
  std::ostringstream os;
  os << zoo.size() << " pregroups, " << simplices << " simplices verified";
  return Outcome{true, os.str()};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "axiom suite", axiom_suite},
      {2, "word-problem cross-validation", word_problem},
      {3, "GL3(F2) locality scenario", gl3_scenario},
      {4, "realisability round trips", realisability},
      {5, "non-locality certificates", non_locality},
      {6, "Sylow counterexample", sylow_counterexample},
      {7, "presentation/abelianisation consistency", presentations},
      {8, "simplicial suite", simplicial},
  };

  int failures = 0;
  for (const Criterion &c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c.id << " (" << c.name << "): "
              << (o.pass ? "PASS" : "FAIL");
    if (!o.detail.empty())
      std::cout << " [" << o.detail << "]";
    std::cout << "\n";
    if (!o.pass)
      ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 8 criteria passed\n";
  return 0;
}
