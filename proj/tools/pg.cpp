// pg: command-line front end for the pregroup toolkit.
//
// Exit codes: 0 success / true verdict, 1 false verdict or violation,
// 2 usage or format error, 3 resource bound exceeded.  The locality
// subcommand refines this: 0 locality (exhaustively verified), 1 not a
// locality, 2 inconclusive at the length bound.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pg/instances.hpp"
#include "pg/io.hpp"
#include "pg/locality.hpp"
#include "pg/realize.hpp"
#include "pg/sampling.hpp"
#include "pg/smith.hpp"
#include "pg/words.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

void write_or_print(const std::string &path, const json &j) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << "\n";
  else
    pg::io::save_text(path, j.dump(2) + "\n");
}

int run_check(const std::string &file, int partial_maxlen) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::ValidationReport rep = pg::validate_pregroup(P);
  std::cout << "elements: " << P.size() << "\n";
  std::cout << "domain pairs: " << P.domain_size() << "\n";
  for (const pg::Violation &v : rep.violations) {
    std::cout << "violation " << v.rule << " at (";
    for (size_t i = 0; i < v.witness.size(); ++i)
      std::cout << (i ? "," : "") << v.witness[i];
    std::cout << "): " << v.detail << "\n";
  }
  bool partial_ok = true;
  if (rep.ok() && partial_maxlen >= 2) {
    pg::PartialView view(P);
    auto prep = pg::validate_partial_axioms(view, partial_maxlen);
    partial_ok = prep.ok();
    std::cout << "word-domain axioms to length " << partial_maxlen << ": "
              << (prep.ok() ? "ok" : "violated") << " ("
              << prep.words_checked << " words)\n";
  }
  std::cout << (rep.ok() && partial_ok ? "valid pregroup" : "NOT a pregroup")
            << "\n";
  return rep.ok() && partial_ok ? kExitTrue : kExitFalse;
}

int run_reduce(const std::string &file, const std::string &word, bool trace) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::Word w = pg::io::parse_word(P, word);
  auto [red, tr] = pg::reduce(P, w);
  if (trace)
    for (const pg::ReductionStep &st : tr.steps)
      std::cout << "merge at " << st.position << ": (" << P.label(st.x) << ","
                << P.label(st.y) << ") -> " << pg::word_str(P, st.result)
                << "\n";
  std::cout << pg::word_str(P, red) << "\n";
  return kExitTrue;
}

int run_equal(const std::string &file, const std::string &w1,
              const std::string &w2, const std::string &cert_path) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::EqualityCertificate cert =
      pg::equal_in_universal(P, pg::io::parse_word(P, w1),
                             pg::io::parse_word(P, w2));
  std::cout << (cert.equal() ? "equal" : "unequal") << "\n";
  if (!cert_path.empty()) {
    json j;
    j["verdict"] = cert.equal() ? "equal" : "unequal";
    j["reduced"] = {pg::word_str(P, cert.reduced1),
                    pg::word_str(P, cert.reduced2)};
    if (cert.equal()) {
      json ints = json::array();
      for (int a : cert.intercalators)
        ints.push_back(P.label(a));
      j["intercalators"] = std::move(ints);
    } else {
      j["reason"] = cert.reason ==
                            pg::EqualityCertificate::Reason::length_mismatch
                        ? "length-mismatch"
                        : "no-intercalation";
    }
    write_or_print(cert_path, j);
  }
  return cert.equal() ? kExitTrue : kExitFalse;
}

int run_build(const std::string &kind, const std::string &input,
              const std::string &output) {
  pg::Pregroup built;
  if (kind == "amalgam") {
    built = pg::amalgam_pregroup(pg::io::load_amalgam_input(input)).pg;
  } else if (kind == "ls") {
    pg::io::FusionInput in = pg::io::load_fusion_input(input);
    built = pg::leary_stancu_pregroup(pg::io::lsdata_from_fusion_input(in)).pg;
  } else if (kind == "robinson") {
    built = pg::robinson_pregroup(pg::io::load_robinson_input(input)).pg;
  } else {
    std::cerr << "unknown build kind '" << kind << "'\n";
    return kExitUsage;
  }
  pg::ValidationReport rep = pg::validate_pregroup(built);
  if (!rep.ok())
    throw pg::Error("built pregroup failed validation");
  pg::io::save_pregroup(built, output);
  std::cout << "built pregroup with " << built.size() << " elements -> "
            << output << "\n";
  return kExitTrue;
}

int run_fusion(const std::string &input, const std::string &output,
               bool full) {
  pg::io::FusionInput in = pg::io::load_fusion_input(input);
  pg::FusionSystem F = pg::generate_fusion(in.S, in.generators);
  write_or_print(output, pg::io::fusion_to_json(F, full));
  return kExitTrue;
}

int run_fusion_equal(const std::string &a, const std::string &b,
                     const std::string &roundtrip) {
  if (!roundtrip.empty()) {
    if (roundtrip == "ls") {
      pg::io::FusionInput in = pg::io::load_fusion_input(a);
      pg::LSData d = pg::io::lsdata_from_fusion_input(in);
      pg::BuiltLs built = pg::leary_stancu_pregroup(d);
      pg::FusionSystem want = pg::generate_fusion(in.S, in.generators);
      pg::FusionSystem got = pg::fusion_of_ls_pregroup(built);
      pg::FusionDifference diff;
      bool eq = pg::fusion_equal(want, got, &diff);
      std::cout << (eq ? "equal" : "different") << " ("
                << want.total_morphisms() << " morphisms)\n";
      return eq ? kExitTrue : kExitFalse;
    }
    if (roundtrip == "robinson") {
      pg::RobinsonData d = pg::io::load_robinson_input(a);
      pg::BuiltRobinson built = pg::robinson_pregroup(d);
      pg::FusionSystem want =
          pg::generate_fusion(d.S, pg::robinson_fusion_generators(d));
      pg::FusionSystem got = pg::fusion_of_robinson_pregroup(built);
      bool eq = pg::fusion_equal(want, got);
      std::cout << (eq ? "equal" : "different") << " ("
                << want.total_morphisms() << " morphisms)\n";
      return eq ? kExitTrue : kExitFalse;
    }
    std::cerr << "unknown roundtrip kind '" << roundtrip << "'\n";
    return kExitUsage;
  }
  pg::io::FusionInput ia = pg::io::load_fusion_input(a);
  pg::io::FusionInput ib = pg::io::load_fusion_input(b);
  pg::FusionSystem fa = pg::generate_fusion(ia.S, ia.generators);
  pg::FusionSystem fb = pg::generate_fusion(ib.S, ib.generators);
  pg::FusionDifference diff;
  bool eq = pg::fusion_equal(fa, fb, &diff);
  if (eq)
    std::cout << "equal\n";
  else
    std::cout << "different at homset (" << diff.source << "," << diff.target
              << ")\n";
  return eq ? kExitTrue : kExitFalse;
}

int run_sylow(const std::string &file, const std::string &members) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::Word m = pg::io::parse_word(P, members);
  std::sort(m.begin(), m.end());
  pg::SylowResult res = pg::is_sylow_in_pregroup(P, pg::PgSubgroup{&P, m});
  if (res.is_sylow) {
    std::cout << "Sylow: yes (" << res.certificates.size()
              << " p-subgroups certified)\n";
    return kExitTrue;
  }
  std::cout << "Sylow: no; counterexample {"
            << pg::word_str(P, res.counterexample) << "}\n";
  return kExitFalse;
}

int run_locality(const std::string &file, const std::string &sylow,
                 const std::string &objects, int maxlen,
                 const std::string &output) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::Word s = pg::io::parse_word(P, sylow);
  std::sort(s.begin(), s.end());
  std::vector<std::vector<int>> seed;
  if (!objects.empty()) {
    std::stringstream ss(objects);
    std::string part;
    while (std::getline(ss, part, ';')) {
      pg::Word m = pg::io::parse_word(P, part);
      std::sort(m.begin(), m.end());
      seed.push_back(m);
    }
  }
  pg::ObjectSet delta = pg::close_objects(P, seed, s);
  pg::LocalityReport rep =
      pg::check_locality(P, delta, pg::PgSubgroup{&P, s}, maxlen);

  json j;
  j["objects"] = json::array();
  for (const auto &m : delta.members_list)
    j["objects"].push_back(pg::word_str(P, m));
  j["oa_holds_to_length"] = rep.objectivity.oa_holds;
  j["ob_holds"] = rep.objectivity.ob_holds;
  j["s_in_delta"] = rep.s_in_delta;
  j["s_maximal"] = rep.s_maximal;
  j["exhaustive"] = rep.exhaustive;
  j["verified_length"] = rep.verified_length;
  json cex = json::array();
  for (const auto &w : rep.objectivity.extra_in_delta)
    cex.push_back(pg::word_str(P, w));
  j["in_delta_not_in_domain"] = cex;
  json cex2 = json::array();
  for (const auto &w : rep.objectivity.missing_in_delta)
    cex2.push_back(pg::word_str(P, w));
  j["in_domain_not_in_delta"] = cex2;

  if (!rep.is_locality()) {
    std::cout << "not a locality\n";
    if (!rep.objectivity.extra_in_delta.empty())
      std::cout << "counterexample word: "
                << pg::word_str(P, rep.objectivity.extra_in_delta[0]) << "\n";
    if (!rep.objectivity.missing_in_delta.empty())
      std::cout << "counterexample word: "
                << pg::word_str(P, rep.objectivity.missing_in_delta[0])
                << "\n";
    if (!rep.s_maximal)
      std::cout << "larger p-subgroup: {"
                << pg::word_str(P, rep.larger_p_subgroup) << "}\n";
    j["verdict"] = "not-locality";
    if (!output.empty())
      write_or_print(output, j);
    return kExitFalse;
  }
  if (rep.exhaustive) {
    std::cout << "locality\n";
    j["verdict"] = "locality";
    if (!output.empty())
      write_or_print(output, j);
    return kExitTrue;
  }
  std::cout << "locality (verified to length " << maxlen << ")\n";
  j["verdict"] = "locality-at-bound";
  if (!output.empty())
    write_or_print(output, j);
  return kExitUsage; // inconclusive at the bound
}

int run_presentation(const std::string &file, const std::string &output) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::Presentation pres = pg::universal_presentation(P);
  pg::AbelianInvariants inv = pg::abelian_invariants(pres);
  std::cout << pres.generators.size() << " generators, "
            << pres.relators.size() << " relators\n";
  std::cout << "abelian invariants: " << inv.str() << "\n";
  if (!output.empty()) {
    json j = pg::io::presentation_to_json(pres);
    j["abelian_rank"] = inv.rank;
    j["abelian_torsion"] = inv.torsion;
    write_or_print(output, j);
  }
  return kExitTrue;
}

int run_nerve(const std::string &file, int maxdim) {
  pg::Pregroup P = pg::io::load_pregroup(file);
  pg::PartialView view(P);
  pg::NerveReport rep = pg::nerve_census(view, maxdim);
  for (int k = 0; k <= maxdim; ++k)
    std::cout << "simplices of dimension " << k << ": "
              << rep.simplex_counts[k] << "\n";
  for (const auto &[rule, w] : rep.violations)
    std::cout << "identity violation " << rule << " at ("
              << pg::word_str(P, w) << ")\n";
  std::cout << (rep.ok() ? "simplicial identities hold" : "violations found")
            << "\n";
  return rep.ok() ? kExitTrue : kExitFalse;
}

json locality_report_json(const pg::Pregroup &P,
                          const pg::LocalityReport &rep) {
  json j;
  j["is_locality"] = rep.is_locality();
  j["exhaustive"] = rep.exhaustive;
  j["verified_length"] = rep.verified_length;
  j["oa"] = rep.objectivity.oa_holds;
  j["ob"] = rep.objectivity.ob_holds;
  j["s_maximal"] = rep.s_maximal;
  json cex = json::array();
  for (const auto &w : rep.objectivity.extra_in_delta)
    cex.push_back(pg::word_str(P, w));
  j["in_delta_not_in_domain"] = cex;
  return j;
}

int run_scenario(const std::string &name, const std::string &outdir,
                 unsigned seed) {
  fs::create_directories(outdir);
  json j;
  j["scenario"] = name;

  if (name == "gl3") {
    pg::instances::Gl3Locality loc = pg::instances::gl3_locality();
    const pg::Pregroup &P = loc.built.pg;
    j["carrier"] = P.size();
    j["normalizer_orders"] = {loc.built.data.A.size(),
                              loc.built.data.B.size()};
    j["valid"] = pg::validate_pregroup(P).ok();
    pg::ObjectSet delta = pg::close_objects(
        P, {loc.c4_carrier, loc.v_carrier, loc.vprime_carrier},
        loc.s_carrier);
    j["objects"] = delta.members_list.size();
    pg::LocalityReport rep = pg::check_locality(
        P, delta, pg::PgSubgroup{&P, loc.s_carrier}, 4);
    j["locality"] = locality_report_json(P, rep);
    pg::io::save_pregroup(P, fs::path(outdir) / "gl3-pregroup.json");
    write_or_print((fs::path(outdir) / "gl3.json").string(), j);
    return rep.is_locality() ? kExitTrue : kExitFalse;
  }

  if (name == "ls-c3") {
    pg::LSData d = pg::instances::ls_c3_inversion();
    pg::BuiltLs built = pg::leary_stancu_pregroup(d);
    j["carrier"] = built.pg.size();
    j["valid"] = pg::validate_pregroup(built.pg).ok();
    pg::FusionSystem want =
        pg::generate_fusion(d.S, pg::ls_fusion_generators(d));
    pg::FusionSystem got = pg::fusion_of_ls_pregroup(built);
    bool round = pg::fusion_equal(want, got);
    j["fusion_roundtrip_equal"] = round;
    pg::SylowResult syl = pg::is_sylow_in_pregroup(
        built.pg,
        pg::PgSubgroup{&built.pg, pg::s_carrier_members(d.S)});
    j["sylow"] = syl.is_sylow;
    pg::LsObstruction obs = pg::ls_locality_obstruction(built);
    j["obstruction_class"] = obs.obstruction_class;
    j["obstruction_word"] = pg::word_str(built.pg, obs.word);
    j["obstruction_verified"] = obs.verified();
    pg::io::save_pregroup(built.pg, fs::path(outdir) / "ls-c3-pregroup.json");
    write_or_print((fs::path(outdir) / "ls-c3.json").string(), j);
    return round && syl.is_sylow && obs.verified() ? kExitTrue : kExitFalse;
  }

  if (name == "robinson-s3") {
    pg::RobinsonData d = pg::instances::robinson_s3();
    pg::BuiltRobinson built = pg::robinson_pregroup(d);
    j["carrier"] = built.pg.size();
    j["valid"] = pg::validate_pregroup(built.pg).ok();
    pg::FusionSystem want =
        pg::generate_fusion(d.S, pg::robinson_fusion_generators(d));
    pg::FusionSystem got = pg::fusion_of_robinson_pregroup(built);
    bool round = pg::fusion_equal(want, got);
    j["fusion_roundtrip_equal"] = round;
    pg::SylowResult syl = pg::is_sylow_in_pregroup(
        built.pg,
        pg::PgSubgroup{&built.pg, pg::s_carrier_members(d.S)});
    j["sylow"] = syl.is_sylow;
    pg::RobinsonDeltaResult rdc = pg::robinson_delta_candidate(built, 4);
    j["delta_objects"] = rdc.delta.members_list.size();
    j["locality"] = locality_report_json(built.pg, rdc.report);
    pg::io::save_pregroup(built.pg,
                          fs::path(outdir) / "robinson-s3-pregroup.json");
    write_or_print((fs::path(outdir) / "robinson-s3.json").string(), j);
    return round && syl.is_sylow ? kExitTrue : kExitFalse;
  }

  if (name == "amalgam-c2c4") {
    pg::BuiltAmalgam built =
        pg::amalgam_pregroup(pg::instances::amalgam_c2_c4());
    j["carrier"] = built.pg.size();
    j["valid"] = pg::validate_pregroup(built.pg).ok();
    std::vector<int> bmem;
    for (int i = 0; i < built.pg.size(); ++i)
      if (built.b_of[i] >= 0)
        bmem.push_back(i);
    std::sort(bmem.begin(), bmem.end());
    pg::SylowResult syl =
        pg::is_sylow_in_pregroup(built.pg, pg::PgSubgroup{&built.pg, bmem});
    j["sylow_of_maximal_2_subgroup"] = syl.is_sylow;
    j["counterexample"] = pg::word_str(built.pg, syl.counterexample);
    pg::io::save_pregroup(built.pg,
                          fs::path(outdir) / "amalgam-c2c4-pregroup.json");
    write_or_print((fs::path(outdir) / "amalgam-c2c4.json").string(), j);
    // the expected outcome of this scenario is the negative verdict
    return !syl.is_sylow ? kExitTrue : kExitFalse;
  }

  if (name == "axioms-random") {
    pg::sampling::Rng rng(seed);
    json inst = json::array();
    bool all_ok = true;
    // resample instances that would exceed the validator's size bound
    auto record = [&](const char *kind, const pg::Pregroup &P) {
      bool ok = pg::validate_pregroup(P).ok();
      all_ok &= ok;
      inst.push_back({{"kind", kind}, {"size", P.size()}, {"valid", ok}});
    };
    for (int k = 0; k < 5; ++k) {
      for (;;) {
        pg::AmalgamData d = pg::sampling::random_amalgam(rng);
        if (d.A.size() + d.B.size() - d.C.size() > 400)
          continue;
        record("amalgam", pg::amalgam_pregroup(d).pg);
        break;
      }
      for (;;) {
        pg::BuiltLs l =
            pg::leary_stancu_pregroup(pg::sampling::random_ls(rng));
        if (l.pg.size() > 400)
          continue;
        record("ls", l.pg);
        break;
      }
      for (;;) {
        pg::BuiltRobinson r =
            pg::robinson_pregroup(pg::sampling::random_robinson(rng));
        if (r.pg.size() > 400)
          continue;
        record("robinson", r.pg);
        break;
      }
    }
    j["instances"] = std::move(inst);
    j["all_valid"] = all_ok;
    write_or_print((fs::path(outdir) / "axioms-random.json").string(), j);
    return all_ok ? kExitTrue : kExitFalse;
  }

  std::cerr << "unknown scenario '" << name << "'\n";
  return kExitUsage;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"pregroup toolkit"};
  app.require_subcommand(1);

  std::string file, word, word2, output, cert_path, kind, input, members,
      objects, roundtrip, scenario_name;
  int maxlen = 4, maxdim = 3, partial_maxlen = 0;
  unsigned seed = 1;
  bool trace = false, full = false;

  auto *check = app.add_subcommand("check", "validate the pregroup axioms");
  check->add_option("pregroup", file)->required();
  check->add_option("--partial-maxlen", partial_maxlen,
                    "also check the word-domain axioms to this length");

  auto *red = app.add_subcommand("reduce", "reduce a word to P-reduced form");
  red->add_option("pregroup", file)->required();
  red->add_option("word", word)->required();
  red->add_flag("--trace", trace);

  auto *eq = app.add_subcommand("equal", "decide equality in the universal group");
  eq->add_option("pregroup", file)->required();
  eq->add_option("word1", word)->required();
  eq->add_option("word2", word2)->required();
  eq->add_option("--emit-cert", cert_path, "write the certificate ('-' = stdout)");

  auto *bld = app.add_subcommand("build", "build a pregroup (ls|robinson|amalgam)");
  bld->add_option("kind", kind)->required();
  bld->add_option("input", input)->required();
  bld->add_option("-o,--output", output)->required();

  auto *fus = app.add_subcommand("fusion", "generate a fusion system");
  fus->add_option("input", input)->required();
  fus->add_option("-o,--output", output);
  fus->add_flag("--full", full, "include the full morphism graphs");

  auto *feq = app.add_subcommand("fusion-equal", "compare fusion systems");
  feq->add_option("first", input)->required();
  feq->add_option("second", word);
  feq->add_option("--roundtrip", roundtrip,
                  "compare against the pregroup realisation (ls|robinson)");

  auto *syl = app.add_subcommand("sylow", "Sylow certificate search");
  syl->add_option("pregroup", file)->required();
  syl->add_option("--members", members, "comma-separated labels of S")
      ->required();

  auto *loc = app.add_subcommand("locality", "objectivity and locality check");
  loc->add_option("pregroup", file)->required();
  loc->add_option("--sylow", members, "comma-separated labels of S")
      ->required();
  loc->add_option("--objects", objects,
                  "semicolon-separated member lists seeding Delta");
  loc->add_option("--maxlen", maxlen);
  loc->add_option("-o,--output", output);

  auto *pres = app.add_subcommand("presentation",
                                  "universal-group presentation and abelianisation");
  pres->add_option("pregroup", file)->required();
  pres->add_option("-o,--output", output);

  auto *nerve = app.add_subcommand("nerve", "simplex census and identities");
  nerve->add_option("pregroup", file)->required();
  nerve->add_option("--maxdim", maxdim);

  auto *scen = app.add_subcommand("scenario", "run a bundled scenario");
  scen->add_option("name", scenario_name)->required();
  scen->add_option("-o,--output", output)->default_val("scenario-out");
  scen->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed())
      return run_check(file, partial_maxlen);
    if (red->parsed())
      return run_reduce(file, word, trace);
    if (eq->parsed())
      return run_equal(file, word, word2, cert_path);
    if (bld->parsed())
      return run_build(kind, input, output);
    if (fus->parsed())
      return run_fusion(input, output, full);
    if (feq->parsed())
      return run_fusion_equal(input, word, roundtrip);
    if (syl->parsed())
      return run_sylow(file, members);
    if (loc->parsed())
      return run_locality(file, members, objects, maxlen, output);
    if (pres->parsed())
      return run_presentation(file, output);
    if (nerve->parsed())
      return run_nerve(file, maxdim);
    if (scen->parsed())
      return run_scenario(scenario_name, output, seed);
  } catch (const pg::ResourceError &e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return kExitResource;
  } catch (const pg::FormatError &e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pg::ArgumentError &e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
