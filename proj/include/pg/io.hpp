#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pg/constructions.hpp"
#include "pg/errors.hpp"
#include "pg/fusion.hpp"
#include "pg/group.hpp"
#include "pg/partial.hpp"
#include "pg/pregroup.hpp"
#include "pg/smith.hpp"

namespace pg {
namespace io {

using nlohmann::json;

inline json load_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw FormatError("bad JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

inline void save_text(const std::filesystem::path &path,
                      const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot write '" + path.string() + "'");
  out << text;
}

// Group file: {"degree": n, "generators": [[images...],...], "name": s,
// "labels": [{"perm": [...], "label": s}, ...]}.  Elements are indexed in
// lexicographic order of their image arrays; index 0 is the identity.
inline FiniteGroup group_from_json(const json &j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw FormatError("group file needs 'degree' and 'generators'");
  unsigned degree = j.at("degree").get<unsigned>();
  std::vector<Perm> gens;
  for (const auto &arr : j.at("generators")) {
    std::vector<long> v = arr.get<std::vector<long>>();
    if (v.size() != degree)
      throw FormatError("generator length does not match the degree");
    gens.push_back(Perm::from_ints(v));
  }
  std::string name = j.value("name", std::string{});
  FiniteGroup G = FiniteGroup::from_generators(degree, std::move(gens), name);
  if (j.contains("labels"))
    for (const auto &entry : j.at("labels")) {
      Perm p = Perm::from_ints(entry.at("perm").get<std::vector<long>>());
      G.set_label(p, entry.at("label").get<std::string>());
    }
  return G;
}

inline FiniteGroup load_group(const std::filesystem::path &path) {
  return group_from_json(load_json(path));
}

// resolves "S": "c4.json" style references relative to the referencing file
inline FiniteGroup load_group_ref(const json &j, const char *key,
                                  const std::filesystem::path &base) {
  if (!j.contains(key))
    throw FormatError(std::string("missing group reference '") + key + "'");
  std::filesystem::path ref = j.at(key).get<std::string>();
  if (ref.is_relative())
    ref = base.parent_path() / ref;
  return load_group(ref);
}

// Pregroup file: {"elements": [labels...], "unit": label,
// "inverse": {label: label, ...}, "products": [[x,y,xy],...]}.  The products
// array enumerates the domain exactly.
inline json pregroup_to_json(const Pregroup &P) {
  json j;
  j["elements"] = json::array();
  for (int i = 0; i < P.size(); ++i)
    j["elements"].push_back(P.label(i));
  j["unit"] = P.label(P.unit());
  json inv = json::object();
  for (int i = 0; i < P.size(); ++i)
    inv[P.label(i)] = P.label(P.inverse(i));
  j["inverse"] = std::move(inv);
  json prods = json::array();
  for (int x = 0; x < P.size(); ++x)
    for (int y = 0; y < P.size(); ++y)
      if (P.in_domain(x, y))
        prods.push_back({P.label(x), P.label(y), P.label(P.product(x, y))});
  j["products"] = std::move(prods);
  return j;
}

inline Pregroup pregroup_from_json(const json &j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("unit") ||
      !j.contains("inverse") || !j.contains("products"))
    throw FormatError(
        "pregroup file needs 'elements', 'unit', 'inverse', 'products'");
  std::vector<std::string> labels =
      j.at("elements").get<std::vector<std::string>>();
  auto index = [&](const std::string &s) {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s)
        return static_cast<int>(i);
    throw FormatError("unknown element label '" + s + "'");
  };
  std::vector<std::pair<int, int>> inv;
  for (auto it = j.at("inverse").begin(); it != j.at("inverse").end(); ++it)
    inv.emplace_back(index(it.key()), index(it.value().get<std::string>()));
  std::vector<std::tuple<int, int, int>> prods;
  for (const auto &t : j.at("products")) {
    if (!t.is_array() || t.size() != 3)
      throw FormatError("each product entry must be a [x,y,xy] triple");
    prods.emplace_back(index(t[0].get<std::string>()),
                       index(t[1].get<std::string>()),
                       index(t[2].get<std::string>()));
  }
  return Pregroup(std::move(labels), j.at("unit").get<std::string>(),
                  std::move(inv), std::move(prods));
}

inline Pregroup load_pregroup(const std::filesystem::path &path) {
  return pregroup_from_json(load_json(path));
}

inline void save_pregroup(const Pregroup &P,
                          const std::filesystem::path &path) {
  save_text(path, pregroup_to_json(P).dump(2) + "\n");
}

// Word syntax: comma-separated element labels; the empty string is the
// empty word.
inline Word parse_word(const Pregroup &P, const std::string &text) {
  Word w;
  if (text.empty())
    return w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw FormatError("empty letter in word");
    tok = tok.substr(a, b - a + 1);
    int i = P.index_of(tok);
    if (i < 0)
      throw FormatError("unknown element label '" + tok + "'");
    w.push_back(i);
  }
  return w;
}

// Fusion generator file: {"S": group ref, "p": prime,
// "generators": [{"source": [indices...], "images": [indices...]}, ...]}.
struct FusionInput {
  FiniteGroup S;
  long p = 0;
  std::vector<FusionGenerator> generators;
};

inline FusionInput load_fusion_input(const std::filesystem::path &path) {
  json j = load_json(path);
  FusionInput in;
  in.S = load_group_ref(j, "S", path);
  in.p = j.value("p", 0L);
  long derived = smallest_prime_factor(in.S.size());
  if (derived > 1 && !is_p_power(in.S.size(), derived))
    throw ArgumentError("fusion input: S is not a p-group");
  if (in.p == 0)
    in.p = derived;
  if (derived > 1 && in.p != derived)
    throw FormatError("fusion input: declared prime does not divide |S|");
  if (j.contains("generators"))
    for (const auto &g : j.at("generators")) {
      FusionGenerator gen;
      gen.source = g.at("source").get<std::vector<int>>();
      gen.images = g.at("images").get<std::vector<int>>();
      if (gen.source.size() != gen.images.size())
        throw FormatError("fusion generator: source/images length mismatch");
      in.generators.push_back(std::move(gen));
    }
  return in;
}

inline LSData lsdata_from_fusion_input(const FusionInput &in) {
  LSData d;
  d.S = in.S;
  for (const FusionGenerator &g : in.generators) {
    LsGenerator lg;
    std::vector<std::pair<int, int>> pairs;
    for (size_t k = 0; k < g.source.size(); ++k)
      pairs.emplace_back(g.source[k], g.images[k]);
    std::sort(pairs.begin(), pairs.end());
    for (auto &[s, i] : pairs) {
      lg.p_members.push_back(s);
      lg.phi.push_back(i);
    }
    lg.q_members = lg.phi;
    std::sort(lg.q_members.begin(), lg.q_members.end());
    d.gens.push_back(std::move(lg));
  }
  return d;
}

// Amalgam build input: {"A": ref, "B": ref, "C": ref,
// "phiA": [indices...], "phiB": [indices...]}.
inline AmalgamData load_amalgam_input(const std::filesystem::path &path) {
  json j = load_json(path);
  AmalgamData d;
  d.A = load_group_ref(j, "A", path);
  d.B = load_group_ref(j, "B", path);
  d.C = load_group_ref(j, "C", path);
  d.phi_a = j.at("phiA").get<std::vector<int>>();
  d.phi_b = j.at("phiB").get<std::vector<int>>();
  return d;
}

// Robinson build input: {"S": ref, "factors": [{"G": ref,
// "S_i": [indices...], "f": [indices...]}, ...]}.
inline RobinsonData load_robinson_input(const std::filesystem::path &path) {
  json j = load_json(path);
  RobinsonData d;
  d.S = load_group_ref(j, "S", path);
  for (const auto &f : j.at("factors")) {
    RobinsonFactor fac;
    fac.G = load_group_ref(f, "G", path);
    fac.s_members = f.at("S_i").get<std::vector<int>>();
    fac.f_images = f.at("f").get<std::vector<int>>();
    std::vector<std::pair<int, int>> pairs;
    for (size_t k = 0; k < fac.s_members.size(); ++k)
      pairs.emplace_back(fac.s_members[k], fac.f_images[k]);
    std::sort(pairs.begin(), pairs.end());
    fac.s_members.clear();
    fac.f_images.clear();
    for (auto &[s, i] : pairs) {
      fac.s_members.push_back(s);
      fac.f_images.push_back(i);
    }
    d.factors.push_back(std::move(fac));
  }
  return d;
}

inline json presentation_to_json(const Presentation &pres) {
  json j;
  j["generators"] = pres.generators;
  json rels = json::array();
  for (const auto &rel : pres.relators) {
    json r = json::array();
    for (const PresLetter &l : rel)
      r.push_back(pres.generators[l.gen] + (l.inv ? "^-1" : ""));
    rels.push_back(std::move(r));
  }
  j["relators"] = std::move(rels);
  return j;
}

inline json validation_to_json(const ValidationReport &rep) {
  json j;
  j["valid"] = rep.ok();
  json v = json::array();
  for (const Violation &viol : rep.violations)
    v.push_back({{"rule", viol.rule},
                 {"witness", viol.witness},
                 {"detail", viol.detail}});
  j["violations"] = std::move(v);
  j["truncated"] = rep.truncated;
  return j;
}

inline json fusion_to_json(const FusionSystem &F, bool full) {
  json j;
  j["order_of_S"] = F.s().size();
  j["p"] = F.prime();
  json objs = json::array();
  for (int i = 0; i < F.object_count(); ++i) {
    json o;
    o["index"] = i;
    o["members"] = json::array();
    for (int x : F.object(i))
      o["members"].push_back(F.s().label(x));
    objs.push_back(std::move(o));
  }
  j["objects"] = std::move(objs);
  json sets = json::array();
  for (int p = 0; p < F.object_count(); ++p)
    for (int q = 0; q < F.object_count(); ++q) {
      if (F.homset(p, q).empty())
        continue;
      json h;
      h["source"] = p;
      h["target"] = q;
      h["count"] = F.homset(p, q).size();
      if (full) {
        json maps = json::array();
        for (const auto &img : F.homset(p, q)) {
          json m = json::array();
          for (int y : img)
            m.push_back(F.s().label(y));
          maps.push_back(std::move(m));
        }
        h["maps"] = std::move(maps);
      }
      sets.push_back(std::move(h));
    }
  j["homsets"] = std::move(sets);
  j["total_morphisms"] = F.total_morphisms();
  return j;
}

} // namespace io
} // namespace pg
