#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pg/errors.hpp"
#include "pg/group.hpp"

namespace pg {

// A finite pregroup: element labels, a total involutive inverse and a
// partial product stored extensionally as the domain D.  The unit is
// canonicalised to index 0.
class Pregroup {
public:
  Pregroup() = default;

  Pregroup(std::vector<std::string> labels, const std::string &unit_label,
           std::vector<std::pair<int, int>> inverse_pairs,
           std::vector<std::tuple<int, int, int>> products) {
    int n = static_cast<int>(labels.size());
    if (n == 0)
      throw FormatError("pregroup needs at least a unit element");
    int unit = -1;
    for (int i = 0; i < n; ++i)
      if (labels[i] == unit_label)
        unit = i;
    if (unit < 0)
      throw FormatError("unit label '" + unit_label + "' not among elements");

    // move the unit to index 0, keeping the rest of the order
    std::vector<int> newpos(n);
    int next = 1;
    for (int i = 0; i < n; ++i)
      newpos[i] = i == unit ? 0 : next++;
    labels_.resize(n);
    for (int i = 0; i < n; ++i)
      labels_[newpos[i]] = labels[i];
    check_labels();

    inverse_.assign(n, -1);
    for (auto [x, y] : inverse_pairs) {
      bounds(x, n);
      bounds(y, n);
      inverse_[newpos[x]] = newpos[y];
    }
    for (int i = 0; i < n; ++i)
      if (inverse_[i] < 0)
        throw FormatError("inverse of '" + labels_[i] + "' missing");

    n_ = n;
    prod_.assign(static_cast<size_t>(n) * n, -1);
    for (auto [x, y, z] : products) {
      bounds(x, n);
      bounds(y, n);
      bounds(z, n);
      int &slot = prod_[static_cast<size_t>(newpos[x]) * n + newpos[y]];
      if (slot >= 0 && slot != newpos[z])
        throw FormatError("conflicting product entries for (" + labels_[newpos[x]] +
                          "," + labels_[newpos[y]] + ")");
      slot = newpos[z];
    }
    build_adjacency();
  }

  int size() const { return n_; }
  int unit() const { return 0; }

  bool in_domain(int x, int y) const {
    return prod_[static_cast<size_t>(x) * n_ + y] >= 0;
  }

  // -1 when (x,y) is not in D
  int product(int x, int y) const {
    return prod_[static_cast<size_t>(x) * n_ + y];
  }

  int product_checked(int x, int y) const {
    int z = product(x, y);
    if (z < 0)
      throw ArgumentError("product (" + labels_[x] + "," + labels_[y] +
                          ") is not in the domain");
    return z;
  }

  int inverse(int x) const { return inverse_[x]; }

  const std::string &label(int i) const { return labels_[i]; }

  int index_of(const std::string &s) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[i] == s)
        return i;
    return -1;
  }

  const std::vector<int> &right_of(int x) const { return right_[x]; }
  const std::vector<int> &left_of(int x) const { return left_[x]; }

  bool full_domain() const {
    for (int x = 0; x < n_; ++x)
      if (static_cast<int>(right_[x].size()) != n_)
        return false;
    return true;
  }

  long domain_size() const {
    long c = 0;
    for (int x = 0; x < n_; ++x)
      c += static_cast<long>(right_[x].size());
    return c;
  }

  // table mutations, used by validation tests
  Pregroup with_product_removed(int x, int y) const {
    Pregroup q = *this;
    q.prod_[static_cast<size_t>(x) * n_ + y] = -1;
    q.build_adjacency();
    return q;
  }

  Pregroup with_product_set(int x, int y, int z) const {
    Pregroup q = *this;
    q.prod_[static_cast<size_t>(x) * n_ + y] = z;
    q.build_adjacency();
    return q;
  }

  bool same_tables(const Pregroup &o) const {
    return labels_ == o.labels_ && inverse_ == o.inverse_ && prod_ == o.prod_;
  }

private:
  static void bounds(int i, int n) {
    if (i < 0 || i >= n)
      throw FormatError("dangling element index in pregroup tables");
  }

  void check_labels() const {
    std::set<std::string> seen;
    for (const std::string &s : labels_) {
      if (s.empty() || s.find(',') != std::string::npos)
        throw FormatError("invalid element label '" + s + "'");
      if (!seen.insert(s).second)
        throw FormatError("duplicate element label '" + s + "'");
    }
  }

  void build_adjacency() {
    right_.assign(n_, {});
    left_.assign(n_, {});
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (in_domain(x, y)) {
          right_[x].push_back(y);
          left_[y].push_back(x);
        }
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<int> inverse_;
  std::vector<int32_t> prod_;
  std::vector<std::vector<int>> right_, left_;

  friend class PregroupBuilder;
};

// Incremental construction used by the builders in constructions.hpp.
class PregroupBuilder {
public:
  explicit PregroupBuilder(int n) {
    pg_.n_ = n;
    pg_.labels_.assign(n, "");
    pg_.inverse_.assign(n, -1);
    pg_.prod_.assign(static_cast<size_t>(n) * n, -1);
  }

  void label(int i, std::string s) { pg_.labels_[i] = std::move(s); }
  void inverse(int x, int y) { pg_.inverse_[x] = y; }

  void product(int x, int y, int z) {
    int &slot = pg_.prod_[static_cast<size_t>(x) * pg_.n_ + y];
    if (slot >= 0 && slot != z)
      throw Error("builder: conflicting product at (" + pg_.labels_[x] + "," +
                  pg_.labels_[y] + ")");
    slot = z;
  }

  Pregroup finish() {
    for (int i = 0; i < pg_.n_; ++i)
      if (pg_.inverse_[i] < 0)
        throw Error("builder: inverse missing at index " + std::to_string(i));
    pg_.check_labels();
    pg_.build_adjacency();
    return std::move(pg_);
  }

private:
  Pregroup pg_;
};

struct PgSubgroup {
  const Pregroup *parent = nullptr;
  std::vector<int> members; // sorted

  bool contains(int e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
};

struct Violation {
  std::string rule;
  std::vector<std::string> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool truncated = false;

  bool ok() const { return violations.empty(); }
};

namespace detail {
inline void add_violation(ValidationReport &rep, const Pregroup &P,
                          std::string rule, std::vector<int> wit,
                          std::string detail) {
  if (rep.violations.size() >= 2000) {
    rep.truncated = true;
    return;
  }
  Violation v;
  v.rule = std::move(rule);
  for (int i : wit)
    v.witness.push_back(P.label(i));
  v.detail = std::move(detail);
  rep.violations.push_back(std::move(v));
}
} // namespace detail

// Checks the pregroup axioms (Pr1)-(Pr4), involutivity of the inverse, and
// the four derived identities (simplification, inverse-of-product,
// intercalation) as redundant sanity assertions.
inline ValidationReport validate_pregroup(const Pregroup &P) {
  const long pair_bound = 4096, quad_bound = 512;
  if (P.size() > pair_bound)
    throw ResourceError("validate_pregroup: pregroup too large");
  ValidationReport rep;
  int n = P.size();
  using detail::add_violation;

  // involution
  for (int x = 0; x < n; ++x)
    if (P.inverse(P.inverse(x)) != x)
      add_violation(rep, P, "involution", {x}, "(x^-1)^-1 != x");

  // (Pr1)
  for (int x = 0; x < n; ++x) {
    if (P.product(0, x) != x)
      add_violation(rep, P, "Pr1", {x}, "(1,x) missing or wrong");
    if (P.product(x, 0) != x)
      add_violation(rep, P, "Pr1", {x}, "(x,1) missing or wrong");
  }

  // (Pr2)
  for (int x = 0; x < n; ++x) {
    int xi = P.inverse(x);
    if (P.product(x, xi) != 0)
      add_violation(rep, P, "Pr2", {x, xi}, "(x,x^-1) missing or not unit");
    if (P.product(xi, x) != 0)
      add_violation(rep, P, "Pr2", {xi, x}, "(x^-1,x) missing or not unit");
  }

  // (Pr3): for (w,x),(x,y) in D, (wx,y) in D iff (w,xy) in D, with equal
  // products.
  for (int x = 0; x < n; ++x) {
    for (int w : P.left_of(x)) {
      int wx = P.product(w, x);
      for (int y : P.right_of(x)) {
        int xy = P.product(x, y);
        int lhs = P.product(wx, y);
        int rhs = P.product(w, xy);
        bool l = lhs >= 0, r = rhs >= 0;
        if (l != r)
          add_violation(rep, P, "Pr3", {w, x, y}, "one-sided associativity");
        else if (l && lhs != rhs)
          add_violation(rep, P, "Pr3", {w, x, y}, "(wx)y != w(xy)");
      }
    }
  }

  // (Pr4): for (w,x),(x,y),(y,z) in D, (w,xy) in D or (xy,z) in D.
  if (n <= quad_bound) {
    for (int x = 0; x < n; ++x) {
      for (int y : P.right_of(x)) {
        int xy = P.product(x, y);
        for (int w : P.left_of(x)) {
          if (P.in_domain(w, xy))
            continue;
          for (int z : P.right_of(y)) {
            if (!P.in_domain(xy, z)) {
              add_violation(rep, P, "Pr4", {w, x, y, z},
                            "neither (w,xy) nor (xy,z) in D");
              break;
            }
          }
        }
      }
    }
  } else {
    throw ResourceError("validate_pregroup: quadruple axiom bound exceeded");
  }

  // derived identities of the basic lemma
  for (int x = 0; x < n; ++x) {
    for (int y : P.right_of(x)) {
      int xy = P.product(x, y);
      int xi = P.inverse(x), yi = P.inverse(y);
      // simplification
      if (P.product(xi, xy) != y)
        add_violation(rep, P, "simplification", {x, y},
                      "(x^-1,xy) missing or != y");
      if (P.product(xy, yi) != x)
        add_violation(rep, P, "simplification", {x, y},
                      "(xy,y^-1) missing or != x");
      // inverse of a product
      if (P.product(yi, xi) != P.inverse(xy))
        add_violation(rep, P, "inverse-product", {x, y},
                      "(y^-1,x^-1) missing or != (xy)^-1");
    }
  }

  // intercalation: (x,a),(a^-1,y) in D => ((x,y) in D iff (xa,a^-1y) in D)
  for (int a = 0; a < n; ++a) {
    int ai = P.inverse(a);
    for (int x : P.left_of(a)) {
      int xa = P.product(x, a);
      for (int y : P.right_of(ai)) {
        int aiy = P.product(ai, y);
        int direct = P.product(x, y);
        int moved = P.product(xa, aiy);
        if ((direct >= 0) != (moved >= 0))
          add_violation(rep, P, "intercalation", {x, a, y},
                        "(x,y) and (xa,a^-1 y) disagree on membership");
        else if (direct >= 0 && direct != moved)
          add_violation(rep, P, "intercalation", {x, a, y},
                        "(xa)(a^-1 y) != xy");
      }
    }
  }

  return rep;
}

inline bool is_subgroup(const Pregroup &P, const std::vector<int> &members) {
  if (members.empty())
    return false;
  for (int x : members) {
    if (x < 0 || x >= P.size())
      return false;
    if (!std::binary_search(members.begin(), members.end(), P.inverse(x)))
      return false;
    for (int y : members) {
      int z = P.product(x, y);
      if (z < 0 || !std::binary_search(members.begin(), members.end(), z))
        return false;
    }
  }
  return std::binary_search(members.begin(), members.end(), P.unit());
}

// Closure of a subset inside P, or nullopt if some needed product is
// undefined.
inline std::optional<std::vector<int>>
closure_in_pregroup(const Pregroup &P, const std::vector<int> &seed) {
  std::vector<bool> in(P.size(), false);
  std::deque<int> todo;
  std::vector<int> mem;
  auto add = [&](int e) {
    if (!in[e]) {
      in[e] = true;
      todo.push_back(e);
    }
  };
  add(P.unit());
  for (int e : seed)
    add(e);
  while (!todo.empty()) {
    int a = todo.front();
    todo.pop_front();
    mem.push_back(a);
    add(P.inverse(a));
    for (int b : mem) {
      int ab = P.product(a, b);
      int ba = P.product(b, a);
      if (ab < 0 || ba < 0)
        return std::nullopt;
      add(ab);
      add(ba);
    }
  }
  std::sort(mem.begin(), mem.end());
  // all pairs must be in D, including those discovered late
  if (!is_subgroup(P, mem))
    return std::nullopt;
  return mem;
}

inline bool is_cyclic_element(const Pregroup &P, int x) {
  return P.in_domain(x, x) || x == P.unit();
}

// Materialises <x> for a cyclic element; the basic lemma guarantees that at
// every step one of the two one-sided products is defined.
inline std::optional<std::vector<int>> cyclic_closure(const Pregroup &P,
                                                      int x) {
  if (x == P.unit())
    return std::vector<int>{P.unit()};
  if (!P.in_domain(x, x))
    return std::nullopt;
  std::vector<int> pow{P.unit(), x};
  int cur = x;
  for (int steps = 0; steps <= P.size() + 1; ++steps) {
    int next = P.product(cur, x);
    if (next < 0)
      next = P.product(x, cur);
    if (next < 0)
      throw Error("cyclic closure stuck: tables violate the cyclicity lemma");
    if (next == P.unit()) {
      std::vector<int> mem = pow;
      std::sort(mem.begin(), mem.end());
      return mem;
    }
    pow.push_back(next);
    cur = next;
  }
  throw Error("cyclic closure did not terminate");
}

inline std::optional<int> element_order(const Pregroup &P, int x) {
  if (x == P.unit())
    return 1;
  if (!P.in_domain(x, x))
    return std::nullopt;
  auto mem = cyclic_closure(P, x);
  return static_cast<int>(mem->size());
}

// D(g) = { x : (g^-1, x, g) associates }
inline std::vector<int> conj_domain(const Pregroup &P, int g) {
  std::vector<int> out;
  int gi = P.inverse(g);
  for (int x = 0; x < P.size(); ++x) {
    int gx = P.product(gi, x);
    if (gx < 0 || !P.in_domain(x, g))
      continue;
    if (P.in_domain(gx, g))
      out.push_back(x);
  }
  return out;
}

inline bool in_conj_domain(const Pregroup &P, int x, int g) {
  int gi = P.inverse(g);
  int gx = P.product(gi, x);
  return gx >= 0 && P.in_domain(x, g) && P.in_domain(gx, g);
}

inline int conjugate_element(const Pregroup &P, int x, int g) {
  int gi = P.inverse(g);
  return P.product_checked(P.product_checked(gi, x), g);
}

struct PgConjugation {
  PgSubgroup image;
  std::vector<std::pair<int, int>> map; // (member, image), sorted by member
};

inline PgConjugation conjugate_subgroup(const Pregroup &P, const PgSubgroup &Q,
                                        int g) {
  for (int x : Q.members)
    if (!in_conj_domain(P, x, g))
      throw ArgumentError("conjugate_subgroup: member '" + P.label(x) +
                          "' is not in the conjugation domain of '" +
                          P.label(g) + "'");
  PgConjugation c;
  for (int x : Q.members)
    c.map.emplace_back(x, conjugate_element(P, x, g));
  for (auto &[x, y] : c.map)
    c.image.members.push_back(y);
  c.image.parent = &P;
  std::sort(c.image.members.begin(), c.image.members.end());
  if (!is_subgroup(P, c.image.members))
    throw Error("conjugate of a subgroup failed to be a subgroup");
  return c;
}

inline std::vector<PgSubgroup> subgroups_of_pregroup(const Pregroup &P) {
  if (P.size() > max_group_order())
    throw ResourceError("subgroups_of_pregroup: size bound exceeded");
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> todo;
  std::vector<int> triv{P.unit()};
  seen.insert(triv);
  todo.push_back(triv);
  while (!todo.empty()) {
    std::vector<int> H = todo.front();
    todo.pop_front();
    for (int g = 0; g < P.size(); ++g) {
      if (std::binary_search(H.begin(), H.end(), g))
        continue;
      std::vector<int> seed = H;
      seed.push_back(g);
      auto K = closure_in_pregroup(P, seed);
      if (K && seen.insert(*K).second)
        todo.push_back(std::move(*K));
    }
  }
  std::vector<std::vector<int>> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<PgSubgroup> out;
  for (auto &m : all)
    out.push_back(PgSubgroup{&P, std::move(m)});
  return out;
}

// Any group is a pregroup with full domain.
inline Pregroup group_as_pregroup(const FiniteGroup &G) {
  PregroupBuilder b(G.size());
  for (int i = 0; i < G.size(); ++i) {
    b.label(i, G.label(i));
    b.inverse(i, G.inv(i));
    for (int j = 0; j < G.size(); ++j)
      b.product(i, j, G.mult(i, j));
  }
  return b.finish();
}

// A subgroup of a pregroup regarded as a FiniteGroup via its right regular
// representation; positions follow the sorted member list.
struct PgGroupView {
  FiniteGroup group;
  std::vector<int> pg_of;               // group element index -> pregroup index
  std::unordered_map<int, int> view_of; // pregroup index -> group index
};

inline PgGroupView as_group(const Pregroup &P, const PgSubgroup &Q,
                            std::string name = "") {
  if (!is_subgroup(P, Q.members))
    throw ArgumentError("as_group: member set is not a subgroup of the pregroup");
  int k = static_cast<int>(Q.members.size());
  auto pos = [&](int e) {
    return static_cast<int>(std::lower_bound(Q.members.begin(), Q.members.end(),
                                             e) -
                            Q.members.begin());
  };
  std::vector<Perm> perms;
  for (int a : Q.members) {
    std::vector<uint16_t> im(k);
    for (int i = 0; i < k; ++i)
      im[i] = static_cast<uint16_t>(pos(P.product(Q.members[i], a)));
    perms.emplace_back(std::move(im));
  }
  PgGroupView v;
  v.group = FiniteGroup::from_generators(k, perms, std::move(name));
  if (v.group.size() != k)
    throw Error("regular representation closure mismatch");
  v.pg_of.resize(k);
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) {
    // the image of the unit position recovers the acting element
    int vi = v.group.index_of(perms[i]);
    v.pg_of[vi] = Q.members[i];
    v.view_of.emplace(Q.members[i], vi);
  }
  for (int vi = 0; vi < k; ++vi)
    labels[vi] = P.label(v.pg_of[vi]);
  v.group.set_labels(std::move(labels));
  return v;
}

} // namespace pg
