#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pg/errors.hpp"
#include "pg/perm.hpp"

namespace pg {

// A finite permutation group with its elements fully enumerated.  Elements
// are kept in lexicographic order of their image arrays, which puts the
// identity at index 0 and makes every derived computation reproducible.
class FiniteGroup {
public:
  FiniteGroup() = default;

  static FiniteGroup from_generators(unsigned degree, std::vector<Perm> gens,
                                     std::string name = "") {
    for (const Perm &g : gens)
      if (g.degree() != degree)
        throw FormatError("generator degree mismatch in group '" + name + "'");

    std::set<Perm> closure;
    std::deque<Perm> todo;
    Perm id(degree);
    closure.insert(id);
    todo.push_back(id);
    for (const Perm &g : gens)
      if (closure.insert(g).second)
        todo.push_back(g);

    const long bound = max_group_order();
    while (!todo.empty()) {
      Perm cur = todo.front();
      todo.pop_front();
      for (const Perm &g : gens) {
        Perm prod = cur * g;
        if (closure.insert(prod).second) {
          if (static_cast<long>(closure.size()) > bound)
            throw ResourceError("group closure exceeds order bound " +
                                std::to_string(bound));
          todo.push_back(std::move(prod));
        }
      }
    }

    FiniteGroup G;
    G.degree_ = degree;
    G.name_ = std::move(name);
    G.generators_ = std::move(gens);
    G.elements_.assign(closure.begin(), closure.end());
    G.finish();
    return G;
  }

  unsigned degree() const { return degree_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::string &name() const { return name_; }
  const std::vector<Perm> &generators() const { return generators_; }
  const Perm &element(int i) const { return elements_[i]; }

  int index_of(const Perm &p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }

  bool contains(const Perm &p) const { return index_.count(p) != 0; }

  // index 0 is always the identity
  int identity() const { return 0; }

  int mult(int a, int b) const { return mult_[a * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int x, int g) const { return mult(mult(inv_[g], x), g); }

  int element_order(int a) const {
    int o = 1, x = a;
    while (x != 0) {
      x = mult(x, a);
      ++o;
    }
    return o;
  }

  const std::string &label(int i) const { return labels_[i]; }

  int index_of_label(const std::string &s) const {
    auto it = label_index_.find(s);
    return it == label_index_.end() ? -1 : it->second;
  }

  void set_label(const Perm &p, const std::string &s) {
    int i = index_of(p);
    if (i < 0)
      throw FormatError("labelled permutation is not a group element");
    labels_[i] = s;
    rebuild_label_index();
  }

  void set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != size())
      throw FormatError("label list length mismatch");
    labels_ = std::move(labels);
    rebuild_label_index();
  }

  bool same_elements(const FiniteGroup &other) const {
    return degree_ == other.degree_ && elements_ == other.elements_;
  }

private:
  void finish() {
    int n = size();
    index_.clear();
    for (int i = 0; i < n; ++i)
      index_.emplace(elements_[i], i);
    if (!elements_.empty() && !elements_[0].is_identity())
      throw Error("internal: identity is not the least element");
    mult_.assign(static_cast<size_t>(n) * n, 0);
    inv_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
      inv_[a] = index_.at(elements_[a].inverse());
      for (int b = 0; b < n; ++b)
        mult_[a * n + b] = index_.at(elements_[a] * elements_[b]);
    }
    labels_.resize(n);
    for (int i = 0; i < n; ++i)
      labels_[i] = i == 0 ? "1" : "g" + std::to_string(i);
    rebuild_label_index();
  }

  void rebuild_label_index() {
    label_index_.clear();
    for (int i = 0; i < size(); ++i) {
      if (!label_index_.emplace(labels_[i], i).second)
        throw FormatError("duplicate element label '" + labels_[i] + "'");
    }
  }

  unsigned degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> mult_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_index_;
};

// A subgroup is a sorted list of element indices of its parent group.
struct Subgroup {
  const FiniteGroup *parent = nullptr;
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }

  bool contains(int e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
};

inline bool is_subgroup_members(const FiniteGroup &G,
                                const std::vector<int> &members) {
  if (members.empty())
    return false;
  for (int a : members) {
    if (a < 0 || a >= G.size())
      return false;
    if (!std::binary_search(members.begin(), members.end(), G.inv(a)))
      return false;
    for (int b : members)
      if (!std::binary_search(members.begin(), members.end(), G.mult(a, b)))
        return false;
  }
  return std::binary_search(members.begin(), members.end(), G.identity());
}

inline std::vector<int> subgroup_closure(const FiniteGroup &G,
                                         std::vector<int> seed) {
  std::vector<bool> in(G.size(), false);
  std::deque<int> todo;
  auto add = [&](int e) {
    if (!in[e]) {
      in[e] = true;
      todo.push_back(e);
    }
  };
  add(G.identity());
  for (int e : seed)
    add(e);
  std::vector<int> mem;
  while (!todo.empty()) {
    int a = todo.front();
    todo.pop_front();
    mem.push_back(a);
    add(G.inv(a));
    for (int b : mem) {
      add(G.mult(a, b));
      add(G.mult(b, a));
    }
  }
  std::sort(mem.begin(), mem.end());
  return mem;
}

inline Subgroup whole_group(const FiniteGroup &G) {
  Subgroup H;
  H.parent = &G;
  H.members.resize(G.size());
  for (int i = 0; i < G.size(); ++i)
    H.members[i] = i;
  return H;
}

inline Subgroup trivial_subgroup(const FiniteGroup &G) {
  return Subgroup{&G, {G.identity()}};
}

// All subgroups, found by breadth-first closure over one-generator
// extensions.  Every subgroup is reached because any generating chain
// 1 < <g1> < <g1,g2> < ... passes only through subgroups.
inline std::vector<Subgroup> subgroups(const FiniteGroup &G) {
  if (G.size() > max_group_order())
    throw ResourceError("subgroup enumeration bound exceeded");
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> todo;
  std::vector<int> triv{G.identity()};
  seen.insert(triv);
  todo.push_back(triv);
  while (!todo.empty()) {
    std::vector<int> H = todo.front();
    todo.pop_front();
    for (int g = 0; g < G.size(); ++g) {
      if (std::binary_search(H.begin(), H.end(), g))
        continue;
      std::vector<int> seed = H;
      seed.push_back(g);
      std::vector<int> K = subgroup_closure(G, std::move(seed));
      if (seen.insert(K).second)
        todo.push_back(std::move(K));
    }
  }
  std::vector<std::vector<int>> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto &m : all)
    out.push_back(Subgroup{&G, std::move(m)});
  return out;
}

inline std::vector<int> conjugate_members(const FiniteGroup &G,
                                          const std::vector<int> &members,
                                          int g) {
  std::vector<int> out;
  out.reserve(members.size());
  for (int x : members)
    out.push_back(G.conj(x, g));
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup normalizer(const FiniteGroup &G, const Subgroup &H) {
  if (H.parent != &G || !is_subgroup_members(G, H.members))
    throw ArgumentError("normalizer: H is not a subgroup of G");
  Subgroup N;
  N.parent = &G;
  for (int g = 0; g < G.size(); ++g)
    if (conjugate_members(G, H.members, g) == H.members)
      N.members.push_back(g);
  return N;
}

inline bool is_prime(long p) {
  if (p < 2)
    return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

// p-part of n
inline long p_part(long n, long p) {
  long q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

inline bool is_p_power(long n, long p) { return p_part(n, p) == n; }

// Smallest prime dividing n; 0 for n = 1.
inline long smallest_prime_factor(long n) {
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return d;
  return n > 1 ? n : 0;
}

// One Sylow p-subgroup, grown by the normalizer climb: a p-subgroup that is
// not yet of full p-order always extends by a p-element of its normalizer.
inline Subgroup sylow_subgroup(const FiniteGroup &G, long p) {
  if (!is_prime(p))
    throw ArgumentError("sylow_subgroup: p must be prime");
  long target = p_part(G.size(), p);
  std::vector<int> H{G.identity()};
  while (static_cast<long>(H.size()) < target) {
    Subgroup cur{&G, H};
    Subgroup N = normalizer(G, cur);
    bool grown = false;
    for (int x : N.members) {
      if (std::binary_search(H.begin(), H.end(), x))
        continue;
      if (!is_p_power(G.element_order(x), p))
        continue;
      std::vector<int> seed = H;
      seed.push_back(x);
      std::vector<int> K = subgroup_closure(G, std::move(seed));
      if (is_p_power(static_cast<long>(K.size()), p)) {
        H = std::move(K);
        grown = true;
        break;
      }
    }
    if (!grown)
      throw Error("internal: Sylow climb stalled");
  }
  return Subgroup{&G, std::move(H)};
}

// O_p(G): intersection of all Sylow p-subgroups (they are all conjugate).
inline Subgroup p_core(const FiniteGroup &G, long p) {
  Subgroup S = sylow_subgroup(G, p);
  std::vector<int> core = S.members;
  for (int g = 0; g < G.size() && core.size() > 1; ++g) {
    std::vector<int> conj = conjugate_members(G, S.members, g);
    std::vector<int> inter;
    std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(),
                          std::back_inserter(inter));
    core = std::move(inter);
  }
  return Subgroup{&G, std::move(core)};
}

// A map between subgroups given element-by-element; source and target may
// live in different parent groups.
struct GroupHom {
  Subgroup source;
  Subgroup target;
  std::vector<int> images; // aligned with source.members

  int image_of(int src_elem) const {
    auto it = std::lower_bound(source.members.begin(), source.members.end(),
                               src_elem);
    if (it == source.members.end() || *it != src_elem)
      throw ArgumentError("GroupHom: element outside source");
    return images[it - source.members.begin()];
  }
};

inline bool is_homomorphism(const GroupHom &h) {
  const FiniteGroup &A = *h.source.parent;
  const FiniteGroup &B = *h.target.parent;
  if (h.images.size() != h.source.members.size())
    return false;
  for (int y : h.images)
    if (y < 0 || y >= B.size())
      return false;
  for (size_t i = 0; i < h.source.members.size(); ++i)
    for (size_t j = 0; j < h.source.members.size(); ++j) {
      int xy = A.mult(h.source.members[i], h.source.members[j]);
      if (h.image_of(xy) != B.mult(h.images[i], h.images[j]))
        return false;
    }
  return true;
}

inline bool is_injective_hom(const GroupHom &h) {
  if (!is_homomorphism(h))
    return false;
  std::set<int> im(h.images.begin(), h.images.end());
  return im.size() == h.images.size();
}

// The direct product A x B acting on the disjoint union of the two point
// sets.
inline FiniteGroup direct_product(const FiniteGroup &A, const FiniteGroup &B,
                                  std::string name = "") {
  unsigned d = A.degree() + B.degree();
  std::vector<Perm> gens;
  for (const Perm &g : A.generators()) {
    std::vector<uint16_t> im(d);
    for (unsigned i = 0; i < A.degree(); ++i)
      im[i] = g[i];
    for (unsigned i = 0; i < B.degree(); ++i)
      im[A.degree() + i] = static_cast<uint16_t>(A.degree() + i);
    gens.emplace_back(std::move(im));
  }
  for (const Perm &g : B.generators()) {
    std::vector<uint16_t> im(d);
    for (unsigned i = 0; i < A.degree(); ++i)
      im[i] = static_cast<uint16_t>(i);
    for (unsigned i = 0; i < B.degree(); ++i)
      im[A.degree() + i] = static_cast<uint16_t>(A.degree() + g[i]);
    gens.emplace_back(std::move(im));
  }
  if (name.empty())
    name = A.name() + "x" + B.name();
  return FiniteGroup::from_generators(d, std::move(gens), std::move(name));
}

// A subgroup repackaged as a standalone FiniteGroup on the same points,
// with index maps in both directions.
struct SubgroupView {
  FiniteGroup group;
  std::vector<int> parent_of; // view element index -> parent element index
  std::unordered_map<int, int> view_of; // parent index -> view index
};

inline SubgroupView sub_as_group(const FiniteGroup &G,
                                 const std::vector<int> &members,
                                 std::string name = "") {
  std::vector<Perm> perms;
  perms.reserve(members.size());
  for (int m : members)
    perms.push_back(G.element(m));
  SubgroupView v;
  v.group = FiniteGroup::from_generators(G.degree(), perms, std::move(name));
  if (v.group.size() != static_cast<int>(members.size()))
    throw ArgumentError("sub_as_group: member set is not closed");
  v.parent_of.resize(members.size());
  for (int m : members) {
    int vi = v.group.index_of(G.element(m));
    v.parent_of[vi] = m;
    v.view_of.emplace(m, vi);
  }
  std::vector<std::string> labels(members.size());
  for (int i = 0; i < v.group.size(); ++i)
    labels[i] = G.label(v.parent_of[i]);
  v.group.set_labels(std::move(labels));
  return v;
}

} // namespace pg
