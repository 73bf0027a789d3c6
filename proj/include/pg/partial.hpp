#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pg/errors.hpp"
#include "pg/pregroup.hpp"

namespace pg {

// A word over a pregroup: a finite sequence of element indices.
using Word = std::vector<int>;

inline std::string word_str(const Pregroup &P, const Word &w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ',';
    s += P.label(w[i]);
  }
  return s;
}

inline Word word_inverse(const Pregroup &P, const Word &w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back(P.inverse(*it));
  return r;
}

// The partial-group view of a pregroup: the multivariate domain contains the
// words all of whose contiguous subproducts land in P, and the product is
// the iterated one.
class PartialView {
public:
  explicit PartialView(const Pregroup &P) : P_(&P) {}

  const Pregroup &pregroup() const { return *P_; }

  // Interval dynamic programming; the table row prod[i][j] holds the product
  // x_i ... x_j when it lies in P.  A word is in the domain iff every cell is
  // defined, using the length-two case at each merge.
  bool in_domain(const Word &w) const {
    return interval_products(w).has_value();
  }

  int pi_product(const Word &w) const {
    auto tab = interval_products(w);
    if (!tab)
      throw ArgumentError("pi_product: word is not in the domain");
    int n = static_cast<int>(w.size());
    if (n == 0)
      return P_->unit();
    // bracketing independence across all splits
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = i; k < j; ++k) {
          int l = (*tab)[idx(i, k, n)], r = (*tab)[idx(k + 1, j, n)];
          if (P_->product(l, r) != (*tab)[idx(i, j, n)])
            throw Error("pi_product: bracketing-dependent tables");
        }
    return (*tab)[idx(0, n - 1, n)];
  }

private:
  static size_t idx(int i, int j, int n) {
    return static_cast<size_t>(i) * n + j;
  }

  std::optional<std::vector<int>> interval_products(const Word &w) const {
    int n = static_cast<int>(w.size());
    for (int x : w)
      if (x < 0 || x >= P_->size())
        throw ArgumentError("word letter out of range");
    std::vector<int> tab(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
      tab[idx(i, i, n)] = w[i];
    for (int len = 2; len <= n; ++len)
      for (int i = 0; i + len - 1 < n; ++i) {
        int j = i + len - 1;
        int u = tab[idx(i, j - 1, n)];
        int z = P_->product(u, w[j]);
        if (z < 0)
          return std::nullopt;
        tab[idx(i, j, n)] = z;
      }
    return tab;
  }

  const Pregroup *P_;
};

// Enumerates the domain words of length <= maxlen.  The callback receives
// each word; enumeration walks the prefix tree, pruning non-domain prefixes
// (domain words are closed under taking subwords).
inline void for_each_domain_word(const Pregroup &P, int maxlen,
                                 const std::function<void(const Word &)> &fn) {
  Word w;
  // suffix[i] = product of w[i..end]; a letter x extends the word iff every
  // suffix product multiplies into x within P.
  std::vector<int> suffix;
  std::function<void()> rec = [&]() {
    fn(w);
    if (static_cast<int>(w.size()) == maxlen)
      return;
    for (int x = 0; x < P.size(); ++x) {
      bool ok = true;
      std::vector<int> ns(suffix.size() + 1);
      for (size_t i = 0; i < suffix.size(); ++i) {
        int z = P.product(suffix[i], x);
        if (z < 0) {
          ok = false;
          break;
        }
        ns[i] = z;
      }
      if (!ok)
        continue;
      ns[suffix.size()] = x;
      w.push_back(x);
      std::vector<int> save = std::move(suffix);
      suffix = std::move(ns);
      rec();
      suffix = std::move(save);
      w.pop_back();
    }
  };
  rec();
}

struct PartialAxiomReport {
  std::vector<std::pair<std::string, Word>> violations;
  long words_checked = 0;

  bool ok() const { return violations.empty(); }
};

// Exhaustive check of (D1),(D2),(P1),(P2),(P3) plus the product-splitting
// and cancellation consequences, over all domain words of length <= maxlen.
inline PartialAxiomReport validate_partial_axioms(const PartialView &V,
                                                  int maxlen) {
  if (maxlen < 2)
    throw ArgumentError("validate_partial_axioms: maxlen must be >= 2");
  const Pregroup &P = V.pregroup();
  PartialAxiomReport rep;
  auto flag = [&](const std::string &rule, const Word &w) {
    if (rep.violations.size() < 500)
      rep.violations.emplace_back(rule, w);
  };

  // (D1): letters are domain words
  for (int x = 0; x < P.size(); ++x)
    if (!V.in_domain({x}))
      flag("D1", {x});
  // (P1): the product restricts to the identity on letters
  for (int x = 0; x < P.size(); ++x)
    if (V.pi_product({x}) != x)
      flag("P1", {x});

  for_each_domain_word(P, maxlen, [&](const Word &w) {
    ++rep.words_checked;
    int n = static_cast<int>(w.size());
    try {
      int pw = V.pi_product(w);

      // (D2) + Lemma consequences on splits
      for (int cut = 0; cut <= n; ++cut) {
        Word u(w.begin(), w.begin() + cut);
        Word v(w.begin() + cut, w.end());
        if (!V.in_domain(u) || !V.in_domain(v)) {
          flag("D2", w);
          continue;
        }
        int pu = V.pi_product(u), pv = V.pi_product(v);
        if (P.product(pu, pv) != pw)
          flag("product-splitting", w);
        // cancellation: Pi(u^-1 o u o v) = Pi(v), Pi(u o v o v^-1) = Pi(u)
        Word uiuv = word_inverse(P, u);
        uiuv.insert(uiuv.end(), w.begin(), w.end());
        if (!V.in_domain(uiuv) || V.pi_product(uiuv) != pv)
          flag("cancellation", w);
        Word uvvi = w;
        Word vi = word_inverse(P, v);
        uvvi.insert(uvvi.end(), vi.begin(), vi.end());
        if (!V.in_domain(uvvi) || V.pi_product(uvvi) != pu)
          flag("cancellation", w);
      }

      // (P2): replacing an inner block by its product stays in the domain
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Word mid(w.begin() + i, w.begin() + j + 1);
          Word repl(w.begin(), w.begin() + i);
          repl.push_back(V.pi_product(mid));
          repl.insert(repl.end(), w.begin() + j + 1, w.end());
          if (!V.in_domain(repl) || V.pi_product(repl) != pw)
            flag("P2", w);
        }

      // (P3): w^-1 o w is in the domain with trivial product
      Word wiw = word_inverse(P, w);
      wiw.insert(wiw.end(), w.begin(), w.end());
      if (!V.in_domain(wiw) || V.pi_product(wiw) != P.unit())
        flag("P3", w);
    } catch (const Error &) {
      // the iterated product is not well defined on these tables
      flag("P2", w);
    }
  });
  return rep;
}

// --- the nerve of the partial group -------------------------------------

// face operator, i in {0,...,n}
inline Word face(const PartialView &V, const Word &w, int i) {
  int n = static_cast<int>(w.size());
  if (i == 0)
    return Word(w.begin() + 1, w.end());
  if (i == n)
    return Word(w.begin(), w.end() - 1);
  Word r(w.begin(), w.begin() + i - 1);
  r.push_back(V.pregroup().product_checked(w[i - 1], w[i]));
  r.insert(r.end(), w.begin() + i + 1, w.end());
  return r;
}

// degeneracy operator, i in {0,...,n}: inserts the unit after position i
inline Word degeneracy(const PartialView &V, const Word &w, int i) {
  Word r(w.begin(), w.begin() + i);
  r.push_back(V.pregroup().unit());
  r.insert(r.end(), w.begin() + i, w.end());
  return r;
}

struct NerveReport {
  std::vector<long> simplex_counts; // |D_k| for k = 0..n
  std::vector<std::pair<std::string, Word>> violations;
  bool ok() const { return violations.empty(); }
};

// Counts the simplices of dimension <= n and verifies the simplicial
// identities on each of them.
inline NerveReport nerve_census(const PartialView &V, int n) {
  if (n > 4)
    throw ResourceError("nerve_census: dimension bound is 4");
  const Pregroup &P = V.pregroup();
  NerveReport rep;
  rep.simplex_counts.assign(n + 1, 0);
  auto flag = [&](const std::string &rule, const Word &w) {
    if (rep.violations.size() < 200)
      rep.violations.emplace_back(rule, w);
  };

  for_each_domain_word(P, n, [&](const Word &w) {
    int k = static_cast<int>(w.size());
    ++rep.simplex_counts[k];

    // faces land in the domain
    for (int i = 0; i <= k && k >= 1; ++i)
      if (!V.in_domain(face(V, w, i)))
        flag("face-domain", w);
    // degeneracies land in the domain
    for (int i = 0; i <= k; ++i)
      if (!V.in_domain(degeneracy(V, w, i)))
        flag("degeneracy-domain", w);

    // d_i d_j = d_{j-1} d_i for i < j
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i) {
        if (k < 2)
          continue;
        Word a = face(V, face(V, w, j), i);
        Word b = face(V, face(V, w, i), j - 1);
        if (a != b)
          flag("dd", w);
      }
    // s_i s_j = s_{j+1} s_i for i <= j
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i) {
        Word a = degeneracy(V, degeneracy(V, w, j), i);
        Word b = degeneracy(V, degeneracy(V, w, i), j + 1);
        if (a != b)
          flag("ss", w);
      }
    // mixed identities on s_j(w)
    for (int j = 0; j <= k; ++j) {
      Word sw = degeneracy(V, w, j);
      for (int i = 0; i <= k + 1; ++i) {
        Word a = face(V, sw, i);
        Word b;
        if (i < j)
          b = degeneracy(V, face(V, w, i), j - 1);
        else if (i == j || i == j + 1)
          b = w;
        else
          b = degeneracy(V, face(V, w, i - 1), j);
        if (a != b)
          flag("ds", w);
      }
    }
  });
  return rep;
}

// --- presentations -------------------------------------------------------

struct PresLetter {
  int gen = 0;
  bool inv = false;

  friend bool operator==(const PresLetter &, const PresLetter &) = default;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<PresLetter>> relators;
};

// The defining presentation of the universal group: one generator per
// element, one relator m(x,y) y^-1 x^-1 per domain pair (pairs involving the
// unit are redundant and omitted), plus the relator killing the unit
// generator.
inline Presentation universal_presentation(const Pregroup &P) {
  Presentation pres;
  pres.generators.reserve(P.size());
  for (int i = 0; i < P.size(); ++i)
    pres.generators.push_back(P.label(i));
  pres.relators.push_back({PresLetter{P.unit(), false}});
  for (int x = 1; x < P.size(); ++x)
    for (int y : P.right_of(x)) {
      if (y == P.unit())
        continue;
      int z = P.product(x, y);
      pres.relators.push_back({PresLetter{z, false}, PresLetter{y, true},
                               PresLetter{x, true}});
    }
  return pres;
}

} // namespace pg
