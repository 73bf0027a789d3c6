#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pg/constructions.hpp"
#include "pg/errors.hpp"
#include "pg/partial.hpp"
#include "pg/pregroup.hpp"

namespace pg {

// --- reduction ---------------------------------------------------------------

struct ReductionStep {
  int position;
  int x, y; // merged pair
  Word result;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

// Leftmost-first reduction to P-reduced form.  Each step applies one
// defining relator, so the image in the universal group is unchanged.
inline std::pair<Word, ReductionTrace> reduce(const Pregroup &P, Word w) {
  for (int x : w)
    if (x < 0 || x >= P.size())
      throw ArgumentError("reduce: word letter out of range");
  ReductionTrace trace;
  bool again = true;
  while (again && w.size() >= 2) {
    again = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      int z = P.product(w[i], w[i + 1]);
      if (z >= 0) {
        ReductionStep st{static_cast<int>(i), w[i], w[i + 1], {}};
        w[i] = z;
        w.erase(w.begin() + i + 1);
        st.result = w;
        trace.steps.push_back(std::move(st));
        again = true;
        break;
      }
    }
  }
  return {std::move(w), std::move(trace)};
}

inline bool is_reduced(const Pregroup &P, const Word &w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (P.in_domain(w[i], w[i + 1]))
      return false;
  return true;
}

// --- equality in the universal group ------------------------------------------

struct EqualityCertificate {
  enum class Verdict { equal, unequal } verdict;
  enum class Reason { none, length_mismatch, no_intercalation } reason =
      Reason::none;
  Word reduced1, reduced2;
  // when equal and the reduced length is n: the elements a_1,...,a_{n-1}
  // with y_i = (a_{i-1}^-1 x_i) a_i and a_0 = a_n = 1
  std::vector<int> intercalators;

  bool equal() const { return verdict == Verdict::equal; }
};

namespace detail {
// the single-letter word (1) and the empty word both denote the identity
inline Word unit_normalized(const Pregroup &P, Word w) {
  if (w.size() == 1 && w[0] == P.unit())
    w.clear();
  return w;
}
} // namespace detail

// Decides w1 = w2 in U(P).  Both words are reduced; words of different
// reduced length differ, and equal-length reduced words are compared by the
// intercalation dynamic program R_0 = {1},
// R_i = { a : exists a' in R_{i-1} with (a'^-1, x_i), (a'^-1 x_i, a) in D and
// (a'^-1 x_i) a = y_i }, equal iff 1 in R_n.
inline EqualityCertificate equal_in_universal(const Pregroup &P,
                                              const Word &w1, const Word &w2) {
  EqualityCertificate cert;
  cert.reduced1 = detail::unit_normalized(P, reduce(P, w1).first);
  cert.reduced2 = detail::unit_normalized(P, reduce(P, w2).first);
  const Word &x = cert.reduced1, &y = cert.reduced2;
  if (x.size() != y.size()) {
    cert.verdict = EqualityCertificate::Verdict::unequal;
    cert.reason = EqualityCertificate::Reason::length_mismatch;
    return cert;
  }
  int n = static_cast<int>(x.size());
  std::vector<std::vector<int>> parent(n + 1,
                                       std::vector<int>(P.size(), -2));
  parent[0][P.unit()] = -1;
  for (int i = 1; i <= n; ++i) {
    for (int ap = 0; ap < P.size(); ++ap) {
      if (parent[i - 1][ap] == -2)
        continue;
      int u = P.product(P.inverse(ap), x[i - 1]);
      if (u < 0)
        continue;
      for (int a : P.right_of(u))
        if (P.product(u, a) == y[i - 1] && parent[i][a] == -2)
          parent[i][a] = ap;
    }
  }
  if (parent[n][P.unit()] == -2) {
    cert.verdict = EqualityCertificate::Verdict::unequal;
    cert.reason = EqualityCertificate::Reason::no_intercalation;
    return cert;
  }
  cert.verdict = EqualityCertificate::Verdict::equal;
  if (n > 0) {
    std::vector<int> chain(n + 1);
    chain[n] = P.unit();
    for (int i = n; i > 0; --i)
      chain[i - 1] = parent[i][chain[i]];
    cert.intercalators.assign(chain.begin() + 1, chain.begin() + n);
  }
  return cert;
}

// --- normal form oracle for amalgams ------------------------------------------

struct AmalgamLetter {
  int factor; // 0 = A, 1 = B
  int elem;

  friend bool operator==(const AmalgamLetter &, const AmalgamLetter &) =
      default;
};

struct AmalgamNF {
  int c = 0; // element of C
  std::vector<AmalgamLetter> reps;

  friend bool operator==(const AmalgamNF &, const AmalgamNF &) = default;
};

// Canonical form c * r_1 * ... * r_k in A *_C B: c in C and the r_j
// alternating right-coset representatives outside C.  Independent of the
// pregroup machinery; transversals are the least element of each coset.
class AmalgamOracle {
public:
  explicit AmalgamOracle(const AmalgamData &d) : d_(&d) {
    c_of_a_.assign(d.A.size(), -1);
    c_of_b_.assign(d.B.size(), -1);
    for (int c = 0; c < d.C.size(); ++c) {
      c_of_a_[d.phi_a[c]] = c;
      c_of_b_[d.phi_b[c]] = c;
    }
    std::vector<int> ima = d.phi_a, imb = d.phi_b;
    std::sort(ima.begin(), ima.end());
    std::sort(imb.begin(), imb.end());
    cosets_a_ = right_cosets(d.A, ima);
    cosets_b_ = right_cosets(d.B, imb);
  }

  AmalgamNF normal_form(const std::vector<AmalgamLetter> &w) const {
    const FiniteGroup &A = d_->A, &B = d_->B;
    // fold into a reduced alternating sequence
    std::vector<AmalgamLetter> acc;
    for (AmalgamLetter l : w) {
      if (l.factor != 0 && l.factor != 1)
        throw ArgumentError("amalgam oracle: bad factor tag");
      if (l.elem < 0 || l.elem >= (l.factor == 0 ? A.size() : B.size()))
        throw ArgumentError("amalgam oracle: element outside claimed factor");
      push(acc, l);
    }
    // peel coset representatives from the right
    AmalgamNF nf;
    if (acc.empty())
      return nf;
    if (acc.size() == 1 && in_c(acc[0])) {
      nf.c = c_of(acc[0]);
      return nf;
    }
    int carry = d_->C.identity();
    for (size_t j = acc.size(); j-- > 0;) {
      AmalgamLetter cur = acc[j];
      cur.elem = mult(cur, embed(cur.factor, carry));
      const RightCosets &rc = cur.factor == 0 ? cosets_a_ : cosets_b_;
      int rep = rc.rep_of[cur.elem];
      int head = cur.factor == 0
                     ? A.mult(cur.elem, A.inv(rep))
                     : B.mult(cur.elem, B.inv(rep)); // in phi(C)
      nf.reps.push_back(AmalgamLetter{cur.factor, rep});
      carry = cur.factor == 0 ? c_of_a_[head] : c_of_b_[head];
      if (carry < 0)
        throw Error("amalgam oracle: coset head outside C");
    }
    std::reverse(nf.reps.begin(), nf.reps.end());
    nf.c = carry;
    return nf;
  }

  bool equal(const std::vector<AmalgamLetter> &w1,
             const std::vector<AmalgamLetter> &w2) const {
    return normal_form(w1) == normal_form(w2);
  }

private:
  bool in_c(AmalgamLetter l) const {
    return (l.factor == 0 ? c_of_a_[l.elem] : c_of_b_[l.elem]) >= 0;
  }
  int c_of(AmalgamLetter l) const {
    return l.factor == 0 ? c_of_a_[l.elem] : c_of_b_[l.elem];
  }
  int embed(int factor, int c) const {
    return factor == 0 ? d_->phi_a[c] : d_->phi_b[c];
  }
  int mult(AmalgamLetter l, int other) const {
    return l.factor == 0 ? d_->A.mult(l.elem, other)
                         : d_->B.mult(l.elem, other);
  }

  void push(std::vector<AmalgamLetter> &acc, AmalgamLetter l) const {
    if (acc.empty()) {
      acc.push_back(l);
      return;
    }
    AmalgamLetter &top = acc.back();
    if (top.factor == l.factor) {
      top.elem = mult(top, l.elem);
      if (acc.size() >= 2 && in_c(top)) {
        int c = c_of(top);
        acc.pop_back();
        AmalgamLetter &prev = acc.back();
        prev.elem = mult(prev, embed(prev.factor, c));
      }
      return;
    }
    if (in_c(l)) {
      top.elem = mult(top, embed(top.factor, c_of(l)));
      return;
    }
    if (acc.size() == 1 && in_c(top)) {
      int c = c_of(top);
      acc[0] = AmalgamLetter{l.factor,
                             l.factor == 0
                                 ? d_->A.mult(d_->phi_a[c], l.elem)
                                 : d_->B.mult(d_->phi_b[c], l.elem)};
      return;
    }
    acc.push_back(l);
  }

  const AmalgamData *d_;
  std::vector<int> c_of_a_, c_of_b_;
  RightCosets cosets_a_, cosets_b_;
};

// letters of a word over the amalgam pregroup, for cross-validation
inline std::vector<AmalgamLetter>
amalgam_letters(const BuiltAmalgam &built, const Word &w) {
  std::vector<AmalgamLetter> out;
  out.reserve(w.size());
  for (int x : w) {
    if (built.a_of[x] >= 0)
      out.push_back(AmalgamLetter{0, built.a_of[x]});
    else
      out.push_back(AmalgamLetter{1, built.b_of[x]});
  }
  return out;
}

// --- Britton normal form oracle for HNN towers --------------------------------

struct HnnLetter {
  bool stable = false;
  int base_elem = 0; // when !stable
  int t_index = 0;   // when stable
  int eps = 1;       // +1 or -1

  static HnnLetter base(int e) { return HnnLetter{false, e, 0, 1}; }
  static HnnLetter t(int i, int eps) { return HnnLetter{true, 0, i, eps}; }
};

using HnnWord = std::vector<HnnLetter>;

struct HnnStableLetter {
  std::vector<int> p_members, q_members;
  std::vector<int> phi; // aligned with p_members
};

struct HnnTowerData {
  FiniteGroup base;
  std::vector<HnnStableLetter> letters;
};

struct HnnSyllable {
  int t = 0, eps = 1, rep = 0;
  friend bool operator==(const HnnSyllable &, const HnnSyllable &) = default;
};

struct HnnNF {
  int head = 0;
  std::vector<HnnSyllable> tail;
  friend bool operator==(const HnnNF &, const HnnNF &) = default;
};

// Canonical form x_0 t^{e_1} r_1 ... t^{e_n} r_n: pinch-free, and each r_j a
// least-element representative of the right coset P_i r (after t_i^-1) or
// Q_i r (after t_i).
class HnnOracle {
public:
  explicit HnnOracle(HnnTowerData d) : d_(std::move(d)) {
    int n = d_.base.size();
    for (const HnnStableLetter &l : d_.letters) {
      phi_.emplace_back(n, -1);
      phi_inv_.emplace_back(n, -1);
      for (size_t k = 0; k < l.p_members.size(); ++k) {
        phi_.back()[l.p_members[k]] = l.phi[k];
        phi_inv_.back()[l.phi[k]] = l.p_members[k];
      }
      p_cosets_.push_back(right_cosets(d_.base, l.p_members));
      q_cosets_.push_back(right_cosets(d_.base, l.q_members));
    }
  }

  const HnnTowerData &data() const { return d_; }

  HnnNF normal_form(const HnnWord &w) const {
    const FiniteGroup &S = d_.base;
    // interleaved representation: x_0 t^{e_1} x_1 ... t^{e_n} x_n
    std::vector<int> xs{S.identity()};
    std::vector<std::pair<int, int>> ts; // (index, eps)
    for (const HnnLetter &l : w) {
      if (l.stable) {
        ts.emplace_back(l.t_index, l.eps);
        xs.push_back(S.identity());
      } else {
        xs.back() = S.mult(xs.back(), l.base_elem);
      }
    }
    // pinch until stable
    bool pinched = true;
    while (pinched) {
      pinched = false;
      for (size_t j = 0; j + 1 < ts.size(); ++j) {
        auto [i1, e1] = ts[j];
        auto [i2, e2] = ts[j + 1];
        if (i1 != i2 || e1 != -e2)
          continue;
        int mid = xs[j + 1];
        int image = -1;
        if (e1 == -1 && phi_[i1][mid] >= 0)
          image = phi_[i1][mid]; // t^-1 u t = phi(u)
        else if (e1 == 1 && phi_inv_[i1][mid] >= 0)
          image = phi_inv_[i1][mid]; // t v t^-1 = phi^-1(v)
        if (image < 0)
          continue;
        int merged = S.mult(S.mult(xs[j], image), xs[j + 2]);
        xs.erase(xs.begin() + j, xs.begin() + j + 3);
        xs.insert(xs.begin() + j, merged);
        ts.erase(ts.begin() + j, ts.begin() + j + 2);
        pinched = true;
        break;
      }
    }
    // right-to-left coset normalisation
    for (size_t j = ts.size(); j-- > 0;) {
      auto [i, e] = ts[j];
      const RightCosets &rc = e == -1 ? p_cosets_[i] : q_cosets_[i];
      int xj = xs[j + 1];
      int rep = rc.rep_of[xj];
      int u = S.mult(xj, S.inv(rep)); // in P_i resp. Q_i
      int pushed = e == -1 ? phi_[i][u] : phi_inv_[i][u];
      xs[j + 1] = rep;
      xs[j] = S.mult(xs[j], pushed);
    }
    HnnNF nf;
    nf.head = xs[0];
    for (size_t j = 0; j < ts.size(); ++j)
      nf.tail.push_back(HnnSyllable{ts[j].first, ts[j].second, xs[j + 1]});
    return nf;
  }

  bool equal(const HnnWord &w1, const HnnWord &w2) const {
    return normal_form(w1) == normal_form(w2);
  }

private:
  HnnTowerData d_;
  std::vector<std::vector<int>> phi_, phi_inv_;
  std::vector<RightCosets> p_cosets_, q_cosets_;
};

inline HnnTowerData hnn_tower_of(const LSData &d) {
  HnnTowerData t;
  t.base = d.S;
  for (const LsGenerator &g : d.gens)
    t.letters.push_back(HnnStableLetter{g.p_members, g.q_members, g.phi});
  return t;
}

// letters of a word over the Leary-Stancu pregroup, for cross-validation
inline HnnWord hnn_letters(const BuiltLs &built, const Word &w) {
  HnnWord out;
  for (int x : w) {
    const auto &sym = built.syms[x];
    if (sym.kind == 0) {
      out.push_back(HnnLetter::base(sym.left));
      continue;
    }
    int rep = sym.kind == 1 ? built.a_cosets[sym.i].reps[sym.rep_pos]
                            : built.b_cosets[sym.i].reps[sym.rep_pos];
    if (sym.left != built.data.S.identity())
      out.push_back(HnnLetter::base(sym.left));
    out.push_back(HnnLetter::t(sym.i, sym.kind == 1 ? 1 : -1));
    if (rep != built.data.S.identity())
      out.push_back(HnnLetter::base(rep));
  }
  return out;
}

// --- conjugation chains -------------------------------------------------------

struct AssociationCertificate {
  int conjugator;
  int element;
  int left_product; // g^-1 x
  int result;       // g^-1 x g
};

struct ConjugationChain {
  std::vector<int> elements;    // x_0, ..., x_k
  std::vector<int> conjugators; // g_0, ..., g_{k-1}
  std::vector<AssociationCertificate> certificates;
};

// the conjugate of x by a word, if it lies in P (decided via the word
// problem against every candidate)
inline std::optional<int> conjugate_into_pregroup(const Pregroup &P,
                                                  const Word &g, int x) {
  Word w = word_inverse(P, g);
  w.push_back(x);
  w.insert(w.end(), g.begin(), g.end());
  for (int p = 0; p < P.size(); ++p)
    if (equal_in_universal(P, w, Word{p}).equal())
      return p;
  return std::nullopt;
}

// Builds the step-by-step chain promised by the finite-order conjugation
// lemma: if x has finite order and its conjugate by the given word lies in
// P, every intermediate conjugate lies in P and each triple associates.
inline ConjugationChain conjugation_chain(const Pregroup &P, int x,
                                          const Word &g) {
  if (!is_cyclic_element(P, x))
    throw ArgumentError("conjugation_chain: element does not have finite order");
  Word red = reduce(P, g).first;
  red = detail::unit_normalized(P, red);
  if (!conjugate_into_pregroup(P, red, x))
    throw HypothesisError("conjugation_chain: conjugate does not lie in P");
  ConjugationChain chain;
  chain.elements.push_back(x);
  int cur = x;
  for (int gi : red) {
    if (!in_conj_domain(P, cur, gi))
      throw Error("conjugation chain broke: tables violate the lemma");
    int gix = P.product_checked(P.inverse(gi), cur);
    int next = P.product_checked(gix, gi);
    chain.certificates.push_back(
        AssociationCertificate{gi, cur, gix, next});
    chain.conjugators.push_back(gi);
    chain.elements.push_back(next);
    cur = next;
  }
  return chain;
}

struct SubgroupChain {
  std::vector<PgSubgroup> subgroups;
  std::vector<int> conjugators;
};

inline SubgroupChain subgroup_conjugation_chain(const Pregroup &P,
                                                const PgSubgroup &Q,
                                                const Word &g) {
  if (!is_subgroup(P, Q.members))
    throw ArgumentError("subgroup_conjugation_chain: not a subgroup");
  Word red = detail::unit_normalized(P, reduce(P, g).first);
  for (int x : Q.members)
    if (!conjugate_into_pregroup(P, red, x))
      throw HypothesisError(
          "subgroup_conjugation_chain: conjugate of '" + P.label(x) +
          "' does not lie in P");
  SubgroupChain chain;
  chain.subgroups.push_back(Q);
  PgSubgroup cur = Q;
  for (int gi : red) {
    PgConjugation c = conjugate_subgroup(P, cur, gi);
    chain.conjugators.push_back(gi);
    chain.subgroups.push_back(c.image);
    cur = chain.subgroups.back();
  }
  return chain;
}

// --- random word rewriting (for the equal-length property) --------------------

// product fibers: all domain pairs with a given product
inline std::vector<std::vector<std::pair<int, int>>>
product_fibers(const Pregroup &P) {
  std::vector<std::vector<std::pair<int, int>>> fib(P.size());
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.right_of(x))
      fib[P.product(x, y)].emplace_back(x, y);
  return fib;
}

} // namespace pg
