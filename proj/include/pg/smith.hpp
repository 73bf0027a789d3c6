#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pg/errors.hpp"
#include "pg/partial.hpp"

namespace pg {
namespace detail {

// Sign-and-magnitude big integer with just the operations the Smith normal
// form needs.
class BigInt {
public:
  BigInt() = default;

  BigInt(long long v) {
    if (v < 0) {
      neg_ = true;
      v = -v;
    }
    while (v) {
      mag_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
      v >>= 32;
    }
  }

  bool is_zero() const { return mag_.empty(); }
  int sign() const { return mag_.empty() ? 0 : (neg_ ? -1 : 1); }

  BigInt negated() const {
    BigInt r = *this;
    if (!r.mag_.empty())
      r.neg_ = !r.neg_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
  }

  static int cmp_mag(const BigInt &a, const BigInt &b) {
    if (a.mag_.size() != b.mag_.size())
      return a.mag_.size() < b.mag_.size() ? -1 : 1;
    for (size_t i = a.mag_.size(); i-- > 0;)
      if (a.mag_[i] != b.mag_[i])
        return a.mag_[i] < b.mag_[i] ? -1 : 1;
    return 0;
  }

  static int cmp(const BigInt &a, const BigInt &b) {
    if (a.sign() != b.sign())
      return a.sign() < b.sign() ? -1 : 1;
    int c = cmp_mag(a, b);
    return a.sign() >= 0 ? c : -c;
  }

  friend bool operator==(const BigInt &a, const BigInt &b) {
    return cmp(a, b) == 0;
  }
  friend bool operator<(const BigInt &a, const BigInt &b) {
    return cmp(a, b) < 0;
  }

  friend BigInt operator+(const BigInt &a, const BigInt &b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.neg_ = a.neg_;
      r.mag_ = add_mag(a.mag_, b.mag_);
      r.trim();
      return r;
    }
    int c = cmp_mag(a, b);
    BigInt r;
    if (c == 0)
      return r;
    if (c > 0) {
      r.mag_ = sub_mag(a.mag_, b.mag_);
      r.neg_ = a.neg_;
    } else {
      r.mag_ = sub_mag(b.mag_, a.mag_);
      r.neg_ = b.neg_;
    }
    r.trim();
    return r;
  }

  friend BigInt operator-(const BigInt &a, const BigInt &b) {
    return a + b.negated();
  }

  friend BigInt operator*(const BigInt &a, const BigInt &b) {
    BigInt r;
    if (a.is_zero() || b.is_zero())
      return r;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (size_t i = 0; i < a.mag_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.mag_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.mag_[i]) * b.mag_[j] +
                       r.mag_[i + j] + carry;
        r.mag_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.mag_.size();
      while (carry) {
        uint64_t cur = r.mag_[k] + carry;
        r.mag_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.neg_ = a.neg_ != b.neg_;
    r.trim();
    return r;
  }

  // truncated division: quotient rounds toward zero
  static void divmod(const BigInt &a, const BigInt &b, BigInt &q, BigInt &r) {
    if (b.is_zero())
      throw Error("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    // long division on 32-bit limbs via binary shift-and-subtract
    BigInt ab = a.abs(), bb = b.abs();
    if (cmp_mag(ab, bb) < 0) {
      r = a;
      return;
    }
    size_t bits = ab.mag_.size() * 32;
    BigInt rem;
    std::vector<uint32_t> qm(ab.mag_.size(), 0);
    for (size_t i = bits; i-- > 0;) {
      rem = rem.shl1();
      if (ab.bit(i)) {
        if (rem.mag_.empty())
          rem.mag_.push_back(1);
        else
          rem.mag_[0] |= 1;
      }
      if (cmp_mag(rem, bb) >= 0) {
        rem = rem - bb;
        qm[i / 32] |= (1u << (i % 32));
      }
    }
    q.mag_ = std::move(qm);
    q.trim();
    q.neg_ = !q.is_zero() && (a.neg_ != b.neg_);
    r = std::move(rem);
    r.trim();
    r.neg_ = !r.is_zero() && a.neg_;
  }

  long long to_ll() const {
    unsigned long long v = 0;
    if (mag_.size() > 2)
      throw ResourceError("BigInt value exceeds 64 bits");
    for (size_t i = mag_.size(); i-- > 0;)
      v = (v << 32) | mag_[i];
    if (v > 0x7fffffffffffffffull)
      throw ResourceError("BigInt value exceeds 64 bits");
    return neg_ ? -static_cast<long long>(v) : static_cast<long long>(v);
  }

private:
  BigInt shl1() const {
    BigInt r;
    r.neg_ = neg_;
    r.mag_.assign(mag_.size() + 1, 0);
    for (size_t i = 0; i < mag_.size(); ++i) {
      r.mag_[i] |= mag_[i] << 1;
      r.mag_[i + 1] = mag_[i] >> 31;
    }
    r.trim();
    return r;
  }

  bool bit(size_t i) const {
    size_t limb = i / 32;
    return limb < mag_.size() && ((mag_[limb] >> (i % 32)) & 1u);
  }

  void trim() {
    while (!mag_.empty() && mag_.back() == 0)
      mag_.pop_back();
    if (mag_.empty())
      neg_ = false;
  }

  static std::vector<uint32_t> add_mag(const std::vector<uint32_t> &a,
                                       const std::vector<uint32_t> &b) {
    std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t cur = carry;
      if (i < a.size())
        cur += a[i];
      if (i < b.size())
        cur += b[i];
      r[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    return r;
  }

  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t> &a,
                                       const std::vector<uint32_t> &b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int64_t cur = static_cast<int64_t>(a[i]) - borrow -
                    (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(cur);
    }
    return r;
  }

  bool neg_ = false;
  std::vector<uint32_t> mag_; // little-endian 32-bit limbs
};

} // namespace detail

// Diagonal of the Smith normal form of an integer matrix, with the
// divisibility chain d1 | d2 | ... .  Pivoting always picks a remaining
// entry of minimal absolute value, which keeps coefficients small.
inline std::vector<long long>
smith_normal_form(std::vector<std::vector<long long>> mat_ll) {
  using detail::BigInt;
  size_t rows = mat_ll.size();
  size_t cols = rows ? mat_ll[0].size() : 0;
  std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      m[i][j] = BigInt(mat_ll[i][j]);

  std::vector<long long> diag;
  size_t t = 0;
  while (t < rows && t < cols) {
    // locate a minimal nonzero pivot in the remaining submatrix
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (m[i][j].is_zero())
          continue;
        if (!found ||
            BigInt::cmp_mag(m[i][j], m[pi][pj]) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found)
      break;
    std::swap(m[t], m[pi]);
    for (size_t i = 0; i < rows; ++i)
      std::swap(m[i][t], m[i][pj]);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column t
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t].is_zero())
          continue;
        BigInt q, r;
        BigInt::divmod(m[i][t], m[t][t], q, r);
        for (size_t j = t; j < cols; ++j)
          m[i][j] = m[i][j] - q * m[t][j];
        if (!m[i][t].is_zero()) {
          std::swap(m[t], m[i]); // remainder is smaller; retry
          dirty = true;
        }
      }
      // clear row t
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j].is_zero())
          continue;
        BigInt q, r;
        BigInt::divmod(m[t][j], m[t][t], q, r);
        for (size_t i = t; i < rows; ++i)
          m[i][j] = m[i][j] - q * m[i][t];
        if (!m[t][j].is_zero()) {
          for (size_t i = 0; i < rows; ++i)
            std::swap(m[i][t], m[i][j]);
          dirty = true;
        }
      }
    }

    // enforce divisibility of the remaining block by the pivot
    bool redo = false;
    for (size_t i = t + 1; i < rows && !redo; ++i)
      for (size_t j = t + 1; j < cols && !redo; ++j) {
        BigInt q, r;
        BigInt::divmod(m[i][j], m[t][t], q, r);
        if (!r.is_zero()) {
          for (size_t jj = t; jj < cols; ++jj)
            m[t][jj] = m[t][jj] + m[i][jj];
          redo = true;
        }
      }
    if (redo)
      continue; // same corner, new pivot hunt

    diag.push_back(m[t][t].abs().to_ll());
    ++t;
  }
  return diag;
}

struct AbelianInvariants {
  long long rank = 0;
  std::vector<long long> torsion; // each >= 2, divisibility chain

  friend bool operator==(const AbelianInvariants &,
                         const AbelianInvariants &) = default;

  std::string str() const {
    std::string s = "rank " + std::to_string(rank) + ", torsion [";
    for (size_t i = 0; i < torsion.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(torsion[i]);
    }
    return s + "]";
  }
};

// Rank and torsion of the abelianisation of a presented group, via the
// Smith normal form of the relator exponent matrix.
inline AbelianInvariants abelian_invariants(const Presentation &pres) {
  size_t g = pres.generators.size();
  std::vector<std::vector<long long>> mat;
  mat.reserve(pres.relators.size());
  for (const auto &rel : pres.relators) {
    std::vector<long long> row(g, 0);
    for (const PresLetter &l : rel)
      row[l.gen] += l.inv ? -1 : 1;
    mat.push_back(std::move(row));
  }
  std::vector<long long> diag = smith_normal_form(std::move(mat));
  AbelianInvariants inv;
  long long nonzero = 0;
  for (long long d : diag)
    if (d != 0) {
      ++nonzero;
      if (d >= 2)
        inv.torsion.push_back(d);
    }
  inv.rank = static_cast<long long>(g) - nonzero;
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

} // namespace pg
