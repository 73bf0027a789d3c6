#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pg/errors.hpp"

namespace pg {

// A permutation of {0,...,degree-1}, stored as its image array.
class Perm {
public:
  Perm() = default;

  explicit Perm(unsigned degree) : images_(degree) {
    for (unsigned i = 0; i < degree; ++i)
      images_[i] = static_cast<uint16_t>(i);
  }

  explicit Perm(std::vector<uint16_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (uint16_t p : images_) {
      if (p >= images_.size() || seen[p])
        throw FormatError("permutation image array is not a bijection");
      seen[p] = true;
    }
  }

  static Perm from_ints(const std::vector<long> &v) {
    std::vector<uint16_t> im;
    im.reserve(v.size());
    for (long x : v) {
      if (x < 0 || x >= static_cast<long>(v.size()))
        throw FormatError("permutation image out of range");
      im.push_back(static_cast<uint16_t>(x));
    }
    return Perm(std::move(im));
  }

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }

  uint16_t operator[](unsigned i) const { return images_[i]; }

  const std::vector<uint16_t> &images() const { return images_; }

  // Left-to-right composition: (p * q) applies p first, then q.
  Perm operator*(const Perm &q) const {
    std::vector<uint16_t> im(images_.size());
    for (unsigned i = 0; i < images_.size(); ++i)
      im[i] = q.images_[images_[i]];
    Perm r;
    r.images_ = std::move(im);
    return r;
  }

  Perm inverse() const {
    std::vector<uint16_t> im(images_.size());
    for (unsigned i = 0; i < images_.size(); ++i)
      im[images_[i]] = static_cast<uint16_t>(i);
    Perm r;
    r.images_ = std::move(im);
    return r;
  }

  bool is_identity() const {
    for (unsigned i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  friend auto operator<=>(const Perm &, const Perm &) = default;

  std::string str() const {
    std::string s = "[";
    for (unsigned i = 0; i < images_.size(); ++i) {
      if (i)
        s += ' ';
      s += std::to_string(images_[i]);
    }
    return s + "]";
  }

private:
  std::vector<uint16_t> images_;
};

struct PermHash {
  size_t operator()(const Perm &p) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace pg
