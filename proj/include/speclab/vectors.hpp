#ifndef SPECLAB_VECTORS_HPP
#define SPECLAB_VECTORS_HPP

// Finitely supported bi-infinite sequences.  Coordinates outside the stored
// window are exactly zero; operations report their exact output window so no
// truncation happens silently at this layer.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "speclab/numeric.hpp"

namespace speclab {

class FinSuppVector {
 public:
  FinSuppVector() = default;

  FinSuppVector(std::int64_t lo, std::vector<cxd> coeffs) : lo_(lo), c_(std::move(coeffs)) {}

  static FinSuppVector zero() { return FinSuppVector(); }

  static FinSuppVector basis(std::int64_t j, cxd scale = 1.0) {
    return FinSuppVector(j, {scale});
  }

  bool empty() const { return c_.empty(); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(c_.size()) - 1; }

  cxd at(std::int64_t j) const {
    const std::int64_t idx = j - lo_;
    if (idx < 0 || idx >= static_cast<std::int64_t>(c_.size())) return 0.0;
    return c_[static_cast<std::size_t>(idx)];
  }

  void set(std::int64_t j, cxd v) {
    if (c_.empty()) {
      lo_ = j;
      c_.push_back(v);
      return;
    }
    if (j < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - j), cxd(0.0));
      lo_ = j;
    } else if (j > hi()) {
      c_.resize(static_cast<std::size_t>(j - lo_ + 1), cxd(0.0));
    }
    c_[static_cast<std::size_t>(j - lo_)] = v;
  }

  double norm_sq() const {
    double s = 0.0;
    for (const cxd& v : c_) s += std::norm(v);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  double norm_l1() const {
    double s = 0.0;
    for (const cxd& v : c_) s += std::abs(v);
    return s;
  }

  // <x, y> = sum x_j conj(y_j)
  cxd inner(const FinSuppVector& y) const {
    const std::int64_t a = std::max(lo_, y.lo());
    const std::int64_t b = std::min(hi(), y.hi());
    cxd s = 0.0;
    for (std::int64_t j = a; j <= b; ++j) s += at(j) * std::conj(y.at(j));
    return s;
  }

  FinSuppVector& operator*=(cxd s) {
    for (cxd& v : c_) v *= s;
    return *this;
  }

  friend FinSuppVector operator*(cxd s, FinSuppVector v) {
    v *= s;
    return v;
  }

  friend FinSuppVector operator+(const FinSuppVector& x, const FinSuppVector& y) {
    if (x.empty()) return y;
    if (y.empty()) return x;
    const std::int64_t lo = std::min(x.lo(), y.lo());
    const std::int64_t hi = std::max(x.hi(), y.hi());
    std::vector<cxd> c(static_cast<std::size_t>(hi - lo + 1), cxd(0.0));
    for (std::int64_t j = lo; j <= hi; ++j) c[static_cast<std::size_t>(j - lo)] = x.at(j) + y.at(j);
    return FinSuppVector(lo, std::move(c));
  }

  friend FinSuppVector operator-(const FinSuppVector& x, const FinSuppVector& y) {
    return x + (cxd(-1.0) * y);
  }

  // Window translated by k: (shifted v)_j = v_{j - k}.
  FinSuppVector shifted(std::int64_t k) const { return FinSuppVector(lo_ + k, c_); }

  // Index reflection: (reflected v)_j = v_{-j}.
  FinSuppVector reflected() const {
    std::vector<cxd> c(c_.rbegin(), c_.rend());
    return FinSuppVector(-hi(), std::move(c));
  }

  // Drops exactly-zero coordinates at both ends of the window.
  FinSuppVector trimmed() const {
    std::size_t a = 0, b = c_.size();
    while (a < b && c_[a] == cxd(0.0)) ++a;
    while (b > a && c_[b - 1] == cxd(0.0)) --b;
    if (a == b) return FinSuppVector();
    return FinSuppVector(lo_ + static_cast<std::int64_t>(a),
                         std::vector<cxd>(c_.begin() + a, c_.begin() + b));
  }

 private:
  std::int64_t lo_ = 0;
  std::vector<cxd> c_;
};

// Element of l2(Z) (+) l2(Z) for the block construction.
struct BlockVector {
  FinSuppVector top;
  FinSuppVector bottom;

  double norm_sq() const { return top.norm_sq() + bottom.norm_sq(); }
  double norm() const { return std::sqrt(norm_sq()); }

  cxd inner(const BlockVector& y) const { return top.inner(y.top) + bottom.inner(y.bottom); }

  friend BlockVector operator+(const BlockVector& x, const BlockVector& y) {
    return {x.top + y.top, x.bottom + y.bottom};
  }
  friend BlockVector operator-(const BlockVector& x, const BlockVector& y) {
    return {x.top - y.top, x.bottom - y.bottom};
  }
};

}  // namespace speclab

#endif  // SPECLAB_VECTORS_HPP
