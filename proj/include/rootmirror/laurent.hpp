#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <string>

#include "rootmirror/error.hpp"
#include "rootmirror/rational.hpp"
#include "rootmirror/ring.hpp"
#include "rootmirror/sectors.hpp"

namespace rootmirror {

// Finite Laurent polynomial in z with coefficients of type V. A block is either
// complete (every coefficient known) or exact only for exponents >= floor.
template <class V>
class BasicLaurent {
 public:
  BasicLaurent() = default;

  static BasicLaurent term(int exponent, const V& value) {
    BasicLaurent b;
    b.add_term(exponent, value);
    return b;
  }

  const std::map<int, V>& coeffs() const { return coeffs_; }
  bool complete() const { return !floor_.has_value(); }
  bool is_zero() const { return coeffs_.empty() && complete(); }
  std::optional<int> floor() const { return floor_; }

  // Lower end of the window in which the block is exact.
  int z_min() const {
    if (floor_) return *floor_;
    return coeffs_.empty() ? 0 : coeffs_.begin()->first;
  }
  int z_max() const { return coeffs_.empty() ? z_min() - 1 : coeffs_.rbegin()->first; }

  bool known(int exponent) const { return !floor_ || exponent >= *floor_; }

  const V* find(int exponent) const {
    if (!known(exponent)) {
      fail(ErrorKind::Window, "coefficient of z^" + std::to_string(exponent) + " lies below the expansion window (z_min = " +
                                  std::to_string(*floor_) + ")");
    }
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? nullptr : &it->second;
  }

  void add_term(int exponent, const V& value) {
    if (value.is_zero()) return;
    auto it = coeffs_.find(exponent);
    if (it == coeffs_.end()) {
      coeffs_.emplace(exponent, value);
      return;
    }
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  // Marks the block exact only for exponents >= z_min and drops anything below.
  void restrict_window(int z_min) {
    bool dropped = false;
    for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first < z_min;) {
      it = coeffs_.erase(it);
      dropped = true;
    }
    if (floor_) {
      floor_ = std::max(*floor_, z_min);
    } else if (dropped) {
      floor_ = z_min;
    }
  }

  BasicLaurent truncated(int z_min) const {
    BasicLaurent out = *this;
    out.restrict_window(z_min);
    return out;
  }

  // Same block viewed as exact only from z_min upward, even when nothing is dropped.
  BasicLaurent windowed(int z_min) const {
    BasicLaurent out = truncated(z_min);
    out.floor_ = out.floor_ ? std::max(*out.floor_, z_min) : z_min;
    return out;
  }

  BasicLaurent shifted(int dz) const {
    BasicLaurent out;
    for (const auto& [e, v] : coeffs_) out.coeffs_.emplace(e + dz, v);
    if (floor_) out.floor_ = *floor_ + dz;
    return out;
  }

  BasicLaurent& operator+=(const BasicLaurent& o) {
    for (const auto& [e, v] : o.coeffs_) add_term(e, v);
    merge_floor(o.floor_);
    restrict_window(floor_.value_or(INT_MIN));
    return *this;
  }
  BasicLaurent& operator-=(const BasicLaurent& o) {
    for (const auto& [e, v] : o.coeffs_) add_term(e, -v);
    merge_floor(o.floor_);
    restrict_window(floor_.value_or(INT_MIN));
    return *this;
  }
  BasicLaurent& operator*=(const Rational& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [e, v] : coeffs_) v *= s;
    return *this;
  }
  friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
  friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
  friend BasicLaurent operator*(BasicLaurent a, const Rational& s) { return a *= s; }
  BasicLaurent operator-() const {
    BasicLaurent out = map_values([](const V& v) { return -v; });
    return out;
  }

  template <class F>
  BasicLaurent map_values(F&& f) const {
    BasicLaurent out;
    for (const auto& [e, v] : coeffs_) out.add_term(e, f(v));
    out.floor_ = floor_;
    return out;
  }

  friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) {
    return a.floor_ == b.floor_ && a.coeffs_ == b.coeffs_;
  }

  void merge_floor(std::optional<int> other) {
    if (!other) return;
    floor_ = floor_ ? std::max(*floor_, *other) : *other;
  }
  void set_floor(std::optional<int> f) { floor_ = f; }

 private:
  std::map<int, V> coeffs_;
  std::optional<int> floor_;
};

namespace detail {

template <class V>
std::optional<int> known_top(const BasicLaurent<V>& b) {
  if (!b.coeffs().empty()) {
    int top = b.coeffs().rbegin()->first;
    if (b.floor()) top = std::max(top, *b.floor() - 1);
    return top;
  }
  if (b.floor()) return *b.floor() - 1;
  return std::nullopt;
}

}  // namespace detail

// Cauchy product with an arbitrary bilinear coefficient operation. Windows are
// tracked so the product is exact exactly where both inputs determine it.
template <class V, class W, class Op>
auto laurent_product(const BasicLaurent<V>& a, const BasicLaurent<W>& b, Op&& op) {
  using R = decltype(op(a.coeffs().begin()->second, b.coeffs().begin()->second));
  BasicLaurent<R> out;
  for (const auto& [ea, va] : a.coeffs()) {
    for (const auto& [eb, vb] : b.coeffs()) out.add_term(ea + eb, op(va, vb));
  }
  std::optional<int> floor;
  if (a.floor()) {
    if (auto tb = detail::known_top(b)) floor = *a.floor() + *tb;
  }
  if (b.floor()) {
    if (auto ta = detail::known_top(a)) floor = floor ? std::max(*floor, *b.floor() + *ta) : *b.floor() + *ta;
  }
  if (floor) out.restrict_window(*floor);
  out.merge_floor(floor);
  return out;
}

using LaurentBlock = BasicLaurent<StateVector>;
using RingLaurent = BasicLaurent<RingElement>;

inline LaurentBlock operator*(const LaurentBlock& a, const LaurentBlock& b) {
  return laurent_product(a, b, [](const StateVector& x, const StateVector& y) { return x * y; });
}

inline RingLaurent operator*(const RingLaurent& a, const RingLaurent& b) {
  return laurent_product(a, b, [](const RingElement& x, const RingElement& y) { return x * y; });
}

// Ambient ring-valued series acting on every sector of a state-valued block.
inline LaurentBlock act(const RingLaurent& a, const LaurentBlock& b) {
  return laurent_product(a, b, [](const RingElement& x, const StateVector& y) { return y.act(x); });
}

inline LaurentBlock place_in_sector(const RingLaurent& a, const SectorLabel& sector) {
  LaurentBlock out;
  for (const auto& [e, v] : a.coeffs()) out.add_term(e, StateVector(sector, v));
  out.set_floor(a.floor());
  return out;
}

// Equality on the common window of two blocks.
template <class V>
bool agree(const BasicLaurent<V>& a, const BasicLaurent<V>& b) {
  int lo = INT_MIN;
  if (a.floor()) lo = std::max(lo, *a.floor());
  if (b.floor()) lo = std::max(lo, *b.floor());
  auto restricted = [lo](const BasicLaurent<V>& x) {
    std::map<int, V> m;
    for (const auto& [e, v] : x.coeffs()) {
      if (e >= lo) m.emplace(e, v);
    }
    return m;
  };
  return restricted(a) == restricted(b);
}

std::string block_str(const LaurentBlock& b);
std::string block_str(const RingLaurent& b);

}  // namespace rootmirror
