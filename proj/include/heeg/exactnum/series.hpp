#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "heeg/errors.hpp"
#include "heeg/exactnum/rational.hpp"

namespace heeg {

// Dense truncated power series sum_{n < order} c_n t^n.
template <class R>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::size_t order, R zero = R(0)) : c_(order, zero), zero_(zero) {}
  PowerSeries(std::vector<R> coeffs, std::size_t order, R zero = R(0)) : c_(std::move(coeffs)), zero_(zero) {
    c_.resize(order, zero_);
  }

  std::size_t order() const { return c_.size(); }
  const R& operator[](std::size_t n) const { return c_.at(n); }
  R& operator[](std::size_t n) { return c_.at(n); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& zero() const { return zero_; }

  PowerSeries truncate(std::size_t order) const {
    PowerSeries r = *this;
    r.c_.resize(std::min(order, c_.size()), zero_);
    return r;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t n = 0; n < r.order(); ++n) r.c_[n] = a.c_[n] + b.c_[n];
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t n = 0; n < r.order(); ++n) r.c_[n] = a.c_[n] - b.c_[n];
    return r;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()), a.zero_);
    const std::size_t B = r.order();
    for (std::size_t i = 0; i < B; ++i) {
      if (a.c_[i] == a.zero_) continue;
      for (std::size_t j = 0; i + j < B; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend PowerSeries operator*(const R& s, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& x : r.c_) x = s * x;
    return r;
  }

  // t^k * this, keeping the order.
  PowerSeries shift_up(std::size_t k) const {
    PowerSeries r(order(), zero_);
    for (std::size_t n = 0; n + k < order(); ++n) r.c_[n + k] = c_[n];
    return r;
  }
  // this / t^k; requires the first k coefficients to vanish. Order drops by k.
  PowerSeries shift_down(std::size_t k) const {
    if (k > order()) throw std::invalid_argument("shift_down beyond order");
    for (std::size_t n = 0; n < k; ++n) {
      if (!(c_[n] == zero_)) throw std::invalid_argument("shift_down of a series with low-order terms");
    }
    return PowerSeries(std::vector<R>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()), order() - k, zero_);
  }

  PowerSeries derivative() const {
    if (order() == 0) return *this;
    PowerSeries r(order() - 1, zero_);
    for (std::size_t n = 1; n < order(); ++n) r.c_[n - 1] = R(static_cast<long>(n)) * c_[n];
    return r;
  }

  // Multiplicative inverse; needs an invertible constant term.
  PowerSeries inverse() const {
    if (order() == 0) return *this;
    if (c_[0] == zero_) throw DivisionByZero("power series inverse with zero constant term");
    PowerSeries r(order(), zero_);
    R inv0 = R(1) / c_[0];
    r.c_[0] = inv0;
    for (std::size_t n = 1; n < order(); ++n) {
      R s = zero_;
      for (std::size_t k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
      r.c_[n] = -(s * inv0);
    }
    return r;
  }

  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * b.inverse(); }

  // sum c_n x^n by Horner.
  template <class T>
  T evaluate(const T& x, const T& zero) const {
    T acc = zero;
    for (std::size_t n = order(); n-- > 0;) acc = acc * x + T(c_[n]);
    return acc;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<R> c_;
  R zero_{};
};

using RationalSeries = PowerSeries<Rational>;

// c_n t^n -> c_n t^(n+1)/(n+1), constant of integration 0; order B -> B + 1.
RationalSeries series_integrate_formal(const RationalSeries& s);

}  // namespace heeg
