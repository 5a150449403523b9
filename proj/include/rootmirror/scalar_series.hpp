#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rootmirror/error.hpp"
#include "rootmirror/rational.hpp"

namespace rootmirror {

using Exponent = std::vector<long>;

inline long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

// Multivariate power series truncated at a total degree, with coefficients of
// type V (a Rational, a ring element or a Laurent block).
template <class V>
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(std::size_t nvars, long order) : nvars_(nvars), order_(order) {}

  std::size_t nvars() const { return nvars_; }
  long order() const { return order_; }
  const std::map<Exponent, V>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  const V* find(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? nullptr : &it->second;
  }

  // Terms beyond the truncation order are discarded.
  void add_term(const Exponent& e, const V& value) {
    if (e.size() != nvars_) fail(ErrorKind::Bounds, "exponent length does not match the series");
    if (total_degree(e) > order_ || value.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, value);
      return;
    }
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [e, v] : o.terms_) add_term(e, v);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [e, v] : o.terms_) add_term(e, -v);
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= s;
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  // True when every term has positive total degree.
  bool vanishes_at_origin() const { return !find(Exponent(nvars_, 0)); }

  template <class F>
  auto map_values(F&& f) const {
    using R = decltype(f(terms_.begin()->second));
    TruncatedSeries<R> out(nvars_, order_);
    for (const auto& [e, v] : terms_) out.add_term(e, f(v));
    return out;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    if (o.nvars_ != nvars_) fail(ErrorKind::Bounds, "series in different numbers of variables");
  }

  std::size_t nvars_ = 0;
  long order_ = 0;
  std::map<Exponent, V> terms_;
};

using ScalarSeries = TruncatedSeries<Rational>;

// Cauchy product with an arbitrary bilinear coefficient operation.
template <class A, class B, class Op>
auto series_product(const TruncatedSeries<A>& a, const TruncatedSeries<B>& b, Op&& op) {
  if (a.nvars() != b.nvars()) fail(ErrorKind::Bounds, "series in different numbers of variables");
  using R = decltype(op(a.terms().begin()->second, b.terms().begin()->second));
  TruncatedSeries<R> out(a.nvars(), std::min(a.order(), b.order()));
  Exponent sum(a.nvars());
  for (const auto& [ea, va] : a.terms()) {
    const long da = total_degree(ea);
    for (const auto& [eb, vb] : b.terms()) {
      if (da + total_degree(eb) > out.order()) continue;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      out.add_term(sum, op(va, vb));
    }
  }
  return out;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);

ScalarSeries scalar_constant(std::size_t nvars, long order, const Rational& c);
ScalarSeries scalar_variable(std::size_t nvars, long order, std::size_t i);
ScalarSeries scalar_monomial(std::size_t nvars, long order, const Exponent& e, const Rational& c = Rational(1));
ScalarSeries pow(const ScalarSeries& s, long n);
// exp(s) for s vanishing at the origin.
ScalarSeries exp(const ScalarSeries& s);
// The series with every variable outside `keep` set to zero.
ScalarSeries restrict_to(const ScalarSeries& s, const std::vector<bool>& keep);

// Substitutes variable i by subs[i]; every substitute must vanish at the
// origin so that truncation commutes with substitution.
template <class V>
TruncatedSeries<V> compose(const TruncatedSeries<V>& f, const std::vector<ScalarSeries>& subs) {
  if (subs.size() != f.nvars()) fail(ErrorKind::Bounds, "substitution needs one series per variable");
  if (subs.empty()) return f;
  const std::size_t nvars = subs.front().nvars();
  long order = f.order();
  for (const auto& s : subs) {
    if (s.nvars() != nvars) fail(ErrorKind::Bounds, "substitutes live in different variable sets");
    if (!s.vanishes_at_origin()) fail(ErrorKind::Domain, "substitute with a constant term");
    order = std::min(order, s.order());
  }
  // Powers of each substitute, computed on demand.
  std::vector<std::vector<ScalarSeries>> powers(subs.size());
  auto power = [&](std::size_t i, long n) -> const ScalarSeries& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(scalar_constant(nvars, order, Rational(1)));
    while (static_cast<long>(p.size()) <= n) p.push_back(p.back() * subs[i]);
    return p[static_cast<std::size_t>(n)];
  };
  TruncatedSeries<V> out(nvars, order);
  for (const auto& [e, v] : f.terms()) {
    ScalarSeries m = scalar_constant(nvars, order, Rational(1));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) m = m * power(i, e[i]);
    }
    for (const auto& [me, mc] : m.terms()) {
      V term = v;
      term *= mc;
      out.add_term(me, term);
    }
  }
  return out;
}

std::string exponent_str(const Exponent& e, const std::vector<std::string>& names);
std::string series_str(const ScalarSeries& s, const std::vector<std::string>& names);

}  // namespace rootmirror
