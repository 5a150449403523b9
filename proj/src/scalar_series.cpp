#include "rootmirror/scalar_series.hpp"

namespace rootmirror {

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  return series_product(a, b, [](const Rational& x, const Rational& y) { return x * y; });
}

ScalarSeries scalar_constant(std::size_t nvars, long order, const Rational& c) {
  return scalar_monomial(nvars, order, Exponent(nvars, 0), c);
}

ScalarSeries scalar_variable(std::size_t nvars, long order, std::size_t i) {
  if (i >= nvars) fail(ErrorKind::Bounds, "variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return scalar_monomial(nvars, order, e);
}

ScalarSeries scalar_monomial(std::size_t nvars, long order, const Exponent& e, const Rational& c) {
  ScalarSeries s(nvars, order);
  s.add_term(e, c);
  return s;
}

ScalarSeries pow(const ScalarSeries& s, long n) {
  if (n < 0) fail(ErrorKind::Domain, "negative power of a truncated series");
  ScalarSeries out = scalar_constant(s.nvars(), s.order(), Rational(1));
  for (long i = 0; i < n; ++i) out = out * s;
  return out;
}

ScalarSeries exp(const ScalarSeries& s) {
  if (!s.vanishes_at_origin()) fail(ErrorKind::Domain, "exponential of a series with a constant term");
  ScalarSeries out = scalar_constant(s.nvars(), s.order(), Rational(1));
  ScalarSeries term = out;
  for (long n = 1; n <= s.order(); ++n) {
    term = term * s;
    term *= Rational(1, n);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

ScalarSeries restrict_to(const ScalarSeries& s, const std::vector<bool>& keep) {
  if (keep.size() != s.nvars()) fail(ErrorKind::Bounds, "mask length does not match the series");
  ScalarSeries out(s.nvars(), s.order());
  for (const auto& [e, c] : s.terms()) {
    bool ok = true;
    for (std::size_t i = 0; i < e.size(); ++i) ok = ok && (keep[i] || e[i] == 0);
    if (ok) out.add_term(e, c);
  }
  return out;
}

std::string exponent_str(const Exponent& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < names.size() ? names[i] : "v" + std::to_string(i);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string series_str(const ScalarSeries& s, const std::vector<std::string>& names) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + exponent_str(e, names);
  }
  return out;
}

}  // namespace rootmirror
