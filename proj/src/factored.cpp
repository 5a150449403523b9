#include "rootmirror/factored.hpp"

#include <sstream>

#include "rootmirror/error.hpp"

namespace rootmirror {

FactoredZFunction::FactoredZFunction(const RingPtr& ring) : prefactor_(RingElement::one(ring)) {}

FactoredZFunction& FactoredZFunction::times_z(int power) {
  z_power_ += power;
  return *this;
}

FactoredZFunction& FactoredZFunction::times_scalar(const Rational& s) {
  scalar_ *= s;
  return *this;
}

FactoredZFunction& FactoredZFunction::times_class(const RingElement& cls) {
  prefactor_ = prefactor_ * cls;
  return *this;
}

FactoredZFunction& FactoredZFunction::times_factor(const RingElement& cls, const Rational& a, int exponent) {
  if (exponent != 1 && exponent != -1) fail(ErrorKind::Domain, "linear factors carry exponent +1 or -1");
  if (exponent == -1 && a.is_zero()) {
    fail(ErrorKind::NilpotentDivision, "inverse of the nilpotent class " + cls.str() + " is undefined");
  }
  if (cls.ring() != ring()) fail(ErrorKind::RingMismatch, "factor over a different ring");
  factors_.push_back({cls, a, exponent});
  return *this;
}

FactoredZFunction& FactoredZFunction::operator*=(const FactoredZFunction& o) {
  z_power_ += o.z_power_;
  scalar_ *= o.scalar_;
  prefactor_ = prefactor_ * o.prefactor_;
  factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
  return *this;
}

int FactoredZFunction::lowest_exponent() const {
  int low = z_power_;
  for (const auto& f : factors_) {
    if (f.exponent == 1) {
      if (f.cls.is_zero()) low += 1;
    } else {
      const auto n = nilpotency_index(f.cls);
      if (!n) fail(ErrorKind::Domain, "inverse factor with non-nilpotent class " + f.cls.str() + " needs a z_min");
      low -= *n;
    }
  }
  return low;
}

namespace {

std::string factor_body(const LinearFactor& f) {
  std::ostringstream os;
  std::string zpart;
  if (f.a == Rational(1)) {
    zpart = "z";
  } else if (f.a == Rational(-1)) {
    zpart = "-z";
  } else if (!f.a.is_zero()) {
    zpart = f.a.str() + "*z";
  }
  if (f.cls.is_zero()) return zpart.empty() ? "0" : zpart;
  os << f.cls.str();
  if (!zpart.empty()) {
    if (zpart.front() == '-') {
      os << " - " << zpart.substr(1);
    } else {
      os << " + " << zpart;
    }
  }
  return os.str();
}

std::string grouped(const std::vector<LinearFactor>& fs) {
  std::vector<std::pair<std::string, int>> groups;
  for (const auto& f : fs) {
    const std::string body = factor_body(f);
    if (!groups.empty() && groups.back().first == body) {
      ++groups.back().second;
    } else {
      groups.emplace_back(body, 1);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += " * ";
    out += "(" + groups[i].first + ")";
    if (groups[i].second > 1) out += "^" + std::to_string(groups[i].second);
  }
  return out;
}

}  // namespace

std::string FactoredZFunction::str() const {
  std::vector<LinearFactor> num, den;
  for (const auto& f : factors_) (f.exponent == 1 ? num : den).push_back(f);
  std::vector<std::string> parts;
  if (scalar_ != Rational(1)) parts.push_back(scalar_.str());
  if (prefactor_ != RingElement::one(ring())) parts.push_back("(" + prefactor_.str() + ")");
  if (z_power_ == 1) {
    parts.push_back("z");
  } else if (z_power_ != 0) {
    parts.push_back("z^" + std::to_string(z_power_));
  }
  if (!num.empty()) parts.push_back(grouped(num));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " * " : "") + parts[i];
  if (out.empty()) out = "1";
  if (!den.empty()) out += " / (" + grouped(den) + ")";
  return out;
}

FactoredZFunction gamma_ratio(const RingElement& cls, const Rational& c) {
  FactoredZFunction f(cls.ring());
  if (c.sign() >= 0) {
    const Rational fr = c.frac();
    for (Rational a = fr.is_zero() ? Rational(1) : fr; a <= c; a += 1) f.times_factor(cls, a, -1);
  } else {
    for (Rational a = c + 1; a <= 0; a += 1) f.times_factor(cls, a, 1);
  }
  return f;
}

FactoredZFunction ascending_product(const RingElement& cls, long n) {
  if (n < 0) fail(ErrorKind::Domain, "ascending product with negative length " + std::to_string(n));
  FactoredZFunction f(cls.ring());
  for (long a = 1; a <= n; ++a) f.times_factor(cls, Rational(a), 1);
  return f;
}

RingLaurent expand_ring(const FactoredZFunction& f, std::optional<int> z_min) {
  const RingPtr& ring = f.ring();
  RingLaurent acc = RingLaurent::term(f.z_power(), f.prefactor() * f.scalar());
  // Numerator factors are polynomial in z, so they are multiplied exactly first;
  // inverse factors only lower exponents, which makes truncation at z_min safe.
  for (const auto& fac : f.factors()) {
    if (fac.exponent != 1) continue;
    RingLaurent lin;
    lin.add_term(0, fac.cls);
    lin.add_term(1, RingElement::scalar(ring, fac.a));
    acc = acc * lin;
  }
  for (const auto& fac : f.factors()) {
    if (fac.exponent != -1) continue;
    const auto nil = nilpotency_index(fac.cls);
    if (!nil && !z_min) fail(ErrorKind::Domain, "inverse factor with non-nilpotent class " + fac.cls.str() + " needs a z_min");
    // (c + a z)^{-1} = sum_j (-1)^j c^j a^{-j-1} z^{-j-1}
    RingLaurent inv;
    RingElement power = RingElement::one(ring);
    const Rational inv_a = fac.a.inverse();
    Rational coeff = inv_a;
    for (int j = 0;; ++j) {
      if (nil && j >= *nil) break;
      const int e = -j - 1;
      if (z_min && acc.coeffs().empty()) break;
      if (z_min && !acc.coeffs().empty() && acc.coeffs().rbegin()->first + e < *z_min) {
        inv.set_floor(e + 1);
        break;
      }
      inv.add_term(e, power * coeff);
      power = power * fac.cls;
      coeff *= -inv_a;
    }
    acc = acc * inv;
    if (z_min) acc.restrict_window(*z_min);
  }
  if (z_min) acc.restrict_window(*z_min);
  return acc;
}

LaurentBlock expand(const FactoredZFunction& f, const SectorLabel& sector, std::optional<int> z_min) {
  return place_in_sector(expand_ring(f, z_min), sector);
}

}  // namespace rootmirror
