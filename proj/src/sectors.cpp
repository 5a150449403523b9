#include "rootmirror/sectors.hpp"

#include <sstream>

#include "rootmirror/error.hpp"

namespace rootmirror {

SectorLabel SectorLabel::age(const Rational& f) {
  if (f.sign() < 0 || f >= Rational(1)) fail(ErrorKind::Domain, "age " + f.str() + " outside [0, 1)");
  return SectorLabel(Kind::Age, f, 0);
}

SectorLabel SectorLabel::contact(long i) { return SectorLabel(Kind::Contact, Rational(0), i); }

const Rational& SectorLabel::age_value() const {
  if (kind_ != Kind::Age) fail(ErrorKind::LabelKind, "contact sector has no age");
  return age_;
}

long SectorLabel::contact_value() const {
  if (kind_ != Kind::Contact) fail(ErrorKind::LabelKind, "age sector has no contact order");
  return contact_;
}

SectorLabel SectorLabel::opposite() const {
  if (kind_ == Kind::Age) return age_of(-age_);
  return contact(-contact_);
}

std::string SectorLabel::str() const {
  if (kind_ == Kind::Age) return "age " + age_.str();
  return "contact " + std::to_string(contact_);
}

std::strong_ordering operator<=>(const SectorLabel& a, const SectorLabel& b) {
  if (a.kind_ != b.kind_) return a.kind_ == SectorLabel::Kind::Age ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.kind_ == SectorLabel::Kind::Age) return a.age_ <=> b.age_;
  return a.contact_ <=> b.contact_;
}

StateVector::StateVector(const SectorLabel& label, RingElement value) { add(label, value); }

std::optional<SectorLabel::Kind> StateVector::kind() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.kind();
}

const RingElement* StateVector::find(const SectorLabel& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? nullptr : &it->second;
}

void StateVector::add(const SectorLabel& label, const RingElement& value) {
  if (value.is_zero()) return;
  if (const auto k = kind(); k && *k != label.kind()) {
    fail(ErrorKind::LabelKind, "age and contact sectors mixed in one state vector");
  }
  auto it = terms_.find(label);
  if (it == terms_.end()) {
    terms_.emplace(label, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) terms_.erase(it);
}

StateVector& StateVector::operator+=(const StateVector& o) {
  for (const auto& [label, value] : o.terms_) add(label, value);
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  for (const auto& [label, value] : o.terms_) add(label, -value);
  return *this;
}

StateVector& StateVector::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [label, value] : terms_) value *= s;
  return *this;
}

StateVector StateVector::operator-() const {
  StateVector out = *this;
  for (auto& [label, value] : out.terms_) value = -value;
  return out;
}

StateVector StateVector::act(const RingElement& cls) const {
  StateVector out;
  for (const auto& [label, value] : terms_) out.add(label, cls * value);
  return out;
}

std::string StateVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, value] : terms_) {
    if (!first) os << " + ";
    os << "(" << value.str() << ")[" << label.str() << "]";
    first = false;
  }
  return os.str();
}

StateVector operator*(const StateVector& a, const StateVector& b) {
  if (a.kind() && b.kind() && *a.kind() != *b.kind()) {
    fail(ErrorKind::IncompatibleSectors, "product of age-labelled and contact-labelled vectors");
  }
  StateVector out;
  for (const auto& [la, ea] : a.terms()) {
    for (const auto& [lb, eb] : b.terms()) {
      if (la.is_untwisted()) {
        out.add(lb, ea * eb);
      } else if (lb.is_untwisted()) {
        out.add(la, ea * eb);
      } else {
        fail(ErrorKind::IncompatibleSectors, "product of two twisted sectors " + la.str() + " and " + lb.str());
      }
    }
  }
  return out;
}

DivisorRestriction::DivisorRestriction(RingElement divisor) : divisor_(std::move(divisor)) {
  const auto& ring = divisor_.ring();
  const std::size_t dim = ring->dim();
  // Column i of the multiplication-by-D map is D * e_i.
  RationalMatrix m(dim, RationalVector(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const RingElement col = divisor_ * RingElement::basis(ring, i);
    for (std::size_t k = 0; k < dim; ++k) m[k][i] = col[k];
  }
  const EchelonForm ker = reduced_row_echelon(kernel_basis(m, dim));
  kernel_rows_ = ker.rows;
  kernel_pivots_ = ker.pivots;
  std::vector<bool> pivot(dim, false);
  for (auto p : kernel_pivots_) pivot[p] = true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!pivot[i]) image_basis_.push_back(i);
  }
}

RingElement DivisorRestriction::reduce(const RingElement& cls) const {
  RationalVector c = cls.coefficients();
  for (std::size_t row = 0; row < kernel_rows_.size(); ++row) {
    const Rational factor = c[kernel_pivots_[row]];
    if (factor.is_zero()) continue;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= factor * kernel_rows_[row][k];
  }
  return RingElement(cls.ring(), std::move(c));
}

SectorPairingContext::SectorPairingContext(RingElement divisor, std::optional<long> r)
    : divisor_(divisor), r_(r), restriction_(divisor) {
  if (divisor_.homogeneous_degree().value_or(2) != 2) fail(ErrorKind::Grading, "divisor must be a degree-2 class");
  if (!nilpotency_index(divisor_)) fail(ErrorKind::Config, "divisor class is not nilpotent");
  if (r_ && *r_ < 1) fail(ErrorKind::Domain, "root index must be positive");
}

StateVector SectorPairingContext::normalize(const StateVector& v) const {
  return v.map_classes([&](const SectorLabel& label, const RingElement& cls) {
    return label.is_untwisted() ? cls : restriction_.reduce(cls);
  });
}

std::vector<RingElement> SectorPairingContext::sector_basis(const SectorLabel& label) const {
  std::vector<RingElement> out;
  if (label.is_untwisted()) {
    for (std::size_t i = 0; i < ring()->dim(); ++i) out.push_back(RingElement::basis(ring(), i));
  } else {
    for (auto i : restriction_.image_basis()) out.push_back(RingElement::basis(ring(), i));
  }
  return out;
}

namespace {

void require_kind(const StateVector& v, SectorLabel::Kind kind, const char* what) {
  if (v.kind() && *v.kind() != kind) fail(ErrorKind::LabelKind, std::string(what) + " expects vectors of one label kind");
}

}  // namespace

Rational pair_relative(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx) {
  require_kind(u, SectorLabel::Kind::Contact, "relative pairing");
  require_kind(v, SectorLabel::Kind::Contact, "relative pairing");
  Rational total;
  for (const auto& [lu, gu] : u.terms()) {
    const RingElement* gv = v.find(lu.opposite());
    if (!gv) continue;
    if (lu.contact_value() == 0) {
      total += integrate(gu * *gv);
    } else {
      total += integrate(ctx.divisor() * gu * *gv);
    }
  }
  return total;
}

Rational pair_root_stack(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx) {
  if (!ctx.r()) fail(ErrorKind::LabelKind, "root-stack pairing needs a root index");
  require_kind(u, SectorLabel::Kind::Age, "root-stack pairing");
  require_kind(v, SectorLabel::Kind::Age, "root-stack pairing");
  const long r = *ctx.r();
  auto check_denominator = [&](const SectorLabel& l) {
    const mpz_class den = l.age_value().denominator();
    if (mpz_class(r) % den != 0) fail(ErrorKind::Domain, "sector " + l.str() + " is not a sector of the root stack with r = " + std::to_string(r));
  };
  for (const auto& [l, g] : u.terms()) check_denominator(l);
  for (const auto& [l, g] : v.terms()) check_denominator(l);
  Rational total;
  for (const auto& [lu, gu] : u.terms()) {
    const RingElement* gv = v.find(lu.opposite());
    if (!gv) continue;
    if (lu.is_untwisted()) {
      total += integrate(gu * *gv);
    } else {
      total += integrate(ctx.divisor() * gu * *gv) / Rational(r);
    }
  }
  return total;
}

Rational pair(const StateVector& u, const StateVector& v, const SectorPairingContext& ctx) {
  return ctx.is_relative() ? pair_relative(u, v, ctx) : pair_root_stack(u, v, ctx);
}

StateVector root_to_relative(const StateVector& v, const SectorPairingContext& ctx, const CurveClass& d,
                             long extension_contribution) {
  if (!ctx.r()) fail(ErrorKind::Identification, "identification needs a root index");
  require_kind(v, SectorLabel::Kind::Age, "root_to_relative");
  const long r = *ctx.r();
  const long target = -intersect(ctx.divisor(), d) + extension_contribution;
  const SectorLabel expected = SectorLabel::age_of(Rational(target, r));
  const Rational scale = target < 0 ? Rational(1, r) : Rational(1);
  StateVector out;
  for (const auto& [label, cls] : v.terms()) {
    if (label != expected) {
      fail(ErrorKind::Identification, "sector " + label.str() + " does not match contact order " + std::to_string(target) +
                                          " at curve class " + d.str());
    }
    out.add(SectorLabel::contact(target), cls * scale);
  }
  return out;
}

Rational rho_minus_factor(long r, int rho_minus) {
  if (r < 1 || rho_minus < 0) fail(ErrorKind::Domain, "invalid arguments for the negative-contact scaling");
  return pow(Rational(r), rho_minus);
}

}  // namespace rootmirror
