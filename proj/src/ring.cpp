#include "rootmirror/ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rootmirror/error.hpp"

namespace rootmirror {

namespace {

SparseRow normalized(SparseRow row) {
  std::map<std::size_t, Rational> acc;
  for (auto& [k, v] : row) acc[k] += v;
  SparseRow out;
  for (auto& [k, v] : acc) {
    if (!v.is_zero()) out.emplace_back(k, v);
  }
  return out;
}

std::string monomial_power_name(const std::string& variable, int power) {
  if (power == 0) return "1";
  if (power == 1) return variable;
  return variable + "^" + std::to_string(power);
}

}  // namespace

RingPtr BaseRing::from_table(RingTableSpec spec, std::string name) {
  auto ring = std::shared_ptr<BaseRing>(new BaseRing());
  const std::size_t dim = spec.basis.size();
  if (dim == 0) fail(ErrorKind::Config, "ring '" + name + "' has an empty basis");
  if (spec.basis[0].degree != 0) fail(ErrorKind::Grading, "basis element 0 of ring '" + name + "' must be the unit");
  if (spec.integral.size() != dim) fail(ErrorKind::Config, "integration functional has wrong length");
  std::set<std::string> names;
  for (const auto& m : spec.basis) {
    if (m.degree < 0 || m.degree % 2 != 0) fail(ErrorKind::Grading, "monomial '" + m.name + "' has odd or negative degree");
    if (!names.insert(m.name).second) fail(ErrorKind::Config, "duplicate monomial name '" + m.name + "'");
  }

  ring->name_ = std::move(name);
  ring->basis_ = spec.basis;
  ring->integral_ = spec.integral;
  ring->table_.assign(dim * dim, SparseRow{});
  std::vector<bool> given(dim * dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    ring->table_[i] = {{i, Rational(1)}};
    ring->table_[i * dim] = {{i, Rational(1)}};
  }
  for (const auto& p : spec.products) {
    if (p.left >= dim || p.right >= dim) fail(ErrorKind::Config, "product refers to a basis index out of range");
    for (const auto& [k, c] : p.terms) {
      (void)c;
      if (k >= dim) fail(ErrorKind::Config, "product term refers to a basis index out of range");
    }
    SparseRow row = normalized(p.terms);
    const std::size_t ij = p.left * dim + p.right;
    const std::size_t ji = p.right * dim + p.left;
    if ((p.left == 0 || p.right == 0) && row != ring->table_[ij]) {
      fail(ErrorKind::Config, "product with the unit must be the identity");
    }
    ring->table_[ij] = row;
    given[ij] = true;
    if (!given[ji]) ring->table_[ji] = row;
  }

  const auto& basis = ring->basis_;
  int top = 0;
  for (const auto& m : basis) top = std::max(top, m.degree);
  ring->top_degree_ = top;

  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (ring->table_[i * dim + j] != ring->table_[j * dim + i]) {
        fail(ErrorKind::Config, "multiplication table is not commutative at (" + basis[i].name + ", " + basis[j].name + ")");
      }
      for (const auto& [k, c] : ring->table_[i * dim + j]) {
        (void)c;
        if (basis[k].degree != basis[i].degree + basis[j].degree) {
          fail(ErrorKind::Grading, "product " + basis[i].name + "*" + basis[j].name + " does not respect the grading");
        }
      }
    }
  }
  auto sparse_times = [&](const SparseRow& row, std::size_t other, bool row_on_left) {
    SparseRow acc;
    for (const auto& [m, c] : row) {
      const SparseRow& prod = row_on_left ? ring->table_[m * dim + other] : ring->table_[other * dim + m];
      for (const auto& [k, v] : prod) acc.emplace_back(k, c * v);
    }
    return normalized(std::move(acc));
  };
  for (std::size_t i = 1; i < dim; ++i) {
    for (std::size_t j = 1; j < dim; ++j) {
      for (std::size_t k = 1; k < dim; ++k) {
        if (sparse_times(ring->table_[i * dim + j], k, true) != sparse_times(ring->table_[j * dim + k], i, false)) {
          fail(ErrorKind::Config, "multiplication table is not associative at (" + basis[i].name + ", " + basis[j].name +
                                      ", " + basis[k].name + ")");
        }
      }
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!ring->integral_[i].is_zero() && basis[i].degree != top) {
      fail(ErrorKind::Grading, "integration is nonzero on '" + basis[i].name + "' outside the top degree");
    }
  }

  ring->num_curves_ = spec.curve_pairings.empty() ? 0 : spec.curve_pairings.front().size();
  if (spec.curve_pairings.size() != spec.divisors.size()) {
    fail(ErrorKind::Config, "curve pairing matrix needs one row per divisor");
  }
  for (const auto& row : spec.curve_pairings) {
    if (row.size() != ring->num_curves_) fail(ErrorKind::Config, "curve pairing matrix rows differ in length");
  }
  ring->pairings_ = spec.curve_pairings;
  ring->divisors_ = spec.divisors;
  RingPtr view = ring;
  for (std::size_t i = 0; i < ring->divisors_.size(); ++i) {
    if (ring->divisors_[i].size() != dim) fail(ErrorKind::Config, "divisor coefficient vector has wrong length");
    const RingElement d(view, ring->divisors_[i]);
    if (d.homogeneous_degree() != 2) fail(ErrorKind::Grading, "divisor " + std::to_string(i) + " is not of degree 2");
    if (!nilpotency_index(d)) fail(ErrorKind::Config, "divisor " + std::to_string(i) + " is not nilpotent");
  }
  return ring;
}

std::optional<std::size_t> BaseRing::find(const std::string& monomial_name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].name == monomial_name) return i;
  }
  return std::nullopt;
}

RingElement::RingElement(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) fail(ErrorKind::RingMismatch, "ring element without a ring");
  c_.assign(ring_->dim(), Rational(0));
}

RingElement::RingElement(RingPtr ring, RationalVector coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (!ring_) fail(ErrorKind::RingMismatch, "ring element without a ring");
  if (c_.size() != ring_->dim()) fail(ErrorKind::RingMismatch, "coefficient vector has wrong length");
}

RingElement RingElement::one(const RingPtr& ring) { return basis(ring, 0); }

RingElement RingElement::scalar(const RingPtr& ring, const Rational& value) {
  RingElement e(ring);
  e.c_[0] = value;
  return e;
}

RingElement RingElement::basis(const RingPtr& ring, std::size_t i) {
  RingElement e(ring);
  e.c_.at(i) = 1;
  return e;
}

RingElement RingElement::basis(const RingPtr& ring, const std::string& monomial_name) {
  const auto idx = ring->find(monomial_name);
  if (!idx) fail(ErrorKind::Config, "unknown monomial '" + monomial_name + "' in ring '" + ring->name() + "'");
  return basis(ring, *idx);
}

RingElement RingElement::divisor(const RingPtr& ring, std::size_t i) {
  return RingElement(ring, ring->divisor_coefficients(i));
}

bool RingElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.is_zero(); });
}

std::optional<int> RingElement::homogeneous_degree() const {
  std::optional<int> deg;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const int d = ring_->monomial(i).degree;
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

RingElement RingElement::component(int degree) const {
  RingElement out(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (ring_->monomial(i).degree == degree) out.c_[i] = c_[i];
  }
  return out;
}

int RingElement::max_degree() const {
  int deg = -1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) deg = std::max(deg, ring_->monomial(i).degree);
  }
  return deg;
}

static void require_same_ring(const RingElement& a, const RingElement& b) {
  if (a.ring() != b.ring()) fail(ErrorKind::RingMismatch, "elements of different rings combined");
}

RingElement& RingElement::operator+=(const RingElement& o) {
  require_same_ring(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  require_same_ring(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RingElement& RingElement::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  const std::size_t dim = a.ring_->dim();
  RingElement out(a.ring_);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b.c_[j].is_zero()) continue;
      const Rational ab = a.c_[i] * b.c_[j];
      for (const auto& [k, c] : a.ring_->product(i, j)) out.c_[k] += ab * c;
    }
  }
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) { return a.ring_ == b.ring_ && a.c_ == b.c_; }

std::string RingElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const std::string& name = ring_->monomial(i).name;
    Rational coeff = c_[i];
    if (!first) {
      os << (coeff.sign() < 0 ? " - " : " + ");
      coeff = coeff.abs();
    } else if (coeff.sign() < 0 && name != "1" && coeff == Rational(-1)) {
      os << "-";
      coeff = coeff.abs();
    }
    if (name == "1") {
      os << coeff;
    } else if (coeff == Rational(1)) {
      os << name;
    } else {
      os << coeff << "*" << name;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

RingElement pow(const RingElement& base, int exponent) {
  if (exponent < 0) fail(ErrorKind::Domain, "negative power of a ring element");
  RingElement out = RingElement::one(base.ring());
  for (int i = 0; i < exponent; ++i) out = out * base;
  return out;
}

Rational integrate(const RingElement& a) {
  Rational s;
  for (std::size_t i = 0; i < a.ring()->dim(); ++i) {
    if (!a[i].is_zero()) s += a[i] * a.ring()->integral(i);
  }
  return s;
}

RingElement mul(const RingElement& a, const RingElement& b) { return a * b; }

std::optional<int> nilpotency_index(const RingElement& cls) {
  RingElement p = RingElement::one(cls.ring());
  const int bound = static_cast<int>(cls.ring()->dim()) + 1;
  for (int k = 0; k <= bound; ++k) {
    if (p.is_zero()) return k;
    p = p * cls;
  }
  return std::nullopt;
}

CurveClass::CurveClass(std::vector<long> coords) : c_(std::move(coords)) {
  for (long x : c_) {
    if (x < 0) fail(ErrorKind::Domain, "curve class coordinates must be nonnegative");
  }
}

long CurveClass::total() const {
  long t = 0;
  for (long x : c_) t += x;
  return t;
}

std::string CurveClass::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
  if (a.size() != b.size()) fail(ErrorKind::Domain, "curve classes of different lengths added");
  std::vector<long> c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return CurveClass(std::move(c));
}

RationalVector divisor_coordinates(const RingElement& cls) {
  const auto& ring = *cls.ring();
  if (!cls.is_zero() && cls.homogeneous_degree() != 2) {
    fail(ErrorKind::Grading, "intersection with a class that is not of degree 2: " + cls.str());
  }
  std::vector<std::size_t> deg2;
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    if (ring.monomial(i).degree == 2) deg2.push_back(i);
  }
  RationalMatrix a(deg2.size(), RationalVector(ring.num_divisors()));
  RationalVector b(deg2.size());
  for (std::size_t row = 0; row < deg2.size(); ++row) {
    for (std::size_t j = 0; j < ring.num_divisors(); ++j) a[row][j] = ring.divisor_coefficients(j)[deg2[row]];
    b[row] = cls[deg2[row]];
  }
  auto x = solve_linear(a, b);
  if (!x) fail(ErrorKind::Grading, "class " + cls.str() + " is outside the span of the divisor basis");
  x->resize(ring.num_divisors());
  return *x;
}

Rational intersect_rational(const RingElement& cls, const CurveClass& d) {
  const auto& ring = *cls.ring();
  if (d.size() != ring.num_curve_generators()) {
    fail(ErrorKind::Domain, "curve class " + d.str() + " does not match the ring's Mori generators");
  }
  const RationalVector x = divisor_coordinates(cls);
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d.size(); ++j) s += x[i] * Rational(ring.pairing(i, j) * d[j]);
  }
  return s;
}

long intersect(const RingElement& cls, const CurveClass& d) {
  const Rational s = intersect_rational(cls, d);
  if (!s.is_integer()) fail(ErrorKind::Domain, "intersection number " + s.str() + " is not an integer");
  return s.to_long();
}

bool is_nef(const RingElement& cls) {
  const std::size_t g = cls.ring()->num_curve_generators();
  for (std::size_t j = 0; j < g; ++j) {
    std::vector<long> e(g, 0);
    e[j] = 1;
    if (intersect_rational(cls, CurveClass(e)).sign() < 0) return false;
  }
  return true;
}

RingPtr make_projective_space(int n, const std::string& variable) {
  if (n <= 0) fail(ErrorKind::InvalidDimension, "projective space dimension must be positive, got " + std::to_string(n));
  RingTableSpec spec;
  for (int p = 0; p <= n; ++p) spec.basis.push_back({monomial_power_name(variable, p), 2 * p});
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      if (i + j <= n) spec.products.push_back({std::size_t(i), std::size_t(j), {{std::size_t(i + j), Rational(1)}}});
    }
  }
  spec.integral.assign(n + 1, Rational(0));
  spec.integral[n] = 1;
  RationalVector h(n + 1);
  h[1] = 1;
  spec.divisors.push_back(h);
  spec.curve_pairings.push_back({1});
  return BaseRing::from_table(std::move(spec), "P" + std::to_string(n));
}

RingPtr make_truncated_line(const std::string& variable, int max_power) {
  if (max_power < 0) fail(ErrorKind::InvalidDimension, "truncation power must be nonnegative");
  RingTableSpec spec;
  for (int p = 0; p <= max_power; ++p) spec.basis.push_back({monomial_power_name(variable, p), 2 * p});
  for (int i = 1; i <= max_power; ++i) {
    for (int j = i; j <= max_power; ++j) {
      if (i + j <= max_power) spec.products.push_back({std::size_t(i), std::size_t(j), {{std::size_t(i + j), Rational(1)}}});
    }
  }
  spec.integral.assign(max_power + 1, Rational(0));
  spec.integral[max_power] = 1;
  return BaseRing::from_table(std::move(spec), variable + "-line");
}

RingPtr make_table_ring(const RingTableSpec& spec, const std::string& name) { return BaseRing::from_table(spec, name); }

RingPtr make_product(const std::vector<RingPtr>& factors) {
  if (factors.empty()) fail(ErrorKind::InvalidDimension, "product of zero rings");
  std::vector<std::size_t> dims;
  for (const auto& f : factors) dims.push_back(f->dim());
  std::size_t total = 1;
  for (auto d : dims) total *= d;

  auto decompose = [&](std::size_t idx) {
    std::vector<std::size_t> parts(dims.size());
    for (std::size_t f = dims.size(); f-- > 0;) {
      parts[f] = idx % dims[f];
      idx /= dims[f];
    }
    return parts;
  };
  auto compose = [&](const std::vector<std::size_t>& parts) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + parts[f];
    return idx;
  };

  RingTableSpec spec;
  std::string name;
  for (std::size_t f = 0; f < factors.size(); ++f) name += (f ? "x" : "") + factors[f]->name();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto parts = decompose(idx);
    std::string mname;
    int degree = 0;
    Rational integral(1);
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const auto& m = factors[f]->monomial(parts[f]);
      degree += m.degree;
      integral *= factors[f]->integral(parts[f]);
      if (m.name == "1") continue;
      mname += (mname.empty() ? "" : "*") + m.name;
    }
    spec.basis.push_back({mname.empty() ? "1" : mname, degree});
    spec.integral.push_back(integral);
  }
  for (std::size_t i = 1; i < total; ++i) {
    const auto pi = decompose(i);
    for (std::size_t j = i; j < total; ++j) {
      const auto pj = decompose(j);
      // Expand the tensor product of the factor products.
      std::vector<std::pair<std::vector<std::size_t>, Rational>> terms{{{}, Rational(1)}};
      for (std::size_t f = 0; f < factors.size(); ++f) {
        std::vector<std::pair<std::vector<std::size_t>, Rational>> next;
        for (const auto& [prefix, c] : terms) {
          for (const auto& [k, v] : factors[f]->product(pi[f], pj[f])) {
            auto p = prefix;
            p.push_back(k);
            next.emplace_back(std::move(p), c * v);
          }
        }
        terms = std::move(next);
      }
      SparseRow row;
      for (auto& [parts, c] : terms) row.emplace_back(compose(parts), c);
      if (!row.empty()) spec.products.push_back({i, j, row});
    }
  }
  std::size_t curve_offset = 0;
  std::size_t total_curves = 0;
  for (const auto& f : factors) total_curves += f->num_curve_generators();
  for (std::size_t f = 0; f < factors.size(); ++f) {
    for (std::size_t dv = 0; dv < factors[f]->num_divisors(); ++dv) {
      RationalVector coeffs(total);
      const auto& fc = factors[f]->divisor_coefficients(dv);
      for (std::size_t k = 0; k < fc.size(); ++k) {
        if (fc[k].is_zero()) continue;
        std::vector<std::size_t> parts(factors.size(), 0);
        parts[f] = k;
        coeffs[compose(parts)] = fc[k];
      }
      spec.divisors.push_back(coeffs);
      std::vector<long> pairing_row(total_curves, 0);
      for (std::size_t c = 0; c < factors[f]->num_curve_generators(); ++c) {
        pairing_row[curve_offset + c] = factors[f]->pairing(dv, c);
      }
      spec.curve_pairings.push_back(pairing_row);
    }
    curve_offset += factors[f]->num_curve_generators();
  }
  if (spec.divisors.empty()) spec.curve_pairings.clear();
  RingPtr built = BaseRing::from_table(std::move(spec), name);
  auto ring = std::const_pointer_cast<BaseRing>(built);
  ring->factor_dims_ = dims;
  ring->num_curves_ = total_curves;
  return ring;
}

namespace {

std::size_t second_dim(const RingPtr& product) {
  if (product->factor_dims().size() != 2) fail(ErrorKind::RingMismatch, "expected a two-factor product ring");
  return product->factor_dims()[1];
}

}  // namespace

RingElement product_slice(const RingElement& elem, const RingPtr& first, std::size_t second_index) {
  const std::size_t d2 = second_dim(elem.ring());
  if (elem.ring()->factor_dims()[0] != first->dim()) fail(ErrorKind::RingMismatch, "first factor does not match");
  RingElement out(first);
  RationalVector c(first->dim());
  for (std::size_t i = 0; i < first->dim(); ++i) c[i] = elem[i * d2 + second_index];
  return RingElement(first, std::move(c));
}

RingElement product_embed_first(const RingElement& elem, const RingPtr& product) {
  const std::size_t d2 = second_dim(product);
  if (product->factor_dims()[0] != elem.ring()->dim()) fail(ErrorKind::RingMismatch, "first factor does not match");
  RationalVector c(product->dim());
  for (std::size_t i = 0; i < elem.ring()->dim(); ++i) c[i * d2] = elem[i];
  return RingElement(product, std::move(c));
}

RingElement product_second_basis(const RingPtr& product, std::size_t second_index) {
  const std::size_t d2 = second_dim(product);
  if (second_index >= d2) fail(ErrorKind::Domain, "second-factor basis index out of range");
  return RingElement::basis(product, second_index);
}

}  // namespace rootmirror
