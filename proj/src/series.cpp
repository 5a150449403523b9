#include "rootmirror/series.hpp"

#include <numeric>
#include <sstream>

#include "rootmirror/error.hpp"

namespace rootmirror {

namespace {

std::string join(const std::vector<long>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::vector<long> add_vec(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.size() != b.size()) fail(ErrorKind::Bounds, "multi-indices of different lengths");
  std::vector<long> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

long SeriesIndex::k_total() const { return std::accumulate(k.begin(), k.end(), 0L); }
long SeriesIndex::ell_total() const { return std::accumulate(ell.begin(), ell.end(), 0L); }

std::string SeriesIndex::str() const {
  std::string out = "d=" + d.str();
  if (!k.empty()) out += " k=" + join(k);
  if (!ell.empty()) out += " ell=" + join(ell);
  return out;
}

SeriesIndex operator+(const SeriesIndex& a, const SeriesIndex& b) {
  return {a.d + b.d, add_vec(a.k, b.k), add_vec(a.ell, b.ell)};
}

SeriesIndex SeriesShape::origin() const {
  return {CurveClass::zero(curves), std::vector<long>(extensions, 0), std::vector<long>(logs, 0)};
}

bool SeriesBounds::admits(const SeriesIndex& index) const {
  if (!dmax.empty()) {
    if (dmax.size() != index.d.size()) return false;
    for (std::size_t j = 0; j < dmax.size(); ++j) {
      if (index.d[j] > dmax[j]) return false;
    }
  }
  if (index.k_total() > kmax) return false;
  if (log_max && index.ell_total() > *log_max) return false;
  return true;
}

const LaurentBlock* GradedSeries::find(const SeriesIndex& index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? nullptr : &it->second;
}

void GradedSeries::add(const SeriesIndex& index, const LaurentBlock& block) {
  if (index.d.size() != shape_.curves || index.k.size() != shape_.extensions || index.ell.size() != shape_.logs) {
    fail(ErrorKind::Bounds, "index " + index.str() + " does not match the series shape");
  }
  if (!bounds_.admits(index)) fail(ErrorKind::Bounds, "index " + index.str() + " lies outside the series bounds");
  LaurentBlock b = bounds_.z_min ? block.truncated(*bounds_.z_min) : block;
  auto it = entries_.find(index);
  if (it == entries_.end()) {
    if (!b.is_zero()) entries_.emplace(index, std::move(b));
    return;
  }
  it->second += b;
  if (it->second.is_zero()) entries_.erase(it);
}

GradedSeries GradedSeries::log_stratum(const std::vector<long>& ell) const {
  GradedSeries out(shape_, bounds_);
  for (const auto& [index, block] : entries_) {
    if (index.ell != ell) continue;
    SeriesIndex flat = index;
    flat.ell.assign(shape_.logs, 0);
    out.entries_.emplace(flat, block);
  }
  return out;
}

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b) {
  if (!(a.shape() == b.shape())) fail(ErrorKind::Bounds, "series of different shapes");
  GradedSeries out = a;
  for (const auto& [index, block] : b.entries()) {
    if (out.bounds().admits(index)) out.add(index, block);
  }
  return out;
}

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b) {
  if (!(a.shape() == b.shape())) fail(ErrorKind::Bounds, "series of different shapes");
  GradedSeries out(a.shape(), a.bounds());
  for (const auto& [ia, ba] : a.entries()) {
    for (const auto& [ib, bb] : b.entries()) {
      const SeriesIndex sum = ia + ib;
      if (!out.bounds().admits(sum)) continue;
      out.add(sum, ba * bb);
    }
  }
  return out;
}

GradedSeries truncate(const GradedSeries& s, const SeriesBounds& bounds) {
  GradedSeries out(s.shape(), bounds);
  for (const auto& [index, block] : s.entries()) {
    if (bounds.admits(index)) out.add(index, block);
  }
  return out;
}

GradedSeries exp_divisor_over_z(const RingElement& cls, std::size_t log_index, const SeriesShape& shape,
                                const SeriesBounds& bounds, SectorLabel::Kind kind) {
  if (log_index >= shape.logs) fail(ErrorKind::Bounds, "log variable index out of range");
  if (!nilpotency_index(cls)) fail(ErrorKind::Domain, "exponential of a non-nilpotent class");
  GradedSeries out(shape, bounds);
  const SectorLabel unit = SectorLabel::untwisted(kind);
  RingElement power = RingElement::one(cls.ring());
  for (long m = 0; !power.is_zero(); ++m) {
    SeriesIndex index = shape.origin();
    index.ell[log_index] = m;
    if (!bounds.admits(index)) break;
    out.add(index, LaurentBlock::term(static_cast<int>(-m), StateVector(unit, power * factorial(m).inverse())));
    power = power * cls;
  }
  return out;
}

}  // namespace rootmirror
