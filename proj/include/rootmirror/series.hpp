#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootmirror/laurent.hpp"
#include "rootmirror/ring.hpp"
#include "rootmirror/sectors.hpp"

namespace rootmirror {

// Position of a coefficient: Novikov degree d, extension multi-index k and the
// exponents ell of the log-Novikov variables.
struct SeriesIndex {
  CurveClass d;
  std::vector<long> k;
  std::vector<long> ell;

  long k_total() const;
  long ell_total() const;
  std::string str() const;

  friend auto operator<=>(const SeriesIndex&, const SeriesIndex&) = default;
  friend bool operator==(const SeriesIndex&, const SeriesIndex&) = default;
};

SeriesIndex operator+(const SeriesIndex& a, const SeriesIndex& b);

struct SeriesShape {
  std::size_t curves = 0;
  std::size_t extensions = 0;
  std::size_t logs = 0;

  SeriesIndex origin() const;
  friend bool operator==(const SeriesShape&, const SeriesShape&) = default;
};

struct SeriesBounds {
  std::vector<long> dmax;         // per Mori generator
  long kmax = 0;                  // cap on |k|
  std::optional<int> z_min;       // nullopt keeps every coefficient
  std::optional<long> log_max;    // cap on |ell|; nullopt leaves it to nilpotency

  bool admits(const SeriesIndex& index) const;
};

class GradedSeries {
 public:
  GradedSeries(SeriesShape shape, SeriesBounds bounds) : shape_(shape), bounds_(std::move(bounds)) {}

  const SeriesShape& shape() const { return shape_; }
  const SeriesBounds& bounds() const { return bounds_; }
  const std::map<SeriesIndex, LaurentBlock>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  const LaurentBlock* find(const SeriesIndex& index) const;
  // Accumulates into an entry; indices outside the bounds are rejected.
  void add(const SeriesIndex& index, const LaurentBlock& block);

  // Entries with the given log exponents, re-indexed with ell = 0.
  GradedSeries log_stratum(const std::vector<long>& ell) const;

 private:
  SeriesShape shape_;
  SeriesBounds bounds_;
  std::map<SeriesIndex, LaurentBlock> entries_;
};

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b);
// Graded Cauchy product; the result keeps the bounds of `a`.
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);
GradedSeries truncate(const GradedSeries& s, const SeriesBounds& bounds);

// sum_m cls^m L^m / (m! z^m) on the untwisted sector of the requested kind,
// where L is log variable `log_index`.
GradedSeries exp_divisor_over_z(const RingElement& cls, std::size_t log_index, const SeriesShape& shape,
                                const SeriesBounds& bounds, SectorLabel::Kind kind = SectorLabel::Kind::Age);

}  // namespace rootmirror
