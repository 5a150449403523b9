#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootmirror/geometry.hpp"
#include "rootmirror/ifunctions.hpp"
#include "rootmirror/mirror_map.hpp"
#include "rootmirror/scalar_series.hpp"
#include "rootmirror/sectors.hpp"

namespace rootmirror {

using BlockSeries = TruncatedSeries<LaurentBlock>;

enum class InvariantTheory { RootStack, Relative, Absolute, Local };

std::string invariant_theory_name(InvariantTheory t);

struct InvariantRecord {
  InvariantTheory theory;
  CurveClass d;
  SectorLabel sector;     // sector of the marking
  RingElement insertion;  // class inserted at the marking
  long psi_power = 0;
  Rational value;
};

// How a theory is read: pairing, the sector each degree lands on, and the
// weight nu of the sector identity relative to the contact-space class.
struct TheoryContext {
  Theory theory;
  InvariantTheory invariants;
  SectorPairingContext pairing;
  long nu = 1;

  SectorLabel degree_sector(const CurveClass& d) const;
};

TheoryContext theory_context(Theory theory, const GeometryConfig& cfg);

struct SplitResult {
  MirrorMap tau;
  BlockSeries tail;  // z^{<0} part
  BlockSeries full;  // all powers, as a series in (Q, x)
};

// The L^0 stratum of an I-function as a series in (Q, x), truncated at `order`.
BlockSeries ell_zero_series(const IFunction& i, long order);

// I = z 1 + tau + O(1/z); rejects any other non-negative power of z.
SplitResult split(const IFunction& i, long order);

struct JFunction {
  BlockSeries series;  // in the mirror Novikov variables q
  std::vector<SectorLabel> parameter_space;
  std::string provenance;
  std::vector<InversionStep> steps;
  std::vector<ScalarSeries> novikov_inverse;  // Q_j(q)
  long order = 0;
};

// Inverts the mirror map and assembles the restricted J-function at xhat = 0.
JFunction assemble_j(const IFunction& i, const TheoryContext& ctx, long order);

// Reads the one-point descendants <b psi^k>_{0,1,d} from the J-function.
// Entries with value zero are omitted; a truncated expansion window is a Window error.
std::vector<InvariantRecord> extract_one_point(const JFunction& j, const TheoryContext& ctx);

// Root-stack route with a parameter attached to every twisted sector the
// degree box reaches; returns nullopt when r <= D.d for some degree in the box.
std::optional<std::vector<long>> augmented_extension(const GeometryConfig& cfg);

struct PipelineResult {
  JFunction j;
  std::vector<InvariantRecord> records;
  std::string route;
};

// The theory's I-function through inversion and extraction; the root stack
// without extension data goes through the augmented route when it applies.
PipelineResult run_invariants(Theory theory, const GeometryConfig& cfg, long order);

// Default inversion order: the smallest per-generator degree bound, capped by
// kmax whenever extension variables are present.
long default_order(const GeometryConfig& cfg, bool extended);

struct CorrespondenceRow {
  long r = 0;
  SeriesIndex index;
  LaurentBlock root_side;
  LaurentBlock relative_side;
  bool equal = false;
};

struct CorrespondenceReport {
  bool extended = false;
  std::vector<CorrespondenceRow> rows;
  std::optional<std::string> first_failure;
  bool all_equal() const { return !first_failure.has_value(); }
};

// Compares root_to_relative(root-stack coefficients) with relative coefficients
// for every r in r_list, at the L^0 stratum.
CorrespondenceReport correspondence_table(const GeometryConfig& cfg, const std::vector<long>& r_list, bool extended);

}  // namespace rootmirror
