#include "rootmirror/error.hpp"
#include "rootmirror/mirror.hpp"

namespace rootmirror {

namespace {

long extension_contact(const std::vector<long>& k, const std::vector<long>& S) {
  long total = 0;
  for (std::size_t i = 0; i < k.size(); ++i) total += k[i] * S[i];
  return total;
}

void guard(const GeometryConfig& cfg, long r, bool extended) {
  if (extended) {
    for (long a : cfg.S) {
      if (a >= r) fail(ErrorKind::Range, "r = " + std::to_string(r) + " does not exceed the extension a = " + std::to_string(a));
    }
  }
  const std::size_t m = extended ? cfg.S.size() : 0;
  for (const auto& d : curve_box(cfg.bounds.dmax)) {
    const long dd = intersect(cfg.divisor, d);
    for (const auto& k : extension_box(m, extended ? cfg.bounds.kmax : 0)) {
      const long contact = dd - extension_contact(k, cfg.S);
      if (r <= std::labs(contact)) {
        fail(ErrorKind::Range, "r = " + std::to_string(r) + " does not exceed |D.d - sum k_i a_i| = " +
                                   std::to_string(std::labs(contact)) + " at d = " + d.str());
      }
    }
  }
}

}  // namespace

CorrespondenceReport correspondence_table(const GeometryConfig& cfg, const std::vector<long>& r_list, bool extended) {
  for (long r : r_list) guard(cfg, r, extended);
  GeometryConfig base = cfg;
  base.bounds.log_max = 0;
  if (!extended) base.S.clear();
  const IFunction rel = extended ? i_relative_extended(base) : i_relative(base);
  const SectorPairingContext rel_ctx(cfg.divisor, std::nullopt);

  CorrespondenceReport report;
  report.extended = extended;
  for (long r : r_list) {
    GeometryConfig at_r = base;
    at_r.r = r;
    const IFunction root = extended ? i_root_stack_extended(at_r) : i_root_stack(at_r);
    const SectorPairingContext root_ctx(cfg.divisor, r);
    for (const auto& recipe : root.recipes) {
      const SeriesIndex& index = recipe.index;
      const long ext = extension_contact(index.k, at_r.S);
      const LaurentBlock* rb = root.series.find(index);
      const LaurentBlock* lb = rel.series.find(index);
      LaurentBlock mapped;
      if (rb) {
        mapped = rb->map_values([&](const StateVector& v) {
          return rel_ctx.normalize(root_to_relative(v, root_ctx, index.d, ext));
        });
      }
      const LaurentBlock relative = lb ? *lb : LaurentBlock();
      CorrespondenceRow row{r, index, mapped, relative, agree(mapped, relative)};
      if (!row.equal && !report.first_failure) {
        report.first_failure = "r = " + std::to_string(r) + ", " + index.str() + ": root side " + block_str(mapped) +
                               ", relative side " + block_str(relative);
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace rootmirror
