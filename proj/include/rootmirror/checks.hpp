#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rootmirror/geometry.hpp"

namespace rootmirror {

enum class CheckStatus { Pass, Fail, Skip };

std::string check_status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // first failing index, or the reason for a skip
  long cases = 0;       // number of exact comparisons made

  bool passed() const { return status != CheckStatus::Fail; }
};

// Structural suites.
CheckResult check_pairing_structure(const GeometryConfig& cfg, long r);
CheckResult check_gamma_inverse_law(const RingPtr& ring, int samples, std::uint32_t seed);
CheckResult check_expand_multiplicative(const RingPtr& ring, int samples, std::uint32_t seed);
CheckResult check_exp_divisor_relation(const GeometryConfig& cfg);

// I-function identities, all log strata up to the configured cap.
CheckResult check_extension_zero(const GeometryConfig& cfg);
CheckResult check_local_sign(const GeometryConfig& cfg);
CheckResult check_toric_agreement(const GeometryConfig& cfg);
CheckResult check_ambient_restriction(const GeometryConfig& cfg);
CheckResult check_lambda_limit(const GeometryConfig& cfg);
CheckResult check_stabilization(const GeometryConfig& cfg, const std::vector<long>& r_list, bool extended);

// Mirror pipeline properties.
CheckResult check_round_trip(const GeometryConfig& cfg, long order);
CheckResult check_j_normalization(const GeometryConfig& cfg);
CheckResult check_projective_descendants(const GeometryConfig& cfg);
CheckResult check_relative_local_transfer(const GeometryConfig& cfg);
CheckResult check_root_invariant_stabilization(const GeometryConfig& cfg, const std::vector<long>& r_list);

// The full suite run by `verify`. Extended checks use cfg.S, or S = {1} when
// the configuration has none.
std::vector<CheckResult> verify_suite(const GeometryConfig& cfg, const std::vector<long>& r_list);

}  // namespace rootmirror
