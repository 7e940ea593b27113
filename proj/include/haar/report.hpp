#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "haar/bigrat.hpp"

namespace haar {

/// One verified claim: a computed left-hand side against an independent
/// right-hand side, with the criterion that decided pass/fail.
///
/// pass == (abs_err <= tolerance) || (mc_stderr && abs_err <= k_sigma * mc_stderr),
/// where k_sigma is stored in params["k_sigma"].
struct VerificationReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  std::optional<double> mc_stderr;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t wall_ms = 0;
};

/// Deterministic tolerance check; complex parts beyond the real axis are kept in params.
VerificationReport tolerance_report(std::string check, nlohmann::json params, std::complex<double> lhs,
                                    std::complex<double> rhs, double tolerance);

/// Monte Carlo check: passes when |lhs - rhs| <= k_sigma * stderr (or <= tolerance).
VerificationReport mc_report(std::string check, nlohmann::json params, std::complex<double> mc_mean,
                             double stderr_, std::complex<double> rhs, double k_sigma, std::uint64_t seed,
                             double tolerance = 0.0);

/// Exact rational equality.
VerificationReport exact_report(std::string check, nlohmann::json params, const BigRat& lhs, const BigRat& rhs);

nlohmann::json to_json(const VerificationReport& r, bool with_timing = false);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace haar
