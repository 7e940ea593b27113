#include "haar/report.hpp"

#include <algorithm>
#include <cmath>

namespace haar {

namespace {

double rel(double abs_err, std::complex<double> rhs) {
  const double m = std::abs(rhs);
  return m > 0.0 ? abs_err / m : abs_err;
}

void stash_imag(nlohmann::json& params, std::complex<double> lhs, std::complex<double> rhs) {
  if (lhs.imag() != 0.0 || rhs.imag() != 0.0) {
    params["lhs_imag"] = lhs.imag();
    params["rhs_imag"] = rhs.imag();
  }
}

}  // namespace

VerificationReport tolerance_report(std::string check, nlohmann::json params, std::complex<double> lhs,
                                    std::complex<double> rhs, double tolerance) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  stash_imag(r.params, lhs, rhs);
  r.lhs = lhs.real();
  r.rhs = rhs.real();
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = rel(r.abs_err, rhs);
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.abs_err) && r.abs_err <= tolerance;
  return r;
}

VerificationReport mc_report(std::string check, nlohmann::json params, std::complex<double> mc_mean,
                             double stderr_, std::complex<double> rhs, double k_sigma, std::uint64_t seed,
                             double tolerance) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.params["k_sigma"] = k_sigma;
  stash_imag(r.params, mc_mean, rhs);
  r.lhs = mc_mean.real();
  r.rhs = rhs.real();
  r.abs_err = std::abs(mc_mean - rhs);
  r.rel_err = rel(r.abs_err, rhs);
  r.tolerance = tolerance;
  r.mc_stderr = stderr_;
  r.seed = seed;
  r.pass = std::isfinite(r.abs_err) && (r.abs_err <= tolerance || r.abs_err <= k_sigma * stderr_);
  return r;
}

VerificationReport exact_report(std::string check, nlohmann::json params, const BigRat& lhs, const BigRat& rhs) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.params["lhs_exact"] = lhs.get_str();
  r.params["rhs_exact"] = rhs.get_str();
  r.lhs = lhs.get_d();
  r.rhs = rhs.get_d();
  const BigRat diff = abs(BigRat(lhs - rhs));
  r.abs_err = diff.get_d();
  r.rel_err = rhs != 0 ? BigRat(diff / abs(rhs)).get_d() : r.abs_err;
  r.tolerance = 0.0;
  r.pass = (lhs == rhs);
  return r;
}

nlohmann::json to_json(const VerificationReport& r, bool with_timing) {
  nlohmann::json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["tolerance"] = r.tolerance;
  j["mc_stderr"] = r.mc_stderr ? nlohmann::json(*r.mc_stderr) : nlohmann::json(nullptr);
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["wall_ms"] = with_timing ? r.wall_ms : 0;
  return j;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

}  // namespace haar
