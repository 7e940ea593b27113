#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "haar/report.hpp"

namespace haar::suite {

/// Sample counts and seeds for the verification suites. Every field can be
/// overridden from a JSON object with the same keys.
struct Config {
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  std::size_t thm1_samples = 200000;
  int thm1_cases = 20;
  int thm1_max_n = 5;
  int thm1_max_m = 2;
  std::size_t thm2a_samples = 200000;
  int thm2a_cases = 10;
  int thm2a_n = 4;
  std::vector<double> thm2a_eps = {0.05, 0.2};
  std::size_t lemma5_samples = 200000;
  std::size_t hist_samples = 100000;
  std::size_t reduction_samples = 100000;
  std::size_t gue_strip_samples = 20000;
  std::size_t ber_samples = 20000;
  int lemma1_max_weight = 6;
  int lemma1_max_m = 3;
  int lemma1_max_n = 10;
  int prop1_max_m = 4;
  int prop1_max_value = 15;
  int prop1_draws = 100;

  void apply(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Lemma 1 (both kinds) over all partitions in range, Selberg unit mass,
/// factorial determinants and the tensor-quadrature route.
std::vector<VerificationReport> lemma1(const Config& c);
/// Exact determinant identity on integer grids.
std::vector<VerificationReport> prop1(const Config& c);
/// Determinant formulas for positive and negative moments against Haar Monte
/// Carlo, plus the CUE closed form.
std::vector<VerificationReport> thm1(const Config& c);
/// Regularized inverse determinant: Monte Carlo, slope fits and eps -> 0 limits.
std::vector<VerificationReport> thm2a(const Config& c);
/// I_k against adaptive quadrature and its small-eps form.
std::vector<VerificationReport> appendix_a(const Config& c);
/// Bessel-kernel group integrals.
std::vector<VerificationReport> lemma5(const Config& c);
/// Ginibre, rank-one CUE and rank-one GUE densities.
std::vector<VerificationReport> densities(const Config& c);
/// Limiting log-potential for the Marchenko-Pastur law and the Ginibre check.
std::vector<VerificationReport> feinberg_zee(const Config& c);

struct Section {
  std::string name;
  std::vector<VerificationReport> reports;
};

/// Every suite above, in a fixed order.
std::vector<Section> all(const Config& c);

/// {"config": ..., "sections": [{"name", "pass", "reports": [...]}], "pass"}.
nlohmann::json sections_json(const std::vector<Section>& sections, const Config& c, bool with_timing = false);

}  // namespace haar::suite
