#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "haar/poly.hpp"
#include "haar/report.hpp"
#include "haar/sampling.hpp"

namespace haar::densities {

/// Mean eigenvalue density of n x n Ginibre matrices (entries of unit variance).
double ginibre_density(int n, cplx z);

/// (2 pi) int_{r0}^{r1} rho r dr for the Ginibre density.
double ginibre_radial_mass(int n, double r0, double r1);

/// Dimensional reduction: Monte Carlo over Ginibre(n-1) of
/// e^{-|z|^2}/(pi (n-1)!) |det(zI - W)|^2 against ginibre_density.
VerificationReport ginibre_reduction_check(int n, cplx z, const sampling::McOptions& opts, double k_sigma = 3.0);

/// Ginibre(n) eigenvalue histogram on radial bins against the bin-averaged density.
std::vector<VerificationReport> ginibre_histogram_check(int n, const std::vector<double>& edges,
                                                        const sampling::McOptions& opts, double k_sigma = 4.0);

/// Mean eigenvalue density of G_n U_n with G_n = diag(sqrt(1-gamma), 1, ..., 1);
/// zero outside 1-gamma < |z|^2 < 1.
double cue_rank1_density(int n, double gamma, cplx z);

/// pi int_{q0}^{q1} rho dq with q = |z|^2 (mass of the annulus q0 < |z|^2 < q1).
double cue_rank1_annulus_mass(int n, double gamma, double q0, double q1);

/// Radial edges splitting 1-gamma < |z|^2 < 1 into bins of equal area.
std::vector<double> cue_equal_area_edges(double gamma, int bins);

/// G_n U_n eigenvalue histogram against the bin-averaged density.
std::vector<VerificationReport> cue_rank1_histogram_check(int n, double gamma, int bins,
                                                          const sampling::McOptions& opts, double k_sigma = 4.0);

/// Large-n fraction of eigenvalues in 2a/n <= 1 - |z|^2 <= 2b/n.
double cue_rank1_count_limit(double a, double b, double gamma);
/// The same fraction at finite n, from the density.
double cue_rank1_count(int n, double a, double b, double gamma);

struct DensityValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Prefactor of the rank-one GUE density (total mass n).
double gue_rank1_prefactor(int n, double beta, double gamma, double x, double y);

/// Mean eigenvalue density of H + i diag(gamma, 0, ..., 0), H ~ exp(-(beta/2) tr H^2).
/// n = 2 is evaluated by deterministic quadrature of the scalar Gaussian
/// average; n >= 3 by Monte Carlo over GUE(n-1).
DensityValue gue_rank1_density(int n, double beta, double gamma, cplx z, const sampling::McOptions& opts);

/// <|z - h - i(gamma - y)|^2> for scalar h ~ N(0, 1/beta), by quadrature.
double gue_rank1_inner_n2(double beta, double gamma, cplx z);

/// Mass of the strip 0 < y < gamma by per-sample quadrature over (x, y).
DensityValue gue_rank1_strip_mass(int n, double beta, double gamma, const sampling::McOptions& opts);

/// Probability measure dw on [0, inf).
class SpectralLaw {
 public:
  enum class Kind { marchenko_pastur, discrete, table };

  static SpectralLaw mp();
  static SpectralLaw discrete(std::vector<double> atoms, std::vector<double> weights);
  /// Cell masses at sorted nodes (e.g. a tabulated density times cell widths).
  static SpectralLaw table(std::vector<double> nodes, std::vector<double> masses);
  /// Two-column CSV "lambda,mass"; lines starting with '#' are skipped.
  static SpectralLaw from_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// int f dw.
  double integrate(const std::function<double(double)>& f) const;
  double mass() const;
  double m1() const;
  /// int dw/lambda, or nullopt when infinite.
  std::optional<double> m_inv() const;
  double log_moment() const;

 private:
  Kind kind_ = Kind::discrete;
  std::vector<double> atoms_, weights_;
  double lo_ = 0.0, hi_ = 0.0;
  std::optional<double> m_inv_;
};

enum class PhiBranch { outer, inner, middle };

struct PhiValue {
  double value = 0.0;
  PhiBranch branch = PhiBranch::outer;
  /// Saddle point t0 (middle branch only).
  double t0 = 0.0;
};

/// Limiting log-potential: ln|z|^2 for |z|^2 > m1; int ln(lambda) dw for
/// |z|^2 < 1/m_{-1}; otherwise ln|z|^2 + int ln((lambda+t0)/(|z|^2+t0)) dw
/// with int dw/(lambda+t0) = 1/(|z|^2+t0).
PhiValue fz_phi(const SpectralLaw& law, cplx z);

/// q values of a grid where no branch of fz_phi applies (the saddle-point
/// root is not bracketed). Empty when the three branches tile the grid.
std::vector<double> phi_tiling_gaps(const SpectralLaw& law, const std::vector<double>& q_grid);

/// Coefficients of p_n(x) = <det(xI + WW*)> by Monte Carlo over Ginibre(n)
/// scaled by 1/sqrt(n).
struct PolyEstimate {
  Poly p;
  std::vector<double> stderr_;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
};
PolyEstimate ginibre_charpoly_mc(int n, const sampling::McOptions& opts);

/// (1/n) ln <|det(zI - W)|^2> through the invariant-ensemble reduction with
/// Monte Carlo p_n, minus Phi for the Marchenko-Pastur law.
VerificationReport ber_check(int n, cplx z, const PolyEstimate& pn, double tolerance = 5e-2);

}  // namespace haar::densities
