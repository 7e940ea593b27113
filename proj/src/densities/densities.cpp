#include "haar/densities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "haar/bigrat.hpp"
#include "haar/error.hpp"
#include "haar/matrix.hpp"
#include "haar/moments.hpp"
#include "haar/quadrature.hpp"
#include "haar/schur.hpp"

namespace haar::densities {

using std::numbers::pi;

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

// e^{-q} sum_{k<n} q^k / k!, summed in log space.
double truncated_exp(int n, double q) {
  if (q == 0.0) return 1.0;
  const double lq = std::log(q);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::exp(k * lq - std::lgamma(k + 1.0) - q);
  return acc;
}

double cue_q_density(int n, double gamma, double q) {
  if (!(q > 1.0 - gamma && q < 1.0)) return 0.0;
  const double gt = (q + gamma - 1.0) / q;
  std::vector<double> eigs(static_cast<std::size_t>(n - 1), 1.0);
  eigs[0] = 1.0 - gt;
  std::sort(eigs.begin(), eigs.end());
  const double inner = moments::moment_pos_z(HermSpectrum(std::move(eigs)), cplx(std::sqrt(q), 0.0));
  return (n - 1) / (pi * gamma * q) * std::pow(gt / gamma, n - 2) * inner;
}

// prod_j (z - lambda_j) for real lambda_j.
cplx charpoly_at(const std::vector<double>& eigs, cplx z) {
  cplx p = 1.0;
  for (double l : eigs) p *= z - l;
  return p;
}

std::vector<double> minor_eigs(const ComplexMat& h) {
  const std::size_t n = h.dim();
  if (n <= 1) return {};
  ComplexMat m(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) m(i - 1, j - 1) = h(i, j);
  return hermitian_eigvals(m);
}

std::vector<VerificationReport> radial_histogram_reports(const char* check, const sampling::Histogram& hist,
                                                         const std::function<double(double, double)>& mass,
                                                         nlohmann::json base, double k_sigma) {
  std::vector<VerificationReport> out;
  const auto& e = hist.binning.edges_r;
  for (std::size_t b = 0; b + 1 < e.size(); ++b) {
    const double area = hist.binning.area(b);
    const double expect = mass(e[b] * e[b], e[b + 1] * e[b + 1]) / area;
    // an integer count with mean mu has variance at least f(1 - f), f = frac(mu);
    // keeps sparse bins with no hits from reporting a zero error
    const double f = expect * area - std::floor(expect * area);
    const double floor_se = std::sqrt(f * (1.0 - f) / static_cast<double>(std::max<std::size_t>(hist.samples, 1))) / area;
    const double se = std::max(hist.stderr_[b], floor_se);
    nlohmann::json params = base;
    params["bin"] = b;
    params["r0"] = e[b];
    params["r1"] = e[b + 1];
    params["N"] = hist.samples;
    params["failed"] = hist.failed;
    out.push_back(mc_report(check, std::move(params), hist.density[b], se, expect, k_sigma, hist.seed,
                            1e-12));
  }
  return out;
}

}  // namespace

double ginibre_density(int n, cplx z) {
  require(n >= 1, "ginibre_density requires n >= 1");
  return truncated_exp(n, std::norm(z)) / pi;
}

double ginibre_radial_mass(int n, double r0, double r1) {
  require(n >= 1 && 0.0 <= r0 && r0 <= r1, "ginibre_radial_mass requires n >= 1, 0 <= r0 <= r1");
  if (r0 == r1) return 0.0;
  return adaptive_integrate([&](double q) { return truncated_exp(n, q); }, r0 * r0, r1 * r1, 1e-13).value;
}

VerificationReport ginibre_reduction_check(int n, cplx z, const sampling::McOptions& opts, double k_sigma) {
  require(n >= 2, "ginibre_reduction_check requires n >= 2");
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const double pre = std::exp(-std::norm(z) - std::lgamma(static_cast<double>(n))) / pi;
  const auto est = sampling::mc_run(
      [&](sampling::Rng& rng) {
        const ComplexMat w = sampling::ginibre(d, rng);
        return cplx(pre * std::norm(det(ComplexMat::scalar(d, z) - w)), 0.0);
      },
      opts);
  nlohmann::json params = {{"n", n},         {"z_re", z.real()},      {"z_im", z.imag()},
                           {"N", est.samples}, {"shards", est.shards}};
  return mc_report("ginibre_reduction", std::move(params), est.mean, est.stderr_, ginibre_density(n, z), k_sigma,
                   opts.seed);
}

std::vector<VerificationReport> ginibre_histogram_check(int n, const std::vector<double>& edges,
                                                        const sampling::McOptions& opts, double k_sigma) {
  require(n >= 1, "ginibre_histogram_check requires n >= 1");
  const auto hist = sampling::eig_histogram(sampling::EnsembleSpec::ginibre(static_cast<std::size_t>(n)),
                                            sampling::Binning::radial(edges), opts);
  return radial_histogram_reports(
      "ginibre_histogram", hist,
      [&](double q0, double q1) { return ginibre_radial_mass(n, std::sqrt(q0), std::sqrt(q1)); },
      {{"n", n}, {"shards", opts.shards}}, k_sigma);
}

double cue_rank1_density(int n, double gamma, cplx z) {
  require(n >= 2, "cue_rank1_density requires n >= 2");
  require(gamma > 0.0 && gamma < 1.0, "cue_rank1_density requires 0 < gamma < 1");
  return cue_q_density(n, gamma, std::norm(z));
}

double cue_rank1_annulus_mass(int n, double gamma, double q0, double q1) {
  require(n >= 2, "cue_rank1_annulus_mass requires n >= 2");
  require(gamma > 0.0 && gamma < 1.0, "cue_rank1_annulus_mass requires 0 < gamma < 1");
  const double lo = std::max(q0, 1.0 - gamma);
  const double hi = std::min(q1, 1.0);
  if (!(hi > lo)) return 0.0;
  const double scale = std::max(1.0, static_cast<double>(n));
  return pi * adaptive_integrate([&](double q) { return cue_q_density(n, gamma, q); }, lo, hi, 1e-12 * scale).value;
}

std::vector<double> cue_equal_area_edges(double gamma, int bins) {
  require(gamma > 0.0 && gamma < 1.0 && bins >= 1, "cue_equal_area_edges requires 0 < gamma < 1, bins >= 1");
  std::vector<double> edges;
  for (int k = 0; k <= bins; ++k) edges.push_back(std::sqrt(1.0 - gamma + gamma * k / bins));
  return edges;
}

std::vector<VerificationReport> cue_rank1_histogram_check(int n, double gamma, int bins,
                                                          const sampling::McOptions& opts, double k_sigma) {
  const auto edges = cue_equal_area_edges(gamma, bins);
  // the support edges are closed; widen the outer bins by one ulp-scale step
  auto widened = edges;
  widened.front() = std::sqrt(std::max(0.0, 1.0 - gamma - 1e-12));
  widened.back() = std::sqrt(1.0 + 1e-12);
  const auto hist = sampling::eig_histogram(sampling::EnsembleSpec::cue_rank1(static_cast<std::size_t>(n), gamma),
                                            sampling::Binning::radial(widened), opts);
  return radial_histogram_reports(
      "cue_rank1_histogram", hist, [&](double q0, double q1) { return cue_rank1_annulus_mass(n, gamma, q0, q1); },
      {{"n", n}, {"gamma", gamma}, {"shards", opts.shards}}, k_sigma);
}

double cue_rank1_count_limit(double a, double b, double gamma) {
  require(0.0 < a && a <= b, "cue_rank1_count_limit requires 0 < a <= b");
  require(gamma > 0.0 && gamma < 1.0, "cue_rank1_count_limit requires 0 < gamma < 1");
  const double c = (gamma - 2.0) / gamma;
  return std::sinh(a) / a * std::exp(a * c) - std::sinh(b) / b * std::exp(b * c);
}

double cue_rank1_count(int n, double a, double b, double gamma) {
  require(0.0 < a && a <= b, "cue_rank1_count requires 0 < a <= b");
  return cue_rank1_annulus_mass(n, gamma, 1.0 - 2.0 * b / n, 1.0 - 2.0 * a / n) / n;
}

double gue_rank1_prefactor(int n, double beta, double gamma, double x, double y) {
  require(n >= 2, "gue_rank1_prefactor requires n >= 2");
  require(beta > 0.0 && gamma > 0.0, "gue_rank1_prefactor requires beta, gamma > 0");
  if (!(y > 0.0 && y < gamma)) return 0.0;
  const double g = gamma - y;
  const double lg = n * std::log(beta) + (n - 2) * std::log(g) - 0.5 * beta * x * x - beta * g * y -
                    0.5 * std::log(2.0 * pi * beta) - (n - 1) * std::log(gamma) - std::lgamma(n - 1.0);
  return std::exp(lg);
}

double gue_rank1_inner_n2(double beta, double gamma, cplx z) {
  require(beta > 0.0 && gamma > 0.0, "gue_rank1_inner_n2 requires beta, gamma > 0");
  const double s = 1.0 / std::sqrt(beta);
  const cplx shift = z - cplx(0.0, gamma - z.imag());
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  const double span = 12.0;
  return adaptive_integrate(
             [&](double u) { return norm * std::exp(-0.5 * u * u) * std::norm(shift - s * u); }, -span, span,
             1e-14 * (1.0 + std::norm(shift) + s * s))
      .value;
}

DensityValue gue_rank1_density(int n, double beta, double gamma, cplx z, const sampling::McOptions& opts) {
  const double pre = gue_rank1_prefactor(n, beta, gamma, z.real(), z.imag());
  if (pre == 0.0) return {};
  if (n == 2) return {pre * gue_rank1_inner_n2(beta, gamma, z), 0.0};
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const double delta = gamma - z.imag();
  const auto est = sampling::mc_run(
      [&](sampling::Rng& rng) {
        ComplexMat m = ComplexMat::scalar(d, z) - sampling::gue(d, beta, rng);
        m(0, 0) -= cplx(0.0, delta);
        return cplx(std::norm(det(m)), 0.0);
      },
      opts);
  return {pre * est.mean.real(), pre * est.stderr_};
}

DensityValue gue_rank1_strip_mass(int n, double beta, double gamma, const sampling::McOptions& opts) {
  require(n >= 2, "gue_rank1_strip_mass requires n >= 2");
  require(beta > 0.0 && gamma > 0.0, "gue_rank1_strip_mass requires beta, gamma > 0");
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const double half = (10.0 + 3.0 * std::sqrt(static_cast<double>(n))) / std::sqrt(beta);
  const QuadratureRule rx = legendre01(96);
  const QuadratureRule ry = legendre01(24);
  struct Node {
    double x, y, w;
  };
  std::vector<Node> grid;
  for (std::size_t i = 0; i < rx.size(); ++i)
    for (std::size_t j = 0; j < ry.size(); ++j) {
      const double x = -half + 2.0 * half * rx.nodes[i];
      const double y = gamma * ry.nodes[j];
      const double w = 2.0 * half * rx.weights[i] * gamma * ry.weights[j] * gue_rank1_prefactor(n, beta, gamma, x, y);
      grid.push_back({x, y, w});
    }
  const auto est = sampling::mc_run(
      [&](sampling::Rng& rng) {
        const ComplexMat h = sampling::gue(d, beta, rng);
        const auto full = hermitian_eigvals(h);
        const auto minor = minor_eigs(h);
        double acc = 0.0;
        // det(zI - H - i delta e1 e1*) = det(zI - H) - i delta det(zI - H') with H' the lower minor
        for (const Node& nd : grid) {
          const cplx z(nd.x, nd.y);
          const cplx v = charpoly_at(full, z) - cplx(0.0, gamma - nd.y) * charpoly_at(minor, z);
          acc += nd.w * std::norm(v);
        }
        return cplx(acc, 0.0);
      },
      opts);
  return {est.mean.real(), est.stderr_};
}

SpectralLaw SpectralLaw::mp() {
  SpectralLaw l;
  l.kind_ = Kind::marchenko_pastur;
  l.lo_ = 0.0;
  l.hi_ = 4.0;
  return l;
}

SpectralLaw SpectralLaw::discrete(std::vector<double> atoms, std::vector<double> weights) {
  require(!atoms.empty() && atoms.size() == weights.size(), "discrete law needs matching atoms and weights");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require(atoms[i] >= 0.0 && std::isfinite(atoms[i]), "law atoms must be finite and nonnegative");
    require(weights[i] >= 0.0, "law weights must be nonnegative");
    total += weights[i];
  }
  require(std::abs(total - 1.0) <= 1e-10, "law must have unit mass to 1e-10");
  SpectralLaw l;
  l.kind_ = Kind::discrete;
  l.lo_ = *std::min_element(atoms.begin(), atoms.end());
  l.hi_ = *std::max_element(atoms.begin(), atoms.end());
  bool zero_atom = false;
  double minv = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (weights[i] == 0.0) continue;
    if (atoms[i] == 0.0) zero_atom = true;
    else minv += weights[i] / atoms[i];
  }
  if (!zero_atom) l.m_inv_ = minv;
  l.atoms_ = std::move(atoms);
  l.weights_ = std::move(weights);
  return l;
}

SpectralLaw SpectralLaw::table(std::vector<double> nodes, std::vector<double> masses) {
  require(std::is_sorted(nodes.begin(), nodes.end()), "table nodes must be sorted");
  SpectralLaw l = discrete(std::move(nodes), std::move(masses));
  l.kind_ = Kind::table;
  return l;
}

SpectralLaw SpectralLaw::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open law file " + path);
  std::vector<double> nodes, masses;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double lam = 0.0, mass = 0.0;
    if (!(ss >> lam >> mass)) throw PreconditionError("malformed law line: " + line);
    nodes.push_back(lam);
    masses.push_back(mass);
  }
  return table(std::move(nodes), std::move(masses));
}

double SpectralLaw::integrate(const std::function<double(double)>& f) const {
  if (kind_ == Kind::marchenko_pastur) {
    // lambda = 4 sin^2(phi/2): dw = (1 + cos phi)/pi dphi on (0, pi)
    return adaptive_integrate(
               [&](double phi) {
                 const double s = std::sin(0.5 * phi);
                 return f(4.0 * s * s) * (1.0 + std::cos(phi)) / pi;
               },
               0.0, pi, 1e-13)
        .value;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) acc += weights_[i] * f(atoms_[i]);
  return acc;
}

double SpectralLaw::mass() const {
  return integrate([](double) { return 1.0; });
}

double SpectralLaw::m1() const {
  return integrate([](double l) { return l; });
}

std::optional<double> SpectralLaw::m_inv() const {
  return m_inv_;
}

double SpectralLaw::log_moment() const {
  return integrate([](double l) { return std::log(l); });
}

namespace {

// int (q - lambda)/(lambda + t) dw: same sign as int dw/(lambda+t) - 1/(q+t).
double saddle_fn(const SpectralLaw& law, double q, double t) {
  return law.integrate([&](double l) { return (q - l) / (l + t); });
}

std::optional<double> saddle_root(const SpectralLaw& law, double q) {
  double lo = std::max(q, 1e-3);
  int guard = 0;
  while (saddle_fn(law, q, lo) <= 0.0) {
    lo *= 0.25;
    if (++guard > 60) return std::nullopt;
  }
  double hi = std::max(q, 1.0);
  guard = 0;
  while (saddle_fn(law, q, hi) >= 0.0) {
    hi *= 4.0;
    if (++guard > 60) return std::nullopt;
  }
  return find_root_monotone([&](double t) { return saddle_fn(law, q, t); }, lo, hi, 1e-15);
}

}  // namespace

PhiValue fz_phi(const SpectralLaw& law, cplx z) {
  const double q = std::norm(z);
  const double m1 = law.m1();
  if (q >= m1) return {std::log(q), PhiBranch::outer, 0.0};
  const auto minv = law.m_inv();
  if (q == 0.0 || (minv && q * *minv <= 1.0)) return {law.log_moment(), PhiBranch::inner, 0.0};
  const auto t0 = saddle_root(law, q);
  if (!t0) throw ConvergenceError("fz_phi: saddle-point root not bracketed");
  const double t = *t0;
  const double v = std::log(q) + law.integrate([&](double l) { return std::log((l + t) / (q + t)); });
  return {v, PhiBranch::middle, t};
}

std::vector<double> phi_tiling_gaps(const SpectralLaw& law, const std::vector<double>& q_grid) {
  std::vector<double> gaps;
  for (double q : q_grid) {
    try {
      fz_phi(law, cplx(std::sqrt(q), 0.0));
    } catch (const ConvergenceError&) {
      gaps.push_back(q);
    }
  }
  return gaps;
}

PolyEstimate ginibre_charpoly_mc(int n, const sampling::McOptions& opts) {
  require(n >= 1, "ginibre_charpoly_mc requires n >= 1");
  const std::size_t d = static_cast<std::size_t>(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  const auto est = sampling::mc_run_vec(
      [&](sampling::Rng& rng, std::span<double> out) {
        const HermSpectrum ww = gram_eigs(sampling::ginibre(d, rng) * s);
        std::vector<cplx> x(ww.eigs().begin(), ww.eigs().end());
        const auto e = schur::elementary(x, n);
        for (std::size_t k = 0; k <= d; ++k) out[k] = e[d - k].real();
      },
      d + 1, opts);
  std::vector<cplx> c(est.mean.begin(), est.mean.end());
  return {Poly(std::move(c)), est.stderr_, est.samples, est.seed, est.shards};
}

VerificationReport ber_check(int n, cplx z, const PolyEstimate& pn, double tolerance) {
  require(n >= 1, "ber_check requires n >= 1");
  const double mom = moments::invariant_ensemble_moment(pn.p, z, n).real();
  const double lhs = std::log(mom) / n;
  const PhiValue phi = fz_phi(SpectralLaw::mp(), z);
  // exact finite-n value for comparison: n!/n^n sum_k (n|z|^2)^k / k!
  const double nq = n * std::norm(z);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k)
    acc += std::exp(std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n)) - std::lgamma(k + 1.0) +
                    (nq > 0.0 ? k * std::log(nq) : (k == 0 ? 0.0 : -std::numeric_limits<double>::infinity())));
  nlohmann::json params = {{"n", n},
                           {"z_abs", std::abs(z)},
                           {"branch", phi.branch == PhiBranch::outer    ? "outer"
                                      : phi.branch == PhiBranch::inner ? "inner"
                                                                       : "middle"},
                           {"exact_finite_n", std::log(acc) / n},
                           {"N", pn.samples},
                           {"shards", pn.shards}};
  auto r = tolerance_report("ber_ginibre", std::move(params), lhs, phi.value, tolerance);
  r.seed = pn.seed;
  return r;
}

}  // namespace haar::densities
