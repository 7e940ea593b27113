#include "haar/suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "haar/besselint.hpp"
#include "haar/betadet.hpp"
#include "haar/densities.hpp"
#include "haar/moments.hpp"
#include "haar/quadrature.hpp"
#include "haar/regdet.hpp"
#include "haar/sampling.hpp"
#include "haar/schur.hpp"

namespace haar::suite {

namespace {

using Reports = std::vector<VerificationReport>;

template <class F>
VerificationReport timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

sampling::McOptions mc(const Config& c, std::size_t samples, std::uint64_t key) {
  // each check gets its own seed so adding checks never shifts the others
  return {samples, c.seed * 1000003ULL + key, c.shards};
}

double rel_scale(cplx v) { return std::max(1.0, std::abs(v)); }

template <class T>
void get(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void Config::apply(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!to_json().contains(it.key())) throw PreconditionError("unknown config key: " + it.key());
  }
  get(j, "seed", seed);
  get(j, "shards", shards);
  get(j, "thm1_samples", thm1_samples);
  get(j, "thm1_cases", thm1_cases);
  get(j, "thm1_max_n", thm1_max_n);
  get(j, "thm1_max_m", thm1_max_m);
  get(j, "thm2a_samples", thm2a_samples);
  get(j, "thm2a_cases", thm2a_cases);
  get(j, "thm2a_n", thm2a_n);
  get(j, "thm2a_eps", thm2a_eps);
  get(j, "lemma5_samples", lemma5_samples);
  get(j, "hist_samples", hist_samples);
  get(j, "reduction_samples", reduction_samples);
  get(j, "gue_strip_samples", gue_strip_samples);
  get(j, "ber_samples", ber_samples);
  get(j, "lemma1_max_weight", lemma1_max_weight);
  get(j, "lemma1_max_m", lemma1_max_m);
  get(j, "lemma1_max_n", lemma1_max_n);
  get(j, "prop1_max_m", prop1_max_m);
  get(j, "prop1_max_value", prop1_max_value);
  get(j, "prop1_draws", prop1_draws);
  if (shards < 1) throw PreconditionError("shards must be >= 1");
  if (thm2a_n < 2) throw PreconditionError("thm2a_n must be >= 2");
  for (double e : thm2a_eps)
    if (!(e > 0.0)) throw PreconditionError("thm2a_eps values must be positive");
}

nlohmann::json Config::to_json() const {
  return {{"seed", seed},
          {"shards", shards},
          {"thm1_samples", thm1_samples},
          {"thm1_cases", thm1_cases},
          {"thm1_max_n", thm1_max_n},
          {"thm1_max_m", thm1_max_m},
          {"thm2a_samples", thm2a_samples},
          {"thm2a_cases", thm2a_cases},
          {"thm2a_n", thm2a_n},
          {"thm2a_eps", thm2a_eps},
          {"lemma5_samples", lemma5_samples},
          {"hist_samples", hist_samples},
          {"reduction_samples", reduction_samples},
          {"gue_strip_samples", gue_strip_samples},
          {"ber_samples", ber_samples},
          {"lemma1_max_weight", lemma1_max_weight},
          {"lemma1_max_m", lemma1_max_m},
          {"lemma1_max_n", lemma1_max_n},
          {"prop1_max_m", prop1_max_m},
          {"prop1_max_value", prop1_max_value},
          {"prop1_draws", prop1_draws}};
}

Reports lemma1(const Config& c) {
  using betadet::MeasureKind;
  Reports out;
  for (int w = 0; w <= c.lemma1_max_weight; ++w)
    for (int m = 1; m <= c.lemma1_max_m; ++m)
      for (const auto& lam : schur::partitions(w, m))
        for (int n = 0; n <= c.lemma1_max_n; ++n) {
          if (lam.empty() || lam[0] <= n)
            out.push_back(timed([&] { return betadet::lemma1_check(lam, m, n, MeasureKind::mu); }));
          if (2 * m <= n) out.push_back(timed([&] { return betadet::lemma1_check(lam, m, n, MeasureKind::nu); }));
        }
  // unit mass of both measures
  for (int m = 1; m <= c.lemma1_max_m; ++m)
    for (int n = 0; n <= c.lemma1_max_n; ++n) {
      for (auto kind : {MeasureKind::mu, MeasureKind::nu}) {
        if (kind == MeasureKind::nu && 2 * m > n) continue;
        const auto t = betadet::lemma1_terms(schur::Partition{}, m, n, kind);
        out.push_back(exact_report("selberg_unit_mass",
                                   {{"m", m}, {"n", n}, {"kind", kind == MeasureKind::mu ? "a" : "b"}},
                                   t.beta_det_integral, BigRat(1)));
      }
    }
  for (const std::vector<int>& f : {std::vector<int>{2, 0}, {5, 3, 1}, {12, 9, 4, 0}, {7, 6, 5, 4}})
    out.push_back(timed([&] { return betadet::factorial_det_check(f); }));
  for (const auto& [lam, m, n, kind] :
       {std::tuple{schur::Partition{1}, 1, 4, MeasureKind::nu}, std::tuple{schur::Partition{2, 1}, 2, 5, MeasureKind::mu},
        std::tuple{schur::Partition{3, 1}, 2, 6, MeasureKind::nu}, std::tuple{schur::Partition{2, 2, 1}, 3, 7, MeasureKind::mu}})
    out.push_back(timed([&] { return betadet::quadrature_vs_exact(lam, m, n, kind); }));
  return out;
}

Reports prop1(const Config& c) {
  Reports out;
  out.push_back(betadet::prop1_check({4, 6}, {1, 1}));
  auto rng = sampling::substream(c.seed, 0x9e0);
  for (int m = 1; m <= c.prop1_max_m; ++m) {
    if (m + 1 > c.prop1_max_value) break;
    std::uniform_int_distribution<int> pd(m + 1, c.prop1_max_value), qd(0, c.prop1_max_value);
    for (int k = 0; k < c.prop1_draws; ++k) {
      std::vector<int> p(m), q(m);
      for (int j = 0; j < m; ++j) {
        p[j] = pd(rng);
        q[j] = qd(rng);
      }
      out.push_back(betadet::prop1_check(p, q));
    }
  }
  return out;
}

Reports thm1(const Config& c) {
  using moments::Sign;
  Reports out;
  for (int i = 0; i < c.thm1_cases; ++i) {
    const int n = 2 + i % std::max(1, c.thm1_max_n - 1);
    int m = 1 + (i / 2) % std::max(1, c.thm1_max_m);
    const Sign sign = i % 2 == 0 ? Sign::positive : Sign::negative;
    if (sign == Sign::negative && 2 * m > n) m = 1;
    auto rng = sampling::substream(c.seed, 0x7100 + static_cast<std::uint64_t>(i));
    const auto q = moments::random_query(rng, static_cast<std::size_t>(n), m, sign);
    out.push_back(timed([&] {
      auto r = moments::thm1_mc_check(q, mc(c, c.thm1_samples, 0x7100 + i));
      r.params["case"] = i;
      return r;
    }));
  }
  // CUE: sum_{k<=n} |z|^{2k}
  for (int n = 1; n <= 6; ++n)
    for (double r : {0.3, 0.9, 1.0, 1.7}) {
      const cplx z = std::polar(r, 0.4 * n);
      double expect = 0.0;
      for (int k = 0; k <= n; ++k) expect += std::pow(r, 2 * k);
      const double got = moments::moment_pos_z(ComplexMat::identity(static_cast<std::size_t>(n)), z);
      out.push_back(tolerance_report("cue_closed_form", {{"n", n}, {"z_abs", r}}, got, expect, 1e-13 * expect));
    }
  return out;
}

Reports thm2a(const Config& c) {
  Reports out;
  // (i) formula against the defining Haar integral, straddling spectra
  const std::size_t n = static_cast<std::size_t>(c.thm2a_n);
  for (int i = 0; i < c.thm2a_cases; ++i) {
    auto rng = sampling::substream(c.seed, 0x2a00 + static_cast<std::uint64_t>(i));
    const ComplexMat a = sampling::ginibre(n, rng) * (1.0 / std::sqrt(static_cast<double>(n)));
    const HermSpectrum aa = gram_eigs(a);
    // |z|^2 between the two middle eigenvalues
    const std::size_t h = n / 2;
    const cplx z = std::polar(std::sqrt(std::sqrt(aa[h - 1] * aa[h])), 0.7 * i);
    for (std::size_t e = 0; e < c.thm2a_eps.size(); ++e) {
      const double eps = c.thm2a_eps[e];
      out.push_back(timed([&] {
        const double formula = regdet::r_eps(aa, z, eps);
        const auto key = 0x2a000 + 64 * static_cast<std::uint64_t>(i) + e;
        const auto est = regdet::r_eps_mc(a, z, eps, mc(c, c.thm2a_samples, key));
        return mc_report("thm2a_mc",
                         {{"case", i}, {"n", n}, {"eps", eps}, {"z_abs", std::abs(z)}, {"N", est.samples},
                          {"shards", est.shards}},
                         est.mean, est.stderr_, formula, 4.0, c.seed * 1000003ULL + key);
      }));
    }
  }
  // (ii) slope of r_eps against ln(1/eps^2)
  const std::vector<std::pair<std::vector<double>, cplx>> spectra = {
      {{0.5, 2.0}, 1.0},          {{0.3, 4.0}, 1.0},         {{1.125, 4.5}, cplx(0.0, 1.5)},
      {{0.2, 0.6, 1.8}, 1.0},     {{0.4, 1.5, 2.5}, 1.0},    {{0.5, 2.0, 3.5}, std::polar(1.2, 1.0)},
  };
  for (const auto& [eigs, z] : spectra)
    out.push_back(timed([&] { return regdet::theorem2a_density_ratio(HermSpectrum(eigs), z); }));
  // (iii) eps -> 0 against the negative moment when the spectrum does not straddle
  const std::vector<std::pair<std::vector<double>, cplx>> outside = {
      {{0.2, 0.5}, 1.0}, {{2.0, 3.0}, 1.0}, {{0.1, 0.3, 0.6}, 1.0}, {{1.5, 2.5, 4.0}, 1.0}, {{0.5, 1.0, 2.0}, 2.0},
  };
  for (const auto& [eigs, z] : outside) {
    const HermSpectrum aa(eigs);
    const double eps = 1e-8;
    const double lim = regdet::r_eps(aa, z, eps);
    // r_eps averages 1/|det(I - AU/z)|^2, hence the |z|^{2n}
    const double neg = moments::moment_neg_z(aa, z) * std::pow(std::norm(z), static_cast<double>(eigs.size()));
    out.push_back(tolerance_report("thm2a_limit",
                                   {{"n", eigs.size()}, {"eps", eps}, {"z_abs", std::abs(z)},
                                    {"side", aa.max() < std::norm(z) ? "below" : "above"}},
                                   lim, neg, 1e-6 * rel_scale(neg)));
  }
  return out;
}

Reports appendix_a(const Config&) {
  Reports out;
  for (int k = 0; k <= 12; ++k)
    for (double a2 : {0.0, 0.5, 1.0, 1.5, 2.5, 4.0})
      for (double eps : {1e-6, 1e-4, 1e-2, 1.0}) {
        const double eps2 = eps * eps;
        const double exact = regdet::ik_exact(k, eps2, a2).value;
        auto f = [&](double t) {
          const double d = t - a2 + eps2;
          return std::pow(1.0 - t, k) / std::sqrt(d * d + 4.0 * eps2 * a2);
        };
        const double split = std::clamp(a2 - eps2, 0.0, 1.0);
        double quad = 0.0;
        for (auto [lo, hi] : {std::pair{0.0, split}, std::pair{split, 1.0}})
          if (hi > lo) quad += adaptive_integrate(f, lo, hi, 1e-14 * std::max(1.0, std::abs(exact))).value;
        out.push_back(
            tolerance_report("ik_exact_vs_quadrature", {{"k", k}, {"a2", a2}, {"eps", eps}}, exact, quad,
                             1e-8 * std::abs(quad)));
      }
  for (int k = 0; k <= 12; ++k)
    for (double a2 : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double eps2 = 1e-10;
      const double exact = regdet::ik_exact(k, eps2, a2).value;
      const double asym = regdet::ik_asymptotic(k, eps2, a2);
      out.push_back(tolerance_report("ik_asymptotic", {{"k", k}, {"a2", a2}, {"eps", 1e-5}}, asym, exact,
                                     1e-2 * std::abs(exact)));
    }
  return out;
}

Reports lemma5(const Config& c) {
  Reports out;
  int idx = 0;
  for (cplx z2 : {cplx(1.0), cplx(-1.5), cplx(2.0, 1.0), cplx(0.3, -0.8)}) {
    out.push_back(timed([&] {
      const std::size_t n = 4;
      ComplexMat a(n), b(n);
      a(0, 0) = z2;
      b(0, 0) = 1.0;
      const auto key = 0x5500 + static_cast<std::uint64_t>(idx);
      const auto est = besselint::fn_mc(a, b, mc(c, c.lemma5_samples, key));
      return mc_report("lemma5_rank1_mc",
                       {{"n", n}, {"z2_re", z2.real()}, {"z2_im", z2.imag()}, {"N", est.samples},
                        {"shards", est.shards}},
                       est.mean, est.stderr_, besselint::fn_rank1(z2, static_cast<int>(n)), 4.0,
                       c.seed * 1000003ULL + key);
    }));
    ++idx;
  }
  out.push_back(timed([&] {
    const std::size_t n = 5;
    ComplexMat a(n), b(n);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const auto key = 0x5580;
    const auto est = besselint::fn_mc(a, b, mc(c, c.lemma5_samples, key));
    return mc_report("lemma5_general_mc", {{"n", n}, {"m", 2}, {"N", est.samples}, {"shards", est.shards}}, est.mean,
                     est.stderr_, besselint::fn_general({1.0, -1.0}, 5), 4.0, c.seed * 1000003ULL + key);
  }));
  for (int n : {2, 3, 5, 8})
    for (cplx z2 : {cplx(0.5), cplx(-3.0), cplx(4.0, 3.0), cplx(25.0), cplx(0.0, -25.0), cplx(-25.0)}) {
      const cplx series = besselint::fn_rank1(z2, n);
      const cplx quad = besselint::fn_rank1_quadrature(z2, n);
      out.push_back(tolerance_report("lemma5_series_vs_quadrature",
                                     {{"n", n}, {"z2_re", z2.real()}, {"z2_im", z2.imag()}}, series, quad,
                                     1e-10 * rel_scale(quad)));
    }
  for (int n : {2, 4, 7}) {
    out.push_back(tolerance_report("lemma5_unit", {{"n", n}, {"form", "rank1"}}, besselint::fn_rank1(0.0, n), 1.0, 0.0));
    out.push_back(tolerance_report("lemma5_unit", {{"n", n}, {"form", "schur_series"}},
                                   besselint::fn_schur_series({}, n), 1.0, 0.0));
  }
  return out;
}

Reports densities(const Config& c) {
  using namespace densities;
  Reports out;
  std::vector<double> edges;
  for (int k = 0; k <= 12; ++k) edges.push_back(0.25 * k);
  for (int n = 1; n <= 4; ++n) {
    const auto key = 0x6100 + static_cast<std::uint64_t>(n);
    for (auto& r : ginibre_histogram_check(n, edges, mc(c, c.hist_samples, key))) out.push_back(std::move(r));
    out.push_back(tolerance_report("ginibre_total_mass", {{"n", n}}, ginibre_radial_mass(n, 0.0, 12.0), n, 1e-8));
  }
  int idx = 0;
  for (auto [n, z] : {std::pair{2, cplx(0.0)}, std::pair{3, cplx(1.0)}, std::pair{4, cplx(0.5, 0.5)},
                      std::pair{3, cplx(-0.3, 1.4)}}) {
    const auto key = 0x6200 + static_cast<std::uint64_t>(idx++);
    out.push_back(timed([&] { return ginibre_reduction_check(n, z, mc(c, c.reduction_samples, key), 3.0); }));
  }
  for (auto& r : cue_rank1_histogram_check(8, 0.5, 10, mc(c, c.hist_samples, 0x6300))) out.push_back(std::move(r));
  for (double g : {0.5, 0.999})
    out.push_back(tolerance_report("cue_rank1_total_mass", {{"n", 8}, {"gamma", g}},
                                   cue_rank1_annulus_mass(8, g, 0.0, 1.0), 8.0, 1e-4));
  for (auto [x, y] : {std::pair{0.0, 0.35}, std::pair{0.7, 0.1}, std::pair{-1.3, 0.6}, std::pair{2.5, 0.69}})
    for (double beta : {1.0, 2.5}) {
      const double gamma = 0.7;
      const cplx z(x, y);
      const double closed = x * x + 1.0 / beta + (2.0 * y - gamma) * (2.0 * y - gamma);
      out.push_back(tolerance_report("gue_rank1_n2", {{"x", x}, {"y", y}, {"beta", beta}, {"gamma", gamma}},
                                     gue_rank1_inner_n2(beta, gamma, z), closed, 1e-9));
    }
  out.push_back(timed([&] {
    const auto key = 0x6400;
    const auto opts = mc(c, c.gue_strip_samples, key);
    const auto mass = gue_rank1_strip_mass(3, 1.0, 0.7, opts);
    return mc_report("gue_rank1_strip_mass", {{"n", 3}, {"beta", 1.0}, {"gamma", 0.7}, {"N", opts.samples},
                                              {"shards", opts.shards}},
                     mass.value, mass.stderr_, 3.0, 4.0, opts.seed);
  }));
  for (auto [a, b] : {std::pair{0.5, 1.5}, std::pair{0.2, 3.0}}) {
    const double lim = cue_rank1_count_limit(a, b, 0.5);
    out.push_back(tolerance_report("cue_rank1_count", {{"n", 200}, {"a", a}, {"b", b}, {"gamma", 0.5}},
                                   cue_rank1_count(200, a, b, 0.5), lim, 0.02 * std::abs(lim)));
  }
  return out;
}

Reports feinberg_zee(const Config& c) {
  using namespace densities;
  Reports out;
  const SpectralLaw mp = SpectralLaw::mp();
  for (int k = 0; k < 10; ++k) {
    const double r = 0.05 + 0.1 * k;
    const PhiValue p = fz_phi(mp, std::polar(r, 0.3 * k));
    out.push_back(tolerance_report("phi_mp_inside", {{"z_abs", r}}, p.value, r * r - 1.0, 1e-6));
  }
  for (double r : {1.0, 1.2, 2.0, 3.5}) {
    const PhiValue p = fz_phi(mp, cplx(0.0, r));
    out.push_back(tolerance_report("phi_mp_outside", {{"z_abs", r}}, p.value, std::log(r * r), 0.0));
  }
  const auto pn = ginibre_charpoly_mc(24, mc(c, c.ber_samples, 0x7700));
  for (double r : {0.3, 0.6, 0.9}) out.push_back(timed([&] { return ber_check(24, cplx(r, 0.0), pn); }));
  return out;
}

std::vector<Section> all(const Config& c) {
  return {{"lemma1", lemma1(c)},   {"prop1", prop1(c)},       {"thm1", thm1(c)},
          {"thm2a", thm2a(c)},     {"appendix_a", appendix_a(c)}, {"lemma5", lemma5(c)},
          {"densities", densities(c)}, {"feinberg_zee", feinberg_zee(c)}};
}

nlohmann::json sections_json(const std::vector<Section>& sections, const Config& c, bool with_timing) {
  nlohmann::json js = nlohmann::json::array();
  bool pass = true;
  for (const auto& s : sections) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : s.reports) reports.push_back(to_json(r, with_timing));
    const bool ok = all_pass(s.reports);
    pass = pass && ok;
    js.push_back({{"name", s.name}, {"pass", ok}, {"count", s.reports.size()}, {"reports", std::move(reports)}});
  }
  return {{"config", c.to_json()}, {"sections", std::move(js)}, {"pass", pass}};
}

}  // namespace haar::suite
