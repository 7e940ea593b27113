#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "haar/densities.hpp"
#include "haar/error.hpp"
#include "haar/suite.hpp"

namespace {

using haar::cplx;
using haar::VerificationReport;

constexpr int kUsage = 2;

// "v" or "lo:hi:count"
std::vector<double> parse_axis(const std::string& s) {
  const auto c1 = s.find(':');
  if (c1 == std::string::npos) return {std::stod(s)};
  const auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw haar::PreconditionError("axis range must be lo:hi:count, got " + s);
  const double lo = std::stod(s.substr(0, c1));
  const double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  const int count = std::stoi(s.substr(c2 + 1));
  if (count < 1) throw haar::PreconditionError("axis count must be >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  return out;
}

// "X,Y" with each axis a value or lo:hi:count; several blocks separated by ';'
std::vector<cplx> parse_grid(const std::string& s) {
  std::vector<cplx> pts;
  std::stringstream blocks(s);
  std::string block;
  while (std::getline(blocks, block, ';')) {
    const auto comma = block.find(',');
    if (comma == std::string::npos) throw haar::PreconditionError("grid block must be X,Y, got " + block);
    const auto xs = parse_axis(block.substr(0, comma));
    const auto ys = parse_axis(block.substr(comma + 1));
    for (double y : ys)
      for (double x : xs) pts.emplace_back(x, y);
  }
  return pts;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_axis(item);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw haar::PreconditionError("cannot write " + path);
  out << text;
}

int print_reports(const std::vector<VerificationReport>& reports, bool timing) {
  nlohmann::json js = nlohmann::json::array();
  for (const auto& r : reports) js.push_back(haar::to_json(r, timing));
  std::cout << js.dump(2) << "\n";
  return haar::all_pass(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"haarmoments: spectral determinant moments over Haar unitary ensembles"};
  app.require_subcommand(1);

  haar::suite::Config cfg;
  std::string config_path;
  bool timing = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
    sub->add_option("--shards", cfg.shards, "Monte Carlo shards")->capture_default_str();
    sub->add_option("--config", config_path, "JSON file presetting sample counts and tolerances");
    sub->add_flag("--timing", timing, "Report wall_ms (output is then no longer reproducible)");
  };

  auto* verify = app.add_subcommand("verify", "Run one verification suite");
  verify->require_subcommand(1);

  auto* v_thm1 = verify->add_subcommand("thm1", "Moment formulas against Haar Monte Carlo");
  common(v_thm1);
  v_thm1->add_option("--n", cfg.thm1_max_n, "Largest dimension")->capture_default_str();
  v_thm1->add_option("--m", cfg.thm1_max_m, "Largest power")->capture_default_str();
  v_thm1->add_option("--cases", cfg.thm1_cases, "Randomized cases")->capture_default_str();
  v_thm1->add_option("--samples", cfg.thm1_samples, "Monte Carlo samples per case")->capture_default_str();

  auto* v_lemma1 = verify->add_subcommand("lemma1", "Exact Schur averages over the Selberg-type measures");
  common(v_lemma1);
  v_lemma1->add_option("--max-weight", cfg.lemma1_max_weight)->capture_default_str();
  v_lemma1->add_option("--max-m", cfg.lemma1_max_m)->capture_default_str();
  v_lemma1->add_option("--max-n", cfg.lemma1_max_n)->capture_default_str();

  auto* v_prop1 = verify->add_subcommand("prop1", "Exact Beta determinant identity");
  common(v_prop1);
  v_prop1->add_option("--max-m", cfg.prop1_max_m)->capture_default_str();
  v_prop1->add_option("--max-value", cfg.prop1_max_value)->capture_default_str();
  v_prop1->add_option("--draws", cfg.prop1_draws)->capture_default_str();

  auto* v_thm2a = verify->add_subcommand("thm2a", "Regularized inverse determinant");
  common(v_thm2a);
  std::string eps_grid;
  v_thm2a->add_option("--n", cfg.thm2a_n, "Dimension of the randomized cases")->capture_default_str();
  v_thm2a->add_option("--grid", eps_grid, "eps values, comma separated (lo:hi:count allowed)");
  v_thm2a->add_option("--cases", cfg.thm2a_cases)->capture_default_str();
  v_thm2a->add_option("--samples", cfg.thm2a_samples)->capture_default_str();

  auto* v_appa = verify->add_subcommand("appendix-a", "I_k closed form against quadrature");
  common(v_appa);

  auto* v_lemma5 = verify->add_subcommand("lemma5", "Bessel-kernel group integrals");
  common(v_lemma5);
  v_lemma5->add_option("--samples", cfg.lemma5_samples)->capture_default_str();

  auto* v_dens = verify->add_subcommand("densities", "Eigenvalue density formulas");
  common(v_dens);
  auto* v_fz = verify->add_subcommand("phi", "Limiting log-potential");
  common(v_fz);

  auto* density = app.add_subcommand("density", "Tabulate a mean eigenvalue density as CSV");
  std::string ensemble, grid = "0,0", out_path;
  int n = 2;
  double gamma = 0.5, beta = 1.0;
  std::size_t samples = 100000;
  density->add_option("ensemble", ensemble, "ginibre | cue-rank1 | gue-rank1")
      ->required()
      ->check(CLI::IsMember({"ginibre", "cue-rank1", "gue-rank1"}));
  density->add_option("--n", n)->capture_default_str();
  density->add_option("--gamma", gamma)->capture_default_str();
  density->add_option("--beta", beta)->capture_default_str();
  density->add_option("--grid", grid, "X,Y with each axis a value or lo:hi:count; blocks joined by ';'")
      ->capture_default_str();
  density->add_option("--out", out_path, "CSV file (default stdout)");
  density->add_option("--samples", samples, "Monte Carlo samples for gue-rank1 with n >= 3")->capture_default_str();
  density->add_option("--seed", cfg.seed)->capture_default_str();
  density->add_option("--shards", cfg.shards)->capture_default_str();

  auto* phi = app.add_subcommand("phi", "Tabulate the limiting log-potential as CSV");
  std::string law = "mp", law_file, z_grid = "0:2:21";
  phi->add_option("--law", law, "mp | file")->check(CLI::IsMember({"mp", "file"}))->capture_default_str();
  phi->add_option("--file", law_file, "CSV of lambda,mass rows for --law file");
  phi->add_option("--z-grid", z_grid, "|z| values, comma separated (lo:hi:count allowed)")->capture_default_str();
  phi->add_option("--out", out_path, "CSV file (default stdout)");

  auto* suite = app.add_subcommand("suite", "Run verification suites");
  std::string which, json_path;
  suite->add_option("which", which, "all")->required()->check(CLI::IsMember({"all"}));
  suite->add_option("--json", json_path, "Write the JSON report here (default stdout)");
  common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw haar::PreconditionError("cannot open config " + config_path);
      // flags override the file: apply the file, then re-parse the flags
      haar::suite::Config file_cfg;
      file_cfg.apply(nlohmann::json::parse(in));
      cfg = file_cfg;
      app.parse(argc, argv);
    }
    if (!eps_grid.empty()) cfg.thm2a_eps = parse_list(eps_grid);
    cfg.apply(cfg.to_json());

    if (verify->parsed()) {
      namespace s = haar::suite;
      if (v_thm1->parsed()) return print_reports(s::thm1(cfg), timing);
      if (v_lemma1->parsed()) return print_reports(s::lemma1(cfg), timing);
      if (v_prop1->parsed()) return print_reports(s::prop1(cfg), timing);
      if (v_thm2a->parsed()) return print_reports(s::thm2a(cfg), timing);
      if (v_appa->parsed()) return print_reports(s::appendix_a(cfg), timing);
      if (v_lemma5->parsed()) return print_reports(s::lemma5(cfg), timing);
      if (v_dens->parsed()) return print_reports(s::densities(cfg), timing);
      if (v_fz->parsed()) return print_reports(s::feinberg_zee(cfg), timing);
    }

    if (density->parsed()) {
      namespace d = haar::densities;
      const bool mc = ensemble == "gue-rank1";
      std::string csv = mc ? "x,y,value,stderr\n" : "x,y,value\n";
      const haar::sampling::McOptions opts{samples, cfg.seed, cfg.shards};
      for (const cplx z : parse_grid(grid)) {
        csv += fmt(z.real()) + "," + fmt(z.imag()) + ",";
        if (ensemble == "ginibre") {
          csv += fmt(d::ginibre_density(n, z)) + "\n";
        } else if (ensemble == "cue-rank1") {
          csv += fmt(d::cue_rank1_density(n, gamma, z)) + "\n";
        } else {
          const auto v = d::gue_rank1_density(n, beta, gamma, z, opts);
          csv += fmt(v.value) + "," + fmt(v.stderr_) + "\n";
        }
      }
      emit(csv, out_path);
      return 0;
    }

    if (phi->parsed()) {
      namespace d = haar::densities;
      if (law == "file" && law_file.empty()) throw haar::PreconditionError("--law file needs --file");
      const d::SpectralLaw w = law == "mp" ? d::SpectralLaw::mp() : d::SpectralLaw::from_csv(law_file);
      std::string csv = "x,y,value,branch,t0\n";
      for (double r : parse_list(z_grid)) {
        const auto p = d::fz_phi(w, cplx(r, 0.0));
        const char* b = p.branch == d::PhiBranch::outer ? "outer" : p.branch == d::PhiBranch::inner ? "inner" : "middle";
        csv += fmt(r) + ",0," + fmt(p.value) + "," + b + "," + fmt(p.t0) + "\n";
      }
      emit(csv, out_path);
      return 0;
    }

    if (suite->parsed()) {
      const auto sections = haar::suite::all(cfg);
      const auto js = haar::suite::sections_json(sections, cfg, timing);
      if (json_path.empty()) {
        std::cout << js.dump(2) << "\n";
      } else {
        emit(js.dump(2) + "\n", json_path);
        for (const auto& sec : js["sections"])
          std::cout << sec["name"].get<std::string>() << " " << (sec["pass"].get<bool>() ? "pass" : "FAIL") << " "
                    << sec["count"].get<std::size_t>() << "\n";
      }
      return js["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const haar::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return kUsage;
  } catch (const haar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
