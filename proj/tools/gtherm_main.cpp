#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtherm/json_io.hpp"
#include "gtherm/scan.hpp"

namespace {

struct ScanOptions {
  double g0_min = 0.0;
  double g0_max = 1.0;
  int steps = 101;
  double delta_g = 0.01;
  double deg_tol = 0.0;  // 0 = automatic
  std::uint64_t seed = 0;
  std::string out;
  std::string qu = "first-law";
  int threads = 0;
  bool no_continuity = false;
};

void add_scan_options(CLI::App* cmd, ScanOptions& opt) {
  cmd->add_option("--g0-min", opt.g0_min, "lower end of the g0 grid")->capture_default_str();
  cmd->add_option("--g0-max", opt.g0_max, "upper end of the g0 grid")->capture_default_str();
  cmd->add_option("--steps", opt.steps, "number of grid points (>= 2)")->capture_default_str();
  cmd->add_option("--delta-g", opt.delta_g, "quench amplitude")->capture_default_str();
  cmd->add_option("--deg-tol", opt.deg_tol,
                  "degeneracy clustering tolerance (0 = 1e-8 * max(1, spectral range))")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random seed (scans are deterministic; kept for interface uniformity)")
      ->capture_default_str();
  cmd->add_option("--out", opt.out, "output CSV path (stdout if omitted)");
  cmd->add_option("--qu-convention", opt.qu, "uninvariant-heat convention")
      ->check(CLI::IsMember({"first-law", "zero"}))
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads, "worker pool size (0 = available parallelism)")
      ->capture_default_str();
  cmd->add_flag("--no-continuity", opt.no_continuity,
                "disable ground-state continuity hints (enables parallel lmg/custom scans)");
}

void finish_scan(const gtherm::ScanRequest& base, const ScanOptions& opt) {
  gtherm::ScanRequest req = base;
  req.g0_min = opt.g0_min;
  req.g0_max = opt.g0_max;
  req.steps = opt.steps;
  req.delta_g = opt.delta_g;
  req.deg_tol = opt.deg_tol;
  req.qu = opt.qu == "zero" ? gtherm::QuConvention::Zero : gtherm::QuConvention::FirstLaw;
  req.threads = opt.threads;
  req.continuity = !opt.no_continuity;

  const std::vector<gtherm::ScanRow> rows = gtherm::scan(req);
  if (opt.out.empty()) {
    std::fputs(gtherm::csv_to_string(rows).c_str(), stdout);
  } else {
    gtherm::emit_csv(rows, opt.out);
  }
}

std::vector<int> parse_pattern(const std::string& text) {
  std::vector<int> pattern;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      pattern.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw gtherm::Error(gtherm::ErrorKind::InvalidPattern, "bad multiplicity '" + tok + "'");
    }
  }
  return pattern;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauge-invariant quantum thermodynamics: twirls, quench scans, entropies"};
  app.set_version_flag("--version", "gtherm 0.1.0");
  app.require_subcommand(1);

  // lz
  auto* lz = app.add_subcommand("lz", "Landau-Zener quench scan over g0");
  ScanOptions lz_opt;
  gtherm::LZParams lz_params{2.0, 1.0, 0.001, 0.0};
  lz->add_option("--a", lz_params.a, "field coupling")->capture_default_str();
  lz->add_option("--delta", lz_params.delta, "bare frequency")->capture_default_str();
  lz->add_option("--eps", lz_params.eps, "gap parameter")->capture_default_str();
  add_scan_options(lz, lz_opt);

  // lmg
  auto* lmg = app.add_subcommand("lmg", "Lipkin-Meshkov-Glick quench scan over g0");
  ScanOptions lmg_opt;
  gtherm::LMGParams lmg_params{1.0, 0.75, 0.0, 10.0};
  lmg->add_option("--k", lmg_params.k, "spin coupling")->capture_default_str();
  lmg->add_option("--gamma", lmg_params.gamma, "anisotropy in [0,1]")->capture_default_str();
  lmg->add_option("--j", lmg_params.j, "total angular momentum (2j integer)")->required();
  add_scan_options(lmg, lmg_opt);

  // custom
  auto* custom = app.add_subcommand("custom", "quench scan for H(g) = H0 + g H1 from JSON");
  ScanOptions custom_opt;
  std::string h0_path, h1_path;
  custom->add_option("--h0", h0_path, "JSON file with H0")->required();
  custom->add_option("--h1", h1_path, "JSON file with H1")->required();
  add_scan_options(custom, custom_opt);

  // deriv
  auto* deriv = app.add_subcommand("deriv", "finite-difference derivative of a scan column");
  std::string deriv_in, deriv_column, deriv_out;
  int deriv_order = 1;
  deriv->add_option("--in", deriv_in, "input CSV from a scan")->required();
  deriv->add_option("--column", deriv_column, "column name")->required();
  deriv->add_option("--order", deriv_order, "derivative order (1 or 2)")->capture_default_str();
  deriv->add_option("--out", deriv_out, "output CSV path (stdout if omitted)");

  // twirl-check
  auto* tc = app.add_subcommand("twirl-check", "Monte-Carlo self-check of the closed-form twirl");
  int tc_dim = 8;
  std::string tc_pattern = "3,2,2,1";
  int tc_samples = 20000;
  std::uint64_t tc_seed = 0;
  tc->add_option("--dim", tc_dim, "Hilbert-space dimension")->capture_default_str();
  tc->add_option("--pattern", tc_pattern, "comma-separated cluster multiplicities")
      ->capture_default_str();
  tc->add_option("--samples", tc_samples, "Monte-Carlo samples")->capture_default_str();
  tc->add_option("--seed", tc_seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (lz->parsed()) {
      gtherm::ScanRequest req;
      req.model = gtherm::ScanModel::Lz;
      req.lz = lz_params;
      finish_scan(req, lz_opt);
    } else if (lmg->parsed()) {
      gtherm::ScanRequest req;
      req.model = gtherm::ScanModel::Lmg;
      req.lmg = lmg_params;
      finish_scan(req, lmg_opt);
    } else if (custom->parsed()) {
      gtherm::ScanRequest req;
      req.model = gtherm::ScanModel::Custom;
      req.custom_h0 = gtherm::hermitian_from_json(gtherm::load_json_file(h0_path), h0_path);
      req.custom_h1 = gtherm::hermitian_from_json(gtherm::load_json_file(h1_path), h1_path);
      finish_scan(req, custom_opt);
    } else if (deriv->parsed()) {
      const auto rows = gtherm::parse_csv(deriv_in);
      const auto d = gtherm::differentiate(rows, deriv_column, deriv_order);
      std::string out = "g0,d" + std::to_string(deriv_order) + "_" + deriv_column + "\n";
      char buf[80];
      for (const auto& [g0, v] : d) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", g0, v);
        out += buf;
      }
      if (deriv_out.empty()) {
        std::fputs(out.c_str(), stdout);
      } else {
        std::ofstream f(deriv_out, std::ios::binary);
        if (!f) throw gtherm::Error(gtherm::ErrorKind::IoError, "cannot open " + deriv_out);
        f << out;
      }
    } else if (tc->parsed()) {
      const gtherm::TwirlCheckReport rep =
          gtherm::twirl_check(tc_dim, parse_pattern(tc_pattern), tc_samples, tc_seed);
      nlohmann::json j;
      j["dim"] = tc_dim;
      j["pattern"] = parse_pattern(tc_pattern);
      j["samples"] = tc_samples;
      j["seed"] = tc_seed;
      j["frobenius_error"] = rep.frobenius_error;
      j["std_error"] = rep.std_error;
      j["pass"] = rep.pass;
      std::cout << j.dump(2) << "\n";
      if (!rep.pass) return 2;
    }
  } catch (const gtherm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
