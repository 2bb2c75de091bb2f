// topowalk: experiment runner and momentum-space utilities.
// Exit codes: 0 ok, 2 bad config or arguments, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"
#include "topowalk/momentum.hpp"

using namespace topowalk;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

WalkParams params_from(bool split, const std::vector<double>& theta) {
  if (!split) {
    if (theta.size() != 1) throw ConfigError("--theta", "simple walk takes one angle");
    return SimpleParams{theta[0]};
  }
  if (theta.size() != 2) throw ConfigError("--theta", "split walk takes two angles: theta1,theta2");
  return SplitParams{theta[0], theta[1]};
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("--out", "cannot write " + path);
  out << text;
}

std::string label_of(const PhaseLabel& l) { return to_string(l.name); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topological quantum walk simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "experiment JSON")->required();

  std::string kind = "simple", out_path;
  std::vector<double> theta;
  int nk = 1024;
  auto* disp = app.add_subcommand("dispersion", "CSV of k, omega_plus, omega_minus");
  disp->add_option("--kind", kind, "simple or split")->check(CLI::IsMember({"simple", "split"}));
  disp->add_option("--theta", theta, "theta, or theta1,theta2")->delimiter(',')->required();
  disp->add_option("--nk", nk, "number of k points")->check(CLI::PositiveNumber);
  disp->add_option("--out", out_path, "output file (default stdout)");

  bool inv_simple = false, inv_split = false, inv_csv = false;
  std::vector<double> inv_theta;
  int inv_nk = 1024;
  auto* inv = app.add_subcommand("invariants", "winding numbers nu0, nu1");
  inv->add_flag("--simple", inv_simple, "simple-step walk");
  inv->add_flag("--split", inv_split, "split-step walk");
  inv->add_option("--theta", inv_theta, "theta, or theta1,theta2")->delimiter(',')->required();
  inv->add_option("--nk", inv_nk, "k samples (>= 256)");
  inv->add_flag("--csv", inv_csv, "print theta...,nu0,nu1,label as CSV");

  PhaseGrid grid;
  grid.res1 = grid.res2 = 64;
  int res2 = 0;
  bool corners = false;
  std::string method = "z";
  std::string pd_out;
  auto* pd = app.add_subcommand("phasediagram", "split-step phase labels over a (theta1, theta2) grid");
  pd->add_option("--t1min", grid.t1_min);
  pd->add_option("--t1max", grid.t1_max);
  pd->add_option("--t2min", grid.t2_min);
  pd->add_option("--t2max", grid.t2_max);
  pd->add_option("--res", grid.res1, "points per axis (>= 2)");
  pd->add_option("--res2", res2, "points on the theta2 axis (default --res)");
  pd->add_flag("--corners", corners, "label the four phase corners only");
  pd->add_option("--method", method, "z (closed form) or winding")->check(CLI::IsMember({"z", "winding"}));
  pd->add_option("--out", pd_out, "output file (default stdout)");

  std::string sweep_config, sweep_param, sweep_values, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run a config once per parameter value");
  sweep->add_option("config", sweep_config, "template JSON")->required();
  sweep->add_option("--param", sweep_param, "R or a dotted config path")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--out", sweep_out, "base output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      const auto cfg = load_config(config_path);
      const auto sum = run_experiment(cfg);
      std::cout << cfg.name << ": " << sum.times.size() << " snapshots -> " << sum.output_dir.string() << "\n";
      return kOk;
    }

    if (*disp) {
      const WalkParams p = params_from(kind == "split", theta);
      std::string csv = "k,omega_plus,omega_minus\n";
      for (const auto& d : dispersion_band(p, nk))
        csv += format_number(d.k) + "," + format_number(d.omega_plus) + "," + format_number(d.omega_minus) + "\n";
      emit(out_path, csv);
      return kOk;
    }

    if (*inv) {
      if (inv_simple == inv_split) throw ConfigError("", "pass exactly one of --simple, --split");
      const WalkParams p = params_from(inv_split, inv_theta);
      try {
        const PhaseLabel l = classify_by_winding(p, inv_nk);
        if (inv_csv) {
          std::cout << (inv_split ? "theta1,theta2,nu0,nu1,label\n" : "theta,nu0,nu1,label\n");
          for (double t : inv_theta) std::cout << format_number(t) << ",";
          std::cout << l.nu0 << "," << l.nu1 << "," << label_of(l) << "\n";
        } else {
          std::cout << "nu0=" << l.nu0 << " nu1=" << l.nu1 << "\n" << "phase=" << label_of(l) << "\n";
        }
      } catch (const OnPhaseBoundary& e) {
        std::cout << "boundary\n";
        std::cerr << "topowalk: " << e.what() << "\n";
        return kNumericalError;
      }
      return kOk;
    }

    if (*pd) {
      if (res2 > 0) grid.res2 = res2;
      else grid.res2 = grid.res1;
      const auto cells = corners ? phase_points(phase_corners()) : phase_diagram(grid);
      std::string csv = "theta1,theta2,nu0,nu1,label\n";
      for (const auto& c : cells) {
        bool known = c.label.has_value();
        PhaseLabel label = c.label.value_or(PhaseLabel{});
        if (method == "winding") {
          try {
            label = classify_by_winding(SplitParams{c.theta1, c.theta2});
            known = true;
          } catch (const OnPhaseBoundary&) {
            known = false;
          }
        }
        csv += format_number(c.theta1) + "," + format_number(c.theta2) + ",";
        if (known) csv += std::to_string(label.nu0) + "," + std::to_string(label.nu1) + "," + label_of(label) + "\n";
        else csv += ",,boundary\n";
      }
      emit(pd_out, csv);
      return kOk;
    }

    if (*sweep) {
      std::ifstream in(sweep_config, std::ios::binary);
      if (!in) throw ConfigError("", "cannot read config file " + sweep_config);
      std::ostringstream ss;
      ss << in.rdbuf();
      std::vector<std::string> values;
      std::stringstream vs(sweep_values);
      for (std::string v; std::getline(vs, v, ',');)
        if (!v.empty()) values.push_back(v);
      const auto results = run_sweep(ss.str(), sweep_param, values, sweep_out);
      int failures = 0;
      for (const auto& r : results) {
        if (r.ok) {
          std::cout << sweep_param << "=" << r.value << ": ok -> " << r.output_dir.string() << "\n";
        } else {
          ++failures;
          std::cerr << sweep_param << "=" << r.value << ": FAILED: " << r.error << "\n";
        }
      }
      if (failures > 0) {
        std::cerr << "topowalk: " << failures << " of " << results.size() << " sweep runs failed\n";
        return kNumericalError;
      }
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "topowalk: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "topowalk: invalid argument: " << e.what() << "\n";
    return kConfigError;
  } catch (const IntegrationFailure& e) {
    std::cerr << "topowalk: integration failure at t=" << e.time() << ": " << e.what() << "\n";
    return kNumericalError;
  } catch (const OnPhaseBoundary& e) {
    std::cerr << "topowalk: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "topowalk: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
