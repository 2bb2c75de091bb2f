#pragma once
// Declarative experiment runs: JSON config in, CSV + JSON manifest out.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "topowalk/continuous.hpp"
#include "topowalk/lattice.hpp"

namespace topowalk {

enum class WalkKind { discrete_simple, discrete_split, continuous_simple, continuous_split };

std::string to_string(WalkKind k);

// One term of the initial superposition; all terms are summed and the result
// normalized. kind "packet" uses make_packet, kind "random" draws amplitudes
// on [x_lo, x_hi] from the config seed.
struct InitialTerm {
  std::string kind = "packet";
  int center = 0;
  double spread = 0.0;
  cplx weight0{1.0, 0.0};
  cplx weight1{0.0, 0.0};
  int x_lo = 0;
  int x_hi = 0;
};

struct ExperimentConfig {
  std::string name;
  WalkKind walk = WalkKind::continuous_simple;

  // Discrete walks.
  StepProfile step_profile = SimpleAngleProfile::uniform(0.0);
  cplx frame_phase{1.0, 0.0};
  std::size_t n_steps = 0;
  std::size_t snapshot_steps = 1;

  // Continuous walks. `phase` is theta_positive | theta_negative | boundary
  // (simple) or I | II | III | IV | III_IV | I_III (split).
  std::string phase;
  ContinuousRates rates;
  double dt = 0.0;  // 0: default_dt(rates)
  double t_final = 0.0;
  double snapshot_every = 0.0;

  LatticeSpec lattice;
  std::vector<InitialTerm> initial;

  int split_site = 0;                 // left region is x < split_site
  int boundary_lo = -1, boundary_hi = 0;
  int edge_sites = 5;                 // edge probability window at each end

  std::string output_dir;
  std::uint64_t seed = 0;

  // Original JSON text, echoed into the manifest.
  std::string source_json;
};

// Strict parsing: unknown keys, wrong types and inconsistent fields raise
// ConfigError naming the JSON path. Parse errors carry line and column.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

WalkerState initial_state(const ExperimentConfig& cfg);
Generator build_generator(const ExperimentConfig& cfg);

struct SigmaFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
// Least squares fit of y(t) over the second half of the time range.
SigmaFit fit_second_half(const std::vector<double>& t, const std::vector<double>& y);

struct RunSummary {
  std::filesystem::path output_dir;
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<double> boundary_probability;
  std::vector<double> left_probability;
  std::vector<double> right_probability;
  std::vector<double> mean;
  std::vector<double> sigma;
  double norm_drift = 0.0;
  double edge_probability = 0.0;  // at the final snapshot
  SigmaFit sigma_fit;
  SigmaFit mean_fit;
};

// Directory a run writes to: $TOPOWALK_OUT/<name> when the variable is set,
// else cfg.output_dir, else "out/<name>".
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

// Runs the experiment and writes series.csv and manifest.json into `dir`
// (resolve_output_dir(cfg) when empty).
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& dir = {});

// Series CSV text: header "t,x,p0,p1", 17 significant digits, LF endings.
std::string format_series_csv(const LatticeSpec& lattice, const Trajectory& traj);
std::string format_number(double v);

struct SweepOutcome {
  std::string value;
  std::filesystem::path output_dir;
  bool ok = false;
  std::string error;
  std::optional<RunSummary> summary;
};

// One run per value, in parallel. `param` is "R" (gamma1 = R * gamma2,
// continuous split only) or a dotted JSON path such as "profile.gamma1".
// Each run writes to <base>/<param>=<value>.
std::vector<SweepOutcome> run_sweep(const std::string& template_json, const std::string& param,
                                    const std::vector<std::string>& values,
                                    const std::filesystem::path& base_dir = {});

}  // namespace topowalk
