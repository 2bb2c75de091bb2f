#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"

namespace topowalk {

using nlohmann::json;

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_series_csv(const LatticeSpec& lat, const Trajectory& traj) {
  std::string out = "t,x,p0,p1\n";
  out.reserve(traj.states.size() * lat.size() * 48);
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const std::string t = format_number(traj.times[j]);
    const auto& s = traj.states[j];
    for (std::size_t i = 0; i < lat.size(); ++i) {
      out += t;
      out += ',';
      out += std::to_string(lat.site(i));
      out += ',';
      out += format_number(std::norm(s.psi0[i]));
      out += ',';
      out += format_number(std::norm(s.psi1[i]));
      out += '\n';
    }
  }
  return out;
}

SigmaFit fit_second_half(const std::vector<double>& t, const std::vector<double>& y) {
  SigmaFit fit;
  if (t.size() != y.size() || t.size() < 2) return fit;
  const double mid = t.front() + 0.5 * (t.back() - t.front());
  double n = 0, st = 0, sy = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= mid) {
      n += 1;
      st += t[i];
      sy += y[i];
    }
  if (n < 2) return fit;
  const double mt = st / n, my = sy / n;
  double stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= mid) {
      stt += (t[i] - mt) * (t[i] - mt);
      sty += (t[i] - mt) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
  if (stt == 0.0) return fit;
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt;
  double sse = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= mid) {
      const double e = y[i] - (fit.slope * t[i] + fit.intercept);
      sse += e * e;
    }
  fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("TOPOWALK_OUT"); env && *env)
    return std::filesystem::path(env) / cfg.name;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return std::filesystem::path("out") / cfg.name;
}

namespace {

Trajectory simulate(const ExperimentConfig& cfg) {
  const WalkerState psi = initial_state(cfg);
  if (cfg.walk == WalkKind::discrete_simple || cfg.walk == WalkKind::discrete_split)
    return evolve_discrete(psi, cfg.step_profile, cfg.n_steps, cfg.frame_phase, cfg.snapshot_steps);
  const Generator g = build_generator(cfg);
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg.rates);
  return evolve_continuous(psi, g, dt, cfg.t_final, cfg.snapshot_every);
}

json fit_json(const SigmaFit& f) { return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}; }

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + p.string());
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& dir_in) {
  const Trajectory traj = simulate(cfg);
  const auto& lat = cfg.lattice;

  RunSummary sum;
  sum.output_dir = dir_in.empty() ? resolve_output_dir(cfg) : dir_in;
  sum.times = traj.times;
  for (const auto& s : traj.states) {
    sum.norms.push_back(norm_squared(s));
    sum.boundary_probability.push_back(region_probability(s, cfg.boundary_lo, cfg.boundary_hi));
    sum.left_probability.push_back(cfg.split_site - 1 >= lat.x_min ? region_probability(s, lat.x_min, cfg.split_site - 1) : 0.0);
    sum.right_probability.push_back(cfg.split_site <= lat.x_max ? region_probability(s, cfg.split_site, lat.x_max) : 0.0);
    sum.mean.push_back(mean_position(s));
    sum.sigma.push_back(position_spread(s));
  }
  for (double n : sum.norms) sum.norm_drift = std::max(sum.norm_drift, std::abs(n - sum.norms.front()));
  const auto& last = traj.states.back();
  const int e = std::min(cfg.edge_sites, static_cast<int>(lat.size()) / 2);
  sum.edge_probability = region_probability(last, lat.x_min, lat.x_min + e - 1) +
                         region_probability(last, lat.x_max - e + 1, lat.x_max);
  sum.sigma_fit = fit_second_half(sum.times, sum.sigma);
  sum.mean_fit = fit_second_half(sum.times, sum.mean);

  json manifest;
  manifest["name"] = cfg.name;
  manifest["walk"] = to_string(cfg.walk);
  manifest["config"] = json::parse(cfg.source_json);
  manifest["time_unit"] = (cfg.walk == WalkKind::discrete_simple || cfg.walk == WalkKind::discrete_split) ? "steps" : "time";
  manifest["boundary_region"] = {cfg.boundary_lo, cfg.boundary_hi};
  manifest["split_site"] = cfg.split_site;
  json snaps = json::array();
  for (std::size_t j = 0; j < sum.times.size(); ++j)
    snaps.push_back({{"t", sum.times[j]},
                     {"norm", sum.norms[j]},
                     {"boundary_probability", sum.boundary_probability[j]},
                     {"left_probability", sum.left_probability[j]},
                     {"right_probability", sum.right_probability[j]},
                     {"mean", sum.mean[j]},
                     {"sigma", sum.sigma[j]}});
  manifest["snapshots"] = snaps;
  manifest["norm_trace"] = sum.norms;
  manifest["norm_drift"] = sum.norm_drift;
  manifest["edge_probability"] = sum.edge_probability;
  manifest["sigma_fit"] = fit_json(sum.sigma_fit);
  manifest["mean_fit"] = fit_json(sum.mean_fit);

  std::filesystem::create_directories(sum.output_dir);
  write_file(sum.output_dir / "series.csv", format_series_csv(lat, traj));
  write_file(sum.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return sum;
}

}  // namespace topowalk
