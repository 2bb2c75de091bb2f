// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "topowalk/continuous.hpp"
#include "topowalk/discrete.hpp"
#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"
#include "topowalk/momentum.hpp"

using namespace topowalk;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const fs::path kSource = TOPOWALK_SOURCE_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig config(const std::string& name) { return load_config(kSource / "configs" / (name + ".json")); }

fs::path scratch() {
  static const fs::path root = [] {
    const fs::path p = fs::temp_directory_path() / "topowalk_acceptance";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

WalkerState random_state(const LatticeSpec& lat, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  WalkerState s(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    s.psi0[i] = {g(rng), g(rng)};
    s.psi1[i] = {g(rng), g(rng)};
  }
  const double inv = 1.0 / std::sqrt(norm_squared(s));
  for (auto& a : s.psi0) a *= inv;
  for (auto& a : s.psi1) a *= inv;
  return s;
}

Verdict chiral_identity() {
  double worst = 0.0;
  const std::vector<StepProfile> profiles{
      SimpleAngleProfile::uniform(0.3), SimpleAngleProfile::uniform(-1.1), SimpleAngleProfile{kPi / 4, -kPi / 4, 0},
      SplitAngleProfile::uniform(0.4, 1.3), SplitAngleProfile::uniform(-0.7, 0.2),
      SplitAngleProfile{{1.2, 0.3}, {-1.2, 0.3}, 0}, SplitAngleProfile{{0.3, 1.2}, {1.2, 0.3}, 0}};
  for (int n : {8, 16, 32}) {
    const auto lat = make_lattice(-n / 2, n / 2 - 1);
    for (const auto& p : profiles) {
      const auto a = build_dense_operator(lat, p, DenseForm::composed);
      const auto b = build_dense_operator(lat, p, DenseForm::chiral);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  }
  return {worst < 1e-12, fmt("max |U - U_chiral| = %.2e", worst)};
}

Verdict unitarity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const auto lat = make_lattice(-50, 49);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = random_state(lat, rng);
    StepProfile p;
    if (i % 2 == 0) p = SimpleAngleProfile{ang(rng), ang(rng), i % 7 - 3};
    else p = SplitAngleProfile{{ang(rng), ang(rng)}, {ang(rng), ang(rng)}, i % 5 - 2};
    const auto t = evolve_discrete(s, p, 20, 1.0, 20);
    worst = std::max(worst, std::abs(norm_squared(t.states.back()) - 1.0));
  }
  return {worst < 1e-12, fmt("max norm error after 20 steps over 100 states = %.2e", worst)};
}

Verdict phase_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const double d = 0.05, h = kPi / 2;
  const std::vector<std::pair<std::pair<double, double>, PhaseName>> corners{
      {{d, h - d}, PhaseName::I}, {{d, -h + d}, PhaseName::II}, {{h - d, d}, PhaseName::III}, {{-h + d, d}, PhaseName::IV}};
  bool ok = true;
  std::string got;
  for (const auto& [pt, want] : corners) {
    const auto w = classify_by_winding(SplitParams{pt.first, pt.second});
    const auto z = classify_split(pt.first, pt.second);
    ok = ok && w.name == want && z == w;
    got += to_string(w.name) + fmt("(%d,%d) ", w.nu0, w.nu1);
  }
  const auto sp = classify_by_winding(SimpleParams{kPi / 4});
  const auto sn = classify_by_winding(SimpleParams{-kPi / 4});
  ok = ok && sp.name == PhaseName::SimplePositive && sp.nu0 == 1 && sp.nu1 == 0;
  ok = ok && sn.name == PhaseName::SimpleNegative && sn.nu0 == 0 && sn.nu1 == 1;
  const double secs = seconds_since(t0);
  return {ok && secs < 5.0, got + fmt("simple +-pi/4 ok; %.3f s", secs)};
}

Verdict dual_method() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int agree = 0, tested = 0;
  while (tested < 100) {
    const double a = ang(rng), b = ang(rng);
    PhaseLabel w;
    try {
      w = classify_by_winding(SplitParams{a, b});
    } catch (const OnPhaseBoundary&) {
      continue;
    }
    ++tested;
    if (classify_split(a, b) == w) ++agree;
  }
  return {agree == tested, fmt("%d/%d random points agree", agree, tested)};
}

Verdict continuous_bound() {
  struct Trap {
    const char* name;
    std::vector<std::pair<int, int>> sites;  // (component, x)
  };
  const std::vector<Trap> traps{{"trapped_simple", {{0, 0}, {0, -1}}},
                                {"bound_III_IV", {{0, 0}, {0, -1}}},
                                {"bound_I_III", {{1, -1}}}};
  double worst = 0.0;
  for (const auto& tr : traps) {
    const auto cfg = config(tr.name);
    const auto psi = initial_state(cfg);
    const auto traj = evolve_continuous(psi, build_generator(cfg), cfg.dt, cfg.t_final, cfg.snapshot_every);
    if (traj.times.back() < 25.0 - 1e-9) return {false, std::string(tr.name) + " ends before t = 25"};
    for (const auto& st : traj.states)
      for (const auto& [c, x] : tr.sites) worst = std::max(worst, std::abs(st.amp(c, x) - psi.amp(c, x)));
  }
  return {worst <= 1e-12, fmt("max change of trapped amplitudes up to t=25: %.2e", worst)};
}

Verdict discrete_bound(const json& golden) {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, std::vector<int>>> peaks{
      {"trapped_simple_discrete", {-1, 0}}, {"bound_III_IV_discrete", {-1, 0}}, {"bound_I_III_discrete", {-1}}};
  for (const auto& [name, allowed] : peaks) {
    const auto cfg = config(name);
    const auto sum = run_experiment(cfg, scratch() / name);
    const auto traj = evolve_discrete(initial_state(cfg), cfg.step_profile, cfg.n_steps, cfg.frame_phase, cfg.n_steps);
    const auto& last = traj.states.back();
    int peak = cfg.lattice.x_min;
    for (int x = cfg.lattice.x_min; x <= cfg.lattice.x_max; ++x)
      if (last.probability(x) > last.probability(peak)) peak = x;
    const double p = sum.boundary_probability.back();
    const double need = golden["discrete_bound"][name]["min"].get<double>();
    const bool here = p >= need && std::find(allowed.begin(), allowed.end(), peak) != allowed.end();
    ok = ok && here;
    detail += fmt("%s P=%.4f (min %.2f) peak x=%d; ", name.c_str(), p, need, peak);
  }
  return {ok, detail};
}

Verdict reflection(const json& golden) {
  bool ok = true;
  std::string detail;
  for (const auto& [name, entry] : golden["reflection_max_leak"].items()) {
    const auto sum = run_experiment(config(name), scratch() / name);
    const double leak = *std::max_element(sum.left_probability.begin(), sum.left_probability.end());
    const double cap = entry["max"].get<double>();
    ok = ok && leak <= cap;
    detail += fmt("%s leak=%.2e (max %.1e); ", name.c_str(), leak, cap);
  }
  return {ok, detail};
}

Verdict oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> dts{0.01, 0.005, 0.0025};
  const auto bulk = make_lattice(-8, 7), seam = make_lattice(-16, 15);
  double worst = 0.0, min_order = 1e9;
  bool flagged = false;
  for (auto c : {ContinuumCase::simple_positive, ContinuumCase::simple_negative, ContinuumCase::simple_boundary,
                 ContinuumCase::split_I, ContinuumCase::split_II, ContinuumCase::split_III, ContinuumCase::split_IV,
                 ContinuumCase::split_III_IV, ContinuumCase::split_I_III}) {
    const ContinuousRates r{0.8, 0.9, 0.4};
    const auto rep = extract_generator_oracle(c, r, is_boundary_case(c) ? seam : bulk, dts);
    worst = std::max(worst, rep.max_error);
    min_order = std::min(min_order, rep.observed_order);
    flagged = flagged || rep.flagged;
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6 && min_order >= 0.9 && !flagged && secs < 30.0,
          fmt("max error %.2e, min order %.3f, %.2f s", worst, min_order, secs)};
}

Verdict decoupling() {
  const auto lat = make_lattice(-150, 149);
  const auto s = make_packet(lat, 0, 4.0, 1.0, cplx(0.3, -0.8));
  struct Case {
    Generator gen;
    ContinuousRates rates;
    PhiVariant variant;
  };
  const std::vector<Case> cases{
      {bulk_generator_simple(SimplePhase::theta_positive, 1.0, lat), {1.0, 0, 0}, PhiVariant::simple},
      {bulk_generator_simple(SimplePhase::theta_negative, 1.0, lat), {1.0, 0, 0}, PhiVariant::simple_other},
      {bulk_generator_split(PhaseName::III, 1.0, 0.6, lat), {0, 1.0, 0.6}, PhiVariant::split_III},
      {bulk_generator_split(PhaseName::IV, 1.0, 0.6, lat), {0, 1.0, 0.6}, PhiVariant::split_IV}};
  double worst = 0.0, min_ratio = 1e9;
  for (const auto& c : cases) {
    const double coarse = decoupled_residual(evolve_continuous(s, c.gen, 0.005, 4.0, 0.02), c.rates, c.variant);
    const double fine = decoupled_residual(evolve_continuous(s, c.gen, 0.005, 4.0, 0.01), c.rates, c.variant);
    worst = std::max(worst, fine);
    min_ratio = std::min(min_ratio, coarse / fine);
  }
  return {worst < 1e-3 && min_ratio > 3.5, fmt("max residual %.2e, min refinement ratio %.2f", worst, min_ratio)};
}

Verdict ballistic() {
  auto fit = [](const char* name) { return run_experiment(config(name), scratch() / name); };
  const auto p = fit("ballistic_III_plus"), m = fit("ballistic_III_minus"), one = fit("ballistic_I"),
             s = fit("ballistic_simple");
  bool ok = true;
  for (const auto* r : {&p, &m, &one, &s}) ok = ok && r->sigma_fit.r2 > 0.99 && r->sigma_fit.slope > 0.0;
  const double vp = p.mean_fit.slope, vm = m.mean_fit.slope;
  ok = ok && vp * vm < 0.0 && std::abs(vp + vm) < 0.05 * std::abs(vp);
  ok = ok && std::abs(one.mean_fit.slope) < 0.05 * one.sigma_fit.slope;
  return {ok, fmt("R2 %.5f %.5f %.5f %.5f; III v=%+.3f/%+.3f; I v=%.1e sigma'=%.3f", p.sigma_fit.r2, m.sigma_fit.r2,
                  one.sigma_fit.r2, s.sigma_fit.r2, vp, vm, one.mean_fit.slope, one.sigma_fit.slope)};
}

Verdict sweep_r(const json& golden) {
  const auto& g = golden["sweep_R_boundary"];
  const std::string tmpl = slurp(kSource / "configs" / (g["config"].get<std::string>() + ".json"));
  const auto runs = run_sweep(tmpl, "R", {"0.5", "1", "2"}, scratch() / "sweep");
  bool ok = true;
  std::string detail;
  for (const auto& o : runs) {
    if (!o.ok || !o.summary) return {false, "run R=" + o.value + " failed: " + o.error};
    const auto& sum = *o.summary;
    const double p = sum.boundary_probability.back();
    const double need = g["values"][o.value]["min"].get<double>();
    ok = ok && std::abs(sum.times.back() - g["t"].get<double>()) < 1e-9 && p >= need;
    detail += fmt("R=%s P[-2,1]=%.4f (min %.3f); ", o.value.c_str(), p, need);
  }
  return {ok, detail};
}

Verdict determinism() {
  int n = 0, same = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kSource / "configs"))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto cfg = load_config(f);
    const auto a = scratch() / "det_a" / cfg.name, b = scratch() / "det_b" / cfg.name;
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    ++n;
    if (slurp(a / "series.csv") == slurp(b / "series.csv") && slurp(a / "manifest.json") == slurp(b / "manifest.json"))
      ++same;
  }
  return {n > 0 && same == n, fmt("%d/%d configs byte-identical on rerun", same, n)};
}

}  // namespace

int main() {
  const json golden = json::parse(slurp(kSource / "tests" / "golden" / "thresholds.json"));
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"chiral form equals composed step", chiral_identity},
      {"discrete steps are unitary", unitarity},
      {"phase table at corners", phase_table},
      {"winding and z classification agree", dual_method},
      {"continuous bound states are exact", continuous_bound},
      {"discrete bound states", [&] { return discrete_bound(golden); }},
      {"reflection at phase boundaries", [&] { return reflection(golden); }},
      {"generator oracle", oracle},
      {"decoupled equations", decoupling},
      {"ballistic spreading", ballistic},
      {"R sweep boundary weight", [&] { return sweep_r(golden); }},
      {"bundled configs are deterministic", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
