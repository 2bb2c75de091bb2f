#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"

using namespace topowalk;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "name": "small",
  "walk": "continuous_split",
  "lattice": {"x_min": -20, "x_max": 20, "boundary": "open"},
  "profile": {"phase": "III_IV", "gamma1": 1.0, "gamma2": 0.5},
  "initial": [{"center": 0, "spread": 1.0, "weights": [1, [0, 0.5]]}],
  "timing": {"dt": 0.01, "t_final": 1.0, "snapshot_every": 0.25},
  "metrics": {"boundary_region": [-1, 0]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("topowalk_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string edit(const std::function<void(nlohmann::json&)>& f) {
  auto j = nlohmann::json::parse(kSmall);
  f(j);
  return j.dump();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(kSmall);
  CHECK(cfg.name == "small");
  CHECK(cfg.walk == WalkKind::continuous_split);
  CHECK(cfg.lattice.boundary == Boundary::open);
  CHECK(cfg.rates.gamma1 == 1.0);
  CHECK(cfg.initial.size() == 1);
  CHECK(cfg.initial[0].weight1 == cplx(0.0, 0.5));
  CHECK(cfg.boundary_lo == -1);
  CHECK(cfg.boundary_hi == 0);

  const auto s = initial_state(cfg);
  CHECK(norm_squared(s) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("config errors name the offending field") {
  CHECK(config_error(edit([](auto& j) { j["bogus"] = 1; })).find("bogus: unknown field") == 0);
  CHECK(config_error(edit([](auto& j) { j["profile"]["gamma3"] = 1; })).find("profile.gamma3") == 0);
  CHECK(config_error(edit([](auto& j) { j["initial"][0]["colour"] = 1; })).find("initial[0].colour") == 0);
  CHECK(config_error(edit([](auto& j) { j.erase("timing"); })).find("timing: missing") == 0);
  CHECK(config_error(edit([](auto& j) { j["timing"]["t_final"] = "long"; })).find("timing.t_final") == 0);
  CHECK(config_error(edit([](auto& j) { j["profile"]["phase"] = "V"; })).find("profile.phase") == 0);
  CHECK(config_error(edit([](auto& j) { j["walk"] = "quantum"; })).find("walk") == 0);
  CHECK(config_error(edit([](auto& j) { j["lattice"]["x_max"] = -15; })).find("lattice") == 0);
  CHECK(config_error(edit([](auto& j) { j["initial"][0]["center"] = 99; })).find("initial[0].center") == 0);
  CHECK(config_error(edit([](auto& j) { j["name"] = "a/b"; })).find("name") == 0);
  CHECK(config_error(edit([](auto& j) { j["profile"]["gamma1"] = 0.0; j["profile"]["gamma2"] = 0.0; })).find("profile") == 0);
  CHECK_FALSE(config_error("{ not json").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/topowalk.json"), ConfigError);

  // Discrete angles beyond pi are rejected.
  const std::string d = R"({"name":"d","walk":"discrete_simple","lattice":{"x_min":-10,"x_max":10},
    "profile":{"theta":4.0},"initial":[{"center":0,"weights":[1,0]}],"timing":{"n_steps":3}})";
  CHECK(config_error(d).find("profile") == 0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
}

TEST_CASE("runs write deterministic output") {
  const auto cfg = parse_config(kSmall);
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto sa = run_experiment(cfg, a);
  run_experiment(cfg, b);
  const std::string csv = slurp(a / "series.csv");
  CHECK(csv == slurp(b / "series.csv"));
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  CHECK(csv.rfind("t,x,p0,p1\n0,-20,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  // 5 snapshots of 41 sites plus the header.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5 * 41 + 1);

  const auto m = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(m["name"] == "small");
  CHECK(m["snapshots"].size() == 5);
  CHECK(m["config"]["profile"]["phase"] == "III_IV");
  CHECK(sa.norm_drift < 1e-8);
  CHECK(sa.times.back() == doctest::Approx(1.0));
}

TEST_CASE("output directory resolution") {
  auto cfg = parse_config(kSmall);
  ::unsetenv("TOPOWALK_OUT");
  CHECK(resolve_output_dir(cfg) == fs::path("out") / "small");
  cfg.output_dir = "/tmp/elsewhere";
  CHECK(resolve_output_dir(cfg) == fs::path("/tmp/elsewhere"));
  ::setenv("TOPOWALK_OUT", "/tmp/override", 1);
  CHECK(resolve_output_dir(cfg) == fs::path("/tmp/override") / "small");
  ::unsetenv("TOPOWALK_OUT");
}

TEST_CASE("sweeps") {
  const auto base = scratch("sweep");
  const auto plain = scratch("sweep_plain");
  run_experiment(parse_config(kSmall), plain);

  // A single-value sweep over an existing value reproduces the plain run.
  const auto one = run_sweep(kSmall, "profile.gamma2", {"0.5"}, base);
  REQUIRE(one.size() == 1);
  CHECK(one[0].ok);
  CHECK(one[0].output_dir == base / "profile.gamma2=0.5");
  CHECK(slurp(one[0].output_dir / "series.csv") == slurp(plain / "series.csv"));

  const auto r = run_sweep(kSmall, "R", {"0.5", "1", "2"}, base);
  REQUIRE(r.size() == 3);
  for (const auto& o : r) {
    CHECK(o.ok);
    CHECK(fs::exists(o.output_dir / "series.csv"));
  }
  const auto m = nlohmann::json::parse(slurp(base / "R=2" / "manifest.json"));
  CHECK(m["config"]["profile"]["gamma1"].get<double>() == 1.0);
  const auto h = nlohmann::json::parse(slurp(base / "R=0.5" / "manifest.json"));
  CHECK(h["config"]["profile"]["gamma1"].get<double>() == 0.25);

  CHECK_THROWS_AS(run_sweep(kSmall, "profile.nothing", {"1"}, base), ConfigError);
  CHECK_THROWS_AS(run_sweep(kSmall, "R", {"abc"}, base), ConfigError);
  CHECK_THROWS_AS(run_sweep(kSmall, "R", {}, base), ConfigError);
}

TEST_CASE("second-half fit") {
  std::vector<double> t, y;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(i);
    y.push_back(i < 10 ? 100.0 : 3.0 * i - 1.0);
  }
  const auto f = fit_second_half(t, y);
  CHECK(f.slope == doctest::Approx(3.0));
  CHECK(f.intercept == doctest::Approx(-1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("bundled configs parse") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(fs::path(TOPOWALK_SOURCE_DIR) / "configs")) {
    if (e.path().extension() != ".json") continue;
    const auto cfg = load_config(e.path());
    CHECK(cfg.name == e.path().stem().string());
    ++n;
  }
  CHECK(n >= 10);
}
