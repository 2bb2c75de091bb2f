#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topowalk/errors.hpp"
#include "topowalk/experiment.hpp"

namespace topowalk {

using nlohmann::json;

std::string to_string(WalkKind k) {
  switch (k) {
    case WalkKind::discrete_simple: return "discrete_simple";
    case WalkKind::discrete_split: return "discrete_split";
    case WalkKind::continuous_simple: return "continuous_simple";
    case WalkKind::continuous_split: return "continuous_split";
  }
  return "?";
}

namespace {

// Reads fields of one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string at_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError(at_path(key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(at_path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at_path(key), "expected a finite number");
    return d;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : mark(key, fallback); }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(at_path(key), "expected an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) { return has(key) ? integer(key) : mark(key, fallback); }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(at_path(key), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : mark(key, fallback); }

  Fields object(const std::string& key) { return Fields(raw(key), at_path(key)); }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.count(key)) throw ConfigError(at_path(key), "unknown field");
  }

 private:
  template <class T>
  T mark(const std::string& key, T v) {
    used_.insert(key);
    return v;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

cplx complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path, "expected a number or [re, im]");
}

std::pair<double, double> number_pair(const json& v, const std::string& path) {
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path, "expected [a, b]");
}

int as_int(long long v, const std::string& path) {
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path, "integer out of range");
  return static_cast<int>(v);
}

std::size_t as_count(long long v, const std::string& path) {
  if (v < 0) throw ConfigError(path, "must be non-negative");
  return static_cast<std::size_t>(v);
}

WalkKind parse_walk(const std::string& s, const std::string& path) {
  if (s == "discrete_simple") return WalkKind::discrete_simple;
  if (s == "discrete_split") return WalkKind::discrete_split;
  if (s == "continuous_simple") return WalkKind::continuous_simple;
  if (s == "continuous_split") return WalkKind::continuous_split;
  throw ConfigError(path, "unknown walk kind '" + s + "'");
}

bool is_discrete(WalkKind k) { return k == WalkKind::discrete_simple || k == WalkKind::discrete_split; }

void parse_profile(Fields f, ExperimentConfig& cfg) {
  switch (cfg.walk) {
    case WalkKind::discrete_simple: {
      SimpleAngleProfile p;
      if (f.has("theta")) {
        p = SimpleAngleProfile::uniform(f.number("theta"));
      } else {
        p.right = f.number("theta_right");
        p.left = f.number("theta_left");
      }
      p.boundary_site = as_int(f.integer("boundary_site", 0), f.at_path("boundary_site"));
      cfg.step_profile = p;
      break;
    }
    case WalkKind::discrete_split: {
      SplitAngleProfile p;
      if (f.has("theta")) {
        const auto [a, b] = number_pair(f.raw("theta"), f.at_path("theta"));
        p = SplitAngleProfile::uniform(a, b);
      } else {
        const auto [r1, r2] = number_pair(f.raw("right"), f.at_path("right"));
        const auto [l1, l2] = number_pair(f.raw("left"), f.at_path("left"));
        p.right = {r1, r2};
        p.left = {l1, l2};
      }
      p.boundary_site = as_int(f.integer("boundary_site", 0), f.at_path("boundary_site"));
      cfg.step_profile = p;
      break;
    }
    case WalkKind::continuous_simple: {
      cfg.phase = f.text("phase");
      if (cfg.phase != "theta_positive" && cfg.phase != "theta_negative" && cfg.phase != "boundary")
        throw ConfigError(f.at_path("phase"), "expected theta_positive, theta_negative or boundary");
      cfg.rates.gamma = f.number("gamma");
      break;
    }
    case WalkKind::continuous_split: {
      cfg.phase = f.text("phase");
      static const std::set<std::string> ok{"I", "II", "III", "IV", "III_IV", "I_III"};
      if (!ok.count(cfg.phase))
        throw ConfigError(f.at_path("phase"), "expected I, II, III, IV, III_IV or I_III");
      cfg.rates.gamma1 = f.number("gamma1");
      cfg.rates.gamma2 = f.number("gamma2");
      break;
    }
  }
  if (is_discrete(cfg.walk)) {
    if (f.has("frame_phase")) cfg.frame_phase = complex_value(f.raw("frame_phase"), f.at_path("frame_phase"));
    try {
      validate_profile(cfg.step_profile);
    } catch (const DomainError& e) {
      throw ConfigError("profile", e.what());
    }
  } else {
    try {
      cfg.rates.validate();
    } catch (const DomainError& e) {
      throw ConfigError("profile", e.what());
    }
  }
  f.finish();
}

void parse_initial(const json& arr, ExperimentConfig& cfg) {
  if (!arr.is_array() || arr.empty()) throw ConfigError("initial", "expected a non-empty array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Fields f(arr[i], "initial[" + std::to_string(i) + "]");
    InitialTerm t;
    t.kind = f.text("kind", "packet");
    if (t.kind == "packet") {
      t.center = as_int(f.integer("center"), f.at_path("center"));
      t.spread = f.number("spread", 0.0);
      if (t.spread < 0.0) throw ConfigError(f.at_path("spread"), "must be >= 0");
      const json& w = f.raw("weights");
      if (!w.is_array() || w.size() != 2) throw ConfigError(f.at_path("weights"), "expected [w0, w1]");
      t.weight0 = complex_value(w[0], f.at_path("weights[0]"));
      t.weight1 = complex_value(w[1], f.at_path("weights[1]"));
      if (!cfg.lattice.contains(t.center)) throw ConfigError(f.at_path("center"), "outside the lattice");
    } else if (t.kind == "random") {
      t.x_lo = as_int(f.integer("x_lo"), f.at_path("x_lo"));
      t.x_hi = as_int(f.integer("x_hi"), f.at_path("x_hi"));
      if (t.x_lo > t.x_hi || !cfg.lattice.contains(t.x_lo) || !cfg.lattice.contains(t.x_hi))
        throw ConfigError(f.at_path("x_lo"), "random range must lie inside the lattice");
    } else {
      throw ConfigError(f.at_path("kind"), "expected packet or random");
    }
    f.finish();
    cfg.initial.push_back(t);
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.source_json = text;
  Fields f(root, "");
  cfg.name = f.text("name");
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos)
    throw ConfigError("name", "must be non-empty and contain no path separators");
  cfg.walk = parse_walk(f.text("walk"), "walk");

  {
    Fields l = f.object("lattice");
    cfg.lattice.x_min = as_int(l.integer("x_min"), "lattice.x_min");
    cfg.lattice.x_max = as_int(l.integer("x_max"), "lattice.x_max");
    const std::string b = l.text("boundary", "periodic");
    if (b == "periodic") cfg.lattice.boundary = Boundary::periodic;
    else if (b == "open") cfg.lattice.boundary = Boundary::open;
    else throw ConfigError("lattice.boundary", "expected periodic or open");
    l.finish();
    try {
      cfg.lattice.validate();
    } catch (const DomainError& e) {
      throw ConfigError("lattice", e.what());
    }
  }

  parse_profile(f.object("profile"), cfg);
  parse_initial(f.raw("initial"), cfg);

  {
    Fields t = f.object("timing");
    if (is_discrete(cfg.walk)) {
      cfg.n_steps = as_count(t.integer("n_steps"), "timing.n_steps");
      cfg.snapshot_steps = as_count(t.integer("snapshot_every", 1), "timing.snapshot_every");
      if (cfg.snapshot_steps == 0) throw ConfigError("timing.snapshot_every", "must be positive");
    } else {
      cfg.dt = t.number("dt", 0.0);
      cfg.t_final = t.number("t_final");
      cfg.snapshot_every = t.number("snapshot_every");
      if (cfg.dt < 0.0) throw ConfigError("timing.dt", "must be positive (or omitted)");
      if (cfg.t_final <= 0.0) throw ConfigError("timing.t_final", "must be positive");
      if (cfg.snapshot_every <= 0.0) throw ConfigError("timing.snapshot_every", "must be positive");
    }
    t.finish();
  }

  if (f.has("metrics")) {
    Fields m = f.object("metrics");
    if (m.has("boundary_region")) {
      const auto [lo, hi] = number_pair(m.raw("boundary_region"), "metrics.boundary_region");
      if (lo != std::floor(lo) || hi != std::floor(hi) || lo > hi)
        throw ConfigError("metrics.boundary_region", "expected integer [lo, hi] with lo <= hi");
      cfg.boundary_lo = static_cast<int>(lo);
      cfg.boundary_hi = static_cast<int>(hi);
    }
    cfg.split_site = as_int(m.integer("split_site", 0), "metrics.split_site");
    cfg.edge_sites = as_int(m.integer("edge_sites", 5), "metrics.edge_sites");
    if (cfg.edge_sites < 1) throw ConfigError("metrics.edge_sites", "must be positive");
    m.finish();
  }
  if (f.has("output")) {
    Fields o = f.object("output");
    cfg.output_dir = o.text("dir", "");
    o.finish();
  }
  const long long seed = f.integer("seed", 0);
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  f.finish();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

WalkerState initial_state(const ExperimentConfig& cfg) {
  WalkerState s(cfg.lattice);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& t : cfg.initial) {
    if (t.kind == "random") {
      for (int x = t.x_lo; x <= t.x_hi; ++x) {
        const double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
        s.amp(0, x) += cplx(a, b);
        s.amp(1, x) += cplx(c, d);
      }
      continue;
    }
    const WalkerState p = make_packet(cfg.lattice, t.center, t.spread, t.weight0, t.weight1);
    for (std::size_t i = 0; i < s.psi0.size(); ++i) {
      s.psi0[i] += p.psi0[i];
      s.psi1[i] += p.psi1[i];
    }
  }
  const double n = norm_squared(s);
  if (!(n > 0.0)) throw ConfigError("initial", "initial state is zero");
  const double inv = 1.0 / std::sqrt(n);
  for (auto& a : s.psi0) a *= inv;
  for (auto& a : s.psi1) a *= inv;
  return s;
}

Generator build_generator(const ExperimentConfig& cfg) {
  const auto& r = cfg.rates;
  try {
    if (cfg.walk == WalkKind::continuous_simple) {
      if (cfg.phase == "theta_positive") return bulk_generator_simple(SimplePhase::theta_positive, r.gamma, cfg.lattice);
      if (cfg.phase == "theta_negative") return bulk_generator_simple(SimplePhase::theta_negative, r.gamma, cfg.lattice);
      return boundary_generator_simple(r.gamma, cfg.lattice);
    }
    if (cfg.phase == "III_IV") return boundary_generator_split(BoundaryPair::III_IV, r.gamma1, r.gamma2, cfg.lattice);
    if (cfg.phase == "I_III") return boundary_generator_split(BoundaryPair::I_III, r.gamma1, r.gamma2, cfg.lattice);
    const PhaseName p = cfg.phase == "I" ? PhaseName::I
                        : cfg.phase == "II" ? PhaseName::II
                        : cfg.phase == "III" ? PhaseName::III
                                             : PhaseName::IV;
    return bulk_generator_split(p, r.gamma1, r.gamma2, cfg.lattice);
  } catch (const DomainError& e) {
    throw ConfigError("profile", e.what());
  }
}

}  // namespace topowalk
