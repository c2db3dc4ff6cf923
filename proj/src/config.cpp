#include "levgas/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "levgas/rng.hpp"

namespace levgas {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ConfigError("config: " + where + " requires numeric \"" + key + "\"");
  }
  return obj[key].get<double>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ConfigError("config: " + where + " requires string \"" + key + "\"");
  }
  return obj[key].get<std::string>();
}

CouplingConfig parse_coupling(const json& v) {
  CouplingConfig c;
  if (v.is_number()) {
    c.sampled = false;
    c.fixed = v.get<double>();
    return c;
  }
  if (v.is_object()) {
    reject_unknown_keys(v, {"mean", "std"}, "model.J");
    c.sampled = true;
    c.mean = require_number(v, "mean", "model.J");
    c.std = require_number(v, "std", "model.J");
    if (c.std < 0.0) throw ConfigError("config: model.J.std must be non-negative");
    return c;
  }
  throw ConfigError("config: model.J must be a number or {mean, std}");
}

ModelConfig parse_model(const json& v) {
  reject_unknown_keys(v, {"type", "J", "h1", "h2", "Z"}, "model");
  ModelConfig m;
  m.type = require_string(v, "type", "model");
  if (m.type != "two_qubit_ising") {
    throw ConfigError("config: unsupported model type \"" + m.type + "\"");
  }
  if (!v.contains("J")) throw ConfigError("config: model requires \"J\"");
  m.j = parse_coupling(v["J"]);
  m.h1 = require_number(v, "h1", "model");
  m.h2 = require_number(v, "h2", "model");
  m.z = require_number(v, "Z", "model");
  return m;
}

Schedule parse_schedule(const json& v) {
  reject_unknown_keys(v, {"kind", "A", "B", "t0", "t1", "base"}, "schedule");
  Schedule s;
  const std::string kind = require_string(v, "kind", "schedule");
  if (kind == "log") {
    s.kind = ScheduleKind::kLog;
  } else if (kind == "linear") {
    s.kind = ScheduleKind::kLinear;
  } else if (kind == "constant") {
    s.kind = ScheduleKind::kConstant;
  } else {
    throw ConfigError("config: schedule.kind must be log, linear or constant");
  }
  s.a = require_number(v, "A", "schedule");
  s.b = v.contains("B") ? require_number(v, "B", "schedule") : 0.0;
  s.t0 = require_number(v, "t0", "schedule");
  s.t1 = require_number(v, "t1", "schedule");
  if (v.contains("base")) {
    const std::string base = require_string(v, "base", "schedule");
    if (base == "natural") {
      s.log_base = LogBase::kNatural;
    } else if (base == "10") {
      s.log_base = LogBase::kBase10;
    } else {
      throw ConfigError("config: schedule.base must be \"natural\" or \"10\"");
    }
  }
  return s;
}

NoiseConfig parse_noise(const json& v) {
  reject_unknown_keys(v, {"kind", "sigma", "gamma"}, "noise");
  NoiseConfig n;
  const std::string kind = require_string(v, "kind", "noise");
  if (kind == "none") {
    n.kind = NoiseKind::kNone;
  } else if (kind == "wiener") {
    n.kind = NoiseKind::kWiener;
  } else if (kind == "ornstein_uhlenbeck") {
    n.kind = NoiseKind::kOrnsteinUhlenbeck;
  } else {
    throw ConfigError("config: noise.kind must be none, wiener or ornstein_uhlenbeck");
  }
  n.sigma = v.contains("sigma") ? require_number(v, "sigma", "noise") : 0.0;
  n.gamma = v.contains("gamma") ? require_number(v, "gamma", "noise") : 0.0;
  return n;
}

IntegratorConfig parse_integrator(const json& v) {
  reject_unknown_keys(
      v, {"method", "dt", "stride", "denominator_floor", "degeneracy_mode"},
      "integrator");
  IntegratorConfig i;
  const std::string method = require_string(v, "method", "integrator");
  if (method == "rk4") {
    i.method = IntegratorMethod::kRk4;
  } else if (method == "euler_maruyama") {
    i.method = IntegratorMethod::kEulerMaruyama;
  } else {
    throw ConfigError("config: integrator.method must be rk4 or euler_maruyama");
  }
  i.dt = require_number(v, "dt", "integrator");
  if (v.contains("stride")) {
    if (!v["stride"].is_number_integer()) {
      throw ConfigError("config: integrator.stride must be an integer");
    }
    i.stride = v["stride"].get<int>();
  }
  if (v.contains("denominator_floor")) {
    i.policy.floor = require_number(v, "denominator_floor", "integrator");
  }
  if (v.contains("degeneracy_mode")) {
    const std::string mode = require_string(v, "degeneracy_mode", "integrator");
    if (mode == "strict") {
      i.policy.mode = DegeneracyMode::kStrict;
    } else if (mode == "regularized") {
      i.policy.mode = DegeneracyMode::kRegularized;
    } else {
      throw ConfigError("config: degeneracy_mode must be strict or regularized");
    }
  }
  return i;
}

Rho0Config parse_rho0(const json& v) {
  Rho0Config r;
  if (v.is_string()) {
    if (v.get<std::string>() != "uniform") {
      throw ConfigError("config: rho0 must be \"uniform\" or {matrix: ...}");
    }
    r.uniform = true;
    return r;
  }
  if (!v.is_object()) {
    throw ConfigError("config: rho0 must be \"uniform\" or {matrix: ...}");
  }
  reject_unknown_keys(v, {"matrix"}, "rho0");
  if (!v.contains("matrix") || !v["matrix"].is_array()) {
    throw ConfigError("config: rho0.matrix must be an array of rows");
  }
  const auto& rows = v["matrix"];
  const int n = static_cast<int>(rows.size());
  r.uniform = false;
  r.matrix = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw ConfigError("config: rho0.matrix must be square");
    }
    for (int j = 0; j < n; ++j) {
      const auto& cell = rows[i][j];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw ConfigError("config: rho0.matrix entries must be [re, im] pairs");
      }
      r.matrix(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return r;
}

WindowSpec parse_window(const json& v) {
  reject_unknown_keys(v, {"kind", "epsilon"}, "window");
  WindowSpec w;
  const std::string kind = require_string(v, "kind", "window");
  if (kind == "unbounded") {
    w.kind = WindowKind::kUnbounded;
    w.epsilon = 0.0;
    return w;
  }
  if (kind == "index") {
    w.kind = WindowKind::kIndex;
    if (!v.contains("epsilon") || !v["epsilon"].is_number_integer()) {
      throw ConfigError("config: index window requires integer epsilon");
    }
    const int eps = v["epsilon"].get<int>();
    if (eps < 0) throw ConfigError("config: window.epsilon must be non-negative");
    w.epsilon = eps;
    return w;
  }
  if (kind == "energy") {
    w.kind = WindowKind::kEnergy;
    w.epsilon = require_number(v, "epsilon", "window");
    if (w.epsilon < 0.0) throw ConfigError("config: window.epsilon must be non-negative");
    return w;
  }
  throw ConfigError("config: window.kind must be unbounded, index or energy");
}

OutputConfig parse_outputs(const json& v) {
  reject_unknown_keys(v, {"csv", "svg"}, "outputs");
  OutputConfig o;
  if (v.contains("csv")) o.csv = require_string(v, "csv", "outputs");
  if (v.contains("svg")) o.svg_dir = require_string(v, "svg", "outputs");
  return o;
}

json coupling_to_json(const CouplingConfig& c) {
  if (!c.sampled) return json(c.fixed);
  return json{{"mean", c.mean}, {"std", c.std}};
}

json rho0_to_json(const Rho0Config& r) {
  if (r.uniform) return json("uniform");
  json rows = json::array();
  for (int i = 0; i < r.matrix.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < r.matrix.cols(); ++j) {
      row.push_back(json::array({r.matrix(i, j).real(), r.matrix(i, j).imag()}));
    }
    rows.push_back(row);
  }
  return json{{"matrix", rows}};
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(root,
                      {"model", "schedule", "noise", "integrator", "rho0", "window",
                       "seed", "outputs"},
                      "top level");
  RunConfig c;
  if (!root.contains("model")) throw ConfigError("config: missing \"model\"");
  c.model = parse_model(root["model"]);
  if (!root.contains("schedule")) throw ConfigError("config: missing \"schedule\"");
  c.schedule = parse_schedule(root["schedule"]);
  if (root.contains("noise")) c.noise = parse_noise(root["noise"]);
  if (root.contains("integrator")) c.integrator = parse_integrator(root["integrator"]);
  if (root.contains("rho0")) c.rho0 = parse_rho0(root["rho0"]);
  if (root.contains("window")) c.window = parse_window(root["window"]);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      throw ConfigError("config: seed must be an integer");
    }
    c.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("outputs")) c.outputs = parse_outputs(root["outputs"]);
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json root;
  root["model"] = {{"type", c.model.type},
                   {"J", coupling_to_json(c.model.j)},
                   {"h1", c.model.h1},
                   {"h2", c.model.h2},
                   {"Z", c.model.z}};
  json sched;
  switch (c.schedule.kind) {
    case ScheduleKind::kLog:
      sched["kind"] = "log";
      break;
    case ScheduleKind::kLinear:
      sched["kind"] = "linear";
      break;
    case ScheduleKind::kConstant:
      sched["kind"] = "constant";
      break;
  }
  sched["A"] = c.schedule.a;
  sched["B"] = c.schedule.b;
  sched["t0"] = c.schedule.t0;
  sched["t1"] = c.schedule.t1;
  sched["base"] = c.schedule.log_base == LogBase::kNatural ? "natural" : "10";
  root["schedule"] = sched;

  json noise;
  switch (c.noise.kind) {
    case NoiseKind::kNone:
      noise["kind"] = "none";
      break;
    case NoiseKind::kWiener:
      noise["kind"] = "wiener";
      break;
    case NoiseKind::kOrnsteinUhlenbeck:
      noise["kind"] = "ornstein_uhlenbeck";
      break;
  }
  noise["sigma"] = c.noise.sigma;
  noise["gamma"] = c.noise.gamma;
  root["noise"] = noise;

  root["integrator"] = {
      {"method", c.integrator.method == IntegratorMethod::kRk4 ? "rk4" : "euler_maruyama"},
      {"dt", c.integrator.dt},
      {"stride", c.integrator.stride},
      {"denominator_floor", c.integrator.policy.floor},
      {"degeneracy_mode",
       c.integrator.policy.mode == DegeneracyMode::kStrict ? "strict" : "regularized"}};

  root["rho0"] = rho0_to_json(c.rho0);

  json window;
  switch (c.window.kind) {
    case WindowKind::kUnbounded:
      window["kind"] = "unbounded";
      break;
    case WindowKind::kIndex:
      window["kind"] = "index";
      window["epsilon"] = static_cast<int>(c.window.epsilon);
      break;
    case WindowKind::kEnergy:
      window["kind"] = "energy";
      window["epsilon"] = c.window.epsilon;
      break;
  }
  root["window"] = window;
  root["seed"] = c.seed;
  root["outputs"] = {{"csv", c.outputs.csv}, {"svg", c.outputs.svg_dir}};
  return root.dump(2);
}

void validate_config(const RunConfig& c) {
  validate_schedule(c.schedule);
  if (!(c.integrator.dt > 0.0)) {
    throw ConfigError("config: integrator.dt must be positive");
  }
  if (c.integrator.stride < 1) {
    throw ConfigError("config: integrator.stride must be at least 1");
  }
  if (!(c.integrator.policy.floor > 0.0)) {
    throw ConfigError("config: denominator_floor must be positive");
  }
  if (c.noise.sigma < 0.0 || c.noise.gamma < 0.0) {
    throw ConfigError("config: noise parameters must be non-negative");
  }
  if (c.integrator.method == IntegratorMethod::kRk4 && c.noise.kind != NoiseKind::kNone) {
    throw ConfigError("config: rk4 integrates the deterministic system only; "
                      "use euler_maruyama for noisy runs");
  }
  if (c.noise.kind != NoiseKind::kNone && c.schedule.kind == ScheduleKind::kConstant) {
    throw ConfigError("config: lambda-indexed noise needs a schedule with "
                      "positive d_lambda per step; constant schedules cannot drive it");
  }
  if (!c.rho0.uniform) {
    if (c.rho0.matrix.rows() != 4 && c.model.type == "two_qubit_ising") {
      throw ConfigError("config: rho0.matrix must be 4x4 for the two-qubit model");
    }
    if (!is_hermitian(c.rho0.matrix, 1e-10)) {
      throw ConfigError("config: rho0.matrix must be Hermitian");
    }
    if (std::abs(c.rho0.matrix.trace().real() - 1.0) > 1e-9 ||
        std::abs(c.rho0.matrix.trace().imag()) > 1e-12) {
      throw ConfigError("config: rho0.matrix must have unit trace");
    }
  }
  if (c.window.kind == WindowKind::kIndex &&
      c.window.epsilon != std::floor(c.window.epsilon)) {
    throw ConfigError("config: index window epsilon must be an integer");
  }
}

std::uint64_t config_hash(const RunConfig& c) {
  const std::string text = serialize_config(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double resolve_coupling(const RunConfig& c) {
  if (!c.model.j.sampled) return c.model.j.fixed;
  std::mt19937_64 rng(derive_seed(c.seed, 2));
  std::normal_distribution<double> gauss(c.model.j.mean, c.model.j.std);
  return gauss(rng);
}

HamiltonianSpec build_model(const RunConfig& c) {
  return build_two_qubit_ising(resolve_coupling(c), c.model.h1, c.model.h2, c.model.z);
}

NoiseProcess build_noise(const RunConfig& c) {
  const int dim = 4;
  switch (c.noise.kind) {
    case NoiseKind::kNone:
      return NoiseProcess::zero(dim);
    case NoiseKind::kWiener:
      return NoiseProcess::wiener(dim, c.noise.sigma, derive_seed(c.seed, 1));
    case NoiseKind::kOrnsteinUhlenbeck:
      return NoiseProcess::ornstein_uhlenbeck(dim, c.noise.gamma, c.noise.sigma,
                                              derive_seed(c.seed, 1));
  }
  throw ConfigError("config: unknown noise kind");
}

ComplexMatrix build_rho0(const RunConfig& c, int dim) {
  if (c.rho0.uniform) return uniform_rho0(dim);
  if (c.rho0.matrix.rows() != dim) {
    throw ConfigError("config: rho0 dimension differs from the model");
  }
  return hermitize(c.rho0.matrix);
}

}  // namespace levgas
