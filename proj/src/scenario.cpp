#include "spinphase/scenario.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace spinphase {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

double number(const json& j, const std::string& key) {
  if (!j.is_number()) config_error("'" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error("'" + key + "' must be finite");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) config_error("'" + key + "' must be an integer");
  return j.get<int>();
}

Complex complex_number(const json& j, const std::string& key) {
  if (j.is_number()) return {number(j, key), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], key), number(j[1], key)};
  config_error("'" + key + "' must be a number or a [re, im] pair");
}

Eigen::VectorXd real_vector(const json& j, const std::string& key) {
  if (!j.is_array()) config_error("'" + key + "' must be an array");
  Eigen::VectorXd v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<long>(i)] = number(j[i], key);
  return v;
}

Vec4 four_vector(const json& j, const std::string& key) {
  const Eigen::VectorXd v = real_vector(j, key);
  if (v.size() != 4) config_error("'" + key + "' must have 4 components");
  return v;
}

Vec4 three_vector(const json& j, const std::string& key) {
  const Eigen::VectorXd v = real_vector(j, key);
  if (v.size() != 3) config_error("'" + key + "' must have 3 components");
  return Vec4(0.0, v[0], v[1], v[2]);
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) config_error("unknown key '" + key + "' in " + where);
}

SpinorSpec parse_spinor(const json& j) {
  if (!j.is_object()) config_error("'spinor' must be an object");
  SpinorSpec s;
  const std::string kind = j.value("kind", std::string("eigen"));
  if (kind == "eigen") {
    reject_unknown(j, {"kind", "sign", "polarization"}, "spinor");
    s.kind = SpinorSpec::Kind::Eigen;
    if (j.contains("sign")) s.sign = integer(j["sign"], "spinor.sign");
    if (s.sign != 1 && s.sign != -1) config_error("'spinor.sign' must be +1 or -1");
    if (j.contains("polarization")) s.polarization = integer(j["polarization"], "spinor.polarization");
  } else if (kind == "explicit") {
    reject_unknown(j, {"kind", "components"}, "spinor");
    s.kind = SpinorSpec::Kind::Explicit;
    if (!j.contains("components") || !j["components"].is_array()) config_error("'spinor.components' must be an array");
    const json& c = j["components"];
    s.components.resize(static_cast<long>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) s.components[static_cast<long>(i)] = complex_number(c[i], "spinor.components");
  } else if (kind == "mix") {
    reject_unknown(j, {"kind", "alpha", "plus_polarization", "minus_polarization"}, "spinor");
    s.kind = SpinorSpec::Kind::Mix;
    if (j.contains("alpha")) s.alpha = complex_number(j["alpha"], "spinor.alpha");
    if (j.contains("plus_polarization")) s.plus_polarization = integer(j["plus_polarization"], "spinor.plus_polarization");
    if (j.contains("minus_polarization")) s.minus_polarization = integer(j["minus_polarization"], "spinor.minus_polarization");
  } else if (kind == "random") {
    reject_unknown(j, {"kind"}, "spinor");
    s.kind = SpinorSpec::Kind::Random;
  } else {
    config_error("unknown spinor kind '" + kind + "'");
  }
  return s;
}

Tensor4 field_from_e_b(const Vec4& e, const Vec4& b) {
  // F_{0i} = E_i, F_{ij} = -eps_{ijk} B_k
  Tensor4 f = Tensor4::Zero();
  for (int i = 1; i <= 3; ++i) {
    f(0, i) = e[i];
    f(i, 0) = -e[i];
  }
  f(1, 2) = -b[3];
  f(2, 1) = b[3];
  f(2, 3) = -b[1];
  f(3, 2) = b[1];
  f(3, 1) = -b[2];
  f(1, 3) = b[2];
  return f;
}

FieldConfig parse_field(const json& j, double charge) {
  if (!j.is_object()) config_error("'field' must be an object");
  const std::string kind = j.value("kind", std::string("none"));
  FieldConfig f;
  if (kind == "none") {
    reject_unknown(j, {"kind"}, "field");
    return FieldConfig::none();
  }
  if (kind == "uniform") {
    reject_unknown(j, {"kind", "F", "E", "B", "gauge_offset"}, "field");
    if (j.contains("F") && (j.contains("E") || j.contains("B"))) config_error("give either 'F' or 'E'/'B', not both");
    Tensor4 tensor = Tensor4::Zero();
    if (j.contains("F")) {
      const json& rows = j["F"];
      if (!rows.is_array() || rows.size() != 4) config_error("'field.F' must be a 4x4 array");
      for (int m = 0; m < 4; ++m) tensor.row(m) = four_vector(rows[m], "field.F").transpose();
    } else {
      const Vec4 e = j.contains("E") ? three_vector(j["E"], "field.E") : Vec4::Zero().eval();
      const Vec4 b = j.contains("B") ? three_vector(j["B"], "field.B") : Vec4::Zero().eval();
      tensor = field_from_e_b(e, b);
    }
    f = FieldConfig::uniform(tensor, charge);
  } else if (kind == "plane_wave") {
    reject_unknown(j, {"kind", "amplitude", "wave_vector", "gauge_offset"}, "field");
    if (!j.contains("amplitude") || !j.contains("wave_vector")) config_error("plane wave needs 'amplitude' and 'wave_vector'");
    f = FieldConfig::plane_wave(four_vector(j["amplitude"], "field.amplitude"), four_vector(j["wave_vector"], "field.wave_vector"),
                                charge);
  } else {
    config_error("unknown field kind '" + kind + "'");
  }
  if (j.contains("gauge_offset")) f.gauge_offset = four_vector(j["gauge_offset"], "field.gauge_offset");
  f.validate();
  return f;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  reject_unknown(j,
                 {"spin", "mass", "physical_mass_mev", "lambda", "momentum", "position", "spinor", "tau_end", "periods", "dt",
                  "steps_per_period", "method", "stride", "charge", "field", "momentum_choice", "seed", "output"},
                 "config");
  ScenarioConfig cfg;
  cfg.hash = fnv1a_hex(j.dump());

  if (j.contains("spin")) {
    const double s = number(j["spin"], "spin");
    try {
      cfg.spin = SpinLabel::from_value(s);
    } catch (const Error& e) {
      config_error(e.what());
    }
    if (cfg.spin.twice() > 2) config_error("spin must be 1/2 or 1");
  }
  if (j.contains("lambda")) cfg.lambda = number(j["lambda"], "lambda");
  if (cfg.lambda == 0.0) config_error("'lambda' must be nonzero");
  if (j.contains("physical_mass_mev")) {
    cfg.physical_mass_mev = number(j["physical_mass_mev"], "physical_mass_mev");
    if (!(*cfg.physical_mass_mev > 0.0)) config_error("'physical_mass_mev' must be positive");
  }
  if (j.contains("charge")) cfg.charge = number(j["charge"], "charge");

  const bool has_mass = j.contains("mass");
  if (has_mass) cfg.mass = number(j["mass"], "mass");
  if (!(cfg.mass > 0.0)) config_error("'mass' must be positive");
  if (j.contains("momentum")) {
    const Eigen::VectorXd v = real_vector(j["momentum"], "momentum");
    if (v.size() == 3) {
      cfg.momentum = Vec4(std::sqrt(cfg.mass * cfg.mass + v.squaredNorm()), v[0], v[1], v[2]);
    } else if (v.size() == 4) {
      cfg.momentum = v;
      const double p2 = Metric::minkowski().dot(cfg.momentum, cfg.momentum);
      if (!(p2 > 0.0) || !(cfg.momentum[0] > 0.0)) config_error("'momentum' must be future timelike");
      if (has_mass && std::abs(std::sqrt(p2) - cfg.mass) > 1e-12 * cfg.mass)
        config_error("'momentum' is off the shell of 'mass'");
      cfg.mass = std::sqrt(p2);
    } else {
      config_error("'momentum' must have 3 (spatial) or 4 components");
    }
  } else {
    cfg.momentum = Vec4(cfg.mass, 0.0, 0.0, 0.0);
  }
  if (j.contains("position")) cfg.position = four_vector(j["position"], "position");
  if (j.contains("spinor")) cfg.spinor = parse_spinor(j["spinor"]);

  const double period = 2.0 * std::numbers::pi * std::abs(cfg.lambda) * cfg.spin.value() / cfg.mass;
  if (j.contains("tau_end") && j.contains("periods")) config_error("give either 'tau_end' or 'periods'");
  if (j.contains("dt") && j.contains("steps_per_period")) config_error("give either 'dt' or 'steps_per_period'");
  cfg.integrator.tau_end = period;
  if (j.contains("tau_end")) cfg.integrator.tau_end = number(j["tau_end"], "tau_end");
  if (j.contains("periods")) cfg.integrator.tau_end = number(j["periods"], "periods") * period;
  cfg.integrator.dt = period / 1000.0;
  if (j.contains("dt")) cfg.integrator.dt = number(j["dt"], "dt");
  if (j.contains("steps_per_period")) {
    const int steps = integer(j["steps_per_period"], "steps_per_period");
    if (steps < 1) config_error("'steps_per_period' must be >= 1");
    cfg.integrator.dt = period / steps;
  }
  if (j.contains("stride")) cfg.integrator.stride = integer(j["stride"], "stride");
  const std::string method = j.value("method", std::string("rk4"));
  if (method == "rk4")
    cfg.integrator.method = Method::Rk4;
  else if (method == "exact")
    cfg.integrator.method = Method::ExactPropagator;
  else
    config_error("unknown method '" + method + "'");
  cfg.integrator.validate();

  if (j.contains("field")) {
    try {
      cfg.field = parse_field(j["field"], cfg.charge);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigError) throw;
      config_error(e.what());
    }
  }
  if (cfg.interacting() && cfg.integrator.method != Method::Rk4) config_error("fields require method 'rk4'");
  const std::string choice = j.value("momentum_choice", std::string("kinetic"));
  if (choice == "kinetic")
    cfg.momentum_choice = MomentumChoice::Kinetic;
  else if (choice == "canonical")
    cfg.momentum_choice = MomentumChoice::Canonical;
  else
    config_error("unknown momentum_choice '" + choice + "'");

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0) config_error("'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) config_error("'output' must be an object");
    reject_unknown(o, {"samples", "audit"}, "output");
    if (o.contains("samples")) {
      if (!o["samples"].is_string()) config_error("'output.samples' must be a string");
      cfg.output.samples = o["samples"].get<std::string>();
    }
    if (o.contains("audit")) {
      if (!o["audit"].is_string()) config_error("'output.audit' must be a string");
      cfg.output.audit = o["audit"].get<std::string>();
    }
  }

  // resolve the spinor once so that dimension errors surface as config errors
  const RepPtr rep = build_rep(cfg.spin);
  (void)initial_state(cfg, *rep);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

PhaseState initial_state(const ScenarioConfig& cfg, const RepMatrices& rep) {
  PhaseState st;
  st.x = cfg.position;
  st.lambda = cfg.lambda;
  st.spin = cfg.spin;
  // the configured momentum is kinetic; canonical p = pi + e A(x0)
  const Vec4 pi = cfg.momentum;
  const int d = rep.dim();
  const SpinorSpec& s = cfg.spinor;
  auto check_polarization = [&](int sign, int pol) {
    if (pol < 0 || pol >= sector_multiplicity(rep, sign))
      config_error("polarization " + std::to_string(pol) + " out of range for sign " + std::to_string(sign));
  };
  switch (s.kind) {
    case SpinorSpec::Kind::Eigen:
      check_polarization(s.sign, s.polarization);
      st.xi = basis_eigenstate(rep, pi, s.sign, s.polarization);
      break;
    case SpinorSpec::Kind::Explicit:
      if (s.components.size() != d)
        config_error("spinor has " + std::to_string(s.components.size()) + " components, spin needs " + std::to_string(d));
      if (s.components.norm() == 0.0) config_error("spinor must be nonzero");
      st.xi = s.components;
      break;
    case SpinorSpec::Kind::Mix: {
      check_polarization(+1, s.plus_polarization);
      check_polarization(-1, s.minus_polarization);
      const CVector xi = basis_eigenstate(rep, pi, +1, s.plus_polarization) +
                         s.alpha * basis_eigenstate(rep, pi, -1, s.minus_polarization);
      st.xi = xi / xi.norm();
      break;
    }
    case SpinorSpec::Kind::Random: {
      StateSampler sampler(build_rep(cfg.spin), cfg.seed);
      st.xi = sampler.sample_spinor();
      break;
    }
  }
  st.p = pi;
  if (cfg.interacting()) st.p = pi + cfg.field.charge * Metric::minkowski().lower(cfg.field.potential(st.x));
  return st;
}

double to_si_angular(double omega_natural, const ScenarioConfig& cfg) {
  if (!cfg.physical_mass_mev) return std::nan("");
  const double mev_per_unit = *cfg.physical_mass_mev / cfg.mass;
  return omega_natural * mev_per_unit / kHbarMeVs;
}

Check check_below(std::string name, double residual, double tolerance) {
  Check c{std::move(name), residual, tolerance, "<=", false};
  c.pass = std::isfinite(residual) && residual <= tolerance;
  return c;
}

Check check_above(std::string name, double residual, double tolerance) {
  Check c{std::move(name), residual, tolerance, ">", false};
  c.pass = std::isfinite(residual) && residual > tolerance;
  return c;
}

bool AuditReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

json number_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::json AuditReport::to_json() const {
  json j;
  j["format_version"] = kAuditFormatVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"residual", number_json(c.residual)},
                    {"tolerance", c.tolerance},
                    {"comparison", c.comparison},
                    {"pass", c.pass}});
  }
  j["checks"] = list;
  j["pass"] = passed();
  j["summary"] = summary;
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace spinphase
