#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "spinphase/scenario.hpp"

namespace spinphase {

ScanParam parse_scan_param(const std::string& name) {
  if (name == "lambda") return ScanParam::Lambda;
  if (name == "mix-weight") return ScanParam::MixWeight;
  if (name == "field-strength") return ScanParam::FieldStrength;
  throw Error(ErrorKind::ConfigError, "unknown scan parameter '" + name + "'");
}

const char* to_string(ScanParam p) {
  switch (p) {
    case ScanParam::Lambda: return "lambda";
    case ScanParam::MixWeight: return "mix-weight";
    case ScanParam::FieldStrength: return "field-strength";
  }
  return "lambda";
}

namespace {

ScenarioConfig with_value(const ScenarioConfig& base, ScanParam param, double v) {
  ScenarioConfig cfg = base;
  switch (param) {
    case ScanParam::Lambda: {
      if (v == 0.0) throw Error(ErrorKind::ConfigError, "lambda must be nonzero");
      // keep the run length and step fixed in periods
      const double ratio = std::abs(v / base.lambda);
      cfg.lambda = v;
      cfg.integrator.tau_end *= ratio;
      cfg.integrator.dt *= ratio;
      break;
    }
    case ScanParam::MixWeight:
      cfg.spinor.alpha = v;
      break;
    case ScanParam::FieldStrength:
      cfg.field.F = base.field.F * v;
      cfg.field.amplitude = base.field.amplitude * v;
      break;
  }
  return cfg;
}

ScanRow evaluate_row(const ScenarioConfig& cfg, double value) {
  const RepPtr rep = build_rep(cfg.spin);
  const RunResult run = run_scenario(cfg);
  ScanRow row;
  row.value = value;
  std::vector<TrajectorySample> samples;
  row.purity = 1.0;
  for (const auto& r : run.rows) {
    samples.push_back(r.sample);
    row.purity = std::min(row.purity, r.purity);
    row.max_rate = std::max(row.max_rate, std::abs(r.rate[0]));
    const Vec4 q = cfg.momentum_choice == MomentumChoice::Kinetic ? r.kinetic : r.sample.state.p;
    row.amplitude = std::max(row.amplitude, zbw_envelope(*rep, r.sample.state, q));
  }
  row.frequency = row.amplitude > kOscillationFloor && samples.size() > 2 ? measured_zbw_frequency(samples) : std::nan("");
  row.frequency_predicted = run.audit.summary["zitterbewegung"]["angular_frequency_predicted"].get<double>();
  return row;
}

}  // namespace

std::vector<ScanRow> run_scan(const ScenarioConfig& cfg, ScanParam param, double from, double to, int steps,
                              unsigned threads) {
  if (steps < 1) throw Error(ErrorKind::ConfigError, "steps must be >= 1");
  if (!std::isfinite(from) || !std::isfinite(to)) throw Error(ErrorKind::ConfigError, "scan range must be finite");
  if (param == ScanParam::MixWeight && cfg.spinor.kind != SpinorSpec::Kind::Mix)
    throw Error(ErrorKind::ConfigError, "mix-weight scan needs a 'mix' spinor");
  if (param == ScanParam::FieldStrength && !cfg.interacting())
    throw Error(ErrorKind::ConfigError, "field-strength scan needs a field");

  std::vector<double> values(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) values[k] = steps == 1 ? from : from + (to - from) * k / (steps - 1);
  // validate every row's configuration before any work starts
  std::vector<ScenarioConfig> configs;
  for (double v : values) configs.push_back(with_value(cfg, param, v));

  std::vector<ScanRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < values.size(); k = next++) {
      try {
        rows[k] = evaluate_row(configs[k], values[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_scan_csv(std::ostream& out, ScanParam param, const std::vector<ScanRow>& rows) {
  out << to_string(param) << ",amplitude,frequency,frequency_predicted,purity_min,max_rate0\n";
  for (const auto& r : rows) {
    out << format_number(r.value) << ',' << format_number(r.amplitude) << ',' << format_number(r.frequency) << ','
        << format_number(r.frequency_predicted) << ',' << format_number(r.purity) << ',' << format_number(r.max_rate)
        << '\n';
  }
}

}  // namespace spinphase
