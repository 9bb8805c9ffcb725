#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinphase/em_coupling.hpp"

namespace spinphase {

/// hbar in MeV s, used only when converting frequencies to SI.
inline constexpr double kHbarMeVs = 6.582119569e-22;

/// Zitterbewegung amplitude below which no frequency is extracted.
inline constexpr double kOscillationFloor = 1e-10;

/// Version of the sample table column layout (see docs/formats.md).
inline constexpr int kSampleFormatVersion = 1;
inline constexpr int kAuditFormatVersion = 1;

struct SpinorSpec {
  enum class Kind { Eigen, Explicit, Mix, Random };
  Kind kind = Kind::Eigen;
  int sign = +1;
  int polarization = 0;
  CVector components;
  /// Mix: xi = xi_plus + alpha xi_minus, rescaled to unit Euclidean norm.
  Complex alpha = 1.0;
  int plus_polarization = 0;
  int minus_polarization = 1;
};

struct OutputSpec {
  std::string samples;
  std::string audit;
};

struct ScenarioConfig {
  SpinLabel spin = SpinLabel::from_twice(1);
  double mass = 1.0;
  std::optional<double> physical_mass_mev;
  double lambda = 1.0;
  /// Upper-index initial momentum, completed on the mass shell when given as 3-vector.
  Vec4 momentum = Vec4(1.0, 0.0, 0.0, 0.0);
  Vec4 position = Vec4::Zero();
  SpinorSpec spinor;
  IntegratorConfig integrator;
  double charge = 0.0;
  FieldConfig field;
  MomentumChoice momentum_choice = MomentumChoice::Kinetic;
  std::uint64_t seed = 0;
  OutputSpec output;
  /// FNV-1a 64 of the canonical JSON text, lower-case hex.
  std::string hash;

  bool interacting() const { return field.kind != FieldKind::None; }
};

/// Throws Error(ConfigError) on any malformed or inconsistent entry.
ScenarioConfig parse_config(const nlohmann::json& j);
/// Throws Error(IoError) when the file cannot be read, ConfigError when it is not valid JSON.
ScenarioConfig load_config(const std::string& path);

std::string fnv1a_hex(const std::string& text);

PhaseState initial_state(const ScenarioConfig& cfg, const RepMatrices& rep);

/// Natural-unit angular frequency to rad/s, given the physical mass scale.
double to_si_angular(double omega_natural, const ScenarioConfig& cfg);

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  /// "<=" when residual must not exceed tolerance, ">" when it must exceed it.
  std::string comparison = "<=";
  bool pass = false;
};

Check check_below(std::string name, double residual, double tolerance);
Check check_above(std::string name, double residual, double tolerance);

struct AuditReport {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<Check> checks;
  nlohmann::json summary = nlohmann::json::object();

  bool passed() const;
  nlohmann::json to_json() const;
};

struct SampleRow {
  TrajectorySample sample;
  Vec4 kinetic = Vec4::Zero();
  double purity = 1.0;
  Vec4 rate = Vec4::Zero();
};

struct RunResult {
  std::vector<SampleRow> rows;
  AuditReport audit;
};

RunResult run_scenario(const ScenarioConfig& cfg);

void write_samples_csv(std::ostream& out, const std::vector<SampleRow>& rows);
std::string samples_csv_header();

enum class Fault { None, CorruptedMetric };

struct VerifyOptions {
  std::uint64_t seed = 1;
  int cases = 100;
  Fault fault = Fault::None;
};

AuditReport run_verify(const VerifyOptions& opts);

enum class ScanParam { Lambda, MixWeight, FieldStrength };
ScanParam parse_scan_param(const std::string& name);
const char* to_string(ScanParam p);

struct ScanRow {
  double value = 0.0;
  double amplitude = 0.0;          ///< max zitterbewegung envelope over the run
  double frequency = 0.0;          ///< zero-crossing angular frequency, NaN without oscillation
  double frequency_predicted = 0.0;
  double purity = 1.0;             ///< minimum over the run
  double max_rate = 0.0;           ///< max |rate^0|
};

/// Rows are evaluated concurrently and returned in order of value.
std::vector<ScanRow> run_scan(const ScenarioConfig& cfg, ScanParam param, double from, double to, int steps,
                              unsigned threads = 0);
void write_scan_csv(std::ostream& out, ScanParam param, const std::vector<ScanRow>& rows);

/// Formats a double the way every artifact does (%.17g, "nan" for NaN).
std::string format_number(double v);

}  // namespace spinphase
