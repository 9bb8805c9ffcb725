#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "spinphase/scenario.hpp"
#include "test_support.hpp"

using namespace spinphase;
using namespace spinphase::testing;
using nlohmann::json;

namespace {

json mix_config() {
  return json::parse(R"({
    "spin": 0.5, "mass": 1.0, "momentum": [0.0, 0.0, 0.0],
    "spinor": {"kind": "mix", "alpha": 1.0},
    "periods": 3, "steps_per_period": 400, "method": "exact", "charge": 1.0, "seed": 3
  })");
}

std::string csv_of(const RunResult& r) {
  std::ostringstream out;
  write_samples_csv(out, r.rows);
  return out.str();
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("spinphase_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPINPHASE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Config, DefaultsAndShell) {
  const ScenarioConfig cfg = parse_config(json::parse(R"({"mass": 2.0, "momentum": [0.0, 1.5, 0.0]})"));
  EXPECT_EQ(cfg.spin.twice(), 1);
  EXPECT_DOUBLE_EQ(cfg.momentum[0], 2.5);
  EXPECT_DOUBLE_EQ(cfg.lambda, 1.0);
  EXPECT_EQ(cfg.integrator.method, Method::Rk4);
  EXPECT_NEAR(cfg.integrator.tau_end, std::numbers::pi / 2.0, 1e-15);
  EXPECT_EQ(cfg.hash.size(), 16u);
}

TEST(Config, Errors) {
  const char* bad[] = {
      R"({"unknown": 1})",
      R"({"spin": 1.5})",
      R"({"spin": 0.7})",
      R"({"lambda": 0})",
      R"({"mass": -1})",
      R"({"mass": 1.0, "momentum": [2.0, 0.0, 0.0, 0.0]})",
      R"({"momentum": [0.5, 1.0, 0.0, 0.0]})",
      R"({"spinor": {"kind": "explicit", "components": [1, 0, 0]}})",
      R"({"spinor": {"kind": "eigen", "polarization": 2}})",
      R"({"spinor": {"kind": "eigen", "sign": 0}})",
      R"({"spinor": {"kind": "other"}})",
      R"({"dt": -0.1})",
      R"({"tau_end": 1, "periods": 1})",
      R"({"method": "euler"})",
      R"({"field": {"kind": "uniform", "F": [[0,1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]}})",
      R"({"field": {"kind": "plane_wave", "amplitude": [0,1,0,0], "wave_vector": [1,-1,0,0]}})",
      R"({"field": {"kind": "uniform", "B": [0,0,1]}, "method": "exact"})",
      R"({"seed": -3})",
      R"({"output": {"samples": 3}})",
  };
  for (const char* text : bad) {
    try {
      parse_config(json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigError) << text;
    }
  }
}

TEST(Config, FileErrors) {
  const auto dir = scratch_dir();
  try {
    load_config((dir / "missing.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
  write_file(dir / "broken.json", "{ spin: ");
  try {
    load_config((dir / "broken.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
  }
}

TEST(Config, HashIsCanonical) {
  const json a = json::parse(R"({"spin": 0.5, "mass": 1.0})");
  const json b = json::parse(R"({"mass": 1.0,   "spin": 0.5})");
  EXPECT_EQ(parse_config(a).hash, parse_config(b).hash);
  EXPECT_NE(parse_config(a).hash, parse_config(json::parse(R"({"spin": 0.5, "mass": 1.5})")).hash);
  // FNV-1a 64 reference values
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Config, SpinorKinds) {
  json j = mix_config();
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  const PhaseState mix = initial_state(parse_config(j), *rep);
  EXPECT_NEAR(mix.xi.norm(), 1.0, 1e-15);
  EXPECT_LT((mix.xi - (unit(4, 0) + unit(4, 3)) / std::sqrt(2.0)).cwiseAbs().maxCoeff(), 1e-15);

  j["spinor"] = json::parse(R"({"kind": "explicit", "components": [[0.5, 0.1], 0, [0, -1], 0.2]})");
  const PhaseState ex = initial_state(parse_config(j), *rep);
  EXPECT_EQ(ex.xi[0], Complex(0.5, 0.1));
  EXPECT_EQ(ex.xi[2], Complex(0.0, -1.0));

  j["spinor"] = json::parse(R"({"kind": "random"})");
  EXPECT_EQ(initial_state(parse_config(j), *rep).xi, initial_state(parse_config(j), *rep).xi);
  j["seed"] = 4;
  EXPECT_NE(initial_state(parse_config(j), *rep).xi, initial_state(parse_config(mix_config()), *rep).xi);
}

TEST(Config, ElectricAndMagneticFieldTensor) {
  const ScenarioConfig cfg =
      parse_config(json::parse(R"({"field": {"kind": "uniform", "E": [1, 2, 3], "B": [4, 5, 6]}, "charge": 1})"));
  const Tensor4& f = cfg.field.F;
  EXPECT_DOUBLE_EQ(f(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(f(0, 3), 3.0);
  EXPECT_DOUBLE_EQ(f(1, 2), -6.0);
  EXPECT_DOUBLE_EQ(f(2, 3), -4.0);
  EXPECT_DOUBLE_EQ(f(3, 1), -5.0);
  EXPECT_LT((f + f.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Run, EigenstateHasNoRadius) {
  json j = mix_config();
  j["spinor"] = json::parse(R"({"kind": "eigen", "sign": -1, "polarization": 1})");
  j["momentum"] = {0.3, -0.2, 0.5};
  j["method"] = "rk4";
  const RunResult r = run_scenario(parse_config(j));
  EXPECT_TRUE(r.audit.passed());
  const Vec4 x0 = r.rows.front().sample.state.x, p = r.rows.front().sample.state.p;
  for (const auto& row : r.rows) {
    EXPECT_LT(row.sample.r.cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(row.rate.cwiseAbs().maxCoeff(), 1e-18);
    const Vec4 dx = row.sample.state.x - x0;
    if (row.sample.tau > 0)
      for (int i = 1; i < 4; ++i) EXPECT_NEAR(dx[i] / dx[0], p[i] / p[0], 1e-10);
  }
  EXPECT_TRUE(r.audit.summary["zitterbewegung"]["angular_frequency_measured"].is_null());
}

TEST(Run, ElectronFrequencyInSi) {
  json j = mix_config();
  j["mass"] = 0.51099895;
  j["physical_mass_mev"] = 0.51099895;
  j["periods"] = 10;
  j["steps_per_period"] = 1000;
  const RunResult r = run_scenario(parse_config(j));
  EXPECT_TRUE(r.audit.passed());
  const json& z = r.audit.summary["zitterbewegung"];
  const double si = z["si_angular_frequency_measured"].get<double>();
  EXPECT_LT(std::abs(si / 1.5e21 - 1.0), 0.05);
  // 2 m c^2 / hbar with hbar to four significant figures
  EXPECT_NEAR(si / (2.0 * 0.51099895 / 6.582e-22), 1.0, 5e-4);
  EXPECT_EQ(z["si_unit"], "rad/s");
}

TEST(Run, NaturalMassScaleIsIndependent) {
  // the same physics expressed with mass 1 and a physical scale converts to the same SI value
  json j = mix_config();
  j["physical_mass_mev"] = 0.51099895;
  const RunResult r = run_scenario(parse_config(j));
  EXPECT_NEAR(r.audit.summary["zitterbewegung"]["si_angular_frequency_predicted"].get<double>(),
              2.0 * 0.51099895 / kHbarMeVs, 1e6);
}

TEST(Run, Deterministic) {
  json j = mix_config();
  j["spinor"] = json::parse(R"({"kind": "random"})");
  j["method"] = "rk4";
  const ScenarioConfig cfg = parse_config(j);
  const RunResult a = run_scenario(cfg), b = run_scenario(cfg);
  EXPECT_EQ(csv_of(a), csv_of(b));
  EXPECT_EQ(a.audit.to_json().dump(), b.audit.to_json().dump());
  EXPECT_EQ(a.audit.config_hash, cfg.hash);
}

TEST(Run, CsvLayout) {
  const RunResult r = run_scenario(parse_config(mix_config()));
  const std::string text = csv_of(r);
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header, samples_csv_header());
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 36);
  EXPECT_EQ(header.substr(0, 12), "tau,x0,x1,x2");
  EXPECT_NE(header.find(",S01,S02,S03,S12,S13,S23,H,purity,rad0"), std::string::npos);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.rows.size() + 1);
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Run, FieldRunReportsKineticMomentum) {
  json j = mix_config();
  j["method"] = "rk4";
  j["position"] = {0.0, 0.5, -0.5, 0.0};
  j["field"] = json::parse(R"({"kind": "uniform", "B": [0, 0, 0.2]})");
  const ScenarioConfig cfg = parse_config(j);
  const RunResult r = run_scenario(cfg);
  EXPECT_TRUE(r.audit.passed());
  // configured momentum is kinetic at the start point
  EXPECT_LT((r.rows.front().kinetic - Vec4(1, 0, 0, 0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT((r.rows.front().sample.state.p - r.rows.front().kinetic).cwiseAbs().maxCoeff(), 0.01);
}

TEST(Scan, MixWeightAmplitudeGrowsFromZero) {
  json j = mix_config();
  j["periods"] = 1;
  const auto rows = run_scan(parse_config(j), ScanParam::MixWeight, 0.0, 1.0, 11);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_LT(rows[0].amplitude, 1e-12);
  EXPECT_DOUBLE_EQ(rows[0].purity, 1.0);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_GT(rows[k].amplitude, rows[k - 1].amplitude);
    EXPECT_LT(rows[k].purity, rows[k - 1].purity);
  }
  // oracle: unit-norm mix of e1 and e4 circles with radius (lambda s / m) 2 alpha / (1 + alpha^2)
  for (const auto& row : rows) EXPECT_NEAR(row.amplitude, 0.5 * 2.0 * row.value / (1.0 + row.value * row.value), 1e-12);
}

TEST(Scan, FrequencyInverseInLambda) {
  const auto rows = run_scan(parse_config(mix_config()), ScanParam::Lambda, 0.5, 2.0, 4);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.frequency_predicted * row.value, rows[0].frequency_predicted * rows[0].value, 1e-12);
    EXPECT_NEAR(row.frequency * row.value, rows[0].frequency_predicted * rows[0].value, 1e-6);
  }
}

TEST(Scan, ZeroFieldRowMatchesFreeRun) {
  json j = mix_config();
  j["method"] = "rk4";
  json free_j = j;
  j["field"] = json::parse(R"({"kind": "uniform", "E": [0.1, 0, 0], "B": [0, 0, 0.2]})");
  const auto rows = run_scan(parse_config(j), ScanParam::FieldStrength, 0.0, 1.0, 3);
  const RunResult free = run_scenario(parse_config(free_j));
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  double amp = 0.0, rate = 0.0, purity = 1.0;
  for (const auto& r : free.rows) {
    amp = std::max(amp, zbw_envelope(*rep, r.sample.state, r.sample.state.p));
    rate = std::max(rate, std::abs(r.rate[0]));
    purity = std::min(purity, r.purity);
  }
  EXPECT_NEAR(rows[0].amplitude, amp, 1e-10);
  EXPECT_NEAR(rows[0].max_rate, rate, 1e-10);
  EXPECT_NEAR(rows[0].purity, purity, 1e-10);
  EXPECT_NEAR(rows[0].frequency, free.audit.summary["zitterbewegung"]["angular_frequency_measured"].get<double>(), 1e-10);
  EXPECT_GT(std::abs(rows[2].amplitude - amp), 1e-6);
}

TEST(Scan, ThreadCountDoesNotChangeRows) {
  const ScenarioConfig cfg = parse_config(mix_config());
  std::ostringstream one, many;
  write_scan_csv(one, ScanParam::MixWeight, run_scan(cfg, ScanParam::MixWeight, 0.0, 2.0, 9, 1));
  write_scan_csv(many, ScanParam::MixWeight, run_scan(cfg, ScanParam::MixWeight, 0.0, 2.0, 9, 4));
  EXPECT_EQ(one.str(), many.str());
}

TEST(Scan, Errors) {
  const ScenarioConfig cfg = parse_config(mix_config());
  EXPECT_THROW(parse_scan_param("mass"), Error);
  EXPECT_THROW(run_scan(cfg, ScanParam::FieldStrength, 0, 1, 3), Error);
  EXPECT_THROW(run_scan(cfg, ScanParam::Lambda, 0, 1, 0), Error);
  EXPECT_THROW(run_scan(cfg, ScanParam::Lambda, 0, 1, 2), Error);
  json j = mix_config();
  j["spinor"] = json::parse(R"({"kind": "eigen"})");
  EXPECT_THROW(run_scan(parse_config(j), ScanParam::MixWeight, 0, 1, 2), Error);
}

TEST(Verify, EmptyAndDefault) {
  const AuditReport empty = run_verify({.seed = 1, .cases = 0});
  EXPECT_TRUE(empty.checks.empty());
  EXPECT_TRUE(empty.passed());
  const AuditReport full = run_verify({.seed = 5, .cases = 20});
  EXPECT_TRUE(full.passed());
  for (const auto& c : full.checks)
    if (c.name.rfind("algebra.", 0) == 0) EXPECT_LT(c.residual, 1e-9) << c.name;
  EXPECT_EQ(run_verify({.seed = 5, .cases = 20}).to_json().dump(), full.to_json().dump());
}

TEST(Verify, CorruptedMetricFailsNamedCheck) {
  const AuditReport r = run_verify({.seed = 1, .cases = 5, .fault = Fault::CorruptedMetric});
  EXPECT_FALSE(r.passed());
  bool named = false;
  for (const auto& c : r.checks)
    if (c.name == "algebra.s1/2.WW" && !c.pass) named = true;
  EXPECT_TRUE(named);
}

TEST(Binary, ExitCodesAndByteIdenticalOutputs) {
  const auto dir = scratch_dir();
  json j = mix_config();
  j["output"] = {{"samples", (dir / "a.csv").string()}, {"audit", (dir / "a.json").string()}};
  write_file(dir / "a.cfg", j.dump());
  ASSERT_EQ(run_cli("run " + (dir / "a.cfg").string()), 0);
  const std::string first_csv = read_file(dir / "a.csv"), first_audit = read_file(dir / "a.json");
  ASSERT_EQ(run_cli("run " + (dir / "a.cfg").string()), 0);
  EXPECT_EQ(read_file(dir / "a.csv"), first_csv);
  EXPECT_EQ(read_file(dir / "a.json"), first_audit);
  EXPECT_NE(first_audit.find(parse_config(j).hash), std::string::npos);

  write_file(dir / "bad.cfg", R"({"spin": 3})");
  EXPECT_EQ(run_cli("run " + (dir / "bad.cfg").string()), 2);
  EXPECT_EQ(run_cli("run " + (dir / "nowhere.cfg").string()), 4);
  EXPECT_EQ(run_cli("run " + (dir / "a.cfg").string() + " --samples " + (dir / "no_dir/x.csv").string()), 4);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("verify --cases 0"), 0);
  EXPECT_EQ(run_cli("verify --cases 3 --inject-fault corrupted-metric"), 1);
  EXPECT_EQ(run_cli("scan " + (dir / "a.cfg").string() + " --param mix-weight --from 0 --to 1 --steps 3 --out " +
                    (dir / "scan.csv").string()),
            0);
  EXPECT_EQ(run_cli("scan " + (dir / "a.cfg").string() + " --param mass --from 0 --to 1"), 2);

  json unstable = mix_config();
  unstable["method"] = "rk4";
  unstable["dt"] = 100.0;
  unstable["tau_end"] = 1e6;
  unstable["stride"] = 1000;
  unstable.erase("periods");
  unstable.erase("steps_per_period");
  write_file(dir / "unstable.cfg", unstable.dump());
  EXPECT_EQ(run_cli("run " + (dir / "unstable.cfg").string() + " --samples " + (dir / "u.csv").string() + " --audit " +
                    (dir / "u.json").string()),
            3);
  std::filesystem::remove_all(dir);
}
