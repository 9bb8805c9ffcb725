#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "spinphase/scenario.hpp"

using namespace spinphase;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfig = 2, kRuntime = 3, kIo = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnsupportedSpin:
    case ErrorKind::ZeroLambda:
    case ErrorKind::NotAntisymmetric: return kConfig;
    case ErrorKind::IoError: return kIo;
    default: return kRuntime;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  return out;
}

void emit_audit(const AuditReport& audit, const std::string& path, std::ostream& fallback) {
  const std::string text = audit.to_json().dump(2) + "\n";
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out = open_output(path);
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

void report_failures(const AuditReport& audit) {
  for (const auto& c : audit.checks)
    if (!c.pass)
      std::cerr << "FAILED " << c.name << ": residual " << format_number(c.residual) << ' ' << c.comparison << ' '
                << format_number(c.tolerance) << " violated\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical spinning-particle phase space: trajectories, verification and scans"};
  app.require_subcommand(1);

  std::string config_path, samples_path, audit_path;
  auto* run = app.add_subcommand("run", "Integrate one scenario and write samples and an audit");
  run->add_option("config", config_path, "Scenario JSON file")->required();
  run->add_option("--samples", samples_path, "Sample table path (overrides the config)");
  run->add_option("--audit", audit_path, "Audit JSON path (overrides the config)");

  VerifyOptions vopts;
  std::string verify_out, fault;
  auto* verify = app.add_subcommand("verify", "Run the property suite at seeded random states");
  verify->add_option("--seed", vopts.seed, "Random seed")->capture_default_str();
  verify->add_option("--cases", vopts.cases, "Random states per check")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_option("--out", verify_out, "Audit JSON path (default stdout)");
  verify->add_option("--inject-fault", fault, "")->group("")->check(CLI::IsMember({"corrupted-metric"}));

  std::string scan_config, param, scan_out;
  double from = 0.0, to = 1.0;
  int steps = 11;
  unsigned threads = 0;
  auto* scan = app.add_subcommand("scan", "Sweep one parameter and summarise each run");
  scan->add_option("config", scan_config, "Scenario JSON file")->required();
  scan->add_option("--param", param, "lambda | mix-weight | field-strength")->required();
  scan->add_option("--from", from, "First value")->required();
  scan->add_option("--to", to, "Last value")->required();
  scan->add_option("--steps", steps, "Number of values")->capture_default_str();
  scan->add_option("--threads", threads, "Worker threads (0 = hardware)")->capture_default_str();
  scan->add_option("--out", scan_out, "Summary table path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      ScenarioConfig cfg = load_config(config_path);
      if (!samples_path.empty()) cfg.output.samples = samples_path;
      if (!audit_path.empty()) cfg.output.audit = audit_path;
      const RunResult result = run_scenario(cfg);
      if (cfg.output.samples.empty()) {
        write_samples_csv(std::cout, result.rows);
      } else {
        std::ofstream out = open_output(cfg.output.samples);
        write_samples_csv(out, result.rows);
        if (!out) throw Error(ErrorKind::IoError, "failed writing '" + cfg.output.samples + "'");
      }
      emit_audit(result.audit, cfg.output.audit, std::cerr);
      report_failures(result.audit);
      return result.audit.passed() ? kOk : kCheckFailed;
    }
    if (*verify) {
      if (fault == "corrupted-metric") vopts.fault = Fault::CorruptedMetric;
      const AuditReport audit = run_verify(vopts);
      emit_audit(audit, verify_out, std::cout);
      report_failures(audit);
      std::cerr << "verify: " << audit.checks.size() << " checks, " << (audit.passed() ? "all passed" : "FAILURES") << '\n';
      return audit.passed() ? kOk : kCheckFailed;
    }
    if (*scan) {
      const ScanParam p = parse_scan_param(param);
      const ScenarioConfig cfg = load_config(scan_config);
      const auto rows = run_scan(cfg, p, from, to, steps, threads);
      if (scan_out.empty()) {
        write_scan_csv(std::cout, p, rows);
      } else {
        std::ofstream out = open_output(scan_out);
        write_scan_csv(out, p, rows);
        if (!out) throw Error(ErrorKind::IoError, "failed writing '" + scan_out + "'");
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
