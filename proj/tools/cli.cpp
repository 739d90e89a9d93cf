#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "jcq/noise.hpp"
#include "jcq/protocol.hpp"
#include "jcq/schedule.hpp"
#include "jcq/state_io.hpp"

namespace jcq::cli {
namespace {

// Thresholds for a PASS verdict.
constexpr double kStabilizerTolerance = 1e-12;
constexpr double kFidelityTolerance = 1e-12;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_report(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string order_string(const std::vector<protocol::QubitPair>& order) {
  std::string s;
  for (const auto& [i, j] : order) {
    if (!s.empty()) s += ',';
    s += std::to_string(i) + "-" + std::to_string(j);
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::ordered_json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

protocol::ClusterSpec make_spec(int n, const std::string& order) {
  try {
    if (order.empty()) return protocol::ClusterSpec::chain(n);
    return protocol::ClusterSpec::with_order(n, parse_order(order));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Stabilizers and fidelity against the ideal chain; records outputs and the verdict.
void verify_state(const StateVector& state, RunReport& report) {
  const auto stab = protocol::stabilizer_expectations(state);
  bool ok = true;
  for (std::size_t a = 0; a < stab.size(); ++a) {
    report.output("stabilizer[" + std::to_string(a + 1) + "]", fmt_report(stab[a]));
    ok = ok && std::abs(stab[a] - 1.0) <= kStabilizerTolerance;
  }
  const double f = fidelity(protocol::ideal_cluster(state.n_qubits()), state);
  report.output("fidelity", fmt_report(f));
  report.output("fidelity_squared", fmt_report(f * f));
  ok = ok && f >= 1.0 - kFidelityTolerance;
  report.passed = ok;
}

int finish(const RunReport& report, std::ostream& out) {
  report.print(out);
  return report.passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

void RunReport::print(std::ostream& out) const {
  out << "command: " << command << '\n';
  for (const auto& [k, v] : inputs) out << "  input  " << k << " = " << v << '\n';
  for (const auto& [k, v] : outputs) out << "  output " << k << " = " << v << '\n';
  for (const auto& a : artifacts) out << "  wrote  " << a << '\n';
  out << "status: " << (passed ? "PASS" : "FAIL") << '\n';
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid '" + spec + "': '" + item + "' is not a number");
    }
    if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument("grid '" + spec + "': bad number '" + item + "'");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:step, got '" + spec + "'");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("grid '" + spec + "' is empty");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  // When the grid lands on `stop`, interpolate between the ends so interior points like 0 come out exact.
  const bool closed = count > 1 && std::abs(start + static_cast<double>(count - 1) * step - stop) <= 1e-9 * step;
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = closed ? start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1)
                    : start + static_cast<double>(k) * step;
  }
  return out;
}

std::vector<std::pair<int, int>> parse_order(const std::string& spec) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("order entry '" + item + "' must look like i-j");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = item.substr(0, dash), b = item.substr(dash + 1);
      const int i = std::stoi(a, &u1);
      const int j = std::stoi(b, &u2);
      if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing characters");
      out.emplace_back(i, j);
    } catch (const std::exception&) {
      throw std::invalid_argument("order entry '" + item + "' must look like i-j");
    }
  }
  if (out.empty()) throw std::invalid_argument("order is empty");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential cluster-state generation in a shared-inductance charge-qubit register", "jcq"};
  app.require_subcommand(1);

  int n = 2;
  std::string order;
  std::string out_path;
  std::string in_path;
  std::string basis = "computational";
  std::string device_path;
  std::string kind;
  std::string grid;
  double tau_phi = 1e-4;
  double tau_op = 1e-10;

  const std::vector<std::string> bases{"computational", "pm"};

  auto* generate = app.add_subcommand("generate", "Run the sequential protocol and write the amplitudes");
  generate->add_option("--n", n, "Number of qubits")->required()->check(CLI::Range(protocol::kMinQubits, protocol::kMaxQubits));
  generate->add_option("--order", order, "Pair order, e.g. 2-3,1-2,3-4");
  generate->add_option("--out", out_path, "Amplitude JSON output path");
  generate->add_option("--basis", basis, "computational or pm")->check(CLI::IsMember(bases));

  auto* verify = app.add_subcommand("verify", "Check a state file against the ideal chain cluster");
  verify->add_option("--in", in_path, "Amplitude JSON file")->required();

  auto* sweep = app.add_subcommand("sweep", "Fidelity sweeps over timing error or dephasing exposure");
  sweep->add_option("--kind", kind, "timing or dephasing")->required()->check(CLI::IsMember({"timing", "dephasing"}));
  sweep->add_option("--n", n, "Number of qubits")->required()->check(CLI::Range(protocol::kMinQubits, protocol::kMaxQubits));
  sweep->add_option("--grid", grid, "start:stop:step")->required();
  sweep->add_option("--order", order, "Pair order");
  sweep->add_option("--out", out_path, "CSV output path");

  auto* compile = app.add_subcommand("compile", "Compile the protocol into a device-control schedule");
  compile->add_option("--n", n, "Number of qubits")->required()->check(CLI::Range(protocol::kMinQubits, protocol::kMaxQubits));
  compile->add_option("--order", order, "Pair order");
  compile->add_option("--device", device_path, "Device configuration JSON");
  compile->add_option("--out", out_path, "Schedule JSON output path")->required();

  auto* simulate = app.add_subcommand("simulate-schedule", "Replay a schedule document and verify the result");
  simulate->add_option("--in", in_path, "Schedule JSON file")->required();
  simulate->add_option("--out", out_path, "Amplitude JSON output path");
  simulate->add_option("--basis", basis, "computational or pm")->check(CLI::IsMember(bases));

  auto* budget = app.add_subcommand("budget", "Coherent-manipulation budget tau_phi / tau_op");
  budget->add_option("--tau-phi", tau_phi, "Dephasing time, s")->check(CLI::PositiveNumber);
  budget->add_option("--tau-op", tau_op, "Single operation time, s")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    RunReport report;
    if (generate->parsed()) {
      report.command = "generate";
      const auto spec = make_spec(n, order);
      report.input("n", std::to_string(n));
      report.input("order", order_string(spec.pair_order));
      report.input("basis", basis);
      const StateVector state = protocol::generate_cluster(spec);
      verify_state(state, report);
      if (!out_path.empty()) {
        write_file(out_path, io::state_to_json(state, io::parse_basis(basis)).dump(2) + "\n");
        report.artifacts.push_back(out_path);
      }
      return finish(report, out);
    }

    if (verify->parsed()) {
      report.command = "verify";
      report.input("in", in_path);
      StateVector state = [&] {
        try {
          return io::state_from_json(read_json(in_path));
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
      }();
      if (state.n_qubits() < protocol::kMinQubits || state.n_qubits() > protocol::kMaxQubits) {
        throw UsageError("state has " + std::to_string(state.n_qubits()) + " qubits; expected 2..12");
      }
      report.output("n", std::to_string(state.n_qubits()));
      verify_state(state, report);
      return finish(report, out);
    }

    if (sweep->parsed()) {
      report.command = "sweep";
      std::vector<double> points;
      try {
        points = parse_grid(grid);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto spec = make_spec(n, order);
      report.input("kind", kind);
      report.input("n", std::to_string(n));
      report.input("order", order_string(spec.pair_order));
      report.input("grid", grid);
      noise::SweepResult result;
      if (kind == "timing") {
        result = noise::timing_sweep(spec, points);
      } else {
        if (n > noise::kMaxDensityQubits) throw UsageError("dephasing sweeps support at most 8 qubits");
        for (double p : points) {
          if (p < 0.0) throw UsageError("dephasing exposures must be non-negative");
        }
        result = noise::dephasing_sweep(spec, points);
      }
      const auto [lo, hi] = std::minmax_element(result.fidelities.begin(), result.fidelities.end());
      report.output("points", std::to_string(points.size()));
      report.output("min_fidelity", fmt17(*lo));
      report.output("max_fidelity", fmt17(*hi));
      bool ok = true;
      if (kind == "timing") {
        for (std::size_t k = 0; k < points.size(); ++k) {
          if (std::abs(points[k]) < 1e-12) ok = ok && result.fidelities[k] >= 1.0 - kFidelityTolerance;
        }
      } else {
        for (std::size_t k = 1; k < points.size(); ++k) {
          ok = ok && result.fidelities[k] <= result.fidelities[k - 1] + 1e-12;
        }
        report.output("monotone_nonincreasing", ok ? "yes" : "no");
      }
      report.passed = ok;
      if (!out_path.empty()) {
        std::ostringstream csv;
        noise::write_csv(result, csv);
        write_file(out_path, csv.str());
        report.artifacts.push_back(out_path);
      }
      return finish(report, out);
    }

    if (compile->parsed()) {
      report.command = "compile";
      const auto spec = make_spec(n, order);
      report.input("n", std::to_string(n));
      report.input("order", order_string(spec.pair_order));
      report.input("device", device_path.empty() ? "<default>" : device_path);
      device::DeviceConfig dev = device::default_device(n);
      if (!device_path.empty()) {
        try {
          dev = schedule::load_device_document(read_json(device_path));
        } catch (const schedule::FormatError& e) {
          throw UsageError(e.what());
        }
      }
      schedule::Schedule s;
      try {
        s = schedule::compile_schedule(spec, dev);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      report.output("steps", std::to_string(s.steps.size()));
      report.output("tau_seconds", fmt17(s.device.tau));
      write_file(out_path, schedule::export_schedule(s).dump(2) + "\n");
      report.artifacts.push_back(out_path);
      return finish(report, out);
    }

    if (simulate->parsed()) {
      report.command = "simulate-schedule";
      report.input("in", in_path);
      report.input("basis", basis);
      schedule::Schedule s;
      try {
        s = schedule::import_schedule(read_json(in_path));
      } catch (const schedule::FormatError& e) {
        throw UsageError(e.what());
      }
      report.output("n", std::to_string(s.target.n_qubits));
      report.output("steps", std::to_string(s.steps.size()));
      StateVector state = [&] {
        try {
          return schedule::simulate_schedule(s);
        } catch (const schedule::ScheduleError& e) {
          err << "error: " << e.what() << '\n';
          report.passed = false;
          report.print(out);
          throw;
        }
      }();
      verify_state(state, report);
      if (!out_path.empty()) {
        write_file(out_path, io::state_to_json(state, io::parse_basis(basis)).dump(2) + "\n");
        report.artifacts.push_back(out_path);
      }
      return finish(report, out);
    }

    if (budget->parsed()) {
      report.command = "budget";
      report.input("tau_phi", fmt17(tau_phi));
      report.input("tau_op", fmt17(tau_op));
      report.output("budget", std::to_string(noise::manipulation_budget(tau_phi, tau_op)));
      return finish(report, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const schedule::ScheduleError&) {
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace jcq::cli
