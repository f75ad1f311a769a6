// Copyright 2026 The uwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UWIT_CLI_HPP
#define UWIT_CLI_HPP

// Command-line front end: report, scatter, verify and simulate.
//
// Exit codes: 0 success, 1 validation or suite failure, 2 usage or I/O error.

#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uwit/collective.hpp"
#include "uwit/invariants.hpp"
#include "uwit/measurement.hpp"
#include "uwit/state_io.hpp"
#include "uwit/states.hpp"
#include "uwit/verify.hpp"
#include "uwit/witness.hpp"

namespace uwit::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A check that ran to completion and found a violation.
class SuiteFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kReport, kScatter, kVerify, kSimulate };
enum class Format { kCsv, kJson };

struct RunConfig {
  Command command = Command::kReport;
  std::string state;
  Ensemble ensemble = Ensemble::kHilbertSchmidt;
  std::size_t samples = 0;  // 0: command default
  std::uint64_t shots = 0;
  std::optional<std::array<std::uint64_t, 3>> moment_shots;
  std::optional<std::uint64_t> seed;
  std::size_t bootstrap = kDefaultBootstrapResamples;
  std::string out;  // empty: stdout
  std::optional<Format> format;
};

inline constexpr double kChainSlack = 1e-9;

// ---------------------------------------------------------------------------
// State resolution

struct ResolvedState {
  DensityMatrix rho;
  std::optional<NamedState> named;
  std::string description;
};

inline bool is_known_state_name(const std::string& text) {
  const std::string name = text.substr(0, text.find(':'));
  for (const char* n : {"mixed", "singlet", "phi_plus", "werner", "product", "pure_schmidt"})
    if (name == n) return true;
  return false;
}

/// A named-state spec ("werner:0.5") or a path to a state file.
inline ResolvedState resolve_state(const std::string& spec) {
  if (spec.empty()) throw UsageError("--state is required");
  if (is_known_state_name(spec)) {
    NamedState named;
    try {
      named = parse_named_state(spec);
      return {named_state(named), named, to_string(named)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const ComplexMatrix m = read_state_file(spec);
  return {validate(m, spec), std::nullopt, spec};
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json to_json(const MomentSet& m) {
  return {{"pi2", m.pi2}, {"pi3", m.pi3}, {"pi4", m.pi4}, {"source", std::string(to_string(m.source))}};
}

inline nlohmann::json to_json(const WitnessReport& r) {
  return {{"witness", r.witness},         {"w", r.w},
          {"negativity", r.negativity},   {"concurrence", r.concurrence},
          {"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound},
          {"entangled", r.entangled}};
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands. Each writes its result to `out` and returns an exit code;
// violations of validity throw.

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const ResolvedState st = resolve_state(cfg.state);
  const WitnessReport rep = report(st.rho);
  const MomentSet direct = rep.moments;
  const MomentSet collective = moments_collective(st.rho);
  const MomentSet invariants = moments_invariants(st.rho);
  const double deviation =
      std::max({max_deviation(direct, collective), max_deviation(direct, invariants), max_deviation(collective, invariants)});

  if (cfg.format.value_or(Format::kJson) == Format::kCsv) {
    out << "state,witness,w,negativity,concurrence,lower_bound,upper_bound,entangled,max_route_deviation\n";
    out << st.description << ',' << format_double(rep.witness) << ',' << format_double(rep.w) << ','
        << format_double(rep.negativity) << ',' << format_double(rep.concurrence) << ','
        << format_double(rep.lower_bound) << ',' << format_double(rep.upper_bound) << ','
        << (rep.entangled ? "true" : "false") << ',' << format_double(deviation) << '\n';
    return kOk;
  }
  nlohmann::json j = to_json(rep);
  j["state"] = st.description;
  j["moments"] = {{"direct", to_json(direct)}, {"collective", to_json(collective)}, {"invariants", to_json(invariants)}};
  j["max_route_deviation"] = deviation;
  out << j.dump(2) << '\n';
  return kOk;
}

struct ScatterRow {
  double w = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
};

/// Checks lower - slack <= N <= C <= upper + slack.
inline bool satisfies_chain(const WitnessReport& r, double slack = kChainSlack) {
  return r.lower_bound - slack <= r.negativity && r.negativity <= r.concurrence + slack &&
         r.concurrence <= r.upper_bound + slack;
}

/// Sample i is drawn from the ensemble with seed (seed + i), so rows do not
/// depend on evaluation order.
inline std::vector<ScatterRow> scatter_rows(Ensemble ensemble, std::size_t samples, std::uint64_t seed) {
  std::vector<ScatterRow> rows;
  rows.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix rho = sample({ensemble, seed + i});
    const WitnessReport r = report(rho);
    if (!satisfies_chain(r)) {
      std::ostringstream msg;
      msg << "bound chain violated at sample " << i << " (seed " << seed + i << "): f(w) = " << format_double(r.lower_bound)
          << ", N = " << format_double(r.negativity) << ", C = " << format_double(r.concurrence)
          << ", w^(1/4) = " << format_double(r.upper_bound) << ", w = " << format_double(r.w);
      throw SuiteFailure(msg.str());
    }
    rows.push_back({r.w, r.negativity, r.concurrence});
  }
  return rows;
}

inline int cmd_scatter(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.seed) throw UsageError("scatter requires --seed");
  const std::size_t samples = cfg.samples == 0 ? 10000 : cfg.samples;
  const auto rows = scatter_rows(cfg.ensemble, samples, *cfg.seed);
  if (cfg.format.value_or(Format::kCsv) == Format::kJson) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back({{"w", r.w}, {"negativity", r.negativity}, {"concurrence", r.concurrence}});
    out << arr.dump() << '\n';
    return kOk;
  }
  out << "w,negativity,concurrence\n";
  for (const auto& r : rows)
    out << format_double(r.w) << ',' << format_double(r.negativity) << ',' << format_double(r.concurrence) << '\n';
  return kOk;
}

inline std::string format_levels(const std::vector<SpectrumLevel>& levels) {
  std::string s = "{";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::ostringstream os;
    os << levels[k].value;
    s += (k ? ", " : "") + os.str();
  }
  return s + "}";
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  if (cfg.samples != 0) opt.samples = cfg.samples;
  opt.seed = cfg.seed.value_or(0);
  const auto results = run_identity_suites(opt);
  const auto x3 = spectrum_x(3);
  const auto x4 = spectrum_x(4);
  const std::size_t count = projection_count();
  const bool spectra_ok = format_levels(x3) == "{1, 4}" && format_levels(x4) == "{0, 2, 4}" && count == 7;
  bool ok = spectra_ok;
  double worst = 0.0;
  for (const auto& r : results) {
    ok = ok && r.passed();
    worst = std::max(worst, r.max_deviation);
  }

  if (cfg.format.value_or(Format::kCsv) == Format::kJson) {
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& r : results)
      suites.push_back({{"name", r.name},
                        {"max_deviation", r.max_deviation},
                        {"tolerance", r.tolerance},
                        {"cases", r.cases},
                        {"passed", r.passed()}});
    nlohmann::json j{{"suites", suites},
                     {"spectrum_x3", format_levels(x3)},
                     {"spectrum_x4", format_levels(x4)},
                     {"projection_count", count},
                     {"max_deviation", worst},
                     {"passed", ok}};
    out << j.dump(2) << '\n';
  } else {
    out << "samples: " << opt.samples << ", seed: " << opt.seed << '\n';
    for (const auto& r : results) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": max deviation " << std::setprecision(3)
          << std::scientific << r.max_deviation << " (tol " << r.tolerance << ", " << std::defaultfloat << r.cases
          << " cases)\n";
    }
    out << (format_levels(x3) == "{1, 4}" ? "PASS " : "FAIL ") << "spectrum X3: " << format_levels(x3) << '\n';
    out << (format_levels(x4) == "{0, 2, 4}" ? "PASS " : "FAIL ") << "spectrum X4: " << format_levels(x4) << '\n';
    out << (count == 7 ? "PASS " : "FAIL ") << "projection count: " << count << '\n';
    out << "max deviation: " << std::setprecision(3) << std::scientific << worst << std::defaultfloat << '\n';
    out << (ok ? "all suites passed" : "SUITE FAILURE") << '\n';
  }
  return ok ? kOk : kFailure;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.seed) throw UsageError("simulate requires --seed");
  std::array<std::uint64_t, 3> shots{cfg.shots, cfg.shots, cfg.shots};
  if (cfg.moment_shots) shots = *cfg.moment_shots;
  for (auto s : shots)
    if (s == 0) throw UsageError("simulate requires --shots >= 1");
  if (cfg.format == Format::kCsv) throw UsageError("simulate writes JSON only");
  const ResolvedState st = resolve_state(cfg.state);
  const std::uint64_t seed = *cfg.seed;

  std::array<ShotRecord, 3> records;
  nlohmann::json counts;
  for (int n = 2; n <= 4; ++n) {
    const auto k = static_cast<std::size_t>(n - 2);
    records[k] = sample_shots(st.rho, n, shots[k], derive_seed(seed, static_cast<std::uint64_t>(n)));
    const auto& c = records[k].counts;
    counts[std::to_string(n)] = {c[0][0], c[0][1], c[1][0], c[1][1]};
  }
  const WitnessEstimate est = estimate(records, cfg.bootstrap, derive_seed(seed, 0xB007));
  const MomentSet ref = moments_direct(st.rho);
  const double ref_witness = witness_value(ref);

  nlohmann::json j;
  j["state"] = st.description;
  j["seed"] = seed;
  j["shots_per_moment"] = est.shots_per_moment;
  j["bootstrap_resamples"] = est.bootstrap_resamples;
  j["counts"] = counts;
  j["estimate"] = {{"pi2", est.pi2_hat},   {"pi3", est.pi3_hat},   {"pi4", est.pi4_hat},
                   {"witness", est.witness_hat}, {"ci_low", est.ci_low}, {"ci_high", est.ci_high},
                   {"witness_se", est.witness_se}};
  j["reference"] = {{"pi2", ref.pi2}, {"pi3", ref.pi3}, {"pi4", ref.pi4}, {"witness", ref_witness}};
  j["reference_in_ci"] = est.covers(ref_witness);
  if (st.named) {
    const double truth = analytic_witness(*st.named);
    j["truth"] = {{"witness", truth}};
    j["truth_in_ci"] = est.covers(truth);
  }
  out << j.dump(2) << '\n';
  return kOk;
}

inline int run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::kReport: return cmd_report(cfg, out);
    case Command::kScatter: return cmd_scatter(cfg, out);
    case Command::kVerify: return cmd_verify(cfg, out);
    case Command::kSimulate: return cmd_simulate(cfg, out);
  }
  throw UsageError("unknown command");
}

// ---------------------------------------------------------------------------
// Argument parsing

inline void configure(CLI::App& app, RunConfig& cfg, std::string& command, std::string& ensemble,
                      std::string& format, std::vector<std::uint64_t>& moment_shots) {
  app.add_option("--command", command, "report | scatter | verify | simulate")
      ->required()
      ->check(CLI::IsMember({"report", "scatter", "verify", "simulate"}));
  app.add_option("--state", cfg.state, "named state (singlet, phi_plus, mixed, werner:p, product:theta, "
                                       "pure_schmidt:l1) or path to a state JSON file");
  app.add_option("--ensemble", ensemble, "random-state ensemble for scatter")->check(CLI::IsMember({"hs", "pure"}));
  app.add_option("--samples", cfg.samples, "number of random states (scatter, verify)");
  app.add_option("--shots", cfg.shots, "shots per moment (simulate)");
  app.add_option("--moment-shots", moment_shots, "explicit shots for Pi2 Pi3 Pi4, overriding --shots")
      ->expected(3)
      ->delimiter(',');
  app.add_option("--seed", cfg.seed, "64-bit seed (required for scatter and simulate)");
  app.add_option("--bootstrap", cfg.bootstrap, "bootstrap resamples for simulate");
  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

inline RunConfig finish_config(RunConfig cfg, const std::string& command, const std::string& ensemble,
                               const std::string& format, const std::vector<std::uint64_t>& moment_shots) {
  if (command == "report") cfg.command = Command::kReport;
  else if (command == "scatter") cfg.command = Command::kScatter;
  else if (command == "verify") cfg.command = Command::kVerify;
  else cfg.command = Command::kSimulate;
  cfg.ensemble = ensemble == "pure" ? Ensemble::kHaarPure : Ensemble::kHilbertSchmidt;
  if (format == "csv") cfg.format = Format::kCsv;
  if (format == "json") cfg.format = Format::kJson;
  if (!moment_shots.empty()) cfg.moment_shots = std::array<std::uint64_t, 3>{moment_shots[0], moment_shots[1], moment_shots[2]};
  return cfg;
}

/// Full program: parse, run, route output. Diagnostics go to `err`.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit universal entanglement witness: reports, bound scatter, identity checks, shot simulation"};
  RunConfig cfg;
  std::string command, ensemble = "hs", format;
  std::vector<std::uint64_t> moment_shots;
  configure(app, cfg, command, ensemble, format, moment_shots);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg = finish_config(std::move(cfg), command, ensemble, format, moment_shots);

  std::ostringstream buffer;
  int code = kOk;
  try {
    code = run(cfg, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const StateFormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kFailure;
  } catch (const SuiteFailure& e) {
    err << "check failed: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out);
    if (!(file << buffer.str())) {
      err << "output error: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
  }
  return code;
}

}  // namespace uwit::cli

#endif  // UWIT_CLI_HPP
