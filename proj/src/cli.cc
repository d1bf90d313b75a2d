// Copyright 2026 The Passive Hopper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hopper/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "hopper/config.h"
#include "hopper/io.h"

namespace hopper {
namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string preset;
  std::string config_path;
  std::optional<double> velocity;
  std::string out_dir;
  std::string seed_guess;
  std::optional<int> max_steps;
  std::optional<double> rho;
  std::optional<double> tol;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--preset", f.preset,
                  "Built-in model: chls, chcs, utls, utcs, utes");
  cmd->add_option("--config", f.config_path, "YAML configuration file");
  cmd->add_option("--velocity", f.velocity, "Pinned forward rate, m/s");
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--seed-guess", f.seed_guess,
                  "JSON file with the initial apex guess");
  cmd->add_option("--max-steps", f.max_steps,
                  "Maximum number of simulated cycles");
  cmd->add_option("--rho", f.rho, "Newton relaxation factor");
  cmd->add_option("--tol", f.tol, "Newton residual tolerance");
}

// Preset, then config file, then flags. Throws ConfigError or ParseError.
ExperimentConfig BuildConfig(const CommonFlags& f) {
  ExperimentConfig config;
  if (!f.preset.empty()) {
    config = PresetConfig(f.preset);
  } else {
    config = PresetConfig("chls");
    config.preset.clear();  // a file may still name one
  }
  if (!f.config_path.empty()) {
    config = ApplyConfigFile(f.config_path, std::move(config));
  }
  if (!f.seed_guess.empty()) {
    std::ifstream in(f.seed_guess);
    if (!in) {
      throw ConfigError("--seed-guess",
                        "cannot open '" + f.seed_guess + "'");
    }
    try {
      SetGuess(config, ReadSeedGuess(in));
    } catch (const ParseError& e) {
      throw ConfigError("--seed-guess", e.what());
    }
  }
  if (f.velocity) PinVelocity(config, *f.velocity);
  if (f.max_steps) config.max_steps = *f.max_steps;
  if (f.rho) config.solver.relaxation = *f.rho;
  if (f.tol) config.solver.tolerance = *f.tol;
  if (!f.out_dir.empty()) config.out_dir = f.out_dir;
  ValidateConfig(config);
  return config;
}

// Throws std::runtime_error if the file cannot be written.
void WriteFile(const fs::path& path,
               const std::function<void(std::ostream&)>& write) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write(out);
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

fs::path PrepareOutDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
  return fs::path(dir);
}

void WriteJson(const fs::path& path, const nlohmann::json& j) {
  WriteFile(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

MultiStartResult Search(const ExperimentConfig& config) {
  std::vector<ReducedState> seeds = config.seeds;
  if (!config.multi_start) seeds.resize(1);
  NewtonOptions options = config.solver;
  options.simulation = config.simulation;
  return MultiStartSearch(config.params, seeds, options);
}

void PrintCycle(std::ostream& out, const LimitCycle& lc) {
  out << "fixed point:";
  for (int i = 0; i < 6; ++i) {
    out << ' ' << ReducedName(i) << '=' << lc.fixed_point.values[i];
  }
  out << "\neigenvalues:";
  for (const auto& e : lc.eigenvalues) {
    out << ' ' << e.real() << (e.imag() < 0 ? "-" : "+") << std::abs(e.imag())
        << 'i';
  }
  out << "\nstability: " << (lc.stable ? "stable" : "unstable") << '\n';
}

int CmdSimulate(const ExperimentConfig& config, std::ostream& out) {
  const fs::path dir = PrepareOutDir(config.out_dir);
  const State apex = EmbedApex(config.params, config.guess().values);
  const MultiStepResult run =
      SimulateSteps(config.params, apex, config.max_steps, config.simulation);
  const std::vector<TrajectoryRow> rows = TrajectoryRows(config.params, run);
  WriteFile(dir / "trajectory.csv",
            [&](std::ostream& os) { WriteTrajectoryCsv(os, rows); });
  WriteJson(dir / "summary.json",
            SimulationSummaryJson(config.params, config.preset, config.guess(),
                                  config.max_steps, run));
  out << "steps: " << run.steps_completed << '\n'
      << "failure: "
      << (run.failure ? std::string(ToString(*run.failure)) : "none") << '\n';
  return kExitOk;
}

int CmdFindGait(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err) {
  const fs::path dir = PrepareOutDir(config.out_dir);
  const MultiStartResult result = Search(config);
  WriteJson(dir / "limit_cycle.json",
            LimitCycleJson(config.params, config.preset, result.best,
                           result.seed_index, result.attempts));
  out << "status: " << ToString(result.best.status) << " after "
      << result.best.iterations << " iterations (seed " << result.seed_index
      << " of " << result.attempts << " tried)\n";
  if (!result.best.converged()) {
    err << "no limit cycle found: " << result.best.detail << '\n';
    return kExitNotConverged;
  }
  out << "residual: " << result.best.cycle->residual << '\n';
  PrintCycle(out, *result.best.cycle);
  return kExitOk;
}

int CmdSweep(const ExperimentConfig& config, std::ostream& out,
             std::ostream& err) {
  const fs::path dir = PrepareOutDir(config.out_dir);
  const MultiStartResult seed = Search(config);
  if (!seed.best.converged()) {
    const double v = config.guess().values[kApexXRate];
    WriteFile(dir / "sweep.csv", [&](std::ostream& os) {
      WriteSweepCsv(os, {SweepPoint{v, seed.best}});
    });
    err << "no seed gait at " << v << " m/s: " << seed.best.detail << '\n';
    return kExitNotConverged;
  }
  SweepOptions options;
  options.secant_predictor = config.sweep.secant_predictor;
  options.newton = config.solver;
  options.newton.simulation = config.simulation;
  const std::vector<SweepPoint> points =
      ContinuationSweep(config.params, *seed.best.cycle, config.sweep.from,
                        config.sweep.to, config.sweep.step, options);
  WriteFile(dir / "sweep.csv",
            [&](std::ostream& os) { WriteSweepCsv(os, points); });
  std::optional<double> lo, hi;
  for (const SweepPoint& pt : points) {
    if (!pt.search.converged()) continue;
    if (!lo || pt.velocity < *lo) lo = pt.velocity;
    if (!hi || pt.velocity > *hi) hi = pt.velocity;
  }
  out << "converged velocity range: [" << *lo << ", " << *hi << "] m/s\n";
  return kExitOk;
}

int CmdAnalyze(const std::string& path, const std::string& out_dir,
               std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot open trajectory '" << path << "'\n";
    return kExitConfigError;
  }
  std::vector<TrajectoryRow> rows;
  try {
    rows = ReadTrajectoryCsv(in);
  } catch (const ParseError& e) {
    err << "bad trajectory '" << path << "': " << e.what() << '\n';
    return kExitConfigError;
  }
  const fs::path dir = PrepareOutDir(out_dir.empty() ? "." : out_dir);
  WriteFile(dir / "grf_fan.csv",
            [&](std::ostream& os) { WriteGrfFanCsv(os, rows); });
  WriteFile(dir / "energy.csv",
            [&](std::ostream& os) { WriteEnergyCsv(os, rows); });
  WriteFile(dir / "phase_portrait.csv",
            [&](std::ostream& os) { WritePhasePortraitCsv(os, rows); });
  const nlohmann::json vpp = VppReportJson(rows);
  WriteJson(dir / "vpp.json", vpp);
  out << "samples: " << rows.size() << '\n';
  if (vpp["degenerate"].get<bool>()) {
    out << "vpp: degenerate\n";
  } else {
    out << "vpp: (" << vpp["point"][0].get<double>() << ", "
        << vpp["point"][1].get<double>() << ") m in the CoM frame, rms "
        << vpp["rms_distance"].get<double>() << " m\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Passive hopper simulation and gait search"};
  app.require_subcommand(1);

  CommonFlags simulate_flags, gait_flags, sweep_flags;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Simulate hops from the initial guess");
  AddCommonFlags(simulate, simulate_flags);
  CLI::App* find_gait =
      app.add_subcommand("find-gait", "Search for a periodic gait");
  AddCommonFlags(find_gait, gait_flags);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Continue a gait over forward velocity");
  AddCommonFlags(sweep, sweep_flags);

  std::string trajectory_path, analyze_out;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Post-process a simulated trajectory");
  analyze->add_option("trajectory", trajectory_path, "Trajectory CSV")
      ->required();
  analyze->add_option("--out-dir", analyze_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  out << std::setprecision(10);
  try {
    if (analyze->parsed()) {
      return CmdAnalyze(trajectory_path, analyze_out, out, err);
    }
    const CommonFlags& flags = simulate->parsed()    ? simulate_flags
                               : find_gait->parsed() ? gait_flags
                                                     : sweep_flags;
    ExperimentConfig config;
    try {
      config = BuildConfig(flags);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfigError;
    }
    if (simulate->parsed()) return CmdSimulate(config, out);
    if (find_gait->parsed()) return CmdFindGait(config, out, err);
    return CmdSweep(config, out, err);
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace hopper
