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


#include "hopper/config.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hopper/presets.h"

namespace hopper {
namespace {

std::string Join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void RequireMap(const YAML::Node& node, const std::string& key) {
  if (!node.IsMap()) throw ConfigError(key, "expected a mapping");
}

// Rejects keys of `node` outside `allowed`.
void CheckKeys(const YAML::Node& node, const std::string& prefix,
               const std::set<std::string>& allowed) {
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigError(Join(prefix, key), "unknown key");
    }
  }
}

template <typename T>
T Read(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError(key, "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, "cannot parse '" + node.Scalar() + "'");
  }
}

// Assigns `target` from `node[key]` when present.
template <typename T>
void Assign(const YAML::Node& node, const std::string& prefix,
            const std::string& key, T& target) {
  if (const YAML::Node value = node[key]) {
    target = Read<T>(value, Join(prefix, key));
  }
}

void ApplyParams(const YAML::Node& node, ModelParams& p) {
  const std::string prefix = "model.params";
  RequireMap(node, prefix);
  const std::map<std::string, double*> fields = {
      {"total_mass", &p.total_mass},
      {"rest_leg_length", &p.rest_leg_length},
      {"trunk_inertia", &p.trunk_inertia},
      {"leg_inertia", &p.leg_inertia},
      {"hip_offset", &p.hip_offset},
      {"leg_stiffness", &p.leg_stiffness},
      {"hip_stiffness", &p.hip_stiffness},
      {"hip_rest_angle", &p.hip_rest_angle},
      {"gravity", &p.gravity},
  };
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(Join(prefix, key), "unknown key");
    *it->second = Read<double>(entry.second, Join(prefix, key));
  }
}

void ApplyModel(const YAML::Node& node, ExperimentConfig& config) {
  RequireMap(node, "model");
  CheckKeys(node, "model", {"preset", "variant", "spring_law", "params"});
  if (const YAML::Node variant = node["variant"]) {
    const std::string name = Read<std::string>(variant, "model.variant");
    if (name == "centered-hip") {
      config.params.hip_offset = 0.0;
    } else if (name == "upright-trunk") {
      config.params.hip_offset = 0.2;
    } else {
      throw ConfigError("model.variant",
                        "expected centered-hip or upright-trunk, got '" +
                            name + "'");
    }
  }
  if (const YAML::Node law = node["spring_law"]) {
    const std::string name = Read<std::string>(law, "model.spring_law");
    try {
      config.params.spring_law = ParseSpringLaw(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model.spring_law", e.what());
    }
  }
  if (const YAML::Node params = node["params"]) {
    ApplyParams(params, config.params);
  }
}

ReducedState ParseGuess(const YAML::Node& node, ReducedState guess) {
  RequireMap(node, "guess");
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    const std::string path = Join("guess", key);
    if (key == "pinned") {
      if (!entry.second.IsSequence()) {
        throw ConfigError(path, "expected a list of coordinate names");
      }
      guess.pinned.fill(false);
      for (const auto& item : entry.second) {
        const std::string name = Read<std::string>(item, path);
        bool found = false;
        for (int i = 0; i < 6; ++i) {
          if (name == ReducedName(i)) {
            guess.pinned[i] = true;
            found = true;
          }
        }
        if (!found) throw ConfigError(path, "unknown coordinate '" + name + "'");
      }
      continue;
    }
    bool found = false;
    for (int i = 0; i < 6; ++i) {
      if (key == ReducedName(i)) {
        guess.values[i] = Read<double>(entry.second, path);
        found = true;
      }
    }
    if (!found) throw ConfigError(path, "unknown key");
  }
  return guess;
}

void ApplySolver(const YAML::Node& node, ExperimentConfig& config) {
  const std::string prefix = "solver";
  RequireMap(node, prefix);
  CheckKeys(node, prefix,
            {"relaxation", "tolerance", "max_iterations", "max_halvings",
             "epsilon", "central_differences", "tol_unit", "multi_start"});
  NewtonOptions& s = config.solver;
  Assign(node, prefix, "relaxation", s.relaxation);
  Assign(node, prefix, "tolerance", s.tolerance);
  Assign(node, prefix, "max_iterations", s.max_iterations);
  Assign(node, prefix, "max_halvings", s.max_halvings);
  Assign(node, prefix, "epsilon", s.fd.epsilon);
  Assign(node, prefix, "central_differences", s.fd.central);
  Assign(node, prefix, "tol_unit", s.tol_unit);
  Assign(node, prefix, "multi_start", config.multi_start);
}

void ApplyIntegrator(const YAML::Node& node, IntegratorConfig& c) {
  const std::string prefix = "simulation.integrator";
  RequireMap(node, prefix);
  CheckKeys(node, prefix,
            {"method", "abs_tol", "rel_tol", "initial_step", "max_step",
             "event_tol", "max_time", "max_steps"});
  if (const YAML::Node method = node["method"]) {
    const std::string name = Read<std::string>(method, prefix + ".method");
    if (name == "dop853") {
      c.method = IntegratorMethod::kDop853;
    } else if (name == "dopri5") {
      c.method = IntegratorMethod::kDopri5;
    } else {
      throw ConfigError(prefix + ".method",
                        "expected dop853 or dopri5, got '" + name + "'");
    }
  }
  Assign(node, prefix, "abs_tol", c.abs_tol);
  Assign(node, prefix, "rel_tol", c.rel_tol);
  Assign(node, prefix, "initial_step", c.initial_step);
  Assign(node, prefix, "max_step", c.max_step);
  Assign(node, prefix, "event_tol", c.event_tol);
  Assign(node, prefix, "max_time", c.max_time);
  Assign(node, prefix, "max_steps", c.max_steps);
}

void ApplySimulation(const YAML::Node& node, ExperimentConfig& config) {
  const std::string prefix = "simulation";
  RequireMap(node, prefix);
  CheckKeys(node, prefix,
            {"max_steps", "sample_interval", "min_com_height",
             "reject_negative_initial_grf", "integrator"});
  SimulationOptions& s = config.simulation;
  Assign(node, prefix, "max_steps", config.max_steps);
  Assign(node, prefix, "sample_interval", s.sample_interval);
  Assign(node, prefix, "min_com_height", s.min_com_height);
  Assign(node, prefix, "reject_negative_initial_grf",
         s.reject_negative_initial_grf);
  if (const YAML::Node integrator = node["integrator"]) {
    ApplyIntegrator(integrator, s.integrator);
  }
}

void ApplySweep(const YAML::Node& node, SweepRange& sweep) {
  const std::string prefix = "sweep";
  RequireMap(node, prefix);
  CheckKeys(node, prefix, {"from", "to", "step", "secant_predictor"});
  Assign(node, prefix, "from", sweep.from);
  Assign(node, prefix, "to", sweep.to);
  Assign(node, prefix, "step", sweep.step);
  Assign(node, prefix, "secant_predictor", sweep.secant_predictor);
}

ExperimentConfig Apply(const YAML::Node& root, ExperimentConfig config) {
  if (!root || root.IsNull()) return config;
  RequireMap(root, "");
  CheckKeys(root, "",
            {"model", "guess", "velocity", "solver", "simulation", "sweep",
             "output"});
  if (const YAML::Node model = root["model"]) {
    RequireMap(model, "model");
    if (const YAML::Node preset = model["preset"]) {
      const std::string name = Read<std::string>(preset, "model.preset");
      // A preset named on the command line takes precedence.
      if (config.preset.empty()) {
        try {
          config = PresetConfig(name);
        } catch (const ConfigError& e) {
          throw ConfigError("model.preset", e.what());
        }
      }
    }
    ApplyModel(model, config);
  }
  if (const YAML::Node guess = root["guess"]) {
    SetGuess(config, ParseGuess(guess, config.guess()));
  }
  if (const YAML::Node velocity = root["velocity"]) {
    PinVelocity(config, Read<double>(velocity, "velocity"));
  }
  if (const YAML::Node solver = root["solver"]) ApplySolver(solver, config);
  if (const YAML::Node sim = root["simulation"]) ApplySimulation(sim, config);
  if (const YAML::Node sweep = root["sweep"]) ApplySweep(sweep, config.sweep);
  if (const YAML::Node output = root["output"]) {
    RequireMap(output, "output");
    CheckKeys(output, "output", {"dir"});
    Assign(output, "output", "dir", config.out_dir);
  }
  ValidateConfig(config);
  return config;
}

}  // namespace

ExperimentConfig PresetConfig(const std::string& name) {
  Preset preset;
  try {
    preset = GetPreset(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("preset", e.what());
  }
  ExperimentConfig config;
  config.preset = preset.name;
  config.params = preset.params;
  config.seeds = preset.seeds;
  return config;
}

ExperimentConfig ApplyConfigText(const std::string& text,
                                 ExperimentConfig base) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("malformed YAML: ") + e.what());
  }
  return Apply(root, std::move(base));
}

ExperimentConfig ApplyConfigFile(const std::string& path,
                                 ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ApplyConfigText(text.str(), std::move(base));
}

void SetGuess(ExperimentConfig& config, const ReducedState& guess) {
  config.seeds = {guess};
  if (config.velocity) PinVelocity(config, *config.velocity);
}

void PinVelocity(ExperimentConfig& config, double velocity) {
  config.velocity = velocity;
  config.seeds = WithVelocity(std::move(config.seeds), velocity);
}

void ValidateConfig(const ExperimentConfig& config) {
  try {
    config.params.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model.params", e.what());
  }
  try {
    config.solver.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("solver", e.what());
  }
  try {
    config.simulation.integrator.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("simulation.integrator", e.what());
  }
  if (config.seeds.empty()) throw ConfigError("guess", "no initial guess");
  if (config.max_steps < 0) {
    throw ConfigError("simulation.max_steps", "must be >= 0");
  }
  if (!(config.simulation.sample_interval >= 0.0)) {
    throw ConfigError("simulation.sample_interval", "must be >= 0");
  }
  if (!(config.sweep.step > 0.0)) {
    throw ConfigError("sweep.step", "must be positive");
  }
  if (config.sweep.from > config.sweep.to) {
    throw ConfigError("sweep", "from must not exceed to");
  }
}

}  // namespace hopper
