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


#include "hopper/io.h"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "hopper/dynamics.h"

namespace hopper {
namespace {

using nlohmann::json;

constexpr int kDigits = 17;

// Prints doubles with 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {
    out_ << std::setprecision(kDigits);
  }

  void Header(const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) {
      out_ << (i ? "," : "") << columns[i];
    }
    out_ << '\n';
  }

  template <typename T>
  CsvWriter& operator<<(const T& value) {
    if (!first_) out_ << ',';
    out_ << value;
    first_ = false;
    return *this;
  }

  void EndRow() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseDouble(const std::string& text, int line) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" +
                     text + "'");
  }
  return value;
}

json Vec2Json(const Vec2& v) { return json::array({v[0], v[1]}); }

json EnergyLedgerJson(const EnergyLedger& e) {
  return {{"start", e.start},
          {"end", e.end},
          {"total_change", e.total_change()},
          {"impact_loss", e.impact_loss},
          {"liftoff_loss", e.liftoff_loss},
          {"descent_drift", e.descent_drift},
          {"stance_drift", e.stance_drift},
          {"ascent_drift", e.ascent_drift}};
}

json CycleJson(const ModelParams& p, const CycleResult& cycle, int index) {
  json j = {{"index", index},
            {"completed", cycle.completed()},
            {"failure", nullptr},
            {"energy", EnergyLedgerJson(cycle.energy)}};
  if (cycle.failure) {
    j["failure"] = std::string(ToString(*cycle.failure));
    j["failure_detail"] = cycle.failure_detail;
  } else {
    j["kinetic_energy_change"] = CycleKineticEnergyChange(p, cycle);
    j["end_apex"] = ReducedJson(ProjectApex(cycle.end));
  }
  if (cycle.touchdown_force) {
    j["touchdown_force"] = Vec2Json(*cycle.touchdown_force);
  }
  if (cycle.stance_duration) j["stance_duration"] = *cycle.stance_duration;
  return j;
}

ReducedState ReducedFromJson(const json& j, ReducedState base) {
  if (!j.is_object()) throw ParseError("expected an object of coordinates");
  for (int i = 0; i < 6; ++i) {
    const auto it = j.find(ReducedName(i));
    if (it == j.end()) continue;
    if (!it->is_number()) {
      throw ParseError(std::string("coordinate '") + ReducedName(i) +
                       "' is not a number");
    }
    base.values[i] = it->get<double>();
  }
  return base;
}

PinMask PinnedFromJson(const json& j) {
  if (!j.is_array()) throw ParseError("'pinned' must be a list of names");
  PinMask pinned{};
  for (const json& item : j) {
    bool found = false;
    for (int i = 0; i < 6; ++i) {
      if (item.is_string() && item.get<std::string>() == ReducedName(i)) {
        pinned[i] = true;
        found = true;
      }
    }
    if (!found) throw ParseError("unknown pinned coordinate " + item.dump());
  }
  return pinned;
}

void WriteGrfFanRows(CsvWriter& csv, const std::vector<TrajectoryRow>& rows,
                     int cycle) {
  const std::vector<GrfSample> samples = StanceSamples(rows, cycle);
  for (const GrfArrow& arrow : NormalizedGrf(samples)) {
    csv << arrow.t << cycle << arrow.origin[0] << arrow.origin[1]
        << arrow.force[0] << arrow.force[1];
    csv.EndRow();
  }
}

std::vector<int> CycleIndices(const std::vector<TrajectoryRow>& rows) {
  std::vector<int> out;
  for (const TrajectoryRow& row : rows) {
    if (out.empty() || out.back() != row.cycle) out.push_back(row.cycle);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& TrajectoryColumns() {
  static const std::vector<std::string> columns = {
      "t",          "cycle",     "phase",      "x",          "z",
      "pitch",      "hip",       "leg",        "x_rate",     "z_rate",
      "pitch_rate", "hip_rate",  "leg_rate",   "foot_x",     "foot_z",
      "grf_x",      "grf_z",     "kinetic",    "gravity",    "leg_spring",
      "hip_spring", "total"};
  return columns;
}

std::vector<TrajectoryRow> TrajectoryRows(const ModelParams& p,
                                          const MultiStepResult& run) {
  std::vector<TrajectoryRow> rows;
  double x_offset = 0.0;
  for (size_t c = 0; c < run.cycles.size(); ++c) {
    const CycleResult& cycle = run.cycles[c];
    for (const TrajectorySample& s : cycle.trajectory) {
      TrajectoryRow row;
      row.t = s.t;
      row.cycle = static_cast<int>(c);
      row.phase = s.phase;
      row.q = s.q;
      row.q[kX] += x_offset;
      row.qd = s.qd;
      State state;
      state.q = s.q;
      state.qd = s.qd;
      state.phase = s.phase;
      state.foothold = FootPosition(p, s.q);
      row.foot = FootPosition(p, row.q);
      if (s.phase == Phase::kStance) row.grf = GroundReaction(p, state);
      row.energy = ComputeEnergy(p, state);
      rows.push_back(row);
    }
    if (cycle.completed()) x_offset += cycle.events.back().post.q[kX];
  }
  return rows;
}

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<TrajectoryRow>& rows) {
  CsvWriter csv(out);
  csv.Header(TrajectoryColumns());
  for (const TrajectoryRow& r : rows) {
    csv << r.t << r.cycle << ToString(r.phase);
    for (int i = 0; i < 5; ++i) csv << r.q[i];
    for (int i = 0; i < 5; ++i) csv << r.qd[i];
    csv << r.foot[0] << r.foot[1] << r.grf[0] << r.grf[1] << r.energy.kinetic
        << r.energy.gravity << r.energy.leg_spring << r.energy.hip_spring
        << r.energy.total;
    csv.EndRow();
  }
}

std::vector<TrajectoryRow> ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string>& columns = TrajectoryColumns();
  if (SplitCsvLine(line) != columns) {
    throw ParseError("line 1: unexpected header '" + line + "'");
  }
  std::vector<TrajectoryRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != columns.size()) {
      throw ParseError("line " + std::to_string(line_number) + ": expected " +
                       std::to_string(columns.size()) + " fields, got " +
                       std::to_string(f.size()));
    }
    TrajectoryRow r;
    r.t = ParseDouble(f[0], line_number);
    const double cycle = ParseDouble(f[1], line_number);
    if (cycle != std::floor(cycle) || cycle < 0) {
      throw ParseError("line " + std::to_string(line_number) +
                       ": bad cycle index '" + f[1] + "'");
    }
    r.cycle = static_cast<int>(cycle);
    if (f[2] == "flight") {
      r.phase = Phase::kFlight;
    } else if (f[2] == "stance") {
      r.phase = Phase::kStance;
    } else {
      throw ParseError("line " + std::to_string(line_number) +
                       ": bad phase '" + f[2] + "'");
    }
    for (int i = 0; i < 5; ++i) r.q[i] = ParseDouble(f[3 + i], line_number);
    for (int i = 0; i < 5; ++i) r.qd[i] = ParseDouble(f[8 + i], line_number);
    r.foot << ParseDouble(f[13], line_number), ParseDouble(f[14], line_number);
    r.grf << ParseDouble(f[15], line_number), ParseDouble(f[16], line_number);
    r.energy.kinetic = ParseDouble(f[17], line_number);
    r.energy.gravity = ParseDouble(f[18], line_number);
    r.energy.leg_spring = ParseDouble(f[19], line_number);
    r.energy.hip_spring = ParseDouble(f[20], line_number);
    r.energy.total = ParseDouble(f[21], line_number);
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> FullApexVector(const State& apex) {
  std::vector<double> v(10);
  for (int i = 0; i < 5; ++i) {
    v[i] = apex.q[i];
    v[5 + i] = apex.qd[i];
  }
  return v;
}

json ParamsJson(const ModelParams& p) {
  return {{"total_mass", p.total_mass},
          {"rest_leg_length", p.rest_leg_length},
          {"trunk_inertia", p.trunk_inertia},
          {"leg_inertia", p.leg_inertia},
          {"hip_offset", p.hip_offset},
          {"leg_stiffness", p.leg_stiffness},
          {"hip_stiffness", p.hip_stiffness},
          {"hip_rest_angle", p.hip_rest_angle},
          {"gravity", p.gravity},
          {"spring_law", std::string(ToString(p.spring_law))}};
}

json ReducedJson(const Vec6& x) {
  json j = json::object();
  for (int i = 0; i < 6; ++i) j[ReducedName(i)] = x[i];
  return j;
}

json PinnedJson(const PinMask& pinned) {
  json j = json::array();
  for (int i = 0; i < 6; ++i) {
    if (pinned[i]) j.push_back(ReducedName(i));
  }
  return j;
}

json SimulationSummaryJson(const ModelParams& p, const std::string& preset,
                           const ReducedState& start, int max_steps,
                           const MultiStepResult& run) {
  json j = {{"preset", preset},
            {"params", ParamsJson(p)},
            {"start", ReducedJson(start.values)},
            {"max_steps", max_steps},
            {"steps", run.steps_completed},
            {"cycles_simulated", run.cycles.size()},
            {"failure", nullptr}};
  if (run.failure) j["failure"] = std::string(ToString(*run.failure));
  json cycles = json::array();
  for (size_t i = 0; i < run.cycles.size(); ++i) {
    cycles.push_back(CycleJson(p, run.cycles[i], static_cast<int>(i)));
  }
  j["cycles"] = std::move(cycles);
  return j;
}

json LimitCycleJson(const ModelParams& p, const std::string& preset,
                    const SearchResult& search, int seed_index,
                    int attempts) {
  json j = {{"preset", preset},
            {"params", ParamsJson(p)},
            {"converged", search.converged()},
            {"status", std::string(ToString(search.status))},
            {"iterations", search.iterations},
            {"residual_history", search.residual_history},
            {"seed_index", seed_index},
            {"attempts", attempts}};
  j["residual"] = search.residual_history.empty()
                      ? json(nullptr)
                      : json(search.residual_history.back());
  if (!search.detail.empty()) j["detail"] = search.detail;
  j["last_iterate"] = ReducedJson(search.last_iterate);
  if (!search.cycle) return j;

  const LimitCycle& lc = *search.cycle;
  j["residual"] = lc.residual;
  j["full_residual"] = lc.full_residual;
  j["fixed_point"] = FullApexVector(lc.apex);
  j["fixed_point_order"] = {"x",      "z",      "pitch",      "hip",
                            "leg",    "x_rate", "z_rate",     "pitch_rate",
                            "hip_rate", "leg_rate"};
  j["fixed_point_reduced"] = ReducedJson(lc.fixed_point.values);
  j["pinned"] = PinnedJson(lc.fixed_point.pinned);
  json eigs = json::array();
  for (const std::complex<double>& e : lc.eigenvalues) {
    eigs.push_back({{"re", e.real()}, {"im", e.imag()}, {"abs", std::abs(e)}});
  }
  j["eigenvalues"] = std::move(eigs);
  j["stable"] = lc.stable;
  json mono = json::array();
  for (int r = 0; r < 6; ++r) {
    json row = json::array();
    for (int c = 0; c < 6; ++c) row.push_back(lc.monodromy(r, c));
    mono.push_back(std::move(row));
  }
  j["monodromy"] = std::move(mono);
  j["cycle"] = CycleJson(p, lc.cycle, 0);
  return j;
}

ReducedState ReadSeedGuess(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("seed guess must be a JSON object");
  ReducedState seed;
  if (const auto it = j.find("fixed_point_reduced"); it != j.end()) {
    seed = ReducedFromJson(*it, seed);
  } else if (const auto last = j.find("last_iterate"); last != j.end()) {
    seed = ReducedFromJson(*last, seed);
  } else {
    bool any = false;
    for (int i = 0; i < 6; ++i) any = any || j.contains(ReducedName(i));
    if (!any) throw ParseError("no reduced apex coordinates found");
    seed = ReducedFromJson(j, seed);
  }
  if (const auto it = j.find("pinned"); it != j.end()) {
    seed.pinned = PinnedFromJson(*it);
  } else {
    seed.pinned[kApexXRate] = true;
  }
  return seed;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points) {
  CsvWriter csv(out);
  csv.Header({"velocity", "converged", "status", "iterations", "residual",
              "max_abs_eigenvalue", "stable", "z", "pitch", "hip", "x_rate",
              "pitch_rate", "hip_rate"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepPoint& pt : points) {
    const SearchResult& s = pt.search;
    const double residual =
        s.residual_history.empty() ? nan : s.residual_history.back();
    csv << pt.velocity << (s.converged() ? 1 : 0) << ToString(s.status)
        << s.iterations;
    if (s.cycle) {
      const LimitCycle& lc = *s.cycle;
      csv << lc.residual << std::abs(lc.eigenvalues.front())
          << (lc.stable ? 1 : 0);
      for (int i = 0; i < 6; ++i) csv << lc.fixed_point.values[i];
    } else {
      csv << residual << nan << 0;
      for (int i = 0; i < 6; ++i) csv << s.last_iterate[i];
    }
    csv.EndRow();
  }
}

std::vector<GrfSample> StanceSamples(const std::vector<TrajectoryRow>& rows,
                                     int cycle) {
  std::vector<GrfSample> out;
  for (const TrajectoryRow& r : rows) {
    if (r.phase != Phase::kStance) continue;
    if (cycle >= 0 && r.cycle != cycle) continue;
    GrfSample s;
    s.t = r.t;
    s.foot = r.foot;
    s.com = Vec2(r.q[kX], r.q[kZ]);
    s.force = r.grf;
    out.push_back(s);
  }
  return out;
}

void WriteGrfFanCsv(std::ostream& out,
                    const std::vector<TrajectoryRow>& rows) {
  CsvWriter csv(out);
  csv.Header({"t", "cycle", "origin_x", "origin_z", "force_x", "force_z"});
  for (int cycle : CycleIndices(rows)) WriteGrfFanRows(csv, rows, cycle);
}

void WriteEnergyCsv(std::ostream& out,
                    const std::vector<TrajectoryRow>& rows) {
  CsvWriter csv(out);
  csv.Header({"t", "cycle", "phase", "kinetic", "gravity", "leg_spring",
              "hip_spring", "total"});
  for (const TrajectoryRow& r : rows) {
    csv << r.t << r.cycle << ToString(r.phase) << r.energy.kinetic
        << r.energy.gravity << r.energy.leg_spring << r.energy.hip_spring
        << r.energy.total;
    csv.EndRow();
  }
}

void WritePhasePortraitCsv(std::ostream& out,
                           const std::vector<TrajectoryRow>& rows) {
  CsvWriter csv(out);
  csv.Header({"t", "cycle", "pitch", "pitch_rate", "hip", "hip_rate"});
  for (const TrajectoryRow& r : rows) {
    csv << r.t << r.cycle << r.q[kPitch] << r.qd[kPitch] << r.q[kHip]
        << r.qd[kHip];
    csv.EndRow();
  }
}

json VppJson(const VppEstimate& e) {
  json j = {{"samples", e.samples}, {"degenerate", e.degenerate}};
  if (e.degenerate) {
    j["point"] = nullptr;
    j["rms_distance"] = nullptr;
  } else {
    j["point"] = Vec2Json(e.point);
    j["rms_distance"] = e.rms_distance;
  }
  return j;
}

json VppReportJson(const std::vector<TrajectoryRow>& rows) {
  json cycles = json::array();
  for (int cycle : CycleIndices(rows)) {
    json entry = VppJson(EstimateVpp(StanceSamples(rows, cycle)));
    entry["cycle"] = cycle;
    cycles.push_back(std::move(entry));
  }
  json j = VppJson(EstimateVpp(StanceSamples(rows, -1)));
  j["frame"] = "com";
  j["min_force"] = kVppMinForce;
  j["cycles"] = std::move(cycles);
  return j;
}

}  // namespace hopper
