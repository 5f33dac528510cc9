// Copyright 2026 The qwparrondo Authors. All Rights Reserved.
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

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qwp/errors.hpp"
#include "qwp/metrics.hpp"
#include "qwp/scan.hpp"

namespace qwp {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits; round-trips any double.
inline std::string format_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline constexpr std::string_view kTrajectoryCsvHeader = "step,p_left,p_origin,p_right,bias,entropy";

inline void write_trajectory_csv(const BiasTrajectory& traj, std::ostream& out) {
  out << kTrajectoryCsvHeader << '\n';
  for (const BiasSample& s : traj.samples) {
    out << s.step << ',' << format_decimal(s.p_left) << ',' << format_decimal(s.p_origin) << ','
        << format_decimal(s.p_right) << ',' << format_decimal(s.bias) << ','
        << format_decimal(s.entropy) << '\n';
  }
}

inline std::string_view to_string(VerdictSampling s) {
  return s == VerdictSampling::EveryStep ? "every_step" : "period_boundary";
}

inline VerdictSampling parse_sampling(std::string_view s) {
  if (s == "every_step") return VerdictSampling::EveryStep;
  if (s == "period_boundary") return VerdictSampling::PeriodBoundary;
  throw InvalidInput("unknown verdict sampling '" + std::string(s) + "'");
}

inline ordered_json to_json(const CoinParams& c) {
  return ordered_json{{"alpha_deg", c.alpha_deg}, {"beta_deg", c.beta_deg}, {"gamma_deg", c.gamma_deg}};
}

inline CoinParams coin_from_json(const ordered_json& j) {
  return {j.at("alpha_deg").get<double>(), j.at("beta_deg").get<double>(),
          j.at("gamma_deg").get<double>()};
}

inline ordered_json to_json(const BiasTrajectory& traj) {
  ordered_json samples = ordered_json::array();
  for (const BiasSample& s : traj.samples) {
    samples.push_back({{"step", s.step},
                       {"p_left", s.p_left},
                       {"p_origin", s.p_origin},
                       {"p_right", s.p_right},
                       {"bias", s.bias},
                       {"entropy", s.entropy}});
  }
  return {{"coin_a", to_json(traj.info.coin_a)},
          {"coin_b", to_json(traj.info.coin_b)},
          {"eta_deg", traj.info.eta_deg},
          {"sequence", traj.info.sequence.str()},
          {"samples", std::move(samples)}};
}

/// Scan report layout, keys in this order:
///   config {coin_a, coin_b, eta_deg, max_period, horizon_steps, epsilon, sampling}
///   verdict_a, verdict_b
///   results [{sequence, period, verdict, final_bias, min_bias, max_bias, max_entropy}]
///   paradox_sequences [string]
///   winning_counts_by_period [{period, sequences, winning}]
inline ordered_json to_json(const ScanReport& r) {
  const ScanConfig& c = r.config;
  ordered_json j;
  j["config"] = {{"coin_a", to_json(c.coin_a)},
                 {"coin_b", to_json(c.coin_b)},
                 {"eta_deg", c.eta_deg},
                 {"max_period", c.max_period},
                 {"horizon_steps", c.horizon_steps},
                 {"epsilon", c.epsilon},
                 {"sampling", to_string(c.sampling)}};
  j["verdict_a"] = to_string(r.verdict_a);
  j["verdict_b"] = to_string(r.verdict_b);
  ordered_json results = ordered_json::array();
  for (const SequenceResult& s : r.results) {
    results.push_back({{"sequence", s.sequence.str()},
                       {"period", s.sequence.period()},
                       {"verdict", to_string(s.verdict)},
                       {"final_bias", s.final_bias},
                       {"min_bias", s.min_bias},
                       {"max_bias", s.max_bias},
                       {"max_entropy", s.max_entropy}});
  }
  j["results"] = std::move(results);
  ordered_json paradox = ordered_json::array();
  for (const GameSequence& s : r.paradox_sequences) paradox.push_back(s.str());
  j["paradox_sequences"] = std::move(paradox);
  ordered_json counts = ordered_json::array();
  for (const PeriodCount& p : r.winning_counts_by_period) {
    counts.push_back({{"period", p.period}, {"sequences", p.sequences}, {"winning", p.winning}});
  }
  j["winning_counts_by_period"] = std::move(counts);
  return j;
}

inline ScanReport scan_report_from_json(const ordered_json& j) {
  try {
    ScanReport r;
    const auto& c = j.at("config");
    r.config.coin_a = coin_from_json(c.at("coin_a"));
    r.config.coin_b = coin_from_json(c.at("coin_b"));
    r.config.eta_deg = c.at("eta_deg").get<double>();
    r.config.max_period = c.at("max_period").get<int>();
    r.config.horizon_steps = c.at("horizon_steps").get<int>();
    r.config.epsilon = c.at("epsilon").get<double>();
    r.config.sampling = parse_sampling(c.at("sampling").get<std::string>());
    r.verdict_a = parse_verdict(j.at("verdict_a").get<std::string>());
    r.verdict_b = parse_verdict(j.at("verdict_b").get<std::string>());
    for (const auto& s : j.at("results")) {
      SequenceResult sr;
      sr.sequence = GameSequence::parse(s.at("sequence").get<std::string>());
      sr.verdict = parse_verdict(s.at("verdict").get<std::string>());
      sr.final_bias = s.at("final_bias").get<double>();
      sr.min_bias = s.at("min_bias").get<double>();
      sr.max_bias = s.at("max_bias").get<double>();
      sr.max_entropy = s.at("max_entropy").get<double>();
      r.results.push_back(std::move(sr));
    }
    for (const auto& s : j.at("paradox_sequences")) {
      r.paradox_sequences.push_back(GameSequence::parse(s.get<std::string>()));
    }
    for (const auto& p : j.at("winning_counts_by_period")) {
      r.winning_counts_by_period.push_back(
          {p.at("period").get<int>(), p.at("sequences").get<int>(), p.at("winning").get<int>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed scan report: ") + e.what());
  }
}

inline void write_scan_json(const ScanReport& report, std::ostream& out) {
  out << to_json(report).dump(2) << '\n';
}

inline ScanReport read_scan_json(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
  return scan_report_from_json(j);
}

inline void write_scan_csv(const ScanReport& r, std::ostream& out) {
  out << "sequence,period,verdict,final_bias,min_bias,max_bias,max_entropy,paradox\n";
  for (const SequenceResult& s : r.results) {
    const bool paradox = std::find(r.paradox_sequences.begin(), r.paradox_sequences.end(),
                                   s.sequence) != r.paradox_sequences.end();
    out << s.sequence.str() << ',' << s.sequence.period() << ',' << to_string(s.verdict) << ','
        << format_decimal(s.final_bias) << ',' << format_decimal(s.min_bias) << ','
        << format_decimal(s.max_bias) << ',' << format_decimal(s.max_entropy) << ','
        << (paradox ? 1 : 0) << '\n';
  }
}

inline ordered_json to_json(const RegionGrid& g, const ScanConfig& base) {
  ordered_json j;
  j["base"] = {{"coin_a", to_json(base.coin_a)},
               {"coin_b", to_json(base.coin_b)},
               {"eta_deg", base.eta_deg},
               {"max_period", base.max_period},
               {"horizon_steps", base.horizon_steps},
               {"epsilon", base.epsilon},
               {"sampling", to_string(base.sampling)}};
  ordered_json axes = ordered_json::array();
  for (std::size_t k = 0; k < g.axes.size(); ++k) {
    axes.push_back({{"parameter", to_string(g.axes[k].parameter)},
                    {"start", g.axes[k].start},
                    {"stop", g.axes[k].stop},
                    {"step", g.axes[k].step},
                    {"count", g.shape[k]}});
  }
  j["axes"] = std::move(axes);
  ordered_json cells = ordered_json::array();
  for (const RegionCell& c : g.cells) {
    cells.push_back({{"coords", c.coords},
                     {"paradox", c.paradox},
                     {"winning_count", c.winning_count},
                     {"verdict_a", to_string(c.verdict_a)},
                     {"verdict_b", to_string(c.verdict_b)}});
  }
  j["cells"] = std::move(cells);
  return j;
}

inline void write_region_csv(const RegionGrid& g, std::ostream& out) {
  for (const AxisSpec& a : g.axes) out << to_string(a.parameter) << ',';
  out << "paradox,winning_count,verdict_a,verdict_b\n";
  for (const RegionCell& c : g.cells) {
    for (double v : c.coords) out << format_decimal(v) << ',';
    out << (c.paradox ? 1 : 0) << ',' << c.winning_count << ',' << to_string(c.verdict_a) << ','
        << to_string(c.verdict_b) << '\n';
  }
}

/// Writes through `emit` into `path` ("-" or empty means `stdout_sink`).
template <typename Emit>
void write_output(const std::string& path, std::ostream& stdout_sink, Emit&& emit) {
  if (path.empty() || path == "-") {
    emit(stdout_sink);
    stdout_sink.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path, "cannot open for writing");
  emit(file);
  file.flush();
  if (!file) throw IoError(path, "write failed");
}

}  // namespace qwp
