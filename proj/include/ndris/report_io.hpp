// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The ndris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef NDRIS_REPORT_IO_HPP_
#define NDRIS_REPORT_IO_HPP_

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ndris/config.hpp"
#include "ndris/experiment.hpp"

namespace ndris {

inline constexpr std::string_view kCsvHeader =
    "sweep_param,sweep_value,metric,mean,stderr,trials,scheme,N,M,seed";

enum class ReportFormat { kCsv, kJson };

inline ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|json)");
}

// One row per (sweep point, metric). The base configuration is echoed as
// "# key=value" comment lines above the header.
inline void write_csv(const ExperimentReport& report, std::ostream& out) {
  using detail::format_double;
  out << "# ndris experiment report\n";
  out << "# sweep_param=" << to_string(report.axis) << '\n';
  for (const auto& [key, value] : to_key_values(report.base)) {
    out << "# " << key << '=' << value << '\n';
  }
  out << kCsvHeader << '\n';
  for (const auto& point : report.points) {
    const SystemConfig& c = point.config;
    for (const auto& m : point.metrics) {
      out << to_string(report.axis) << ',' << format_double(point.value) << ',' << m.metric
          << ',' << format_double(m.mean) << ',' << format_double(m.std_error) << ','
          << m.trials << ',' << to_string(c.scheme) << ',' << c.dims.antennas << ','
          << c.dims.elements << ',' << c.seed << '\n';
    }
  }
}

inline nlohmann::ordered_json config_to_json(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["N"] = c.dims.antennas;
  j["M"] = c.dims.elements;
  j["d_H"] = c.geometry.d_h_m;
  j["d_g"] = c.geometry.d_g_m;
  j["eta_H"] = c.geometry.eta_h;
  j["eta_g"] = c.geometry.eta_g;
  j["p_u_dbm"] = c.budget.p_u_dbm;
  j["p_t_dbm"] = c.budget.p_t_dbm;
  j["noise_dbm"] = c.budget.noise_dbm;
  j["tau"] = c.overhead.tau_s;
  j["tau_m"] = c.overhead.tau_m_s;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["scheme"] = std::string(to_string(c.scheme));
  j["noiseless_estimation"] = c.noiseless_estimation;
  j["ao_max_iterations"] = c.ao.max_iterations;
  j["ao_tolerance"] = c.ao.tolerance;
  return j;
}

inline SystemConfig config_from_json(const nlohmann::ordered_json& j) {
  SystemConfig c;
  c.dims.antennas = j.at("N").get<int>();
  c.dims.elements = j.at("M").get<int>();
  c.geometry.d_h_m = j.at("d_H").get<double>();
  c.geometry.d_g_m = j.at("d_g").get<double>();
  c.geometry.eta_h = j.at("eta_H").get<double>();
  c.geometry.eta_g = j.at("eta_g").get<double>();
  c.budget.p_u_dbm = j.at("p_u_dbm").get<double>();
  c.budget.p_t_dbm = j.at("p_t_dbm").get<double>();
  c.budget.noise_dbm = j.at("noise_dbm").get<double>();
  c.overhead.tau_s = j.at("tau").get<double>();
  c.overhead.tau_m_s = j.at("tau_m").get<double>();
  c.trials = j.at("trials").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.scheme = parse_scheme(j.at("scheme").get<std::string>());
  c.noiseless_estimation = j.at("noiseless_estimation").get<bool>();
  c.ao.max_iterations = j.at("ao_max_iterations").get<int>();
  c.ao.tolerance = j.at("ao_tolerance").get<double>();
  return c;
}

inline nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(report.base);
  j["sweep_param"] = std::string(to_string(report.axis));
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& point : report.points) {
    nlohmann::ordered_json p;
    p["sweep_value"] = point.value;
    p["config"] = config_to_json(point.config);
    p["pilot_slots"] = pilot_slot_count(point.config.scheme, point.config.dims.elements);
    p["metrics"] = nlohmann::ordered_json::array();
    for (const auto& m : point.metrics) {
      p["metrics"].push_back(
          {{"metric", m.metric}, {"mean", m.mean}, {"stderr", m.std_error}, {"trials", m.trials}});
    }
    j["points"].push_back(std::move(p));
  }
  return j;
}

inline void write_report(const ExperimentReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::kCsv) {
    write_csv(report, out);
  } else {
    out << report_to_json(report).dump(2) << '\n';
  }
}

// Writes to `path`, or to stdout when path is "-".
inline void emit(const ExperimentReport& report, ReportFormat format, const std::string& path,
                 std::ostream& stdout_stream) {
  if (path == "-") {
    write_report(report, format, stdout_stream);
    return;
  }
  std::ostringstream buffer;
  write_report(report, format, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  out << buffer.str();
  out.flush();
  if (!out) throw std::runtime_error("failed writing report to '" + path + "'");
}

}  // namespace ndris

#endif  // NDRIS_REPORT_IO_HPP_
