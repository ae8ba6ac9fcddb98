// Copyright 2026 The nmqw authors
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

#include "nmqw/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nmqw {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error at byte " + std::to_string(e.byte) + ": " +
                             e.what());
  }
}

void check_header(const json& doc, const std::string& kind) {
  if (!doc.is_object()) fail("document: top level is not an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
    fail("document: missing integer format_version");
  const int version = doc["format_version"].get<int>();
  if (version != kFormatVersion)
    fail("document: unknown format_version " + std::to_string(version) + " (supported: " +
         std::to_string(kFormatVersion) + ")");
  if (!doc.contains("kind") || doc["kind"].get<std::string>() != kind)
    fail("document: expected kind '" + kind + "'");
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) fail(where + ": matrix is not a non-empty array");
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index n_cols = static_cast<Eigen::Index>(rows[0].size());
  ComplexMatrix m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols)
      fail(where + ": ragged matrix row " + std::to_string(r));
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2)
        fail(where + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
             ") is not a [re, im] pair");
      m(r, c) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json label_to_json(const BasisLabel& label) {
  json j;
  switch (label.kind) {
    case LabelKind::Diag: j["kind"] = "diag"; break;
    case LabelKind::X: j["kind"] = "x"; break;
    case LabelKind::Y: j["kind"] = "y"; break;
  }
  j["m"] = label.m + 1;  // documents are 1-based
  if (label.kind != LabelKind::Diag) j["n"] = label.n + 1;
  return j;
}

BasisLabel label_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("m"))
    fail(where + ": label needs 'kind' and 'm'");
  const std::string kind = j["kind"].get<std::string>();
  const int m = j["m"].get<int>() - 1;
  if (kind == "diag") {
    if (j.contains("n") && j["n"].get<int>() - 1 != m)
      fail(where + ": diag label with n != m");
    return BasisLabel::diag(m);
  }
  if (!j.contains("n")) fail(where + ": label kind '" + kind + "' needs 'n'");
  const int n = j["n"].get<int>() - 1;
  if (kind == "x") return BasisLabel::x(m, n);
  if (kind == "y") return BasisLabel::y(m, n);
  fail(where + ": unknown label kind '" + kind + "'");
}

std::vector<double> doubles_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where + ": not an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(v.get<double>());
  return out;
}

}  // namespace

std::string write_dataset(const DynamicsDataset& dataset) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "dynamics-dataset";
  doc["flavor"] =
      dataset.flavor == DynamicsDataset::Flavor::Prepared ? "prepared" : "basis";
  doc["dimension"] = dataset.dim;
  doc["index_base"] = 1;
  doc["times"] = dataset.times;
  json series = json::array();
  for (const auto& [label, mats] : dataset.series) {
    json entry;
    entry["label"] = label_to_json(label);
    json jmats = json::array();
    for (const ComplexMatrix& m : mats) jmats.push_back(matrix_to_json(m));
    entry["matrices"] = std::move(jmats);
    series.push_back(std::move(entry));
  }
  doc["series"] = std::move(series);
  doc["metadata"] = dataset.metadata;
  return doc.dump(1);
}

DynamicsDataset read_dataset(const std::string& text, const ReadOptions& opts) {
  const json doc = parse_text(text);
  check_header(doc, "dynamics-dataset");

  DynamicsDataset ds;
  const std::string flavor = doc.at("flavor").get<std::string>();
  if (flavor == "prepared")
    ds.flavor = DynamicsDataset::Flavor::Prepared;
  else if (flavor == "basis")
    ds.flavor = DynamicsDataset::Flavor::Basis;
  else
    fail("dataset: unknown flavor '" + flavor + "'");

  ds.dim = doc.at("dimension").get<int>();
  if (doc.contains("index_base") && doc["index_base"].get<int>() != 1)
    fail("dataset: only index_base 1 is supported");
  ds.times = doubles_from_json(doc.at("times"), "dataset times");

  if (!doc.contains("series") || !doc["series"].is_array())
    fail("dataset: missing series array");
  for (const json& entry : doc["series"]) {
    const BasisLabel label = label_from_json(entry.at("label"), "dataset series");
    if (ds.series.count(label))
      fail("dataset: duplicate series label " + label.str());
    std::vector<ComplexMatrix> mats;
    for (const json& jm : entry.at("matrices"))
      mats.push_back(matrix_from_json(jm, "series " + label.str()));
    ds.series.emplace(label, std::move(mats));
  }

  if (doc.contains("metadata"))
    for (const auto& [key, value] : doc["metadata"].items())
      ds.metadata[key] = value.get<std::string>();

  const auto unit = ds.metadata.find("time_unit");
  if (unit == ds.metadata.end() || (unit->second != "step" && unit->second != "second"))
    fail("dataset: metadata time_unit must be 'step' or 'second'");

  ds.validate(opts.tolerances);
  return ds;
}

std::string write_config(const QWConfig& config) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "qw-config";
  doc["X"] = config.half_width;
  doc["steps"] = config.steps;
  doc["omega0"] = config.omega0;
  doc["Omega"] = config.omega_carrier;
  doc["n_H"] = config.n_h;
  doc["n_V"] = config.n_v;
  doc["dt_H"] = config.dt_h;
  doc["dt_V"] = config.dt_v;
  doc["boundary"] = config.boundary;
  doc["env_weights"] = config.env_weights;
  doc["phase_convention"] = to_string(config.phase_convention);
  return doc.dump(1);
}

QWConfig read_config(const std::string& text) {
  const json doc = parse_text(text);
  check_header(doc, "qw-config");
  QWConfig config;
  config.half_width = doc.at("X").get<int>();
  config.steps = doc.at("steps").get<int>();
  config.omega0 = doc.at("omega0").get<double>();
  config.omega_carrier = doc.at("Omega").get<double>();
  config.n_h = doc.at("n_H").get<double>();
  config.n_v = doc.at("n_V").get<double>();
  config.dt_h = doc.at("dt_H").get<double>();
  config.dt_v = doc.at("dt_V").get<double>();
  config.boundary = doc.at("boundary").get<std::string>();
  const auto& w = doc.at("env_weights");
  if (!w.is_array() || w.size() != 2) fail("config: env_weights must have 2 entries");
  config.env_weights = {w[0].get<double>(), w[1].get<double>()};
  const std::string convention = doc.at("phase_convention").get<std::string>();
  if (convention == "literal")
    config.phase_convention = PhaseConvention::Literal;
  else if (convention == "omega-dt")
    config.phase_convention = PhaseConvention::OmegaDt;
  else
    fail("config: unknown phase_convention '" + convention + "'");
  config.validate();
  return config;
}

std::string write_result(const BLPResult& result) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "blp-result";
  doc["value"] = result.value;
  json pair;
  pair["mode"] = to_string(result.pair.mode);
  pair["raw1"] = std::vector<double>(result.pair.raw1.begin(), result.pair.raw1.end());
  pair["raw2"] = std::vector<double>(result.pair.raw2.begin(), result.pair.raw2.end());
  pair["rho1"] = matrix_to_json(result.rho1);
  pair["rho2"] = matrix_to_json(result.rho2);
  doc["pair"] = std::move(pair);
  json traj;
  traj["times"] = result.trajectory.times;
  traj["distances"] = result.trajectory.values;
  doc["trajectory"] = std::move(traj);
  json diag;
  diag["restarts"] = result.diagnostics.restarts;
  diag["seed"] = result.diagnostics.seed;
  diag["mode"] = result.diagnostics.mode;
  diag["method"] = result.diagnostics.method;
  diag["max_iterations"] = result.diagnostics.max_iterations;
  diag["tolerance"] = result.diagnostics.tolerance;
  diag["best_restart"] = result.diagnostics.best_restart;
  diag["total_iterations"] = result.diagnostics.total_iterations;
  diag["converged_restarts"] = result.diagnostics.converged_restarts;
  diag["abandoned_restarts"] = result.diagnostics.abandoned_restarts;
  diag["floor_value"] = result.diagnostics.floor_value;
  doc["diagnostics"] = std::move(diag);
  return doc.dump(1);
}

BLPResult read_result(const std::string& text) {
  const json doc = parse_text(text);
  check_header(doc, "blp-result");
  BLPResult result;
  result.value = doc.at("value").get<double>();
  const json& pair = doc.at("pair");
  const auto mode = pair_mode_from_string(pair.at("mode").get<std::string>());
  if (!mode) fail("result: unknown pair mode '" + pair["mode"].get<std::string>() + "'");
  result.pair.mode = *mode;
  const auto raw1 = doubles_from_json(pair.at("raw1"), "result raw1");
  const auto raw2 = doubles_from_json(pair.at("raw2"), "result raw2");
  result.pair.raw1 = Eigen::Map<const Eigen::VectorXd>(raw1.data(), raw1.size());
  result.pair.raw2 = Eigen::Map<const Eigen::VectorXd>(raw2.data(), raw2.size());
  result.rho1 = matrix_from_json(pair.at("rho1"), "result rho1");
  result.rho2 = matrix_from_json(pair.at("rho2"), "result rho2");
  result.trajectory.times = doubles_from_json(doc.at("trajectory").at("times"),
                                              "result trajectory times");
  result.trajectory.values = doubles_from_json(doc.at("trajectory").at("distances"),
                                               "result trajectory distances");
  const json& diag = doc.at("diagnostics");
  result.diagnostics.restarts = diag.at("restarts").get<int>();
  result.diagnostics.seed = diag.at("seed").get<std::uint64_t>();
  result.diagnostics.mode = diag.at("mode").get<std::string>();
  result.diagnostics.method = diag.at("method").get<std::string>();
  result.diagnostics.max_iterations = diag.at("max_iterations").get<int>();
  result.diagnostics.tolerance = diag.at("tolerance").get<double>();
  result.diagnostics.best_restart = diag.at("best_restart").get<int>();
  result.diagnostics.total_iterations = diag.at("total_iterations").get<long>();
  result.diagnostics.converged_restarts = diag.at("converged_restarts").get<int>();
  result.diagnostics.abandoned_restarts = diag.at("abandoned_restarts").get<int>();
  result.diagnostics.floor_value = diag.at("floor_value").get<double>();
  return result;
}

std::string write_trajectory_table(const DistanceTrajectory& trajectory) {
  std::ostringstream os;
  os.precision(17);
  os << "# time trace_distance\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k)
    os << trajectory.times[k] << " " << trajectory.values[k] << "\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace nmqw
