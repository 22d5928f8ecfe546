// Copyright 2026 The Maskforge Authors
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

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "maskforge/masker.hpp"
#include "maskforge/states.hpp"

namespace maskforge {

using json = nlohmann::json;

// Matrix file format, shared repo-wide:
//   {rows, cols, data: [[re, im], ...]} row-major.
// States add a {dims, labels} header; maskers bundle the isometry with the
// safe state and the four dimensions.

inline json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("matrix JSON: expected {rows, cols, data}");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols)
    throw std::invalid_argument("matrix JSON: data length differs from rows*cols");
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    const json& entry = data.at(k);
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
    m.data()[k] = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
  }
  return m;
}

inline json density_to_json(const DensityMatrix& rho) {
  return json{{"dims", rho.dims()}, {"labels", rho.labels()},
              {"matrix", matrix_to_json(rho.matrix())}};
}

inline DensityMatrix density_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("labels") || !j.contains("matrix"))
    throw std::invalid_argument("state JSON: expected {dims, labels, matrix}");
  return DensityMatrix(matrix_from_json(j.at("matrix")),
                       j.at("dims").get<std::vector<std::size_t>>(),
                       j.at("labels").get<std::vector<std::string>>());
}

inline json pure_to_json(const PureState& psi) {
  json vec = json::array();
  for (const cplx& a : psi.amplitudes()) vec.push_back({a.real(), a.imag()});
  return json{{"dims", psi.dims()}, {"labels", psi.labels()}, {"vector", std::move(vec)}};
}

inline PureState pure_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("labels") || !j.contains("vector"))
    throw std::invalid_argument("state JSON: expected {dims, labels, vector}");
  const json& vec = j.at("vector");
  std::vector<cplx> amps(vec.size());
  for (std::size_t k = 0; k < vec.size(); ++k)
    amps[k] = cplx(vec.at(k).at(0).get<double>(), vec.at(k).at(1).get<double>());
  return PureState(std::move(amps), j.at("dims").get<std::vector<std::size_t>>(),
                   j.at("labels").get<std::vector<std::string>>());
}

inline json masker_to_json(const Masker& m) {
  return json{{"dI", m.dim_in()},
              {"dS", m.dim_safe()},
              {"dA", m.dim_a()},
              {"dB", m.dim_b()},
              {"isometry", matrix_to_json(m.isometry())},
              {"safe_state", matrix_to_json(m.safe_state().matrix())}};
}

inline Masker masker_from_json(const json& j) {
  for (const char* key : {"dI", "dS", "dA", "dB", "isometry", "safe_state"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("masker JSON: missing field ") + key);
  const std::size_t di = j.at("dI").get<std::size_t>();
  const std::size_t ds = j.at("dS").get<std::size_t>();
  const std::size_t da = j.at("dA").get<std::size_t>();
  const std::size_t db = j.at("dB").get<std::size_t>();
  ComplexMatrix safe = matrix_from_json(j.at("safe_state"));
  if (safe.rows() != ds)
    throw std::invalid_argument("masker JSON: safe_state dimension differs from dS");
  return Masker(matrix_from_json(j.at("isometry")),
                DensityMatrix(std::move(safe), {ds}, {"S"}), di, da, db);
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline Masker load_masker(const std::string& path) {
  return masker_from_json(load_json(path));
}

}  // namespace maskforge
