// Copyright 2026 The qcert Authors
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

#include "qcert/complex_matrix.hpp"

#include "qcert/errors.hpp"

namespace qcert {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double hermiticity_defect(const CMat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

nlohmann::json matrix_to_json(const CMat& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      entries.push_back({a(r, c).real(), a(r, c).imag()});
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

CMat matrix_from_json(const nlohmann::json& j) {
  try {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
      throw DataError("matrix JSON must have rows, cols, entries");
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows <= 0 || cols <= 0 || static_cast<Eigen::Index>(entries.size()) != rows * cols)
      throw DataError("matrix JSON entry count does not match rows*cols");
    CMat a(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c, ++idx)
        a(r, c) = cxd(entries[idx].at(0).get<double>(), entries[idx].at(1).get<double>());
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed matrix JSON: ") + e.what());
  }
}

}  // namespace qcert
