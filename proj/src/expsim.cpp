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

#include "qcert/expsim.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "qcert/rng.hpp"

namespace qcert {

LossModel LossModel::unit(int d) {
  LossModel m;
  m.eta_a.assign(static_cast<size_t>(d), 1.0);
  m.eta_b.assign(static_cast<size_t>(d), 1.0);
  return m;
}

void LossModel::validate(int d) const {
  if (static_cast<int>(eta_a.size()) != d || static_cast<int>(eta_b.size()) != d)
    throw DimensionMismatch("loss vectors must have one entry per mode");
  for (double e : eta_a)
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eta_A entries must lie in (0, 1]");
  for (double e : eta_b)
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eta_B entries must lie in (0, 1]");
}

int64_t CoincidenceTable::total_counts() const { return counts.sum(); }

RMat setting_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
  const LocalBasis& a = setting.basis.basis_a;
  const LocalBasis& b = setting.basis.basis_b;
  if (a.dim != b.dim) throw DimensionMismatch("setting arms have different dimensions");
  if (rho.total_dim() != a.dim * b.dim)
    throw DimensionMismatch("state dimension does not match setting");
  const int d = a.dim;
  RMat p(d, d);
  for (int i = 0; i < d; ++i) {
    const CVec va = a.vector(i);
    for (int j = 0; j < d; ++j) {
      CVec vb = b.vector(j);
      if (setting.basis.conjugate_b) vb = vb.conjugate();
      const CVec v = kron(va, vb);
      p(i, j) = std::max(0.0, (v.adjoint() * rho.mat * v).value().real());
    }
  }
  return p;
}

CoincidenceTable sample_counts(const RMat& probs, double pair_rate, double exposure,
                               const LossModel& loss, double accidental_rate,
                               uint64_t seed, const std::string& label) {
  if (probs.rows() != probs.cols()) throw DimensionMismatch("probability table must be square");
  const int d = static_cast<int>(probs.rows());
  loss.validate(d);
  if (pair_rate < 0.0 || exposure <= 0.0 || accidental_rate < 0.0)
    throw ConfigError("rates must be nonnegative and exposure positive");
  if (probs.minCoeff() < 0.0) throw ConfigError("probabilities must be nonnegative");

  std::mt19937_64 rng(substream_seed(seed, label));
  CoincidenceTable t;
  t.label = label;
  t.dim = d;
  t.exposure = exposure;
  t.counts.resize(d, d);
  const double pairs = pair_rate * exposure;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.counts(i, j) = poisson_sample(
          rng, pairs * probs(i, j) * loss.eta_a[size_t(i)] * loss.eta_b[size_t(j)] +
                   accidental_rate * exposure);
  t.singles_a.resize(static_cast<size_t>(d));
  t.singles_b.resize(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    t.singles_a[size_t(i)] = poisson_sample(rng, pairs * probs.row(i).sum() * loss.eta_a[size_t(i)]);
  for (int j = 0; j < d; ++j)
    t.singles_b[size_t(j)] = poisson_sample(rng, pairs * probs.col(j).sum() * loss.eta_b[size_t(j)]);
  t.meta = {{"pair_rate", pair_rate}, {"seed", seed},
            {"accidental_rate", accidental_rate},
            {"eta_A", loss.eta_a}, {"eta_B", loss.eta_b}};
  return t;
}

LocalBasis rotated_standard_basis(int d, double theta, int i0, int i1) {
  if (i0 == i1 || i0 < 0 || i1 < 0 || i0 >= d || i1 >= d)
    throw ConfigError("rotation plane needs two distinct indices below d");
  LocalBasis b = standard_basis(d);
  const double c = std::cos(theta), s = std::sin(theta);
  b.vectors.col(i0) = c * CMat::Identity(d, d).col(i0) + s * CMat::Identity(d, d).col(i1);
  b.vectors.col(i1) = s * CMat::Identity(d, d).col(i0) - c * CMat::Identity(d, d).col(i1);
  return b;
}

nlohmann::json table_to_json(const CoincidenceTable& t) {
  nlohmann::json counts = nlohmann::json::array();
  for (int i = 0; i < t.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < t.dim; ++j) row.push_back(t.counts(i, j));
    counts.push_back(std::move(row));
  }
  return {{"schema", 1},
          {"label", t.label},
          {"dim", t.dim},
          {"counts", counts},
          {"singles_A", t.singles_a},
          {"singles_B", t.singles_b},
          {"exposure", t.exposure},
          {"meta", t.meta}};
}

CoincidenceTable table_from_json(const nlohmann::json& j) {
  CoincidenceTable t;
  try {
    t.label = j.at("label").get<std::string>();
    t.dim = j.at("dim").get<int>();
    if (t.dim < 1) throw DataError("table dim must be >= 1");
    const auto& counts = j.at("counts");
    if (static_cast<int>(counts.size()) != t.dim) throw DataError("counts row count mismatch");
    t.counts.resize(t.dim, t.dim);
    for (int i = 0; i < t.dim; ++i) {
      if (static_cast<int>(counts[i].size()) != t.dim) throw DataError("counts column count mismatch");
      for (int jj = 0; jj < t.dim; ++jj) {
        const int64_t c = counts[i][jj].get<int64_t>();
        if (c < 0) throw DataError("counts must be nonnegative");
        t.counts(i, jj) = c;
      }
    }
    if (j.contains("singles_A")) t.singles_a = j.at("singles_A").get<std::vector<int64_t>>();
    if (j.contains("singles_B")) t.singles_b = j.at("singles_B").get<std::vector<int64_t>>();
    for (int64_t s : t.singles_a)
      if (s < 0) throw DataError("singles must be nonnegative");
    for (int64_t s : t.singles_b)
      if (s < 0) throw DataError("singles must be nonnegative");
    t.exposure = j.value("exposure", 1.0);
    if (!(t.exposure > 0.0)) throw DataError("exposure must be positive");
    t.meta = j.value("meta", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed coincidence table: ") + e.what());
  }
  return t;
}

std::string table_to_csv(const CoincidenceTable& t) {
  std::string out = "i,j,count\n";
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j)
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             std::to_string(t.counts(i, j)) + "\n";
  return out;
}

CoincidenceTable table_from_csv(const std::string& label, const std::string& csv_text) {
  std::vector<std::tuple<int, int, int64_t>> cells;
  int dim = 0;
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "i,j,count") continue;
    int i = 0, j = 0;
    long long c = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lld", &i, &j, &c) != 3)
      throw DataError("malformed CSV row: " + line);
    if (i < 0 || j < 0 || c < 0) throw DataError("negative CSV entry: " + line);
    dim = std::max({dim, i + 1, j + 1});
    cells.emplace_back(i, j, c);
  }
  if (dim == 0) throw DataError("empty CSV table");
  CoincidenceTable t;
  t.label = label;
  t.dim = dim;
  t.counts.setZero(dim, dim);
  for (const auto& [i, j, c] : cells) t.counts(i, j) = c;
  t.meta = nlohmann::json::object();
  return t;
}

}  // namespace qcert
