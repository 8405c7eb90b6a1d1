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

#include "qcert/estimate.hpp"

#include <cmath>

#include "qcert/rng.hpp"

namespace qcert {

nlohmann::json estimate_to_json(const DiagonalEstimate& e) {
  nlohmann::json values = nlohmann::json::array();
  for (int i = 0; i < e.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < e.dim(); ++j) row.push_back(e.values(i, j));
    values.push_back(std::move(row));
  }
  return {{"schema", 1},
          {"label", e.label},
          {"dim", e.dim()},
          {"values", values},
          {"normalization", e.normalization}};
}

DiagonalEstimate estimate_standard(const CoincidenceTable& table) {
  const int64_t total = table.total_counts();
  if (total <= 0) throw NumericalError("cannot estimate from an all-zero table: " + table.label);
  DiagonalEstimate e;
  e.label = table.label;
  e.normalization = 1.0;
  e.values = table.counts.cast<double>() / double(total);
  return e;
}

DiagonalEstimate estimate_tilted(const CoincidenceTable& table, const SchmidtSpectrum& lambda,
                                 const DiagonalEstimate& std_estimate) {
  if (std_estimate.dim() != table.dim || lambda.dim() != table.dim)
    throw DimensionMismatch("tilted table, lambda and standard estimate disagree on dimension");
  const int64_t total = table.total_counts();
  if (total <= 0) throw NumericalError("cannot estimate from an all-zero table: " + table.label);
  const double c = c_lambda(lambda, std_estimate.values);
  DiagonalEstimate e;
  e.label = table.label;
  e.normalization = c;
  e.values = table.counts.cast<double>() * (c / double(total));
  return e;
}

LossCorrection loss_correct(const CoincidenceTable& table, double cond_limit) {
  const int d = table.dim;
  if (static_cast<int>(table.singles_a.size()) != d ||
      static_cast<int>(table.singles_b.size()) != d)
    throw DataError("loss correction needs per-mode singles for both arms");
  for (int i = 0; i < d; ++i)
    if (table.singles_a[size_t(i)] <= 0 || table.singles_b[size_t(i)] <= 0)
      throw NumericalError("loss correction needs strictly positive singles in every mode");

  RMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = double(table.counts(i, j)) /
                (double(table.singles_a[size_t(i)]) * double(table.singles_b[size_t(j)]));

  Eigen::JacobiSVD<RMat> svd(m);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > cond_limit)
    throw NumericalError("singles/coincidence ratio matrix is singular or ill-conditioned");

  // M * diag(rho_B) = 1/N and M^T * diag(rho_A) = 1/N, so arm B's diagonal
  // comes from row sums of M^-1 and arm A's from column sums.
  const RVec ones = RVec::Ones(d);
  const RVec row_sums = m.fullPivLu().solve(ones);
  const RVec col_sums = RMat(m.transpose()).fullPivLu().solve(ones);
  const double pair_number = row_sums.sum();
  if (!(pair_number > 0.0))
    throw NumericalError("inferred pair number is not positive; data violates the loss model");
  const RVec rho_b = row_sums / pair_number;
  const RVec rho_a = col_sums / pair_number;

  LossCorrection out;
  out.pair_number = pair_number;
  out.corrected.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.corrected(i, j) = pair_number * m(i, j) * rho_a(i) * rho_b(j);
  // Inversion noise can push near-empty cells slightly negative; the entries
  // estimate probabilities, so clamp before renormalizing.
  out.corrected = out.corrected.cwiseMax(0.0);
  const double total = out.corrected.sum();
  if (!(total > 0.0)) throw NumericalError("loss-corrected table sums to zero");
  out.corrected /= total;

  // Cross-check that [M rho_B]_i^-1 is the same pair number for every row.
  RVec per_row = (m * rho_b).cwiseInverse();
  out.consistency_spread =
      (per_row.maxCoeff() - per_row.minCoeff()) / per_row.mean();
  return out;
}

SchmidtSpectrum nominate_target(const DiagonalEstimate& std_estimate) {
  const int d = std_estimate.dim();
  std::vector<double> lam(static_cast<size_t>(d));
  double diag_sum = 0.0;
  for (int m = 0; m < d; ++m) diag_sum += std::max(0.0, std_estimate.values(m, m));
  if (!(diag_sum > 0.0))
    throw NumericalError("cannot nominate a target state: all diagonal cells are zero");
  for (int m = 0; m < d; ++m)
    lam[size_t(m)] = std::sqrt(std::max(0.0, std_estimate.values(m, m)) / diag_sum);
  return SchmidtSpectrum::normalized(std::move(lam));
}

namespace {

CoincidenceTable redraw(const CoincidenceTable& t, std::mt19937_64& rng) {
  CoincidenceTable r = t;
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j)
      r.counts(i, j) = poisson_sample(rng, double(t.counts(i, j)));
  for (size_t i = 0; i < t.singles_a.size(); ++i)
    r.singles_a[i] = poisson_sample(rng, double(t.singles_a[i]));
  for (size_t i = 0; i < t.singles_b.size(); ++i)
    r.singles_b[i] = poisson_sample(rng, double(t.singles_b[i]));
  return r;
}

}  // namespace

ResampleSummary resample_pipeline(const std::vector<CoincidenceTable>& tables,
                                  const ResampleSpec& spec, const PipelineFn& pipeline) {
  if (spec.n_resamples < 2) throw ConfigError("need at least 2 resamples");
  std::map<std::string, std::vector<double>> samples;
  ResampleSummary summary;
  for (int it = 0; it < spec.n_resamples; ++it) {
    std::mt19937_64 rng(substream_seed(spec.seed, static_cast<uint64_t>(it)));
    std::vector<CoincidenceTable> redrawn;
    redrawn.reserve(tables.size());
    for (const auto& t : tables) redrawn.push_back(redraw(t, rng));
    try {
      for (const auto& [name, value] : pipeline(redrawn)) samples[name].push_back(value);
    } catch (const std::exception&) {
      ++summary.n_failed;
    }
  }
  for (const auto& [name, vec] : samples) {
    ScalarStats st;
    st.n = static_cast<int>(vec.size());
    if (st.n == 0) continue;
    double mean = 0.0;
    for (double v : vec) mean += v;
    mean /= st.n;
    double var = 0.0;
    for (double v : vec) var += (v - mean) * (v - mean);
    st.mean = mean;
    st.sigma = st.n > 1 ? std::sqrt(var / (st.n - 1)) : 0.0;
    summary.stats[name] = st;
  }
  return summary;
}

}  // namespace qcert
