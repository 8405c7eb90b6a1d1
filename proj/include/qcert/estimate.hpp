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

#ifndef QCERT_ESTIMATE_HPP
#define QCERT_ESTIMATE_HPP

#include <functional>
#include <map>
#include <optional>

#include "qcert/expsim.hpp"

namespace qcert {

/// Estimated diagonal matrix elements <a_i b_j | rho | a_i b_j> for one
/// setting. `normalization` is 1 for orthonormal settings and c_lambda for
/// tilted ones; the values sum to it by construction.
struct DiagonalEstimate {
  std::string label;
  RMat values;
  double normalization = 1.0;

  int dim() const { return static_cast<int>(values.rows()); }
};

nlohmann::json estimate_to_json(const DiagonalEstimate& e);

/// values = N_mn / sum N_kl for an orthonormal product setting.
DiagonalEstimate estimate_standard(const CoincidenceTable& table);

/// values = c_lambda * N~_ij / sum N~_kl. c_lambda is always computed from
/// the standard-basis estimate of the same data set, never from theory.
DiagonalEstimate estimate_tilted(const CoincidenceTable& table, const SchmidtSpectrum& lambda,
                                 const DiagonalEstimate& std_estimate);

struct LossCorrection {
  RMat corrected;              // <ij|rho|ij>, renormalized to sum 1
  double pair_number = 0.0;    // inferred number of pairs in the exposure window
  double consistency_spread = 0.0;  // relative spread of the per-row pair-number estimates
};

/// Removes mode-dependent loss using singles: with M_ij = C_ij / (S_i^A S_j^B),
/// the per-mode efficiencies cancel and the diagonal elements follow from the
/// row/column sums of M^-1. Requires strictly positive singles and a
/// well-conditioned M (condition number <= cond_limit); fails loudly
/// otherwise rather than regularizing.
LossCorrection loss_correct(const CoincidenceTable& table, double cond_limit = 1e12);

/// lambda_m = sqrt(<mm|rho|mm> / sum_n <nn|rho|nn>) from standard-basis data.
SchmidtSpectrum nominate_target(const DiagonalEstimate& std_estimate);

struct ResampleSpec {
  int n_resamples = 1000;
  uint64_t seed = 0;
};

struct ScalarStats {
  double mean = 0.0;
  double sigma = 0.0;
  int n = 0;
};

struct ResampleSummary {
  std::map<std::string, ScalarStats> stats;
  int n_failed = 0;  // pipeline failures are counted, not dropped silently
};

using PipelineScalars = std::map<std::string, double>;
using PipelineFn = std::function<PipelineScalars(const std::vector<CoincidenceTable>&)>;

/// Parametric bootstrap: every count (coincidences and singles) is redrawn
/// Poisson(observed), the full pipeline reruns, and the sample mean and
/// standard deviation of each reported scalar are returned. Iteration i uses
/// the substream (spec.seed, i), so results do not depend on evaluation
/// order. Cells with zero observed counts stay zero (Poisson(0)).
ResampleSummary resample_pipeline(const std::vector<CoincidenceTable>& tables,
                                  const ResampleSpec& spec, const PipelineFn& pipeline);

}  // namespace qcert

#endif
