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

#ifndef QCERT_EXPSIM_HPP
#define QCERT_EXPSIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcert/bases.hpp"

namespace qcert {

struct MeasurementSetting {
  GlobalProductBasis basis;
  std::string label;
};

/// Per-mode detection efficiencies for the two arms, strictly positive.
struct LossModel {
  std::vector<double> eta_a;
  std::vector<double> eta_b;

  static LossModel unit(int d);
  void validate(int d) const;
};

/// Raw coincidence counts N_ij for one global filter setting, plus per-arm
/// singles. Only nonnegativity is enforced; real data may violate any
/// idealization.
struct CoincidenceTable {
  std::string label;
  int dim = 0;
  Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::vector<int64_t> singles_a;
  std::vector<int64_t> singles_b;
  double exposure = 1.0;
  nlohmann::json meta;

  int64_t total_counts() const;
};

/// p_ij = <a_i b_j | rho | a_i b_j> with arm B conjugated per the setting.
/// Sums to 1 for orthonormal product settings and to c_lambda for tilted
/// ones.
RMat setting_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Draws one coincidence table:
///   counts[i][j] ~ Poisson(pair_rate * exposure * probs[i][j] * eta_a[i] * eta_b[j]
///                          + accidental_rate * exposure)
///   singles_a[i] ~ Poisson(pair_rate * exposure * row_marginal_i * eta_a[i])
/// and analogously for arm B. Reproducible for a fixed seed; the substream is
/// derived from (seed, label).
CoincidenceTable sample_counts(const RMat& probs, double pair_rate, double exposure,
                               const LossModel& loss, double accidental_rate,
                               uint64_t seed, const std::string& label = "setting");

/// Orthonormal basis equal to the standard one except on the {i0, i1} plane,
/// where |i0'> = cos(t)|i0> + sin(t)|i1> and |i1'> = sin(t)|i0> - cos(t)|i1>.
LocalBasis rotated_standard_basis(int d, double theta, int i0 = 0, int i1 = 1);

nlohmann::json table_to_json(const CoincidenceTable& t);
CoincidenceTable table_from_json(const nlohmann::json& j);
std::string table_to_csv(const CoincidenceTable& t);
/// Parses the "i,j,count" CSV layout back into a table (no singles, unit
/// exposure); the label comes from the caller, usually the file stem.
CoincidenceTable table_from_csv(const std::string& label, const std::string& csv_text);

}  // namespace qcert

#endif
