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

#ifndef QCERT_QSTATE_HPP
#define QCERT_QSTATE_HPP

#include <vector>

#include "qcert/complex_matrix.hpp"
#include "qcert/errors.hpp"

namespace qcert {

/// Schmidt coefficients lambda_m >= 0 with sum_m lambda_m^2 = 1, kept in the
/// order the caller supplied. The descending view sorts by value and breaks
/// ties by lower original index, so rank thresholds are deterministic under
/// degenerate spectra.
class SchmidtSpectrum {
 public:
  /// Requires |sum lambda^2 - 1| <= 1e-9 and lambda_m >= 0; small drift is
  /// rescaled away so downstream identities hold at machine precision.
  explicit SchmidtSpectrum(std::vector<double> lambdas);

  /// Rescales an arbitrary nonnegative vector to unit two-norm.
  static SchmidtSpectrum normalized(std::vector<double> lambdas);
  static SchmidtSpectrum uniform(int d);

  int dim() const { return static_cast<int>(lam_.size()); }
  double operator[](int m) const { return lam_[static_cast<size_t>(m)]; }
  const std::vector<double>& values() const { return lam_; }
  std::vector<double> sorted_desc() const;
  double sum() const;
  double min() const;
  bool is_uniform(double tol = 1e-9) const;
  /// Throws IncompleteBasisError naming the offending index if any
  /// lambda_m <= tol.
  void require_strictly_positive(double tol = 0.0) const;

 private:
  std::vector<double> lam_;
};

/// Dense system state rho on a tensor product of local spaces. Hermitian,
/// unit trace, positive semidefinite (eigenvalues >= -1e-10; strict 1e-12
/// tolerances accumulate arithmetic noise over d^2-term sums).
struct DensityMatrix {
  std::vector<int> dims;
  CMat mat;

  DensityMatrix(std::vector<int> local_dims, CMat m);

  int total_dim() const { return static_cast<int>(mat.rows()); }
  /// Full consistency check including the eigenvalue scan; throws
  /// NumericalError on violation. O(D^3), intended for tests and ingest
  /// of externally supplied matrices.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                double psd_tol = 1e-10) const;
};

/// |Phi><Phi| with |Phi> = sum_m lambda_m |mm> on dims [d, d].
DensityMatrix pure_target_state(const SchmidtSpectrum& lambda);

/// p |Phi+><Phi+| + (1-p)/d^2 * identity.
DensityMatrix isotropic_state(int d, double p);

/// p |Phi><Phi| + (1-p)/d sum_m |mm><mm|: the target state with its
/// off-diagonal coherences uniformly damped.
DensityMatrix dephased_state(const SchmidtSpectrum& lambda, double p);

/// Equal-weight mixture of the C(d,k) maximally entangled states on k-element
/// subsets of the standard basis. Schmidt number k; fidelity k/d to |Phi+>.
DensityMatrix rank_k_mixture(int d, int k);

/// |GHZ> = sum_i lambda_i |i>^(x n) on dims [d]*n. The dense representation
/// is capped at total dimension dim_cap.
DensityMatrix ghz_state(const SchmidtSpectrum& lambda, int n, int dim_cap = 4096);

/// Tr(|Phi><Phi| rho) for a rank-1 target; clamped to [0, 1].
double exact_fidelity(const DensityMatrix& rho, const DensityMatrix& target);

struct SchmidtDecomposition {
  std::vector<double> lambdas;  // descending
  CMat basis_a;                 // columns = left Schmidt vectors
  CMat basis_b;                 // columns = right Schmidt vectors
};

/// Decomposes a unit-norm pure state on dims [da, db] as
/// psi = sum_k lambda_k |a_k>|b_k>.
SchmidtDecomposition schmidt_decompose(const CVec& psi, int da, int db);

/// Entanglement entropy -sum lambda^2 log2 lambda^2 in ebits.
double entanglement_entropy(const CVec& psi, int da, int db);

}  // namespace qcert

#endif
