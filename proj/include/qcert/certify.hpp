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

#ifndef QCERT_CERTIFY_HPP
#define QCERT_CERTIFY_HPP

#include <optional>

#include "qcert/estimate.hpp"

namespace qcert {

/// B_k: the largest fidelity to |Phi> any Schmidt-rank-k state can reach;
/// the sum of the k largest lambda^2. B_0 = 0, B_d = 1. Invariant under
/// permutations of lambda.
double b_k(const SchmidtSpectrum& lambda, int k);

/// Penalty coefficient gamma~ for the index quadruple (m, m', n, n'):
/// zero unless (m - m' - n + n') = 0 mod d, otherwise
/// sqrt(lambda_m lambda_n lambda_m' lambda_n') * |sum_{k<M} w^(k D)| / M
/// with D = m^2 - m'^2 - n^2 + n'^2. Requires m != m', m != n, n != n',
/// n' != m'.
double gamma_tilde(const SchmidtSpectrum& lambda, int m, int mp, int n, int np,
                   int M, int d);

/// Fidelity lower bound split into its measurable pieces:
///   f_tilde = f1 + f2_bound,
///   f2_bound = (sum lambda)^2 / d * sigma_M
///              - sum_{m,n} lambda_m lambda_n <mn|rho|mn> - gamma_penalty.
/// f1 is the diagonal part sum_m lambda_m^2 <mm|rho|mm>; sigma_M is the
/// average over the M tilted bases of the summed diagonal elements
/// sum_j <j~ j~* | rho | j~ j~*>. Negative values are reported as-is; they
/// carry information about the noise level.
struct FidelityBreakdown {
  double f1 = 0.0;
  double f2_bound = 0.0;
  double sigma_m = 0.0;
  double gamma_penalty = 0.0;
  int M = 1;
  double f_tilde = 0.0;
};

/// Bound from measured data: one standard-basis estimate plus tilted
/// estimates for k = 0..M-1 (each carrying its c_lambda normalization).
FidelityBreakdown fidelity_bound(const DiagonalEstimate& std_estimate,
                                 const std::vector<DiagonalEstimate>& tilted_estimates,
                                 const SchmidtSpectrum& lambda);

/// Same bound evaluated on exact matrix elements of rho (analytic mode, used
/// by the sweeps and the property tests).
FidelityBreakdown fidelity_bound_exact(const DensityMatrix& rho,
                                       const SchmidtSpectrum& lambda, int M);

/// max{k : f_tilde > B_{k-1}}, clamped to [1, d]. Any state trivially admits
/// k = 1; entanglement is certified only from 2 upward.
int certified_dimensionality(double f_tilde, const SchmidtSpectrum& lambda);

struct ReportFlags {
  bool nonprime_m_warning = false;   // M > 1 in non-prime d: no monotonicity guarantee
  bool incomplete_basis = false;     // nominated spectrum had a vanishing coefficient
  bool entanglement_certified = false;  // d_ent >= 2
  bool eof_supported = false;        // uniform-lambda certification only
};

struct CertificationReport {
  int d = 0;
  std::vector<double> lambda;
  int M = 1;
  double f_tilde = 0.0;
  std::optional<double> f_tilde_sigma;
  std::vector<double> thresholds;  // B_1 .. B_{d-1}
  int d_ent = 1;
  std::optional<double> eof_bound_ebits;
  std::optional<double> eof_sigma;
  FidelityBreakdown breakdown;
  ReportFlags flags;
  nlohmann::json provenance;
};

/// Full witness evaluation: fidelity bound, thresholds B_1..B_{d-1},
/// certified dimensionality, and (for uniform lambda) the entanglement-of-
/// formation bound.
CertificationReport certify(const DiagonalEstimate& std_estimate,
                            const std::vector<DiagonalEstimate>& tilted_estimates,
                            const SchmidtSpectrum& lambda,
                            std::optional<double> resample_sigma = std::nullopt);

/// Consistency residual |Sigma_direct - (Sigma_1 + Sigma_2 + Sigma_3)|, where
/// Sigma_direct = sum_j <j~ j~* | rho | j~ j~*> and the three parts are
/// evaluated from the standard-basis matrix elements of rho. Algebraically
/// zero for every state.
double sigma_decomposition_check(const DensityMatrix& rho, const SchmidtSpectrum& lambda);

/// I(rho) = sqrt(2/(d(d-1))) sum_{m!=n} (|<mm|rho|nn>| -
/// sqrt(<mn|rho|mn><nm|rho|nm>)). Lower-bounds the convex roof of the linear
/// entropy; may be negative.
double i_quantity(const DensityMatrix& rho);

/// Entanglement-of-formation lower bound in ebits against the maximally
/// entangled target, from measured data:
///   I_low = sqrt(2/(d(d-1))) (d f_tilde - sum_m <mm|rho|mm>
///           - sum_{m!=n} sqrt(<mn|rho|mn><nm|rho|nm>)),
///   EoF >= -log2(1 - I_low^2 / 2) when I_low > 0, else 0.
double eof_bound(const DiagonalEstimate& std_estimate, double f_tilde, int d);

/// Sum of gamma~^(M) over the constrained index set (m != m', m != n,
/// n != n', n' != m'). Nonincreasing in M for odd prime d and identically
/// zero at M = d there.
double f_of_M(const SchmidtSpectrum& lambda, int d, int M);

/// Visibility below which the EoF bound stops detecting entanglement of the
/// isotropic state: (d(d-1) + f) / (d(d^2-1) + f) with f = d * f_of_M(uniform).
/// Decreases with M and reaches the separability threshold 1/(d+1) when the
/// penalty vanishes.
double critical_visibility(int d, int M);

/// Critical visibility of the earlier two-basis EoF bound,
/// (d^2 - 3d + 4) / (d^2 - 2d + 4), for comparison.
double critical_visibility_bw(int d);

/// Multipartite fidelity bound against |GHZ_{lambda,n,d}> using the single
/// tilted element |0~>^(x n):
///   (sum_k lambda_k^(2/n))^n <0~|^n rho |0~>^n
///   - sum_{(a,b) not both correlated} lambda_a lambda_b sqrt(<a|rho|a><b|rho|b>).
/// Equals 1 exactly on the GHZ state itself.
double ghz_fidelity_bound(const DensityMatrix& rho, const SchmidtSpectrum& lambda, int n);

struct SweepPoint {
  double x = 0.0;        // swept parameter (visibility p or angle theta)
  double f_tilde = 0.0;
  int d_ent = 1;
  std::optional<double> eof_ebits;
};

/// Analytic-mode bound on isotropic states over a visibility grid.
std::vector<SweepPoint> isotropic_sweep(int d, const std::vector<double>& p_grid, int M);

/// Visibilities p_k at which the isotropic-state bound crosses B_k,
/// k = 1..d-1, located by bisection to 1e-9. NaN where no crossing exists in
/// [0, 1].
std::vector<double> isotropic_thresholds(int d, int M);

/// Visibility at which the isotropic-state EoF bound reaches zero, by
/// bisection.
double eof_zero_crossing(int d, int M);

/// Full adaptive pipeline on the two-qutrit maximally entangled state with
/// arm B's frame rotated by theta in the {0,1} plane: nominate lambda from
/// the rotated-frame data, build the tilted basis per party, and bound the
/// fidelity. Grid points where a nominated coefficient vanishes report
/// f_tilde = NaN and d_ent = 1.
std::vector<SweepPoint> rotation_sweep(const std::vector<double>& theta_grid, int M = 1);

/// Largest rotation angle up to which the swept pipeline still certifies the
/// full dimensionality d_ent = 3, located by bisection to 1e-9.
double rotation_full_rank_threshold(int M = 1);

nlohmann::json report_to_json(const CertificationReport& r);

}  // namespace qcert

#endif
