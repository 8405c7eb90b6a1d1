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

#ifndef QCERT_TESTS_HELPERS_HPP
#define QCERT_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "qcert/certify.hpp"
#include "qcert/rng.hpp"

namespace qcert::testing {

inline double gauss(std::mt19937_64& rng) {
  // Box-Muller on raw uniform words; deterministic across platforms.
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline CVec random_pure_state(int dim, std::mt19937_64& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cxd(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

/// Random pure state mixed with random diagonal noise.
inline DensityMatrix random_mixed_state(int d, std::mt19937_64& rng) {
  const CVec psi = random_pure_state(d * d, rng);
  const double w = 0.2 + 0.8 * uniform01(rng);
  RVec diag(d * d);
  for (int i = 0; i < d * d; ++i) diag(i) = uniform01(rng) + 1e-3;
  diag /= diag.sum();
  CMat m = w * (psi * psi.adjoint());
  for (int i = 0; i < d * d; ++i) m(i, i) += (1.0 - w) * diag(i);
  return DensityMatrix({d, d}, std::move(m));
}

inline SchmidtSpectrum random_spectrum(int d, std::mt19937_64& rng, double floor = 0.05) {
  std::vector<double> lam(static_cast<size_t>(d));
  for (double& x : lam) x = floor + (1.0 - floor) * uniform01(rng);
  return SchmidtSpectrum::normalized(std::move(lam));
}

inline SchmidtSpectrum nominated_from(const DensityMatrix& rho) {
  const int d = rho.dims[0];
  std::vector<double> lam(static_cast<size_t>(d));
  double total = 0.0;
  for (int m = 0; m < d; ++m)
    total += rho.mat(Eigen::Index(m) * d + m, Eigen::Index(m) * d + m).real();
  for (int m = 0; m < d; ++m)
    lam[size_t(m)] = std::sqrt(
        std::max(0.0, rho.mat(Eigen::Index(m) * d + m, Eigen::Index(m) * d + m).real()) / total);
  return SchmidtSpectrum::normalized(std::move(lam));
}

/// Exact (infinite statistics) estimates straight from the state.
inline DiagonalEstimate exact_standard_estimate(const DensityMatrix& rho) {
  const int d = rho.dims[0];
  MeasurementSetting s{correlation_setting(standard_basis(d)), "standard"};
  return DiagonalEstimate{"standard", setting_probabilities(rho, s), 1.0};
}

inline std::vector<DiagonalEstimate> exact_tilted_estimates(const DensityMatrix& rho,
                                                            const SchmidtSpectrum& lambda, int M) {
  std::vector<DiagonalEstimate> out;
  for (int k = 0; k < M; ++k) {
    MeasurementSetting s{correlation_setting(tilted_basis(lambda, k)), "tilt" + std::to_string(k)};
    RMat p = setting_probabilities(rho, s);
    out.push_back(DiagonalEstimate{s.label, p, p.sum()});
  }
  return out;
}

/// Noise-free table: expected counts rounded at a scale where rounding error
/// is negligible.
inline CoincidenceTable rounded_table(const RMat& probs, double total, const LossModel& loss,
                                      const std::string& label) {
  const int d = static_cast<int>(probs.rows());
  CoincidenceTable t;
  t.label = label;
  t.dim = d;
  t.exposure = 1.0;
  t.counts.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.counts(i, j) =
          std::llround(total * probs(i, j) * loss.eta_a[size_t(i)] * loss.eta_b[size_t(j)]);
  t.singles_a.resize(static_cast<size_t>(d));
  t.singles_b.resize(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    t.singles_a[size_t(i)] = std::llround(total * probs.row(i).sum() * loss.eta_a[size_t(i)]);
  for (int j = 0; j < d; ++j)
    t.singles_b[size_t(j)] = std::llround(total * probs.col(j).sum() * loss.eta_b[size_t(j)]);
  return t;
}

/// Singles exactly equal to the count marginals; makes the unit-efficiency
/// loss correction an exact algebraic identity.
inline void set_consistent_singles(CoincidenceTable& t) {
  t.singles_a.assign(static_cast<size_t>(t.dim), 0);
  t.singles_b.assign(static_cast<size_t>(t.dim), 0);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      t.singles_a[size_t(i)] += t.counts(i, j);
      t.singles_b[size_t(j)] += t.counts(i, j);
    }
}

}  // namespace qcert::testing

#endif
