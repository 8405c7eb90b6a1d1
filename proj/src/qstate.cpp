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

#include "qcert/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcert {

namespace {

double two_norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> lambdas) : lam_(std::move(lambdas)) {
  if (lam_.empty()) throw ConfigError("Schmidt spectrum must be non-empty");
  for (double x : lam_)
    if (!(x >= 0.0)) throw ConfigError("Schmidt coefficients must be nonnegative");
  const double n2 = two_norm_sq(lam_);
  if (std::abs(n2 - 1.0) > 1e-9)
    throw ConfigError("Schmidt spectrum not normalized: sum lambda^2 = " + std::to_string(n2));
  const double scale = 1.0 / std::sqrt(n2);
  for (double& x : lam_) x *= scale;
}

SchmidtSpectrum SchmidtSpectrum::normalized(std::vector<double> lambdas) {
  const double n2 = two_norm_sq(lambdas);
  if (!(n2 > 0.0)) throw ConfigError("cannot normalize an all-zero spectrum");
  const double scale = 1.0 / std::sqrt(n2);
  for (double& x : lambdas) x *= scale;
  return SchmidtSpectrum(std::move(lambdas));
}

SchmidtSpectrum SchmidtSpectrum::uniform(int d) {
  if (d < 1) throw ConfigError("dimension must be >= 1");
  return SchmidtSpectrum(std::vector<double>(static_cast<size_t>(d), 1.0 / std::sqrt(double(d))));
}

std::vector<double> SchmidtSpectrum::sorted_desc() const {
  std::vector<int> idx(lam_.size());
  std::iota(idx.begin(), idx.end(), 0);
  // ties broken by lower original index
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return lam_[size_t(a)] > lam_[size_t(b)]; });
  std::vector<double> out(lam_.size());
  for (size_t i = 0; i < idx.size(); ++i) out[i] = lam_[size_t(idx[i])];
  return out;
}

double SchmidtSpectrum::sum() const { return std::accumulate(lam_.begin(), lam_.end(), 0.0); }

double SchmidtSpectrum::min() const { return *std::min_element(lam_.begin(), lam_.end()); }

bool SchmidtSpectrum::is_uniform(double tol) const {
  const double u = 1.0 / std::sqrt(double(dim()));
  for (double x : lam_)
    if (std::abs(x - u) > tol) return false;
  return true;
}

void SchmidtSpectrum::require_strictly_positive(double tol) const {
  for (int m = 0; m < dim(); ++m)
    if (lam_[size_t(m)] <= tol)
      throw IncompleteBasisError("incomplete tilted basis: lambda_" + std::to_string(m) +
                                 " vanishes; truncate the space explicitly instead");
}

DensityMatrix::DensityMatrix(std::vector<int> local_dims, CMat m)
    : dims(std::move(local_dims)), mat(std::move(m)) {
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw ConfigError("local dimensions must be positive");
    total *= d;
  }
  if (mat.rows() != mat.cols() || mat.rows() != total)
    throw DimensionMismatch("density matrix size does not match product of local dimensions");
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
  if (hermiticity_defect(mat) > herm_tol)
    throw NumericalError("density matrix is not Hermitian within tolerance");
  if (std::abs(mat.trace().real() - 1.0) > trace_tol || std::abs(mat.trace().imag()) > trace_tol)
    throw NumericalError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw NumericalError("density matrix has an eigenvalue below -tolerance");
}

DensityMatrix pure_target_state(const SchmidtSpectrum& lambda) {
  const int d = lambda.dim();
  CVec phi = CVec::Zero(Eigen::Index(d) * d);
  for (int m = 0; m < d; ++m) phi(Eigen::Index(m) * d + m) = lambda[m];
  return DensityMatrix({d, d}, phi * phi.adjoint());
}

DensityMatrix isotropic_state(int d, double p) {
  if (d < 1) throw ConfigError("dimension must be >= 1");
  if (p < 0.0 || p > 1.0) throw ConfigError("visibility p must lie in [0, 1]");
  DensityMatrix pure = pure_target_state(SchmidtSpectrum::uniform(d));
  CMat m = p * pure.mat + (1.0 - p) / double(d) / double(d) * CMat::Identity(d * d, d * d);
  return DensityMatrix({d, d}, std::move(m));
}

DensityMatrix dephased_state(const SchmidtSpectrum& lambda, double p) {
  if (p < 0.0 || p > 1.0) throw ConfigError("visibility p must lie in [0, 1]");
  const int d = lambda.dim();
  DensityMatrix pure = pure_target_state(lambda);
  CMat m = p * pure.mat;
  for (int k = 0; k < d; ++k) {
    const Eigen::Index i = Eigen::Index(k) * d + k;
    m(i, i) += (1.0 - p) / double(d);
  }
  return DensityMatrix({d, d}, std::move(m));
}

DensityMatrix rank_k_mixture(int d, int k) {
  if (d < 1) throw ConfigError("dimension must be >= 1");
  if (k < 1 || k > d) throw ConfigError("rank k must lie in 1..d");
  // Closed form of the subset average: <mn|rho|mn> = delta_mn / d and
  // <mm|rho|nn> = (k-1)/(d(d-1)) for m != n.
  CMat m = CMat::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Eigen::Index ia = Eigen::Index(a) * d + a;
      const Eigen::Index ib = Eigen::Index(b) * d + b;
      m(ia, ib) = (a == b) ? 1.0 / double(d)
                           : double(k - 1) / (double(d) * double(d - 1));
    }
  }
  return DensityMatrix({d, d}, std::move(m));
}

DensityMatrix ghz_state(const SchmidtSpectrum& lambda, int n, int dim_cap) {
  if (n < 2) throw ConfigError("GHZ states need at least two parties");
  const int d = lambda.dim();
  double total = 1.0;
  for (int q = 0; q < n; ++q) total *= double(d);
  if (total > double(dim_cap))
    throw ConfigError("d^n = " + std::to_string(static_cast<long long>(total)) +
                      " exceeds the dense-representation cap of " + std::to_string(dim_cap));
  const Eigen::Index D = static_cast<Eigen::Index>(total);
  CVec psi = CVec::Zero(D);
  for (int i = 0; i < d; ++i) {
    Eigen::Index idx = 0;
    for (int q = 0; q < n; ++q) idx = idx * d + i;
    psi(idx) = lambda[i];
  }
  return DensityMatrix(std::vector<int>(static_cast<size_t>(n), d), psi * psi.adjoint());
}

double exact_fidelity(const DensityMatrix& rho, const DensityMatrix& target) {
  if (rho.total_dim() != target.total_dim())
    throw DimensionMismatch("state and target dimensions differ");
  const double purity = (target.mat * target.mat).trace().real();
  if (std::abs(purity - 1.0) > 1e-9)
    throw ConfigError("fidelity target must be a rank-1 projector");
  double f = (target.mat * rho.mat).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

SchmidtDecomposition schmidt_decompose(const CVec& psi, int da, int db) {
  if (psi.size() != Eigen::Index(da) * db)
    throw DimensionMismatch("state vector length does not match da*db");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw ConfigError("Schmidt decomposition requires a unit-norm state");
  CMat amp(da, db);
  for (int m = 0; m < da; ++m)
    for (int n = 0; n < db; ++n) amp(m, n) = psi(Eigen::Index(m) * db + n);
  Eigen::JacobiSVD<CMat> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& s = svd.singularValues();
  out.lambdas.assign(s.data(), s.data() + s.size());
  out.basis_a = svd.matrixU();
  // psi = sum_k s_k |u_k> (x) |conj(v_k)>
  out.basis_b = svd.matrixV().conjugate();
  return out;
}

double entanglement_entropy(const CVec& psi, int da, int db) {
  SchmidtDecomposition sd = schmidt_decompose(psi, da, db);
  double ebits = 0.0;
  for (double lam : sd.lambdas) {
    const double p = lam * lam;
    if (p > 1e-15) ebits -= p * std::log2(p);
  }
  return ebits;
}

}  // namespace qcert
