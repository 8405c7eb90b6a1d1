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

#include "qcert/certify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qcert {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// |sum_{k=0}^{M-1} w^(k delta)| with w = exp(2 pi i / d), reduced in exact
// integer arithmetic. Exactly M when delta = 0 mod d and exactly 0 when a
// full period is summed over a nonzero residue.
double phase_sum_modulus(long long delta, int d, int M) {
  long long r = delta % d;
  if (r < 0) r += d;
  if (r == 0) return double(M);
  if (M % d == 0) return 0.0;
  cxd s = 0.0;
  for (int k = 0; k < M; ++k) {
    long long e = (static_cast<long long>(k) * r) % d;
    const double angle = 2.0 * std::numbers::pi * double(e) / double(d);
    s += cxd(std::cos(angle), std::sin(angle));
  }
  return std::abs(s);
}

// Summation in lexicographic (m, m', n, n') order for reproducibility.
template <typename Term>
double constrained_quadruple_sum(int d, Term term) {
  double total = 0.0;
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp) {
      if (mp == m) continue;
      for (int n = 0; n < d; ++n) {
        if (n == m) continue;
        for (int np = 0; np < d; ++np) {
          if (np == n || np == mp) continue;
          if (((m - mp - n + np) % d + d) % d != 0) continue;
          total += term(m, mp, n, np);
        }
      }
    }
  return total;
}

long long quad_exponent(int m, int mp, int n, int np) {
  return static_cast<long long>(m) * m - static_cast<long long>(mp) * mp -
         static_cast<long long>(n) * n + static_cast<long long>(np) * np;
}

double penalty_sum(const SchmidtSpectrum& lambda, int d, int M, const RMat& std_values) {
  return constrained_quadruple_sum(d, [&](int m, int mp, int n, int np) {
    const double g = std::sqrt(lambda[m] * lambda[n] * lambda[mp] * lambda[np]) *
                     phase_sum_modulus(quad_exponent(m, mp, n, np), d, M) / double(M);
    const double prod = std::max(0.0, std_values(m, n)) * std::max(0.0, std_values(mp, np));
    return g * std::sqrt(prod);
  });
}

FidelityBreakdown assemble_bound(const SchmidtSpectrum& lambda, const RMat& std_values,
                                 double sigma_m, int M) {
  const int d = lambda.dim();
  FidelityBreakdown b;
  b.M = M;
  b.sigma_m = sigma_m;
  for (int m = 0; m < d; ++m) b.f1 += lambda[m] * lambda[m] * std_values(m, m);
  double weighted = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) weighted += lambda[m] * lambda[n] * std_values(m, n);
  b.gamma_penalty = penalty_sum(lambda, d, M, std_values);
  const double s = lambda.sum();
  b.f2_bound = s * s / double(d) * sigma_m - weighted - b.gamma_penalty;
  b.f_tilde = b.f1 + b.f2_bound;
  return b;
}

// <mn|rho|mn> for a bipartite state in the standard product basis.
RMat standard_diagonal(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1])
    throw DimensionMismatch("expected a bipartite state with equal local dimensions");
  const int d = rho.dims[0];
  RMat p(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      p(m, n) = rho.mat(Eigen::Index(m) * d + n, Eigen::Index(m) * d + n).real();
  return p;
}

double tilted_sigma_exact(const DensityMatrix& rho, const SchmidtSpectrum& lambda, int M) {
  const int d = lambda.dim();
  double sigma = 0.0;
  for (int k = 0; k < M; ++k) {
    const LocalBasis tb = tilted_basis(lambda, k);
    for (int j = 0; j < d; ++j) {
      const CVec v = kron(CVec(tb.vector(j)), CVec(tb.vector(j).conjugate()));
      sigma += (v.adjoint() * rho.mat * v).value().real();
    }
  }
  return sigma / double(M);
}

}  // namespace

double b_k(const SchmidtSpectrum& lambda, int k) {
  const int d = lambda.dim();
  if (k < 0 || k > d) throw ConfigError("rank k must lie in 0..d");
  if (k == 0) return 0.0;
  const std::vector<double> sorted = lambda.sorted_desc();
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += sorted[size_t(i)] * sorted[size_t(i)];
  return s;
}

double gamma_tilde(const SchmidtSpectrum& lambda, int m, int mp, int n, int np,
                   int M, int d) {
  if (M < 1) throw ConfigError("M must be >= 1");
  if (d != lambda.dim()) throw DimensionMismatch("lambda length must equal d");
  auto in_range = [d](int i) { return i >= 0 && i < d; };
  if (!in_range(m) || !in_range(mp) || !in_range(n) || !in_range(np))
    throw ConfigError("gamma~ indices must lie in 0..d-1");
  if (m == mp || m == n || n == np || np == mp)
    throw ConfigError("gamma~ index constraints violated (m!=m', m!=n, n!=n', n'!=m')");
  if (((m - mp - n + np) % d + d) % d != 0) return 0.0;
  return std::sqrt(lambda[m] * lambda[n] * lambda[mp] * lambda[np]) *
         phase_sum_modulus(quad_exponent(m, mp, n, np), d, M) / double(M);
}

FidelityBreakdown fidelity_bound(const DiagonalEstimate& std_estimate,
                                 const std::vector<DiagonalEstimate>& tilted_estimates,
                                 const SchmidtSpectrum& lambda) {
  const int d = lambda.dim();
  if (std_estimate.dim() != d)
    throw DimensionMismatch("standard estimate dimension does not match lambda");
  if (tilted_estimates.empty()) throw ConfigError("at least one tilted estimate is required");
  double sigma = 0.0;
  for (const auto& est : tilted_estimates) {
    if (est.dim() != d) throw DimensionMismatch("tilted estimate dimension mismatch");
    for (int j = 0; j < d; ++j) sigma += est.values(j, j);
  }
  sigma /= double(tilted_estimates.size());
  return assemble_bound(lambda, std_estimate.values, sigma,
                        static_cast<int>(tilted_estimates.size()));
}

FidelityBreakdown fidelity_bound_exact(const DensityMatrix& rho,
                                       const SchmidtSpectrum& lambda, int M) {
  if (M < 1) throw ConfigError("M must be >= 1");
  const RMat p = standard_diagonal(rho);
  if (p.rows() != lambda.dim())
    throw DimensionMismatch("state dimension does not match lambda");
  return assemble_bound(lambda, p, tilted_sigma_exact(rho, lambda, M), M);
}

int certified_dimensionality(double f_tilde, const SchmidtSpectrum& lambda) {
  // Strict threshold comparison, with a guard of a few double-rounding ulps:
  // states sitting exactly on a threshold (the rank-k mixtures do) must not
  // certify the next rank on arithmetic noise. Statistical significance is
  // the resampled sigma's job, not this comparison's.
  constexpr double kArithGuard = 1e-12;
  const int d = lambda.dim();
  int dent = 1;
  for (int k = 1; k <= d; ++k)
    if (f_tilde > b_k(lambda, k - 1) + kArithGuard) dent = k;
  return dent;
}

CertificationReport certify(const DiagonalEstimate& std_estimate,
                            const std::vector<DiagonalEstimate>& tilted_estimates,
                            const SchmidtSpectrum& lambda,
                            std::optional<double> resample_sigma) {
  CertificationReport r;
  r.d = lambda.dim();
  r.lambda = lambda.values();
  r.M = static_cast<int>(tilted_estimates.size());
  r.breakdown = fidelity_bound(std_estimate, tilted_estimates, lambda);
  r.f_tilde = r.breakdown.f_tilde;
  r.f_tilde_sigma = resample_sigma;
  for (int k = 1; k < r.d; ++k) r.thresholds.push_back(b_k(lambda, k));
  r.d_ent = certified_dimensionality(r.f_tilde, lambda);
  r.flags.nonprime_m_warning = r.M > 1 && !is_prime(r.d);
  r.flags.incomplete_basis = lambda.min() <= 0.0;
  r.flags.entanglement_certified = r.d_ent >= 2;
  r.flags.eof_supported = lambda.is_uniform();
  if (r.flags.eof_supported)
    r.eof_bound_ebits = eof_bound(std_estimate, r.f_tilde, r.d);
  return r;
}

double sigma_decomposition_check(const DensityMatrix& rho, const SchmidtSpectrum& lambda) {
  lambda.require_strictly_positive();
  const int d = lambda.dim();
  const double direct = tilted_sigma_exact(rho, lambda, 1);
  const double s2 = lambda.sum() * lambda.sum();

  double sigma1 = 0.0;
  const RMat p = standard_diagonal(rho);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) sigma1 += lambda[m] * lambda[n] * p(m, n);
  sigma1 *= double(d) / s2;

  double sigma2 = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      if (m == n) continue;
      sigma2 += lambda[m] * lambda[n] *
                rho.mat(Eigen::Index(m) * d + m, Eigen::Index(n) * d + n).real();
    }
  sigma2 *= double(d) / s2;

  // Surviving cross terms: the full period sum contributes d whenever the
  // phase condition holds, and the pairing (m,n) <-> (m',n') makes the total
  // real.
  double sigma3 = constrained_quadruple_sum(d, [&](int m, int mp, int n, int np) {
    const cxd el = rho.mat(Eigen::Index(mp) * d + np, Eigen::Index(m) * d + n);
    return std::sqrt(lambda[m] * lambda[n] * lambda[mp] * lambda[np]) * el.real();
  });
  sigma3 *= double(d) / s2;

  return std::abs(direct - (sigma1 + sigma2 + sigma3));
}

double i_quantity(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1])
    throw DimensionMismatch("I(rho) needs a bipartite state with equal local dimensions");
  const int d = rho.dims[0];
  if (d < 2) throw ConfigError("I(rho) needs local dimension >= 2");
  double s = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      if (m == n) continue;
      const double coh =
          std::abs(rho.mat(Eigen::Index(m) * d + m, Eigen::Index(n) * d + n));
      const double pmn = std::max(0.0, rho.mat(Eigen::Index(m) * d + n, Eigen::Index(m) * d + n).real());
      const double pnm = std::max(0.0, rho.mat(Eigen::Index(n) * d + m, Eigen::Index(n) * d + m).real());
      s += coh - std::sqrt(pmn * pnm);
    }
  return std::sqrt(2.0 / (double(d) * double(d - 1))) * s;
}

double eof_bound(const DiagonalEstimate& std_estimate, double f_tilde, int d) {
  if (d < 2) throw ConfigError("EoF bound needs local dimension >= 2");
  if (std_estimate.dim() != d) throw DimensionMismatch("estimate dimension does not match d");
  double diag = 0.0;
  double cross = 0.0;
  for (int m = 0; m < d; ++m) {
    diag += std_estimate.values(m, m);
    for (int n = 0; n < d; ++n) {
      if (m == n) continue;
      cross += std::sqrt(std::max(0.0, std_estimate.values(m, n)) *
                         std::max(0.0, std_estimate.values(n, m)));
    }
  }
  const double i_low =
      std::sqrt(2.0 / (double(d) * double(d - 1))) * (double(d) * f_tilde - diag - cross);
  if (i_low <= 0.0) return 0.0;
  const double arg = 1.0 - 0.5 * i_low * i_low;
  if (!(arg > 0.0)) throw NumericalError("EoF bound argument left the log domain");
  return -std::log2(arg);
}

double f_of_M(const SchmidtSpectrum& lambda, int d, int M) {
  if (M < 1) throw ConfigError("M must be >= 1");
  if (d != lambda.dim()) throw DimensionMismatch("lambda length must equal d");
  return constrained_quadruple_sum(d, [&](int m, int mp, int n, int np) {
    return std::sqrt(lambda[m] * lambda[n] * lambda[mp] * lambda[np]) *
           phase_sum_modulus(quad_exponent(m, mp, n, np), d, M) / double(M);
  });
}

double critical_visibility(int d, int M) {
  if (d < 2) throw ConfigError("critical visibility needs d >= 2");
  const double f = double(d) * f_of_M(SchmidtSpectrum::uniform(d), d, M);
  return (double(d) * (d - 1) + f) / (double(d) * (double(d) * d - 1) + f);
}

double critical_visibility_bw(int d) {
  if (d < 2) throw ConfigError("critical visibility needs d >= 2");
  return (double(d) * d - 3.0 * d + 4.0) / (double(d) * d - 2.0 * d + 4.0);
}

double ghz_fidelity_bound(const DensityMatrix& rho, const SchmidtSpectrum& lambda, int n) {
  const int d = lambda.dim();
  if (static_cast<int>(rho.dims.size()) != n)
    throw DimensionMismatch("state does not have n parties");
  for (int dim : rho.dims)
    if (dim != d) throw DimensionMismatch("every party must have local dimension d");
  lambda.require_strictly_positive();

  double sum_pow = 0.0;
  for (int i = 0; i < d; ++i) sum_pow += std::pow(lambda[i], 2.0 / double(n));

  // |0~> for the n-party family; its n-fold product picks up every matrix
  // element of rho.
  CVec t0(d);
  for (int m = 0; m < d; ++m) t0(m) = std::pow(lambda[m], 1.0 / double(n)) / std::sqrt(sum_pow);
  CVec v = t0;
  for (int q = 1; q < n; ++q) v = kron(v, t0);
  const double first = std::pow(sum_pow, double(n)) * (v.adjoint() * rho.mat * v).value().real();

  // sum over multi-index pairs where not both are fully correlated:
  // (sum_a w_a)^2 - (sum over correlated a w_a)^2 with w_a = lambda_a sqrt(<a|rho|a>).
  const Eigen::Index D = rho.mat.rows();
  double t_all = 0.0;
  double t_eq = 0.0;
  std::vector<int> digits(static_cast<size_t>(n), 0);
  for (Eigen::Index idx = 0; idx < D; ++idx) {
    Eigen::Index rem = idx;
    bool all_equal = true;
    double lam_alpha = 1.0;
    for (int q = n - 1; q >= 0; --q) {
      digits[size_t(q)] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (int q = 0; q < n; ++q) {
      lam_alpha *= std::pow(lambda[digits[size_t(q)]], 1.0 / double(n));
      if (digits[size_t(q)] != digits[0]) all_equal = false;
    }
    const double w = lam_alpha * std::sqrt(std::max(0.0, rho.mat(idx, idx).real()));
    t_all += w;
    if (all_equal) t_eq += w;
  }
  const double penalty = t_all * t_all - t_eq * t_eq;
  return first - penalty;
}

std::vector<SweepPoint> isotropic_sweep(int d, const std::vector<double>& p_grid, int M) {
  const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    const DensityMatrix rho = isotropic_state(d, p);
    const FidelityBreakdown b = fidelity_bound_exact(rho, unif, M);
    SweepPoint pt;
    pt.x = p;
    pt.f_tilde = b.f_tilde;
    pt.d_ent = certified_dimensionality(b.f_tilde, unif);
    DiagonalEstimate exact_std{"standard", standard_diagonal(rho), 1.0};
    pt.eof_ebits = eof_bound(exact_std, b.f_tilde, d);
    out.push_back(pt);
  }
  return out;
}

namespace {

double isotropic_f_tilde(int d, double p, int M) {
  return fidelity_bound_exact(isotropic_state(d, p), SchmidtSpectrum::uniform(d), M).f_tilde;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) return std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> isotropic_thresholds(int d, int M) {
  const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
  std::vector<double> out;
  for (int k = 1; k < d; ++k) {
    const double target = b_k(unif, k);
    out.push_back(bisect_root(
        [&](double p) { return isotropic_f_tilde(d, p, M) - target; }, 0.0, 1.0));
  }
  return out;
}

double eof_zero_crossing(int d, int M) {
  const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
  auto i_low = [&](double p) {
    const DensityMatrix rho = isotropic_state(d, p);
    const double ft = fidelity_bound_exact(rho, unif, M).f_tilde;
    const RMat v = standard_diagonal(rho);
    double diag = 0.0;
    double cross = 0.0;
    for (int m = 0; m < d; ++m) {
      diag += v(m, m);
      for (int n = 0; n < d; ++n)
        if (m != n) cross += std::sqrt(v(m, n) * v(n, m));
    }
    return double(d) * ft - diag - cross;
  };
  return bisect_root(i_low, 0.0, 1.0);
}

std::vector<SweepPoint> rotation_sweep(const std::vector<double>& theta_grid, int M) {
  const int d = 3;
  const DensityMatrix rho = pure_target_state(SchmidtSpectrum::uniform(d));
  std::vector<SweepPoint> out;
  out.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    // Arm B's frame, continuously connected to the standard one at theta = 0.
    // The projectors match rotated_standard_basis; the sign of the second
    // vector fixes the frame phases so the nominated target is in phase with
    // the state at zero rotation.
    LocalBasis bob = rotated_standard_basis(d, theta);
    bob.vectors.col(1) = -bob.vectors.col(1);

    RMat p(d, d);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) {
        const CVec v = kron(CVec(CMat::Identity(d, d).col(m)), CVec(bob.vector(n).conjugate()));
        p(m, n) = std::max(0.0, (v.adjoint() * rho.mat * v).value().real());
      }

    SweepPoint pt;
    pt.x = theta;
    double diag_sum = 0.0;
    double diag_min = 1.0;
    for (int m = 0; m < d; ++m) {
      diag_sum += p(m, m);
      diag_min = std::min(diag_min, p(m, m));
    }
    if (diag_min / diag_sum < 1e-12) {
      // A nominated coefficient vanishes; the tilted bases stop being complete.
      pt.f_tilde = std::numeric_limits<double>::quiet_NaN();
      pt.d_ent = 1;
      out.push_back(pt);
      continue;
    }
    std::vector<double> lam_raw(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) lam_raw[size_t(m)] = std::sqrt(p(m, m) / diag_sum);
    const SchmidtSpectrum lam = SchmidtSpectrum::normalized(lam_raw);

    double sigma = 0.0;
    for (int k = 0; k < M; ++k) {
      const LocalBasis tb = tilted_basis(lam, k);
      for (int j = 0; j < d; ++j) {
        const CVec va = tb.vector(j);
        const CVec vb = bob.vectors * tb.vector(j).conjugate();
        const CVec v = kron(va, vb);
        sigma += (v.adjoint() * rho.mat * v).value().real();
      }
    }
    sigma /= double(M);

    const FidelityBreakdown b = assemble_bound(lam, p, sigma, M);
    pt.f_tilde = b.f_tilde;
    pt.d_ent = certified_dimensionality(b.f_tilde, lam);
    out.push_back(pt);
  }
  return out;
}

double rotation_full_rank_threshold(int M) {
  auto full_rank = [&](double theta) { return rotation_sweep({theta}, M)[0].d_ent == 3; };
  double lo = 0.0;
  double hi = std::numbers::pi / 2.0 - 1e-9;
  if (!full_rank(lo)) return 0.0;
  if (full_rank(hi)) return hi;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (full_rank(mid)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

nlohmann::json report_to_json(const CertificationReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["d"] = r.d;
  j["lambda"] = r.lambda;
  j["M"] = r.M;
  j["f_tilde"] = r.f_tilde;
  if (r.f_tilde_sigma) j["f_tilde_sigma"] = *r.f_tilde_sigma;
  j["thresholds"] = r.thresholds;
  j["d_ent"] = r.d_ent;
  if (r.eof_bound_ebits) j["eof_bound_ebits"] = *r.eof_bound_ebits;
  if (r.eof_sigma) j["eof_sigma"] = *r.eof_sigma;
  j["breakdown"] = {{"f1", r.breakdown.f1},
                    {"f2_bound", r.breakdown.f2_bound},
                    {"sigma_M", r.breakdown.sigma_m},
                    {"gamma_penalty", r.breakdown.gamma_penalty}};
  j["flags"] = {{"nonprime_M_warning", r.flags.nonprime_m_warning},
                {"incomplete_basis", r.flags.incomplete_basis},
                {"entanglement_certified", r.flags.entanglement_certified},
                {"eof_supported", r.flags.eof_supported}};
  j["provenance"] = r.provenance;
  return j;
}

}  // namespace qcert
