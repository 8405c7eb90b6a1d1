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

#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"

using namespace qcert;
using namespace qcert::testing;

static const std::vector<double> kLambda11 = {0.255, 0.259, 0.292, 0.315, 0.335, 0.349,
                                              0.339, 0.316, 0.305, 0.272, 0.260};

TEST_CASE("rank thresholds B_k") {
  const SchmidtSpectrum unif11 = SchmidtSpectrum::uniform(11);
  CHECK(b_k(unif11, 8) == doctest::Approx(8.0 / 11).epsilon(1e-12));
  CHECK(b_k(unif11, 9) == doctest::Approx(9.0 / 11).epsilon(1e-12));
  CHECK(b_k(unif11, 0) == 0.0);
  CHECK(b_k(unif11, 11) == doctest::Approx(1.0).epsilon(1e-12));

  const SchmidtSpectrum fix = SchmidtSpectrum::normalized(kLambda11);
  CHECK(std::abs(b_k(fix, 7) - 0.72) < 0.01);
  CHECK(b_k(fix, 7) > b_k(unif11, 7));

  // Nondecreasing in k and invariant under permutations.
  std::mt19937_64 rng(61);
  const SchmidtSpectrum lam = random_spectrum(6, rng);
  std::vector<double> shuffled = lam.values();
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[1], shuffled[4]);
  const SchmidtSpectrum perm = SchmidtSpectrum::normalized(shuffled);
  for (int k = 0; k < 6; ++k) {
    CHECK(b_k(lam, k) <= b_k(lam, k + 1) + 1e-15);
    CHECK(b_k(lam, k) == doctest::Approx(b_k(perm, k)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(b_k(lam, 7), ConfigError);
}

TEST_CASE("gamma~ coefficients") {
  const SchmidtSpectrum unif7 = SchmidtSpectrum::uniform(7);
  // Vanishes off the modular surface.
  CHECK(gamma_tilde(unif7, 0, 1, 2, 4, 1, 7) == 0.0);
  // M = 1 admissible value is the plain product of roots.
  const SchmidtSpectrum lam = SchmidtSpectrum::normalized({1, 2, 3});
  CHECK(gamma_tilde(lam, 0, 1, 1, 2, 1, 3) ==
        doctest::Approx(std::sqrt(lam[0] * lam[1] * lam[1] * lam[2])).epsilon(1e-12));
  // Full period kills every admissible quadruple in odd prime dimension.
  CHECK(gamma_tilde(unif7, 0, 1, 1, 2, 7, 7) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_tilde(unif7, 1, 1, 2, 3, 1, 7), ConfigError);
}

TEST_CASE("fidelity bound: tightness and soundness") {
  std::mt19937_64 rng(67);

  SUBCASE("exact on the pure target state") {
    for (int d = 2; d <= 6; ++d) {
      const SchmidtSpectrum lam = random_spectrum(d, rng);
      const FidelityBreakdown b = fidelity_bound_exact(pure_target_state(lam), lam, 1);
      CHECK(b.f_tilde == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("exact on dephased target states") {
    for (int d = 2; d <= 6; ++d) {
      const SchmidtSpectrum lam = random_spectrum(d, rng);
      const double p = uniform01(rng);
      const DensityMatrix rho = dephased_state(lam, p);
      const double f = exact_fidelity(rho, pure_target_state(lam));
      CHECK(fidelity_bound_exact(rho, lam, 1).f_tilde == doctest::Approx(f).epsilon(1e-10));
    }
  }

  SUBCASE("isotropic crossing point at d = 3") {
    const double f = fidelity_bound_exact(isotropic_state(3, 0.75), SchmidtSpectrum::uniform(3), 1)
                         .f_tilde;
    CHECK(f == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("never exceeds the exact fidelity") {
    for (int d = 2; d <= 5; ++d) {
      for (int rep = 0; rep < 30; ++rep) {
        const DensityMatrix rho = random_mixed_state(d, rng);
        const SchmidtSpectrum lam = nominated_from(rho);
        const double f = exact_fidelity(rho, pure_target_state(lam));
        for (int M : {1, 2, d})
          CHECK(fidelity_bound_exact(rho, lam, M).f_tilde <= f + 1e-9);
      }
    }
  }

  SUBCASE("monotone in the number of bases for odd primes") {
    for (int d : {3, 5}) {
      for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = random_mixed_state(d, rng);
        const SchmidtSpectrum lam = nominated_from(rho);
        double prev = -1e9;
        for (int M = 1; M <= d; ++M) {
          const double f = fidelity_bound_exact(rho, lam, M).f_tilde;
          CHECK(f >= prev - 1e-12);
          prev = f;
        }
        CHECK(prev == doctest::Approx(exact_fidelity(rho, pure_target_state(lam))).epsilon(1e-9));
      }
    }
  }

  SUBCASE("breakdown recombines") {
    const DensityMatrix rho = random_mixed_state(4, rng);
    const SchmidtSpectrum lam = nominated_from(rho);
    const FidelityBreakdown b = fidelity_bound_exact(rho, lam, 2);
    const RMat v = exact_standard_estimate(rho).values;
    double weighted = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) weighted += lam[m] * lam[n] * v(m, n);
    const double s = lam.sum();
    CHECK(b.f2_bound ==
          doctest::Approx(s * s / 4.0 * b.sigma_m - weighted - b.gamma_penalty).epsilon(1e-12));
    CHECK(b.f_tilde == doctest::Approx(b.f1 + b.f2_bound).epsilon(1e-12));
    CHECK(b.f_tilde <= 1.0 + 1e-9);
  }

  SUBCASE("estimate path agrees with the exact path") {
    for (int d = 2; d <= 5; ++d) {
      const DensityMatrix rho = random_mixed_state(d, rng);
      const SchmidtSpectrum lam = random_spectrum(d, rng);
      const FidelityBreakdown exact = fidelity_bound_exact(rho, lam, 2);
      const FidelityBreakdown data =
          fidelity_bound(exact_standard_estimate(rho), exact_tilted_estimates(rho, lam, 2), lam);
      CHECK(data.f_tilde == doctest::Approx(exact.f_tilde).epsilon(1e-12));
    }
  }
}

TEST_CASE("certified dimensionality") {
  const SchmidtSpectrum unif11 = SchmidtSpectrum::uniform(11);
  CHECK(certified_dimensionality(0.748, unif11) == 9);
  CHECK(certified_dimensionality(1.0, unif11) == 11);
  CHECK(certified_dimensionality(-0.2, unif11) == 1);
  // Sitting exactly on a threshold does not certify the next rank.
  CHECK(certified_dimensionality(b_k(unif11, 5), unif11) == 5);
}

TEST_CASE("certification report") {
  std::mt19937_64 rng(71);
  const DensityMatrix rho = isotropic_state(4, 0.9);
  const SchmidtSpectrum unif = SchmidtSpectrum::uniform(4);
  const CertificationReport r =
      certify(exact_standard_estimate(rho), exact_tilted_estimates(rho, unif, 2), unif);
  CHECK(r.d == 4);
  CHECK(r.M == 2);
  CHECK(r.thresholds.size() == 3);
  CHECK(r.flags.nonprime_m_warning);  // d = 4, M = 2
  CHECK(r.flags.eof_supported);
  CHECK(r.flags.entanglement_certified);
  CHECK(r.eof_bound_ebits.has_value());
  CHECK(*r.eof_bound_ebits > 0.0);

  const SchmidtSpectrum lam = random_spectrum(4, rng);
  const DensityMatrix pure = pure_target_state(lam);
  const CertificationReport r2 =
      certify(exact_standard_estimate(pure), exact_tilted_estimates(pure, lam, 1), lam);
  CHECK_FALSE(r2.flags.nonprime_m_warning);
  CHECK_FALSE(r2.flags.eof_supported);
  CHECK_FALSE(r2.eof_bound_ebits.has_value());
  CHECK(r2.d_ent == 4);

  const nlohmann::json j = report_to_json(r);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("d_ent") == r.d_ent);
  CHECK(j.at("flags").at("nonprime_M_warning") == true);
}

TEST_CASE("sigma decomposition identity") {
  std::mt19937_64 rng(73);
  for (int d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = random_mixed_state(d, rng);
      const SchmidtSpectrum lam = random_spectrum(d, rng);
      CHECK(sigma_decomposition_check(rho, lam) < 1e-10);
    }
  }
  // Maximally entangled state: the identity reduces to the first two parts.
  CHECK(sigma_decomposition_check(pure_target_state(SchmidtSpectrum::uniform(4)),
                                  SchmidtSpectrum::uniform(4)) < 1e-12);

  // Diagonal states exercise only the first contribution.
  RVec diag(9);
  std::mt19937_64 rng2(74);
  for (int i = 0; i < 9; ++i) diag(i) = uniform01(rng2) + 0.01;
  diag /= diag.sum();
  const DensityMatrix diag_rho({3, 3}, CMat(diag.cast<cxd>().asDiagonal()));
  CHECK(sigma_decomposition_check(diag_rho, random_spectrum(3, rng2)) < 1e-12);
}

TEST_CASE("I quantity") {
  for (int d = 2; d <= 6; ++d) {
    const DensityMatrix phi = pure_target_state(SchmidtSpectrum::uniform(d));
    CHECK(i_quantity(phi) == doctest::Approx(std::sqrt(2.0 * (d - 1) / d)).epsilon(1e-12));
  }

  // Separable diagonal states have no coherences to reward.
  std::mt19937_64 rng(79);
  RVec diag(16);
  for (int i = 0; i < 16; ++i) diag(i) = uniform01(rng) + 0.01;
  diag /= diag.sum();
  const DensityMatrix sep({4, 4}, CMat(diag.cast<cxd>().asDiagonal()));
  CHECK(i_quantity(sep) <= 0.0);

  // Singlet measured in the same-basis convention.
  CVec singlet = CVec::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const DensityMatrix psi_minus({2, 2}, singlet * singlet.adjoint());
  CHECK(i_quantity(psi_minus) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("entanglement-of-formation bound") {
  // Two-qubit maximally entangled state certifies one full ebit.
  const DensityMatrix phi2 = pure_target_state(SchmidtSpectrum::uniform(2));
  const double f2 = fidelity_bound_exact(phi2, SchmidtSpectrum::uniform(2), 1).f_tilde;
  CHECK(eof_bound(exact_standard_estimate(phi2), f2, 2) == doctest::Approx(1.0).epsilon(1e-9));

  for (int d = 3; d <= 6; ++d) {
    const DensityMatrix phi = pure_target_state(SchmidtSpectrum::uniform(d));
    const double f = fidelity_bound_exact(phi, SchmidtSpectrum::uniform(d), 1).f_tilde;
    const double e = eof_bound(exact_standard_estimate(phi), f, d);
    CHECK(e > 0.0);
    CHECK(e <= std::log2(double(d)) + 1e-9);
  }

  // Below the critical visibility the bound clamps to zero.
  const DensityMatrix dark = isotropic_state(3, 0.3);
  const double fd = fidelity_bound_exact(dark, SchmidtSpectrum::uniform(3), 1).f_tilde;
  CHECK(eof_bound(exact_standard_estimate(dark), fd, 3) == 0.0);

  CHECK(critical_visibility_bw(3) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("penalty sum f(M)") {
  const SchmidtSpectrum unif7 = SchmidtSpectrum::uniform(7);
  CHECK(f_of_M(unif7, 7, 7) == doctest::Approx(0.0).epsilon(1e-12));

  // Independent re-summation through gamma_tilde itself.
  std::mt19937_64 rng(113);
  for (int d : {3, 4, 5}) {
    const SchmidtSpectrum lam = random_spectrum(d, rng);
    for (int M : {1, 2}) {
      double total = 0.0;
      for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp)
          for (int n = 0; n < d; ++n)
            for (int np = 0; np < d; ++np) {
              if (m == mp || m == n || n == np || np == mp) continue;
              total += gamma_tilde(lam, m, mp, n, np, M, d);
            }
      CHECK(f_of_M(lam, d, M) == doctest::Approx(total).epsilon(1e-12));
    }
  }
  // Quadratic phases degenerate at d = 2: both swap quadruples survive with
  // full weight for every M.
  CHECK(f_of_M(SchmidtSpectrum::uniform(2), 2, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f_of_M(SchmidtSpectrum::uniform(2), 2, 2) == doctest::Approx(1.0).epsilon(1e-12));
  for (int d : {3, 5, 7}) {
    const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
    double prev = 1e300;
    for (int M = 1; M <= d; ++M) {
      const double f = f_of_M(unif, d, M);
      CHECK(f <= prev + 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("critical visibilities") {
  for (int d = 3; d <= 8; ++d)
    CHECK(critical_visibility(d, 1) == doctest::Approx(0.5).epsilon(1e-12));
  for (int d : {3, 5, 7})
    CHECK(critical_visibility(d, d) == doctest::Approx(1.0 / (d + 1)).epsilon(1e-9));
  for (int d : {3, 5})
    for (int M : {1, 2})
      CHECK(eof_zero_crossing(d, M) == doctest::Approx(critical_visibility(d, M)).epsilon(1e-8));
  for (int d = 3; d <= 10; ++d)
    CHECK(critical_visibility(d, 1) < critical_visibility_bw(d));
}

TEST_CASE("multipartite GHZ bound") {
  std::mt19937_64 rng(83);
  for (int n : {2, 3}) {
    for (int d : {2, 3}) {
      const SchmidtSpectrum lam = random_spectrum(d, rng);
      const DensityMatrix ghz = ghz_state(lam, n);
      CHECK(ghz_fidelity_bound(ghz, lam, n) == doctest::Approx(1.0).epsilon(1e-9));

      // White-noise admixture: bound stays below the exact fidelity.
      const Eigen::Index D = ghz.mat.rows();
      const CMat noisy = 0.9 * ghz.mat + 0.1 / double(D) * CMat::Identity(D, D);
      const DensityMatrix mixed(ghz.dims, noisy);
      const double bound = ghz_fidelity_bound(mixed, lam, n);
      const double exact = exact_fidelity(mixed, ghz);
      CHECK(bound <= exact + 1e-9);
    }
  }

  // Bipartite special case never exceeds the exact fidelity either.
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_mixed_state(3, rng);
    const SchmidtSpectrum lam = random_spectrum(3, rng);
    CHECK(ghz_fidelity_bound(rho, lam, 2) <=
          exact_fidelity(rho, pure_target_state(lam)) + 1e-9);
  }

  CHECK_THROWS_AS(ghz_fidelity_bound(ghz_state(SchmidtSpectrum::uniform(2), 3),
                                     SchmidtSpectrum({1.0, 0.0}), 3),
                  IncompleteBasisError);
  CHECK_THROWS_AS(ghz_fidelity_bound(ghz_state(SchmidtSpectrum::uniform(2), 3),
                                     SchmidtSpectrum::uniform(2), 2),
                  DimensionMismatch);
}

TEST_CASE("isotropic bound matches its closed form") {
  // Second algebraic route: on isotropic states the cross-term block
  // vanishes, so F~ = p + (1-p)/d^2 - f(1) * (1-p)/d^2 with f(1) the
  // penalty multiplicity sum.
  for (int d = 2; d <= 10; ++d) {
    const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
    const double f1 = f_of_M(unif, d, 1);
    for (double p : {0.0, 0.3, 0.75, 1.0}) {
      const double direct = fidelity_bound_exact(isotropic_state(d, p), unif, 1).f_tilde;
      const double closed = p + (1.0 - p) * (1.0 - f1) / (double(d) * d);
      CHECK(direct == doctest::Approx(closed).epsilon(1e-12));
    }
  }
}

TEST_CASE("double-precision phases hold up to d = 16") {
  const CMat v16 = tilted_basis(SchmidtSpectrum::uniform(16), 5).vectors;
  CHECK((v16.adjoint() * v16 - CMat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(f_of_M(SchmidtSpectrum::uniform(13), 13, 13) == doctest::Approx(0.0).epsilon(1e-11));

  std::mt19937_64 rng(127);
  const DensityMatrix rho = random_mixed_state(13, rng);
  const SchmidtSpectrum lam = nominated_from(rho);
  const double f = exact_fidelity(rho, pure_target_state(lam));
  CHECK(fidelity_bound_exact(rho, lam, 13).f_tilde == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("isotropic sweep and thresholds") {
  const auto pk3 = isotropic_thresholds(3, 1);
  REQUIRE(pk3.size() == 2);
  CHECK(pk3[1] == doctest::Approx(0.75).epsilon(1e-8));
  // Self-consistency: the bound equals B_k at each located crossing.
  for (int k = 1; k <= 2; ++k) {
    const double f =
        fidelity_bound_exact(isotropic_state(3, pk3[size_t(k - 1)]), SchmidtSpectrum::uniform(3), 1)
            .f_tilde;
    CHECK(f == doctest::Approx(b_k(SchmidtSpectrum::uniform(3), k)).epsilon(1e-7));
  }

  const auto curve = isotropic_sweep(5, {0.0, 0.5, 1.0}, 1);
  REQUIRE(curve.size() == 3);
  CHECK(curve[2].f_tilde == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(curve[2].d_ent == 5);
  CHECK(curve[0].f_tilde < 0.0);
  CHECK(curve[0].d_ent == 1);
  CHECK(curve[0].eof_ebits.has_value());
  CHECK(*curve[0].eof_ebits == 0.0);
}

TEST_CASE("rotation sweep") {
  const auto pts = rotation_sweep({0.0, 0.15, 0.3, 0.45, std::numbers::pi / 4,
                                   std::numbers::pi / 2});
  REQUIRE(pts.size() == 6);
  CHECK(pts[0].f_tilde == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pts[0].d_ent == 3);
  for (size_t i = 1; i + 1 < pts.size(); ++i) CHECK(pts[i].f_tilde < pts[i - 1].f_tilde);
  CHECK(pts[4].f_tilde < pts[0].f_tilde);
  CHECK(pts[1].d_ent == 3);  // small misalignment keeps full dimensionality
  // Quarter-turn: a nominated coefficient vanishes, the point is flagged.
  CHECK(std::isnan(pts[5].f_tilde));
  CHECK(pts[5].d_ent == 1);

  // Full dimensionality survives a sizeable misalignment (cross-checked
  // against an independent prototype of the pipeline).
  const double theta_star = rotation_full_rank_threshold(1);
  CHECK(theta_star == doctest::Approx(0.69178).epsilon(1e-3));
  CHECK(theta_star / (std::numbers::pi / 2) > 0.2);
}
