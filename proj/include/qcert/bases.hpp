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

#ifndef QCERT_BASES_HPP
#define QCERT_BASES_HPP

#include <string>
#include <vector>

#include "qcert/qstate.hpp"

namespace qcert {

enum class BasisKind { Standard, Tilted, Mub };

std::string to_string(BasisKind k);

/// A set of d local unit vectors (columns of `vectors`). Standard and MUB
/// bases are orthonormal; tilted bases are unit-norm but in general
/// non-orthogonal.
struct LocalBasis {
  int dim = 0;
  BasisKind kind = BasisKind::Standard;
  int k = 0;                        // family index for tilted/mub
  std::vector<double> lambda_ref;   // spectrum used in construction
  CMat vectors;

  CVec vector(int j) const { return vectors.col(j); }
  std::string label() const;
};

LocalBasis standard_basis(int d);

/// Tilted basis |j~_k> = (sum_n lambda_n)^(-1/2) sum_m w^(jm + k m^2)
/// sqrt(lambda_m) |m>, w = exp(2 pi i / d). Every component overlap satisfies
/// |<m|j~_k>|^2 = lambda_m / sum_n lambda_n, independent of j and k. For
/// uniform lambda the construction is orthonormal and unbiased w.r.t. the
/// standard basis. Throws IncompleteBasisError when any lambda_m = 0 (the
/// vectors then no longer span the space).
LocalBasis tilted_basis(const SchmidtSpectrum& lambda, int k);

/// Mutually unbiased basis number k. For odd d this is tilted_basis(uniform,
/// k): for odd prime d the choices k = 0..d-1 together with the standard
/// basis form a maximal set of d+1 pairwise unbiased bases. For non-prime d
/// each basis is still unbiased w.r.t. the standard basis, but not
/// necessarily w.r.t. the others. d = 2 needs quartic phases i^(k m^2): the
/// quadratic family degenerates there (m^2 = m mod 2) and would only permute
/// the k = 0 basis.
LocalBasis mub_basis(int d, int k);

/// (d+1)-outcome POVM for a tilted filter bank: the d projectors
/// |j~><j~| / d plus the completing element 1 - sum_j |j~><j~| / d.
/// Elements are positive semidefinite and sum to the identity.
std::vector<CMat> tilted_povm(const SchmidtSpectrum& lambda, int k);

/// Normalization relating tilted-basis coincidence fractions to matrix
/// elements:
///   c_lambda = d^2 / (sum_k lambda_k)^2 * sum_{m,n} lambda_m lambda_n <mn|rho|mn>,
/// computed from the standard-basis diagonal data std_diag[m][n] = <mn|rho|mn>.
/// Equals sum_{i,j} <i~ j~* | rho | i~ j~*> identically.
double c_lambda(const SchmidtSpectrum& lambda, const RMat& std_diag);

/// One global measurement basis {|a_i> (x) |b_j>}. When conjugate_b is set
/// (the default for all correlation settings), arm B uses the complex
/// conjugate of each basis vector's components.
struct GlobalProductBasis {
  LocalBasis basis_a;
  LocalBasis basis_b;
  bool conjugate_b = true;
};

/// The usual correlation setting: the same local basis on both arms, B
/// conjugated.
GlobalProductBasis correlation_setting(const LocalBasis& local);

nlohmann::json basis_to_json(const LocalBasis& b);
LocalBasis basis_from_json(const nlohmann::json& j);

}  // namespace qcert

#endif
