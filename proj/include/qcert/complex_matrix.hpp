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

#ifndef QCERT_COMPLEX_MATRIX_HPP
#define QCERT_COMPLEX_MATRIX_HPP

#include <complex>

#include <Eigen/Dense>
#include "json.hpp"

namespace qcert {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline CMat dagger(const CMat& a) { return a.adjoint(); }

/// Kronecker product a (x) b.
CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& a, const CVec& b);

/// Maximum |a - a^dagger| entry; 0 for exactly Hermitian matrices.
double hermiticity_defect(const CMat& a);

/// Serialized as {"rows": r, "cols": c, "entries": [[re, im], ...]} with the
/// entries in row-major order.
nlohmann::json matrix_to_json(const CMat& a);
CMat matrix_from_json(const nlohmann::json& j);

}  // namespace qcert

#endif
