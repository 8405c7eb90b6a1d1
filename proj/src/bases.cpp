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

#include "qcert/bases.hpp"

#include <cmath>
#include <numbers>

namespace qcert {

std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::Standard: return "standard";
    case BasisKind::Tilted: return "tilted";
    case BasisKind::Mub: return "mub";
  }
  return "?";
}

std::string LocalBasis::label() const {
  if (kind == BasisKind::Standard) return "standard";
  return to_string(kind) + std::to_string(k);
}

LocalBasis standard_basis(int d) {
  if (d < 1) throw ConfigError("dimension must be >= 1");
  LocalBasis b;
  b.dim = d;
  b.kind = BasisKind::Standard;
  b.lambda_ref = SchmidtSpectrum::uniform(d).values();
  b.vectors = CMat::Identity(d, d);
  return b;
}

namespace {

// exp(2 pi i * num / den) with the exponent reduced in exact integer
// arithmetic first, so phases stay accurate for any j, k, m.
cxd root_of_unity(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  const double angle = 2.0 * std::numbers::pi * double(r) / double(den);
  return {std::cos(angle), std::sin(angle)};
}

CMat tilted_vectors(const SchmidtSpectrum& lambda, int k, bool quartic) {
  const int d = lambda.dim();
  const double norm = 1.0 / std::sqrt(lambda.sum());
  CMat v(d, d);
  for (int j = 0; j < d; ++j) {
    for (int m = 0; m < d; ++m) {
      const long long jm = static_cast<long long>(j) * m;
      const long long km2 = static_cast<long long>(k) * m * m;
      cxd phase = quartic ? root_of_unity(jm, d) * root_of_unity(km2, 2LL * d)
                          : root_of_unity(jm + km2, d);
      v(m, j) = phase * std::sqrt(lambda[m]) * norm;
    }
  }
  return v;
}

}  // namespace

LocalBasis tilted_basis(const SchmidtSpectrum& lambda, int k) {
  if (k < 0) throw ConfigError("tilt index k must be >= 0");
  lambda.require_strictly_positive();
  LocalBasis b;
  b.dim = lambda.dim();
  b.kind = BasisKind::Tilted;
  b.k = k;
  b.lambda_ref = lambda.values();
  b.vectors = tilted_vectors(lambda, k, /*quartic=*/false);
  return b;
}

LocalBasis mub_basis(int d, int k) {
  if (k < 0) throw ConfigError("basis index k must be >= 0");
  const SchmidtSpectrum unif = SchmidtSpectrum::uniform(d);
  LocalBasis b;
  b.dim = d;
  b.kind = BasisKind::Mub;
  b.k = k;
  b.lambda_ref = unif.values();
  // The even prime needs the quartic phase; the quadratic family collapses
  // onto the k = 0 basis there.
  b.vectors = tilted_vectors(unif, k, /*quartic=*/(d == 2));
  return b;
}

std::vector<CMat> tilted_povm(const SchmidtSpectrum& lambda, int k) {
  const LocalBasis b = tilted_basis(lambda, k);
  const int d = b.dim;
  std::vector<CMat> elems;
  elems.reserve(static_cast<size_t>(d) + 1);
  CMat sum = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    CVec v = b.vector(j);
    CMat e = (v * v.adjoint()) / double(d);
    sum += e;
    elems.push_back(std::move(e));
  }
  elems.push_back(CMat::Identity(d, d) - sum);
  return elems;
}

double c_lambda(const SchmidtSpectrum& lambda, const RMat& std_diag) {
  const int d = lambda.dim();
  if (std_diag.rows() != d || std_diag.cols() != d)
    throw DimensionMismatch("standard-basis diagonal data has wrong shape");
  double total = 0.0;
  double weighted = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (std_diag(m, n) < 0.0) throw DataError("standard-basis diagonal data must be nonnegative");
      total += std_diag(m, n);
      weighted += lambda[m] * lambda[n] * std_diag(m, n);
    }
  }
  if (total > 1.0 + 1e-9) throw DataError("standard-basis diagonal data sums to more than 1");
  const double s = lambda.sum();
  return double(d) * double(d) / (s * s) * weighted;
}

GlobalProductBasis correlation_setting(const LocalBasis& local) {
  return GlobalProductBasis{local, local, /*conjugate_b=*/true};
}

nlohmann::json basis_to_json(const LocalBasis& b) {
  nlohmann::json j;
  j["schema"] = 1;
  j["dim"] = b.dim;
  j["kind"] = to_string(b.kind);
  j["k"] = b.k;
  j["lambda"] = b.lambda_ref;
  nlohmann::json vectors = nlohmann::json::array();
  for (int col = 0; col < b.dim; ++col) {
    nlohmann::json v = nlohmann::json::array();
    for (int row = 0; row < b.dim; ++row)
      v.push_back({b.vectors(row, col).real(), b.vectors(row, col).imag()});
    vectors.push_back(std::move(v));
  }
  j["vectors"] = std::move(vectors);
  return j;
}

LocalBasis basis_from_json(const nlohmann::json& j) {
  try {
    LocalBasis b;
    b.dim = j.at("dim").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "standard") b.kind = BasisKind::Standard;
    else if (kind == "tilted") b.kind = BasisKind::Tilted;
    else if (kind == "mub") b.kind = BasisKind::Mub;
    else throw DataError("unknown basis kind: " + kind);
    b.k = j.at("k").get<int>();
    b.lambda_ref = j.at("lambda").get<std::vector<double>>();
    const auto& vectors = j.at("vectors");
    if (static_cast<int>(vectors.size()) != b.dim) throw DataError("basis vector count mismatch");
    b.vectors = CMat(b.dim, b.dim);
    for (int col = 0; col < b.dim; ++col) {
      if (static_cast<int>(vectors[col].size()) != b.dim)
        throw DataError("basis vector length mismatch");
      for (int row = 0; row < b.dim; ++row)
        b.vectors(row, col) = cxd(vectors[col][row].at(0).get<double>(),
                                  vectors[col][row].at(1).get<double>());
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed basis JSON: ") + e.what());
  }
}

}  // namespace qcert
