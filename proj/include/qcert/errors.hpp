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

#ifndef QCERT_ERRORS_HPP
#define QCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcert {

/// Invalid parameters or inconsistent configuration. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or mutually inconsistent input data (files, tables). CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: singular matrices, degenerate counts, invalid states.
/// CLI exit code 4.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public DataError {
 public:
  explicit DimensionMismatch(const std::string& msg) : DataError(msg) {}
};

/// Raised when a tilted basis is requested for a spectrum with a vanishing
/// coefficient. Dropping the mode silently would corrupt index bookkeeping,
/// so callers must truncate the space explicitly instead.
class IncompleteBasisError : public NumericalError {
 public:
  explicit IncompleteBasisError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace qcert

#endif
