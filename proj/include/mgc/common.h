// Copyright 2026 The mgc Authors
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

#ifndef MGC_COMMON_H
#define MGC_COMMON_H

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mgc {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Raised when an input violates a documented precondition (bad shapes, non-matchgates, bad cuts, ...).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string &msg) : std::runtime_error(msg) {
    }
};

/// Raised when an exact oracle would exceed its size budget. Oracles never approximate.
struct SizeLimitExceeded : std::runtime_error {
    explicit SizeLimitExceeded(const std::string &msg) : std::runtime_error(msg) {
    }
};

inline double max_abs(const CMat &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace mgc

#endif
