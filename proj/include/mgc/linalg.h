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

#ifndef MGC_LINALG_H
#define MGC_LINALG_H

#include "mgc/common.h"

namespace mgc {

/// Complex skew-symmetric matrix; exact antisymmetry is enforced at construction.
struct SkewMatrix {
    CMat m;

    SkewMatrix() = default;
    /// Validates A + A^T = 0 entrywise within `tol`, then mirrors the upper triangle.
    explicit SkewMatrix(const CMat &A, double tol = 1e-12);
    static SkewMatrix zero(int n);

    int n() const {
        return (int)m.rows();
    }
};

/// Pfaffian by Parlett-Reid elimination with partial pivoting. Pf of a 0x0 matrix is 1; odd size gives 0.
/// The input is assumed skew-symmetric; only the strict upper triangle is read.
cd pfaffian(const CMat &A);
inline cd pfaffian(const SkewMatrix &A) {
    return pfaffian(A.m);
}

/// Pfaffian by direct summation over all (n-1)!! perfect matchings. Test oracle; n <= 12.
cd pfaffian_by_matchings(const CMat &A);

/// Pfaffian of the principal submatrix on the given (ascending) indexes.
cd pfaffian_minor(const CMat &A, const std::vector<int> &idx);

struct SkewElimination {
    CMat U;          // invertible, U^T A U = [[A11, 0], [0, 0]]
    int rank = 0;    // even, A11 is rank x rank and invertible
    CMat reduced;    // U^T A U; A11 is block diagonal with 2x2 blocks
    int det_sign = 1;  // det(U), which is always +-1 for this elimination
};

/// Congruence elimination with largest-magnitude pivots. Entries below
/// 1e-10 * max(max|A|, 1) count as zero.
SkewElimination skew_eliminate(const CMat &A);

/// Closed form of int D theta exp(1/2 theta^T A theta + theta^T B eta) =
///     prefactor * exp(1/2 eta^T quad eta) * int D mu exp(mu^T residual eta),
/// where mu has n - rank(A) components.
struct GaussianFormResult {
    cd prefactor = 1.0;
    CMat quad;      // k x k skew
    CMat residual;  // (n - rank) x k
    bool is_zero = false;
    int rank = 0;
};

GaussianFormResult gaussian_integral_closed(const CMat &A, const CMat &B);

/// Coefficients of int D mu exp(mu^T L eta) = (-1)^{k'(k'-1)/2} (L eta)_1 ... (L eta)_{k'}
/// are signed maximal minors of L; this returns the sign prefix.
int residual_sign(int rows);

}  // namespace mgc

#endif
