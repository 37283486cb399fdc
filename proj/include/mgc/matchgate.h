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

#ifndef MGC_MATCHGATE_H
#define MGC_MATCHGATE_H

#include <cstdint>
#include <random>
#include <vector>

#include "mgc/common.h"
#include "mgc/grassmann.h"

namespace mgc {

/// Rank-n complex tensor. Component T(x1 x2 ... xn) is stored at index
/// sum_a x_a << (a-1), i.e. bit a-1 of the index is the a-th tensor index. This
/// matches the Grassmann monomial masks; the JSON encoding uses lexicographic order.
struct DenseTensor {
    static constexpr int MAX_RANK = 20;

    int rank = 0;
    std::vector<cd> values;

    DenseTensor() : values(1, 0.0) {
    }
    explicit DenseTensor(int rank);

    cd &operator[](uint32_t x) {
        return values[x];
    }
    const cd &operator[](uint32_t x) const {
        return values[x];
    }
    double max_abs() const;

    GrassmannPoly generating_function() const;
    static DenseTensor from_generating_function(const GrassmannPoly &f);
};

enum class Parity { Even = 0, Odd = 1 };

/// T(theta) = C exp(1/2 theta^T A theta) int D mu exp(mu^T B theta), mu of length k = B.rows().
struct CanonicalMatchgate {
    int n = 0;
    CMat A;   // n x n skew
    CMat B;   // k x n
    cd C = 1.0;
    Parity parity = Parity::Even;

    int k() const {
        return (int)B.rows();
    }
    /// The (n+k) x (n+k) block matrix [[A, -B^T], [B, 0]].
    CMat block_matrix() const;
    /// Checks shapes, skewness, and parity == k mod 2.
    void validate() const;
};

/// Exact representation of the zero tensor of rank n.
CanonicalMatchgate zero_matchgate(int n);

struct MatchgateCheckReport {
    bool ok = true;
    double worst_violation = 0;
    uint32_t worst_x = 0;
    uint32_t worst_y = 0;
};

/// Evaluates every quadratic matchgate identity; ok iff max violation <= tol * max|T|^2.
MatchgateCheckReport check_matchgate(const DenseTensor &T, double tol = 1e-9);

/// Differential-operator form of the matchgate identities, evaluated with the Grassmann engine.
bool check_lambda(const DenseTensor &T, double tol = 1e-10);

DenseTensor to_dense(const CanonicalMatchgate &M);
/// Single component T(x) (same index convention as DenseTensor).
cd component(const CanonicalMatchgate &M, uint32_t x);

/// Canonical form of a matchgate given densely. Throws InvalidInput for the zero tensor or a
/// non-matchgate (detected by a failed round trip at relative tolerance `tol`).
CanonicalMatchgate from_dense(const DenseTensor &T, double tol = 1e-9);

/// Adds terms that vanish against the mu-integral so that B A = 0 where possible.
/// The tensor is unchanged. Requires B B^T to be invertible; otherwise returns M as is.
CanonicalMatchgate make_BA_zero(const CanonicalMatchgate &M);

/// Substitution theta_a -> sum_b V(a, b) theta_b applied to the generating function.
CanonicalMatchgate substitute(const CanonicalMatchgate &M, const CMat &V);

/// T'(x1..xn) = T(x2..xn x1).
CanonicalMatchgate cyclic_shift(const CanonicalMatchgate &M);
/// Cyclic shift applied `times` times (negative values shift the other way).
CanonicalMatchgate cyclic_shift(const CanonicalMatchgate &M, int times);
/// T'(x1..xn) = T(xn..x1).
CanonicalMatchgate reflection(const CanonicalMatchgate &M);
/// T'(x) = (-1)^{x.z} T(x).
CanonicalMatchgate phase_shift(const CanonicalMatchgate &M, uint32_t z);

struct MeanCovariance {
    uint32_t z = 0;
    CMat A;
};

/// Mean vector (argmax |T|, first in lexicographic order on ties) and covariance matrix.
MeanCovariance mean_covariance(const DenseTensor &T);
/// Same, with a caller-chosen z (T(z) must be nonzero).
MeanCovariance mean_covariance(const DenseTensor &T, uint32_t z);

/// Random canonical matchgate with k mu-variables (gaussian entries, BA = 0 where possible).
CanonicalMatchgate random_matchgate(int n, int k, std::mt19937_64 &rng);

/// Lexicographic order position of index x (x1 most significant).
uint32_t lex_index(uint32_t x, int n);

}  // namespace mgc

#endif
