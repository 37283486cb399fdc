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

#ifndef MGC_GF2_H
#define MGC_GF2_H

#include <cstdint>
#include <string>
#include <vector>

namespace mgc {

/// Dense binary matrix, rows packed into 64-bit words.
struct Gf2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<uint64_t>> data;

    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols);
    static Gf2Matrix identity(int n);

    bool get(int r, int c) const {
        return (data[r][c >> 6] >> (c & 63)) & 1;
    }
    void set(int r, int c, bool v) {
        uint64_t bit = uint64_t{1} << (c & 63);
        if (v) {
            data[r][c >> 6] |= bit;
        } else {
            data[r][c >> 6] &= ~bit;
        }
    }
    void xor_row_into(int src, int dst) {
        for (size_t w = 0; w < data[dst].size(); w++) {
            data[dst][w] ^= data[src][w];
        }
    }

    Gf2Matrix transpose() const;
    Gf2Matrix operator*(const Gf2Matrix &other) const;
    bool operator==(const Gf2Matrix &other) const;
    bool is_symmetric_zero_diagonal() const;
    std::string str() const;
};

struct Gf2RankKernel {
    int rank = 0;
    Gf2Matrix kernel_basis;     // one basis vector of {y : N y = 0} per row
    Gf2Matrix row_space_basis;  // one basis vector of the row space per row
};

Gf2RankKernel gf2_rank_kernel(const Gf2Matrix &N);

/// Inverse of a square invertible binary matrix; throws InvalidInput when singular.
Gf2Matrix gf2_inverse(const Gf2Matrix &U);

/// Block-diagonal matrix with r/2 blocks [[0,1],[1,0]] followed by zeros.
Gf2Matrix gf2_standard_form(int m, int r);

struct Gf2SymmetricDecomposition {
    Gf2Matrix U;  // invertible, N = U^T * standard_form(m, r) * U
    int r = 0;
};

/// Decomposes a symmetric zero-diagonal N; the recomposition is verified exactly before returning.
Gf2SymmetricDecomposition gf2_symmetric_decompose(const Gf2Matrix &N);

}  // namespace mgc

#endif
