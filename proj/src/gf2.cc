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

#include "mgc/gf2.h"

#include <sstream>

#include "mgc/common.h"

using namespace mgc;

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows(rows), cols(cols), data(rows, std::vector<uint64_t>((cols + 63) / 64, 0)) {
}

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix r(n, n);
    for (int i = 0; i < n; i++) {
        r.set(i, i, true);
    }
    return r;
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix r(cols, rows);
    for (int i = 0; i < rows; i++) {
        for (int j = 0; j < cols; j++) {
            if (get(i, j)) {
                r.set(j, i, true);
            }
        }
    }
    return r;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix &other) const {
    if (cols != other.rows) {
        throw InvalidInput("gf2 multiply: shape mismatch");
    }
    Gf2Matrix r(rows, other.cols);
    for (int i = 0; i < rows; i++) {
        for (int k = 0; k < cols; k++) {
            if (get(i, k)) {
                for (size_t w = 0; w < r.data[i].size(); w++) {
                    r.data[i][w] ^= other.data[k][w];
                }
            }
        }
    }
    return r;
}

bool Gf2Matrix::operator==(const Gf2Matrix &other) const {
    return rows == other.rows && cols == other.cols && data == other.data;
}

bool Gf2Matrix::is_symmetric_zero_diagonal() const {
    if (rows != cols) {
        return false;
    }
    for (int i = 0; i < rows; i++) {
        if (get(i, i)) {
            return false;
        }
        for (int j = 0; j < i; j++) {
            if (get(i, j) != get(j, i)) {
                return false;
            }
        }
    }
    return true;
}

std::string Gf2Matrix::str() const {
    std::stringstream out;
    for (int i = 0; i < rows; i++) {
        for (int j = 0; j < cols; j++) {
            out << (get(i, j) ? '1' : '.');
        }
        out << '\n';
    }
    return out.str();
}

Gf2RankKernel mgc::gf2_rank_kernel(const Gf2Matrix &N) {
    // Reduced row echelon form.
    Gf2Matrix R = N;
    std::vector<int> pivot_cols;
    int row = 0;
    for (int c = 0; c < N.cols && row < N.rows; c++) {
        int p = -1;
        for (int i = row; i < N.rows; i++) {
            if (R.get(i, c)) {
                p = i;
                break;
            }
        }
        if (p < 0) {
            continue;
        }
        std::swap(R.data[p], R.data[row]);
        for (int i = 0; i < N.rows; i++) {
            if (i != row && R.get(i, c)) {
                R.xor_row_into(row, i);
            }
        }
        pivot_cols.push_back(c);
        row++;
    }
    Gf2RankKernel out;
    out.rank = row;
    out.row_space_basis = Gf2Matrix(row, N.cols);
    for (int i = 0; i < row; i++) {
        out.row_space_basis.data[i] = R.data[i];
    }
    std::vector<bool> is_pivot(N.cols, false);
    for (int c : pivot_cols) {
        is_pivot[c] = true;
    }
    out.kernel_basis = Gf2Matrix(N.cols - row, N.cols);
    int k = 0;
    for (int f = 0; f < N.cols; f++) {
        if (is_pivot[f]) {
            continue;
        }
        out.kernel_basis.set(k, f, true);
        for (int i = 0; i < row; i++) {
            if (R.get(i, f)) {
                out.kernel_basis.set(k, pivot_cols[i], true);
            }
        }
        k++;
    }
    return out;
}

Gf2Matrix mgc::gf2_inverse(const Gf2Matrix &U) {
    int n = U.rows;
    if (U.cols != n) {
        throw InvalidInput("gf2_inverse: matrix must be square");
    }
    Gf2Matrix a = U;
    Gf2Matrix inv = Gf2Matrix::identity(n);
    for (int c = 0; c < n; c++) {
        int p = -1;
        for (int i = c; i < n; i++) {
            if (a.get(i, c)) {
                p = i;
                break;
            }
        }
        if (p < 0) {
            throw InvalidInput("gf2_inverse: singular matrix");
        }
        std::swap(a.data[p], a.data[c]);
        std::swap(inv.data[p], inv.data[c]);
        for (int i = 0; i < n; i++) {
            if (i != c && a.get(i, c)) {
                a.xor_row_into(c, i);
                inv.xor_row_into(c, i);
            }
        }
    }
    return inv;
}

Gf2Matrix mgc::gf2_standard_form(int m, int r) {
    Gf2Matrix s(m, m);
    for (int j = 0; j + 1 < r; j += 2) {
        s.set(j, j + 1, true);
        s.set(j + 1, j, true);
    }
    return s;
}

static bool form(const Gf2Matrix &N, const std::vector<uint64_t> &x, const std::vector<uint64_t> &y) {
    // x^T N y over GF(2), with x, y packed like matrix rows.
    int acc = 0;
    for (int i = 0; i < N.rows; i++) {
        if (!((x[i >> 6] >> (i & 63)) & 1)) {
            continue;
        }
        for (size_t w = 0; w < y.size(); w++) {
            acc ^= __builtin_popcountll(N.data[i][w] & y[w]) & 1;
        }
    }
    return acc;
}

static void xor_into(std::vector<uint64_t> &dst, const std::vector<uint64_t> &src) {
    for (size_t w = 0; w < dst.size(); w++) {
        dst[w] ^= src[w];
    }
}

Gf2SymmetricDecomposition mgc::gf2_symmetric_decompose(const Gf2Matrix &N) {
    if (!N.is_symmetric_zero_diagonal()) {
        throw InvalidInput("gf2_symmetric_decompose: N must be symmetric with zero diagonal");
    }
    int m = N.rows;
    // Symplectic Gram-Schmidt: find V with V^T N V = standard form; then U = V^{-1}.
    std::vector<std::vector<uint64_t>> pool;
    for (int i = 0; i < m; i++) {
        Gf2Matrix e(1, m);
        e.set(0, i, true);
        pool.push_back(e.data[0]);
    }
    std::vector<std::vector<uint64_t>> basis;
    while (true) {
        int pi = -1, pj = -1;
        for (size_t i = 0; i < pool.size() && pi < 0; i++) {
            for (size_t j = i + 1; j < pool.size(); j++) {
                if (form(N, pool[i], pool[j])) {
                    pi = (int)i;
                    pj = (int)j;
                    break;
                }
            }
        }
        if (pi < 0) {
            break;
        }
        auto u = pool[pi];
        auto v = pool[pj];
        basis.push_back(u);
        basis.push_back(v);
        std::vector<std::vector<uint64_t>> rest;
        for (size_t t = 0; t < pool.size(); t++) {
            if ((int)t == pi || (int)t == pj) {
                continue;
            }
            auto w = pool[t];
            bool wv = form(N, w, v);
            bool wu = form(N, w, u);
            if (wv) {
                xor_into(w, u);
            }
            if (wu) {
                xor_into(w, v);
            }
            rest.push_back(w);
        }
        pool = std::move(rest);
    }
    Gf2SymmetricDecomposition out;
    out.r = (int)basis.size();
    for (auto &w : pool) {
        basis.push_back(w);
    }
    Gf2Matrix V(m, m);  // columns are the new basis vectors
    for (int c = 0; c < m; c++) {
        for (int r = 0; r < m; r++) {
            if ((basis[c][r >> 6] >> (r & 63)) & 1) {
                V.set(r, c, true);
            }
        }
    }
    out.U = gf2_inverse(V);
    if (!(out.U.transpose() * gf2_standard_form(m, out.r) * out.U == N)) {
        throw std::logic_error("gf2_symmetric_decompose: recomposition failed");
    }
    return out;
}
