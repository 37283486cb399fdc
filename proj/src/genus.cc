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

#include "mgc/genus.h"

#include <bit>
#include <cmath>
#include <string>

#include "mgc/linalg.h"

using namespace mgc;

void mgc::validate_pairing(const Pairing &pairs) {
    int n = 2 * (int)pairs.size();
    std::vector<char> seen(n, 0);
    for (auto [l, r] : pairs) {
        if (l < 0 || r >= n || l >= r) {
            throw InvalidInput("pairing: chord (" + std::to_string(l) + ", " + std::to_string(r) + ") is malformed");
        }
        if (seen[l]++ || seen[r]++) {
            throw InvalidInput("pairing: index used twice");
        }
    }
}

Gf2Matrix mgc::intersection_matrix(const Pairing &pairs) {
    validate_pairing(pairs);
    int m = (int)pairs.size();
    Gf2Matrix N(m, m);
    for (int p = 0; p < m; p++) {
        for (int q = 0; q < m; q++) {
            auto [lp, rp] = pairs[p];
            auto [lq, rq] = pairs[q];
            if ((lp < lq && lq < rp && rp < rq) || (lq < lp && lp < rq && rq < rp)) {
                N.set(p, q, true);
            }
        }
    }
    return N;
}

int mgc::crossing_parity(const Gf2Matrix &N, const std::vector<uint8_t> &y) {
    int s = 0;
    for (int p = 0; p < N.rows; p++) {
        if (!y[p]) {
            continue;
        }
        for (int q = p + 1; q < N.rows; q++) {
            s ^= y[q] && N.get(p, q);
        }
    }
    return s;
}

// With N = U^T S U (S the standard form), the columns v_i of V = U^{-1}
// satisfy v_i^T N v_j = S_ij: pairs (v_{2j}, v_{2j+1}) are symplectic and
// v_r.. span Ker(N). On the kernel q is linear, which fixes z.v_i = q(v_i)
// for i >= r; the other r coordinates of Vz are free, and
// f(z) = 2^{-r/2} (-1)^{sum_j (q(v_2j) + z.v_2j)(q(v_2j+1) + z.v_2j+1)}.
std::vector<FourierTerm> mgc::fourier_support(const Gf2Matrix &N) {
    if (N.rows != N.cols || !N.is_symmetric_zero_diagonal()) {
        throw InvalidInput("fourier_support: N must be symmetric with zero diagonal");
    }
    int m = N.rows;
    if (m == 0) {
        return {FourierTerm{{}, 1.0}};
    }
    auto dec = gf2_symmetric_decompose(N);
    int r = dec.r;
    if (r > 40) {
        throw SizeLimitExceeded("fourier_support: rank too large to enumerate");
    }
    Gf2Matrix V = gf2_inverse(dec.U);
    std::vector<int> qv(m);
    for (int i = 0; i < m; i++) {
        std::vector<uint8_t> col(m);
        for (int a = 0; a < m; a++) {
            col[a] = V.get(a, i);
        }
        qv[i] = crossing_parity(N, col);
    }
    // z = U^T w with w = V^T z.
    std::vector<FourierTerm> out;
    double mag = std::pow(2.0, -r / 2.0);
    for (uint64_t free = 0; free < (uint64_t{1} << r); free++) {
        std::vector<uint8_t> w(m);
        for (int i = 0; i < m; i++) {
            w[i] = i < r ? (free >> i & 1) : qv[i];
        }
        FourierTerm t;
        t.z.assign(m, 0);
        for (int a = 0; a < m; a++) {
            int s = 0;
            for (int i = 0; i < m; i++) {
                s ^= dec.U.get(i, a) & w[i];
            }
            t.z[a] = (uint8_t)s;
        }
        int sign = 0;
        for (int j = 0; 2 * j < r; j++) {
            sign ^= (qv[2 * j] ^ w[2 * j]) & (qv[2 * j + 1] ^ w[2 * j + 1]);
        }
        t.f = sign ? -mag : mag;
        out.push_back(std::move(t));
    }
    return out;
}

double mgc::fourier_coefficient_bruteforce(const Gf2Matrix &N, const std::vector<uint8_t> &z) {
    int m = N.rows;
    if (m > 24) {
        throw SizeLimitExceeded("fourier_coefficient_bruteforce: m <= 24");
    }
    double sum = 0;
    std::vector<uint8_t> y(m);
    for (uint32_t mask = 0; mask < (1u << m); mask++) {
        int dot = 0;
        for (int p = 0; p < m; p++) {
            y[p] = mask >> p & 1;
            dot ^= y[p] & z[p];
        }
        sum += (crossing_parity(N, y) ^ dot) ? -1.0 : 1.0;
    }
    return sum / std::pow(2.0, m);
}

SingleVertexResult mgc::contract_single_vertex(const CanonicalMatchgate &T, const Pairing &pairs,
                                               std::optional<int> genus) {
    T.validate();
    Gf2Matrix N = intersection_matrix(pairs);
    int m = (int)pairs.size();
    if (T.n != 2 * m) {
        throw InvalidInput("contract_single_vertex: tensor rank must be twice the number of chords");
    }
    SingleVertexResult res;
    auto support = fourier_support(N);
    res.rank = std::countr_zero(support.size());
    if (genus && res.rank > 2 * *genus) {
        throw InvalidInput("contract_single_vertex: pairing needs more handles than the declared genus");
    }
    if (T.parity == Parity::Odd || T.C == cd(0)) {
        return res;  // every nonzero R component has even weight
    }
    int n = 2 * m, k = T.k();
    // Exponent over (theta, eta, mu): theta^T F theta / 2 + mu^T G theta
    // + i theta^T eta + eta^T D A D eta / 2.
    CMat M = CMat::Zero(2 * n + k, 2 * n + k);
    M.topLeftCorner(n, n) = T.A;
    for (int a = 0; a < n; a++) {
        M(a, n + a) = cd(0, 1);
        M(n + a, a) = cd(0, -1);
    }
    if (k) {
        M.block(0, 2 * n, n, k) = -T.B.transpose();
        M.block(2 * n, 0, k, n) = T.B;
    }
    for (const auto &term : support) {
        for (int e = 0; e < m; e++) {
            auto [l, r] = pairs[e];
            double s = term.z[e] ? -1.0 : 1.0;
            M(n + l, n + r) = s;
            M(n + r, n + l) = -s;
        }
        res.value += term.f * pfaffian(M);
        res.terms++;
    }
    res.value *= T.C;
    return res;
}

cd mgc::contract_single_vertex_bruteforce(const DenseTensor &T, const Pairing &pairs) {
    validate_pairing(pairs);
    int m = (int)pairs.size();
    if (T.rank != 2 * m) {
        throw InvalidInput("contract_single_vertex_bruteforce: tensor rank must be twice the number of chords");
    }
    if (m > 10) {
        throw SizeLimitExceeded("contract_single_vertex_bruteforce: m <= 10");
    }
    cd sum = 0;
    for (uint32_t y = 0; y < (1u << m); y++) {
        uint32_t x = 0;
        for (int e = 0; e < m; e++) {
            if (y >> e & 1) {
                x |= (1u << pairs[e].first) | (1u << pairs[e].second);
            }
        }
        sum += T[x];
    }
    return sum;
}
