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

#include "mgc/linalg.h"

#include <cmath>
#include <functional>

using namespace mgc;

SkewMatrix::SkewMatrix(const CMat &A, double tol) {
    if (A.rows() != A.cols()) {
        throw InvalidInput("skew matrix must be square");
    }
    int n = (int)A.rows();
    m = CMat::Zero(n, n);
    for (int a = 0; a < n; a++) {
        if (std::abs(A(a, a)) > tol) {
            throw InvalidInput("skew matrix has a nonzero diagonal entry");
        }
        for (int b = a + 1; b < n; b++) {
            if (std::abs(A(a, b) + A(b, a)) > tol) {
                throw InvalidInput("matrix is not skew-symmetric");
            }
            m(a, b) = A(a, b);
            m(b, a) = -A(a, b);
        }
    }
}

SkewMatrix SkewMatrix::zero(int n) {
    SkewMatrix r;
    r.m = CMat::Zero(n, n);
    return r;
}

cd mgc::pfaffian(const CMat &input) {
    int n = (int)input.rows();
    if (n == 0) {
        return 1.0;
    }
    if (n % 2) {
        return 0.0;
    }
    CMat A(n, n);
    for (int a = 0; a < n; a++) {
        A(a, a) = 0;
        for (int b = a + 1; b < n; b++) {
            A(a, b) = input(a, b);
            A(b, a) = -input(a, b);
        }
    }
    cd pf = 1.0;
    for (int k = 0; k < n - 1; k += 2) {
        int kp = k + 1;
        double best = std::abs(A(k + 1, k));
        for (int i = k + 2; i < n; i++) {
            double v = std::abs(A(i, k));
            if (v > best) {
                best = v;
                kp = i;
            }
        }
        if (kp != k + 1) {
            A.row(k + 1).swap(A.row(kp));
            A.col(k + 1).swap(A.col(kp));
            pf = -pf;
        }
        if (A(k + 1, k) == cd{0}) {
            return 0.0;
        }
        pf *= A(k, k + 1);
        int rest = n - k - 2;
        if (rest > 0) {
            CVec tau = A.row(k).tail(rest).transpose() / A(k, k + 1);
            CVec col = A.col(k + 1).tail(rest);
            A.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

cd mgc::pfaffian_by_matchings(const CMat &A) {
    int n = (int)A.rows();
    if (n > 12) {
        throw SizeLimitExceeded("pfaffian_by_matchings: n <= 12");
    }
    if (n % 2) {
        return 0.0;
    }
    std::vector<int> idx(n);
    for (int i = 0; i < n; i++) {
        idx[i] = i;
    }
    std::function<cd(const std::vector<int> &)> rec = [&](const std::vector<int> &v) -> cd {
        if (v.empty()) {
            return 1.0;
        }
        cd total = 0;
        for (size_t j = 1; j < v.size(); j++) {
            std::vector<int> rest;
            for (size_t t = 1; t < v.size(); t++) {
                if (t != j) {
                    rest.push_back(v[t]);
                }
            }
            cd term = A(v[0], v[j]) * rec(rest);
            total += (j % 2 == 1) ? term : -term;
        }
        return total;
    };
    return rec(idx);
}

cd mgc::pfaffian_minor(const CMat &A, const std::vector<int> &idx) {
    int k = (int)idx.size();
    if (k % 2) {
        return 0.0;
    }
    CMat sub(k, k);
    for (int a = 0; a < k; a++) {
        for (int b = 0; b < k; b++) {
            sub(a, b) = A(idx[a], idx[b]);
        }
    }
    return pfaffian(sub);
}

static void swap_index(CMat &W, CMat &U, int a, int b) {
    W.row(a).swap(W.row(b));
    W.col(a).swap(W.col(b));
    U.col(a).swap(U.col(b));
}

SkewElimination mgc::skew_eliminate(const CMat &A) {
    int n = (int)A.rows();
    SkewElimination r;
    r.U = CMat::Identity(n, n);
    CMat W = SkewMatrix(A, 1e300).m;
    double thresh = 1e-10 * std::max(max_abs(W), 1.0);
    int p = 0;
    for (; p + 1 < n; p += 2) {
        int bi = -1, bj = -1;
        double best = -1;
        for (int j = p; j < n; j++) {
            for (int i = p; i < j; i++) {
                double v = std::abs(W(i, j));
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best < thresh) {
            break;
        }
        if (bi != p) {
            swap_index(W, r.U, p, bi);
            r.det_sign = -r.det_sign;
            if (bj == p) {
                bj = bi;
            }
        }
        if (bj != p + 1) {
            swap_index(W, r.U, p + 1, bj);
            r.det_sign = -r.det_sign;
        }
        int rest = n - p - 2;
        if (rest > 0) {
            cd w = W(p, p + 1);
            CVec alpha = W.row(p + 1).tail(rest).transpose() / w;
            CVec beta = -W.row(p).tail(rest).transpose() / w;
            r.U.rightCols(rest) += r.U.col(p) * alpha.transpose() + r.U.col(p + 1) * beta.transpose();
            W.rightCols(rest) += W.col(p) * alpha.transpose() + W.col(p + 1) * beta.transpose();
            W.bottomRows(rest) += alpha * W.row(p) + beta * W.row(p + 1);
            W.block(p, p + 2, 2, rest).setZero();
            W.block(p + 2, p, rest, 2).setZero();
            CMat tail = W.bottomRightCorner(rest, rest);
            W.bottomRightCorner(rest, rest) = (tail - tail.transpose()) * 0.5;
        }
    }
    r.rank = p;
    // Anything outside the leading block is below threshold; make the block structure exact.
    if (r.rank < n) {
        W.bottomRightCorner(n - r.rank, n - r.rank).setZero();
    }
    r.reduced = W;
    return r;
}

int mgc::residual_sign(int rows) {
    return ((rows * (rows - 1) / 2) % 2) ? -1 : 1;
}

GaussianFormResult mgc::gaussian_integral_closed(const CMat &A, const CMat &B) {
    int n = (int)A.rows();
    int k = (int)B.cols();
    if (A.cols() != n || (B.rows() != n && !(n == 0 && B.size() == 0))) {
        throw InvalidInput("gaussian_integral_closed: shape mismatch");
    }
    GaussianFormResult r;
    SkewElimination e = skew_eliminate(A);
    int m = e.rank;
    r.rank = m;
    cd pf = 1.0;
    for (int p = 0; p < m; p += 2) {
        pf *= e.reduced(p, p + 1);
    }
    r.prefactor = pf * double(e.det_sign);
    CMat Bt = n > 0 ? CMat(e.U.transpose() * B) : CMat::Zero(0, k);
    CMat B1 = Bt.topRows(m);
    r.residual = Bt.bottomRows(n - m);
    CMat inv = CMat::Zero(m, m);
    for (int p = 0; p < m; p += 2) {
        cd w = e.reduced(p, p + 1);
        inv(p, p + 1) = -1.0 / w;
        inv(p + 1, p) = 1.0 / w;
    }
    CMat quad = B1.transpose() * inv * B1;
    r.quad = (quad - quad.transpose()) * 0.5;
    int kp = n - m;
    if (kp > k) {
        r.is_zero = true;
    } else if (kp > 0) {
        Eigen::FullPivLU<CMat> lu(r.residual);
        lu.setThreshold(1e-10);
        if (lu.rank() < kp) {
            r.is_zero = true;
        }
    }
    return r;
}
