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

#include "mgc/matchgate.h"

#include <bit>
#include <cmath>

#include "mgc/linalg.h"

using namespace mgc;

static int below_parity(uint32_t x, int a) {
    return std::popcount(x & ((uint32_t{1} << a) - 1)) & 1;
}

DenseTensor::DenseTensor(int rank) : rank(rank) {
    if (rank < 0 || rank > MAX_RANK) {
        throw SizeLimitExceeded("dense tensors support rank <= 20, got " + std::to_string(rank));
    }
    values.assign(size_t{1} << rank, 0.0);
}

double DenseTensor::max_abs() const {
    double m = 0;
    for (const cd &v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

GrassmannPoly DenseTensor::generating_function() const {
    GrassmannPoly f(rank);
    for (uint32_t x = 0; x < values.size(); x++) {
        f.add_term(x, values[x]);
    }
    return f;
}

DenseTensor DenseTensor::from_generating_function(const GrassmannPoly &f) {
    DenseTensor t(f.n);
    for (const auto &[mask, c] : f.terms) {
        t[mask] += c;
    }
    return t;
}

CMat CanonicalMatchgate::block_matrix() const {
    int kk = k();
    CMat M = CMat::Zero(n + kk, n + kk);
    M.topLeftCorner(n, n) = A;
    if (kk) {
        M.topRightCorner(n, kk) = -B.transpose();
        M.bottomLeftCorner(kk, n) = B;
    }
    return M;
}

void CanonicalMatchgate::validate() const {
    if (A.rows() != n || A.cols() != n) {
        throw InvalidInput("canonical matchgate: A must be n x n");
    }
    if (B.cols() != n && B.rows() != 0) {
        throw InvalidInput("canonical matchgate: B must be k x n");
    }
    if (B.rows() > n) {
        throw InvalidInput("canonical matchgate: k must not exceed n");
    }
    double scale = std::max(1.0, max_abs(A));
    for (int a = 0; a < n; a++) {
        for (int b = 0; b <= a; b++) {
            if (std::abs(A(a, b) + A(b, a)) > 1e-12 * scale) {
                throw InvalidInput("canonical matchgate: A is not skew-symmetric");
            }
        }
    }
    if ((k() % 2 == 1) != (parity == Parity::Odd) && C != cd{0}) {
        throw InvalidInput("canonical matchgate: parity must equal k mod 2");
    }
}

CanonicalMatchgate mgc::zero_matchgate(int n) {
    CanonicalMatchgate z;
    z.n = n;
    z.A = CMat::Zero(n, n);
    z.B = CMat::Zero(0, n);
    z.C = 0.0;
    return z;
}

uint32_t mgc::lex_index(uint32_t x, int n) {
    uint32_t r = 0;
    for (int a = 0; a < n; a++) {
        if (x >> a & 1) {
            r |= uint32_t{1} << (n - 1 - a);
        }
    }
    return r;
}

MatchgateCheckReport mgc::check_matchgate(const DenseTensor &T, double tol) {
    int n = T.rank;
    if (n > 14) {
        throw SizeLimitExceeded("check_matchgate: rank <= 14 (quadratically many identities)");
    }
    MatchgateCheckReport rep;
    double scale = T.max_abs();
    scale *= scale;
    uint32_t size = uint32_t{1} << n;
    for (uint32_t x = 0; x < size; x++) {
        for (uint32_t y = 0; y < size; y++) {
            uint32_t diff = x ^ y;
            if (!diff) {
                continue;
            }
            cd s = 0;
            uint32_t d = diff;
            while (d) {
                int a = std::countr_zero(d);
                d &= d - 1;
                uint32_t e = uint32_t{1} << a;
                cd term = T[x ^ e] * T[y ^ e];
                s += (below_parity(x, a) ^ below_parity(y, a)) ? -term : term;
            }
            double v = std::abs(s);
            if (v > rep.worst_violation) {
                rep.worst_violation = v;
                rep.worst_x = x;
                rep.worst_y = y;
            }
        }
    }
    rep.ok = rep.worst_violation <= tol * scale;
    return rep;
}

bool mgc::check_lambda(const DenseTensor &T, double tol) {
    int n = T.rank;
    if (n > 10) {
        throw SizeLimitExceeded("check_lambda: rank <= 10 (uses 2n Grassmann generators)");
    }
    int N = 2 * n;
    uint32_t low = (uint32_t{1} << n) - 1;
    GrassmannPoly tt(N);
    for (uint32_t x = 0; x < T.values.size(); x++) {
        if (T[x] == cd{0}) {
            continue;
        }
        for (uint32_t y = 0; y < T.values.size(); y++) {
            tt.add_term(x | (y << n), T[x] * T[y]);
        }
    }
    // theta(x) (x) theta(y) is encoded as the graded product theta(x) theta'(y); the operators of
    // the identity act factor-wise, so odd operators on the second factor need a (-1)^{|x|} fix-up.
    auto fix_parity = [&](GrassmannPoly p) {
        for (auto &[mask, c] : p.terms) {
            if (std::popcount(mask & low) & 1) {
                c = -c;
            }
        }
        return p;
    };
    GrassmannPoly total(N);
    for (int a = 0; a < n; a++) {
        GrassmannPoly t1 = fix_parity(derivative(tt, n + a));
        total += multiply(GrassmannPoly::generator(N, a), t1);
        GrassmannPoly t2 = fix_parity(derivative(tt, a));
        total += multiply(GrassmannPoly::generator(N, n + a), t2);
    }
    double scale = T.max_abs();
    return total.max_abs_coeff() <= tol * std::max(scale * scale, 1e-300);
}

cd mgc::component(const CanonicalMatchgate &M, uint32_t x) {
    int kk = M.k();
    if ((std::popcount(x) + kk) % 2) {
        return 0.0;
    }
    CMat full = M.block_matrix();
    std::vector<int> idx;
    for (int a = 0; a < M.n; a++) {
        if (x >> a & 1) {
            idx.push_back(a);
        }
    }
    for (int j = 0; j < kk; j++) {
        idx.push_back(M.n + j);
    }
    double eps = M.parity == Parity::Odd ? -1.0 : 1.0;
    return M.C * eps * pfaffian_minor(full, idx);
}

DenseTensor mgc::to_dense(const CanonicalMatchgate &M) {
    if (M.n + M.k() > 40 || M.n > DenseTensor::MAX_RANK) {
        throw SizeLimitExceeded("to_dense: rank too large");
    }
    DenseTensor T(M.n);
    if (M.C == cd{0}) {
        return T;
    }
    for (uint32_t x = 0; x < T.values.size(); x++) {
        T[x] = component(M, x);
    }
    return T;
}

// out = sum_a c_a d/dtheta_a (v), on dense coefficient vectors.
static std::vector<cd> dense_derivative(const std::vector<cd> &v, const CVec &c, int n) {
    std::vector<cd> out(v.size(), 0.0);
    for (int a = 0; a < n; a++) {
        if (c(a) == cd{0}) {
            continue;
        }
        uint32_t e = uint32_t{1} << a;
        for (uint32_t x = 0; x < v.size(); x++) {
            if ((x & e) && v[x] != cd{0}) {
                cd t = c(a) * v[x];
                out[x ^ e] += below_parity(x, a) ? -t : t;
            }
        }
    }
    return out;
}

CanonicalMatchgate mgc::make_BA_zero(const CanonicalMatchgate &M) {
    int kk = M.k();
    if (kk == 0) {
        return M;
    }
    CMat G = M.B * M.B.transpose();
    Eigen::FullPivLU<CMat> lu(G);
    lu.setThreshold(1e-10);
    if (lu.rank() < kk) {
        return M;
    }
    CMat P = M.B.transpose() * lu.inverse() * M.B;
    CMat Q = CMat::Identity(M.n, M.n) - P;
    CanonicalMatchgate r = M;
    CMat A = Q.transpose() * M.A * Q;
    r.A = (A - A.transpose()) * 0.5;
    return r;
}

CanonicalMatchgate mgc::from_dense(const DenseTensor &T, double tol) {
    int n = T.rank;
    double scale = T.max_abs();
    if (scale == 0) {
        throw InvalidInput("from_dense: the zero tensor has no canonical form");
    }
    CanonicalMatchgate out;
    out.n = n;
    if (n == 0) {
        out.A = CMat::Zero(0, 0);
        out.B = CMat::Zero(0, 0);
        out.C = T[0];
        return out;
    }
    bool has_even = false, has_odd = false;
    for (uint32_t x = 0; x < T.values.size(); x++) {
        if (std::abs(T[x]) > tol * scale) {
            (std::popcount(x) % 2 ? has_odd : has_even) = true;
        }
    }
    if (has_even && has_odd) {
        throw InvalidInput("from_dense: tensor has mixed parity, not a matchgate");
    }
    // Annihilation system: column a holds the coefficients of theta_a T.
    size_t size = T.values.size();
    CMat Ann = CMat::Zero((Eigen::Index)size, n);
    for (int a = 0; a < n; a++) {
        uint32_t e = uint32_t{1} << a;
        for (uint32_t x = 0; x < size; x++) {
            if (!(x & e)) {
                Ann(x | e, a) = below_parity(x, a) ? -T[x] : T[x];
            }
        }
    }
    Eigen::BDCSVD<CMat> svd(Ann, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int k = 0;
    for (int i = 0; i < sv.size(); i++) {
        if (sv(i) <= 1e-8 * smax) {
            k++;
        }
    }
    k += n - (int)sv.size();
    // eta = U theta; the last k rows of U span the annihilating subspace.
    CMat U = svd.matrixV().transpose();
    CMat Ui = svd.matrixV().conjugate();  // U^{-1} since V is unitary
    std::vector<cd> s = T.values;
    for (int j = n - k; j < n; j++) {
        s = dense_derivative(s, Ui.col(j), n);
    }
    cd C = s[0];
    if (std::abs(C) <= 1e-12 * scale) {
        throw InvalidInput("from_dense: not a matchgate (degenerate Gaussian factor)");
    }
    CMat Mhat = CMat::Zero(n, n);
    for (int a = 0; a < n - k; a++) {
        std::vector<cd> da = dense_derivative(s, Ui.col(a), n);
        for (int b = a + 1; b < n - k; b++) {
            cd v = 0;
            for (int c = 0; c < n; c++) {
                v += Ui(c, b) * da[uint32_t{1} << c];
            }
            Mhat(a, b) = v / C;
            Mhat(b, a) = -Mhat(a, b);
        }
    }
    CMat A = U.transpose() * Mhat * U;
    out.A = (A - A.transpose()) * 0.5;
    out.B = U.bottomRows(k);
    out.C = C * double(residual_sign(k));
    out.parity = k % 2 ? Parity::Odd : Parity::Even;
    if ((k % 2 == 1) != has_odd) {
        throw InvalidInput("from_dense: not a matchgate (parity mismatch)");
    }
    out = make_BA_zero(out);
    DenseTensor back = to_dense(out);
    double err = 0;
    for (uint32_t x = 0; x < size; x++) {
        err = std::max(err, std::abs(back[x] - T[x]));
    }
    if (err > tol * scale * 10) {
        throw InvalidInput("from_dense: not a matchgate (canonical round trip error " + std::to_string(err / scale) + ")");
    }
    return out;
}

CanonicalMatchgate mgc::substitute(const CanonicalMatchgate &M, const CMat &V) {
    CanonicalMatchgate r = M;
    CMat A = V.transpose() * M.A * V;
    r.A = (A - A.transpose()) * 0.5;
    if (M.k()) {
        r.B = M.B * V;
    }
    return r;
}

CanonicalMatchgate mgc::cyclic_shift(const CanonicalMatchgate &M) {
    int n = M.n;
    if (n <= 1) {
        return M;
    }
    CMat V = CMat::Zero(n, n);
    for (int a = 0; a + 1 < n; a++) {
        V(a, a + 1) = 1;
    }
    V(n - 1, 0) = M.parity == Parity::Odd ? 1.0 : -1.0;
    return substitute(M, V);
}

CanonicalMatchgate mgc::cyclic_shift(const CanonicalMatchgate &M, int times) {
    int n = std::max(M.n, 1);
    times = ((times % n) + n) % n;
    CanonicalMatchgate r = M;
    for (int t = 0; t < times; t++) {
        r = cyclic_shift(r);
    }
    return r;
}

CanonicalMatchgate mgc::reflection(const CanonicalMatchgate &M) {
    int n = M.n;
    CMat V = CMat::Zero(n, n);
    for (int a = 0; a < n; a++) {
        V(a, n - 1 - a) = cd(0, 1);
    }
    CanonicalMatchgate r = substitute(M, V);
    if (M.parity == Parity::Odd) {
        r.C *= cd(0, -1);
    }
    return r;
}

CanonicalMatchgate mgc::phase_shift(const CanonicalMatchgate &M, uint32_t z) {
    int n = M.n;
    CMat V = CMat::Zero(n, n);
    for (int a = 0; a < n; a++) {
        V(a, a) = (z >> a & 1) ? -1.0 : 1.0;
    }
    return substitute(M, V);
}

MeanCovariance mgc::mean_covariance(const DenseTensor &T) {
    int n = T.rank;
    double best = 0;
    uint32_t z = 0;
    bool found = false;
    for (uint32_t lx = 0; lx < T.values.size(); lx++) {
        uint32_t x = lex_index(lx, n);  // lex_index is an involution
        double v = std::abs(T[x]);
        if (v > best) {
            best = v;
            z = x;
            found = true;
        }
    }
    if (!found) {
        throw InvalidInput("mean_covariance: zero tensor");
    }
    return mean_covariance(T, z);
}

MeanCovariance mgc::mean_covariance(const DenseTensor &T, uint32_t z) {
    if (T[z] == cd{0}) {
        throw InvalidInput("mean_covariance: T(z) must be nonzero");
    }
    int n = T.rank;
    MeanCovariance r;
    r.z = z;
    r.A = CMat::Zero(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            r.A(a, b) = T[z ^ (uint32_t{1} << a) ^ (uint32_t{1} << b)] / T[z];
            r.A(b, a) = -r.A(a, b);
        }
    }
    return r;
}

CanonicalMatchgate mgc::random_matchgate(int n, int k, std::mt19937_64 &rng) {
    if (k > n) {
        throw InvalidInput("random_matchgate: k must not exceed n");
    }
    std::normal_distribution<double> g(0, 1);
    auto rnd = [&]() { return cd(g(rng), g(rng)); };
    CanonicalMatchgate M;
    M.n = n;
    M.A = CMat::Zero(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            M.A(a, b) = rnd();
            M.A(b, a) = -M.A(a, b);
        }
    }
    M.B = CMat(k, n);
    for (int i = 0; i < k; i++) {
        for (int a = 0; a < n; a++) {
            M.B(i, a) = rnd();
        }
    }
    M.C = rnd();
    M.parity = k % 2 ? Parity::Odd : Parity::Even;
    return make_BA_zero(M);
}
