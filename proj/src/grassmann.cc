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

#include "mgc/grassmann.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

using namespace mgc;

static void check_generator_count(int n) {
    if (n < 0 || n > GrassmannPoly::MAX_GENERATORS) {
        throw SizeLimitExceeded("Grassmann oracle supports at most 24 generators, got " + std::to_string(n));
    }
}

static int parity_below(uint32_t mask, int a) {
    return std::popcount(mask & ((uint32_t{1} << a) - 1)) & 1;
}

GrassmannPoly::GrassmannPoly(int num_generators) : n(num_generators) {
    check_generator_count(n);
}

GrassmannPoly GrassmannPoly::constant(int num_generators, cd c) {
    GrassmannPoly r(num_generators);
    r.add_term(0, c);
    return r;
}

GrassmannPoly GrassmannPoly::generator(int num_generators, int a, cd c) {
    if (a < 0 || a >= num_generators) {
        throw InvalidInput("generator index out of range");
    }
    GrassmannPoly r(num_generators);
    r.add_term(uint32_t{1} << a, c);
    return r;
}

GrassmannPoly GrassmannPoly::monomial(int num_generators, const std::vector<int> &ordered, cd c) {
    GrassmannPoly r = constant(num_generators, c);
    for (int a : ordered) {
        r = multiply(r, generator(num_generators, a));
    }
    return r;
}

cd GrassmannPoly::coeff(uint32_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? cd{0} : it->second;
}

void GrassmannPoly::add_term(uint32_t mask, cd c) {
    if (c == cd{0}) {
        return;
    }
    auto [it, inserted] = terms.try_emplace(mask, c);
    if (!inserted) {
        it->second += c;
    }
}

void GrassmannPoly::normalize() {
    std::erase_if(terms, [](const auto &kv) { return kv.second == cd{0}; });
}

bool GrassmannPoly::is_zero(double tol) const {
    return max_abs_coeff() <= tol;
}

double GrassmannPoly::max_abs_coeff() const {
    double m = 0;
    for (const auto &[mask, c] : terms) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

GrassmannPoly GrassmannPoly::operator+(const GrassmannPoly &other) const {
    GrassmannPoly r = *this;
    r += other;
    return r;
}

GrassmannPoly GrassmannPoly::operator-(const GrassmannPoly &other) const {
    return *this + other * cd{-1};
}

GrassmannPoly GrassmannPoly::operator*(cd s) const {
    GrassmannPoly r(n);
    for (const auto &[mask, c] : terms) {
        r.add_term(mask, c * s);
    }
    return r;
}

GrassmannPoly &GrassmannPoly::operator+=(const GrassmannPoly &other) {
    if (other.n != n) {
        throw InvalidInput("mismatched generator counts");
    }
    for (const auto &[mask, c] : other.terms) {
        add_term(mask, c);
    }
    normalize();
    return *this;
}

std::string GrassmannPoly::str() const {
    std::vector<uint32_t> masks;
    for (const auto &[mask, c] : terms) {
        masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::stringstream out;
    for (uint32_t mask : masks) {
        cd c = coeff(mask);
        out << (c.real() < 0 || (c.real() == 0 && c.imag() < 0) ? '-' : '+');
        out << '(' << std::abs(c.real()) << ',' << (c.real() < 0 ? -c.imag() : c.imag()) << ") θ[";
        bool first = true;
        for (int a = 0; a < n; a++) {
            if (mask >> a & 1) {
                out << (first ? "" : ",") << a;
                first = false;
            }
        }
        out << "]\n";
    }
    return out.str();
}

int mgc::merge_sign(uint32_t a, uint32_t b) {
    if (a & b) {
        return 0;
    }
    int inversions = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        inversions += std::popcount(a >> (j + 1));
    }
    return (inversions & 1) ? -1 : +1;
}

GrassmannPoly mgc::multiply(const GrassmannPoly &f, const GrassmannPoly &g) {
    if (f.n != g.n) {
        throw InvalidInput("multiply: mismatched generator counts");
    }
    GrassmannPoly r(f.n);
    for (const auto &[ma, ca] : f.terms) {
        for (const auto &[mb, cb] : g.terms) {
            int s = merge_sign(ma, mb);
            if (s) {
                r.add_term(ma | mb, s > 0 ? ca * cb : -(ca * cb));
            }
        }
    }
    r.normalize();
    return r;
}

GrassmannPoly mgc::derivative(const GrassmannPoly &f, int a) {
    if (a < 0 || a >= f.n) {
        throw InvalidInput("derivative: generator index out of range");
    }
    GrassmannPoly r(f.n);
    uint32_t bit = uint32_t{1} << a;
    for (const auto &[mask, c] : f.terms) {
        if (mask & bit) {
            r.add_term(mask ^ bit, parity_below(mask, a) ? -c : c);
        }
    }
    return r;
}

GrassmannPoly mgc::integrate(const GrassmannPoly &f, const std::vector<int> &ordered_vars) {
    uint32_t seen = 0;
    for (int v : ordered_vars) {
        if (v < 0 || v >= f.n) {
            throw InvalidInput("integrate: generator index out of range");
        }
        if (seen >> v & 1) {
            throw InvalidInput("integrate: duplicate variable");
        }
        seen |= uint32_t{1} << v;
    }
    GrassmannPoly r = f;
    for (int v : ordered_vars) {
        r = derivative(r, v);
    }
    return r;
}

GrassmannPoly mgc::change_of_variables(const GrassmannPoly &f, const CMat &U) {
    if (U.rows() != f.n || U.cols() != f.n) {
        throw InvalidInput("change_of_variables: U must be n x n");
    }
    if (f.n > 0) {
        double scale = std::max(1.0, max_abs(U));
        if (std::abs(U.fullPivLu().determinant()) < 1e-12 * std::pow(scale, f.n)) {
            throw InvalidInput("change_of_variables: singular U");
        }
    }
    GrassmannPoly r(f.n);
    for (const auto &[mask, c] : f.terms) {
        // Expand prod_{a in mask, ascending} (sum_b U(a,b) theta_b).
        std::unordered_map<uint32_t, cd> acc{{0, c}};
        for (int a = 0; a < f.n; a++) {
            if (!(mask >> a & 1)) {
                continue;
            }
            std::unordered_map<uint32_t, cd> next;
            for (const auto &[m, v] : acc) {
                for (int b = 0; b < f.n; b++) {
                    cd u = U(a, b);
                    if (u == cd{0} || (m >> b & 1)) {
                        continue;
                    }
                    int s = std::popcount(m >> (b + 1)) & 1;
                    next[m | (uint32_t{1} << b)] += s ? -(v * u) : v * u;
                }
            }
            acc = std::move(next);
        }
        for (const auto &[m, v] : acc) {
            r.add_term(m, v);
        }
    }
    r.normalize();
    return r;
}

GrassmannPoly mgc::exp_even(const GrassmannPoly &f) {
    for (const auto &[mask, c] : f.terms) {
        if (mask == 0 && c != cd{0}) {
            throw InvalidInput("exp_even: constant term present");
        }
        if (std::popcount(mask) & 1) {
            throw InvalidInput("exp_even: odd-degree term present");
        }
    }
    // Even monomials commute and square to zero, so exp(sum t) = prod (1 + t) exactly.
    GrassmannPoly r = GrassmannPoly::constant(f.n, 1.0);
    for (const auto &[mt, ct] : f.terms) {
        if (ct == cd{0}) {
            continue;
        }
        std::vector<std::pair<uint32_t, cd>> add;
        for (const auto &[m, v] : r.terms) {
            if (!(m & mt)) {
                int s = merge_sign(m, mt);
                add.emplace_back(m | mt, s > 0 ? v * ct : -(v * ct));
            }
        }
        for (const auto &[m, v] : add) {
            r.add_term(m, v);
        }
    }
    r.normalize();
    return r;
}

GrassmannPoly mgc::gaussian_integral_oracle(const CMat &A, const CMat &B) {
    int n = (int)A.rows();
    int k = (int)B.cols();
    if (A.cols() != n || (B.rows() != n && !(n == 0 && B.size() == 0))) {
        throw InvalidInput("gaussian_integral_oracle: shape mismatch");
    }
    if (n > 12 || k > 8) {
        throw SizeLimitExceeded("gaussian_integral_oracle: requires n <= 12 and k <= 8");
    }
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (std::abs(A(a, b) + A(b, a)) > 1e-12) {
                throw InvalidInput("gaussian_integral_oracle: A is not skew-symmetric");
            }
        }
    }
    int total = n + k;
    GrassmannPoly exponent(total);
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            exponent.add_term((uint32_t{1} << a) | (uint32_t{1} << b), A(a, b));
        }
        for (int j = 0; j < k; j++) {
            exponent.add_term((uint32_t{1} << a) | (uint32_t{1} << (n + j)), B(a, j));
        }
    }
    std::vector<int> vars(n);
    for (int a = 0; a < n; a++) {
        vars[a] = a;
    }
    GrassmannPoly integrated = integrate(exp_even(exponent), vars);
    GrassmannPoly r(k);
    for (const auto &[mask, c] : integrated.terms) {
        r.add_term(mask >> n, c);
    }
    r.normalize();
    return r;
}
