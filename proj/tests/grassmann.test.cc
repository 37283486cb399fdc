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

#include "gtest/gtest.h"

#include "mgc/linalg.h"
#include "test_util.h"

using namespace mgc;
using namespace mgc_test;

static GrassmannPoly rand_poly(int n, std::mt19937_64 &rng, double density = 0.5) {
    std::uniform_real_distribution<double> u(0, 1);
    GrassmannPoly f(n);
    for (uint32_t m = 0; m < (uint32_t{1} << n); m++) {
        if (u(rng) < density) {
            f.add_term(m, rand_complex(rng));
        }
    }
    return f;
}

static double dist(const GrassmannPoly &a, const GrassmannPoly &b) {
    return (a - b).max_abs_coeff();
}

TEST(grassmann, multiply_examples) {
    auto t1 = GrassmannPoly::generator(2, 0);
    auto t2 = GrassmannPoly::generator(2, 1);
    EXPECT_EQ(multiply(t1, t2).coeff(0b11), cd(1));
    EXPECT_EQ(multiply(t2, t1).coeff(0b11), cd(-1));
    EXPECT_TRUE(multiply(t1, t1).terms.empty());
    EXPECT_THROW(multiply(t1, GrassmannPoly::generator(3, 0)), InvalidInput);
}

TEST(grassmann, derivative_examples) {
    auto f = GrassmannPoly::monomial(2, {0, 1});
    EXPECT_EQ(derivative(f, 0).coeff(0b10), cd(1));
    EXPECT_EQ(derivative(f, 1).coeff(0b01), cd(-1));
    EXPECT_TRUE(derivative(GrassmannPoly::constant(2, 1), 0).terms.empty());
    EXPECT_THROW(derivative(f, 2), InvalidInput);
}

TEST(grassmann, integrate_examples) {
    auto f = GrassmannPoly::monomial(2, {0, 1});
    EXPECT_EQ(integrate(f, {0, 1}).coeff(0), cd(1));
    EXPECT_TRUE(integrate(GrassmannPoly::generator(2, 0), {0, 1}).terms.empty());
    cd a = integrate(integrate(f, {0}), {1}).coeff(0);
    cd b = integrate(integrate(f, {1}), {0}).coeff(0);
    EXPECT_EQ(a, -b);
    EXPECT_THROW(integrate(f, {0, 0}), InvalidInput);
}

TEST(grassmann, change_of_variables_examples) {
    std::mt19937_64 rng(1);
    auto f = rand_poly(3, rng);
    EXPECT_LT(dist(change_of_variables(f, CMat::Identity(3, 3)), f), 1e-15);

    CMat swap(2, 2);
    swap << 0, 1, 1, 0;
    auto g = change_of_variables(GrassmannPoly::generator(2, 0), swap);
    EXPECT_EQ(g.coeff(0b10), cd(1));
    EXPECT_EQ(g.terms.size(), 1u);

    CMat U = rand_matrix(2, 2, rng);
    auto h = change_of_variables(GrassmannPoly::monomial(2, {0, 1}), U);
    EXPECT_LT(std::abs(h.coeff(0b11) - U.determinant()), 1e-12);
    EXPECT_THROW(change_of_variables(f, CMat::Zero(3, 3)), InvalidInput);
}

TEST(grassmann, exp_even_examples) {
    cd a(0.3, -2);
    auto f = GrassmannPoly::monomial(4, {0, 1}, a);
    auto e = exp_even(f);
    EXPECT_EQ(e.coeff(0), cd(1));
    EXPECT_EQ(e.coeff(0b11), a);
    EXPECT_EQ(e.terms.size(), 2u);

    auto g = GrassmannPoly::monomial(4, {0, 1}) + GrassmannPoly::monomial(4, {2, 3});
    auto eg = exp_even(g);
    EXPECT_EQ(eg.coeff(0), cd(1));
    EXPECT_EQ(eg.coeff(0b0011), cd(1));
    EXPECT_EQ(eg.coeff(0b1100), cd(1));
    EXPECT_EQ(eg.coeff(0b1111), cd(1));
    EXPECT_EQ(eg.terms.size(), 4u);

    EXPECT_EQ(exp_even(GrassmannPoly(3)).coeff(0), cd(1));
    EXPECT_THROW(exp_even(GrassmannPoly::generator(3, 0)), InvalidInput);
    EXPECT_THROW(exp_even(GrassmannPoly::constant(3, 1)), InvalidInput);
}

TEST(grassmann, exp_matches_power_series) {
    std::mt19937_64 rng(2);
    int n = 6;
    GrassmannPoly f(n);
    for (uint32_t m = 1; m < 64; m++) {
        if (std::popcount(m) % 2 == 0) {
            f.add_term(m, rand_complex(rng));
        }
    }
    GrassmannPoly series = GrassmannPoly::constant(n, 1);
    GrassmannPoly power = GrassmannPoly::constant(n, 1);
    double fact = 1;
    for (int j = 1; j <= n / 2; j++) {
        power = multiply(power, f);
        fact *= j;
        series += power * cd(1.0 / fact);
    }
    EXPECT_LT(dist(series, exp_even(f)), 1e-12);
}

TEST(grassmann, gaussian_oracle_examples) {
    cd a(1.5, 0.5);
    CMat A(2, 2);
    A << 0, a, -a, 0;
    auto r = gaussian_integral_oracle(A, CMat::Zero(2, 0));
    EXPECT_EQ(r.coeff(0), a);

    CMat A1 = CMat::Zero(1, 1);
    CMat B1 = CMat::Ones(1, 1);
    auto r1 = gaussian_integral_oracle(A1, B1);
    EXPECT_EQ(r1.coeff(1), cd(1));
    EXPECT_EQ(r1.terms.size(), 1u);

    EXPECT_TRUE(gaussian_integral_oracle(CMat::Zero(2, 2), CMat::Zero(2, 0)).terms.empty());
    CMat bad = CMat::Ones(2, 2);
    EXPECT_THROW(gaussian_integral_oracle(bad, CMat::Zero(2, 0)), InvalidInput);
    EXPECT_THROW(gaussian_integral_oracle(CMat::Zero(13, 13), CMat::Zero(13, 0)), SizeLimitExceeded);
}

TEST(grassmann, anticommutation_and_derivative_algebra) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; trial++) {
        int n = 2 + trial % 9;
        auto f = rand_poly(n, rng, 0.3);
        for (int a = 0; a < n; a++) {
            auto ta = GrassmannPoly::generator(n, a);
            EXPECT_TRUE(derivative(derivative(f, a), a).terms.empty());
            for (int b = 0; b < n; b++) {
                auto tb = GrassmannPoly::generator(n, b);
                auto lhs = multiply(multiply(ta, tb), f);
                auto rhs = multiply(multiply(tb, ta), f);
                EXPECT_LT((lhs + rhs).max_abs_coeff(), 1e-12);
                if (a != b) {
                    auto dd = derivative(derivative(f, a), b) + derivative(derivative(f, b), a);
                    EXPECT_LT(dd.max_abs_coeff(), 1e-12);
                }
            }
        }
    }
}

TEST(grassmann, leibniz_rule) {
    std::mt19937_64 rng(4);
    int n = 5;
    auto f = rand_poly(n, rng);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            auto tb = GrassmannPoly::generator(n, b);
            auto lhs = derivative(multiply(tb, f), a);
            auto rhs = (a == b ? f : GrassmannPoly(n)) - multiply(tb, derivative(f, a));
            EXPECT_LT(dist(lhs, rhs), 1e-12);
        }
    }
}

TEST(grassmann, derivative_under_change_of_variables) {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 6; n++) {
        auto f = rand_poly(n, rng);
        CMat U = rand_matrix(n, n, rng);
        CMat Ui = U.inverse();
        auto fu = change_of_variables(f, U);
        for (int a = 0; a < n; a++) {
            GrassmannPoly rhs(n);
            for (int b = 0; b < n; b++) {
                rhs += change_of_variables(derivative(f, b), U) * U(b, a);
            }
            // d/dtheta~_a (f o U) = sum_b U(b,a) (d_b f) o U, i.e. the chain rule with (U^{-1})^T on the other side.
            EXPECT_LT(dist(derivative(fu, a), rhs), 1e-10);
            GrassmannPoly back(n);
            for (int c = 0; c < n; c++) {
                back += derivative(fu, c) * Ui(c, a);
            }
            EXPECT_LT(dist(back, change_of_variables(derivative(f, a), U)), 1e-9);
        }
    }
}

TEST(grassmann, integral_under_change_of_variables) {
    std::mt19937_64 rng(6);
    for (int n = 1; n <= 7; n++) {
        auto f = rand_poly(n, rng);
        CMat U = rand_matrix(n, n, rng);
        std::vector<int> vars;
        for (int a = 0; a < n; a++) {
            vars.push_back(a);
        }
        cd lhs = integrate(change_of_variables(f, U), vars).coeff(0);
        cd rhs = U.determinant() * integrate(f, vars).coeff(0);
        EXPECT_LT(rel_err(lhs, rhs), 1e-10);
    }
}

TEST(grassmann, oracle_matches_pfaffian) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; trial++) {
        int n = 2 * (1 + trial % 5);
        CMat A = rand_skew(n, rng);
        cd o = gaussian_integral_oracle(A, CMat::Zero(n, 0)).coeff(0);
        EXPECT_LT(rel_err(o, pfaffian(A)), 1e-9);
    }
}

TEST(grassmann, debug_dump) {
    auto f = GrassmannPoly::monomial(3, {2, 0}, cd(2, 1));
    EXPECT_EQ(f.str(), "-(2,1) θ[0,2]\n");
}
