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

#ifndef MGC_GRASSMANN_H
#define MGC_GRASSMANN_H

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgc/common.h"

namespace mgc {

/// Exact dense element of a Grassmann algebra with complex coefficients.
///
/// Monomials are bitmasks over the generators; bit a set means theta_a is present and
/// every monomial is normally ordered (ascending generator index). All sign bookkeeping
/// is integer permutation parity; only the coefficients carry rounding.
struct GrassmannPoly {
    static constexpr int MAX_GENERATORS = 24;

    int n = 0;
    std::unordered_map<uint32_t, cd> terms;

    GrassmannPoly() = default;
    explicit GrassmannPoly(int num_generators);

    static GrassmannPoly constant(int num_generators, cd c);
    static GrassmannPoly generator(int num_generators, int a, cd c = 1.0);
    /// theta_{a1} theta_{a2} ... in the given (not necessarily normal) order.
    static GrassmannPoly monomial(int num_generators, const std::vector<int> &ordered, cd c = 1.0);

    cd coeff(uint32_t mask) const;
    void add_term(uint32_t mask, cd c);
    void normalize();  // drops exact zeros
    bool is_zero(double tol = 0.0) const;
    double max_abs_coeff() const;

    GrassmannPoly operator+(const GrassmannPoly &other) const;
    GrassmannPoly operator-(const GrassmannPoly &other) const;
    GrassmannPoly operator*(cd s) const;
    GrassmannPoly &operator+=(const GrassmannPoly &other);

    /// One line per monomial: `±(re,im) θ[i1,i2,...]`.
    std::string str() const;
};

/// Sign of moving the monomial `b` past `a` when forming a*b in normal order (0 if they overlap).
int merge_sign(uint32_t a, uint32_t b);

GrassmannPoly multiply(const GrassmannPoly &f, const GrassmannPoly &g);
GrassmannPoly derivative(const GrassmannPoly &f, int a);
/// Integrates over ordered_vars = (v1, ..., vk): the derivative with respect to v1 acts first.
GrassmannPoly integrate(const GrassmannPoly &f, const std::vector<int> &ordered_vars);
/// Substitutes theta_a = sum_b U(a, b) theta_b.
GrassmannPoly change_of_variables(const GrassmannPoly &f, const CMat &U);
/// exp(f) for f even with no constant term (exact by nilpotency).
GrassmannPoly exp_even(const GrassmannPoly &f);
/// Brute-force int D theta exp(1/2 theta^T A theta + theta^T B eta), returned as a polynomial in eta.
GrassmannPoly gaussian_integral_oracle(const CMat &A, const CMat &B);

}  // namespace mgc

#endif
