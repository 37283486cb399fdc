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

#ifndef MGC_GENUS_H
#define MGC_GENUS_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mgc/gf2.h"
#include "mgc/matchgate.h"

namespace mgc {

/// Chords of a pairing over indices 0..2m-1, each given as (l, r) with l < r.
using Pairing = std::vector<std::pair<int, int>>;

/// Throws InvalidInput unless the chords partition 0..2m-1 with l < r.
void validate_pairing(const Pairing &pairs);

/// N(p, q) = 1 iff chords p and q interleave.
Gf2Matrix intersection_matrix(const Pairing &pairs);

/// Number of interleaving chord pairs among those selected by y, mod 2.
int crossing_parity(const Gf2Matrix &N, const std::vector<uint8_t> &y);

struct FourierTerm {
    std::vector<uint8_t> z;
    double f = 0;
};

/// Nonzero values of f(z) = 2^-m sum_y (-1)^{q(y) + z.y}, with q the
/// crossing parity. There are 2^rank(N) of them, each +-2^{-rank/2}.
std::vector<FourierTerm> fourier_support(const Gf2Matrix &N);

/// Direct 2^m evaluation of f(z), for testing (m <= 24).
double fourier_coefficient_bruteforce(const Gf2Matrix &N, const std::vector<uint8_t> &z);

struct SingleVertexResult {
    cd value = 0;
    int rank = 0;   // binary rank of the intersection matrix
    int terms = 0;  // Pfaffians evaluated
};

/// Value of a rank-2m tensor whose indices are joined in pairs, as a sum of
/// 2^rank Pfaffians. With `genus`, checks rank <= 2 genus.
SingleVertexResult contract_single_vertex(const CanonicalMatchgate &T, const Pairing &pairs,
                                          std::optional<int> genus = std::nullopt);

/// sum_x T(x) R(x) with R(x) = 1 iff both ends of every chord agree (m <= 10).
cd contract_single_vertex_bruteforce(const DenseTensor &T, const Pairing &pairs);

}  // namespace mgc

#endif
