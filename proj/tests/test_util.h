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

#ifndef MGC_TEST_UTIL_H
#define MGC_TEST_UTIL_H

#include <bit>
#include <functional>
#include <random>
#include <vector>

#include "mgc/common.h"
#include "mgc/genus.h"
#include "mgc/grassmann.h"
#include "mgc/linalg.h"
#include "mgc/matchgate.h"
#include "mgc/pipeline.h"
#include "mgc/planar.h"

namespace mgc_test {

inline mgc::cd rand_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    return {g(rng), g(rng)};
}

inline mgc::CMat rand_matrix(int r, int c, std::mt19937_64 &rng) {
    mgc::CMat m(r, c);
    for (int i = 0; i < r; i++) {
        for (int j = 0; j < c; j++) {
            m(i, j) = rand_complex(rng);
        }
    }
    return m;
}

inline mgc::CMat rand_skew(int n, std::mt19937_64 &rng) {
    mgc::CMat m = mgc::CMat::Zero(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            m(i, j) = rand_complex(rng);
            m(j, i) = -m(i, j);
        }
    }
    return m;
}

inline double rel_err(mgc::cd a, mgc::cd b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Shared oracles for the unit tests and the acceptance run.

using namespace mgc;

inline double dense_rel_err(const DenseTensor &a, const DenseTensor &b) {
    double diff = 0, scale = 1e-300;
    for (size_t x = 0; x < a.values.size(); x++) {
        diff = std::max(diff, std::abs(a.values[x] - b.values[x]));
        scale = std::max({scale, std::abs(a.values[x]), std::abs(b.values[x])});
    }
    return diff / scale;
}

inline DenseTensor random_dense(int n, std::mt19937_64 &rng) {
    DenseTensor T(n);
    for (auto &v : T.values) {
        v = rand_complex(rng);
    }
    return T;
}

inline DenseTensor perturbed(const DenseTensor &T, std::mt19937_64 &rng) {
    // Nudges one component of the tensor's own parity class.
    DenseTensor R = T;
    std::uniform_int_distribution<uint32_t> d(0, (uint32_t)T.values.size() - 1);
    uint32_t par = 2;
    for (uint32_t x = 0; x < T.values.size(); x++) {
        if (T[x] != cd(0)) {
            par = std::popcount(x) & 1;
            break;
        }
    }
    while (true) {
        uint32_t x = d(rng);
        if ((uint32_t)(std::popcount(x) & 1) == par) {
            R[x] += 0.5 * std::max(1.0, T.max_abs());
            return R;
        }
    }
}

inline std::vector<int> subset(const std::vector<int> &items, uint32_t mask) {
    std::vector<int> out;
    for (size_t i = 0; i < items.size(); i++) {
        if (mask >> i & 1) {
            out.push_back(items[i]);
        }
    }
    return out;
}

inline void enumerate_matchings(const PlanarGraph &g, const std::vector<int> &removed,
                                const std::function<void(const std::vector<int> &)> &visit) {
    std::vector<char> covered(g.num_vertices, 0);
    for (int v : removed) {
        covered[v] = 1;
    }
    std::vector<int> chosen;
    std::function<void()> rec = [&]() {
        int v = 0;
        while (v < g.num_vertices && covered[v]) {
            v++;
        }
        if (v == g.num_vertices) {
            visit(chosen);
            return;
        }
        covered[v] = 1;
        for (size_t e = 0; e < g.edges.size(); e++) {
            const auto &E = g.edges[e];
            int w = E.u == v ? E.v : E.v == v ? E.u : -1;
            if (w < 0 || covered[w]) {
                continue;
            }
            covered[w] = 1;
            chosen.push_back((int)e);
            rec();
            chosen.pop_back();
            covered[w] = 0;
        }
        covered[v] = 0;
    };
    rec();
}

inline GrassmannPoly closed_form_poly(const GaussianFormResult &g, int k) {
    GrassmannPoly r(k);
    if (g.is_zero) {
        return r;
    }
    GrassmannPoly quad(k);
    for (int a = 0; a < k; a++) {
        for (int b = a + 1; b < k; b++) {
            quad.add_term((1u << a) | (1u << b), g.quad(a, b));
        }
    }
    int kp = (int)g.residual.rows();
    GrassmannPoly prod = GrassmannPoly::constant(k, g.prefactor * double(residual_sign(kp)));
    for (int j = 0; j < kp; j++) {
        GrassmannPoly L(k);
        for (int a = 0; a < k; a++) {
            L.add_term(1u << a, g.residual(j, a));
        }
        prod = multiply(prod, L);
    }
    return multiply(exp_even(quad), prod);
}

inline CanonicalMatchgate linear_tensor(const std::vector<cd> &w) {
    CanonicalMatchgate M;
    M.n = (int)w.size();
    M.A = CMat::Zero(M.n, M.n);
    M.B = CMat(1, M.n);
    for (int j = 0; j < M.n; j++) {
        M.B(0, j) = w[j];
    }
    M.parity = Parity::Odd;
    return M;
}

inline TensorNetwork random_linear_network(int vertices, int edges, int stubs, std::mt19937_64 &rng) {
    RandomNetworkSpec spec;
    spec.vertices = vertices;
    spec.edges = edges;
    spec.stubs = stubs;
    spec.self_loops = false;
    spec.max_degree = 4;
    TensorNetwork net = random_planar_topology(spec, rng);
    net.tensors.clear();
    for (size_t v = 0; v < net.vertices.size(); v++) {
        std::vector<cd> w;
        for (int j = 0; j < net.degree((int)v); j++) {
            w.push_back(rand_complex(rng));
        }
        net.tensors.push_back(linear_tensor(w));
    }
    return net;
}

// Every perfect pairing of 0..2m-1.
inline std::vector<Pairing> all_pairings(int m) {
    std::vector<Pairing> out;
    Pairing cur;
    std::vector<char> used(2 * m, 0);
    std::function<void()> rec = [&]() {
        int a = 0;
        while (a < 2 * m && used[a]) {
            a++;
        }
        if (a == 2 * m) {
            out.push_back(cur);
            return;
        }
        used[a] = 1;
        for (int b = a + 1; b < 2 * m; b++) {
            if (!used[b]) {
                used[b] = 1;
                cur.push_back({a, b});
                rec();
                cur.pop_back();
                used[b] = 0;
            }
        }
        used[a] = 0;
    };
    rec();
    return out;
}

inline Gf2Matrix random_symmetric(int m, std::mt19937_64 &rng) {
    Gf2Matrix N(m, m);
    for (int p = 0; p < m; p++) {
        for (int q = p + 1; q < m; q++) {
            bool v = rng() & 1;
            N.set(p, q, v);
            N.set(q, p, v);
        }
    }
    return N;
}

inline cd ising_spin_sum(const PlanarGraph &g) {
    cd z = 0;
    for (uint32_t s = 0; s < (1u << g.num_vertices); s++) {
        double energy = 0;
        for (const auto &e : g.edges) {
            int su = s >> e.u & 1 ? 1 : -1, sv = s >> e.v & 1 ? 1 : -1;
            energy += e.weight.real() * su * sv;
        }
        z += std::exp(energy);
    }
    return z;
}

}  // namespace mgc_test

#endif
