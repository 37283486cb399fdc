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

#include "mgc/network.h"

#include "gtest/gtest.h"

#include "mgc/pipeline.h"
#include "test_util.h"

using namespace mgc;
using namespace mgc_test;

static CanonicalMatchgate pair_tensor(cd w) {
    CanonicalMatchgate M;
    M.n = 2;
    M.A = CMat::Zero(2, 2);
    M.A(0, 1) = w;
    M.A(1, 0) = -w;
    M.B = CMat::Zero(0, 2);
    return M;
}

static TensorNetwork two_parallel(cd w) {
    TensorNetwork net;
    net.vertices = {Vertex{0, {{0, 0}, {1, 0}}}, Vertex{1, {{1, 1}, {0, 1}}}};
    net.edges = {Edge{0}, Edge{1}};
    net.tensors = {pair_tensor(w), pair_tensor(w)};
    return net;
}

TEST(network, validate) {
    TensorNetwork net = two_parallel(2.0);
    EXPECT_NO_THROW(net.validate());
    TensorNetwork bad = net;
    bad.vertices[1].incidence[0].slot = 0;
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = net;
    bad.tensors[0] = DenseTensor(3);
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = net;
    bad.vertices[1].id = 0;
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = net;
    bad.planar_cut = std::vector<int>{7};
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = net;
    bad.vertices[1].incidence.pop_back();
    bad.tensors[1] = DenseTensor(1);
    EXPECT_THROW(bad.validate(), InvalidInput);
    EXPECT_NO_THROW(bad.validate(true));
}

TEST(network, bruteforce_examples) {
    TensorNetwork scalar;
    scalar.vertices = {Vertex{0, {}}};
    DenseTensor c(0);
    c[0] = cd(3, -1);
    scalar.tensors = {c};
    EXPECT_EQ(contract_bruteforce(scalar), cd(3, -1));

    cd w(0.7, 0.2);
    EXPECT_LT(std::abs(contract_bruteforce(two_parallel(w)) - (1.0 + w * w)), 1e-14);

    TensorNetwork z = two_parallel(w);
    z.tensors[1] = DenseTensor(2);
    EXPECT_EQ(contract_bruteforce(z), cd(0));
}

TEST(network, faces_and_genus) {
    TensorNetwork net = two_parallel(1.0);
    EXPECT_EQ(trace_faces(net).size(), 2u);
    EXPECT_EQ(embedding_genus(net), 0);

    // One vertex with two interleaved loops is a torus.
    TensorNetwork torus;
    torus.vertices = {Vertex{0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}}};
    torus.edges = {Edge{0}, Edge{1}};
    torus.tensors = {DenseTensor(4)};
    EXPECT_EQ(trace_faces(torus).size(), 1u);
    EXPECT_EQ(embedding_genus(torus), 1);

    std::mt19937_64 rng(51);
    for (int t = 0; t < 50; t++) {
        RandomNetworkSpec spec;
        spec.vertices = 1 + t % 6;
        spec.edges = spec.vertices - 1 + t % 5;
        spec.stubs = t % 4;
        TensorNetwork r = random_planar_topology(spec, rng);
        EXPECT_EQ(embedding_genus(r), 0);
        EXPECT_EQ(count_components(r), 1);
    }
}

TEST(network, chain_contraction) {
    cd w1(0.5, 1), w2(-2, 0.25);
    TensorNetwork net;
    net.vertices = {Vertex{0, {{0, 0}, {1, 0}}}, Vertex{1, {{1, 1}, {2, 0}}}};
    net.edges = {Edge{0}, Edge{1}, Edge{2}};
    net.tensors = {pair_tensor(w1), pair_tensor(w2)};
    TensorNetwork out = contract_edge_pair(net, 0, 1);
    ASSERT_EQ(out.vertices.size(), 1u);
    EXPECT_EQ(out.degree(0), 2);
    DenseTensor T = as_dense(out.tensors[0]);
    EXPECT_LT(std::abs(T[0] - 1.0), 1e-12);
    EXPECT_LT(std::abs(T[0b11] - w1 * w2), 1e-12);
    EXPECT_LT(std::abs(T[0b01]) + std::abs(T[0b10]), 1e-12);
}

TEST(network, parallel_edge_contraction) {
    cd w(0.3, -0.8);
    TensorNetwork out = contract_edge_pair(two_parallel(w), 0, 1);
    ASSERT_EQ(out.vertices.size(), 1u);
    EXPECT_EQ(out.degree(0), 0);
    EXPECT_LT(std::abs(as_dense(out.tensors[0])[0] - (1.0 + w * w)), 1e-12);
    EXPECT_LT(std::abs(contract_sequential(two_parallel(w)) - (1.0 + w * w)), 1e-12);
}

// Direct summation of T_u(x, z_b..z_1) T_v(z_1..z_b, y).
static DenseTensor dense_pair_contraction(const DenseTensor &Tu, const DenseTensor &Tv, int b) {
    int p = Tu.rank - b, q = Tv.rank - b;
    DenseTensor out(p + q);
    for (uint32_t x = 0; x < (1u << p); x++) {
        for (uint32_t y = 0; y < (1u << q); y++) {
            cd s = 0;
            for (uint32_t z = 0; z < (1u << b); z++) {
                uint32_t zu = 0;
                for (int j = 0; j < b; j++) {
                    if ((z >> j) & 1) {
                        zu |= 1u << (b - 1 - j);
                    }
                }
                s += Tu[x | (zu << p)] * Tv[z | (y << b)];
            }
            out[x | (y << p)] = s;
        }
    }
    return out;
}

TEST(network, canonical_pair_matches_dense) {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 150; t++) {
        int du = 1 + t % 6;
        int dv = 1 + (t / 6) % 6;
        int b = 1 + std::uniform_int_distribution<int>(0, std::min({du, dv, 3}) - 1)(rng);
        CanonicalMatchgate Tu = random_matchgate(du, std::uniform_int_distribution<int>(0, du)(rng), rng);
        CanonicalMatchgate Tv = random_matchgate(dv, std::uniform_int_distribution<int>(0, dv)(rng), rng);
        CanonicalMatchgate R = contract_canonical_pair(Tu, Tv, b);
        DenseTensor expect = dense_pair_contraction(to_dense(Tu), to_dense(Tv), b);
        DenseTensor got = to_dense(R);
        EXPECT_LT(dense_rel_err(got, expect), 1e-8) << "du=" << du << " dv=" << dv << " b=" << b;
        EXPECT_EQ(R.n, du + dv - 2 * b);
        if (R.C != cd(0)) {
            EXPECT_TRUE(check_matchgate(got, 1e-8).ok);
        }
    }
}

TEST(network, canonical_pair_degenerate_inputs) {
    // Tensors with vanishing components, like the delta and linear tensors.
    CanonicalMatchgate lin;
    lin.n = 2;
    lin.A = CMat::Zero(2, 2);
    lin.B = CMat::Zero(1, 2);
    lin.B(0, 1) = 1;
    lin.parity = Parity::Odd;
    CanonicalMatchgate R = contract_canonical_pair(lin, lin, 1);
    EXPECT_LT(dense_rel_err(to_dense(R), dense_pair_contraction(to_dense(lin), to_dense(lin), 1)), 1e-12);
    CanonicalMatchgate R2 = contract_canonical_pair(lin, lin, 2);
    EXPECT_LT(std::abs(component(R2, 0) - dense_pair_contraction(to_dense(lin), to_dense(lin), 2)[0]), 1e-12);
}

TEST(network, self_loop_examples) {
    cd w(0.4, 0.1);
    TensorNetwork net;
    net.vertices = {Vertex{0, {{0, 0}, {0, 1}}}};
    net.edges = {Edge{0}};
    net.tensors = {pair_tensor(w)};
    TensorNetwork out = contract_self_loops(net, 0);
    EXPECT_EQ(out.degree(0), 0);
    EXPECT_LT(std::abs(as_dense(out.tensors[0])[0] - (1.0 + w)), 1e-12);

    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; t++) {
        TensorNetwork nested;
        nested.vertices = {Vertex{0, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}};
        nested.edges = {Edge{0}, Edge{1}};
        nested.tensors = {random_matchgate(4, 2 * (t % 2), rng)};
        cd expect = contract_bruteforce(nested);
        TensorNetwork r = contract_self_loops(nested, 0);
        EXPECT_LT(rel_err(as_dense(r.tensors[0])[0], expect), 1e-9);
    }

    TensorNetwork inter;
    inter.genus = 1;
    inter.vertices = {Vertex{0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}}};
    inter.edges = {Edge{0}, Edge{1}};
    inter.tensors = {random_matchgate(4, 0, rng)};
    EXPECT_THROW(contract_self_loops(inter, 0), InvalidInput);
}

TEST(network, contract_edge_pair_rejects) {
    TensorNetwork net;
    // u has edges to v at positions 0 and 2 with another edge between them.
    net.vertices = {Vertex{0, {{0, 0}, {2, 0}, {1, 0}, {3, 0}}}, Vertex{1, {{1, 1}, {0, 1}}},
                    Vertex{2, {{2, 1}, {3, 1}}}};
    net.edges = {Edge{0}, Edge{1}, Edge{2}, Edge{3}};
    std::mt19937_64 rng(54);
    net.tensors = {random_matchgate(4, 0, rng), random_matchgate(2, 0, rng), random_matchgate(2, 0, rng)};
    EXPECT_THROW(contract_edge_pair(net, 0, 1), InvalidInput);
    EXPECT_THROW(contract_edge_pair(net, 1, 2), InvalidInput);

    // Same orientation at both ends.
    TensorNetwork same;
    same.vertices = {Vertex{0, {{0, 0}, {1, 0}, {2, 0}}}, Vertex{1, {{0, 1}, {1, 1}, {2, 1}}}};
    same.edges = {Edge{0}, Edge{1}, Edge{2}};
    same.tensors = {random_matchgate(3, 1, rng), random_matchgate(3, 1, rng)};
    EXPECT_THROW(contract_edge_pair(same, 0, 1), InvalidInput);
}

TEST(network, sequential_matches_bruteforce) {
    std::mt19937_64 rng(55);
    int nonzero = 0;
    for (int t = 0; t < 100; t++) {
        RandomNetworkSpec spec;
        spec.vertices = 1 + t % 6;
        spec.edges = std::min(10, spec.vertices - 1 + (t / 6) % 6);
        spec.edges = std::max(spec.edges, spec.vertices == 1 ? 1 : 0);
        TensorNetwork net = gen_random_network(spec, rng);
        cd expect = contract_bruteforce(net);
        cd got = contract_sequential(net);
        double scale = std::max({std::abs(expect), std::abs(got), 1e-12});
        EXPECT_LT(std::abs(expect - got) / scale, 1e-7) << "trial " << t;
        nonzero += std::abs(expect) > 1e-9;
    }
    EXPECT_GT(nonzero, 30);
}

TEST(network, open_bruteforce) {
    cd w1(0.5, 1), w2(-2, 0.25);
    TensorNetwork net;
    net.vertices = {Vertex{0, {{0, 0}, {1, 0}}}, Vertex{1, {{1, 1}, {2, 0}}}};
    net.edges = {Edge{0}, Edge{1}, Edge{2}};
    net.tensors = {pair_tensor(w1), pair_tensor(w2)};
    net.stub_order = std::vector<int>{0, 2};
    DenseTensor T = contract_open_bruteforce(net);
    EXPECT_LT(std::abs(T[0] - 1.0), 1e-14);
    EXPECT_LT(std::abs(T[0b11] - w1 * w2), 1e-14);
}
