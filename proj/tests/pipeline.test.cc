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

#include "mgc/pipeline.h"

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mgc;
using namespace mgc_test;

static double close(cd a, cd b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

static std::vector<cd> random_weights(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.2, 1.5);
    std::vector<cd> w;
    for (int i = 0; i < n; i++) {
        w.push_back(u(rng));
    }
    return w;
}

TEST(pipeline, random_network_shapes) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; t++) {
        RandomNetworkSpec spec;
        spec.vertices = 1 + t % 6;
        spec.edges = t % 9;
        spec.stubs = t % 4;
        TensorNetwork net = gen_random_network(spec, rng);
        net.validate(true);
        EXPECT_EQ(count_components(net), 1);
        EXPECT_EQ(embedding_genus(net), 0);
        EXPECT_EQ(net.stubs().size(), (size_t)spec.stubs);
        EXPECT_EQ(boundary_stub_order(net), net.stubs());
        for (int v = 0; v < (int)net.vertices.size(); v++) {
            EXPECT_LE(net.degree(v), spec.max_degree + spec.stubs);
        }
    }
}

TEST(pipeline, planar_network_matches_bruteforce) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; t++) {
        RandomNetworkSpec spec;
        spec.vertices = 2 + t % 5;
        spec.edges = spec.vertices + t % 4;
        spec.max_degree = 4;
        spec.max_k = 2;
        TensorNetwork net = gen_random_network(spec, rng);
        cd expect = contract_bruteforce(net);
        ContractionReport rep = contract(net);
        EXPECT_EQ(rep.pfaffians, 1);
        EXPECT_LT(std::abs(rep.value - expect), 1e-7 * std::max(1.0, std::abs(expect))) << "trial " << t;
    }
}

TEST(pipeline, matching_network_examples) {
    PlanarGraph edge;
    edge.add_vertex();
    edge.add_vertex();
    edge.add_edge_rotated(0, 1, cd(0.25, 2));
    EXPECT_LT(close(contract(gen_matching_network(edge)).value, cd(0.25, 2)), 1e-12);

    PlanarGraph square = grid_graph(2, 2);
    EXPECT_LT(close(contract(gen_matching_network(square)).value, 2.0), 1e-12);
    EXPECT_LT(close(contract(gen_matching_network(grid_graph(4, 4))).value, 36.0), 1e-10);
}

TEST(pipeline, matching_network_matches_enumeration) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 12; t++) {
        int rows = 2 + t % 3, cols = 2 + (t / 3) % 3;
        PlanarGraph g = grid_graph(rows, cols, random_weights(2 * rows * cols, rng));
        cd expect = matching_sum_bruteforce(g, {});
        cd got = contract(gen_matching_network(g)).value;
        EXPECT_LT(std::abs(got - expect), 1e-9 * std::max(1.0, std::abs(expect))) << rows << "x" << cols;
    }
}

TEST(pipeline, grid_product_formula) {
    for (auto [r, c] : {std::pair{2, 2}, {2, 4}, {4, 4}, {4, 6}, {6, 6}}) {
        int nh = r * (c - 1), nv = (r - 1) * c;
        std::vector<cd> w(nh, 0.7);
        w.resize(nh + nv, 1.3);
        cd expect = matching_sum_bruteforce(grid_graph(r, c, w), {});
        EXPECT_LT(std::abs(grid_matching_log_product(r, c, 0.7, 1.3) - std::log(expect.real())), 1e-10) << r << "x" << c;
    }
}

TEST(pipeline, even_indicator_is_matchgate) {
    for (int d = 2; d <= 8; d++) {
        DenseTensor T = to_dense(even_indicator(d));
        EXPECT_TRUE(check_matchgate(T).ok) << d;
        for (uint32_t x = 0; x < (1u << d); x++) {
            EXPECT_EQ(T[x], cd(std::popcount(x) % 2 ? 0 : 1)) << d << " " << x;
        }
    }
}

TEST(pipeline, ising_examples) {
    PlanarGraph edge;
    edge.add_vertex();
    edge.add_vertex();
    edge.add_edge_rotated(0, 1, 0.8);
    IsingNetwork is = gen_ising_network(edge);
    EXPECT_LT(close(is.prefactor * contract(is.net).value, 4 * std::cosh(0.8)), 1e-12);

    PlanarGraph zero = grid_graph(2, 3, std::vector<cd>(7, 0.0));
    IsingNetwork z = gen_ising_network(zero);
    EXPECT_LT(close(z.prefactor * contract(z.net).value, 64.0), 1e-12);
}

TEST(pipeline, ising_grid_matches_spin_sum) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 5; t++) {
        std::vector<cd> J;
        for (int i = 0; i < 12; i++) {
            J.push_back(u(rng));
        }
        PlanarGraph g = grid_graph(3, 3, J);
        IsingNetwork is = gen_ising_network(g);
        cd got = is.prefactor * contract(is.net).value;
        EXPECT_LT(close(got, ising_spin_sum(g)), 1e-9) << t;
    }
}

TEST(pipeline, ising_degree_limit) {
    PlanarGraph star;
    star.add_vertex();
    for (int i = 0; i < 9; i++) {
        star.add_edge_rotated(0, star.add_vertex(), 0.1);
    }
    EXPECT_THROW(gen_ising_network(star), InvalidInput);
}

TEST(pipeline, two_vertex_torus) {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 20; t++) {
        TensorNetwork net =
            two_vertex_torus_network(random_matchgate(4, 2 * (t % 3), rng), random_matchgate(4, 2 * ((t / 3) % 3), rng));
        EXPECT_EQ(embedding_genus(net), 1);
        CutNetwork cut = cut_open(net);
        EXPECT_EQ(embedding_genus(cut.open), 0);
        cd expect = contract_bruteforce(net);
        ContractionReport rep = contract(net);
        EXPECT_EQ(rep.rank, 2);
        EXPECT_LE(rep.pfaffians, 4);
        EXPECT_LT(std::abs(rep.value - expect), 1e-7 * std::max(1.0, std::abs(expect))) << "trial " << t;
    }
}

TEST(pipeline, torus_matching_network) {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 4; t++) {
        TorusGraph tg = torus_grid(4, 4, t == 0 ? std::vector<cd>{} : random_weights(32, rng));
        TensorNetwork net = gen_matching_network(tg.graph, 1);
        net.planar_cut = tg.wrap_edges;
        EXPECT_EQ(embedding_genus(net), 1);
        cd expect = matching_sum_bruteforce(tg.graph, {});
        ContractionReport rep = contract(net);
        EXPECT_LE(rep.pfaffians, 4);
        EXPECT_LT(std::abs(rep.value - expect), 1e-7 * std::max(1.0, std::abs(expect))) << "trial " << t;
    }
    // The 4x4 torus has 272 perfect matchings.
    EXPECT_EQ(matching_sum_bruteforce(torus_grid(4, 4).graph, {}), cd(272));
}

TEST(pipeline, contractible_cut_has_one_term) {
    // A planar grid with a cut of ordinary edges: rank 0, one Pfaffian.
    std::mt19937_64 rng(47);
    PlanarGraph g = grid_graph(3, 4, random_weights(17, rng));
    TensorNetwork net = gen_matching_network(g, 1);
    net.planar_cut = std::vector<int>{0, 8};
    ContractionReport rep = contract(net);
    EXPECT_EQ(rep.rank, 0);
    EXPECT_EQ(rep.pfaffians, 1);
    cd expect = matching_sum_bruteforce(g, {});
    EXPECT_LT(std::abs(rep.value - expect), 1e-9 * std::max(1.0, std::abs(expect)));
}

TEST(pipeline, cut_stub_order_rotation_invariance) {
    // Starting the boundary at a different stub relabels the chords only.
    std::mt19937_64 rng(48);
    TensorNetwork net = two_vertex_torus_network(random_matchgate(4, 2, rng), random_matchgate(4, 0, rng));
    CutNetwork cut = cut_open(net);
    cd base = contract_single_vertex(contract_open_network(cut.open).tensor, cut.pairs).value;
    int m2 = (int)cut.open.stub_order->size();
    for (int shift = 1; shift < m2; shift++) {
        TensorNetwork rotated = cut.open;
        std::rotate(rotated.stub_order->begin(), rotated.stub_order->begin() + shift, rotated.stub_order->end());
        Pairing pairs;
        for (auto [l, r] : cut.pairs) {
            int a = (l - shift + m2) % m2, b = (r - shift + m2) % m2;
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
        cd v = contract_single_vertex(contract_open_network(rotated).tensor, pairs).value;
        EXPECT_LT(std::abs(v - base), 1e-9 * std::max(1.0, std::abs(base))) << shift;
    }
}

TEST(pipeline, nonplanar_without_cut_is_rejected) {
    std::mt19937_64 rng(49);
    TensorNetwork net = two_vertex_torus_network(random_matchgate(4, 0, rng), random_matchgate(4, 0, rng));
    net.planar_cut.reset();
    EXPECT_THROW(contract(net), InvalidInput);
}

TEST(pipeline, large_grid_uses_sparse_path) {
    int n = 30;
    double w = 0.6;
    PlanarGraph g = grid_graph(n, n, std::vector<cd>(2 * n * (n - 1), w));
    ContractionReport rep = contract(gen_matching_network(g));
    EXPECT_TRUE(rep.sparse);
    EXPECT_NEAR(rep.log_value.log_abs, grid_matching_log_product(n, n, w, w), 1e-8);
    EXPECT_LT(std::abs(rep.log_value.phase - cd(1)), 1e-8);
}
