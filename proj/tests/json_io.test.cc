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

#include "mgc/json_io.h"

#include <cstdio>
#include <fstream>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mgc;
using namespace mgc_test;

TEST(json_io, complex_pairs) {
    EXPECT_EQ(complex_to_json(cd(1.5, -2)).dump(), "[1.5,-2.0]");
    EXPECT_EQ(complex_from_json(Json::parse("[0.25, 3]")), cd(0.25, 3));
    EXPECT_EQ(complex_from_json(Json::parse("2")), cd(2, 0));
    EXPECT_THROW(complex_from_json(Json::parse("[1]")), InvalidInput);
    EXPECT_THROW(complex_from_json(Json::parse("\"x\"")), InvalidInput);
}

TEST(json_io, dense_values_are_lexicographic) {
    // values[(x1 x2)] with x1 the high bit.
    Json j = Json::parse(R"({"rank": 2, "values": [[1,0],[2,0],[3,0],[4,0]]})");
    DenseTensor T = dense_from_json(j);
    EXPECT_EQ(T[0b00], cd(1));
    EXPECT_EQ(T[0b10], cd(2));  // x2 = 1
    EXPECT_EQ(T[0b01], cd(3));  // x1 = 1
    EXPECT_EQ(T[0b11], cd(4));
    EXPECT_EQ(dense_to_json(T), j);
}

TEST(json_io, dense_round_trip) {
    std::mt19937_64 rng(1);
    for (int n = 0; n <= 6; n++) {
        DenseTensor T = to_dense(random_matchgate(n, n / 2, rng));
        DenseTensor U = dense_from_json(Json::parse(dense_to_json(T).dump()));
        ASSERT_EQ(U.rank, n);
        for (uint32_t x = 0; x < (1u << n); x++) {
            EXPECT_EQ(U[x], T[x]);
        }
    }
}

TEST(json_io, dense_rejects_bad_shapes) {
    EXPECT_THROW(dense_from_json(Json::parse(R"({"rank": 2, "values": [[1,0]]})")), InvalidInput);
    EXPECT_THROW(dense_from_json(Json::parse(R"({"values": []})")), InvalidInput);
    EXPECT_THROW(dense_from_json(Json::parse(R"({"rank": 40, "values": []})")), SizeLimitExceeded);
}

TEST(json_io, canonical_round_trip) {
    std::mt19937_64 rng(2);
    for (int n = 0; n <= 6; n++) {
        for (int k = 0; k <= n; k++) {
            CanonicalMatchgate M = random_matchgate(n, k, rng);
            Json j = canonical_to_json(M);
            EXPECT_EQ(j["A"].size(), (size_t)n * (n - 1) / 2);
            EXPECT_EQ(j["B"].size(), (size_t)k * n);
            CanonicalMatchgate N = canonical_from_json(Json::parse(j.dump()));
            EXPECT_EQ(N.n, n);
            EXPECT_EQ(N.k(), k);
            EXPECT_EQ(N.parity, M.parity);
            EXPECT_LT(max_abs(N.A - M.A), 1e-15);
            EXPECT_LT(max_abs(N.B - M.B), 1e-15);
            EXPECT_EQ(N.C, M.C);
        }
    }
}

TEST(json_io, canonical_layout) {
    Json j = Json::parse(R"({"n": 3, "k": 1, "A": [[1,0],[2,0],[3,0]],
                             "B": [[0,0],[0,0],[0,0]], "C": [1,0], "parity": 0})");
    EXPECT_THROW(canonical_from_json(j), InvalidInput);  // B = 0 is not allowed with k = 1
    j["k"] = 0;
    j["B"] = Json::array();
    CanonicalMatchgate M = canonical_from_json(j);
    EXPECT_EQ(M.A(0, 1), cd(1));
    EXPECT_EQ(M.A(0, 2), cd(2));
    EXPECT_EQ(M.A(1, 2), cd(3));
    EXPECT_EQ(M.A(2, 1), cd(-3));
    j["parity"] = "even";
    EXPECT_EQ(canonical_from_json(j).parity, Parity::Even);
    j["parity"] = "odd";  // must agree with k mod 2
    EXPECT_THROW(canonical_from_json(j), InvalidInput);
    j["parity"] = 7;
    EXPECT_THROW(canonical_from_json(j), InvalidInput);
}

TEST(json_io, tensor_kind_is_detected) {
    std::mt19937_64 rng(3);
    CanonicalMatchgate M = random_matchgate(3, 1, rng);
    EXPECT_TRUE(std::holds_alternative<CanonicalMatchgate>(tensor_from_json(tensor_to_json(M))));
    EXPECT_TRUE(std::holds_alternative<DenseTensor>(tensor_from_json(tensor_to_json(to_dense(M)))));
    EXPECT_THROW(tensor_from_json(Json::parse("[1, 2]")), InvalidInput);
}

TEST(json_io, network_round_trip_preserves_value) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; t++) {
        RandomNetworkSpec spec;
        spec.vertices = 2 + t % 4;
        spec.edges = spec.vertices + t % 3;
        spec.max_degree = 4;
        spec.max_k = 2;
        TensorNetwork net = gen_random_network(spec, rng);
        TensorNetwork back = network_from_json(Json::parse(network_to_json(net).dump()));
        EXPECT_EQ(network_to_json(back), network_to_json(net));
        EXPECT_LT(rel_err(contract_bruteforce(back), contract_bruteforce(net)), 1e-12);
    }
}

TEST(json_io, network_keeps_cut_and_genus) {
    std::mt19937_64 rng(5);
    TensorNetwork net = two_vertex_torus_network(random_matchgate(4, 2, rng), random_matchgate(4, 2, rng));
    Json j = network_to_json(net);
    EXPECT_EQ(j["genus"], 1);
    EXPECT_EQ(j["planar_cut"], Json::parse("[2, 3]"));
    EXPECT_EQ(j["vertices"][0]["incidence"][0], Json::parse("[0, 0]"));
    TensorNetwork back = network_from_json(j);
    EXPECT_EQ(back.genus, 1);
    EXPECT_EQ(*back.planar_cut, *net.planar_cut);
}

TEST(json_io, network_rejects_malformed_input) {
    const char *missing_tensor = R"({"genus": 0, "vertices": [{"id": 0, "incidence": []}], "edges": [], "tensors": {}})";
    EXPECT_THROW(network_from_json(Json::parse(missing_tensor)), InvalidInput);
    const char *dangling = R"({"genus": 0, "vertices": [{"id": 0, "incidence": [[5, 0], [5, 0]]}], "edges": [],
                              "tensors": {"0": {"rank": 2, "values": [1, 0, 0, 1]}}})";
    EXPECT_THROW(network_from_json(Json::parse(dangling)), InvalidInput);
    EXPECT_THROW(network_from_json(Json::parse(R"({"vertices": 3})")), InvalidInput);
}

TEST(json_io, pairing_is_one_based) {
    Pairing p = {{0, 2}, {1, 3}};
    Json j = pairing_to_json(p);
    EXPECT_EQ(j, Json::parse(R"({"m": 2, "pairs": [[1, 3], [2, 4]]})"));
    EXPECT_EQ(pairing_from_json(j), p);
    EXPECT_EQ(pairing_from_json(Json::parse(R"({"pairs": [[2, 1]]})")), (Pairing{{0, 1}}));
    EXPECT_THROW(pairing_from_json(Json::parse(R"({"m": 1, "pairs": [[1, 3]]})")), InvalidInput);
    EXPECT_THROW(pairing_from_json(Json::parse(R"({"m": 2, "pairs": [[1, 2]]})")), InvalidInput);
}

TEST(json_io, matchsum_graph_dump) {
    std::mt19937_64 rng(6);
    for (int n = 1; n <= 4; n++) {
        MatchsumGraph mg = compile_matchsum(random_matchgate(n, n % 2, rng));
        Json j = matchsum_graph_to_json(mg);
        EXPECT_EQ(j["vertices"], mg.graph.num_vertices);
        EXPECT_EQ(j["external"], Json(mg.ports));
        ASSERT_EQ(j["edges"].size(), mg.graph.edges.size());
        KasteleynOrientation ko;
        ko.orient.resize(mg.graph.edges.size());
        for (size_t e = 0; e < mg.graph.edges.size(); e++) {
            EXPECT_EQ(j["edges"][e]["u"], mg.graph.edges[e].u);
            EXPECT_EQ(complex_from_json(j["edges"][e]["weight"]), mg.graph.edges[e].weight);
            ko.orient[e] = j["edges"][e]["orientation"];
            EXPECT_TRUE(ko.orient[e] == 1 || ko.orient[e] == -1);
        }
        auto faces = mg.graph.faces();
        ko.root_face = mg.graph.dart_faces(faces)[mg.graph.rotation[mg.ports[0]][0]];
        EXPECT_TRUE(verify_kasteleyn(mg.graph, ko).ok) << "n=" << n;
    }
}

TEST(json_io, files) {
    std::string path = ::testing::TempDir() + "mgc_json_io.json";
    write_json_file(path, pairing_to_json({{0, 1}}));
    EXPECT_EQ(read_json_file(path)["m"], 1);
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(read_json_file(path), InvalidInput);
    std::remove(path.c_str());
    EXPECT_THROW(read_json_file(path), InvalidInput);
}
