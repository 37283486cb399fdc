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

#include <fstream>

using namespace mgc;

namespace {

template <typename F>
auto guarded(const char *what, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw InvalidInput(std::string(what) + ": " + e.what());
    }
}

int get_int(const Json &j, const char *key) {
    if (!j.contains(key)) {
        throw InvalidInput(std::string("missing field '") + key + "'");
    }
    return j.at(key).get<int>();
}

}  // namespace

Json mgc::complex_to_json(cd z) {
    return Json::array({z.real(), z.imag()});
}

cd mgc::complex_from_json(const Json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidInput("complex number must be [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json mgc::dense_to_json(const DenseTensor &T) {
    Json values = Json::array();
    for (uint32_t lx = 0; lx < (uint32_t{1} << T.rank); lx++) {
        values.push_back(complex_to_json(T[lex_index(lx, T.rank)]));
    }
    return {{"rank", T.rank}, {"values", values}};
}

DenseTensor mgc::dense_from_json(const Json &j) {
    return guarded("dense tensor", [&] {
        int rank = get_int(j, "rank");
        if (rank < 0 || rank > DenseTensor::MAX_RANK) {
            throw SizeLimitExceeded("dense tensor: rank " + std::to_string(rank) + " out of range");
        }
        const Json &values = j.at("values");
        if (!values.is_array() || values.size() != (size_t{1} << rank)) {
            throw InvalidInput("dense tensor: expected 2^rank values");
        }
        DenseTensor T(rank);
        for (uint32_t lx = 0; lx < values.size(); lx++) {
            T[lex_index(lx, rank)] = complex_from_json(values[lx]);
        }
        return T;
    });
}

Json mgc::canonical_to_json(const CanonicalMatchgate &M) {
    Json A = Json::array();
    for (int a = 0; a < M.n; a++) {
        for (int b = a + 1; b < M.n; b++) {
            A.push_back(complex_to_json(M.A(a, b)));
        }
    }
    Json B = Json::array();
    for (int r = 0; r < M.k(); r++) {
        for (int c = 0; c < M.n; c++) {
            B.push_back(complex_to_json(M.B(r, c)));
        }
    }
    return {{"n", M.n},
            {"k", M.k()},
            {"A", A},
            {"B", B},
            {"C", complex_to_json(M.C)},
            {"parity", M.parity == Parity::Odd ? 1 : 0}};
}

CanonicalMatchgate mgc::canonical_from_json(const Json &j) {
    return guarded("canonical matchgate", [&] {
        CanonicalMatchgate M;
        M.n = get_int(j, "n");
        int k = j.contains("k") ? j.at("k").get<int>() : 0;
        if (M.n < 0 || k < 0 || k > M.n) {
            throw InvalidInput("canonical matchgate: bad n or k");
        }
        const Json &A = j.at("A");
        const Json B = j.contains("B") ? j.at("B") : Json::array();
        if (!A.is_array() || A.size() != (size_t)M.n * (M.n - 1) / 2) {
            throw InvalidInput("canonical matchgate: A must hold n(n-1)/2 entries");
        }
        if (!B.is_array() || B.size() != (size_t)k * M.n) {
            throw InvalidInput("canonical matchgate: B must hold k*n entries");
        }
        M.A = CMat::Zero(M.n, M.n);
        size_t p = 0;
        for (int a = 0; a < M.n; a++) {
            for (int b = a + 1; b < M.n; b++) {
                M.A(a, b) = complex_from_json(A[p++]);
                M.A(b, a) = -M.A(a, b);
            }
        }
        M.B = CMat::Zero(k, M.n);
        for (int r = 0; r < k; r++) {
            for (int c = 0; c < M.n; c++) {
                M.B(r, c) = complex_from_json(B[(size_t)r * M.n + c]);
            }
        }
        M.C = j.contains("C") ? complex_from_json(j.at("C")) : cd(1.0);
        const Json &par = j.contains("parity") ? j.at("parity") : Json(0);
        if (par.is_string()) {
            std::string s = par.get<std::string>();
            if (s != "even" && s != "odd") {
                throw InvalidInput("canonical matchgate: parity must be even or odd");
            }
            M.parity = s == "odd" ? Parity::Odd : Parity::Even;
        } else {
            int v = par.get<int>();
            if (v != 0 && v != 1) {
                throw InvalidInput("canonical matchgate: parity must be 0 or 1");
            }
            M.parity = v ? Parity::Odd : Parity::Even;
        }
        M.validate();
        return M;
    });
}

Json mgc::tensor_to_json(const Tensor &t) {
    if (auto d = std::get_if<DenseTensor>(&t)) {
        return dense_to_json(*d);
    }
    return canonical_to_json(std::get<CanonicalMatchgate>(t));
}

Tensor mgc::tensor_from_json(const Json &j) {
    if (!j.is_object()) {
        throw InvalidInput("tensor must be a JSON object");
    }
    if (j.contains("values")) {
        return dense_from_json(j);
    }
    return canonical_from_json(j);
}

Json mgc::network_to_json(const TensorNetwork &net) {
    Json vertices = Json::array();
    Json tensors = Json::object();
    for (size_t v = 0; v < net.vertices.size(); v++) {
        Json inc = Json::array();
        for (const EdgeEnd &e : net.vertices[v].incidence) {
            inc.push_back({e.edge, e.slot});
        }
        vertices.push_back({{"id", net.vertices[v].id}, {"incidence", inc}});
        if (v < net.tensors.size()) {
            tensors[std::to_string(net.vertices[v].id)] = tensor_to_json(net.tensors[v]);
        }
    }
    Json edges = Json::array();
    for (const Edge &e : net.edges) {
        edges.push_back({{"id", e.id}});
    }
    Json j = {{"genus", net.genus}, {"vertices", vertices}, {"edges", edges}, {"tensors", tensors}};
    if (net.planar_cut) {
        j["planar_cut"] = *net.planar_cut;
    }
    if (net.stub_order) {
        j["stub_order"] = *net.stub_order;
    }
    return j;
}

TensorNetwork mgc::network_from_json(const Json &j) {
    return guarded("network", [&] {
        TensorNetwork net;
        net.genus = j.contains("genus") ? j.at("genus").get<int>() : 0;
        for (const Json &jv : j.at("vertices")) {
            Vertex v;
            v.id = get_int(jv, "id");
            for (const Json &e : jv.at("incidence")) {
                if (e.is_array() && e.size() == 2) {
                    v.incidence.push_back({e[0].get<int>(), e[1].get<int>()});
                } else if (e.is_object()) {
                    v.incidence.push_back({get_int(e, "edge"), get_int(e, "slot")});
                } else {
                    throw InvalidInput("network: incidence entries are [edge_id, slot]");
                }
            }
            net.vertices.push_back(std::move(v));
        }
        for (const Json &je : j.at("edges")) {
            net.edges.push_back(Edge{je.is_object() ? get_int(je, "id") : je.get<int>()});
        }
        const Json &tensors = j.at("tensors");
        for (const Vertex &v : net.vertices) {
            std::string key = std::to_string(v.id);
            if (!tensors.contains(key)) {
                throw InvalidInput("network: no tensor for vertex " + key);
            }
            net.tensors.push_back(tensor_from_json(tensors.at(key)));
        }
        if (j.contains("planar_cut") && !j.at("planar_cut").is_null()) {
            net.planar_cut = j.at("planar_cut").get<std::vector<int>>();
        }
        if (j.contains("stub_order") && !j.at("stub_order").is_null()) {
            net.stub_order = j.at("stub_order").get<std::vector<int>>();
        }
        net.validate(true);
        return net;
    });
}

Json mgc::pairing_to_json(const Pairing &pairs) {
    Json p = Json::array();
    for (auto [l, r] : pairs) {
        p.push_back({l + 1, r + 1});
    }
    return {{"m", pairs.size()}, {"pairs", p}};
}

Pairing mgc::pairing_from_json(const Json &j) {
    return guarded("pairing", [&] {
        Pairing pairs;
        for (const Json &c : j.at("pairs")) {
            int l = c.at(0).get<int>() - 1;
            int r = c.at(1).get<int>() - 1;
            pairs.push_back({std::min(l, r), std::max(l, r)});
        }
        if (j.contains("m") && j.at("m").get<size_t>() != pairs.size()) {
            throw InvalidInput("pairing: m does not match the number of chords");
        }
        validate_pairing(pairs);
        return pairs;
    });
}

Json mgc::matchsum_graph_to_json(const MatchsumGraph &mg) {
    const PlanarGraph &g = mg.graph;
    std::vector<int> orient(g.edges.size(), 1);
    if (!g.edges.empty()) {
        auto faces = g.faces();
        int root = 0;
        if (!mg.ports.empty() && !g.rotation[mg.ports[0]].empty()) {
            root = g.dart_faces(faces)[g.rotation[mg.ports[0]][0]];
        }
        orient = kasteleyn_orient(g, root).orient;
    }
    Json edges = Json::array();
    for (size_t e = 0; e < g.edges.size(); e++) {
        edges.push_back({{"u", g.edges[e].u},
                         {"v", g.edges[e].v},
                         {"weight", complex_to_json(g.edges[e].weight)},
                         {"orientation", orient[e]}});
    }
    return {{"vertices", g.num_vertices},
            {"edges", edges},
            {"external", mg.ports},
            {"prefactor", complex_to_json(mg.prefactor)}};
}

Json mgc::report_to_json(const ContractionReport &r) {
    Json j = {{"value", complex_to_json(r.value)},
              {"planar_seconds", r.planar_seconds},
              {"genus_seconds", r.genus_seconds},
              {"planar_dimension", r.planar_dimension},
              {"sparse", r.sparse},
              {"cut_edges", r.cut_edges},
              {"rank", r.rank},
              {"pfaffians", r.pfaffians}};
    if (r.log_value.zero) {
        j["log_abs"] = nullptr;
    } else {
        j["log_abs"] = r.log_value.log_abs;
        j["phase"] = complex_to_json(r.log_value.phase);
    }
    return j;
}

Json mgc::read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void mgc::write_json_file(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}
