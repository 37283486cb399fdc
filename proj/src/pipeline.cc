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

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

using namespace mgc;

namespace {

struct CornerRef {
    int vertex;
    int index;  // insertion index in the incidence list
};

std::vector<CornerRef> face_corners(const std::vector<EndLocation> &face) {
    std::vector<CornerRef> r;
    for (const auto &d : face) {
        r.push_back({d.vertex, d.position + 1});
    }
    return r;
}

void insert_ends(TensorNetwork &net, CornerRef a, EdgeEnd ea, CornerRef b, EdgeEnd eb) {
    // Insert the later index first so the earlier one stays valid.
    if (a.vertex == b.vertex && b.index > a.index) {
        std::swap(a, b);
        std::swap(ea, eb);
    }
    auto &ia = net.vertices[a.vertex].incidence;
    ia.insert(ia.begin() + a.index, ea);
    auto &ib = net.vertices[b.vertex].incidence;
    ib.insert(ib.begin() + b.index, eb);
}

}  // namespace

TensorNetwork mgc::random_planar_topology(const RandomNetworkSpec &spec, std::mt19937_64 &rng) {
    if (spec.vertices < 1) {
        throw InvalidInput("random network: need at least one vertex");
    }
    TensorNetwork net;
    net.vertices.push_back(Vertex{0, {}});
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    int next_edge = 0;
    for (int v = 1; v < spec.vertices; v++) {
        int u;
        int tries = 0;
        do {
            u = pick(v);
        } while (net.degree(u) >= spec.max_degree && ++tries < 100);
        int idx = pick(net.degree(u) + 1);
        net.vertices[u].incidence.insert(net.vertices[u].incidence.begin() + idx, EdgeEnd{next_edge, 0});
        net.vertices.push_back(Vertex{v, {EdgeEnd{next_edge, 1}}});
        net.edges.push_back(Edge{next_edge++});
    }
    int attempts = 0;
    while ((int)net.edges.size() < spec.edges && attempts++ < 1000) {
        if (net.vertices.size() == 1 && net.degree(0) == 0) {
            if (!spec.self_loops) {
                break;
            }
            net.vertices[0].incidence = {EdgeEnd{next_edge, 0}, EdgeEnd{next_edge, 1}};
            net.edges.push_back(Edge{next_edge++});
            continue;
        }
        auto faces = trace_faces(net);
        auto corners = face_corners(faces[pick((int)faces.size())]);
        CornerRef a = corners[pick((int)corners.size())];
        CornerRef b = corners[pick((int)corners.size())];
        if (a.vertex == b.vertex && !spec.self_loops) {
            continue;
        }
        int extra_a = a.vertex == b.vertex ? 2 : 1;
        if (net.degree(a.vertex) + extra_a > spec.max_degree || net.degree(b.vertex) + 1 > spec.max_degree) {
            continue;
        }
        insert_ends(net, a, EdgeEnd{next_edge, 0}, b, EdgeEnd{next_edge, 1});
        net.edges.push_back(Edge{next_edge++});
    }
    if (spec.stubs > 0) {
        std::vector<std::vector<EndLocation>> faces = trace_faces(net);
        std::vector<CornerRef> corners;
        if (faces.empty()) {
            corners.push_back({0, 0});
        } else {
            corners = face_corners(faces[pick((int)faces.size())]);
        }
        // Sort chosen corners by position so repeated insertions stay valid:
        // insert at the highest index of each vertex first.
        std::vector<std::pair<CornerRef, int>> chosen;
        for (int s = 0; s < spec.stubs; s++) {
            chosen.push_back({corners[pick((int)corners.size())], next_edge});
            net.edges.push_back(Edge{next_edge++});
        }
        std::stable_sort(chosen.begin(), chosen.end(), [](const auto &x, const auto &y) {
            if (x.first.vertex != y.first.vertex) {
                return x.first.vertex < y.first.vertex;
            }
            return x.first.index > y.first.index;
        });
        for (auto &[c, id] : chosen) {
            auto &inc = net.vertices[c.vertex].incidence;
            inc.insert(inc.begin() + c.index, EdgeEnd{id, 0});
        }
        // Counterclockwise boundary order is the reverse of the face walk.
        std::vector<int> order;
        for (const auto &face : trace_faces(net)) {
            std::vector<int> here;
            for (const auto &d : face) {
                const EdgeEnd &e = net.vertices[d.vertex].incidence[d.position];
                auto loc = net.locate(e.edge);
                if (loc[1].vertex < 0) {
                    here.push_back(e.edge);
                }
            }
            if (!here.empty()) {
                if (!order.empty()) {
                    throw std::logic_error("random network: stubs ended up on two faces");
                }
                order.assign(here.rbegin(), here.rend());
            }
        }
        net.stub_order = order;
    }
    return net;
}

TensorNetwork mgc::gen_random_network(const RandomNetworkSpec &spec, std::mt19937_64 &rng) {
    TensorNetwork net = random_planar_topology(spec, rng);
    for (size_t v = 0; v < net.vertices.size(); v++) {
        int d = net.degree((int)v);
        int kmax = spec.max_k < 0 ? d : std::min(d, spec.max_k);
        int k = std::uniform_int_distribution<int>(0, kmax)(rng);
        net.tensors.push_back(random_matchgate(d, k, rng));
    }
    return net;
}

CutNetwork mgc::cut_open(const TensorNetwork &net) {
    net.validate(false);
    CutNetwork out;
    out.open = net;
    out.open.planar_cut.reset();
    out.open.stub_order.reset();
    std::vector<std::pair<int, int>> split;  // (original id, id of the new stub)
    if (net.planar_cut) {
        int next = net.next_edge_id();
        for (int id : *net.planar_cut) {
            auto loc = net.locate(id);
            auto &end = out.open.vertices[loc[1].vertex].incidence[loc[1].position];
            end = EdgeEnd{next, 0};
            out.open.edges.push_back(Edge{next});
            split.push_back({id, next++});
        }
    }
    if (split.empty()) {
        return out;
    }
    std::vector<int> order = boundary_stub_order(out.open);
    out.open.stub_order = order;
    auto pos = [&](int id) { return (int)(std::find(order.begin(), order.end(), id) - order.begin()); };
    for (auto [a, b] : split) {
        int pa = pos(a), pb = pos(b);
        out.pairs.push_back({std::min(pa, pb), std::max(pa, pb)});
    }
    return out;
}

ContractionReport mgc::contract(const TensorNetwork &net, const OpenContractionOptions &opt) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    CutNetwork cut = cut_open(net);
    if (cut.pairs.empty() && embedding_genus(net) != 0) {
        throw InvalidInput("contract: a network that is not planar needs a planar_cut");
    }
    OpenContraction open = contract_open_network(cut.open, opt);
    auto t1 = clock::now();
    ContractionReport rep;
    rep.planar_seconds = std::chrono::duration<double>(t1 - t0).count();
    rep.planar_dimension = open.graph_vertices;
    rep.sparse = open.sparse;
    rep.cut_edges = (int)cut.pairs.size();
    if (cut.pairs.empty()) {
        rep.value = open.tensor.C;
        rep.log_value = open.scalar;
        rep.pfaffians = 1;
        return rep;
    }
    auto sv = contract_single_vertex(open.tensor, cut.pairs, net.genus);
    rep.genus_seconds = std::chrono::duration<double>(clock::now() - t1).count();
    rep.value = sv.value;
    rep.rank = sv.rank;
    rep.pfaffians = sv.terms;
    if (sv.value == cd(0)) {
        rep.log_value.zero = true;
    } else {
        rep.log_value = {false, std::log(std::abs(sv.value)), sv.value / std::abs(sv.value)};
    }
    return rep;
}

namespace {

TensorNetwork network_shape(const PlanarGraph &g, int genus) {
    TensorNetwork net;
    net.genus = genus;
    for (int v = 0; v < g.num_vertices; v++) {
        Vertex x{v, {}};
        for (int d : g.rotation[v]) {
            x.incidence.push_back(EdgeEnd{d / 2, d % 2});
        }
        net.vertices.push_back(x);
    }
    for (size_t e = 0; e < g.edges.size(); e++) {
        net.edges.push_back(Edge{(int)e});
    }
    return net;
}

}  // namespace

TensorNetwork mgc::gen_matching_network(const PlanarGraph &g, int genus) {
    TensorNetwork net = network_shape(g, genus);
    for (int v = 0; v < g.num_vertices; v++) {
        int d = (int)g.rotation[v].size();
        if (d == 0) {
            net.tensors.push_back(zero_matchgate(0));
            continue;
        }
        CanonicalMatchgate M;
        M.n = d;
        M.A = CMat::Zero(d, d);
        M.B = CMat(1, d);
        for (int j = 0; j < d; j++) {
            const auto &E = g.edges[g.rotation[v][j] / 2];
            M.B(0, j) = std::min(E.u, E.v) == v ? E.weight : cd(1.0);
        }
        M.parity = Parity::Odd;
        net.tensors.push_back(M);
    }
    return net;
}

CanonicalMatchgate mgc::even_indicator(int degree, const std::vector<double> &scale) {
    CanonicalMatchgate M;
    M.n = degree;
    M.A = CMat::Zero(degree, degree);
    M.B = CMat(0, degree);
    for (int a = 0; a < degree; a++) {
        for (int b = a + 1; b < degree; b++) {
            double s = (scale.empty() ? 1.0 : scale[a] * scale[b]);
            M.A(a, b) = s;
            M.A(b, a) = -s;
        }
    }
    return M;
}

IsingNetwork mgc::gen_ising_network(const PlanarGraph &g, int genus) {
    IsingNetwork out;
    out.net = network_shape(g, genus);
    out.prefactor = std::pow(2.0, g.num_vertices);
    for (const auto &e : g.edges) {
        out.prefactor *= std::cosh(e.weight.real());
    }
    for (int v = 0; v < g.num_vertices; v++) {
        int d = (int)g.rotation[v].size();
        if (d > 8) {
            throw InvalidInput("gen_ising_network: vertex degree above 8");
        }
        std::vector<double> scale(d, 1.0);
        for (int j = 0; j < d; j++) {
            const auto &E = g.edges[g.rotation[v][j] / 2];
            if (std::min(E.u, E.v) == v) {
                scale[j] = std::tanh(E.weight.real());
            }
        }
        out.net.tensors.push_back(even_indicator(d, scale));
    }
    return out;
}

namespace {

// Darts per vertex in the slots east, north, west, south (rows grow southward).
void set_grid_rotation(PlanarGraph &g, const std::vector<std::array<int, 4>> &slots) {
    for (int v = 0; v < g.num_vertices; v++) {
        g.rotation[v].clear();
        for (int d : slots[v]) {
            if (d >= 0) {
                g.rotation[v].push_back(d);
            }
        }
    }
}

PlanarGraph build_grid(int rows, int cols, bool wrap, const std::vector<cd> &weights, std::vector<int> *wraps) {
    PlanarGraph g;
    for (int i = 0; i < rows * cols; i++) {
        g.add_vertex();
    }
    std::vector<std::array<int, 4>> slots(rows * cols, {-1, -1, -1, -1});
    auto id = [&](int r, int c) { return r * cols + c; };
    auto weight = [&]() { return g.edges.size() < weights.size() ? weights[g.edges.size()] : cd(1.0); };
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c + 1 < cols + (wrap ? 1 : 0); c++) {
            int a = id(r, c), b = id(r, (c + 1) % cols);
            if (c + 1 == cols && wraps) {
                wraps->push_back((int)g.edges.size());
            }
            int e = g.add_edge(a, b, weight());
            slots[a][0] = 2 * e;
            slots[b][2] = 2 * e + 1;
        }
    }
    for (int r = 0; r + 1 < rows + (wrap ? 1 : 0); r++) {
        for (int c = 0; c < cols; c++) {
            int a = id(r, c), b = id((r + 1) % rows, c);
            if (r + 1 == rows && wraps) {
                wraps->push_back((int)g.edges.size());
            }
            int e = g.add_edge(a, b, weight());
            slots[a][3] = 2 * e;
            slots[b][1] = 2 * e + 1;
        }
    }
    set_grid_rotation(g, slots);
    return g;
}

}  // namespace

PlanarGraph mgc::grid_graph(int rows, int cols, const std::vector<cd> &weights) {
    if (rows < 1 || cols < 1) {
        throw InvalidInput("grid_graph: dimensions must be positive");
    }
    return build_grid(rows, cols, false, weights, nullptr);
}

TorusGraph mgc::torus_grid(int rows, int cols, const std::vector<cd> &weights) {
    if (rows < 3 || cols < 3) {
        throw InvalidInput("torus_grid: dimensions must be at least 3");
    }
    TorusGraph t;
    t.graph = build_grid(rows, cols, true, weights, &t.wrap_edges);
    return t;
}

TensorNetwork mgc::two_vertex_torus_network(const Tensor &tu, const Tensor &tv) {
    if (tensor_rank(tu) != 4 || tensor_rank(tv) != 4) {
        throw InvalidInput("two_vertex_torus_network: both tensors need rank 4");
    }
    // Edges 0, 1 stay in the disk; 2 and 3 wrap around the two handles.
    TensorNetwork net;
    net.genus = 1;
    net.vertices = {Vertex{0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}}, Vertex{1, {{1, 1}, {0, 1}, {2, 1}, {3, 1}}}};
    net.edges = {Edge{0}, Edge{1}, Edge{2}, Edge{3}};
    net.tensors = {tu, tv};
    net.planar_cut = std::vector<int>{2, 3};
    return net;
}

double mgc::grid_matching_log_product(int rows, int cols, double x, double y) {
    if (rows % 2 || cols % 2) {
        throw InvalidInput("grid_matching_log_product: both dimensions must be even");
    }
    const double pi = std::acos(-1.0);
    double s = 0;
    for (int j = 1; j <= rows / 2; j++) {
        for (int k = 1; k <= cols / 2; k++) {
            double cj = std::cos(pi * j / (rows + 1)), ck = std::cos(pi * k / (cols + 1));
            s += std::log(4 * y * y * cj * cj + 4 * x * x * ck * ck);
        }
    }
    return s;
}
