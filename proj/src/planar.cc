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

#include "mgc/planar.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "mgc/linalg.h"

using namespace mgc;

int PlanarGraph::add_vertex() {
    rotation.emplace_back();
    return num_vertices++;
}

int PlanarGraph::add_edge(int u, int v, cd weight) {
    if (u == v) {
        throw InvalidInput("PlanarGraph: self-loops are not supported");
    }
    edges.push_back({u, v, weight});
    return (int)edges.size() - 1;
}

int PlanarGraph::add_edge_rotated(int u, int v, cd weight) {
    int e = add_edge(u, v, weight);
    rotation[u].push_back(2 * e);
    rotation[v].push_back(2 * e + 1);
    return e;
}

std::vector<std::vector<int>> PlanarGraph::faces() const {
    std::vector<int> pos(2 * edges.size(), -1);
    for (int v = 0; v < num_vertices; v++) {
        for (size_t p = 0; p < rotation[v].size(); p++) {
            int d = rotation[v][p];
            if (d < 0 || d >= (int)pos.size() || tail(d) != v || pos[d] >= 0) {
                throw InvalidInput("PlanarGraph: inconsistent rotation system");
            }
            pos[d] = (int)p;
        }
    }
    for (int p : pos) {
        if (p < 0) {
            throw InvalidInput("PlanarGraph: dart missing from rotation system");
        }
    }
    std::vector<char> used(pos.size(), 0);
    std::vector<std::vector<int>> out;
    for (int d0 = 0; d0 < (int)pos.size(); d0++) {
        if (used[d0]) {
            continue;
        }
        std::vector<int> face;
        for (int d = d0; !used[d];) {
            used[d] = 1;
            face.push_back(d);
            int r = d ^ 1;
            const auto &rot = rotation[head(d)];
            int deg = (int)rot.size();
            d = rot[(pos[r] + deg - 1) % deg];
        }
        out.push_back(std::move(face));
    }
    return out;
}

std::vector<int> PlanarGraph::dart_faces(const std::vector<std::vector<int>> &fs) const {
    std::vector<int> f(2 * edges.size(), -1);
    for (size_t i = 0; i < fs.size(); i++) {
        for (int d : fs[i]) {
            f[d] = (int)i;
        }
    }
    return f;
}

void PlanarGraph::check_embedding() const {
    std::vector<int> parent(num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int comps = num_vertices;
    for (const auto &e : edges) {
        int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            comps--;
        }
    }
    if (comps > 1) {
        throw InvalidInput("PlanarGraph: graph is disconnected");
    }
    int F = std::max<int>(1, (int)faces().size());
    if (num_vertices - (int)edges.size() + F != 2) {
        throw InvalidInput("PlanarGraph: rotation system is not planar (Euler check failed)");
    }
}

cd mgc::matching_sum_bruteforce(const PlanarGraph &g, const std::vector<int> &removed, size_t max_states) {
    int n = g.num_vertices;
    std::vector<char> gone(n, 0);
    for (int v : removed) {
        if (v < 0 || v >= n) {
            throw InvalidInput("matching_sum: removed vertex out of range");
        }
        gone[v] = 1;
    }
    std::vector<std::map<int, cd>> adj(n);
    for (const auto &e : g.edges) {
        if (!gone[e.u] && !gone[e.v]) {
            adj[e.u][e.v] += e.weight;
            adj[e.v][e.u] += e.weight;
        }
    }
    int live = 0;
    for (int v = 0; v < n; v++) {
        live += !gone[v];
    }
    if (live % 2) {
        return 0.0;
    }
    // Greedy order keeping the frontier (placed vertices with unplaced
    // neighbours) as small as possible.
    std::vector<int> order, at(n, -1), unplaced(n, 0), placed_nb(n, 0);
    for (int v = 0; v < n; v++) {
        unplaced[v] = (int)adj[v].size();
    }
    while ((int)order.size() < live) {
        int best = -1, best_delta = 0;
        for (int v = 0; v < n; v++) {
            if (gone[v] || at[v] >= 0) {
                continue;
            }
            int delta = unplaced[v] > 0 ? 1 : 0;
            for (auto &[w, x] : adj[v]) {
                if (at[w] >= 0 && unplaced[w] == 1) {
                    delta--;
                }
            }
            if (best < 0 || delta < best_delta ||
                (delta == best_delta &&
                 (placed_nb[v] > placed_nb[best] || (placed_nb[v] == placed_nb[best] && unplaced[v] < unplaced[best])))) {
                best = v;
                best_delta = delta;
            }
        }
        at[best] = (int)order.size();
        order.push_back(best);
        for (auto &[w, x] : adj[best]) {
            unplaced[w]--;
            placed_nb[w]++;
        }
    }
    // A vertex may wait unmatched until its last neighbour is placed.
    std::vector<int> last(n, -1);
    std::vector<std::vector<int>> expire(live);
    for (int v : order) {
        last[v] = at[v];
        for (auto &[w, x] : adj[v]) {
            last[v] = std::max(last[v], at[w]);
        }
        expire[last[v]].push_back(v);
    }
    using Key = std::vector<int>;
    struct KeyHash {
        size_t operator()(const Key &k) const {
            size_t h = 1469598103934665603ull;
            for (int x : k) {
                h = (h ^ (size_t)x) * 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<Key, cd, KeyHash> states{{Key{}, cd(1.0)}};
    for (int step = 0; step < live; step++) {
        int v = order[step];
        std::unordered_map<Key, cd, KeyHash> next;
        for (auto &[key, amp] : states) {
            if (last[v] > step) {
                Key k2 = key;
                k2.insert(std::lower_bound(k2.begin(), k2.end(), v), v);
                next[k2] += amp;
            }
            for (size_t i = 0; i < key.size(); i++) {
                auto it = adj[v].find(key[i]);
                if (it == adj[v].end()) {
                    continue;
                }
                Key k2 = key;
                k2.erase(k2.begin() + i);
                next[k2] += amp * it->second;
            }
        }
        for (int w : expire[step]) {
            for (auto it = next.begin(); it != next.end();) {
                if (std::binary_search(it->first.begin(), it->first.end(), w)) {
                    it = next.erase(it);
                } else {
                    ++it;
                }
            }
        }
        if (next.size() > max_states) {
            throw SizeLimitExceeded("matching_sum: frontier state budget exceeded");
        }
        states = std::move(next);
    }
    auto it = states.find(Key{});
    return it == states.end() ? cd(0) : it->second;
}

namespace {

// Gadget layout: ports 0..3 at west, south, east, north; two inner vertices.
const double kGadgetPos[6][2] = {{-2, 0}, {0, -2}, {2, 0}, {0, 2}, {-1, 1}, {1, -1}};
const int kGadgetEdges[7][2] = {{0, 1}, {0, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {4, 5}};

double gadget_angle(int a, int b) {
    return std::atan2(kGadgetPos[b][1] - kGadgetPos[a][1], kGadgetPos[b][0] - kGadgetPos[a][0]);
}

// Darts with sort keys, turned into rotations once the graph is complete.
struct RotationBuilder {
    std::vector<std::vector<std::pair<double, int>>> keyed;

    void ensure(int n) {
        if ((int)keyed.size() < n) {
            keyed.resize(n);
        }
    }
    void add(int v, double key, int dart) {
        ensure(v + 1);
        keyed[v].push_back({key, dart});
    }
    void apply(PlanarGraph &g) {
        ensure(g.num_vertices);
        for (int v = 0; v < g.num_vertices; v++) {
            auto &k = keyed[v];
            std::sort(k.begin(), k.end());
            g.rotation[v].clear();
            for (auto &[key, d] : k) {
                g.rotation[v].push_back(d);
            }
        }
    }
};

// Adds one gadget; returns its first vertex. Port externals are keyed at
// the port's own direction from the gadget centre.
int add_gadget(PlanarGraph &g, RotationBuilder &rb) {
    int base = g.num_vertices;
    for (int a = 0; a < 6; a++) {
        g.add_vertex();
    }
    for (int i = 0; i < 7; i++) {
        int a = kGadgetEdges[i][0], b = kGadgetEdges[i][1];
        int e = g.add_edge(base + a, base + b, i == 6 ? -1.0 : 1.0);
        rb.add(base + a, gadget_angle(a, b), 2 * e);
        rb.add(base + b, gadget_angle(b, a), 2 * e + 1);
    }
    return base;
}

double port_angle(int a) {
    return std::atan2(kGadgetPos[a][1], kGadgetPos[a][0]);
}

using i128 = __int128;

struct Pt {
    int64_t x, y;
};

int64_t cross(Pt a, Pt b) {
    return a.x * b.y - a.y * b.x;
}

Pt sub(Pt a, Pt b) {
    return {a.x - b.x, a.y - b.y};
}

// Points on a convex curve, counterclockwise in index order.
Pt chord_point(int j) {
    int64_t t = (int64_t)(j + 1) * (j + 1) * (j + 1);
    return {t, t * t};
}

// Draws the complete graph on kappa convex points, keeping chords with
// nonzero weight plus the polygon sides, and replaces every crossing with a
// gadget. Vertices 0..kappa-1 are the chord endpoints; their rotations are
// keyed by the other endpoint's offset (>= 1), so key 0 is the outer side.
int draw_chords(PlanarGraph &g, RotationBuilder &rb, const CMat &W) {
    int kappa = (int)W.rows();
    if (kappa > 24) {
        throw SizeLimitExceeded("compile_matchsum: at most 24 chord endpoints");
    }
    for (int j = 0; j < kappa; j++) {
        g.add_vertex();
    }
    std::vector<std::pair<int, int>> chords;
    for (int a = 0; a < kappa; a++) {
        for (int b = a + 1; b < kappa; b++) {
            bool side = b == a + 1 || (a == 0 && b == kappa - 1);
            if (side || W(a, b) != cd(0)) {
                chords.push_back({a, b});
            }
        }
    }
    struct Hit {
        i128 num, den;  // position along the chord from its smaller end
        int gadget;
        int entry, exit;
    };
    std::vector<std::vector<Hit>> hits(chords.size());
    int crossings = 0;
    for (size_t c1 = 0; c1 < chords.size(); c1++) {
        for (size_t c2 = 0; c2 < chords.size(); c2++) {
            auto [p, q] = chords[c1];
            auto [r, s] = chords[c2];
            if (!(p < r && r < q && q < s)) {
                continue;
            }
            int gbase = add_gadget(g, rb);
            crossings++;
            Pt P = chord_point(p), Q = chord_point(q), R = chord_point(r), S = chord_point(s);
            auto param = [](Pt A, Pt B, Pt C, Pt D) {
                // Intersection of AB with CD at A + t (B - A).
                i128 num = cross(sub(C, A), sub(D, C));
                i128 den = cross(sub(B, A), sub(D, C));
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
                return std::pair<i128, i128>{num, den};
            };
            auto [n1, d1] = param(P, Q, R, S);
            auto [n2, d2] = param(R, S, P, Q);
            hits[c1].push_back({n1, d1, gbase, 0, 2});
            hits[c2].push_back({n2, d2, gbase, 1, 3});
        }
    }
    for (size_t c = 0; c < chords.size(); c++) {
        auto [a, b] = chords[c];
        auto &h = hits[c];
        std::sort(h.begin(), h.end(), [](const Hit &x, const Hit &y) { return x.num * y.den < y.num * x.den; });
        for (size_t i = 1; i < h.size(); i++) {
            if (h[i].num * h[i - 1].den == h[i - 1].num * h[i].den) {
                throw std::logic_error("compile_matchsum: three chords meet at a point");
            }
        }
        // Segment endpoints: (vertex, rotation key).
        std::vector<std::pair<int, double>> path;
        path.push_back({a, (double)(b - a)});
        for (const auto &x : h) {
            path.push_back({x.gadget + x.entry, port_angle(x.entry)});
            path.push_back({x.gadget + x.exit, port_angle(x.exit)});
        }
        path.push_back({b, (double)(a - b + kappa)});
        for (size_t i = 0; i + 1 < path.size(); i += 2) {
            cd w = i == 0 ? W(a, b) : cd(1.0);
            int e = g.add_edge(path[i].first, path[i + 1].first, w);
            rb.add(path[i].first, path[i].second, 2 * e);
            rb.add(path[i + 1].first, path[i + 1].second, 2 * e + 1);
        }
    }
    return crossings;
}

}  // namespace

PlanarGraph mgc::crossing_gadget() {
    PlanarGraph g;
    RotationBuilder rb;
    add_gadget(g, rb);
    rb.apply(g);
    return g;
}

PlanarGraph mgc::chord_graph(const CMat &A) {
    SkewMatrix check(A);
    PlanarGraph g;
    RotationBuilder rb;
    draw_chords(g, rb, A);
    rb.apply(g);
    return g;
}

MatchsumGraph mgc::compile_matchsum(const CanonicalMatchgate &M, bool prefactor_edge) {
    M.validate();
    MatchsumGraph out;
    RotationBuilder rb;
    out.crossings = draw_chords(out.graph, rb, M.block_matrix());
    // Bit-flip pendants: port j present forces endpoint j out of the chord graph.
    for (int j = 0; j < M.n; j++) {
        int p = out.graph.add_vertex();
        int e = out.graph.add_edge(j, p, 1.0);
        rb.add(j, 0.0, 2 * e);
        rb.add(p, 0.0, 2 * e + 1);
        out.ports.push_back(p);
    }
    out.prefactor = M.C * (M.parity == Parity::Odd ? -1.0 : 1.0);
    if (prefactor_edge) {
        int a = out.graph.add_vertex(), b = out.graph.add_vertex();
        out.prefactor_edge = out.graph.add_edge(a, b, out.prefactor);
        rb.add(a, 0.0, 2 * out.prefactor_edge);
        rb.add(b, 0.0, 2 * out.prefactor_edge + 1);
        out.prefactor = 1.0;
    }
    rb.apply(out.graph);
    return out;
}

namespace {

bool agrees(const KasteleynOrientation &ko, int dart) {
    return (dart % 2 == 0) == (ko.orient[dart / 2] > 0);
}

void gauge(const PlanarGraph &g, KasteleynOrientation &ko, int v) {
    for (int d : g.rotation[v]) {
        ko.orient[d / 2] = -ko.orient[d / 2];
    }
}

// True when edge e runs from a to b under the orientation.
bool points_forward(const PlanarGraph &g, const KasteleynOrientation &ko, int e, int a, int b) {
    const auto &E = g.edges[e];
    if (E.u == a && E.v == b) {
        return ko.orient[e] > 0;
    }
    if (E.u == b && E.v == a) {
        return ko.orient[e] < 0;
    }
    throw InvalidInput("kasteleyn: forward path edge does not join consecutive path vertices");
}

}  // namespace

KasteleynOrientation mgc::kasteleyn_orient(const PlanarGraph &g, int root_face, const std::vector<int> &forward_path,
                                           const std::vector<int> &path_vertices) {
    g.check_embedding();
    auto fs = g.faces();
    auto df = g.dart_faces(fs);
    if (root_face < 0 || root_face >= std::max<int>(1, (int)fs.size())) {
        throw InvalidInput("kasteleyn_orient: root face out of range");
    }
    if (!forward_path.empty() && path_vertices.size() != forward_path.size() + 1) {
        throw InvalidInput("kasteleyn_orient: path needs one more vertex than edges");
    }
    KasteleynOrientation ko;
    ko.orient.assign(g.edges.size(), 1);
    ko.root_face = root_face;
    if (fs.empty()) {
        return ko;
    }
    // Dual BFS tree rooted at the outer face.
    std::vector<int> parent_edge(fs.size(), -1), order{root_face};
    std::vector<char> seen(fs.size(), 0);
    seen[root_face] = 1;
    for (size_t i = 0; i < order.size(); i++) {
        for (int d : fs[order[i]]) {
            int f2 = df[d ^ 1];
            if (!seen[f2]) {
                seen[f2] = 1;
                parent_edge[f2] = d / 2;
                order.push_back(f2);
            }
        }
    }
    for (size_t i = order.size(); i-- > 1;) {
        int f = order[i];
        int count = 0;
        for (int d : fs[f]) {
            count += agrees(ko, d);
        }
        if (count % 2 == 0) {
            ko.orient[parent_edge[f]] = -ko.orient[parent_edge[f]];
        }
    }
    for (size_t s = 0; s < forward_path.size(); s++) {
        if (!points_forward(g, ko, forward_path[s], path_vertices[s], path_vertices[s + 1])) {
            gauge(g, ko, path_vertices[s + 1]);
        }
    }
    auto check = verify_kasteleyn(g, ko, forward_path, path_vertices);
    if (!check.ok) {
        throw std::logic_error("kasteleyn_orient: produced orientation fails verification");
    }
    return ko;
}

KasteleynCheck mgc::verify_kasteleyn(const PlanarGraph &g, const KasteleynOrientation &ko,
                                     const std::vector<int> &forward_path, const std::vector<int> &path_vertices) {
    KasteleynCheck r;
    if (ko.orient.size() != g.edges.size()) {
        r.ok = false;
        return r;
    }
    // Recount each face by walking it afresh from the rotation system.
    std::vector<int> pos(2 * g.edges.size());
    for (int v = 0; v < g.num_vertices; v++) {
        for (size_t p = 0; p < g.rotation[v].size(); p++) {
            pos[g.rotation[v][p]] = (int)p;
        }
    }
    std::vector<char> used(pos.size(), 0);
    int face = 0;
    for (int d0 = 0; d0 < (int)pos.size(); d0++) {
        if (used[d0]) {
            continue;
        }
        int ccw = 0;
        for (int d = d0; !used[d];) {
            used[d] = 1;
            const auto &E = g.edges[d / 2];
            int from = d % 2 ? E.v : E.u;
            int oriented_from = ko.orient[d / 2] > 0 ? E.u : E.v;
            ccw += from == oriented_from;
            int to = d % 2 ? E.u : E.v;
            const auto &rot = g.rotation[to];
            d = rot[(pos[d ^ 1] + rot.size() - 1) % rot.size()];
        }
        if (face != ko.root_face && ccw % 2 == 0) {
            r.bad_faces++;
        }
        face++;
    }
    for (size_t s = 0; s < forward_path.size(); s++) {
        const auto &E = g.edges[forward_path[s]];
        int from = ko.orient[forward_path[s]] > 0 ? E.u : E.v;
        if (from != path_vertices[s]) {
            r.backward_path_edges++;
        }
    }
    r.ok = r.bad_faces == 0 && r.backward_path_edges == 0;
    return r;
}

namespace {

bool is_linear(const CanonicalMatchgate &M) {
    return M.k() == 1 && max_abs(M.A) <= 1e-14 * std::max(1.0, max_abs(M.B));
}

bool has_self_loop(const Vertex &v) {
    for (size_t i = 0; i < v.incidence.size(); i++) {
        for (size_t j = i + 1; j < v.incidence.size(); j++) {
            if (v.incidence[i].edge == v.incidence[j].edge) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<int> mgc::boundary_stub_order(const TensorNetwork &net) {
    std::vector<int> stubs = net.stubs();
    if (stubs.empty()) {
        return {};
    }
    std::set<int> is_stub(stubs.begin(), stubs.end());
    int face_of_stubs = -1;
    std::vector<int> walk;
    auto fs = trace_faces(net);
    for (size_t f = 0; f < fs.size(); f++) {
        for (const auto &d : fs[f]) {
            int e = net.vertices[d.vertex].incidence[d.position].edge;
            if (!is_stub.count(e)) {
                continue;
            }
            if (face_of_stubs >= 0 && face_of_stubs != (int)f) {
                throw InvalidInput("open network: stubs must all lie on one face");
            }
            face_of_stubs = (int)f;
            walk.push_back(e);
        }
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
}

StitchedNetwork mgc::stitch_network(const TensorNetwork &net) {
    net.validate(true);
    if (count_components(net) > 1) {
        throw InvalidInput("stitch_network: network must be connected");
    }
    if (embedding_genus(net) != 0) {
        throw InvalidInput("stitch_network: rotation system is not planar");
    }
    std::vector<int> ccw = boundary_stub_order(net);
    std::vector<int> order = net.stubs();
    int m = (int)order.size();
    if (m > 0) {
        auto it = std::find(ccw.begin(), ccw.end(), order[0]);
        std::rotate(ccw.begin(), it, ccw.end());
        if (ccw != order) {
            throw InvalidInput("stitch_network: stub_order is not counterclockwise around the boundary");
        }
    }
    std::unordered_map<int, int> stub_index;
    for (int s = 0; s < m; s++) {
        stub_index[order[s]] = s;
    }

    StitchedNetwork out;
    PlanarGraph &H = out.graph;
    RotationBuilder rb;
    int nv = (int)net.vertices.size();
    // Per network vertex: where index j lands in H and which weight it carries.
    std::vector<std::vector<int>> anchor(nv);
    std::vector<std::vector<cd>> factor(nv);
    std::vector<char> direct(nv, 0);
    for (int u = 0; u < nv; u++) {
        CanonicalMatchgate M = as_canonical(net.tensors[u]);
        int d = net.degree(u);
        if (d == 0) {
            out.prefactor *= M.C;
            continue;
        }
        if (is_linear(M) && !has_self_loop(net.vertices[u])) {
            direct[u] = 1;
            out.direct_vertices++;
            int h = H.add_vertex();
            anchor[u].assign(d, h);
            for (int j = 0; j < d; j++) {
                factor[u].push_back(M.C * M.B(0, j));
            }
            continue;
        }
        out.gadget_vertices++;
        MatchsumGraph ms = compile_matchsum(M, false);
        int base = H.num_vertices;
        for (int i = 0; i < ms.graph.num_vertices; i++) {
            H.add_vertex();
        }
        int ebase = (int)H.edges.size();
        for (const auto &e : ms.graph.edges) {
            H.add_edge(base + e.u, base + e.v, e.weight);
        }
        for (int v = 0; v < ms.graph.num_vertices; v++) {
            const auto &rot = ms.graph.rotation[v];
            for (size_t p = 0; p < rot.size(); p++) {
                rb.add(base + v, (double)p, 2 * ebase + rot[p]);
            }
        }
        for (int j = 0; j < d; j++) {
            anchor[u].push_back(base + ms.ports[j]);
        }
        factor[u].assign(d, 1.0);
        out.prefactor *= ms.prefactor;
    }
    // Key for the dart placed at index j of a network vertex: direct vertices
    // order by j; gadget ports already hold their attachment at key 0.
    auto key_of = [&](int u, int j) { return direct[u] ? (double)j : 1.0; };
    out.boundary.assign(m, -1);
    std::vector<std::vector<std::pair<int, int>>> ends(net.edges.size());
    std::unordered_map<int, int> edge_pos;
    for (size_t i = 0; i < net.edges.size(); i++) {
        edge_pos[net.edges[i].id] = (int)i;
    }
    for (int u = 0; u < nv; u++) {
        for (int j = 0; j < net.degree(u); j++) {
            ends[edge_pos[net.vertices[u].incidence[j].edge]].push_back({u, j});
        }
    }
    for (size_t i = 0; i < net.edges.size(); i++) {
        const auto &en = ends[i];
        if (en.size() == 2) {
            auto [u, j] = en[0];
            auto [v, k] = en[1];
            int e = H.add_edge(anchor[u][j], anchor[v][k], factor[u][j] * factor[v][k]);
            rb.add(anchor[u][j], key_of(u, j), 2 * e);
            rb.add(anchor[v][k], key_of(v, k), 2 * e + 1);
            continue;
        }
        auto [u, j] = en[0];
        int s = stub_index.at(net.edges[i].id);
        if (direct[u]) {
            // Bit flip: the stub is used exactly when the new leaf is removed.
            int c = H.add_vertex(), b = H.add_vertex();
            int e1 = H.add_edge(anchor[u][j], c, factor[u][j]);
            rb.add(anchor[u][j], key_of(u, j), 2 * e1);
            rb.add(c, 0.0, 2 * e1 + 1);
            int e2 = H.add_edge(c, b, 1.0);
            rb.add(c, 1.0, 2 * e2);
            rb.add(b, 0.0, 2 * e2 + 1);
            out.boundary[s] = b;
        } else {
            out.boundary[s] = anchor[u][j];
        }
    }
    // Zero-weight cycle b_1 -> b_2 -> ... -> b_m -> b_1 around everything.
    if (m >= 2) {
        std::vector<int> cyc(m);
        for (int s = 0; s < m; s++) {
            int a = out.boundary[s], b = out.boundary[(s + 1) % m];
            cyc[s] = H.add_edge(a, b, 0.0);
        }
        for (int s = 0; s < m; s++) {
            int b = out.boundary[s];
            rb.add(b, 1.0, 2 * cyc[(s + m - 1) % m] + 1);  // towards b_{s-1}
            rb.add(b, 2.0, 2 * cyc[s]);                    // towards b_{s+1}
        }
        out.boundary_path.assign(cyc.begin(), cyc.end() - 1);
    }
    rb.apply(H);
    out.root_face = 0;
    if (H.num_vertices == 0) {
        return out;
    }
    H.check_embedding();
    auto fs = H.faces();
    auto df = H.dart_faces(fs);
    if (m >= 2) {
        out.root_face = df[2 * out.boundary_path[0] + 1];
    } else if (m == 1) {
        out.root_face = df[H.rotation[out.boundary[0]][0]];
    }
    return out;
}

namespace {

std::vector<int> boundary_first(const StitchedNetwork &st) {
    int n = st.graph.num_vertices;
    std::vector<int> idx(n, -1);
    int next = 0;
    for (int b : st.boundary) {
        idx[b] = next++;
    }
    for (int v = 0; v < n; v++) {
        if (idx[v] < 0) {
            idx[v] = next++;
        }
    }
    return idx;
}

CMat dense_skew(int n, const std::vector<SkewEntry> &entries) {
    CMat K = CMat::Zero(n, n);
    for (const auto &e : entries) {
        K(e.i, e.j) += e.value;
        K(e.j, e.i) -= e.value;
    }
    return K;
}

CMat coupling(int n, int m) {
    CMat B = CMat::Zero(n, m);
    for (int s = 0; s < m; s++) {
        B(s, s) = cd(0, -1);
    }
    return B;
}

// Common sign of all matchings, read off one nonzero component of the
// unit-weight integral, where every matching sum is a positive count.
int probe_sign(const StitchedNetwork &st, const KasteleynOrientation &ko, int sparse_threshold) {
    int n = st.graph.num_vertices, m = (int)st.boundary.size();
    auto entries = stitched_entries(st, ko, true);
    if (m == 0 && n > sparse_threshold) {
        LogPfaffian pf = sparse_pfaffian(n, entries);
        return pf.zero ? 0 : (pf.phase.real() > 0 ? 1 : -1);
    }
    auto g = gaussian_integral_closed(dense_skew(n, entries), coupling(n, m));
    if (g.is_zero || g.prefactor == cd(0)) {
        return 0;
    }
    int kk = (int)g.residual.rows();
    cd comp = g.prefactor;
    if (kk > 0) {
        Eigen::FullPivLU<CMat> lu(g.residual);
        if (lu.rank() < kk) {
            return 0;
        }
        std::vector<int> cols;
        for (int i = 0; i < kk; i++) {
            cols.push_back(lu.permutationQ().indices()(i));
        }
        std::sort(cols.begin(), cols.end());
        CMat sub(kk, kk);
        for (int i = 0; i < kk; i++) {
            sub.col(i) = g.residual.col(cols[i]);
        }
        comp *= (double)residual_sign(kk) * sub.determinant();
        if (kk % 2) {
            comp *= cd(0, 1);
        }
    }
    return comp.real() > 0 ? 1 : -1;
}

TensorNetwork sub_network(const TensorNetwork &net, const std::vector<int> &verts) {
    TensorNetwork sub;
    sub.genus = net.genus;
    std::set<int> edges;
    for (int v : verts) {
        sub.vertices.push_back(net.vertices[v]);
        sub.tensors.push_back(net.tensors[v]);
        for (const auto &e : net.vertices[v].incidence) {
            edges.insert(e.edge);
        }
    }
    for (const auto &e : net.edges) {
        if (edges.count(e.id)) {
            sub.edges.push_back(e);
        }
    }
    if (net.stub_order) {
        std::vector<int> so;
        for (int id : *net.stub_order) {
            if (edges.count(id)) {
                so.push_back(id);
            }
        }
        sub.stub_order = so;
    }
    return sub;
}

}  // namespace

std::vector<SkewEntry> mgc::stitched_entries(const StitchedNetwork &st, const KasteleynOrientation &ko, bool unit) {
    auto idx = boundary_first(st);
    std::vector<SkewEntry> out;
    for (size_t e = 0; e < st.graph.edges.size(); e++) {
        const auto &E = st.graph.edges[e];
        cd w = unit ? cd(1.0) : E.weight;
        if (w == cd(0)) {
            continue;
        }
        out.push_back({idx[E.u], idx[E.v], (double)ko.orient[e] * w});
    }
    return out;
}

StitchedOrientation mgc::orient_stitched(const StitchedNetwork &st, int sparse_threshold) {
    StitchedOrientation r;
    r.ko = kasteleyn_orient(st.graph, st.root_face, st.boundary_path, st.boundary);
    r.sign = probe_sign(st, r.ko, sparse_threshold);
    if (r.sign < 0) {
        std::vector<char> on_boundary(st.graph.num_vertices, 0);
        for (int b : st.boundary) {
            on_boundary[b] = 1;
        }
        for (int v = 0; v < st.graph.num_vertices; v++) {
            if (!on_boundary[v]) {
                gauge(st.graph, r.ko, v);
                r.sign = 1;
                break;
            }
        }
    }
    return r;
}

OpenContraction mgc::contract_open_network(const TensorNetwork &net, const OpenContractionOptions &opt) {
    net.validate(true);
    int m = (int)net.stubs().size();
    OpenContraction out;
    out.tensor = zero_matchgate(m);
    out.scalar.zero = true;

    int comps = count_components(net);
    if (comps > 1) {
        std::unordered_map<int, std::vector<int>> groups;
        {
            // Components by union-find over shared edges.
            int nv = (int)net.vertices.size();
            std::vector<int> parent(nv);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
            std::unordered_map<int, int> first;
            for (int v = 0; v < nv; v++) {
                for (const auto &e : net.vertices[v].incidence) {
                    auto [it, fresh] = first.emplace(e.edge, v);
                    if (!fresh) {
                        parent[find(v)] = find(it->second);
                    }
                }
            }
            for (int v = 0; v < nv; v++) {
                groups[find(v)].push_back(v);
            }
        }
        std::optional<OpenContraction> open;
        LogPfaffian scalar;
        for (auto &[root, verts] : groups) {
            OpenContraction part = contract_open_network(sub_network(net, verts), opt);
            out.graph_vertices += part.graph_vertices;
            out.sparse = out.sparse || part.sparse;
            if (part.tensor.n > 0) {
                if (open) {
                    throw InvalidInput("contract_open_network: stubs must lie in a single component");
                }
                open = part;
                continue;
            }
            if (part.scalar.zero) {
                scalar.zero = true;
            } else {
                scalar.log_abs += part.scalar.log_abs;
                scalar.phase *= part.scalar.phase;
            }
        }
        if (scalar.zero) {
            return out;
        }
        if (open) {
            out.tensor = open->tensor;
            out.tensor.C *= scalar.value();
        } else {
            out.tensor.C = scalar.value();
            out.scalar = scalar;
        }
        return out;
    }

    StitchedNetwork st = stitch_network(net);
    int n = st.graph.num_vertices;
    out.graph_vertices = n;
    if (st.prefactor == cd(0)) {
        return out;
    }
    if (n == 0) {
        out.tensor.C = st.prefactor;
        out.scalar = {false, std::log(std::abs(st.prefactor)), st.prefactor / std::abs(st.prefactor)};
        return out;
    }
    StitchedOrientation so = orient_stitched(st, opt.sparse_threshold);
    if (so.sign == 0) {
        return out;
    }
    auto entries = stitched_entries(st, so.ko);
    cd phase = st.prefactor / std::abs(st.prefactor) * (double)so.sign;
    if (n % 2) {
        phase *= cd(0, 1);
    }
    double log_pre = std::log(std::abs(st.prefactor));
    if (m == 0 && n > opt.sparse_threshold) {
        out.sparse = true;
        LogPfaffian pf = sparse_pfaffian(n, entries);
        if (pf.zero) {
            return out;
        }
        out.scalar = {false, pf.log_abs + log_pre, pf.phase * phase};
        out.tensor.C = out.scalar.value();
        return out;
    }
    auto g = gaussian_integral_closed(dense_skew(n, entries), coupling(n, m));
    if (g.is_zero || g.prefactor == cd(0) || g.residual.rows() > m) {
        return out;
    }
    CanonicalMatchgate T;
    T.n = m;
    T.A = g.quad;
    T.B = g.residual;
    T.C = g.prefactor * phase * std::exp(log_pre);
    T.parity = T.k() % 2 ? Parity::Odd : Parity::Even;
    out.tensor = make_BA_zero(T);
    if (m == 0) {
        out.scalar = {false, std::log(std::abs(g.prefactor)) + log_pre, g.prefactor / std::abs(g.prefactor) * phase};
    }
    return out;
}
