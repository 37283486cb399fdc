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

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "mgc/linalg.h"

using namespace mgc;

int mgc::tensor_rank(const Tensor &t) {
    if (auto *d = std::get_if<DenseTensor>(&t)) {
        return d->rank;
    }
    return std::get<CanonicalMatchgate>(t).n;
}

CanonicalMatchgate mgc::as_canonical(const Tensor &t) {
    if (auto *c = std::get_if<CanonicalMatchgate>(&t)) {
        return *c;
    }
    const auto &d = std::get<DenseTensor>(t);
    if (d.max_abs() == 0) {
        return zero_matchgate(d.rank);
    }
    return from_dense(d);
}

DenseTensor mgc::as_dense(const Tensor &t) {
    if (auto *d = std::get_if<DenseTensor>(&t)) {
        return *d;
    }
    return to_dense(std::get<CanonicalMatchgate>(t));
}

int TensorNetwork::vertex_index(int id) const {
    for (size_t i = 0; i < vertices.size(); i++) {
        if (vertices[i].id == id) {
            return (int)i;
        }
    }
    throw InvalidInput("unknown vertex id " + std::to_string(id));
}

bool TensorNetwork::has_edge(int id) const {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge &e) { return e.id == id; });
}

std::vector<EndLocation> TensorNetwork::locate(int edge_id) const {
    std::vector<EndLocation> r(2);
    for (size_t v = 0; v < vertices.size(); v++) {
        const auto &inc = vertices[v].incidence;
        for (size_t p = 0; p < inc.size(); p++) {
            if (inc[p].edge == edge_id) {
                r[inc[p].slot & 1] = {(int)v, (int)p};
            }
        }
    }
    return r;
}

std::vector<int> TensorNetwork::stubs() const {
    if (stub_order) {
        return *stub_order;
    }
    std::map<int, int> count;
    for (const auto &v : vertices) {
        for (const auto &e : v.incidence) {
            count[e.edge]++;
        }
    }
    std::vector<int> r;
    for (const auto &e : edges) {
        if (count[e.id] == 1) {
            r.push_back(e.id);
        }
    }
    return r;
}

int TensorNetwork::next_vertex_id() const {
    int m = -1;
    for (const auto &v : vertices) {
        m = std::max(m, v.id);
    }
    return m + 1;
}

int TensorNetwork::next_edge_id() const {
    int m = -1;
    for (const auto &e : edges) {
        m = std::max(m, e.id);
    }
    return m + 1;
}

void TensorNetwork::validate(bool allow_stubs) const {
    if (genus < 0) {
        throw InvalidInput("network: genus must be non-negative");
    }
    if (tensors.size() != vertices.size()) {
        throw InvalidInput("network: one tensor per vertex required");
    }
    std::set<int> vids;
    for (const auto &v : vertices) {
        if (!vids.insert(v.id).second) {
            throw InvalidInput("network: duplicate vertex id " + std::to_string(v.id));
        }
    }
    std::map<int, std::vector<int>> slots;
    for (const auto &e : edges) {
        if (slots.count(e.id)) {
            throw InvalidInput("network: duplicate edge id " + std::to_string(e.id));
        }
        slots[e.id];
    }
    for (const auto &v : vertices) {
        for (const auto &end : v.incidence) {
            auto it = slots.find(end.edge);
            if (it == slots.end()) {
                throw InvalidInput("network: vertex " + std::to_string(v.id) + " references unknown edge " +
                                   std::to_string(end.edge));
            }
            if (end.slot != 0 && end.slot != 1) {
                throw InvalidInput("network: edge slot must be 0 or 1");
            }
            it->second.push_back(end.slot);
        }
    }
    int num_stubs = 0;
    for (auto &[id, s] : slots) {
        std::sort(s.begin(), s.end());
        if (s == std::vector<int>{0, 1}) {
            continue;
        }
        if (allow_stubs && s == std::vector<int>{0}) {
            num_stubs++;
            continue;
        }
        throw InvalidInput("network: edge " + std::to_string(id) + " must have exactly two ends (slots 0 and 1)");
    }
    if (stub_order) {
        std::set<int> listed(stub_order->begin(), stub_order->end());
        if ((int)listed.size() != num_stubs || (int)stub_order->size() != num_stubs) {
            throw InvalidInput("network: stub_order must list every stub exactly once");
        }
        for (int id : *stub_order) {
            auto it = slots.find(id);
            if (it == slots.end() || it->second.size() != 1) {
                throw InvalidInput("network: stub_order entry " + std::to_string(id) + " is not a stub");
            }
        }
    }
    if (planar_cut) {
        std::set<int> seen;
        for (int id : *planar_cut) {
            auto it = slots.find(id);
            if (it == slots.end() || it->second.size() != 2) {
                throw InvalidInput("network: planar_cut references unknown or open edge " + std::to_string(id));
            }
            if (!seen.insert(id).second) {
                throw InvalidInput("network: planar_cut lists edge " + std::to_string(id) + " twice");
            }
        }
    }
    for (size_t v = 0; v < vertices.size(); v++) {
        if (tensor_rank(tensors[v]) != degree((int)v)) {
            throw InvalidInput("network: tensor rank at vertex " + std::to_string(vertices[v].id) +
                               " does not match its degree");
        }
        if (auto *c = std::get_if<CanonicalMatchgate>(&tensors[v])) {
            c->validate();
        }
    }
}

std::vector<std::vector<EndLocation>> mgc::trace_faces(const TensorNetwork &net) {
    std::vector<std::vector<int>> offset(net.vertices.size());
    std::unordered_map<int, std::vector<EndLocation>> where;
    for (size_t v = 0; v < net.vertices.size(); v++) {
        const auto &inc = net.vertices[v].incidence;
        for (size_t p = 0; p < inc.size(); p++) {
            auto &w = where[inc[p].edge];
            w.resize(2);
            w[inc[p].slot & 1] = {(int)v, (int)p};
        }
    }
    std::vector<std::vector<char>> used(net.vertices.size());
    for (size_t v = 0; v < net.vertices.size(); v++) {
        used[v].assign(net.vertices[v].incidence.size(), 0);
    }
    std::vector<std::vector<EndLocation>> faces;
    for (size_t v0 = 0; v0 < net.vertices.size(); v0++) {
        for (size_t p0 = 0; p0 < used[v0].size(); p0++) {
            if (used[v0][p0]) {
                continue;
            }
            std::vector<EndLocation> face;
            EndLocation d{(int)v0, (int)p0};
            while (!used[d.vertex][d.position]) {
                used[d.vertex][d.position] = 1;
                face.push_back(d);
                const EdgeEnd &end = net.vertices[d.vertex].incidence[d.position];
                const auto &w = where[end.edge];
                EndLocation arrive = w[1 - (end.slot & 1)];
                if (arrive.vertex < 0) {
                    arrive = d;  // stub: turn around
                }
                int deg = net.degree(arrive.vertex);
                d = {arrive.vertex, (arrive.position + deg - 1) % deg};
            }
            faces.push_back(face);
        }
    }
    return faces;
}

int mgc::count_components(const TensorNetwork &net) {
    int n = (int)net.vertices.size();
    std::vector<int> parent(n);
    for (int i = 0; i < n; i++) {
        parent[i] = i;
    }
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::unordered_map<int, int> first;
    for (int v = 0; v < n; v++) {
        for (const auto &e : net.vertices[v].incidence) {
            auto it = first.find(e.edge);
            if (it == first.end()) {
                first[e.edge] = v;
            } else {
                parent[find(v)] = find(it->second);
            }
        }
    }
    int c = 0;
    for (int v = 0; v < n; v++) {
        c += find(v) == v;
    }
    return c;
}

int mgc::embedding_genus(const TensorNetwork &net) {
    if (count_components(net) != 1) {
        throw InvalidInput("embedding_genus: network must be connected");
    }
    int V = (int)net.vertices.size();
    int E = 0;
    std::unordered_map<int, int> count;
    for (const auto &v : net.vertices) {
        for (const auto &e : v.incidence) {
            count[e.edge]++;
        }
    }
    for (auto &[id, c] : count) {
        E++;
        if (c == 1) {
            V++;  // stub leaf
        }
    }
    int F = std::max<int>(1, (int)trace_faces(net).size());
    int chi = V - E + F;
    if ((2 - chi) % 2 != 0 || chi > 2) {
        throw InvalidInput("embedding_genus: inconsistent rotation system");
    }
    return (2 - chi) / 2;
}

namespace {

// Depth-first summation over edge values. Each vertex's component is
// multiplied in as soon as all of its edges are assigned.
struct BruteForce {
    std::vector<DenseTensor> dense;
    std::vector<std::vector<std::pair<int, int>>> vertex_bits;  // (edge order index, tensor bit)
    std::vector<std::vector<int>> completes;                    // vertices finished at each edge step
    std::vector<int> stub_position;                             // output bit per edge, or -1
    std::vector<uint8_t> value;
    int num_edges = 0;

    BruteForce(const TensorNetwork &net, const std::vector<int> &stub_ids) {
        std::unordered_map<int, int> order;
        for (const auto &e : net.edges) {
            order[e.id] = num_edges++;
        }
        if (num_edges > 24) {
            throw SizeLimitExceeded("contract_bruteforce: at most 24 edges, got " + std::to_string(num_edges));
        }
        stub_position.assign(num_edges, -1);
        for (size_t j = 0; j < stub_ids.size(); j++) {
            stub_position[order.at(stub_ids[j])] = (int)j;
        }
        completes.resize(num_edges + 1);
        for (size_t v = 0; v < net.vertices.size(); v++) {
            dense.push_back(as_dense(net.tensors[v]));
            std::vector<std::pair<int, int>> bits;
            int last = -1;
            const auto &inc = net.vertices[v].incidence;
            for (size_t p = 0; p < inc.size(); p++) {
                int o = order.at(inc[p].edge);
                bits.push_back({o, (int)p});
                last = std::max(last, o);
            }
            vertex_bits.push_back(bits);
            completes[last + 1].push_back((int)v);
        }
        value.assign(num_edges, 0);
    }

    cd component(int v) const {
        uint32_t x = 0;
        for (auto [o, bit] : vertex_bits[v]) {
            if (value[o]) {
                x |= uint32_t{1} << bit;
            }
        }
        return dense[v][x];
    }

    void run(int step, cd acc, uint32_t out, std::vector<cd> &result) {
        for (int v : completes[step]) {
            acc *= component(v);
        }
        if (acc == cd(0)) {
            return;
        }
        if (step == num_edges) {
            result[out] += acc;
            return;
        }
        for (uint8_t b = 0; b < 2; b++) {
            value[step] = b;
            uint32_t o = out;
            if (b && stub_position[step] >= 0) {
                o |= uint32_t{1} << stub_position[step];
            }
            run(step + 1, acc, o, result);
        }
        value[step] = 0;
    }
};

}  // namespace

cd mgc::contract_bruteforce(const TensorNetwork &net) {
    net.validate(false);
    BruteForce bf(net, {});
    std::vector<cd> result(1, 0.0);
    bf.run(0, 1.0, 0, result);
    return result[0];
}

DenseTensor mgc::contract_open_bruteforce(const TensorNetwork &net) {
    net.validate(true);
    std::vector<int> stubs = net.stubs();
    if (stubs.size() > (size_t)DenseTensor::MAX_RANK) {
        throw SizeLimitExceeded("contract_open_bruteforce: too many stubs");
    }
    BruteForce bf(net, stubs);
    DenseTensor out((int)stubs.size());
    bf.run(0, 1.0, 0, out.values);
    return out;
}

CanonicalMatchgate mgc::contract_canonical_pair(const CanonicalMatchgate &Tu, const CanonicalMatchgate &Tv, int b) {
    int du = Tu.n, dv = Tv.n, ku = Tu.k(), kv = Tv.k();
    if (b < 1 || b > du || b > dv) {
        throw InvalidInput("contract_canonical_pair: bad number of shared edges");
    }
    int p = du - b, q = dv - b;
    int num_eta = 2 * b + ku + kv;
    int total = num_eta + p + q;

    // Position of every Grassmann generator in (eta, tau). The integration
    // order is: each contracted edge (u end, then v end), then mu_v, then mu_u.
    std::vector<int> pos_u(du), pos_v(dv), pos_mu(ku), pos_mv(kv);
    for (int j = 0; j < b; j++) {
        pos_u[du - 1 - j] = 2 * j;
        pos_v[j] = 2 * j + 1;
    }
    for (int i = 0; i < kv; i++) {
        pos_mv[i] = 2 * b + i;
    }
    for (int i = 0; i < ku; i++) {
        pos_mu[i] = 2 * b + kv + i;
    }
    for (int a = 0; a < p; a++) {
        pos_u[a] = num_eta + a;
    }
    for (int a = 0; a < q; a++) {
        pos_v[b + a] = num_eta + p + a;
    }

    CMat W = CMat::Zero(total, total);
    auto add = [&](int i, int j, cd w) {
        W(i, j) += w;
        W(j, i) -= w;
    };
    for (int a = 0; a < du; a++) {
        for (int c = a + 1; c < du; c++) {
            add(pos_u[a], pos_u[c], Tu.A(a, c));
        }
    }
    for (int a = 0; a < dv; a++) {
        for (int c = a + 1; c < dv; c++) {
            add(pos_v[a], pos_v[c], Tv.A(a, c));
        }
    }
    for (int i = 0; i < ku; i++) {
        for (int a = 0; a < du; a++) {
            add(pos_mu[i], pos_u[a], Tu.B(i, a));
        }
    }
    for (int i = 0; i < kv; i++) {
        for (int a = 0; a < dv; a++) {
            add(pos_mv[i], pos_v[a], Tv.B(i, a));
        }
    }
    for (int j = 0; j < b; j++) {
        add(pos_u[du - 1 - j], pos_v[j], 1.0);
    }

    CMat K = W.topLeftCorner(num_eta, num_eta);
    CMat L = W.topRightCorner(num_eta, p + q);
    CMat H = W.bottomRightCorner(p + q, p + q);
    GaussianFormResult g = gaussian_integral_closed(K, L);
    Parity parity = Parity(((int)Tu.parity + (int)Tv.parity) % 2);
    cd C = Tu.C * Tv.C * g.prefactor;
    if (g.is_zero || C == cd(0)) {
        CanonicalMatchgate z = zero_matchgate(p + q);
        return z;
    }
    CanonicalMatchgate r;
    r.n = p + q;
    CMat A = H + g.quad;
    r.A = (A - A.transpose()) * 0.5;
    r.B = g.residual;
    r.C = C;
    r.parity = Parity(r.k() % 2);
    if (r.parity != parity) {
        throw std::logic_error("contract_canonical_pair: parity bookkeeping failed");
    }
    return make_BA_zero(r);
}

// Start of a cyclic run of positions within a list of size d, or -1.
static std::vector<int> run_starts(const std::vector<int> &positions, int d) {
    int b = (int)positions.size();
    std::set<int> s(positions.begin(), positions.end());
    std::vector<int> starts;
    for (int start = 0; start < d; start++) {
        bool ok = true;
        for (int j = 0; j < b && ok; j++) {
            ok = s.count((start + j) % d) > 0;
        }
        if (ok) {
            starts.push_back(start);
        }
    }
    return starts;
}

static std::vector<EdgeEnd> rotate_left(const std::vector<EdgeEnd> &v, int s) {
    std::vector<EdgeEnd> r(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        r[i] = v[(i + s) % v.size()];
    }
    return r;
}

TensorNetwork mgc::contract_edge_pair(const TensorNetwork &net, int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= (int)net.vertices.size() || v >= (int)net.vertices.size()) {
        throw InvalidInput("contract_edge_pair: need two distinct vertices");
    }
    const auto &iu = net.vertices[u].incidence;
    const auto &iv = net.vertices[v].incidence;
    std::set<int> edges_v;
    for (const auto &e : iv) {
        edges_v.insert(e.edge);
    }
    std::set<int> shared;
    std::vector<int> pu, pv;
    for (size_t p = 0; p < iu.size(); p++) {
        if (edges_v.count(iu[p].edge)) {
            shared.insert(iu[p].edge);
            pu.push_back((int)p);
        }
    }
    for (size_t p = 0; p < iv.size(); p++) {
        if (shared.count(iv[p].edge)) {
            pv.push_back((int)p);
        }
    }
    int b = (int)pu.size();
    if (b == 0) {
        throw InvalidInput("contract_edge_pair: vertices are not adjacent");
    }
    int du = (int)iu.size(), dv = (int)iv.size();
    int su = -1, sv = -1;
    for (int a : run_starts(pu, du)) {
        for (int c : run_starts(pv, dv)) {
            bool ok = true;
            for (int j = 0; j < b && ok; j++) {
                ok = iu[(a + b - 1 - j) % du].edge == iv[(c + j) % dv].edge;
            }
            if (ok && su < 0) {
                su = a;
                sv = c;
            }
        }
    }
    if (su < 0) {
        throw InvalidInput("contract_edge_pair: shared edges are not consecutive in opposite rotation orders");
    }
    int shift_u = (su + b) % du;
    int shift_v = sv;
    // cyclic_shift moves index 1 to index 2, i.e. it rotates the incidence
    // list right by one; rotating left by s is n - s shifts.
    CanonicalMatchgate Tu = cyclic_shift(as_canonical(net.tensors[u]), du - shift_u);
    CanonicalMatchgate Tv = cyclic_shift(as_canonical(net.tensors[v]), dv - shift_v);
    std::vector<EdgeEnd> ru = rotate_left(iu, shift_u);
    std::vector<EdgeEnd> rv = rotate_left(iv, shift_v);

    TensorNetwork out = net;
    Vertex merged;
    merged.id = net.vertices[u].id;
    merged.incidence.assign(ru.begin(), ru.begin() + (du - b));
    merged.incidence.insert(merged.incidence.end(), rv.begin() + b, rv.end());
    out.vertices[u] = merged;
    out.tensors[u] = contract_canonical_pair(Tu, Tv, b);
    out.vertices.erase(out.vertices.begin() + v);
    out.tensors.erase(out.tensors.begin() + v);
    std::erase_if(out.edges, [&](const Edge &e) { return shared.count(e.id) > 0; });
    if (out.planar_cut) {
        std::erase_if(*out.planar_cut, [&](int id) { return shared.count(id) > 0; });
    }
    return out;
}

TensorNetwork mgc::contract_self_loops(const TensorNetwork &net, int u) {
    TensorNetwork cur = net;
    int vid = cur.vertices.at(u).id;
    while (true) {
        int ui = cur.vertex_index(vid);
        const auto &inc = cur.vertices[ui].incidence;
        int d = (int)inc.size();
        std::map<int, int> count;
        for (const auto &e : inc) {
            count[e.edge]++;
        }
        bool any_loop = false;
        int found = -1;
        for (int p = 0; p < d && found < 0; p++) {
            if (count[inc[p].edge] == 2) {
                any_loop = true;
                if (d >= 2 && inc[(p + 1) % d].edge == inc[p].edge) {
                    found = p;
                }
            }
        }
        if (!any_loop) {
            return cur;
        }
        if (found < 0) {
            throw InvalidInput("contract_self_loops: self-loop at vertex " + std::to_string(vid) +
                               " is not contractible within a disk");
        }
        // Split the loop with a dummy delta vertex and contract the two new edges.
        int q = (found + 1) % d;
        int e = inc[found].edge;
        int new_edge = cur.next_edge_id();
        Vertex dummy;
        dummy.id = cur.next_vertex_id();
        dummy.incidence = {EdgeEnd{new_edge, 1}, EdgeEnd{e, inc[q].slot}};
        cur.vertices[ui].incidence[q] = EdgeEnd{new_edge, 0};
        cur.edges.push_back(Edge{new_edge});
        CanonicalMatchgate delta;
        delta.n = 2;
        delta.A = CMat::Zero(2, 2);
        delta.A(0, 1) = 1;
        delta.A(1, 0) = -1;
        delta.B = CMat::Zero(0, 2);
        cur.vertices.push_back(dummy);
        cur.tensors.push_back(delta);
        if (cur.planar_cut && std::find(cur.planar_cut->begin(), cur.planar_cut->end(), e) != cur.planar_cut->end()) {
            throw InvalidInput("contract_self_loops: cannot contract a cut edge");
        }
        cur = contract_edge_pair(cur, ui, (int)cur.vertices.size() - 1);
    }
}

static cd scalar_value(const Tensor &t) {
    if (auto *d = std::get_if<DenseTensor>(&t)) {
        return (*d)[0];
    }
    return component(std::get<CanonicalMatchgate>(t), 0);
}

cd mgc::contract_sequential(const TensorNetwork &net) {
    net.validate(false);
    TensorNetwork cur = net;
    for (auto &t : cur.tensors) {
        t = as_canonical(t);
    }
    cd product = 1.0;
    while (!cur.vertices.empty()) {
        bool progressed = false;
        for (int u = 0; u < (int)cur.vertices.size() && !progressed; u++) {
            if (cur.degree(u) == 0) {
                product *= scalar_value(cur.tensors[u]);
                cur.vertices.erase(cur.vertices.begin() + u);
                cur.tensors.erase(cur.tensors.begin() + u);
                progressed = true;
            }
        }
        for (int u = 0; u < (int)cur.vertices.size() && !progressed; u++) {
            std::map<int, int> count;
            for (const auto &e : cur.vertices[u].incidence) {
                count[e.edge]++;
            }
            bool loops = std::any_of(count.begin(), count.end(), [](auto &kv) { return kv.second == 2; });
            if (loops) {
                try {
                    cur = contract_self_loops(cur, u);
                    progressed = true;
                } catch (const InvalidInput &) {
                }
            }
        }
        for (int u = 0; u < (int)cur.vertices.size() && !progressed; u++) {
            for (const auto &e : cur.vertices[u].incidence) {
                auto loc = cur.locate(e.edge);
                int w = loc[0].vertex == u ? loc[1].vertex : loc[0].vertex;
                if (w == u) {
                    continue;
                }
                try {
                    cur = contract_edge_pair(cur, u, w);
                    progressed = true;
                    break;
                } catch (const InvalidInput &) {
                }
            }
        }
        if (!progressed) {
            throw InvalidInput("contract_sequential: no contractible edge or self-loop left (non-planar remainder)");
        }
    }
    return product;
}
