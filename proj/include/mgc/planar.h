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

#ifndef MGC_PLANAR_H
#define MGC_PLANAR_H

#include <cstddef>
#include <vector>

#include "mgc/matchgate.h"
#include "mgc/network.h"
#include "mgc/sparse_pfaffian.h"

namespace mgc {

/// A weighted multigraph with a rotation system. Dart 2e leaves edges[e].u,
/// dart 2e+1 leaves edges[e].v; rotation[v] lists the darts leaving v
/// counterclockwise.
struct PlanarGraph {
    struct PEdge {
        int u = 0;
        int v = 0;
        cd weight = 1.0;
    };

    int num_vertices = 0;
    std::vector<PEdge> edges;
    std::vector<std::vector<int>> rotation;

    int add_vertex();
    /// Adds an edge without touching the rotation system.
    int add_edge(int u, int v, cd weight);
    /// Adds an edge and appends its darts to both rotations.
    int add_edge_rotated(int u, int v, cd weight);

    static int tail_of(const PlanarGraph &g, int dart) {
        return dart % 2 ? g.edges[dart / 2].v : g.edges[dart / 2].u;
    }
    int tail(int dart) const {
        return tail_of(*this, dart);
    }
    int head(int dart) const {
        return tail(dart ^ 1);
    }
    /// Faces as dart cycles; bounded faces are traversed counterclockwise.
    std::vector<std::vector<int>> faces() const;
    /// Index of the face containing each dart.
    std::vector<int> dart_faces(const std::vector<std::vector<int>> &faces) const;
    /// Throws InvalidInput unless the rotation system is a connected sphere embedding.
    void check_embedding() const;
};

/// Sum over matchings covering every vertex except `removed` of the
/// product of edge weights. Exact frontier dynamic programming; throws
/// SizeLimitExceeded past `max_states` live frontier states.
cd matching_sum_bruteforce(const PlanarGraph &g, const std::vector<int> &removed, size_t max_states = 4000000);

/// The six-vertex crossing gadget. Ports 0..3 are its first four vertices,
/// in counterclockwise order.
PlanarGraph crossing_gadget();

/// Edge orientation with +1 meaning edges[e].u -> edges[e].v.
struct KasteleynOrientation {
    std::vector<int> orient;
    int root_face = -1;
};

/// Orients `g` so that every face except `root_face` has an odd number of
/// edges oriented along its counterclockwise boundary, and each edge in
/// `forward_path` (a list of edge ids, each required to run from the
/// previous path vertex to the next) points forward.
KasteleynOrientation kasteleyn_orient(const PlanarGraph &g, int root_face,
                                      const std::vector<int> &forward_path = {},
                                      const std::vector<int> &path_vertices = {});

struct KasteleynCheck {
    bool ok = true;
    int bad_faces = 0;
    int backward_path_edges = 0;
};

/// Independent check of the face-parity and forward-path conditions.
KasteleynCheck verify_kasteleyn(const PlanarGraph &g, const KasteleynOrientation &ko,
                                const std::vector<int> &forward_path = {},
                                const std::vector<int> &path_vertices = {});

/// Planar graph whose matching sums reproduce a matchgate:
/// T(x) = prefactor * matching_sum(graph, {ports[j] : x_j = 1}).
/// With `prefactor_edge`, an isolated edge of weight `prefactor` is added
/// and the identity holds with prefactor 1.
struct MatchsumGraph {
    PlanarGraph graph;
    std::vector<int> ports;
    cd prefactor = 1.0;
    int prefactor_edge = -1;
    int crossings = 0;
};

MatchsumGraph compile_matchsum(const CanonicalMatchgate &M, bool prefactor_edge = false);

/// Chord graph of a skew matrix: matching_sum(graph, S) equals the
/// Pfaffian of A restricted to the indices whose vertex is not in S.
/// Vertex i of the result is index i of A.
PlanarGraph chord_graph(const CMat &A);

/// Stub edge ids counterclockwise around the face holding them (the
/// reverse of that face's walk). Throws if the stubs span several faces.
std::vector<int> boundary_stub_order(const TensorNetwork &net);

/// The planar graph H of an open planar network: T_V(x) =
/// prefactor * matching_sum(graph, {boundary[s] : x_s = 1}).
/// The boundary vertices lie on a zero-weight cycle bounding the outer face.
struct StitchedNetwork {
    PlanarGraph graph;
    std::vector<int> boundary;       // b_1..b_m in output order
    std::vector<int> boundary_path;  // edges b_1 -> b_2 -> ... -> b_m
    int root_face = -1;
    cd prefactor = 1.0;
    int gadget_vertices = 0;  // network vertices compiled to gadgets
    int direct_vertices = 0;  // linear tensors placed as single vertices
};

StitchedNetwork stitch_network(const TensorNetwork &net);

/// Kasteleyn orientation of a stitched graph, gauged so that every
/// boundary-imperfect matching enters the integrand with the same sign.
/// `sign` is that common sign: +1 after gauging, unless no internal vertex
/// is available to absorb it; 0 when the graph has no such matching at all.
struct StitchedOrientation {
    KasteleynOrientation ko;
    int sign = 1;
};

StitchedOrientation orient_stitched(const StitchedNetwork &st, int sparse_threshold = 400);

/// Skew matrix with K(i, j) = orient * weight per edge, vertices renumbered
/// boundary first. With `unit`, every weight is replaced by 1.
std::vector<SkewEntry> stitched_entries(const StitchedNetwork &st, const KasteleynOrientation &ko, bool unit = false);

struct OpenContraction {
    CanonicalMatchgate tensor;  // rank m; for m = 0 the scalar is tensor.C
    LogPfaffian scalar;         // m = 0 only: the value in log form
    int graph_vertices = 0;
    bool sparse = false;
};

struct OpenContractionOptions {
    int sparse_threshold = 400;  // closed networks with more graph vertices use sparse elimination
};

/// One-shot contraction of a planar open network into canonical form.
OpenContraction contract_open_network(const TensorNetwork &net, const OpenContractionOptions &opt = {});

}  // namespace mgc

#endif
