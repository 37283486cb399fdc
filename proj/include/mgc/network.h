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

#ifndef MGC_NETWORK_H
#define MGC_NETWORK_H

#include <optional>
#include <variant>
#include <vector>

#include "mgc/matchgate.h"

namespace mgc {

/// One end of an edge. Slot 0 and 1 distinguish the two ends of an edge
/// (needed for self-loops); a stub has only slot 0.
struct EdgeEnd {
    int edge = -1;
    int slot = 0;

    bool operator==(const EdgeEnd &other) const = default;
};

using Tensor = std::variant<DenseTensor, CanonicalMatchgate>;

int tensor_rank(const Tensor &t);
CanonicalMatchgate as_canonical(const Tensor &t);
DenseTensor as_dense(const Tensor &t);

struct Vertex {
    int id = 0;
    std::vector<EdgeEnd> incidence;  // counterclockwise
};

struct Edge {
    int id = 0;
};

/// Where an edge end sits: vertex index and position in its incidence list.
struct EndLocation {
    int vertex = -1;
    int position = -1;
};

/// A tensor network on a graph with a rotation system. Edges, cut edges and
/// stubs are referenced by id; tensors[i] belongs to vertices[i].
///
/// An open network has stubs: edges with a single end. stub_order lists them
/// counterclockwise along the boundary of the disk containing the network.
struct TensorNetwork {
    int genus = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Tensor> tensors;
    std::optional<std::vector<int>> planar_cut;
    std::optional<std::vector<int>> stub_order;

    int degree(int v) const {
        return (int)vertices[v].incidence.size();
    }
    int vertex_index(int id) const;
    bool has_edge(int id) const;
    /// Locations of the (up to) two ends of an edge, indexed by slot.
    std::vector<EndLocation> locate(int edge_id) const;
    /// Stub edge ids, in stub_order if given, else in edge order.
    std::vector<int> stubs() const;
    int next_vertex_id() const;
    int next_edge_id() const;

    /// Checks ids, slots, ranks, and the matchgate form invariants.
    void validate(bool allow_stubs = false) const;
};

/// Faces of the embedding given by the rotation system. A face is a cyclic
/// sequence of darts; dart (v, p) leaves vertex v through incidence[p]. The
/// walk continues from the arrival end to its rotation predecessor; a stub
/// turns the walk around.
std::vector<std::vector<EndLocation>> trace_faces(const TensorNetwork &net);

/// Number of connected components, counting isolated vertices.
int count_components(const TensorNetwork &net);

/// Genus of the surface defined by the rotation system of a connected
/// network (stubs count as leaves).
int embedding_genus(const TensorNetwork &net);

/// Sum over all index strings of the product of components.
cd contract_bruteforce(const TensorNetwork &net);

/// Open contraction: sums over internal edges, leaving one index per stub in
/// the order given by stubs().
DenseTensor contract_open_bruteforce(const TensorNetwork &net);

/// Contracts the last b indices of Tu against the first b indices of Tv,
/// pairing them in reverse (the last of Tu with the first of Tv).
CanonicalMatchgate contract_canonical_pair(const CanonicalMatchgate &Tu, const CanonicalMatchgate &Tv, int b);

/// Merges vertices u and v (indices) by contracting every edge between them.
/// The merged vertex keeps u's id and position.
TensorNetwork contract_edge_pair(const TensorNetwork &net, int u, int v);

/// Removes all disk-contractible self-loops at vertex u.
TensorNetwork contract_self_loops(const TensorNetwork &net, int u);

/// Repeated pairwise contraction down to a single rank-0 vertex per
/// connected component; returns the product of the resulting scalars.
cd contract_sequential(const TensorNetwork &net);

}  // namespace mgc

#endif
