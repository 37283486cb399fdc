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

#ifndef MGC_PIPELINE_H
#define MGC_PIPELINE_H

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mgc/genus.h"
#include "mgc/network.h"
#include "mgc/planar.h"

namespace mgc {

struct RandomNetworkSpec {
    int vertices = 4;
    int edges = 5;  // total, including the spanning tree
    int stubs = 0;
    bool self_loops = true;
    int max_degree = 6;
    int max_k = -1;  // cap on canonical k per tensor; -1 means up to the rank
};

/// A random connected network embedded in the sphere (or a disk when it has
/// stubs), carrying random matchgates in canonical form. Stubs lie on one
/// face and stub_order lists them counterclockwise.
TensorNetwork gen_random_network(const RandomNetworkSpec &spec, std::mt19937_64 &rng);

/// Random topology only (tensors are left empty).
TensorNetwork random_planar_topology(const RandomNetworkSpec &spec, std::mt19937_64 &rng);

struct ContractionReport {
    cd value = 0;
    LogPfaffian log_value;     // the same value as log|c| and a phase
    double planar_seconds = 0;
    double genus_seconds = 0;
    int planar_dimension = 0;  // vertices of the stitched planar graph
    bool sparse = false;
    int cut_edges = 0;
    int rank = 0;       // binary rank of the cut's intersection matrix
    int pfaffians = 0;  // terms in the genus stage (2^rank)
};

/// Contracts a closed network: the network minus its planar cut is
/// contracted in one shot to a tensor on 2m stubs, which is then closed up
/// by the cut edges. Without a cut the network must be planar.
ContractionReport contract(const TensorNetwork &net, const OpenContractionOptions &opt = {});

/// The network minus its planar cut, each cut edge split into two stubs.
/// Returns the open network (stub_order counterclockwise) and the chord
/// pairing of stub positions.
struct CutNetwork {
    TensorNetwork open;
    Pairing pairs;
};

CutNetwork cut_open(const TensorNetwork &net);

/// Perfect-matching network: every vertex carries a linear tensor; the
/// weight of edge e sits on its smaller-id endpoint. Contraction equals the
/// matching sum of g. Edge ids are the indices of g.edges.
TensorNetwork gen_matching_network(const PlanarGraph &g, int genus = 0);

/// Ising model with couplings beta*J_e taken from the real parts of the
/// edge weights: Z = prefactor * contraction value.
struct IsingNetwork {
    TensorNetwork net;
    cd prefactor = 1.0;
};

IsingNetwork gen_ising_network(const PlanarGraph &g, int genus = 0);

/// Even-weight indicator matchgate with index j scaled by s[j].
CanonicalMatchgate even_indicator(int degree, const std::vector<double> &scale = {});

/// rows x cols grid. Edge order: all horizontal edges row by row, then all
/// vertical edges; weights[i] (default 1) goes to edge i.
PlanarGraph grid_graph(int rows, int cols, const std::vector<cd> &weights = {});

/// rows x cols grid on a torus (rows, cols >= 3). The wrap-around edges
/// form a planar cut.
struct TorusGraph {
    PlanarGraph graph;
    std::vector<int> wrap_edges;
};

TorusGraph torus_grid(int rows, int cols, const std::vector<cd> &weights = {});

/// Two vertices on a torus joined by two ordinary edges and two edges
/// around the handles; the latter form the planar cut.
TensorNetwork two_vertex_torus_network(const Tensor &tu, const Tensor &tv);

/// Even-dimension grid matching sum from the closed-form product over
/// modes, as log|Z| (horizontal weight x, vertical weight y).
double grid_matching_log_product(int rows, int cols, double x, double y);

}  // namespace mgc

#endif
