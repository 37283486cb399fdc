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

#ifndef MGC_JSON_IO_H
#define MGC_JSON_IO_H

#include <string>

#include <json.hpp>

#include "mgc/genus.h"
#include "mgc/network.h"
#include "mgc/pipeline.h"
#include "mgc/planar.h"

namespace mgc {

using Json = nlohmann::json;

/// Complex numbers are [re, im]; a bare number is read as real.
Json complex_to_json(cd z);
cd complex_from_json(const Json &j);

/// {rank, values}: values in lexicographic order of (x1, ..., xn), x1 most
/// significant.
Json dense_to_json(const DenseTensor &T);
DenseTensor dense_from_json(const Json &j);

/// {n, k, A, B, C, parity}: A is the strict upper triangle row by row, B is
/// k x n row-major, parity is 0 (even) or 1 (odd).
Json canonical_to_json(const CanonicalMatchgate &M);
CanonicalMatchgate canonical_from_json(const Json &j);

/// Either encoding, told apart by the presence of "values".
Json tensor_to_json(const Tensor &t);
Tensor tensor_from_json(const Json &j);

/// {genus, vertices, edges, tensors, planar_cut?, stub_order?}; tensors are
/// keyed by vertex id.
Json network_to_json(const TensorNetwork &net);
TensorNetwork network_from_json(const Json &j);

/// {m, pairs}: chords with 1-based endpoints.
Json pairing_to_json(const Pairing &pairs);
Pairing pairing_from_json(const Json &j);

/// {vertices, edges:[{u, v, weight, orientation}], external, prefactor}. The
/// orientation is a Kasteleyn orientation rooted at the face holding the
/// external vertices.
Json matchsum_graph_to_json(const MatchsumGraph &g);

Json report_to_json(const ContractionReport &r);

/// Parse errors and malformed documents raise InvalidInput.
Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &j);

}  // namespace mgc

#endif
