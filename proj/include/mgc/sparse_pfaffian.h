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

#ifndef MGC_SPARSE_PFAFFIAN_H
#define MGC_SPARSE_PFAFFIAN_H

#include <cstddef>
#include <vector>

#include "mgc/common.h"

namespace mgc {

/// Pfaffian as log|Pf| plus a unit phase, so huge values do not overflow.
struct LogPfaffian {
    bool zero = false;
    double log_abs = 0;
    cd phase = 1.0;

    cd value() const {
        return zero ? cd(0) : phase * std::exp(log_abs);
    }
};

struct SkewEntry {
    int i;
    int j;
    cd value;  // K(i, j) = value, K(j, i) = -value
};

/// Pfaffian of a sparse skew matrix by 2x2-pivot elimination with a
/// minimum-degree ordering. Entries with the same (i, j) are summed.
LogPfaffian sparse_pfaffian(int n, const std::vector<SkewEntry> &entries, size_t max_fill = 50000000);

}  // namespace mgc

#endif
