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

#include "mgc/sparse_pfaffian.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

using namespace mgc;

namespace {

// Positions of the surviving indices, for the permutation sign of each pivot.
struct Fenwick {
    std::vector<int> tree;
    explicit Fenwick(int n) : tree(n + 1, 0) {
    }
    void add(int i, int v) {
        for (i++; i < (int)tree.size(); i += i & -i) {
            tree[i] += v;
        }
    }
    int prefix(int i) const {  // sum over [0, i)
        int s = 0;
        for (; i > 0; i -= i & -i) {
            s += tree[i];
        }
        return s;
    }
};

}  // namespace

LogPfaffian mgc::sparse_pfaffian(int n, const std::vector<SkewEntry> &entries, size_t max_fill) {
    LogPfaffian r;
    if (n % 2) {
        r.zero = true;
        return r;
    }
    std::vector<std::unordered_map<int, cd>> rows(n);
    for (const auto &e : entries) {
        if (e.i == e.j) {
            throw InvalidInput("sparse_pfaffian: diagonal entries must vanish");
        }
        rows[e.i][e.j] += e.value;
        rows[e.j][e.i] -= e.value;
    }
    Fenwick pos(n);
    for (int i = 0; i < n; i++) {
        pos.add(i, 1);
    }
    std::set<std::pair<size_t, int>> by_degree;
    for (int i = 0; i < n; i++) {
        by_degree.insert({rows[i].size(), i});
    }
    for (int step = 0; step < n / 2; step++) {
        int i = by_degree.begin()->second;
        double rowmax = 0;
        for (auto &[k, v] : rows[i]) {
            rowmax = std::max(rowmax, std::abs(v));
        }
        if (rowmax == 0) {
            r.zero = true;
            return r;
        }
        int j = -1;
        size_t best_deg = 0;
        double best_abs = 0;
        for (auto &[k, v] : rows[i]) {
            double a = std::abs(v);
            if (a < 0.1 * rowmax) {
                continue;
            }
            size_t d = rows[k].size();
            if (j < 0 || d < best_deg || (d == best_deg && a > best_abs)) {
                j = k;
                best_deg = d;
                best_abs = a;
            }
        }
        cd a = rows[i][j];
        int pi = pos.prefix(i), pj = pos.prefix(j);
        int swaps = pi + pj + (pj < pi ? 1 : 0) - 1;
        if (swaps % 2) {
            r.phase = -r.phase;
        }
        r.log_abs += std::log(std::abs(a));
        r.phase *= a / std::abs(a);

        // Schur complement: K_kl += (K_ki K_jl - K_kj K_il) / a for k, l
        // in the neighbourhood of {i, j}.
        std::vector<std::pair<int, cd>> ni, nj;  // (k, K_ki), (k, K_kj)
        for (auto &[k, v] : rows[i]) {
            if (k != j) {
                ni.push_back({k, -v});
            }
        }
        for (auto &[k, v] : rows[j]) {
            if (k != i) {
                nj.push_back({k, -v});
            }
        }
        by_degree.erase({rows[i].size(), i});
        by_degree.erase({rows[j].size(), j});
        std::unordered_map<int, size_t> old_size;
        for (auto &[k, v] : ni) {
            old_size.emplace(k, rows[k].size());
        }
        for (auto &[k, v] : nj) {
            old_size.emplace(k, rows[k].size());
        }
        for (auto &[k, s] : old_size) {
            by_degree.erase({s, k});
            rows[k].erase(i);
            rows[k].erase(j);
        }
        // K_il = -K_li, K_jl = -K_lj.
        for (auto &[k, kki] : ni) {
            for (auto &[l, llj] : nj) {
                if (k == l) {
                    continue;
                }
                // term (K_ki K_jl) / a with K_jl = -K_lj
                cd t = kki * (-llj) / a;
                rows[k][l] += t;
                rows[l][k] -= t;
            }
        }
        rows[i].clear();
        rows[j].clear();
        pos.add(i, -1);
        pos.add(j, -1);
        for (auto &[k, s] : old_size) {
            by_degree.insert({rows[k].size(), k});
        }
        if (step % 256 == 0) {
            size_t total = 0;
            for (int k = 0; k < n; k++) {
                total += rows[k].size();
            }
            if (total > max_fill) {
                throw SizeLimitExceeded("sparse_pfaffian: fill-in exceeds budget");
            }
        }
    }
    return r;
}
