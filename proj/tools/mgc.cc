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

// mgc: command-line front end for matchgate tensor networks.
//
// Exit codes: 0 success, 1 brute-force disagreement or I/O error,
// 2 validation failure, 3 size limit exceeded.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "mgc/json_io.h"
#include "mgc/pipeline.h"

using namespace mgc;

namespace {

constexpr int EXIT_MISMATCH = 1;
constexpr int EXIT_INVALID = 2;
constexpr int EXIT_SIZE = 3;

struct GridParams {
    int rows = 4;
    int cols = 4;
    double wx = 1.0;
    double wy = 1.0;
    bool torus = false;
    int64_t seed = -1;  // >= 0: random weights
    double low = 0.2;
    double high = 1.5;
};

void add_grid_options(CLI::App *app, GridParams &p, const char *weight_name) {
    app->add_option("--rows", p.rows, "grid rows")->check(CLI::PositiveNumber);
    app->add_option("--cols", p.cols, "grid columns")->check(CLI::PositiveNumber);
    app->add_option("--wx", p.wx, std::string("horizontal ") + weight_name);
    app->add_option("--wy", p.wy, std::string("vertical ") + weight_name);
    app->add_flag("--torus", p.torus, "wrap around on a torus (genus 1, wrap edges form the cut)");
    app->add_option("--seed", p.seed, "draw weights uniformly from [low, high] with this seed");
    app->add_option("--low", p.low, "random weight lower bound");
    app->add_option("--high", p.high, "random weight upper bound");
}

// The grid with its planar cut (empty unless on a torus).
std::pair<PlanarGraph, std::vector<int>> build_grid(const GridParams &p) {
    int horizontal = p.torus ? p.rows * p.cols : p.rows * (p.cols - 1);
    int vertical = p.torus ? p.rows * p.cols : (p.rows - 1) * p.cols;
    std::vector<cd> w(horizontal + vertical);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> u(p.low, p.high);
    for (int e = 0; e < (int)w.size(); e++) {
        w[e] = p.seed >= 0 ? u(rng) : (e < horizontal ? p.wx : p.wy);
    }
    if (p.torus) {
        TorusGraph t = torus_grid(p.rows, p.cols, w);
        return {t.graph, t.wrap_edges};
    }
    return {grid_graph(p.rows, p.cols, w), {}};
}

bool agrees(cd a, cd b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300}) || std::abs(a - b) < 1e-300;
}

void print_json(const Json &j) {
    std::cout << j.dump(2) << std::endl;
}

int run_contract(const std::string &in, const std::string &report_path, bool bruteforce) {
    TensorNetwork net = network_from_json(read_json_file(in));
    ContractionReport rep = contract(net);
    Json out = report_to_json(rep);
    int code = 0;
    if (bruteforce) {
        cd expect = contract_bruteforce(net);
        bool ok = agrees(rep.value, expect, 1e-7);
        out["bruteforce"] = complex_to_json(expect);
        out["bruteforce_agrees"] = ok;
        if (!ok) {
            std::cerr << "mgc: contraction disagrees with brute force" << std::endl;
            code = EXIT_MISMATCH;
        }
    }
    if (!report_path.empty()) {
        write_json_file(report_path, out);
    }
    print_json(out);
    return code;
}

int run_check(const std::string &in, double tol) {
    DenseTensor T = as_dense(tensor_from_json(read_json_file(in)));
    MatchgateCheckReport r = check_matchgate(T, tol);
    Json out = {{"matchgate", r.ok}, {"rank", T.rank}, {"worst_violation", r.worst_violation}};
    if (!r.ok) {
        auto bits = [&](uint32_t x) {
            std::string s;
            for (int a = 0; a < T.rank; a++) {
                s += (x >> a & 1) ? '1' : '0';
            }
            return s;
        };
        out["worst_x"] = bits(r.worst_x);
        out["worst_y"] = bits(r.worst_y);
    }
    print_json(out);
    return r.ok ? 0 : EXIT_INVALID;
}

int run_compile(const std::string &in, const std::string &out_path) {
    CanonicalMatchgate M = as_canonical(tensor_from_json(read_json_file(in)));
    MatchsumGraph mg = compile_matchsum(M);
    Json j = matchsum_graph_to_json(mg);
    write_json_file(out_path, j);
    print_json({{"vertices", mg.graph.num_vertices}, {"edges", mg.graph.edges.size()}, {"crossings", mg.crossings}});
    return 0;
}

int write_network(const TensorNetwork &net, const std::string &out_path, Json extra = Json::object()) {
    Json j = network_to_json(net);
    for (auto &[k, v] : extra.items()) {
        j[k] = v;
    }
    write_json_file(out_path, j);
    Json summary = {{"vertices", net.vertices.size()}, {"edges", net.edges.size()}, {"genus", net.genus}};
    for (auto &[k, v] : extra.items()) {
        summary[k] = v;
    }
    print_json(summary);
    return 0;
}

int run_gen_matching(const GridParams &p, const std::string &out_path) {
    auto [g, cut] = build_grid(p);
    TensorNetwork net = gen_matching_network(g, p.torus ? 1 : 0);
    if (p.torus) {
        net.planar_cut = cut;
    }
    return write_network(net, out_path);
}

int run_gen_ising(const GridParams &p, const std::string &out_path) {
    auto [g, cut] = build_grid(p);
    IsingNetwork is = gen_ising_network(g, p.torus ? 1 : 0);
    if (p.torus) {
        is.net.planar_cut = cut;
    }
    return write_network(is.net, out_path, {{"prefactor", complex_to_json(is.prefactor)}});
}

int run_gen_random(RandomNetworkSpec spec, uint64_t seed, const std::string &out_path) {
    std::mt19937_64 rng(seed);
    return write_network(gen_random_network(spec, rng), out_path);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mgc: exact contraction of matchgate tensor networks"};
    app.require_subcommand(1);

    std::string in, out, report;
    bool bruteforce = false;
    double tol = 1e-9;

    auto *contract_cmd = app.add_subcommand("contract", "contract a closed network");
    contract_cmd->add_option("network", in, "network JSON")->required();
    contract_cmd->add_option("--report", report, "write the contraction report here");
    contract_cmd->add_flag("--bruteforce-check", bruteforce, "compare against brute-force summation");

    auto *check_cmd = app.add_subcommand("check", "test the matchgate identities");
    check_cmd->add_option("tensor", in, "tensor JSON")->required();
    check_cmd->add_option("--tol", tol, "tolerance relative to the largest component");

    auto *compile_cmd = app.add_subcommand("compile-matchsum", "compile a matchgate to a planar matching sum");
    compile_cmd->add_option("tensor", in, "tensor JSON")->required();
    compile_cmd->add_option("-o,--output", out, "graph JSON")->required();

    auto *gen_cmd = app.add_subcommand("gen", "generate a network");
    gen_cmd->require_subcommand(1);
    GridParams matching, ising;
    ising.wx = ising.wy = 0.5;
    ising.low = -1.0;
    ising.high = 1.0;
    auto *gen_matching = gen_cmd->add_subcommand("matching", "perfect matchings of a grid");
    add_grid_options(gen_matching, matching, "edge weight");
    gen_matching->add_option("-o,--output", out, "network JSON")->required();
    auto *gen_ising = gen_cmd->add_subcommand("ising", "Ising model on a grid; Z = prefactor * value");
    add_grid_options(gen_ising, ising, "coupling beta*J");
    gen_ising->add_option("-o,--output", out, "network JSON")->required();
    RandomNetworkSpec spec;
    spec.max_degree = 4;
    spec.max_k = 2;
    uint64_t seed = 1;
    auto *gen_random = gen_cmd->add_subcommand("random", "random planar network of random matchgates");
    gen_random->add_option("--vertices", spec.vertices)->check(CLI::PositiveNumber);
    gen_random->add_option("--edges", spec.edges)->check(CLI::NonNegativeNumber);
    gen_random->add_option("--max-degree", spec.max_degree)->check(CLI::PositiveNumber);
    gen_random->add_option("--max-k", spec.max_k, "cap on canonical k (-1: none)");
    gen_random->add_option("--seed", seed);
    gen_random->add_option("-o,--output", out, "network JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_INVALID;
    }

    try {
        if (*contract_cmd) {
            return run_contract(in, report, bruteforce);
        }
        if (*check_cmd) {
            return run_check(in, tol);
        }
        if (*compile_cmd) {
            return run_compile(in, out);
        }
        if (*gen_matching) {
            return run_gen_matching(matching, out);
        }
        if (*gen_ising) {
            return run_gen_ising(ising, out);
        }
        if (*gen_random) {
            return run_gen_random(spec, seed, out);
        }
    } catch (const InvalidInput &e) {
        std::cerr << "mgc: " << e.what() << std::endl;
        return EXIT_INVALID;
    } catch (const SizeLimitExceeded &e) {
        std::cerr << "mgc: size limit: " << e.what() << std::endl;
        return EXIT_SIZE;
    } catch (const std::exception &e) {
        std::cerr << "mgc: " << e.what() << std::endl;
        return EXIT_MISMATCH;
    }
    return 0;
}
