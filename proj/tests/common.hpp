#pragma once

#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "specgraph/graph.hpp"

namespace testutil {

using specgraph::Edge;
using specgraph::Graph;

/// 8-vertex weighted benchmark graph used throughout the reference material.
inline Graph weighted8() {
    std::vector<Edge> edges = {
        {0, 1, 0.23}, {0, 2, 0.74}, {0, 3, 0.24}, {1, 2, 0.35}, {1, 4, 0.23}, {2, 3, 0.26},
        {2, 4, 0.24}, {3, 6, 0.32}, {4, 5, 0.51}, {4, 7, 0.14}, {5, 7, 0.15}, {6, 7, 0.32},
    };
    return specgraph::build_graph(8, false, edges);
}

/// Same topology with unit weights.
inline Graph unweighted8() {
    std::vector<Edge> edges = {
        {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 4, 1}, {2, 3, 1},
        {2, 4, 1}, {3, 6, 1}, {4, 5, 1}, {4, 7, 1}, {5, 7, 1}, {6, 7, 1},
    };
    return specgraph::build_graph(8, false, edges);
}

/// Two components: a dense 4-clique-ish block and a 4-vertex block.
inline Graph two_component8() {
    std::vector<Edge> edges = {
        {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {2, 3, 1},
        {4, 5, 1}, {4, 7, 1}, {5, 7, 1}, {6, 7, 1},
    };
    return specgraph::build_graph(8, false, edges);
}

inline Graph triangle() {
    return specgraph::build_graph(3, false, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
}

/// Random undirected graph: each pair present with probability p, weights
/// uniform in (0.1, 1]. Never empty unless p = 0.
inline Graph random_graph(int n, double p, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(eng) < p) edges.emplace_back(i, j, wdist(eng));
    return specgraph::build_graph(n, false, edges);
}

/// Random connected undirected graph: random spanning tree plus extra edges.
inline Graph random_connected_graph(int n, double extra_p, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(eng), v, wdist(eng));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool present = false;
            for (const Edge& e : edges)
                if ((std::get<0>(e) == i && std::get<1>(e) == j) ||
                    (std::get<0>(e) == j && std::get<1>(e) == i))
                    present = true;
            if (!present && coin(eng) < extra_p) edges.emplace_back(i, j, wdist(eng));
        }
    return specgraph::build_graph(n, false, edges);
}

/// Flip the sign of `v` if that brings it closer to `ref` (eigenvectors are
/// defined up to sign).
inline Eigen::VectorXd sign_align(const Eigen::VectorXd& v, const Eigen::VectorXd& ref) {
    return v.dot(ref) >= 0 ? v : Eigen::VectorXd(-v);
}

inline void check_close(const Eigen::VectorXd& got, const std::vector<double>& want,
                        double tol) {
    REQUIRE(got.size() == static_cast<Eigen::Index>(want.size()));
    for (int i = 0; i < got.size(); ++i) {
        INFO("index " << i);
        CHECK(got(i) == Catch::Approx(want[i]).margin(tol));
    }
}

}  // namespace testutil
