#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

namespace detail {

inline std::string set_to_string(const std::vector<int>& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

}  // namespace detail

/// Maximal connected components (weak connectivity for directed graphs),
/// each sorted ascending, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> components;
    std::vector<bool> seen(g.n, false);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v = 0; v < g.n; ++v) {
                if (!seen[v] && (g.weights(u, v) > 0.0 || g.weights(v, u) > 0.0)) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

namespace detail {

inline void require_undirected(const Graph& g, const char* op) {
    if (g.directed)
        fail(ErrorCode::invalid_argument, std::string(op) + " requires an undirected graph");
}

[[noreturn]] inline void fail_disconnected(const Graph& g, const char* op) {
    auto comps = connected_components(g);
    std::ostringstream os;
    os << op << " requires a connected graph; found " << comps.size() << " components:";
    for (const auto& c : comps) os << " " << set_to_string(c);
    fail(ErrorCode::disconnected, os.str());
}

inline void require_connected(const Graph& g, const char* op) {
    if (connected_components(g).size() > 1) fail_disconnected(g, op);
}

}  // namespace detail

/// A^K and B_K = A + A^2 + ... + A^K over the 0/1 adjacency (arithmetic
/// summation, so entries count walks of length exactly K / at most K).
struct WalkCounts {
    Eigen::MatrixXd a_pow;  // A^K
    Eigen::MatrixXd b;      // sum of A^k for k = 1..K
};

inline WalkCounts walk_counts(const Graph& g, int K) {
    if (K < 1) fail(ErrorCode::invalid_argument, "walk length must be >= 1");
    Eigen::MatrixXd a = adjacency_matrix(g);
    Eigen::MatrixXd a_pow = a;
    Eigen::MatrixXd b = a;
    for (int k = 2; k <= K; ++k) {
        a_pow = (a_pow * a).eval();
        b += a_pow;
    }
    return {std::move(a_pow), std::move(b)};
}

/// Vertices reachable from v in at most K hops, including v itself.
inline std::vector<int> k_neighborhood(const Graph& g, int v, int K) {
    detail::check_vertex(v, g.n);
    if (K < 0) fail(ErrorCode::invalid_argument, "neighborhood radius must be >= 0");
    std::vector<int> result{v};
    if (K >= 1) {
        Eigen::MatrixXd b = walk_counts(g, K).b;
        for (int u = 0; u < g.n; ++u)
            if (u != v && b(v, u) > 0.0) result.push_back(u);
    }
    std::sort(result.begin(), result.end());
    return result;
}

/// All-pairs hop distances (weights ignored), the diameter, and the
/// closeness 1 / sum-of-distances per vertex.
struct DistanceReport {
    Eigen::MatrixXi dist;
    int diameter = 0;
    Eigen::VectorXd closeness;
};

inline DistanceReport distances(const Graph& g) {
    detail::require_undirected(g, "distances");
    detail::require_connected(g, "distances");
    DistanceReport report;
    report.dist = Eigen::MatrixXi::Constant(g.n, g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        report.dist(s, s) = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < g.n; ++v) {
                if (g.weights(u, v) > 0.0 && report.dist(s, v) < 0) {
                    report.dist(s, v) = report.dist(s, u) + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    report.diameter = report.dist.maxCoeff();
    report.closeness.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        long farness = report.dist.row(v).sum();
        report.closeness(v) = farness > 0 ? 1.0 / static_cast<double>(farness) : 0.0;
    }
    return report;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace detail

/// Minimum spanning tree under the edge length r = -2*ln(w). Kruskal over the
/// sorted lengths; lengths may be negative for weights > 1, which changes
/// nothing for the sort-and-merge argument.
inline Tree minimum_spanning_tree(const Graph& g) {
    detail::require_undirected(g, "minimum_spanning_tree");
    detail::require_connected(g, "minimum_spanning_tree");
    std::vector<Edge> edges = edge_list(g);
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return edge_cost(std::get<2>(a)) < edge_cost(std::get<2>(b));
    });
    detail::UnionFind uf(g.n);
    Tree tree;
    for (const auto& e : edges) {
        if (uf.unite(std::get<0>(e), std::get<1>(e))) {
            tree.edges.push_back(e);
            tree.cost += edge_cost(std::get<2>(e));
            if (static_cast<int>(tree.edges.size()) == g.n - 1) break;
        }
    }
    return tree;
}

enum class ProductKind { kronecker, cartesian };

/// Adjacency-structure products. Vertex (m1, m2) of the product is indexed as
/// m1*n2 + m2. Kronecker: A1 (x) A2; Cartesian: A1 (x) I + I (x) A2. Factor
/// weights are binarized first (the products are defined on adjacency).
inline Graph graph_product(const Graph& g1, const Graph& g2, ProductKind kind) {
    const Eigen::MatrixXd a1 = adjacency_matrix(g1);
    const Eigen::MatrixXd a2 = adjacency_matrix(g2);
    const int n1 = g1.n, n2 = g2.n;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n1 * n2, n1 * n2);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
            for (int j1 = 0; j1 < n1; ++j1)
                for (int j2 = 0; j2 < n2; ++j2) {
                    double value = 0.0;
                    if (kind == ProductKind::kronecker) {
                        value = a1(i1, j1) * a2(i2, j2);
                    } else {
                        value = (i2 == j2 ? a1(i1, j1) : 0.0) + (i1 == j1 ? a2(i2, j2) : 0.0);
                    }
                    w(i1 * n2 + i2, j1 * n2 + j2) = value;
                }
    return graph_from_weights(std::move(w), g1.directed || g2.directed);
}

enum class EulerClass { none, path, circuit };

inline const char* to_string(EulerClass c) {
    switch (c) {
        case EulerClass::none: return "none";
        case EulerClass::path: return "path";
        case EulerClass::circuit: return "circuit";
    }
    return "unknown";
}

/// Parity rule on unweighted degrees: circuit iff all even, path iff exactly
/// two odd.
inline EulerClass euler_path_exists(const Graph& g) {
    detail::require_undirected(g, "euler_path_exists");
    detail::require_connected(g, "euler_path_exists");
    const Eigen::MatrixXd a = adjacency_matrix(g);
    int odd = 0;
    for (int v = 0; v < g.n; ++v)
        if (static_cast<long>(a.row(v).sum() + 0.5) % 2 != 0) ++odd;
    if (odd == 0) return EulerClass::circuit;
    if (odd == 2) return EulerClass::path;
    return EulerClass::none;
}

/// Shortest-path betweenness for vertices and edges, counted over unordered
/// vertex pairs with fractional credit when several shortest paths tie.
struct BetweennessReport {
    Eigen::VectorXd vertex_bc;
    std::vector<std::pair<std::pair<int, int>, double>> edge_bc;  // ((m, n), score), m < n
};

inline BetweennessReport betweenness(const Graph& g) {
    detail::require_undirected(g, "betweenness");
    detail::require_connected(g, "betweenness");
    const Eigen::MatrixXd a = adjacency_matrix(g);
    Eigen::VectorXd vertex_bc = Eigen::VectorXd::Zero(g.n);
    Eigen::MatrixXd edge_acc = Eigen::MatrixXd::Zero(g.n, g.n);
    // Breadth-first dependency accumulation, one source at a time.
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> order;
        std::vector<std::vector<int>> pred(g.n);
        std::vector<double> sigma(g.n, 0.0);
        std::vector<int> dist(g.n, -1);
        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w = 0; w < g.n; ++w) {
                if (a(v, w) == 0.0) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        std::vector<double> delta(g.n, 0.0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : pred[w]) {
                double credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                delta[v] += credit;
                edge_acc(std::min(v, w), std::max(v, w)) += credit;
            }
            if (w != s) vertex_bc(w) += delta[w];
        }
    }
    // Each unordered pair was visited from both endpoints.
    vertex_bc /= 2.0;
    BetweennessReport report;
    report.vertex_bc = std::move(vertex_bc);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (a(i, j) > 0.0) report.edge_bc.push_back({{i, j}, edge_acc(i, j) / 2.0});
    return report;
}

}  // namespace specgraph
