#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "specgraph/errors.hpp"

namespace specgraph {

/// Weighted graph on vertices 0..n-1. The weight matrix is the single source
/// of truth: the 0/1 adjacency and the degree vector are derived from it.
/// Invariants: all weights >= 0, zero diagonal, symmetric iff undirected.
struct Graph {
    int n = 0;
    bool directed = false;
    Eigen::MatrixXd weights;  // n x n
};

using DegreeVector = Eigen::VectorXd;

/// One undirected edge or directed arc with its weight.
using Edge = std::tuple<int, int, double>;

enum class LaplacianKind { standard, normalized, random_walk, vertex_weighted };

/// Selects which Laplacian `laplacian()` builds; `vertex_weights` is the
/// diagonal of the vertex-weighting matrix and must be present exactly for
/// the vertex_weighted kind.
struct LaplacianVariant {
    LaplacianKind tag = LaplacianKind::standard;
    std::optional<Eigen::VectorXd> vertex_weights;

    static LaplacianVariant standard() { return {LaplacianKind::standard, std::nullopt}; }
    static LaplacianVariant normalized() { return {LaplacianKind::normalized, std::nullopt}; }
    static LaplacianVariant random_walk() { return {LaplacianKind::random_walk, std::nullopt}; }
    static LaplacianVariant vertex_weighted(Eigen::VectorXd v) {
        return {LaplacianKind::vertex_weighted, std::move(v)};
    }
};

/// Spanning tree: edges carry the original graph weights; the cost is the sum
/// of the transformed edge lengths r = -2*ln(w).
struct Tree {
    std::vector<Edge> edges;
    double cost = 0.0;
};

inline double edge_cost(double weight) { return -2.0 * std::log(weight); }

namespace detail {

inline void check_vertex(int v, int n) {
    if (v < 0 || v >= n)
        fail(ErrorCode::index_out_of_range,
             "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
}

}  // namespace detail

/// Builds a graph from an explicit edge list. Rejects self-loops, duplicate
/// edges (in either orientation for undirected graphs), indices outside
/// [0, n), and weights <= 0.
inline Graph build_graph(int n, bool directed, const std::vector<Edge>& edges) {
    if (n < 0) fail(ErrorCode::invalid_size, "negative vertex count " + std::to_string(n));
    Graph g;
    g.n = n;
    g.directed = directed;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    std::set<std::pair<int, int>> seen;
    for (const auto& [src, dst, w] : edges) {
        detail::check_vertex(src, n);
        detail::check_vertex(dst, n);
        if (src == dst)
            fail(ErrorCode::self_loop, "self-loop at vertex " + std::to_string(src));
        if (!(w > 0.0))
            fail(ErrorCode::nonpositive_weight,
                 "edge (" + std::to_string(src) + "," + std::to_string(dst) + ") has weight " +
                     std::to_string(w));
        std::pair<int, int> key =
            directed ? std::pair{src, dst} : std::pair{std::min(src, dst), std::max(src, dst)};
        if (!seen.insert(key).second)
            fail(ErrorCode::duplicate_edge,
                 "duplicate edge (" + std::to_string(src) + "," + std::to_string(dst) + ")");
        g.weights(src, dst) = w;
        if (!directed) g.weights(dst, src) = w;
    }
    return g;
}

/// Wraps an existing weight matrix as a Graph, validating the type invariants.
/// Used by operations that synthesize matrices directly (products, subgraphs).
inline Graph graph_from_weights(Eigen::MatrixXd weights, bool directed) {
    if (weights.rows() != weights.cols())
        fail(ErrorCode::invalid_size, "weight matrix is not square");
    const int n = static_cast<int>(weights.rows());
    for (int i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0)
            fail(ErrorCode::invariant_violation, "nonzero diagonal at vertex " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            if (weights(i, j) < 0.0)
                fail(ErrorCode::invariant_violation, "negative weight at (" + std::to_string(i) +
                                                         "," + std::to_string(j) + ")");
            if (!directed && weights(i, j) != weights(j, i))
                fail(ErrorCode::invariant_violation, "asymmetric weights on an undirected graph");
        }
    }
    return Graph{n, directed, std::move(weights)};
}

enum class TopologyKind {
    complete,
    complete_bipartite,
    star,
    circular,
    path,
    directed_circular,
    directed_path,
};

/// Canonical unit-weight topologies. `first_part` is the size of the first
/// vertex block and is only consulted for complete_bipartite.
inline Graph generate_topology(TopologyKind kind, int n, int first_part = 0) {
    if (n < 2) fail(ErrorCode::invalid_size, "topology needs n >= 2, got " + std::to_string(n));
    std::vector<Edge> edges;
    bool directed = false;
    switch (kind) {
        case TopologyKind::complete:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, 1.0);
            break;
        case TopologyKind::complete_bipartite: {
            if (first_part < 1 || first_part > n - 1)
                fail(ErrorCode::invalid_size,
                     "bipartite parts must both be nonempty (first_part = " +
                         std::to_string(first_part) + ", n = " + std::to_string(n) + ")");
            for (int i = 0; i < first_part; ++i)
                for (int j = first_part; j < n; ++j) edges.emplace_back(i, j, 1.0);
            break;
        }
        case TopologyKind::star:
            for (int i = 1; i < n; ++i) edges.emplace_back(0, i, 1.0);
            break;
        case TopologyKind::circular:
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
            if (n > 2) edges.emplace_back(n - 1, 0, 1.0);  // n = 2 degenerates to one edge
            break;
        case TopologyKind::path:
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
            break;
        case TopologyKind::directed_circular:
            directed = true;
            for (int k = 0; k < n; ++k) edges.emplace_back(k, (k - 1 + n) % n, 1.0);
            break;
        case TopologyKind::directed_path:
            directed = true;
            for (int k = 1; k < n; ++k) edges.emplace_back(k, k - 1, 1.0);
            break;
    }
    return build_graph(n, directed, edges);
}

/// Degree of vertex m is the m-th row sum of the weight matrix, exactly.
inline DegreeVector degree_vector(const Graph& g) { return g.weights.rowwise().sum(); }

/// 0/1 adjacency derived from the weights (any weight > 0 counts as an edge).
inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    return (g.weights.array() > 0.0).cast<double>().matrix();
}

/// Total graph volume: sum of all vertex degrees.
inline double graph_volume(const Graph& g) { return g.weights.sum(); }

/// Undirected edges (m < n) or directed arcs present in the graph, in
/// lexicographic order.
inline std::vector<Edge> edge_list(const Graph& g) {
    std::vector<Edge> edges;
    for (int i = 0; i < g.n; ++i) {
        const int j0 = g.directed ? 0 : i + 1;
        for (int j = j0; j < g.n; ++j)
            if (g.weights(i, j) > 0.0) edges.emplace_back(i, j, g.weights(i, j));
    }
    return edges;
}

namespace detail {

/// D^(-1/2) as a vector; zero-degree vertices get a 0 entry instead of a
/// division by zero, which zeroes the corresponding row/column of the
/// normalized Laplacian (isolated vertices contribute nothing).
inline Eigen::VectorXd inv_sqrt_degrees(const Graph& g) {
    Eigen::VectorXd d = degree_vector(g);
    Eigen::VectorXd s(g.n);
    for (int i = 0; i < g.n; ++i) s(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
    return s;
}

}  // namespace detail

/// Graph Laplacians:
///   standard:        L   = D - W
///   normalized:      L_N = D^(-1/2) L D^(-1/2)   (zero-degree entries of
///                    D^(-1/2) defined as 0, so isolated vertices yield a
///                    zero row/column rather than a unit diagonal)
///   random_walk:     L_RW = D^(-1) L             (same zero-degree rule)
///   vertex_weighted: L_V = V^(1/2) L V^(1/2) for the given positive vertex
///                    weights; V = D^(-1) reproduces the normalized form.
inline Eigen::MatrixXd laplacian(const Graph& g, const LaplacianVariant& variant) {
    const bool needs_v = variant.tag == LaplacianKind::vertex_weighted;
    if (needs_v != variant.vertex_weights.has_value())
        fail(ErrorCode::invalid_argument,
             "vertex_weights must be present exactly for the vertex_weighted variant");
    Eigen::VectorXd d = degree_vector(g);
    Eigen::MatrixXd lap = Eigen::MatrixXd(d.asDiagonal()) - g.weights;
    switch (variant.tag) {
        case LaplacianKind::standard:
            return lap;
        case LaplacianKind::normalized: {
            Eigen::VectorXd s = detail::inv_sqrt_degrees(g);
            return s.asDiagonal() * lap * s.asDiagonal();
        }
        case LaplacianKind::random_walk: {
            Eigen::VectorXd dinv(g.n);
            for (int i = 0; i < g.n; ++i) dinv(i) = d(i) > 0.0 ? 1.0 / d(i) : 0.0;
            return dinv.asDiagonal() * lap;
        }
        case LaplacianKind::vertex_weighted: {
            const Eigen::VectorXd& v = *variant.vertex_weights;
            if (v.size() != g.n)
                fail(ErrorCode::invalid_argument, "vertex_weights length does not match n");
            Eigen::VectorXd vs(g.n);
            for (int i = 0; i < g.n; ++i) {
                if (!(v(i) > 0.0))
                    fail(ErrorCode::invalid_argument,
                         "vertex_weights must be positive (entry " + std::to_string(i) + ")");
                vs(i) = std::sqrt(v(i));
            }
            return vs.asDiagonal() * lap * vs.asDiagonal();
        }
    }
    fail(ErrorCode::invalid_argument, "unknown Laplacian variant");
}

/// Relabels vertices: result(i, j) = weights(perm[i], perm[j]), i.e. the
/// matrix P W P^T for the permutation matrix P with P(i, perm[i]) = 1.
inline Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n)
        fail(ErrorCode::not_a_permutation, "permutation length does not match vertex count");
    std::vector<bool> hit(g.n, false);
    for (int v : perm) {
        if (v < 0 || v >= g.n || hit[v])
            fail(ErrorCode::not_a_permutation, "not a bijection on 0.." + std::to_string(g.n - 1));
        hit[v] = true;
    }
    Eigen::MatrixXd w(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) w(i, j) = g.weights(perm[i], perm[j]);
    return Graph{g.n, g.directed, std::move(w)};
}

}  // namespace specgraph
