#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/properties.hpp"

namespace specgraph::sampling {

enum class SampleMethod {
    random_node,
    random_degree_node,
    random_pagerank_node,
    random_edge,
    random_node_edge,
    random_walk,
    random_jump,
    forest_fire,
};

inline const char* to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::random_node: return "rn";
        case SampleMethod::random_degree_node: return "rdn";
        case SampleMethod::random_pagerank_node: return "rpn";
        case SampleMethod::random_edge: return "re";
        case SampleMethod::random_node_edge: return "rne";
        case SampleMethod::random_walk: return "rw";
        case SampleMethod::random_jump: return "rj";
        case SampleMethod::forest_fire: return "ff";
    }
    return "unknown";
}

inline SampleMethod sample_method_from_string(const std::string& s) {
    if (s == "rn") return SampleMethod::random_node;
    if (s == "rdn") return SampleMethod::random_degree_node;
    if (s == "rpn") return SampleMethod::random_pagerank_node;
    if (s == "re") return SampleMethod::random_edge;
    if (s == "rne") return SampleMethod::random_node_edge;
    if (s == "rw") return SampleMethod::random_walk;
    if (s == "rj") return SampleMethod::random_jump;
    if (s == "ff") return SampleMethod::forest_fire;
    fail(ErrorCode::invalid_argument, "unknown sampling method '" + s + "'");
}

struct SampleConfig {
    SampleMethod method = SampleMethod::random_node;
    int target = 1;
    unsigned long long seed = 42;
    double rw_jump_prob = 0.15;    // random_jump only
    double ff_forward_prob = 0.7;  // forest_fire only
};

/// Down-scaled graph plus the original indices of the kept vertices
/// (ascending); result vertex k corresponds to vertices[k].
struct SampleResult {
    Graph graph;
    std::vector<int> vertices;
};

/// PageRank scores via power iteration on r <- (1-d)/n + d P^T r with
/// P = D^(-1) W and zero-out-degree rows replaced by uniform rows. Stops when
/// the L1 change drops below tol (at most 1000 rounds); scores sum to 1.
inline Eigen::VectorXd pagerank(const Graph& g, double damping = 0.85, double tol = 1e-12) {
    if (!(damping > 0.0 && damping < 1.0))
        fail(ErrorCode::invalid_argument, "damping factor must lie in (0, 1)");
    if (!(tol > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
    const int n = g.n;
    Eigen::MatrixXd p(n, n);
    const DegreeVector d = degree_vector(g);
    for (int v = 0; v < n; ++v) {
        if (d(v) > 0.0)
            p.row(v) = g.weights.row(v) / d(v);
        else
            p.row(v).setConstant(1.0 / n);
    }
    Eigen::VectorXd r = Eigen::VectorXd::Constant(n, 1.0 / n);
    for (int round = 0; round < 1000; ++round) {
        Eigen::VectorXd next =
            Eigen::VectorXd::Constant(n, (1.0 - damping) / n) + damping * p.transpose() * r;
        const double change = (next - r).cwiseAbs().sum();
        r = std::move(next);
        if (change < tol) break;
    }
    return r;
}

namespace detail {

/// Weighted draw from `weights` restricted to indices where alive[i]; falls
/// back to a uniform draw over the alive set when all alive weights are zero
/// (std::discrete_distribution is undefined on an all-zero list).
inline int weighted_pick(std::mt19937_64& engine, const Eigen::VectorXd& weights,
                         const std::vector<bool>& alive) {
    std::vector<double> w(weights.size(), 0.0);
    double total = 0.0;
    for (int i = 0; i < weights.size(); ++i)
        if (alive[i]) {
            w[i] = weights(i);
            total += w[i];
        }
    if (total <= 0.0) {
        for (int i = 0; i < weights.size(); ++i) w[i] = alive[i] ? 1.0 : 0.0;
    }
    std::discrete_distribution<int> dist(w.begin(), w.end());
    return dist(engine);
}

inline int uniform_pick(std::mt19937_64& engine, int n) {
    std::uniform_int_distribution<int> dist(0, n - 1);
    return dist(engine);
}

/// Uniform draw from the vertices NOT yet selected.
inline int unvisited_pick(std::mt19937_64& engine, const std::vector<bool>& selected, int n) {
    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
        if (!selected[v]) pool.push_back(v);
    return pool[uniform_pick(engine, static_cast<int>(pool.size()))];
}

inline std::vector<int> score_sample_without_replacement(std::mt19937_64& engine,
                                                         const Eigen::VectorXd& scores,
                                                         int target) {
    const int n = static_cast<int>(scores.size());
    std::vector<bool> alive(n, true);
    std::vector<int> picked;
    for (int k = 0; k < target; ++k) {
        const int v = weighted_pick(engine, scores, alive);
        alive[v] = false;
        picked.push_back(v);
    }
    return picked;
}

}  // namespace detail

/// Vertex-sampling down-scaler. All methods select a vertex set and return
/// the induced subgraph (original weights restricted to the kept vertices,
/// renumbered in ascending original order). random_edge may overshoot or
/// undershoot the target; every other method returns exactly cfg.target
/// vertices. Identical (g, cfg) gives identical output.
inline SampleResult downscale(const Graph& g, const SampleConfig& cfg) {
    if (cfg.target < 1) fail(ErrorCode::invalid_argument, "sample target must be >= 1");
    if (cfg.target > g.n)
        fail(ErrorCode::target_too_large, "sample target " + std::to_string(cfg.target) +
                                              " exceeds vertex count " + std::to_string(g.n));
    if (!(cfg.rw_jump_prob >= 0.0 && cfg.rw_jump_prob <= 1.0))
        fail(ErrorCode::invalid_argument, "jump probability must lie in [0, 1]");
    if (!(cfg.ff_forward_prob > 0.0 && cfg.ff_forward_prob < 1.0))
        fail(ErrorCode::invalid_argument, "forward-burning probability must lie in (0, 1)");
    const bool walk_based = cfg.method == SampleMethod::random_walk ||
                            cfg.method == SampleMethod::random_jump ||
                            cfg.method == SampleMethod::forest_fire;
    if (walk_based) specgraph::detail::require_undirected(g, to_string(cfg.method));

    const int n = g.n;
    std::mt19937_64 engine(cfg.seed);
    std::vector<bool> selected(n, false);
    int count = 0;
    auto select = [&](int v) {
        if (!selected[v]) {
            selected[v] = true;
            ++count;
            return true;
        }
        return false;
    };

    switch (cfg.method) {
        case SampleMethod::random_node:
            for (int v : detail::score_sample_without_replacement(
                     engine, Eigen::VectorXd::Ones(n), cfg.target))
                select(v);
            break;
        case SampleMethod::random_degree_node:
            for (int v :
                 detail::score_sample_without_replacement(engine, degree_vector(g), cfg.target))
                select(v);
            break;
        case SampleMethod::random_pagerank_node:
            for (int v :
                 detail::score_sample_without_replacement(engine, pagerank(g), cfg.target))
                select(v);
            break;
        case SampleMethod::random_edge: {
            std::vector<Edge> edges = edge_list(g);
            while (count < cfg.target && !edges.empty()) {
                const int e = detail::uniform_pick(engine, static_cast<int>(edges.size()));
                select(std::get<0>(edges[e]));
                select(std::get<1>(edges[e]));
                edges.erase(edges.begin() + e);
            }
            break;
        }
        case SampleMethod::random_node_edge:
            while (count < cfg.target) {
                const int v = detail::uniform_pick(engine, n);
                select(v);
                if (count == cfg.target) break;
                std::vector<int> nbrs;
                for (int u = 0; u < n; ++u)
                    if (g.weights(v, u) > 0.0) nbrs.push_back(u);
                if (!nbrs.empty())
                    select(nbrs[detail::uniform_pick(engine, static_cast<int>(nbrs.size()))]);
            }
            break;
        case SampleMethod::random_walk:
        case SampleMethod::random_jump: {
            const long long walk_budget = 10LL * n + 100;
            bool last_walk_grew = true;
            while (count < cfg.target) {
                // fresh walk; after a fruitless walk, start on untouched ground
                int current = last_walk_grew ? detail::uniform_pick(engine, n)
                                             : detail::unvisited_pick(engine, selected, n);
                last_walk_grew = select(current);
                std::bernoulli_distribution jump(cfg.rw_jump_prob);
                for (long long step = 0; step < walk_budget && count < cfg.target; ++step) {
                    if (cfg.method == SampleMethod::random_jump && jump(engine)) {
                        current = detail::uniform_pick(engine, n);
                    } else {
                        if (g.weights.row(current).sum() <= 0.0) break;
                        std::vector<bool> all(n, true);
                        current = detail::weighted_pick(
                            engine, g.weights.row(current).transpose(), all);
                    }
                    last_walk_grew = select(current) || last_walk_grew;
                }
            }
            break;
        }
        case SampleMethod::forest_fire: {
            std::geometric_distribution<int> fan(1.0 - cfg.ff_forward_prob);
            bool last_fire_grew = true;
            while (count < cfg.target) {
                const int start = last_fire_grew ? detail::uniform_pick(engine, n)
                                                 : detail::unvisited_pick(engine, selected, n);
                last_fire_grew = select(start);
                std::queue<int> burning;
                burning.push(start);
                while (!burning.empty() && count < cfg.target) {
                    const int v = burning.front();
                    burning.pop();
                    std::vector<int> candidates;
                    for (int u = 0; u < n; ++u)
                        if (g.weights(v, u) > 0.0 && !selected[u]) candidates.push_back(u);
                    int burn = std::min(fan(engine), static_cast<int>(candidates.size()));
                    for (int k = 0; k < burn && count < cfg.target; ++k) {
                        const int pick =
                            detail::uniform_pick(engine, static_cast<int>(candidates.size()));
                        const int u = candidates[pick];
                        candidates.erase(candidates.begin() + pick);
                        select(u);
                        last_fire_grew = true;
                        burning.push(u);
                    }
                }
            }
            break;
        }
    }

    SampleResult result;
    for (int v = 0; v < n; ++v)
        if (selected[v]) result.vertices.push_back(v);
    const int m = static_cast<int>(result.vertices.size());
    Eigen::MatrixXd w(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w(i, j) = g.weights(result.vertices[i], result.vertices[j]);
    result.graph = graph_from_weights(w, g.directed);
    return result;
}

}  // namespace specgraph::sampling
