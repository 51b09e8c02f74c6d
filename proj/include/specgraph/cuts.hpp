#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/properties.hpp"

namespace specgraph::cuts {

/// Disjoint vertex sets covering 0..n-1, with per-set sizes and volumes
/// (volume = sum of member degrees).
struct Partition {
    std::vector<std::vector<int>> sets;
    std::vector<int> sizes;
    std::vector<double> volumes;
};

inline Partition partition_from_sets(const Graph& g, std::vector<std::vector<int>> sets) {
    Partition p;
    DegreeVector d = degree_vector(g);
    std::vector<bool> seen(g.n, false);
    int covered = 0;
    for (auto& s : sets) {
        if (s.empty()) fail(ErrorCode::empty_side, "partition sets must be nonempty");
        std::sort(s.begin(), s.end());
        double vol = 0.0;
        for (int v : s) {
            specgraph::detail::check_vertex(v, g.n);
            if (seen[v])
                fail(ErrorCode::invariant_violation,
                     "vertex " + std::to_string(v) + " appears in two sets");
            seen[v] = true;
            ++covered;
            vol += d(v);
        }
        p.sizes.push_back(static_cast<int>(s.size()));
        p.volumes.push_back(vol);
        p.sets.push_back(std::move(s));
    }
    if (covered != g.n)
        fail(ErrorCode::invariant_violation, "partition does not cover every vertex");
    return p;
}

/// Bipartition [E, complement-of-E].
inline Partition bipartition(const Graph& g, const std::vector<int>& e_set) {
    std::vector<bool> in_e(g.n, false);
    for (int v : e_set) {
        specgraph::detail::check_vertex(v, g.n);
        in_e[v] = true;
    }
    std::vector<int> e, h;
    for (int v = 0; v < g.n; ++v) (in_e[v] ? e : h).push_back(v);
    if (e.empty() || h.empty())
        fail(ErrorCode::empty_side, "both sides of a cut must be nonempty");
    return partition_from_sets(g, {std::move(e), std::move(h)});
}

inline Partition partition_from_labels(const Graph& g, const std::vector<int>& labels, int k) {
    std::vector<std::vector<int>> sets(k);
    for (int v = 0; v < g.n; ++v) {
        if (labels[v] < 0 || labels[v] >= k)
            fail(ErrorCode::invalid_argument, "label outside [0, k)");
        sets[labels[v]].push_back(v);
    }
    sets.erase(std::remove_if(sets.begin(), sets.end(),
                              [](const std::vector<int>& s) { return s.empty(); }),
               sets.end());
    return partition_from_sets(g, std::move(sets));
}

enum class CutMetric { plain, ratio, volume, sparsity, expansion, cheeger };

inline const char* to_string(CutMetric m) {
    switch (m) {
        case CutMetric::plain: return "plain";
        case CutMetric::ratio: return "ratio";
        case CutMetric::volume: return "volume";
        case CutMetric::sparsity: return "sparsity";
        case CutMetric::expansion: return "expansion";
        case CutMetric::cheeger: return "cheeger";
    }
    return "unknown";
}

inline CutMetric cut_metric_from_string(const std::string& s) {
    if (s == "plain") return CutMetric::plain;
    if (s == "ratio") return CutMetric::ratio;
    if (s == "volume") return CutMetric::volume;
    if (s == "sparsity") return CutMetric::sparsity;
    if (s == "expansion") return CutMetric::expansion;
    if (s == "cheeger") return CutMetric::cheeger;
    fail(ErrorCode::invalid_argument, "unknown cut metric '" + s + "'");
}

struct CutReport {
    Partition partition;
    CutMetric metric = CutMetric::plain;
    double value = 0.0;
    std::optional<long long> enumerated;  // bipartitions examined (exhaustive search only)
};

/// Sum of weights crossing from E to its complement; each undirected edge is
/// counted once.
inline double cut_value(const Graph& g, const std::vector<int>& e_set) {
    std::vector<bool> in_e(g.n, false);
    int count = 0;
    for (int v : e_set) {
        specgraph::detail::check_vertex(v, g.n);
        if (!in_e[v]) ++count;
        in_e[v] = true;
    }
    if (count == 0 || count == g.n)
        fail(ErrorCode::empty_side, "both sides of a cut must be nonempty");
    double total = 0.0;
    for (int m = 0; m < g.n; ++m) {
        if (!in_e[m]) continue;
        for (int n = 0; n < g.n; ++n)
            if (!in_e[n]) total += g.weights(m, n);
    }
    return total;
}

namespace detail {

/// Metric value for a bipartition. min_side relaxes the expansion size
/// requirement (and the cheeger orientation) to the smaller side, which is
/// the convention used during exhaustive/sweep enumeration where every
/// bipartition must be admissible.
inline double metric_value(CutMetric metric, double cut, int ne, int nh, double ve, double vh,
                           int n, bool min_side) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (metric) {
        case CutMetric::plain:
            return cut;
        case CutMetric::ratio:
            return (1.0 / ne + 1.0 / nh) * cut;
        case CutMetric::volume:
            return (ve > 0.0 && vh > 0.0) ? (1.0 / ve + 1.0 / vh) * cut : inf;
        case CutMetric::sparsity:
            return cut / (static_cast<double>(ne) * nh);
        case CutMetric::expansion: {
            if (min_side) return cut / std::min(ne, nh);
            if (2 * ne > n)
                fail(ErrorCode::expansion_size_violation,
                     "expansion requires |E| <= N/2 (|E| = " + std::to_string(ne) +
                         ", N = " + std::to_string(n) + ")");
            return cut / ne;
        }
        case CutMetric::cheeger: {
            const double vmin = std::min(ve, vh);
            return vmin > 0.0 ? cut / vmin : inf;
        }
    }
    fail(ErrorCode::invalid_argument, "unknown cut metric");
}

}  // namespace detail

/// Evaluates one cut metric for the bipartition [E, V\E].
inline CutReport cut_metric(const Graph& g, const std::vector<int>& e_set, CutMetric metric) {
    specgraph::detail::require_undirected(g, "cut_metric");
    CutReport report;
    report.partition = bipartition(g, e_set);
    report.metric = metric;
    const double cut = cut_value(g, report.partition.sets[0]);
    report.value = detail::metric_value(metric, cut, report.partition.sizes[0],
                                        report.partition.sizes[1], report.partition.volumes[0],
                                        report.partition.volumes[1], g.n, /*min_side=*/false);
    return report;
}

/// Exact minimizer over all 2^(N-1) - 1 bipartitions (vertex 0 pinned to E to
/// halve the space). Gray-code enumeration keeps the cut and volumes
/// incremental; ties within 1e-12 resolve to the lexicographically smallest E.
inline CutReport brute_force_min_cut(const Graph& g, CutMetric metric) {
    specgraph::detail::require_undirected(g, "brute_force_min_cut");
    if (g.n > 22)
        fail(ErrorCode::too_large,
             "exhaustive cut search limited to n <= 22, got n = " + std::to_string(g.n));
    if (g.n < 2) fail(ErrorCode::empty_side, "no bipartition exists for n < 2");

    const DegreeVector d = degree_vector(g);
    const double total_volume = d.sum();
    // State: E = {0} union {bit i -> vertex i+1}. cross(v) = sum of W(v, u) over u in E.
    std::vector<bool> in_e(g.n, false);
    in_e[0] = true;
    Eigen::VectorXd cross = g.weights.col(0);
    double cut = d(0);
    int ne = 1;
    double ve = d(0);

    const std::uint64_t states = 1ull << (g.n - 1);
    long long enumerated = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_e;

    auto consider = [&]() {
        ++enumerated;
        const double value = detail::metric_value(metric, cut, ne, g.n - ne, ve,
                                                  total_volume - ve, g.n, /*min_side=*/true);
        if (value < best - 1e-12) {
            best = value;
            best_e.clear();
            for (int v = 0; v < g.n; ++v)
                if (in_e[v]) best_e.push_back(v);
        } else if (value <= best + 1e-12) {
            std::vector<int> e;
            for (int v = 0; v < g.n; ++v)
                if (in_e[v]) e.push_back(v);
            if (std::lexicographical_compare(e.begin(), e.end(), best_e.begin(), best_e.end()))
                best_e = std::move(e);
        }
    };

    consider();  // E = {0}
    for (std::uint64_t step = 1; step < states; ++step) {
        const int bit = std::countr_zero(step);  // Gray transition: flip vertex bit+1
        const int v = bit + 1;
        if (in_e[v]) {
            in_e[v] = false;
            for (int u = 0; u < g.n; ++u) cross(u) -= g.weights(u, v);
            cut -= d(v) - 2.0 * cross(v);
            --ne;
            ve -= d(v);
        } else {
            cut += d(v) - 2.0 * cross(v);
            in_e[v] = true;
            for (int u = 0; u < g.n; ++u) cross(u) += g.weights(u, v);
            ++ne;
            ve += d(v);
        }
        if (ne == g.n) continue;  // complement empty: not a cut
        consider();
    }

    CutReport report;
    report.partition = bipartition(g, best_e);
    report.metric = metric;
    report.value = best;
    report.enumerated = enumerated;
    return report;
}

/// Max-flow result: the min-cut edges are recovered from the final residual
/// graph (source side = vertices still reachable from s).
struct FlowResult {
    double max_flow = 0.0;
    std::vector<Edge> cut_edges;  // (m, n, capacity) with m on the source side
    std::vector<int> source_side;
};

/// Edmonds-Karp: shortest augmenting paths on the residual matrix, residual
/// entries below 1e-12 treated as saturated so the loop terminates with real
/// capacities. Undirected edges act as arc pairs with equal capacity.
inline FlowResult max_flow_min_cut(const Graph& g, int s, int t) {
    specgraph::detail::check_vertex(s, g.n);
    specgraph::detail::check_vertex(t, g.n);
    if (s == t) fail(ErrorCode::same_vertex, "source and sink coincide");
    constexpr double saturated = 1e-12;
    Eigen::MatrixXd residual = g.weights;  // symmetric for undirected graphs

    auto bfs_parents = [&](std::vector<int>& parent) {
        std::fill(parent.begin(), parent.end(), -1);
        parent[s] = s;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (u == t) return true;
            for (int v = 0; v < g.n; ++v) {
                if (parent[v] < 0 && residual(u, v) > saturated) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        return false;
    };

    FlowResult result;
    std::vector<int> parent(g.n);
    while (bfs_parents(parent)) {
        double bottleneck = std::numeric_limits<double>::infinity();
        for (int v = t; v != s; v = parent[v])
            bottleneck = std::min(bottleneck, residual(parent[v], v));
        for (int v = t; v != s; v = parent[v]) {
            residual(parent[v], v) -= bottleneck;
            residual(v, parent[v]) += bottleneck;
        }
        result.max_flow += bottleneck;
    }

    std::vector<bool> reachable(g.n, false);
    std::deque<int> queue{s};
    reachable[s] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < g.n; ++v)
            if (!reachable[v] && residual(u, v) > saturated) {
                reachable[v] = true;
                queue.push_back(v);
            }
    }
    for (int v = 0; v < g.n; ++v)
        if (reachable[v]) result.source_side.push_back(v);
    for (int m = 0; m < g.n; ++m) {
        if (!reachable[m]) continue;
        for (int n = 0; n < g.n; ++n)
            if (!reachable[n] && g.weights(m, n) > 0.0)
                result.cut_edges.emplace_back(m, n, g.weights(m, n));
    }
    return result;
}

/// Minimum over the N-1 prefix cuts E_p = {order[0..p-1]} with incremental
/// cut/size/volume updates; ties resolve to the smaller prefix.
inline CutReport sweep_cut(const Graph& g, const std::vector<int>& order, CutMetric metric) {
    specgraph::detail::require_undirected(g, "sweep_cut");
    if (static_cast<int>(order.size()) != g.n)
        fail(ErrorCode::not_a_permutation, "order length does not match vertex count");
    std::vector<bool> hit(g.n, false);
    for (int v : order) {
        if (v < 0 || v >= g.n || hit[v])
            fail(ErrorCode::not_a_permutation, "order is not a permutation of 0..n-1");
        hit[v] = true;
    }
    if (g.n < 2) fail(ErrorCode::empty_side, "no bipartition exists for n < 2");

    const DegreeVector d = degree_vector(g);
    const double total_volume = d.sum();
    std::vector<bool> in_e(g.n, false);
    double cut = 0.0, ve = 0.0;
    double best = std::numeric_limits<double>::infinity();
    int best_p = 0;
    for (int p = 1; p < g.n; ++p) {
        const int v = order[p - 1];
        double to_e = 0.0;
        for (int u = 0; u < g.n; ++u)
            if (in_e[u]) to_e += g.weights(v, u);
        cut += d(v) - 2.0 * to_e;
        in_e[v] = true;
        ve += d(v);
        const double value =
            detail::metric_value(metric, cut, p, g.n - p, ve, total_volume - ve, g.n,
                                 /*min_side=*/true);
        if (value < best - 1e-12) {
            best = value;
            best_p = p;
        }
    }
    CutReport report;
    report.partition = bipartition(g, {order.begin(), order.begin() + best_p});
    report.metric = metric;
    report.value = best;
    return report;
}

/// Spectral sandwich for the conductance: lambda1/2 <= phi <= sqrt(2*lambda1).
/// Tiny negative inputs (solver round-off) are clamped to zero.
inline std::pair<double, double> cheeger_bounds(double lambda1) {
    if (lambda1 < 0.0 && lambda1 >= -1e-12) lambda1 = 0.0;
    if (lambda1 < 0.0)
        fail(ErrorCode::negative_eigenvalue,
             "connectivity eigenvalue must be nonnegative, got " + std::to_string(lambda1));
    return {lambda1 / 2.0, std::sqrt(2.0 * lambda1)};
}

}  // namespace specgraph::cuts
