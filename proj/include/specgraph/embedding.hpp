#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "specgraph/cuts.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/spectral.hpp"

namespace specgraph::embedding {

enum class EmbeddingMap {
    laplacian,
    generalized,
    normalized,
    commute_time,
    diffusion,
    cumulative_diffusion,
};

inline const char* to_string(EmbeddingMap m) {
    switch (m) {
        case EmbeddingMap::laplacian: return "laplacian";
        case EmbeddingMap::generalized: return "generalized";
        case EmbeddingMap::normalized: return "normalized";
        case EmbeddingMap::commute_time: return "commute_time";
        case EmbeddingMap::diffusion: return "diffusion";
        case EmbeddingMap::cumulative_diffusion: return "cumulative_diffusion";
    }
    return "unknown";
}

enum class NormScheme { none, unit_norm, sign, sign_mid, minmax };

inline const char* to_string(NormScheme s) {
    switch (s) {
        case NormScheme::none: return "none";
        case NormScheme::unit_norm: return "unit_norm";
        case NormScheme::sign: return "sign";
        case NormScheme::sign_mid: return "sign_mid";
        case NormScheme::minmax: return "minmax";
    }
    return "unknown";
}

/// Per-vertex spectral coordinates: row n holds q_n, built from eigenvectors
/// u_1..u_M (the constant u_0 is always excluded, hence M <= n-1).
struct SpectralEmbedding {
    Eigen::MatrixXd coords;  // n x M
    EmbeddingMap mapping = EmbeddingMap::laplacian;
    int M = 0;
    NormScheme normalization = NormScheme::none;
    int t = 0;  // diffusion step (diffusion mapping only)
};

/// Flat k-clustering of embedded vertices.
struct ClusterAssignment {
    std::vector<int> labels;
    Eigen::MatrixXd centroids;  // k x M
    int iterations = 0;
};

namespace detail {

inline spectral::EigenDecomposition decomposition_for(const Graph& g, EmbeddingMap mapping) {
    switch (mapping) {
        case EmbeddingMap::laplacian:
        case EmbeddingMap::commute_time:
            return spectral::eig_symmetric(laplacian(g, LaplacianVariant::standard()),
                                           spectral::MatrixVariant::laplacian);
        case EmbeddingMap::generalized:
        case EmbeddingMap::diffusion:
        case EmbeddingMap::cumulative_diffusion:
            return spectral::eig_generalized(g);
        case EmbeddingMap::normalized:
            return spectral::eig_symmetric(laplacian(g, LaplacianVariant::normalized()),
                                           spectral::MatrixVariant::normalized_laplacian);
    }
    fail(ErrorCode::invalid_argument, "unknown embedding mapping");
}

}  // namespace detail

/// Spectral vertex embedding. Column k (for eigenpair k = 1..M) is scaled by:
/// 1 (laplacian/generalized/normalized), 1/sqrt(lambda_k) (commute_time),
/// (1 - lambda_k)^t (diffusion), 1/lambda_k (cumulative_diffusion). The
/// 1/lambda scalings refuse disconnected graphs instead of regularizing.
inline SpectralEmbedding embed(const Graph& g, EmbeddingMap mapping, int M, int t = 1) {
    specgraph::detail::require_undirected(g, "embed");
    if (M < 1 || M > g.n - 1)
        fail(ErrorCode::dimension_too_large, "embedding dimension must lie in [1, n-1], got " +
                                                 std::to_string(M));
    if (t < 0) fail(ErrorCode::invalid_argument, "diffusion step must be >= 0");
    spectral::EigenDecomposition eig = detail::decomposition_for(g, mapping);
    const double zero_tol = spectral::zero_eigenvalue_tolerance(eig.eigenvalues);
    const bool needs_connectivity =
        mapping == EmbeddingMap::commute_time || mapping == EmbeddingMap::cumulative_diffusion;
    if (needs_connectivity && eig.eigenvalues(1) <= zero_tol)
        fail(ErrorCode::disconnected_for_scaling,
             "1/lambda scaling requires a connected graph (lambda_1 = " +
                 std::to_string(eig.eigenvalues(1)) + ")");
    SpectralEmbedding e;
    e.mapping = mapping;
    e.M = M;
    e.t = mapping == EmbeddingMap::diffusion ? t : 0;
    e.coords.resize(g.n, M);
    for (int k = 1; k <= M; ++k) {
        const double lambda = eig.eigenvalues(k);
        double scale = 1.0;
        if (mapping == EmbeddingMap::commute_time)
            scale = 1.0 / std::sqrt(lambda);
        else if (mapping == EmbeddingMap::diffusion)
            scale = std::pow(1.0 - lambda, e.t);
        else if (mapping == EmbeddingMap::cumulative_diffusion)
            scale = 1.0 / lambda;
        e.coords.col(k - 1) = scale * eig.eigenvectors.col(k);
    }
    return e;
}

/// Coordinate post-processing (identity, row unit-norm, sign, sign around the
/// column midrange, column min-max rescale). sign(0) counts as +1.
inline SpectralEmbedding normalize_embedding(const SpectralEmbedding& e, NormScheme scheme) {
    SpectralEmbedding out = e;
    out.normalization = scheme;
    auto sign = [](double v) { return v >= 0.0 ? 1.0 : -1.0; };
    switch (scheme) {
        case NormScheme::none:
            break;
        case NormScheme::unit_norm:
            for (int i = 0; i < out.coords.rows(); ++i) {
                const double norm = out.coords.row(i).norm();
                if (norm > 0.0) out.coords.row(i) /= norm;
            }
            break;
        case NormScheme::sign:
            out.coords = out.coords.unaryExpr(sign);
            break;
        case NormScheme::sign_mid:
            for (int j = 0; j < out.coords.cols(); ++j) {
                const double mid =
                    (out.coords.col(j).maxCoeff() + out.coords.col(j).minCoeff()) / 2.0;
                out.coords.col(j) =
                    out.coords.col(j).unaryExpr([&](double v) { return sign(v - mid); });
            }
            break;
        case NormScheme::minmax:
            for (int j = 0; j < out.coords.cols(); ++j) {
                const double lo = out.coords.col(j).minCoeff();
                const double hi = out.coords.col(j).maxCoeff();
                if (hi == lo)
                    fail(ErrorCode::degenerate_column,
                         "column " + std::to_string(j + 1) + " is constant; min-max rescale undefined");
                out.coords.col(j) = (out.coords.col(j).array() - lo) / (hi - lo);
            }
            break;
    }
    return out;
}

/// Two-way split by the sign of the connectivity eigenvector u_1 of the chosen
/// variant: E = {n : u_1(n) > 0}, zeros go to the complement.
inline cuts::Partition fiedler_bipartition(const Graph& g, EmbeddingMap variant) {
    if (variant != EmbeddingMap::laplacian && variant != EmbeddingMap::generalized &&
        variant != EmbeddingMap::normalized)
        fail(ErrorCode::invalid_argument,
             "bipartition variant must be laplacian, generalized, or normalized");
    specgraph::detail::require_undirected(g, "fiedler_bipartition");
    if (connected_components(g).size() > 1)
        specgraph::detail::fail_disconnected(g, "fiedler_bipartition");
    spectral::EigenDecomposition eig = detail::decomposition_for(g, variant);
    std::vector<int> e;
    for (int v = 0; v < g.n; ++v)
        if (eig.eigenvectors(v, 1) > 0.0) e.push_back(v);
    return cuts::bipartition(g, e);
}

/// Lloyd iteration with deterministic farthest-point seeding: the first
/// centroid is drawn from the seeded generator, the rest maximize the minimum
/// distance to the centroids chosen so far (ties to the lowest index).
/// Assignment ties go to the lowest centroid index; empty clusters keep their
/// previous centroid.
inline ClusterAssignment kmeans_refine(const SpectralEmbedding& e, int k,
                                       unsigned long long seed) {
    const int n = static_cast<int>(e.coords.rows());
    if (k < 1 || k > n) fail(ErrorCode::invalid_argument, "cluster count outside [1, n]");
    std::mt19937_64 engine(seed);
    std::vector<int> chosen{static_cast<int>(engine() % static_cast<unsigned long long>(n))};
    while (static_cast<int>(chosen.size()) < k) {
        int best_idx = -1;
        double best_dist = -1.0;
        for (int i = 0; i < n; ++i) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
            double nearest = std::numeric_limits<double>::infinity();
            for (int c : chosen)
                nearest = std::min(nearest, (e.coords.row(i) - e.coords.row(c)).squaredNorm());
            if (nearest > best_dist) {  // strict >, so ties keep the lowest index
                best_dist = nearest;
                best_idx = i;
            }
        }
        chosen.push_back(best_idx);
    }
    Eigen::MatrixXd centroids(k, e.coords.cols());
    for (int c = 0; c < k; ++c) centroids.row(c) = e.coords.row(chosen[c]);

    ClusterAssignment result;
    result.labels.assign(n, -1);
    for (int round = 1; round <= 100; ++round) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best_c = 0;
            double best_d = (e.coords.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double dist = (e.coords.row(i) - centroids.row(c)).squaredNorm();
                if (dist < best_d) {  // ties keep the lower centroid index
                    best_d = dist;
                    best_c = c;
                }
            }
            if (result.labels[i] != best_c) {
                result.labels[i] = best_c;
                changed = true;
            }
        }
        result.iterations = round;
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, e.coords.cols());
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums.row(result.labels[i]) += e.coords.row(i);
            ++counts[result.labels[i]];
        }
        for (int c = 0; c < k; ++c)
            if (counts[c] > 0) centroids.row(c) = sums.row(c) / counts[c];
        if (!changed) break;
    }
    result.centroids = std::move(centroids);
    return result;
}

/// Relative eigenvalue gap 1 - lambda_k / lambda_{k+1} for the ascending
/// spectrum; lambda_k below the zero tolerance counts as exactly 0.
inline double relative_eigengap(const Eigen::VectorXd& eigenvalues, int k) {
    if (k < 0 || k + 1 >= eigenvalues.size())
        fail(ErrorCode::invalid_argument, "gap index outside the spectrum");
    const double zero_tol = spectral::zero_eigenvalue_tolerance(eigenvalues);
    double lk = eigenvalues(k);
    const double lk1 = eigenvalues(k + 1);
    if (lk1 <= zero_tol)
        fail(ErrorCode::zero_denominator,
             "lambda_{k+1} must be positive, got " + std::to_string(lk1));
    if (std::abs(lk) < zero_tol) lk = 0.0;
    return 1.0 - lk / lk1;
}

/// Pseudo-inverse through the eigenbasis: zero eigenvalue stays zero, the
/// rest invert. Rejects matrices with more than one (numerically) zero
/// eigenvalue, i.e. Laplacians of disconnected graphs.
inline Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& l) {
    spectral::EigenDecomposition eig =
        spectral::eig_symmetric(l, spectral::MatrixVariant::laplacian);
    const double zero_tol = spectral::zero_eigenvalue_tolerance(eig.eigenvalues);
    int zeros = 0;
    Eigen::VectorXd inv(eig.eigenvalues.size());
    for (int i = 0; i < eig.eigenvalues.size(); ++i) {
        if (std::abs(eig.eigenvalues(i)) <= zero_tol) {
            ++zeros;
            inv(i) = 0.0;
        } else {
            inv(i) = 1.0 / eig.eigenvalues(i);
        }
    }
    if (zeros > 1)
        fail(ErrorCode::multiple_zero_eigenvalues,
             std::to_string(zeros) + " zero eigenvalues: graph is disconnected");
    return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose();
}

/// Distance between the t-step random-walk probability clouds seeded at m and
/// n: ||(p_m - p_n) D^(-1/2)|| * sqrt(V), where p are rows of P^t, P = D^(-1)W.
/// Cross-checked against the spectral form (generalized embedding scaled by
/// (1-lambda)^t) before returning the probability-form value.
inline double diffusion_distance(const Graph& g, int m, int n, int t) {
    specgraph::detail::require_undirected(g, "diffusion_distance");
    specgraph::detail::check_vertex(m, g.n);
    specgraph::detail::check_vertex(n, g.n);
    if (t < 1) fail(ErrorCode::invalid_argument, "diffusion step must be >= 1");
    specgraph::detail::require_connected(g, "diffusion_distance");
    const DegreeVector d = degree_vector(g);
    const double volume = d.sum();
    Eigen::MatrixXd p = d.cwiseInverse().asDiagonal() * g.weights;
    Eigen::MatrixXd pt = Eigen::MatrixXd::Identity(g.n, g.n);
    for (int step = 0; step < t; ++step) pt = (pt * p).eval();
    Eigen::VectorXd diff = (pt.row(m) - pt.row(n)).transpose();
    diff = diff.cwiseProduct(d.cwiseSqrt().cwiseInverse());
    const double probability_form = diff.norm() * std::sqrt(volume);

    SpectralEmbedding full = embed(g, EmbeddingMap::diffusion, g.n - 1, t);
    const double eigen_form =
        (full.coords.row(m) - full.coords.row(n)).norm() * std::sqrt(volume);
    if (std::abs(probability_form - eigen_form) > 1e-8)
        fail(ErrorCode::invariant_violation,
             "probability-form and eigen-form diffusion distances disagree");
    return probability_form;
}

/// Commute-time distance: Euclidean distance in the full commute-time
/// embedding scaled by sqrt(V). Cross-checked against the pseudo-inverse
/// identity CT^2 = V (L+_mm + L+_nn - 2 L+_mn).
inline double commute_time_distance(const Graph& g, int m, int n) {
    specgraph::detail::require_undirected(g, "commute_time_distance");
    specgraph::detail::check_vertex(m, g.n);
    specgraph::detail::check_vertex(n, g.n);
    specgraph::detail::require_connected(g, "commute_time_distance");
    const double volume = graph_volume(g);
    SpectralEmbedding full = embed(g, EmbeddingMap::commute_time, g.n - 1);
    const double ct_sq = volume * (full.coords.row(m) - full.coords.row(n)).squaredNorm();
    Eigen::MatrixXd pinv = laplacian_pseudoinverse(laplacian(g, LaplacianVariant::standard()));
    const double resistance_sq = volume * (pinv(m, m) + pinv(n, n) - 2.0 * pinv(m, n));
    if (std::abs(ct_sq - resistance_sq) > 1e-8 * std::max(1.0, std::abs(resistance_sq)))
        fail(ErrorCode::invariant_violation,
             "embedding and pseudo-inverse commute times disagree");
    return std::sqrt(ct_sq);
}

}  // namespace specgraph::embedding
