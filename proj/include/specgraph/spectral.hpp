#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/properties.hpp"

namespace specgraph::spectral {

enum class MatrixVariant {
    adjacency,
    laplacian,
    normalized_laplacian,
    generalized_laplacian,
    normalized_weight,
};

inline const char* to_string(MatrixVariant v) {
    switch (v) {
        case MatrixVariant::adjacency: return "adjacency";
        case MatrixVariant::laplacian: return "laplacian";
        case MatrixVariant::normalized_laplacian: return "normalized_laplacian";
        case MatrixVariant::generalized_laplacian: return "generalized_laplacian";
        case MatrixVariant::normalized_weight: return "normalized_weight";
    }
    return "unknown";
}

inline MatrixVariant matrix_variant_from_string(const std::string& s) {
    if (s == "adjacency") return MatrixVariant::adjacency;
    if (s == "laplacian") return MatrixVariant::laplacian;
    if (s == "normalized_laplacian") return MatrixVariant::normalized_laplacian;
    if (s == "generalized_laplacian") return MatrixVariant::generalized_laplacian;
    if (s == "normalized_weight") return MatrixVariant::normalized_weight;
    fail(ErrorCode::invalid_argument, "unknown matrix variant '" + s + "'");
}

/// Ascending eigenvalues with eigenvectors as columns. Vectors are unit-norm
/// (u^T D u = 1 for the generalized variant) and follow the sign convention:
/// the entry of largest magnitude in each column is positive, ties broken by
/// the lowest index.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    MatrixVariant variant = MatrixVariant::laplacian;
};

/// Tolerance below which an eigenvalue counts as zero (component counting,
/// pseudo-inversion, gap clamping).
inline double zero_eigenvalue_tolerance(const Eigen::VectorXd& eigenvalues) {
    const double lambda_max = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return 1e-9 * std::max(1.0, lambda_max);
}

/// Flips eigenvector columns so the largest-magnitude entry (lowest index on
/// ties) is positive.
inline void apply_sign_convention(Eigen::MatrixXd& vectors) {
    for (int j = 0; j < vectors.cols(); ++j) {
        int pivot = 0;
        double best = -1.0;
        for (int i = 0; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, j));
            if (mag > best) {  // strict: ties keep the earlier index
                best = mag;
                pivot = i;
            }
        }
        if (vectors(pivot, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
}

/// Dense symmetric eigendecomposition (ascending order, orthonormal columns).
inline EigenDecomposition eig_symmetric(const Eigen::MatrixXd& m, MatrixVariant variant) {
    if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "matrix is not square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        fail(ErrorCode::not_symmetric,
             "matrix deviates from symmetry by " + std::to_string(asym));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    EigenDecomposition result;
    result.eigenvalues = solver.eigenvalues();
    result.eigenvectors = solver.eigenvectors();
    result.variant = variant;
    apply_sign_convention(result.eigenvectors);
    return result;
}

/// D^(-1/2) W D^(-1/2): the normalized weight matrix, I - L_N.
inline Eigen::MatrixXd normalized_weight_matrix(const Graph& g) {
    Eigen::VectorXd s = specgraph::detail::inv_sqrt_degrees(g);
    return s.asDiagonal() * g.weights * s.asDiagonal();
}

/// Generalized eigenproblem L u = lambda D u, solved through the normalized
/// Laplacian: if L_N v = lambda v then u = D^(-1/2) v. Eigenvalues equal the
/// normalized-Laplacian spectrum; eigenvectors satisfy u^T D u = 1.
inline EigenDecomposition eig_generalized(const Graph& g) {
    specgraph::detail::require_undirected(g, "eig_generalized");
    EigenDecomposition nd =
        eig_symmetric(laplacian(g, LaplacianVariant::normalized()), MatrixVariant::normalized_laplacian);
    Eigen::VectorXd s = specgraph::detail::inv_sqrt_degrees(g);
    Eigen::VectorXd d = degree_vector(g);
    Eigen::MatrixXd u = s.asDiagonal() * nd.eigenvectors;
    for (int j = 0; j < u.cols(); ++j) {
        const double scale = u.col(j).transpose() * d.asDiagonal() * u.col(j);
        if (scale > 0.0) u.col(j) /= std::sqrt(scale);
    }
    apply_sign_convention(u);
    return EigenDecomposition{std::move(nd.eigenvalues), std::move(u),
                              MatrixVariant::generalized_laplacian};
}

/// One eigenpair estimated by power iteration, with the achieved residual
/// ||W u - lambda u|| and the number of multiplications spent. Non-convergence
/// within the budget is reported through the residual, never as an error.
struct PowerEigenpair {
    double eigenvalue = 0.0;
    Eigen::VectorXd eigenvector;
    double residual = 0.0;
    int iterations = 0;
};

namespace detail {

/// Deterministic +/-1 start pattern: one engine draw per entry, low bit
/// selects the sign. The engine is shared across deflation stages so each
/// stage sees a fresh pattern.
inline Eigen::VectorXd pm_start_vector(std::mt19937_64& engine, int n) {
    Eigen::VectorXd u(n);
    // sign = bit 48 of the raw draw; an arbitrary fixed choice, frozen so
    // results are reproducible across standard libraries (the engine's raw
    // output sequence is specified, distribution adapters are not).
    for (int i = 0; i < n; ++i) u(i) = ((engine() >> 48) & 1ull) ? 1.0 : -1.0;
    u /= u.norm();
    return u;
}

}  // namespace detail

/// Largest-magnitude eigenpairs of a symmetric matrix by power iteration with
/// deflation: u <- W u / ||W u||, lambda = u^T W u, then W <- W - lambda u u^T.
/// The start vector is redrawn if the iterate collapses (start orthogonal to
/// the remaining range). Iteration stops early once ||u_next - u|| < 1e-12.
inline std::vector<PowerEigenpair> power_method_eig(const Eigen::MatrixXd& w_n, int M, int iters,
                                                    unsigned long long seed = 42) {
    if (w_n.rows() != w_n.cols()) fail(ErrorCode::invalid_argument, "matrix is not square");
    const int n = static_cast<int>(w_n.rows());
    const double asym = n ? (w_n - w_n.transpose()).cwiseAbs().maxCoeff() : 0.0;
    if (asym > 1e-10)
        fail(ErrorCode::not_symmetric, "matrix deviates from symmetry by " + std::to_string(asym));
    if (M < 0 || M > n) fail(ErrorCode::invalid_argument, "eigenpair count outside [0, n]");
    if (iters < 1) fail(ErrorCode::invalid_argument, "iteration budget must be >= 1");

    std::mt19937_64 engine(seed);
    Eigen::MatrixXd a = w_n;
    std::vector<PowerEigenpair> pairs;
    pairs.reserve(M);
    for (int stage = 0; stage < M; ++stage) {
        const double scale = a.norm();  // Frobenius
        Eigen::VectorXd u = detail::pm_start_vector(engine, n);
        int used = 0;
        for (int redraw = 0; redraw < 64; ++redraw) {
            bool collapsed = false;
            used = 0;
            for (int it = 0; it < iters; ++it) {
                Eigen::VectorXd next = a * u;
                const double norm = next.norm();
                if (norm <= 1e-13 * std::max(1.0, scale)) {
                    collapsed = true;
                    break;
                }
                next /= norm;
                const double step = (next - u).norm();
                u = next;
                ++used;
                if (step < 1e-12) break;
            }
            if (!collapsed) break;
            if (scale <= 1e-12) break;  // matrix deflated to zero: any unit u, eigenvalue 0
            u = detail::pm_start_vector(engine, n);
        }
        PowerEigenpair pair;
        pair.eigenvalue = u.dot(a * u);
        pair.eigenvector = u;
        pair.residual = (a * u - pair.eigenvalue * u).norm();
        pair.iterations = used;
        pairs.push_back(std::move(pair));
        a -= pairs.back().eigenvalue * u * u.transpose();
    }
    return pairs;
}

/// Quadratic form x^T L x of the unit-normalized input, cross-checked against
/// the edge-sum expansion (1/2) sum W_mn (x_m - x_n)^2. Eigenvectors score
/// their eigenvalue; smooth (slow-varying) signals score low.
inline double smoothness_index(const Eigen::MatrixXd& l, const Eigen::VectorXd& x) {
    if (l.rows() != l.cols() || x.size() != l.rows())
        fail(ErrorCode::invalid_argument, "dimension mismatch");
    const double norm = x.norm();
    if (norm == 0.0) fail(ErrorCode::invalid_argument, "zero vector has no smoothness index");
    Eigen::VectorXd xn = x / norm;
    const double quad = xn.dot(l * xn);
    double edge_sum = 0.0;
    for (int m = 0; m < l.rows(); ++m)
        for (int nn = 0; nn < l.cols(); ++nn)
            if (m != nn) edge_sum += 0.5 * (-l(m, nn)) * (xn(m) - xn(nn)) * (xn(m) - xn(nn));
    if (std::abs(quad - edge_sum) > 1e-10)
        fail(ErrorCode::invariant_violation,
             "quadratic form and edge-sum expansion disagree; input is not a Laplacian");
    return quad;
}

}  // namespace specgraph::spectral
