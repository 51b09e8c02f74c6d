#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "specgraph/errors.hpp"

namespace specgraph::spectral {

/// Monic polynomial det(lambda*I - M) as coefficients [1, c1, ..., cN] in
/// descending powers. (For odd N this is the global-sign-normalized form of
/// det(M - lambda*I).)
struct CharPoly {
    std::vector<double> coefficients;
};

/// Faddeev-LeVerrier recursion: M_1 = M, c_k = -tr(M_k)/k,
/// M_k = M (M_{k-1} + c_{k-1} I). Exact in float for small integer matrices;
/// guarded at n <= 20 because the coefficients explode combinatorially.
inline CharPoly characteristic_polynomial(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "matrix is not square");
    const int n = static_cast<int>(m.rows());
    if (n > 20)
        fail(ErrorCode::too_large, "characteristic polynomial limited to n <= 20, got n = " +
                                       std::to_string(n));
    CharPoly poly;
    poly.coefficients.assign(static_cast<size_t>(n) + 1, 0.0);
    poly.coefficients[0] = 1.0;
    Eigen::MatrixXd mk = m;
    for (int k = 1; k <= n; ++k) {
        const double ck = -mk.trace() / k;
        poly.coefficients[static_cast<size_t>(k)] = ck;
        if (k < n) mk = m * (mk + ck * Eigen::MatrixXd::Identity(n, n));
    }
    return poly;
}

/// Product of (lambda - mu) over the distinct eigenvalues, clustering values
/// that coincide up to numerical noise. Degree = number of distinct values.
inline CharPoly minimal_polynomial(const CharPoly& cp, const std::vector<double>& eigenvalues) {
    if (cp.coefficients.size() != eigenvalues.size() + 1)
        fail(ErrorCode::invalid_argument,
             "eigenvalue count does not match the characteristic polynomial degree");
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    double max_abs = 1.0;
    for (double v : sorted) max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-6 * max_abs;  // grouping tolerance for repeated eigenvalues
    std::vector<double> distinct;
    for (double v : sorted)
        if (distinct.empty() || v - distinct.back() > tol) distinct.push_back(v);
    CharPoly poly;
    poly.coefficients = {1.0};
    for (double root : distinct) {
        poly.coefficients.push_back(0.0);
        for (size_t i = poly.coefficients.size() - 1; i >= 1; --i)
            poly.coefficients[i] -= root * poly.coefficients[i - 1];
    }
    return poly;
}

}  // namespace specgraph::spectral
