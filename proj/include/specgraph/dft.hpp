#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "specgraph/errors.hpp"

namespace specgraph::spectral {

/// Harmonic eigenbasis of the directed circular graph: column k holds
/// u_k(m) = exp(j*2*pi*m*k/n)/sqrt(n) with eigenvalue exp(-j*2*pi*k/n).
/// Verified by substitution against the adjacency pattern A(k, k-1 mod n) = 1;
/// no complex eigensolver is involved.
struct DftBasis {
    Eigen::MatrixXcd vectors;
    Eigen::VectorXcd eigenvalues;
};

inline DftBasis dft_basis(int n) {
    if (n < 2) fail(ErrorCode::invalid_size, "harmonic basis needs n >= 2");
    DftBasis basis;
    basis.vectors.resize(n, n);
    basis.eigenvalues.resize(n);
    const double step = 2.0 * std::numbers::pi / n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m)
            basis.vectors(m, k) = std::polar(scale, step * m * k);
        basis.eigenvalues(k) = std::polar(1.0, -step * k);
    }
    return basis;
}

}  // namespace specgraph::spectral
