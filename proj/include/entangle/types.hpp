#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace entangle {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical slack used throughout. All entries must be strictly positive.
struct ToleranceConfig {
    double psd = 1e-9;   // positivity slack: lambda_min >= -psd counts as PSD
    double rank = 1e-8;  // relative eigen/singular value cutoff for rank decisions
    double zero = 1e-9;  // scalar comparison slack

    void validate() const {
        if (psd <= 0.0 || rank <= 0.0 || zero <= 0.0) {
            throw std::invalid_argument("ToleranceConfig: all tolerances must be > 0");
        }
    }
};

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Hermiticity within max|A - A^dag| <= 1e-12 * (1 + max|A|).
inline bool is_hermitian(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    const double dev = max_abs(m - m.adjoint());
    return dev <= 1e-12 * (1.0 + max_abs(m));
}

inline void require_hermitian(const Matrix& m, const std::string& who) {
    if (!is_hermitian(m)) throw std::invalid_argument(who + ": Hermitian input required");
}

inline void require_square(const Matrix& m, const std::string& who) {
    if (m.rows() != m.cols()) throw std::invalid_argument(who + ": square matrix required");
}

/// Cap on the total dimension (M*N)^K of K-copy operators.
/// ENTANGLE_MAX_DIM overrides the default of 729 = (3*3)^3.
inline long dimension_cap() {
    if (const char* env = std::getenv("ENTANGLE_MAX_DIM")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return v;
    }
    return 729;
}

}  // namespace entangle
