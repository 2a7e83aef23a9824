#pragma once

// Dense-matrix spectral services: thin SVD, reconstruction from factors,
// and Frobenius distance.  Everything downstream (surrogate values, the
// proximal solver) works through these.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <stdexcept>
#include <string>

namespace lrmc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite())
        throw std::invalid_argument(std::string(what) + ": matrix has NaN/Inf entries");
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch ("
            + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs "
            + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}

// Thin SVD factors: U (M x r), singular values sorted non-increasing
// (length r = min{M,N}), V (N x r).  Column signs are not pinned; use
// reconstructions or singular values in any exactness argument.
struct SpectralFactors {
    Matrix u;
    Vector singular_values;
    Matrix v;
};

inline SpectralFactors svd(const Matrix& m) {
    require_finite(m, "svd");
    Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw std::runtime_error("svd: decomposition did not converge");
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

inline Matrix reconstruct(const SpectralFactors& f) {
    if (f.u.cols() != f.singular_values.size() || f.v.cols() != f.singular_values.size())
        throw std::invalid_argument("reconstruct: factor dimensions disagree");
    return f.u * f.singular_values.asDiagonal() * f.v.transpose();
}

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "frobenius_distance");
    return (a - b).norm();
}

}  // namespace lrmc
