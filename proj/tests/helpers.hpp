#pragma once

// Shared fixtures and independent reference computations for the test suite.
// Every reference here deliberately avoids the code path it checks: singular
// values come from the Gram-matrix eigendecomposition, scalar minimizers from
// brute-force grid scans, optimality from objective evaluation under
// perturbation, and set sizes from a literal std::set union.

#include <lrmc/lrmc.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

using lrmc::Matrix;
using lrmc::Vector;

inline std::string asset(const std::string& rel) {
    return std::string(LRMC_ASSET_DIR) + "/" + rel;
}

inline Matrix gaussian_matrix(std::mt19937_64& rng, int rows, int cols,
                              double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = scale * normal(rng);
    return m;
}

// Singular values through the Gram matrix: sqrt of the eigenvalues of the
// smaller of A^T A / A A^T, sorted non-increasing.
inline Vector gram_singular_values(const Matrix& a) {
    const Matrix gram = a.cols() <= a.rows() ? Matrix(a.transpose() * a)
                                             : Matrix(a * a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const Vector vals = eig.eigenvalues();  // ascending
    Vector out(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        out[i] = std::sqrt(std::max(0.0, vals[vals.size() - 1 - i]));
    return out;
}

// The scalar shrinkage objective 1/2 (s - sigma_y)^2 + eta * w * log(s^p + eps).
inline double scalar_objective(double s, double sigma_y, double eta, double w,
                               double p, double eps) {
    return 0.5 * (s - sigma_y) * (s - sigma_y) +
           eta * w * std::log(lrmc::pow_p(s, p) + eps);
}

// Brute-force minimizer of the scalar objective over [0, hi] with a fixed
// step; completely independent of the DC iteration.
inline double grid_minimize(double sigma_y, double eta, double w, double p,
                            double eps, double hi, double step) {
    double best_s = 0.0;
    double best_f = scalar_objective(0.0, sigma_y, eta, w, p, eps);
    const long long n = static_cast<long long>(hi / step);
    for (long long i = 1; i <= n; ++i) {
        const double s = static_cast<double>(i) * step;
        const double f = scalar_objective(s, sigma_y, eta, w, p, eps);
        if (f < best_f) {
            best_f = f;
            best_s = s;
        }
    }
    return best_s;
}

// Quadratic objective of the X-subproblem:
//   1/2 ||P_Omega(X - Y)||_F^2 + mu/2 ||X - Z + Lagrange/mu||_F^2.
inline double x_objective(const Matrix& x, const Matrix& y, const Matrix& z,
                          const Matrix& lagrange, double mu,
                          const lrmc::ObservationMask& mask) {
    const Matrix fit = lrmc::project_omega(x - y, mask, true);
    const Matrix aug = x - z + lagrange / mu;
    return 0.5 * fit.squaredNorm() + 0.5 * mu * aug.squaredNorm();
}

// Gradient of the same objective; zero at the exact minimizer.
inline Matrix x_gradient(const Matrix& x, const Matrix& y, const Matrix& z,
                         const Matrix& lagrange, double mu,
                         const lrmc::ObservationMask& mask) {
    return lrmc::project_omega(x - y, mask, true) + mu * (x - z) + lagrange;
}

inline double frobenius_by_summation(const Matrix& a, const Matrix& b) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double d = a(i, j) - b(i, j);
            acc += d * d;
        }
    return std::sqrt(acc);
}

// Missing-cell count by literal set union, for checking the bitmap masks.
inline std::size_t missing_by_set_union(int rows, int cols,
                                        const std::vector<lrmc::BlockRect>& blocks) {
    std::set<std::pair<int, int>> cells;
    (void)rows;
    (void)cols;
    for (const auto& b : blocks)
        for (int i = b.top; i < b.top + b.height; ++i)
            for (int j = b.left; j < b.left + b.width; ++j) cells.insert({i, j});
    return cells.size();
}

// Rank-3 ground truth: product of seeded Gaussian factors, min-max scaled
// onto [0, 255].
inline Matrix synthetic_lowrank(std::uint64_t seed, int rows = 60, int cols = 60,
                                int rank = 3) {
    std::mt19937_64 rng(seed);
    const Matrix f1 = gaussian_matrix(rng, rows, rank);
    const Matrix f2 = gaussian_matrix(rng, rank, cols);
    Matrix m = f1 * f2;
    const double lo = m.minCoeff();
    const double hi = m.maxCoeff();
    return ((m.array() - lo) / (hi - lo) * 255.0).matrix();
}

// Relative Frobenius error restricted to the unobserved cells.
inline double unobserved_relative_error(const Matrix& truth, const Matrix& recovered,
                                        const lrmc::ObservationMask& mask) {
    const Matrix diff = lrmc::project_omega(recovered - truth, mask, false);
    const Matrix ref = lrmc::project_omega(truth, mask, false);
    return diff.norm() / ref.norm();
}

}  // namespace testutil
