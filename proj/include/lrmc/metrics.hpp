#pragma once

// Reconstruction quality metrics: MSE, PSNR (capped), and single-scale SSIM
// with an 11x11 Gaussian window (sigma = 1.5) as in the canonical formulation.

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrmc {

inline constexpr double kPsnrCapDb = 99.0;
inline constexpr int kSsimWindow = 11;

struct QualityScore {
    double mse = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

inline double mse(const Matrix& reference, const Matrix& test) {
    require_same_shape(reference, test, "mse");
    return (reference - test).squaredNorm() /
           static_cast<double>(reference.size());
}

// 10*log10(peak^2 / MSE), capped at 99.0 dB; identical inputs hit the cap
// instead of producing an infinity.
inline double psnr(const Matrix& reference, const Matrix& test, double peak) {
    if (!(peak > 0.0))
        throw std::invalid_argument("psnr: peak must be positive");
    const double err = mse(reference, test);
    if (err == 0.0) return kPsnrCapDb;
    return std::min(10.0 * std::log10(peak * peak / err), kPsnrCapDb);
}

namespace detail {

// 11-tap Gaussian, sigma 1.5, normalized to unit sum.
inline Vector ssim_kernel() {
    Vector k(kSsimWindow);
    const double sigma = 1.5;
    const int radius = kSsimWindow / 2;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double x = i - radius;
        k[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
    }
    return k / k.sum();
}

// Separable valid-region convolution: output dims shrink by window-1 in
// each direction, so no boundary padding policy is needed.
inline Matrix valid_filter(const Matrix& m, const Vector& k) {
    const Eigen::Index r = static_cast<Eigen::Index>(k.size());
    Matrix rows_done(m.rows(), m.cols() - r + 1);
    for (Eigen::Index j = 0; j < rows_done.cols(); ++j)
        rows_done.col(j) = m.middleCols(j, r) * k;
    Matrix out(m.rows() - r + 1, rows_done.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        out.row(i) = k.transpose() * rows_done.middleRows(i, r);
    return out;
}

}  // namespace detail

// Mean local SSIM over sliding 11x11 windows with Gaussian weighting and the
// standard stabilizers C1 = (0.01*peak)^2, C2 = (0.03*peak)^2. Local moments
// use weighted population statistics (no sample-covariance correction).
inline double ssim(const Matrix& reference, const Matrix& test, double peak) {
    require_same_shape(reference, test, "ssim");
    if (!(peak > 0.0))
        throw std::invalid_argument("ssim: peak must be positive");
    if (reference.rows() < kSsimWindow || reference.cols() < kSsimWindow)
        throw std::invalid_argument("ssim: images must be at least 11x11");

    const Vector k = detail::ssim_kernel();
    const Matrix ux = detail::valid_filter(reference, k);
    const Matrix uy = detail::valid_filter(test, k);
    const Matrix uxx = detail::valid_filter(reference.cwiseProduct(reference), k);
    const Matrix uyy = detail::valid_filter(test.cwiseProduct(test), k);
    const Matrix uxy = detail::valid_filter(reference.cwiseProduct(test), k);

    const Matrix vx = uxx - ux.cwiseProduct(ux);
    const Matrix vy = uyy - uy.cwiseProduct(uy);
    const Matrix vxy = uxy - ux.cwiseProduct(uy);

    const double c1 = (0.01 * peak) * (0.01 * peak);
    const double c2 = (0.03 * peak) * (0.03 * peak);

    const Matrix num = (2.0 * ux.cwiseProduct(uy).array() + c1).matrix().cwiseProduct(
        (2.0 * vxy.array() + c2).matrix());
    const Matrix den =
        (ux.cwiseProduct(ux).array() + uy.cwiseProduct(uy).array() + c1)
            .matrix()
            .cwiseProduct((vx.array() + vy.array() + c2).matrix());
    return num.cwiseQuotient(den).mean();
}

inline QualityScore score(const Matrix& reference, const Matrix& test, double peak) {
    return {mse(reference, test), psnr(reference, test, peak),
            ssim(reference, test, peak)};
}

}  // namespace lrmc
