#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using lrmc::Matrix;
using lrmc::Vector;
using testutil::gaussian_matrix;
using testutil::gram_singular_values;

TEST_CASE("svd matches the Gram-matrix eigenvalue reference") {
    std::mt19937_64 rng(101);
    for (auto [rows, cols] : {std::pair{6, 6}, {9, 4}, {4, 9}, {30, 30}}) {
        const Matrix m = gaussian_matrix(rng, rows, cols, 10.0);
        const Vector got = lrmc::svd(m).singular_values;
        const Vector ref = gram_singular_values(m);
        REQUIRE(got.size() == ref.size());
        for (Eigen::Index i = 0; i < got.size(); ++i)
            REQUIRE(std::abs(got[i] - ref[i]) < 1e-8);
    }
}

TEST_CASE("singular values are non-negative and sorted non-increasing") {
    std::mt19937_64 rng(102);
    const Vector s = lrmc::svd(gaussian_matrix(rng, 12, 7)).singular_values;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        REQUIRE(s[i] >= 0.0);
        if (i + 1 < s.size()) REQUIRE(s[i] >= s[i + 1]);
    }
}

TEST_CASE("svd rejects non-finite input") {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 1) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(lrmc::svd(m), std::invalid_argument);
}

TEST_CASE("reconstruct round-trips the factorization") {
    std::mt19937_64 rng(103);
    const Matrix m = gaussian_matrix(rng, 6, 6, 5.0);
    const Matrix back = lrmc::reconstruct(lrmc::svd(m));
    REQUIRE(lrmc::frobenius_distance(m, back) / m.norm() < 1e-8);
}

TEST_CASE("reconstruct with zeroed singular values gives the zero matrix") {
    std::mt19937_64 rng(104);
    lrmc::SpectralFactors f = lrmc::svd(gaussian_matrix(rng, 5, 8));
    f.singular_values.setZero();
    REQUIRE(lrmc::reconstruct(f).norm() == 0.0);
}

TEST_CASE("reconstruct of a rank-1 system is the scaled outer product") {
    lrmc::SpectralFactors f;
    f.u = Matrix::Zero(4, 1);
    f.v = Matrix::Zero(3, 1);
    f.u(2, 0) = 1.0;
    f.v(1, 0) = 1.0;
    f.singular_values = Vector::Constant(1, 5.0);
    const Matrix m = lrmc::reconstruct(f);
    REQUIRE(m(2, 1) == 5.0);
    REQUIRE(m.norm() == 5.0);
}

TEST_CASE("reconstruct rejects inconsistent factors") {
    std::mt19937_64 rng(105);
    lrmc::SpectralFactors f = lrmc::svd(gaussian_matrix(rng, 5, 5));
    f.singular_values = Vector::Zero(3);
    REQUIRE_THROWS_AS(lrmc::reconstruct(f), std::invalid_argument);
}

TEST_CASE("frobenius_distance basic values") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    const Matrix b = Matrix::Zero(2, 2);
    REQUIRE(lrmc::frobenius_distance(a, a) == 0.0);
    REQUIRE(lrmc::frobenius_distance(a, b) == 5.0);
    REQUIRE_THROWS_AS(lrmc::frobenius_distance(a, Matrix::Zero(2, 3)),
                      std::invalid_argument);
}

TEST_CASE("frobenius_distance matches the elementwise summation reference") {
    std::mt19937_64 rng(106);
    const Matrix a = gaussian_matrix(rng, 7, 11, 3.0);
    const Matrix b = gaussian_matrix(rng, 7, 11, 3.0);
    REQUIRE(std::abs(lrmc::frobenius_distance(a, b) -
                     testutil::frobenius_by_summation(a, b)) < 1e-12);
}

TEST_CASE("singular values are invariant under orthogonal transforms") {
    std::mt19937_64 rng(107);
    const Matrix m = gaussian_matrix(rng, 8, 8, 4.0);
    const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian_matrix(rng, 8, 8))
                         .householderQ();
    const Vector s = lrmc::svd(m).singular_values;
    const Vector s_left = lrmc::svd(q * m).singular_values;
    const Vector s_right = lrmc::svd(m * q).singular_values;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        REQUIRE(std::abs(s[i] - s_left[i]) < 1e-8);
        REQUIRE(std::abs(s[i] - s_right[i]) < 1e-8);
    }
}

TEST_CASE("transposing the input leaves the singular values unchanged") {
    std::mt19937_64 rng(108);
    const Matrix m = gaussian_matrix(rng, 9, 5, 2.0);
    const Vector s = lrmc::svd(m).singular_values;
    const Vector st = lrmc::svd(m.transpose()).singular_values;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        REQUIRE(std::abs(s[i] - st[i]) < 1e-8);
}
