#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <map>

using lrmc::Matrix;
using lrmc::ObservationMask;
using testutil::gaussian_matrix;

TEST_CASE("random mask has an exact missing count") {
    REQUIRE(lrmc::make_random_mask(10, 10, 0.0, 7).missing_count() == 0);
    const ObservationMask half = lrmc::make_random_mask(100, 100, 0.5, 7);
    REQUIRE(half.missing_count() == 5000);
    REQUIRE(half.observed_count() + half.missing_count() == 10000);
    const ObservationMask odd = lrmc::make_random_mask(9, 7, 0.33, 7);
    REQUIRE(odd.missing_count() ==
            static_cast<std::size_t>(std::llround(0.33 * 9 * 7)));
}

TEST_CASE("random mask is a pure function of seed and dims") {
    const ObservationMask a = lrmc::make_random_mask(40, 30, 0.6, 12345);
    const ObservationMask b = lrmc::make_random_mask(40, 30, 0.6, 12345);
    const ObservationMask c = lrmc::make_random_mask(40, 30, 0.6, 54321);
    REQUIRE(a.bits == b.bits);
    REQUIRE(a.bits != c.bits);
}

TEST_CASE("random mask rejects out-of-range ratios") {
    REQUIRE_THROWS_AS(lrmc::make_random_mask(10, 10, 1.0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(lrmc::make_random_mask(10, 10, -0.1, 0), std::invalid_argument);
}

TEST_CASE("block mask basic shapes") {
    REQUIRE(lrmc::make_block_mask(20, 20, {}).missing_count() == 0);
    REQUIRE(lrmc::make_block_mask(20, 20, {{0, 0, 20, 20}}).observed_count() == 0);
    REQUIRE_THROWS_AS(lrmc::make_block_mask(20, 20, {{15, 0, 10, 5}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(lrmc::make_block_mask(20, 20, {{-1, 0, 5, 5}}),
                      std::invalid_argument);
}

TEST_CASE("overlapping blocks are counted once") {
    const std::vector<lrmc::BlockRect> blocks{{0, 0, 10, 10}, {5, 5, 10, 10}};
    const ObservationMask mask = lrmc::make_block_mask(30, 30, blocks);
    REQUIRE(mask.missing_count() == 175);  // 100 + 100 - 25 overlap
    REQUIRE(mask.missing_count() == testutil::missing_by_set_union(30, 30, blocks));
}

TEST_CASE("mask spec dispatch and validation") {
    lrmc::MaskSpec spec;
    spec.kind = lrmc::MaskSpec::Kind::random;
    spec.missing_ratio = 0.25;
    spec.seed = 3;
    REQUIRE(lrmc::make_mask(8, 8, spec).missing_count() == 16);
    spec.missing_ratio = 1.5;
    REQUIRE_THROWS_AS(lrmc::make_mask(8, 8, spec), std::invalid_argument);
}

TEST_CASE("psnr basic values") {
    const Matrix zero = Matrix::Zero(16, 16);
    REQUIRE(lrmc::psnr(zero, zero, 255.0) == 99.0);
    REQUIRE(lrmc::psnr(zero, Matrix::Constant(16, 16, 255.0), 255.0) ==
            Catch::Approx(0.0).margin(1e-12));
    const double at_mse_one = lrmc::psnr(zero, Matrix::Constant(16, 16, 1.0), 255.0);
    REQUIRE(at_mse_one == Catch::Approx(10.0 * std::log10(65025.0)).margin(1e-12));
    REQUIRE(at_mse_one == Catch::Approx(48.13).margin(0.005));
}

TEST_CASE("psnr is symmetric and rejects bad input") {
    std::mt19937_64 rng(301);
    const Matrix a = gaussian_matrix(rng, 12, 12, 40.0);
    const Matrix b = gaussian_matrix(rng, 12, 12, 40.0);
    REQUIRE(lrmc::psnr(a, b, 255.0) == lrmc::psnr(b, a, 255.0));
    REQUIRE_THROWS_AS(lrmc::psnr(a, Matrix::Zero(3, 3), 255.0), std::invalid_argument);
    REQUIRE_THROWS_AS(lrmc::psnr(a, b, 0.0), std::invalid_argument);
}

TEST_CASE("psnr strictly decreases along a noise ladder") {
    std::mt19937_64 rng(302);
    const Matrix ref = gaussian_matrix(rng, 24, 24, 50.0);
    const Matrix noise = gaussian_matrix(rng, 24, 24, 1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double amp : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double val = lrmc::psnr(ref, ref + amp * noise, 255.0);
        REQUIRE(val < prev);
        prev = val;
    }
}

TEST_CASE("ssim of identical images is exactly one") {
    std::mt19937_64 rng(303);
    const Matrix img = gaussian_matrix(rng, 32, 32, 30.0);
    REQUIRE(lrmc::ssim(img, img, 255.0) == 1.0);
}

TEST_CASE("a large constant shift keeps ssim strictly below one") {
    std::mt19937_64 rng(304);
    const Matrix img = gaussian_matrix(rng, 32, 32, 20.0);
    REQUIRE(lrmc::ssim(img, (img.array() + 60.0).matrix(), 255.0) < 1.0);
}

TEST_CASE("ssim is symmetric") {
    std::mt19937_64 rng(305);
    const Matrix a = gaussian_matrix(rng, 20, 20, 25.0);
    const Matrix b = gaussian_matrix(rng, 20, 20, 25.0);
    REQUIRE(std::abs(lrmc::ssim(a, b, 255.0) - lrmc::ssim(b, a, 255.0)) < 1e-12);
}

TEST_CASE("ssim rejects images smaller than its window") {
    const Matrix tiny = Matrix::Zero(10, 12);
    REQUIRE_THROWS_AS(lrmc::ssim(tiny, tiny, 255.0), std::invalid_argument);
}

TEST_CASE("ssim matches the stored cross-implementation reference values") {
    std::ifstream ref_file(testutil::asset("ssim/reference.csv"));
    REQUIRE(ref_file.good());
    std::string line;
    std::getline(ref_file, line);  // header
    int checked = 0;
    while (std::getline(ref_file, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const std::string pair = line.substr(0, comma);
        const double expected = std::stod(line.substr(comma + 1));
        const lrmc::Image a = lrmc::load_image(testutil::asset("ssim/" + pair + "_ref.pgm"));
        const lrmc::Image b = lrmc::load_image(testutil::asset("ssim/" + pair + "_test.pgm"));
        const double got = lrmc::ssim(a.channels[0], b.channels[0], 255.0);
        INFO(pair << ": got " << got << ", reference " << expected);
        REQUIRE(std::abs(got - expected) < 1e-3);
        ++checked;
    }
    REQUIRE(checked == 5);
}

TEST_CASE("score bundles consistent mse and psnr") {
    std::mt19937_64 rng(306);
    const Matrix a = (gaussian_matrix(rng, 16, 16, 30.0).array() + 128.0).matrix();
    const Matrix b = (gaussian_matrix(rng, 16, 16, 30.0).array() + 128.0).matrix();
    const lrmc::QualityScore q = lrmc::score(a, b, 255.0);
    REQUIRE(q.mse > 0.0);
    REQUIRE(q.psnr_db == Catch::Approx(10.0 * std::log10(255.0 * 255.0 / q.mse))
                             .margin(1e-12));
    REQUIRE(q.ssim == lrmc::ssim(a, b, 255.0));
}
