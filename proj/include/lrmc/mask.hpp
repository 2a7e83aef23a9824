#pragma once

// Observation masks for matrix completion: the index set of known entries,
// random masks with an exact missing count, and rectangular occlusion masks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace lrmc {

// Row-major bitmap of the observed set. A bitmap cannot hold duplicate
// indices, which keeps the set representation canonical.
struct ObservationMask {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;  // 1 = observed, 0 = missing

    ObservationMask() = default;
    ObservationMask(int r, int c, bool all_observed = true)
        : rows(r), cols(c), bits(static_cast<std::size_t>(r) * c, all_observed ? 1 : 0) {
        if (r < 0 || c < 0)
            throw std::invalid_argument("ObservationMask: negative dimensions");
    }

    bool observed(int i, int j) const {
        return bits[static_cast<std::size_t>(i) * cols + j] != 0;
    }
    void set(int i, int j, bool value) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw std::out_of_range("ObservationMask: index out of bounds");
        bits[static_cast<std::size_t>(i) * cols + j] = value ? 1 : 0;
    }

    std::size_t observed_count() const {
        return static_cast<std::size_t>(
            std::count(bits.begin(), bits.end(), std::uint8_t{1}));
    }
    std::size_t missing_count() const { return bits.size() - observed_count(); }
};

struct BlockRect {
    int top = 0;
    int left = 0;
    int height = 0;
    int width = 0;
};

struct MaskSpec {
    enum class Kind { random, block };
    Kind kind = Kind::random;
    double missing_ratio = 0.5;     // random kind, in [0, 1)
    std::vector<BlockRect> blocks;  // block kind
    std::uint64_t seed = 0;

    void validate() const {
        if (kind == Kind::random && !(missing_ratio >= 0.0 && missing_ratio < 1.0))
            throw std::invalid_argument("MaskSpec: missing_ratio must be in [0, 1)");
    }
};

// Uniform integer in [0, n) by rejection from the raw 64-bit stream. Using
// the engine output directly (instead of std::uniform_int_distribution,
// whose algorithm is implementation-defined) makes masks bit-identical
// across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t discard = (0ull - n) % n;  // 2^64 mod n
    std::uint64_t r = rng();
    while (r < discard) r = rng();
    return r % n;
}

// Exactly round(mr * rows * cols) entries go missing, chosen uniformly
// without replacement via a partial Fisher-Yates shuffle of the cell indices.
inline ObservationMask make_random_mask(int rows, int cols, double mr, std::uint64_t seed) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("make_random_mask: dimensions must be positive");
    if (!(mr >= 0.0 && mr < 1.0))
        throw std::invalid_argument("make_random_mask: missing ratio must be in [0, 1)");
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    const std::size_t missing =
        static_cast<std::size_t>(std::llround(mr * static_cast<double>(total)));

    std::vector<std::uint64_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::uint64_t{0});
    std::mt19937_64 rng(seed);
    ObservationMask mask(rows, cols, true);
    for (std::size_t i = 0; i < missing; ++i) {
        const std::size_t j = i + uniform_below(rng, total - i);
        std::swap(idx[i], idx[j]);
        mask.bits[idx[i]] = 0;
    }
    return mask;
}

// The union of the rectangles is missing; everything else stays observed.
inline ObservationMask make_block_mask(int rows, int cols, const std::vector<BlockRect>& blocks) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("make_block_mask: dimensions must be positive");
    ObservationMask mask(rows, cols, true);
    for (const auto& b : blocks) {
        if (b.top < 0 || b.left < 0 || b.height < 0 || b.width < 0 ||
            b.top + b.height > rows || b.left + b.width > cols)
            throw std::invalid_argument("make_block_mask: rectangle out of bounds");
        for (int i = b.top; i < b.top + b.height; ++i)
            for (int j = b.left; j < b.left + b.width; ++j)
                mask.bits[static_cast<std::size_t>(i) * cols + j] = 0;
    }
    return mask;
}

inline ObservationMask make_mask(int rows, int cols, const MaskSpec& spec) {
    spec.validate();
    return spec.kind == MaskSpec::Kind::random
               ? make_random_mask(rows, cols, spec.missing_ratio, spec.seed)
               : make_block_mask(rows, cols, spec.blocks);
}

}  // namespace lrmc
