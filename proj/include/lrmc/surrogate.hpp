#pragma once

// Rank surrogates on the singular-value vector: nuclear norm,
// log-power surrogate  sum_i log(sigma_i^p + eps)  and its reweighted
// form  sum_i w_i log(sigma_i^p + eps), plus the weight schemes used by
// the ablation experiments.  Natural logarithm throughout.

#include "spectral.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrmc {

struct SurrogateParams {
    double p = 0.8;        // power on the singular values, 0 < p <= 1
    double eps = 800.0;    // additive offset inside the log
    double gamma = 10.0;   // gain in the weight formula
    double c = 1e-8;       // guard added to the log term in the weight base

    void validate() const {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("SurrogateParams: p must be in (0, 1]");
        if (!(eps > 0.0))
            throw std::invalid_argument("SurrogateParams: eps must be positive");
        if (!(gamma > 0.0))
            throw std::invalid_argument("SurrogateParams: gamma must be positive");
        if (!(c > 0.0))
            throw std::invalid_argument("SurrogateParams: c must be positive");
    }
};

enum class WeightStrategy { uniform, log_inverse, reweighted };

inline const char* to_string(WeightStrategy s) {
    switch (s) {
        case WeightStrategy::uniform:     return "uniform";
        case WeightStrategy::log_inverse: return "log_inverse";
        case WeightStrategy::reweighted:  return "reweighted";
    }
    throw std::logic_error("unknown WeightStrategy");
}

inline WeightStrategy parse_strategy(const std::string& s) {
    if (s == "uniform")     return WeightStrategy::uniform;
    if (s == "log_inverse") return WeightStrategy::log_inverse;
    if (s == "reweighted")  return WeightStrategy::reweighted;
    throw std::invalid_argument("unknown weight strategy '" + s + "'");
}

// sigma^p with the continuous extension 0^p := 0 for all p in (0, 1].
inline double pow_p(double sigma, double p) {
    return sigma == 0.0 ? 0.0 : std::pow(sigma, p);
}

// The base  log(sigma^p + eps) + c  shared by the non-uniform weight
// formulas.  Strictly positive whenever eps >= 1.
inline double weight_base(double sigma, const SurrogateParams& params) {
    return std::log(pow_p(sigma, params.p) + params.eps) + params.c;
}

inline Vector compute_weights(const Vector& sigmas, const SurrogateParams& params,
                              WeightStrategy strategy) {
    params.validate();
    Vector w(sigmas.size());
    for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
        if (sigmas[i] < 0.0)
            throw std::invalid_argument("compute_weights: negative singular value");
        if (strategy == WeightStrategy::uniform) {
            w[i] = 1.0;
            continue;
        }
        const double base = weight_base(sigmas[i], params);
        if (base <= 0.0)
            throw std::domain_error("compute_weights: log(sigma^p + eps) + c is not "
                                    "positive; use eps >= 1");
        w[i] = strategy == WeightStrategy::log_inverse
                   ? params.gamma / base
                   : params.gamma * std::pow(base, params.p - 1.0);
    }
    return w;
}

inline double nuclear_norm(const Matrix& m) {
    return svd(m).singular_values.sum();
}

inline double mln_value(const Matrix& m, const SurrogateParams& params) {
    params.validate();
    const Vector s = svd(m).singular_values;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        acc += std::log(pow_p(s[i], params.p) + params.eps);
    return acc;
}

inline double rmln_value(const Matrix& m, const SurrogateParams& params, const Vector& w) {
    params.validate();
    const Vector s = svd(m).singular_values;
    if (w.size() != s.size())
        throw std::invalid_argument("rmln_value: weight vector length must equal min{M,N}");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        acc += w[i] * std::log(pow_p(s[i], params.p) + params.eps);
    return acc;
}

// One row of the scalar comparison table: at scalar x, the rank
// indicator, its convex envelope |x|/M, and the scalar log surrogates.
struct ProfileRow {
    double x;
    double rank;
    double nuclear;  // |x| / bound, the envelope on [-M, M]
    double mln;
    double rmln;
};

inline std::vector<ProfileRow> scalar_surrogate_profile(const std::vector<double>& xs,
                                                        const SurrogateParams& params,
                                                        double bound) {
    params.validate();
    if (!(bound > 0.0))
        throw std::invalid_argument("scalar_surrogate_profile: bound must be positive");
    std::vector<ProfileRow> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        const double ax = std::abs(x);
        if (ax > bound)
            throw std::invalid_argument("scalar_surrogate_profile: |x| exceeds bound");
        const double mln = std::log(pow_p(ax, params.p) + params.eps);
        const double w = params.gamma * std::pow(weight_base(ax, params), params.p - 1.0);
        rows.push_back({x, x == 0.0 ? 0.0 : 1.0, ax / bound, mln, w * mln});
    }
    return rows;
}

inline void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << "x,rank,nuclear,mln,rmln\n";
    char buf[192];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      r.x, r.rank, r.nuclear, r.mln, r.rmln);
        out << buf;
    }
}

}  // namespace lrmc
