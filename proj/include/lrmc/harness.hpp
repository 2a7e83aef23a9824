#pragma once

// Experiment harness: parse a flat key=value plan, run the completion
// pipeline per (image, seed, p), write degraded/reconstructed images, and
// emit per-run and per-configuration CSV reports.

#include "image.hpp"
#include "mask.hpp"
#include "metrics.hpp"
#include "solver.hpp"
#include "surrogate.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lrmc {

enum class Method { rmln, nnm };

inline const char* to_string(Method m) {
    return m == Method::rmln ? "rmln" : "nnm";
}

inline Method parse_method(const std::string& s) {
    if (s == "rmln") return Method::rmln;
    if (s == "nnm") return Method::nnm;
    throw std::invalid_argument("unknown method '" + s + "'");
}

struct ExperimentPlan {
    std::vector<std::string> inputs;
    MaskSpec mask;
    SolverConfig solver;
    Method method = Method::rmln;
    std::vector<double> sweep;  // optional p values; empty = use solver.surrogate.p
    std::string output_dir = "out";
    std::vector<std::uint64_t> seeds;

    void validate() const {
        if (inputs.empty())
            throw std::invalid_argument("ExperimentPlan: at least one input required");
        if (seeds.empty())
            throw std::invalid_argument("ExperimentPlan: at least one seed required");
        for (double p : sweep)
            if (!(p > 0.0 && p <= 1.0))
                throw std::invalid_argument("ExperimentPlan: sweep values must be in (0, 1]");
        mask.validate();
        solver.validate();
    }
};

// One summary row; scores are the mean over channels of the per-channel
// metrics, computed on the pre-quantization reconstruction.
struct RunReport {
    std::string image;
    std::string channel = "all";
    std::string method;
    std::string strategy;
    double p = 0.0;
    double mr = 0.0;  // realized missing fraction (also meaningful for block masks)
    std::uint64_t seed = 0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double seconds = 0.0;
    int iters = 0;
};

struct RunOutcome {
    std::vector<RunReport> reports;
    std::vector<std::string> errors;  // per-image failures, run continued
    bool partial() const { return !errors.empty(); }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double to_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("plan key '" + key + "': bad number '" + value + "'");
    }
}

inline int to_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("plan key '" + key + "': bad integer '" + value + "'");
    }
}

inline BlockRect parse_block(const std::string& item) {
    const auto f = split(item, ':');
    if (f.size() != 4)
        throw std::invalid_argument("block '" + item + "' must be top:left:height:width");
    return {to_count("blocks", trim(f[0])), to_count("blocks", trim(f[1])),
            to_count("blocks", trim(f[2])), to_count("blocks", trim(f[3]))};
}

inline std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

}  // namespace detail

// Flat key=value plan text; '#' starts a comment, arrays are comma-separated,
// blocks are top:left:height:width tuples. Unknown keys are an error so
// typos cannot silently fall back to defaults.
inline ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plan line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));

        if (key == "inputs") {
            for (auto& v : detail::split(value, ',')) plan.inputs.push_back(detail::trim(v));
        } else if (key == "seeds") {
            for (auto& v : detail::split(value, ','))
                plan.seeds.push_back(static_cast<std::uint64_t>(
                    std::stoull(detail::trim(v))));
        } else if (key == "sweep") {
            for (auto& v : detail::split(value, ','))
                plan.sweep.push_back(detail::to_real(key, detail::trim(v)));
        } else if (key == "output_dir") {
            plan.output_dir = value;
        } else if (key == "method") {
            plan.method = parse_method(value);
        } else if (key == "strategy") {
            plan.solver.strategy = parse_strategy(value);
        } else if (key == "mask_kind") {
            if (value == "random") plan.mask.kind = MaskSpec::Kind::random;
            else if (value == "block") plan.mask.kind = MaskSpec::Kind::block;
            else throw std::invalid_argument("plan key 'mask_kind': unknown kind '" + value + "'");
        } else if (key == "mr") {
            plan.mask.missing_ratio = detail::to_real(key, value);
        } else if (key == "blocks") {
            plan.mask.kind = MaskSpec::Kind::block;
            for (auto& v : detail::split(value, ','))
                plan.mask.blocks.push_back(detail::parse_block(detail::trim(v)));
        } else if (key == "lambda") {
            plan.solver.lambda = detail::to_real(key, value);
        } else if (key == "mu0") {
            plan.solver.mu0 = detail::to_real(key, value);
        } else if (key == "rho") {
            plan.solver.rho = detail::to_real(key, value);
        } else if (key == "outer_iters") {
            plan.solver.outer_iters = detail::to_count(key, value);
        } else if (key == "inner_iters") {
            plan.solver.inner_iters = detail::to_count(key, value);
        } else if (key == "p") {
            plan.solver.surrogate.p = detail::to_real(key, value);
        } else if (key == "eps") {
            plan.solver.surrogate.eps = detail::to_real(key, value);
        } else if (key == "gamma") {
            plan.solver.surrogate.gamma = detail::to_real(key, value);
        } else if (key == "c") {
            plan.solver.surrogate.c = detail::to_real(key, value);
        } else if (key == "value_min") {
            plan.solver.value_range.lo = detail::to_real(key, value);
        } else if (key == "value_max") {
            plan.solver.value_range.hi = detail::to_real(key, value);
        } else {
            throw std::invalid_argument("plan line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    return plan;
}

inline ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open plan file '" + path + "'");
    return parse_plan(in);
}

inline void write_summary_csv(std::ostream& out, const std::vector<RunReport>& rows) {
    out << "image,method,strategy,p,mr,seed,psnr_db,ssim,seconds,iters\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%llu,%.6f,%.6f,%.3f,%d\n",
                      r.p, r.mr, static_cast<unsigned long long>(r.seed), r.psnr_db,
                      r.ssim, r.seconds, r.iters);
        out << r.image << ',' << r.method << ',' << r.strategy << buf;
    }
}

// Per-configuration means over images and seeds, keyed by
// (method, strategy, p, mr).
inline void write_means_csv(std::ostream& out, const std::vector<RunReport>& rows) {
    struct Acc {
        int n = 0;
        double psnr = 0.0;
        double ssim = 0.0;
    };
    std::map<std::string, Acc> groups;
    char key[160];
    for (const auto& r : rows) {
        std::snprintf(key, sizeof key, "%s,%s,%.10g,%.10g", r.method.c_str(),
                      r.strategy.c_str(), r.p, r.mr);
        auto& acc = groups[key];
        acc.n += 1;
        acc.psnr += r.psnr_db;
        acc.ssim += r.ssim;
    }
    out << "method,strategy,p,mr,n,psnr_db,ssim\n";
    char buf[96];
    for (const auto& [k, acc] : groups) {
        std::snprintf(buf, sizeof buf, ",%d,%.6f,%.6f\n", acc.n, acc.psnr / acc.n,
                      acc.ssim / acc.n);
        out << k << buf;
    }
}

// Uniform grid of `samples` points on [-bound, bound], written as the scalar
// profile CSV. The endpoints are hit exactly, and an odd sample count puts a
// row exactly at x = 0.
inline void emit_profile(const SurrogateParams& params, double bound, int samples,
                         const std::string& path) {
    if (samples < 2)
        throw std::invalid_argument("emit_profile: need at least 2 samples");
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        xs[i] = bound * (2.0 * t - 1.0);
    }
    const auto rows = scalar_surrogate_profile(xs, params, bound);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("emit_profile: cannot open '" + path + "' for writing");
    write_profile_csv(out, rows);
    if (!out)
        throw std::runtime_error("emit_profile: write failed for '" + path + "'");
}

namespace detail {

inline Image degrade(const Image& img, const ObservationMask& mask) {
    Image out = img;
    for (auto& ch : out.channels) ch = project_omega(ch, mask, true);
    return out;
}

inline std::string recon_name(const std::string& stem, const RunReport& r, bool gray) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "_%s_%s_p%g_s%llu", r.method.c_str(),
                  r.strategy.c_str(), r.p, static_cast<unsigned long long>(r.seed));
    return stem + buf + (gray ? ".pgm" : ".ppm");
}

}  // namespace detail

// Run the whole plan: per (image, seed, p in sweep-or-default), build the
// mask, zero the missing entries, complete each channel independently with
// the shared mask, score the real-valued result against the original, and
// write the quantized images. A failing image is reported and skipped; the
// remaining work still runs and partial results stay valid.
inline RunOutcome run_plan(const ExperimentPlan& plan) {
    plan.validate();
    std::filesystem::create_directories(plan.output_dir);
    const std::filesystem::path outdir(plan.output_dir);
    const std::vector<double> ps =
        plan.sweep.empty() ? std::vector<double>{plan.solver.surrogate.p} : plan.sweep;

    RunOutcome outcome;
    for (const auto& input : plan.inputs) {
        try {
            const Image original = load_image(input);
            const std::string stem = detail::stem_of(input);
            for (std::uint64_t seed : plan.seeds) {
                MaskSpec spec = plan.mask;
                spec.seed = seed;
                const ObservationMask mask = make_mask(original.rows(), original.cols(), spec);
                const double realized_mr =
                    static_cast<double>(mask.missing_count()) /
                    static_cast<double>(mask.bits.size());

                const Image degraded = detail::degrade(original, mask);
                const std::string degraded_name =
                    stem + "_s" + std::to_string(seed) + "_degraded" +
                    (original.gray() ? ".pgm" : ".ppm");
                save_image((outdir / degraded_name).string(), degraded);

                for (double p : ps) {
                    SolverConfig cfg = plan.solver;
                    cfg.surrogate.p = p;

                    RunReport report;
                    report.image = stem;
                    report.method = to_string(plan.method);
                    report.strategy = to_string(cfg.strategy);
                    report.p = p;
                    report.mr = realized_mr;
                    report.seed = seed;
                    report.iters = cfg.outer_iters;

                    Image recon = original;
                    const auto t0 = std::chrono::steady_clock::now();
                    for (std::size_t c = 0; c < original.channels.size(); ++c) {
                        recon.channels[c] =
                            plan.method == Method::rmln
                                ? run_admm(degraded.channels[c], mask, cfg).first
                                : nnm_svt_baseline(degraded.channels[c], mask, cfg);
                    }
                    const auto t1 = std::chrono::steady_clock::now();
                    report.seconds =
                        std::chrono::duration<double>(t1 - t0).count();

                    double psnr_sum = 0.0, ssim_sum = 0.0;
                    for (std::size_t c = 0; c < original.channels.size(); ++c) {
                        psnr_sum += psnr(original.channels[c], recon.channels[c], original.peak);
                        ssim_sum += ssim(original.channels[c], recon.channels[c], original.peak);
                    }
                    const double nch = static_cast<double>(original.channels.size());
                    report.psnr_db = psnr_sum / nch;
                    report.ssim = ssim_sum / nch;

                    Image quantized = recon;
                    for (auto& ch : quantized.channels) ch = quantize_8bit(ch);
                    save_image((outdir / detail::recon_name(stem, report, original.gray())).string(),
                               quantized);
                    outcome.reports.push_back(std::move(report));
                }
            }
        } catch (const std::exception& e) {
            outcome.errors.push_back(input + ": " + e.what());
        }
    }

    {
        std::ofstream out(outdir / "summary.csv");
        write_summary_csv(out, outcome.reports);
    }
    {
        std::ofstream out(outdir / "means.csv");
        write_means_csv(out, outcome.reports);
    }
    return outcome;
}

}  // namespace lrmc
