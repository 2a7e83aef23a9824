// Command-line experiment runner for the matrix-completion library.
//
// Subcommands:
//   complete  inpaint a single image and report PSNR/SSIM
//   bench     run a plan file over images x seeds x p values
//   profile   emit the scalar rank-surrogate comparison as CSV
//   mask      emit an observation mask as a binary image (observed = 255)
//
// Exit codes: 0 success, 1 invalid arguments or plan, 2 partial failure
// (some images were skipped; the CSVs hold the completed subset).

#include <lrmc/lrmc.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// Flags shared by `complete` and `bench`; each one overrides a single plan
// key, so a plan file plus a few flags composes naturally.
struct Overrides {
    std::optional<double> lambda, eps, mu0, rho, gamma, c, p, mr;
    std::optional<int> outer_iters, inner_iters;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> strategy, method, blocks, out;
};

void add_solver_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--lambda", o.lambda, "penalty strength");
    cmd->add_option("--eps", o.eps, "offset inside the log surrogate");
    cmd->add_option("--mu0", o.mu0, "initial ADMM penalty parameter");
    cmd->add_option("--rho", o.rho, "growth factor for the penalty parameter");
    cmd->add_option("--gamma", o.gamma, "weight gain");
    cmd->add_option("--c", o.c, "guard added to the weight base");
    cmd->add_option("--p", o.p, "power on the singular values, in (0,1]");
    cmd->add_option("--outer-iters", o.outer_iters, "ADMM sweeps");
    cmd->add_option("--inner-iters", o.inner_iters, "DC steps per Z-update");
}

void add_run_flags(CLI::App* cmd, Overrides& o) {
    add_solver_flags(cmd, o);
    cmd->add_option("--mr", o.mr, "missing ratio for random masks, in [0,1)");
    cmd->add_option("--seed", o.seed, "mask seed");
    cmd->add_option("--strategy", o.strategy, "uniform | log_inverse | reweighted");
    cmd->add_option("--method", o.method, "rmln | nnm");
    cmd->add_option("--blocks", o.blocks,
                    "block mask: comma-separated top:left:height:width");
    cmd->add_option("--out", o.out, "output directory");
}

std::vector<lrmc::BlockRect> parse_blocks_flag(const std::string& value) {
    std::vector<lrmc::BlockRect> blocks;
    for (auto& item : lrmc::detail::split(value, ','))
        blocks.push_back(lrmc::detail::parse_block(lrmc::detail::trim(item)));
    return blocks;
}

void apply(const Overrides& o, lrmc::ExperimentPlan& plan) {
    if (o.lambda) plan.solver.lambda = *o.lambda;
    if (o.eps) plan.solver.surrogate.eps = *o.eps;
    if (o.mu0) plan.solver.mu0 = *o.mu0;
    if (o.rho) plan.solver.rho = *o.rho;
    if (o.gamma) plan.solver.surrogate.gamma = *o.gamma;
    if (o.c) plan.solver.surrogate.c = *o.c;
    if (o.p) plan.solver.surrogate.p = *o.p;
    if (o.outer_iters) plan.solver.outer_iters = *o.outer_iters;
    if (o.inner_iters) plan.solver.inner_iters = *o.inner_iters;
    if (o.mr) plan.mask.missing_ratio = *o.mr;
    if (o.seed) plan.seeds = {*o.seed};
    if (o.strategy) plan.solver.strategy = lrmc::parse_strategy(*o.strategy);
    if (o.method) plan.method = lrmc::parse_method(*o.method);
    if (o.blocks) {
        plan.mask.kind = lrmc::MaskSpec::Kind::block;
        plan.mask.blocks = parse_blocks_flag(*o.blocks);
    }
    if (o.out) plan.output_dir = *o.out;
}

int finish_run(const lrmc::RunOutcome& outcome, const lrmc::ExperimentPlan& plan) {
    for (const auto& r : outcome.reports) {
        std::printf("%s  method=%s strategy=%s p=%g mr=%.4f seed=%llu  "
                    "psnr=%.3f dB  ssim=%.4f  (%.2fs)\n",
                    r.image.c_str(), r.method.c_str(), r.strategy.c_str(), r.p, r.mr,
                    static_cast<unsigned long long>(r.seed), r.psnr_db, r.ssim,
                    r.seconds);
    }
    std::printf("wrote %s/summary.csv and %s/means.csv\n", plan.output_dir.c_str(),
                plan.output_dir.c_str());
    for (const auto& e : outcome.errors) std::cerr << "skipped: " << e << "\n";
    return outcome.partial() ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-rank matrix completion experiment runner"};
    app.require_subcommand(1);

    // complete
    auto* complete = app.add_subcommand("complete", "inpaint a single image");
    std::string input;
    complete->add_option("input", input, "PGM (P5) or PPM (P6) image")->required();
    Overrides complete_o;
    add_run_flags(complete, complete_o);

    // bench
    auto* bench = app.add_subcommand("bench", "run a plan file");
    std::string plan_path;
    bench->add_option("--plan", plan_path, "flat key=value plan file")->required();
    Overrides bench_o;
    add_run_flags(bench, bench_o);

    // profile
    auto* profile = app.add_subcommand("profile", "emit the scalar surrogate CSV");
    Overrides profile_o;
    add_solver_flags(profile, profile_o);
    double bound = 255.0;
    int samples = 511;
    std::string profile_out = "profile.csv";
    profile->add_option("--bound", bound, "profile over [-bound, bound]");
    profile->add_option("--samples", samples, "grid size (odd includes x = 0)");
    profile->add_option("--out", profile_out, "output CSV path");

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "emit a mask as a binary image");
    Overrides mask_o;
    int rows = 256, cols = 256;
    std::string mask_out = "mask.pgm";
    mask_cmd->add_option("--rows", rows, "mask height");
    mask_cmd->add_option("--cols", cols, "mask width");
    mask_cmd->add_option("--mr", mask_o.mr, "missing ratio for random masks");
    mask_cmd->add_option("--seed", mask_o.seed, "mask seed");
    mask_cmd->add_option("--blocks", mask_o.blocks,
                         "block mask: comma-separated top:left:height:width");
    mask_cmd->add_option("--out", mask_out, "output PGM path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (complete->parsed()) {
            lrmc::ExperimentPlan plan;
            plan.inputs = {input};
            plan.seeds = {0};
            apply(complete_o, plan);
            return finish_run(lrmc::run_plan(plan), plan);
        }
        if (bench->parsed()) {
            lrmc::ExperimentPlan plan = lrmc::parse_plan_file(plan_path);
            if (plan.seeds.empty()) plan.seeds = {0};
            apply(bench_o, plan);
            return finish_run(lrmc::run_plan(plan), plan);
        }
        if (profile->parsed()) {
            lrmc::SurrogateParams params;
            if (profile_o.p) params.p = *profile_o.p;
            if (profile_o.eps) params.eps = *profile_o.eps;
            if (profile_o.gamma) params.gamma = *profile_o.gamma;
            if (profile_o.c) params.c = *profile_o.c;
            lrmc::emit_profile(params, bound, samples, profile_out);
            std::printf("wrote %s\n", profile_out.c_str());
            return 0;
        }
        if (mask_cmd->parsed()) {
            lrmc::MaskSpec spec;
            if (mask_o.mr) spec.missing_ratio = *mask_o.mr;
            if (mask_o.seed) spec.seed = *mask_o.seed;
            if (mask_o.blocks) {
                spec.kind = lrmc::MaskSpec::Kind::block;
                spec.blocks = parse_blocks_flag(*mask_o.blocks);
            }
            const lrmc::ObservationMask mask = lrmc::make_mask(rows, cols, spec);
            lrmc::Image img;
            img.channels.assign(1, lrmc::Matrix(rows, cols));
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    img.channels[0](i, j) = mask.observed(i, j) ? 255.0 : 0.0;
            lrmc::save_image(mask_out, img);
            std::printf("wrote %s (%zu observed, %zu missing)\n", mask_out.c_str(),
                        mask.observed_count(), mask.missing_count());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
