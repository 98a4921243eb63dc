#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sisfront/analysis.hpp"
#include "sisfront/config.hpp"
#include "sisfront/csv.hpp"
#include "sisfront/equilibrium.hpp"
#include "sisfront/semiwave.hpp"
#include "sisfront/spectral.hpp"

namespace fs = std::filesystem;
using namespace sisfront;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<double> t_end_override;
    std::optional<double> dt_override;
    std::optional<int> n_override;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* opt = cmd->add_option("--config", args.config_path, "JSON config file");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--t-end", args.t_end_override, "override t_end");
    cmd->add_option("--dt", args.dt_override, "override dt");
    cmd->add_option("--n", args.n_override, "override interior node count");
}

RunConfig load_with_overrides(const CommonArgs& args) {
    RunConfig cfg = load_config(args.config_path);
    if (args.t_end_override) cfg.run.t_end = *args.t_end_override;
    if (args.dt_override) cfg.run.dt = *args.dt_override;
    if (args.n_override) cfg.run.n = *args.n_override;
    require_valid(cfg.model);
    return cfg;
}

void export_run(ArtifactWriter& writer, const Trajectory& traj) {
    write_fronts_csv(writer.path("fronts.csv"), traj);
    write_profiles_csv(writer, traj);
    if (!traj.r0f_history.empty())
        write_r0_series_csv(writer.path("r0_series.csv"), traj, traj.r0f_history);
}

int cmd_simulate(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));
    auto cr = run_classified(cfg.model, cfg.run, cfg.criteria, cfg.spectral,
                             /*early_exit_on_spreading=*/false);
    export_run(writer, cr.trajectory);
    write_verdict_json(writer.path("verdict.json"), cr.outcome);
    writer.write_manifest();
    const auto& last = cr.trajectory.front_history.back();
    std::printf("t = %s  g = %s  h = %s  sup I = %s  verdict = %s\n",
                format_g17(last.t).c_str(), format_g17(last.g).c_str(),
                format_g17(last.h).c_str(), format_g17(last.sup_i).c_str(),
                to_string(cr.outcome.verdict));
    if (cr.trajectory.diagnostics.peclet_warnings > 0)
        std::fprintf(stderr,
                     "warning: cell Peclet reached %.2f (> %.1f) on %d steps; "
                     "increase n\n",
                     cr.trajectory.diagnostics.max_cell_peclet,
                     cfg.run.solver.peclet_limit,
                     cr.trajectory.diagnostics.peclet_warnings);
    return 0;
}

int cmd_r0(const CommonArgs& args, std::vector<double>& interval, bool series,
           bool probe) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));

    if (probe) {
        auto report =
            r0_properties_probe(cfg.model, {-cfg.model.h0, cfg.model.h0}, cfg.spectral);
        write_r0_probe_csv(writer.path("r0_probe.csv"), report);
        for (const auto& check : report.checks)
            std::printf("%s: %s%s%s\n", check.passed ? "pass" : "FAIL",
                        check.name.c_str(), check.detail.empty() ? "" : " -- ",
                        check.detail.c_str());
        writer.write_manifest();
        return report.all_passed() ? 0 : 2;
    }

    if (series) {
        auto cr = run_classified(cfg.model, cfg.run, cfg.criteria, cfg.spectral,
                                 /*early_exit_on_spreading=*/false);
        write_r0_series_csv(writer.path("r0_series.csv"), cr.trajectory,
                            cr.trajectory.r0f_history);
        writer.write_manifest();
        std::printf("%zu samples, R0F range [%s, %s]\n",
                    cr.trajectory.r0f_history.size(),
                    format_g17(cr.trajectory.r0f_history.front().second).c_str(),
                    format_g17(cr.trajectory.r0f_history.back().second).c_str());
        return 0;
    }

    Interval iv{-cfg.model.h0, cfg.model.h0};
    if (interval.size() == 2) iv = {interval[0], interval[1]};
    auto result = spectral_result(iv, cfg.model, cfg.spectral);
    std::printf("interval = (%s, %s)\n", format_g17(iv.left).c_str(),
                format_g17(iv.right).c_str());
    std::printf("R0^DA    = %s\n", format_g17(result.r0).c_str());
    std::printf("lambda0  = %s\n", format_g17(result.lambda0).c_str());
    std::printf("sign check: sign(1 - R0) %s sign(lambda0)\n",
                (1.0 - result.r0) * result.lambda0 >= -1e-8 ? "==" : "!=");
    writer.write_manifest();
    return 0;
}

int cmd_semiwave(const CommonArgs& args, bool with_profiles) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));
    auto right = semiwave_speed(Direction::Rightward, cfg.model);
    auto left = semiwave_speed(Direction::Leftward, cfg.model);
    write_semiwave_csv(writer.path("semiwave.csv"), {right, left});
    if (with_profiles) {
        write_semiwave_profile_csv(writer.path("semiwave_profile_rightward.csv"), right);
        write_semiwave_profile_csv(writer.path("semiwave_profile_leftward.csv"), left);
    }
    writer.write_manifest();
    std::printf("k_r* = %s (slope %s)\nk_l* = %s (slope %s)\n",
                format_g17(right.k_star).c_str(), format_g17(right.slope0).c_str(),
                format_g17(left.k_star).c_str(), format_g17(left.slope0).c_str());
    return 0;
}

int cmd_equilibrium(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));
    auto profile = solve_equilibrium(cfg.model, cfg.equilibrium_L, cfg.equilibrium_n);
    write_equilibrium_csv(writer.path("equilibrium.csv"), profile);
    writer.write_manifest();
    const BulkRates rates = bulk_rates(cfg.model);
    std::printf("I*(0) = %s, far field %s\n", format_g17(profile.at(0.0)).c_str(),
                format_g17(rates.a / rates.b).c_str());
    return 0;
}

int cmd_classify(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));
    auto cr = run_classified(cfg.model, cfg.run, cfg.criteria, cfg.spectral);
    export_run(writer, cr.trajectory);
    write_verdict_json(writer.path("verdict.json"), cr.outcome);
    writer.write_manifest();
    std::printf("verdict: %s\n", to_string(cr.outcome.verdict));
    if (cr.outcome.spreading)
        std::printf("certificate: R0F(%s) = %s >= 1\n",
                    format_g17(cr.outcome.spreading->t0).c_str(),
                    format_g17(cr.outcome.spreading->r0f_t0).c_str());
    return cr.outcome.verdict == Verdict::Undetermined ? 3 : 0;
}

int cmd_threshold(const CommonArgs& args) {
    RunConfig cfg = load_with_overrides(args);
    ArtifactWriter writer(args.out_dir, config_hash(cfg.source_text));

    ThresholdOptions opts;
    opts.run = cfg.run;
    opts.criteria = cfg.criteria;
    opts.spectral = cfg.spectral;
    opts.width_goal = cfg.width_goal;
    opts.horizon_cap = cfg.horizon_cap;
    opts.workers = cfg.workers;
    auto result = find_mu_star(cfg.model, {cfg.bracket_lo, cfg.bracket_hi}, opts);
    write_mu_scan_csv(writer.path("mu_scan.csv"), result);
    writer.write_manifest();
    if (result.immediate_zero)
        std::printf("mu* = 0 (R0F(0) >= 1: spreading for every mu)\n");
    else
        std::printf("mu* in [%s, %s] (width %s)\n", format_g17(result.mu_lo).c_str(),
                    format_g17(result.mu_hi).c_str(),
                    format_g17(result.mu_hi - result.mu_lo).c_str());
    return 0;
}

int cmd_reproduce(const CommonArgs& args) {
    RunConfig base;
    std::string hash_text = "builtin-study-configuration";
    if (!args.config_path.empty()) {
        base = load_with_overrides(args);
        hash_text = base.source_text;
    } else {
        base.model = reference_model(1.5, 6.0);
        base.run.dt = 1e-3;
        base.run.n = 400;
        base.run.output_stride = 500;
    }

    struct Example {
        const char* name;
        double mu, alpha, t_end;
    };
    // mu = 6: fast fronts, profile settling to a positive equilibrium;
    // mu = 1: slow fronts, decay to zero
    const Example examples[] = {{"ex71_alpha_pos", 6.0, 1.5, 10.0},
                                {"ex71_alpha_neg", 6.0, -1.5, 10.0},
                                {"ex72_alpha_pos", 1.0, 1.5, 40.0},
                                {"ex72_alpha_neg", 1.0, -1.5, 40.0}};

    ArtifactWriter top(args.out_dir, config_hash(hash_text));
    for (const auto& ex : examples) {
        ModelSpec spec = base.model;
        spec.mu = ex.mu;
        spec.alpha = ex.alpha;
        require_valid(spec);
        RunParams params = base.run;
        if (!args.t_end_override) params.t_end = ex.t_end;

        ArtifactWriter writer((fs::path(args.out_dir) / ex.name).string(),
                              config_hash(hash_text));
        auto cr = run_classified(spec, params, base.criteria, base.spectral,
                                 /*early_exit_on_spreading=*/false);
        export_run(writer, cr.trajectory);
        write_verdict_json(writer.path("verdict.json"), cr.outcome);
        writer.write_manifest();

        const auto& last = cr.trajectory.front_history.back();
        std::printf("%s: mu=%g alpha=%+.1f -> %s (g=%.3f h=%.3f sup=%.3e)\n", ex.name,
                    ex.mu, ex.alpha, to_string(cr.outcome.verdict), last.g, last.h,
                    last.sup_i);
    }
    top.write_manifest();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "sisfront: free-boundary SIS epidemic laboratory\n"
        "Simulates the advective SIS model with Stefan fronts, computes basic\n"
        "reproduction numbers, classifies spreading vs vanishing, locates the\n"
        "sharp threshold mu*, and solves semi-wave spreading speeds."};
    app.require_subcommand(1);

    CommonArgs args;

    auto* simulate = app.add_subcommand("simulate", "integrate and export a trajectory");
    add_common(simulate, args);

    auto* r0 = app.add_subcommand("r0", "reproduction numbers: interval, series, or probe");
    add_common(r0, args);
    std::vector<double> interval;
    r0->add_option("--interval", interval, "interval endpoints g0 h0")->expected(2);
    bool series = false, probe = false;
    r0->add_flag("--series", series, "run the solver and export the R0^F(t) series");
    r0->add_flag("--probe", probe, "monotonicity property probe (r0_probe.csv)");

    auto* semiwave = app.add_subcommand("semiwave", "semi-wave spreading speeds");
    add_common(semiwave, args);
    bool with_profiles = false;
    semiwave->add_flag("--profiles", with_profiles, "also dump semi-wave profiles");

    auto* equilibrium = app.add_subcommand("equilibrium", "endemic equilibrium profile");
    add_common(equilibrium, args);

    auto* classify = app.add_subcommand("classify", "spreading-vanishing verdict");
    add_common(classify, args);

    auto* threshold = app.add_subcommand("threshold", "sharp threshold mu* bisection");
    add_common(threshold, args);

    auto* reproduce = app.add_subcommand(
        "reproduce-paper", "the four study runs (mu in {1,6}, alpha = +-1.5)");
    add_common(reproduce, args, /*config_required=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (r0->parsed()) return cmd_r0(args, interval, series, probe);
        if (semiwave->parsed()) return cmd_semiwave(args, with_profiles);
        if (equilibrium->parsed()) return cmd_equilibrium(args);
        if (classify->parsed()) return cmd_classify(args);
        if (threshold->parsed()) return cmd_threshold(args);
        if (reproduce->parsed()) return cmd_reproduce(args);
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
