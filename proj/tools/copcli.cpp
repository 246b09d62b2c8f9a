// Command line front end: run one experiment, sweep an axis, certify the
// coverage/boundedness/regret/convergence bounds, dump synthetic streams,
// and time tracker updates.

#include "cop/certification.hpp"
#include "cop/csv.hpp"
#include "cop/datagen.hpp"
#include "cop/errors.hpp"
#include "cop/experiment.hpp"
#include "cop/format.hpp"
#include "cop/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace {

struct config_flags {
    cop::experiment_config cfg;
    std::string config_path;
    CLI::Option* schedule_opt = nullptr;
    CLI::Option* eta_opt = nullptr;
    std::vector<CLI::Option*> tracked;
    std::vector<std::function<void(cop::experiment_config&)>> appliers;
};

// Registers every config-mirroring flag on `cmd`. Values land in a scratch
// config; resolve() replays the explicitly passed ones over the base config.
void add_config_flags(CLI::App* cmd, config_flags& f) {
    auto track = [&f](CLI::Option* opt, std::function<void(cop::experiment_config&)> apply) {
        f.tracked.push_back(opt);
        f.appliers.push_back(std::move(apply));
    };
    cmd->add_option("--config", f.config_path, "JSON config file (flags override its fields)");

    auto& c = f.cfg;
    track(cmd->add_option("--dataset", c.dataset,
                          "synthetic setting (changepoint, drift, var_changepoint, heavy_tail, "
                          "extreme_drift) or a CSV path"),
          [&c](cop::experiment_config& out) { out.dataset = c.dataset; });
    track(cmd->add_option("--predictor", c.predictor, "ar3 | theta"),
          [&c](cop::experiment_config& out) { out.predictor = c.predictor; });
    track(cmd->add_option("--method", c.method,
                          "cop | cop_gated | ogd | decay_ogd | sf_ogd | aci"),
          [&c](cop::experiment_config& out) { out.method = c.method; });
    track(cmd->add_option("--alpha", c.alpha, "total miscoverage level"),
          [&c](cop::experiment_config& out) { out.alpha = c.alpha; });
    f.eta_opt = cmd->add_option("--eta", c.eta_grid, "base learning rate grid")->delimiter(',');
    track(f.eta_opt, [&c](cop::experiment_config& out) { out.eta_grid = c.eta_grid; });
    f.schedule_opt =
        cmd->add_option("--schedule", c.schedule, "constant | decay | sf | window_adaptive");
    track(f.schedule_opt, [&c](cop::experiment_config& out) { out.schedule = c.schedule; });
    track(cmd->add_option("--scale", c.scale_grid, "refinement scale factor grid (lambda/eta)")
              ->delimiter(','),
          [&c](cop::experiment_config& out) { out.scale_grid = c.scale_grid; });
    track(cmd->add_option("--epsilon-gate", c.epsilon_gate, "gated refinement threshold"),
          [&c](cop::experiment_config& out) { out.epsilon_gate = c.epsilon_gate; });
    track(cmd->add_option("--window", c.window, "score window length"),
          [&c](cop::experiment_config& out) { out.window = c.window; });
    track(cmd->add_option("--warmup", c.warmup, "scores required before refinement"),
          [&c](cop::experiment_config& out) { out.warmup = c.warmup; });
    track(cmd->add_option("--cdf", c.cdf, "ecdf | kde"),
          [&c](cop::experiment_config& out) { out.cdf = c.cdf; });
    track(cmd->add_option("--gamma", c.gamma_grid, "noisy-CDF mixing weight grid")->delimiter(','),
          [&c](cop::experiment_config& out) { out.gamma_grid = c.gamma_grid; });
    track(cmd->add_option("--seeds", c.seeds, "seed list")->delimiter(','),
          [&c](cop::experiment_config& out) { out.seeds = c.seeds; });
    track(cmd->add_option("--init", c.init_radius, "initial radius"),
          [&c](cop::experiment_config& out) { out.init_radius = c.init_radius; });
    track(cmd->add_option("--n", c.n, "synthetic stream length"),
          [&c](cop::experiment_config& out) { out.n = c.n; });
    track(cmd->add_option("--fit-window", c.fit_window, "predictor refit window"),
          [&c](cop::experiment_config& out) { out.fit_window = c.fit_window; });
    track(cmd->add_flag("--log-scale", c.log_scale, "forecast the CSV series on a log scale"),
          [&c](cop::experiment_config& out) { out.log_scale = c.log_scale; });
    track(cmd->add_flag("!--no-timing", c.measure_timing, "skip per-step timing"),
          [&c](cop::experiment_config& out) { out.measure_timing = c.measure_timing; });
}

cop::experiment_config resolve(const config_flags& f) {
    if (!f.config_path.empty()) {
        cop::experiment_config cfg = cop::load_config(f.config_path);
        for (std::size_t i = 0; i < f.tracked.size(); ++i) {
            if (f.tracked[i]->count() > 0) f.appliers[i](cfg);
        }
        cop::validate(cfg);
        return cfg;
    }
    return cop::with_method_defaults(f.cfg, f.schedule_opt->count() > 0, f.eta_opt->count() > 0);
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw cop::io_error("cannot create output directory " + dir);
}

cop::emit_format parse_format(const std::string& name) {
    if (name == "csv") return cop::emit_format::csv;
    if (name == "jsonl") return cop::emit_format::jsonl;
    throw cop::config_error("unknown output format: " + name);
}

const char* ext(cop::emit_format f) { return f == cop::emit_format::csv ? ".csv" : ".jsonl"; }

int cmd_run(const config_flags& flags, const std::string& out_dir, const std::string& format_name) {
    const cop::experiment_config cfg = resolve(flags);
    const cop::emit_format format = parse_format(format_name);
    ensure_dir(out_dir);

    const cop::run_record run = cop::run_experiment(cfg);
    const cop::summary_row row = cop::make_summary_row(run);

    cop::write_summary(out_path(out_dir, std::string("summary") + ext(format)), {row}, format);
    cop::write_trajectory(out_path(out_dir, std::string("trajectory") + ext(format)), run, format);
    if (cfg.method != "aci") { // the coverage/boundedness bounds cover the gradient family
        const std::vector<cop::bound_report> reports = {
            cop::check_coverage_bound(run.upper), cop::check_boundedness(run.upper),
            cop::check_coverage_bound(run.lower), cop::check_boundedness(run.lower)};
        cop::write_bound_reports(out_path(out_dir, std::string("bounds") + ext(format)), reports,
                                 {"upper", "upper", "lower", "lower"}, format);
    }
    cop::save_config(cfg, out_path(out_dir, "config.json"));

    std::cout << "dataset=" << row.dataset << " predictor=" << row.predictor
              << " method=" << row.method << " eta=" << cop::format_double(row.eta)
              << " coverage=" << cop::format_double(row.coverage)
              << " avg_width=" << cop::format_double(row.avg_width)
              << " median_width=" << cop::format_double(row.median_width) << "\n";
    return 0;
}

int cmd_sweep(const config_flags& flags, const std::string& out_dir,
              const std::string& format_name, const std::string& axis_name) {
    const cop::experiment_config cfg = resolve(flags);
    const cop::emit_format format = parse_format(format_name);
    ensure_dir(out_dir);

    const cop::sweep_result result = cop::sweep(cfg, cop::axis_from_string(axis_name));
    cop::write_sweep(out_path(out_dir, std::string("sweep") + ext(format)), result, format);
    cop::save_config(cfg, out_path(out_dir, "config.json"));

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        std::cout << axis_name << "=" << result.axis_values[i]
                  << " coverage=" << cop::format_double(r.coverage)
                  << " avg_width=" << cop::format_double(r.avg_width) << "\n";
    }
    if (result.mean_row) {
        std::cout << "mean coverage=" << cop::format_double(result.mean_row->coverage)
                  << " avg_width=" << cop::format_double(result.mean_row->avg_width) << "\n";
    }
    if (result.std_row) {
        std::cout << "std coverage=" << cop::format_double(result.std_row->coverage)
                  << " avg_width=" << cop::format_double(result.std_row->avg_width) << "\n";
    }
    return 0;
}

int cmd_theory(const std::string& out_dir, const std::string& format_name, int streams,
               std::int64_t length, int regret_runs, int conv_seeds, std::int64_t horizon,
               std::uint64_t seed) {
    const cop::emit_format format = parse_format(format_name);
    ensure_dir(out_dir);
    bool all_ok = true;

    const auto coverage = cop::certify_coverage_bounds(streams, length, seed);
    const auto bounded = cop::certify_boundedness(streams, length, seed, true);
    const auto regret = cop::certify_regret_coverage(regret_runs, length, seed + 1000);

    std::vector<cop::bound_report> reports;
    std::vector<std::string> labels;
    for (const auto* cert : {&coverage, &bounded, &regret}) {
        for (std::size_t i = 0; i < cert->reports.size(); ++i) {
            reports.push_back(cert->reports[i]);
            labels.push_back(cert->labels[i]);
        }
        std::cout << cert->name << ": " << (cert->all_satisfied() ? "pass" : "FAIL")
                  << " (violations=" << cert->violations
                  << ", worst_slack=" << cop::format_double(cert->worst_slack) << ")\n";
        all_ok = all_ok && cert->all_satisfied();
    }
    cop::write_bound_reports(out_path(out_dir, std::string("bounds") + ext(format)), reports,
                             labels, format);

    std::string conv_csv = "dist,seed,q_final,q_star,gap\n";
    for (const auto dist : {cop::analytic_dist::uniform01, cop::analytic_dist::normal01}) {
        const auto cert =
            cop::certify_convergence(dist, 0.1, 0.6, horizon, conv_seeds, 0.02, seed);
        const char* name = dist == cop::analytic_dist::uniform01 ? "uniform01" : "normal01";
        const bool ok = cert.within_tolerance + 1 >= cert.seeds; // >= seeds-1 of seeds
        std::cout << "convergence(" << name << "): " << (ok ? "pass" : "FAIL") << " ("
                  << cert.within_tolerance << "/" << cert.seeds
                  << " within 0.02, worst_gap=" << cop::format_double(cert.worst_gap) << ")\n";
        all_ok = all_ok && ok;
        for (std::size_t i = 0; i < cert.results.size(); ++i) {
            const auto& r = cert.results[i];
            conv_csv += std::string(name) + "," + std::to_string(i + 1) + "," +
                        cop::format_double(r.q_final) + "," + cop::format_double(r.q_star) + "," +
                        cop::format_double(r.gap) + "\n";
        }
    }
    {
        std::ofstream out(out_path(out_dir, "convergence.csv"), std::ios::binary);
        out << conv_csv;
    }

    std::string refine_csv = "dist,lambda,improved_everywhere,equal_at_q_star,worst_margin\n";
    for (const auto& [dist, lambda, step] :
         {std::tuple{cop::analytic_dist::uniform01, 0.5, 0.02},
          std::tuple{cop::analytic_dist::normal01, 0.2, 0.06}}) {
        const auto cert = cop::certify_refinement(dist, 0.1, lambda, 50, step);
        const char* name = dist == cop::analytic_dist::uniform01 ? "uniform01" : "normal01";
        const bool ok = cert.improved_everywhere && cert.equal_at_q_star;
        std::cout << "refinement(" << name << "): " << (ok ? "pass" : "FAIL")
                  << " (worst_margin=" << cop::format_double(cert.worst_margin) << ")\n";
        all_ok = all_ok && ok;
        refine_csv += std::string(name) + "," + cop::format_double(lambda) + "," +
                      (cert.improved_everywhere ? "1" : "0") + "," +
                      (cert.equal_at_q_star ? "1" : "0") + "," +
                      cop::format_double(cert.worst_margin) + "\n";
    }
    {
        std::ofstream out(out_path(out_dir, "refinement.csv"), std::ios::binary);
        out << refine_csv;
    }

    std::cout << (all_ok ? "theory: all checks passed" : "theory: CHECKS FAILED") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_gen(const std::string& setting, std::int64_t n, std::uint64_t seed,
            const std::string& out_file) {
    cop::synth_config sc;
    if (setting == "changepoint") sc.setting = cop::synth_setting::changepoint;
    else if (setting == "drift") sc.setting = cop::synth_setting::drift;
    else if (setting == "var_changepoint") sc.setting = cop::synth_setting::var_changepoint;
    else if (setting == "heavy_tail") sc.setting = cop::synth_setting::heavy_tail;
    else if (setting == "extreme_drift") sc.setting = cop::synth_setting::extreme_drift;
    else throw cop::config_error("unknown setting: " + setting);
    sc.n = static_cast<std::size_t>(n);
    sc.seed = seed;

    std::vector<double> values;
    for (const auto& pt : cop::generate(sc)) values.push_back(pt.y);
    cop::write_series_csv(out_file, values);
    std::cout << "wrote " << values.size() << " rows to " << out_file << "\n";
    return 0;
}

int cmd_bench(const std::string& method, std::int64_t window, std::int64_t steps,
              std::uint64_t seed) {
    cop::tracker_config tc;
    tc.variant = [&] {
        if (method == "cop") return cop::tracker_variant::cop;
        if (method == "cop_gated") return cop::tracker_variant::cop_gated;
        if (method == "ogd") return cop::tracker_variant::ogd;
        if (method == "decay_ogd") return cop::tracker_variant::decay_ogd;
        if (method == "sf_ogd") return cop::tracker_variant::sf_ogd;
        if (method == "aci") return cop::tracker_variant::aci;
        throw cop::config_error("unknown method: " + method);
    }();
    tc.alpha = 0.05;
    tc.eta_base = 0.1;
    tc.schedule = (tc.variant == cop::tracker_variant::cop ||
                   tc.variant == cop::tracker_variant::cop_gated)
                      ? cop::rate_schedule::window_adaptive
                      : cop::rate_schedule::constant;
    if (tc.variant == cop::tracker_variant::decay_ogd) tc.schedule = cop::rate_schedule::decay;
    if (tc.variant == cop::tracker_variant::sf_ogd) tc.schedule = cop::rate_schedule::sf;
    tc.window_capacity = static_cast<std::size_t>(window);
    cop::quantile_tracker tracker(tc);

    cop::rng_stream rng(seed);
    std::vector<double> scores(static_cast<std::size_t>(steps));
    for (auto& s : scores) s = rng.normal();

    const auto t0 = std::chrono::steady_clock::now();
    for (double s : scores) tracker.observe(s);
    const auto t1 = std::chrono::steady_clock::now();
    const double ns =
        static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()) /
        static_cast<double>(steps);
    std::cout << "method=" << method << " window=" << window << " steps=" << steps
              << " mean_ns_per_step=" << cop::format_double(ns) << " ("
              << cop::format_double(ns / 1e6) << " ms)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming conformal prediction benchmark harness"};
    app.require_subcommand(1);

    config_flags run_flags, sweep_flags;
    std::string run_out = "out", run_format = "csv";
    auto* run_cmd = app.add_subcommand("run", "run one experiment (eta selected from the grid)");
    add_config_flags(run_cmd, run_flags);
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_option("--format", run_format, "csv | jsonl");

    std::string sweep_out = "out", sweep_format = "csv", sweep_axis_name = "seed";
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one axis (seed, eta, lambda, gamma)");
    add_config_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--axis", sweep_axis_name, "seed | eta | lambda | gamma");
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->add_option("--format", sweep_format, "csv | jsonl");

    std::string theory_out = "out", theory_format = "csv";
    int theory_streams = 100, theory_regret = 50, theory_conv_seeds = 10;
    std::int64_t theory_length = 2000, theory_horizon = 200000;
    std::uint64_t theory_seed = 1;
    auto* theory_cmd = app.add_subcommand("theory", "numerically certify the guarantees");
    theory_cmd->add_option("--out", theory_out, "output directory");
    theory_cmd->add_option("--format", theory_format, "csv | jsonl");
    theory_cmd->add_option("--streams", theory_streams, "adversarial streams per bound");
    theory_cmd->add_option("--length", theory_length, "stream length");
    theory_cmd->add_option("--regret-runs", theory_regret, "constant-rate regret runs");
    theory_cmd->add_option("--convergence-seeds", theory_conv_seeds, "seeds per distribution");
    theory_cmd->add_option("--horizon", theory_horizon, "convergence horizon");
    theory_cmd->add_option("--seed", theory_seed, "base seed");

    std::string gen_setting = "changepoint", gen_out = "stream.csv";
    std::int64_t gen_n = 2000;
    std::uint64_t gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "dump a synthetic stream as t,value CSV");
    gen_cmd->add_option("--setting", gen_setting, "synthetic setting");
    gen_cmd->add_option("--n", gen_n, "stream length");
    gen_cmd->add_option("--seed", gen_seed, "seed");
    gen_cmd->add_option("--out", gen_out, "output CSV path");

    std::string bench_method = "cop";
    std::int64_t bench_window = 100, bench_steps = 3020;
    std::uint64_t bench_seed = 1;
    auto* bench_cmd = app.add_subcommand("bench", "time tracker updates");
    bench_cmd->add_option("--method", bench_method, "tracker variant");
    bench_cmd->add_option("--window", bench_window, "score window length");
    bench_cmd->add_option("--steps", bench_steps, "number of updates");
    bench_cmd->add_option("--seed", bench_seed, "seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags, run_out, run_format);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_flags, sweep_out, sweep_format, sweep_axis_name);
        if (theory_cmd->parsed())
            return cmd_theory(theory_out, theory_format, theory_streams, theory_length,
                              theory_regret, theory_conv_seeds, theory_horizon, theory_seed);
        if (gen_cmd->parsed()) return cmd_gen(gen_setting, gen_n, gen_seed, gen_out);
        if (bench_cmd->parsed()) return cmd_bench(bench_method, bench_window, bench_steps,
                                                  bench_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
