#pragma once

#include "cop/metrics.hpp"
#include "cop/theory.hpp"
#include "cop/tracker.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cop {

enum class emit_format { csv, jsonl };

/**
 * Full description of one experiment. Grids hold candidate values; a plain
 * run consumes the first scale/gamma entry and selects eta from eta_grid by
 * the documented rule (coverage closest to 1-alpha, ties to smaller average
 * width). Serialized as a flat JSON object and validated on load.
 */
struct experiment_config {
    std::string dataset = "changepoint"; // synthetic setting name or a CSV path
    std::string predictor = "ar3";       // ar3 | theta
    std::string method = "cop";          // cop | cop_gated | ogd | decay_ogd | sf_ogd | aci
    double alpha = 0.1;                  // total miscoverage, split alpha/2 per side
    std::vector<double> eta_grid = {1.0, 0.5, 0.1, 0.05};
    std::string schedule = "window_adaptive";
    std::vector<double> scale_grid = {0.5}; // lambda scale factors
    double epsilon_gate = 0.0;
    std::int64_t window = 100;
    std::int64_t warmup = 10;
    std::string cdf = "ecdf"; // ecdf | kde
    std::vector<double> gamma_grid = {1.0};
    std::vector<std::uint64_t> seeds = {1};
    double init_radius = 0.0;
    std::int64_t n = 2000;        // synthetic stream length
    std::int64_t fit_window = 200;
    bool log_scale = false;       // forecast CSV series on the log scale
    bool measure_timing = true;   // wall-clock around tracker updates
};

/// Fills schedule/eta defaults that depend on the method, then validates.
experiment_config with_method_defaults(experiment_config config, bool schedule_given,
                                       bool eta_given);
void validate(const experiment_config& config);

std::string to_json_string(const experiment_config& config);
experiment_config config_from_json_string(const std::string& text);
experiment_config load_config(const std::string& path);
void save_config(const experiment_config& config, const std::string& path);

/// Trajectory of one experiment plus the tracker internals the theory
/// checks consume.
struct run_record {
    experiment_config config;
    std::uint64_t seed = 0;
    double eta = 0.0; // selected base rate
    std::vector<interval_record> records;
    tracker_run upper;
    tracker_run lower;
    double per_step_ns = 0.0;
};

/// One line of the result table.
struct summary_row {
    std::string dataset;
    std::string predictor;
    std::string method;
    double eta = 0.0;
    double lambda = 0.0; // scale factor
    double coverage = 0.0;
    double avg_width = 0.0;
    double median_width = 0.0;
    std::optional<std::int64_t> recovery = std::nullopt;
    double per_step_ns = 0.0;
};

/// Runs one configuration end to end for a single (eta, seed) pair.
run_record single_run(const experiment_config& config, double eta, std::uint64_t seed);

/// Runs the eta grid for seeds.front() and returns the selected run.
run_record run_experiment(const experiment_config& config);

/// Same, for an explicit seed.
run_record run_experiment_for_seed(const experiment_config& config, std::uint64_t seed);

summary_row make_summary_row(const run_record& run);

enum class sweep_axis { seed, eta, lambda, gamma };

struct sweep_result {
    sweep_axis axis = sweep_axis::seed;
    std::vector<std::string> axis_values;
    std::vector<summary_row> rows;
    std::vector<run_record> runs;
    // Seed sweeps also aggregate across rows (mean and standard deviation of
    // coverage and widths; an infinite metric makes both mean and std inf).
    std::optional<summary_row> mean_row;
    std::optional<summary_row> std_row;
};

sweep_result sweep(const experiment_config& config, sweep_axis axis);

sweep_axis axis_from_string(const std::string& name);
std::string axis_to_string(sweep_axis axis);

// --------------------------------------------------------------------------
// Result emission. Serializers are deterministic functions of their inputs;
// identical rows produce byte-identical files.
// --------------------------------------------------------------------------

void write_summary(const std::string& path, const std::vector<summary_row>& rows,
                   emit_format format);
void write_sweep(const std::string& path, const sweep_result& result, emit_format format);
/// Per-step trajectory: t,y,y_hat,lower,upper,covered,rolling_coverage
/// (rolling window 50; rows before the window fills leave the column empty).
void write_trajectory(const std::string& path, const run_record& run, emit_format format);
void write_bound_reports(const std::string& path, const std::vector<bound_report>& reports,
                         const std::vector<std::string>& labels, emit_format format);

/// Dumps a value stream in the harness input schema ("t,value").
void write_series_csv(const std::string& path, const std::vector<double>& values);

} // namespace cop
