#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace gausspid {

/// Seed used by every harness when the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 15800;

/// One experiment's per-row records plus deterministic aggregates.
///
/// Rows and summary are pure functions of the configuration (seed included),
/// so rerunning an experiment writes byte-identical files; the exception is
/// the scaling experiment, whose value columns are measured wall-clock
/// times. Per-row timings of the other experiments stay in memory only.
struct ExperimentResult {
    std::string name;
    nlohmann::json config;  // echoed options, including the seed

    std::vector<std::string> key_columns;         // e.g. trial, seed, samples
    std::vector<std::vector<std::string>> keys;   // one entry per row
    std::vector<std::string> value_columns;
    std::vector<std::vector<double>> values;      // one entry per row

    nlohmann::json summary;                 // aggregates, recomputable from rows
    std::vector<double> row_wall_seconds;   // not serialized

    /// Additional derived tables, written as <name>_<suffix>.csv.
    std::vector<std::pair<std::string, std::string>> extra_csv;

    std::string csv() const;
    void write_csv(const std::string& path) const;
    void write_summary_json(const std::string& path) const;

    std::vector<double> value_column(const std::string& column) const;
};

/// Spectrum, pair and triple synergies on the five-source benchmark over
/// repeated draws; the summary compares per-quantity means and standard
/// deviations against the closed-form population values.
struct RecoveryOptions {
    int trials = 50;
    int samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};
ExperimentResult run_recovery(const RecoveryOptions& options = {});

/// Wall-clock medians for the four estimators over growing source counts,
/// single-threaded, warm start, monotonic clock. Estimation time only; the
/// empirical covariance is formed outside the timed region. A method is
/// dropped once its median exceeds the budget.
struct ScalingOptions {
    std::vector<int> source_counts = {2, 4, 8, 16, 32, 64, 128, 200, 300};
    int trials = 10;
    int samples = 1000;
    double budget_seconds = 1000.0;
    std::uint64_t seed = kDefaultSeed;
};
ExperimentResult run_scaling(const ScalingOptions& options = {});

/// Total synergistic effect across a sample-size x ridge grid on the
/// five-source benchmark; per-cell Cholesky success counts and relative
/// errors against the population value.
struct RidgeSweepOptions {
    std::vector<int> sample_grid = {10, 12, 15, 25, 50, 100, 500};
    std::vector<double> lambda_grid = {0.0, 1e-8, 1e-6, 1e-4, 1e-2, 1e-1, 1.0};
    int trials = 50;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};
ExperimentResult run_ridge_sweep(const RidgeSweepOptions& options = {});

/// Plug-in convergence on the five-source benchmark: SE_2, SE_3, TSE and the
/// two subset synergies across a sample-size grid; per-size bias and
/// standard deviation, and the log-log slope of the TSE SD.
struct ConvergenceOptions {
    std::vector<int> sample_grid = {50, 100, 200, 500, 1000, 2000, 5000, 10000};
    int trials = 100;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};
ExperimentResult run_convergence(const ConvergenceOptions& options = {});

/// Full two-source decomposition (Red, Un_1, Un_2, Syn) on the five
/// controlled configurations; summary compares per-configuration means with
/// the reference decompositions.
struct TwoSourceGridOptions {
    int trials = 50;
    int samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
};
ExperimentResult run_two_source_grid(const TwoSourceGridOptions& options = {});

}  // namespace gausspid
