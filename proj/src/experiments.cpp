#include "gausspid/experiments.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "gausspid/concurrency.hpp"
#include "gausspid/measures.hpp"
#include "gausspid/report.hpp"
#include "gausspid/samples.hpp"
#include "gausspid/stats.hpp"
#include "gausspid/systems.hpp"

namespace gausspid {
namespace {

// Per-trial seeds: disjoint strides per configuration block, so results do
// not depend on scheduling and any row is reproducible from (seed, block,
// trial) alone.
std::uint64_t derive_seed(std::uint64_t base, int block, int index) {
    return base + 1000003ULL * static_cast<std::uint64_t>(block) +
           static_cast<std::uint64_t>(index);
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct QuantitySet {
    std::vector<std::string> names;
    std::vector<SourceSubset> pair_subsets;    // aligned with the pair_* names
    std::vector<SourceSubset> triple_subsets;  // aligned with the triple_* names
};

// The quantities of the recovery study: spectrum orders, all pairs, all
// triples of the five-source benchmark.
QuantitySet recovery_quantities() {
    QuantitySet q;
    for (int k = 2; k <= 5; ++k) q.names.push_back("se" + std::to_string(k));
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            q.names.push_back("pair_" + std::to_string(i) + "_" + std::to_string(j));
            q.pair_subsets.push_back({i, j});
        }
    }
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            for (int k = j + 1; k <= 5; ++k) {
                q.names.push_back("triple_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                  std::to_string(k));
                q.triple_subsets.push_back({i, j, k});
            }
        }
    }
    return q;
}

std::vector<double> evaluate_recovery_quantities(const JointCovariance& cov,
                                                 const QuantitySet& q) {
    std::vector<double> values;
    values.reserve(q.names.size());
    for (double se : synergy_spectrum(cov)) values.push_back(se);
    for (const auto& pair : q.pair_subsets) values.push_back(subset_narrow_synergy(cov, pair));
    for (const auto& triple : q.triple_subsets)
        values.push_back(subset_narrow_synergy(cov, triple));
    return values;
}

nlohmann::json column_summary(const ExperimentResult& result, const std::string& column,
                              double population) {
    const std::vector<double> xs = result.value_column(column);
    return nlohmann::json{{"population", population},
                          {"mean", mean(xs)},
                          {"sd", sample_sd(xs)},
                          {"abs_mean_error", std::abs(mean(xs) - population)}};
}

}  // namespace

std::string ExperimentResult::csv() const {
    std::string out;
    for (std::size_t c = 0; c < key_columns.size(); ++c) {
        if (c > 0) out += ',';
        out += key_columns[c];
    }
    for (const auto& column : value_columns) {
        if (!out.empty() || &column != &value_columns.front()) out += ',';
        out += column;
    }
    out += '\n';
    for (std::size_t r = 0; r < values.size(); ++r) {
        for (std::size_t c = 0; c < keys[r].size(); ++c) {
            if (c > 0) out += ',';
            out += keys[r][c];
        }
        for (const double v : values[r]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void ExperimentResult::write_csv(const std::string& path) const {
    atomic_write_file(path, csv());
}

void ExperimentResult::write_summary_json(const std::string& path) const {
    nlohmann::json doc;
    doc["experiment"] = name;
    doc["config"] = config;
    doc["summary"] = summary;
    atomic_write_file(path, doc.dump(2) + "\n");
}

std::vector<double> ExperimentResult::value_column(const std::string& column) const {
    for (std::size_t c = 0; c < value_columns.size(); ++c) {
        if (value_columns[c] == column) {
            std::vector<double> xs;
            xs.reserve(values.size());
            for (const auto& row : values) xs.push_back(row[c]);
            return xs;
        }
    }
    throw InputError("experiment has no value column '" + column + "'");
}

ExperimentResult run_recovery(const RecoveryOptions& options) {
    const JointCovariance bench = five_source_benchmark();
    const QuantitySet quantities = recovery_quantities();
    const std::vector<double> population = evaluate_recovery_quantities(bench, quantities);

    ExperimentResult result;
    result.name = "recovery";
    result.config = {{"trials", options.trials},
                     {"samples", options.samples},
                     {"seed", options.seed},
                     {"threads", options.threads}};
    result.key_columns = {"trial", "seed"};
    result.value_columns = quantities.names;
    result.keys.resize(static_cast<std::size_t>(options.trials));
    result.values.resize(static_cast<std::size_t>(options.trials));
    result.row_wall_seconds.resize(static_cast<std::size_t>(options.trials));

    parallel_for(0, options.trials, options.threads, [&](int trial) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t seed = derive_seed(options.seed, 0, trial);
        const JointCovariance estimate =
            empirical_covariance(sample_gaussian(bench, options.samples, seed));
        result.keys[static_cast<std::size_t>(trial)] = {std::to_string(trial),
                                                        std::to_string(seed)};
        result.values[static_cast<std::size_t>(trial)] =
            evaluate_recovery_quantities(estimate, quantities);
        result.row_wall_seconds[static_cast<std::size_t>(trial)] = elapsed_seconds(start);
    });

    nlohmann::json per_quantity;
    double max_abs_mean_error = 0.0;
    double max_sd = 0.0;
    for (std::size_t q = 0; q < quantities.names.size(); ++q) {
        nlohmann::json entry = column_summary(result, quantities.names[q], population[q]);
        max_abs_mean_error = std::max(max_abs_mean_error, entry["abs_mean_error"].get<double>());
        max_sd = std::max(max_sd, entry["sd"].get<double>());
        per_quantity[quantities.names[q]] = std::move(entry);
    }
    result.summary = {{"quantities", per_quantity},
                      {"max_abs_mean_error", max_abs_mean_error},
                      {"max_sd", max_sd}};
    return result;
}

ExperimentResult run_two_source_grid(const TwoSourceGridOptions& options) {
    // Reference mean decompositions (Red, Un1, Un2, Syn) for the five
    // configurations, plug-in at M = 1000.
    static const std::map<TwoSourceConfig, std::array<double, 4>> kReference = {
        {TwoSourceConfig::pure_redundancy, {0.14, 0.20, 0.21, 0.00}},
        {TwoSourceConfig::pure_unique, {0.00, 0.35, 0.00, 0.00}},
        {TwoSourceConfig::pure_synergy, {0.06, 0.15, 0.14, 0.20}},
        {TwoSourceConfig::mixed_correlated, {0.13, 0.19, 0.19, 0.13}},
        {TwoSourceConfig::mixed_asymmetric, {0.06, 0.50, 0.03, 0.32}},
    };

    ExperimentResult result;
    result.name = "two-source";
    result.config = {{"trials", options.trials},
                     {"samples", options.samples},
                     {"seed", options.seed},
                     {"threads", options.threads}};
    result.key_columns = {"config", "trial", "seed"};
    result.value_columns = {"red", "un1", "un2", "syn"};

    const auto& configs = all_two_source_configs();
    const int total = static_cast<int>(configs.size()) * options.trials;
    result.keys.resize(static_cast<std::size_t>(total));
    result.values.resize(static_cast<std::size_t>(total));
    result.row_wall_seconds.resize(static_cast<std::size_t>(total));

    parallel_for(0, total, options.threads, [&](int index) {
        const int config_index = index / options.trials;
        const int trial = index % options.trials;
        const auto start = std::chrono::steady_clock::now();
        const TwoSourceConfig config = configs[static_cast<std::size_t>(config_index)];
        const std::uint64_t seed = derive_seed(options.seed, config_index, trial);
        const JointCovariance estimate = empirical_covariance(
            sample_gaussian(two_source_configuration(config), options.samples, seed));
        result.keys[static_cast<std::size_t>(index)] = {to_string(config), std::to_string(trial),
                                                        std::to_string(seed)};
        result.values[static_cast<std::size_t>(index)] = {
            redundancy_two_source(estimate), unique_information(estimate, 1),
            unique_information(estimate, 2), narrow_synergy(estimate)};
        result.row_wall_seconds[static_cast<std::size_t>(index)] = elapsed_seconds(start);
    });

    nlohmann::json per_config;
    double max_abs_reference_error = 0.0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const std::string name = to_string(configs[c]);
        const auto& reference = kReference.at(configs[c]);
        nlohmann::json entry;
        for (std::size_t v = 0; v < result.value_columns.size(); ++v) {
            std::vector<double> xs;
            for (int t = 0; t < options.trials; ++t) {
                xs.push_back(
                    result.values[c * static_cast<std::size_t>(options.trials) +
                                  static_cast<std::size_t>(t)][v]);
            }
            const double m = mean(xs);
            max_abs_reference_error = std::max(max_abs_reference_error,
                                               std::abs(m - reference[v]));
            entry[result.value_columns[v]] = {{"mean", m},
                                              {"sd", sample_sd(xs)},
                                              {"reference", reference[v]}};
        }
        per_config[name] = std::move(entry);
    }
    result.summary = {{"configs", per_config},
                      {"max_abs_reference_error", max_abs_reference_error}};
    return result;
}

ExperimentResult run_ridge_sweep(const RidgeSweepOptions& options) {
    const JointCovariance bench = five_source_benchmark();
    const double population = total_synergistic_effect(bench);
    const int n_samples = static_cast<int>(options.sample_grid.size());
    const int n_lambdas = static_cast<int>(options.lambda_grid.size());

    ExperimentResult result;
    result.name = "ridge";
    result.config = {{"sample_grid", options.sample_grid},
                     {"lambda_grid", options.lambda_grid},
                     {"trials", options.trials},
                     {"seed", options.seed},
                     {"threads", options.threads}};
    result.key_columns = {"samples", "lambda", "trial", "seed"};
    result.value_columns = {"success", "tse", "rel_error"};

    const std::size_t rows = static_cast<std::size_t>(n_samples) *
                             static_cast<std::size_t>(n_lambdas) *
                             static_cast<std::size_t>(options.trials);
    result.keys.resize(rows);
    result.values.resize(rows);
    result.row_wall_seconds.assign(rows, 0.0);

    // One draw per (sample size, trial), shared across the ridge grid.
    parallel_for(0, n_samples * options.trials, options.threads, [&](int unit) {
        const int m_index = unit / options.trials;
        const int trial = unit % options.trials;
        const int m = options.sample_grid[static_cast<std::size_t>(m_index)];
        const std::uint64_t seed = derive_seed(options.seed, m_index, trial);
        const JointCovariance estimate = empirical_covariance(sample_gaussian(bench, m, seed));
        for (int l = 0; l < n_lambdas; ++l) {
            const double lambda = options.lambda_grid[static_cast<std::size_t>(l)];
            const std::size_t row =
                (static_cast<std::size_t>(m_index) * static_cast<std::size_t>(n_lambdas) +
                 static_cast<std::size_t>(l)) *
                    static_cast<std::size_t>(options.trials) +
                static_cast<std::size_t>(trial);
            double success = 0.0;
            double tse = std::numeric_limits<double>::quiet_NaN();
            double rel_error = std::numeric_limits<double>::quiet_NaN();
            try {
                tse = total_synergistic_effect(ridge(estimate, lambda));
                success = 1.0;
                rel_error = std::abs(tse - population) / std::abs(population);
            } catch (const NumericalFailure&) {
            }
            result.keys[row] = {std::to_string(m), format_double(lambda), std::to_string(trial),
                                std::to_string(seed)};
            result.values[row] = {success, tse, rel_error};
        }
    });

    // Per-cell aggregates and a compact grid table.
    nlohmann::json cells = nlohmann::json::array();
    std::string grid_csv = "samples,lambda,successes,trials,mean_rel_error\n";
    nlohmann::json lambda_star;
    for (int mi = 0; mi < n_samples; ++mi) {
        double best_error = std::numeric_limits<double>::infinity();
        double best_lambda = 0.0;
        for (int l = 0; l < n_lambdas; ++l) {
            int successes = 0;
            std::vector<double> errors;
            for (int t = 0; t < options.trials; ++t) {
                const std::size_t row =
                    (static_cast<std::size_t>(mi) * static_cast<std::size_t>(n_lambdas) +
                     static_cast<std::size_t>(l)) *
                        static_cast<std::size_t>(options.trials) +
                    static_cast<std::size_t>(t);
                if (result.values[row][0] > 0.0) {
                    ++successes;
                    errors.push_back(result.values[row][2]);
                }
            }
            const double mean_error =
                errors.empty() ? std::numeric_limits<double>::quiet_NaN() : mean(errors);
            const int m = options.sample_grid[static_cast<std::size_t>(mi)];
            const double lambda = options.lambda_grid[static_cast<std::size_t>(l)];
            cells.push_back({{"samples", m},
                             {"lambda", lambda},
                             {"successes", successes},
                             {"trials", options.trials},
                             {"mean_rel_error", mean_error}});
            grid_csv += std::to_string(m) + "," + format_double(lambda) + "," +
                        std::to_string(successes) + "," + std::to_string(options.trials) + "," +
                        format_double(mean_error) + "\n";
            if (successes == options.trials && mean_error < best_error) {
                best_error = mean_error;
                best_lambda = lambda;
            }
        }
        lambda_star[std::to_string(options.sample_grid[static_cast<std::size_t>(mi)])] =
            best_lambda;
    }
    result.summary = {{"population_tse", population},
                      {"cells", cells},
                      {"lambda_star_by_samples", lambda_star}};
    result.extra_csv.emplace_back("grid", std::move(grid_csv));
    return result;
}

ExperimentResult run_convergence(const ConvergenceOptions& options) {
    const JointCovariance bench = five_source_benchmark();
    const std::vector<std::string> columns = {"se2", "se3", "tse", "syn_pair_1_2",
                                              "syn_triple_3_4_5"};
    const std::vector<double> population = {
        synergistic_effect(bench, 2), synergistic_effect(bench, 3),
        total_synergistic_effect(bench), subset_narrow_synergy(bench, {1, 2}),
        subset_narrow_synergy(bench, {3, 4, 5})};

    ExperimentResult result;
    result.name = "convergence";
    result.config = {{"sample_grid", options.sample_grid},
                     {"trials", options.trials},
                     {"seed", options.seed},
                     {"threads", options.threads}};
    result.key_columns = {"samples", "trial", "seed"};
    result.value_columns = columns;

    const int n_sizes = static_cast<int>(options.sample_grid.size());
    const std::size_t rows =
        static_cast<std::size_t>(n_sizes) * static_cast<std::size_t>(options.trials);
    result.keys.resize(rows);
    result.values.resize(rows);
    result.row_wall_seconds.assign(rows, 0.0);

    parallel_for(0, n_sizes * options.trials, options.threads, [&](int unit) {
        const int m_index = unit / options.trials;
        const int trial = unit % options.trials;
        const int m = options.sample_grid[static_cast<std::size_t>(m_index)];
        const std::uint64_t seed = derive_seed(options.seed, m_index, trial);
        const auto start = std::chrono::steady_clock::now();
        const JointCovariance estimate = empirical_covariance(sample_gaussian(bench, m, seed));
        const std::size_t row = static_cast<std::size_t>(unit);
        result.keys[row] = {std::to_string(m), std::to_string(trial), std::to_string(seed)};
        result.values[row] = {synergistic_effect(estimate, 2), synergistic_effect(estimate, 3),
                              total_synergistic_effect(estimate),
                              subset_narrow_synergy(estimate, {1, 2}),
                              subset_narrow_synergy(estimate, {3, 4, 5})};
        result.row_wall_seconds[row] = elapsed_seconds(start);
    });

    nlohmann::json by_samples;
    std::vector<double> tse_sds;
    std::string stats_csv = "samples,measure,mean,sd,bias,rel_sd\n";
    for (int mi = 0; mi < n_sizes; ++mi) {
        const int m = options.sample_grid[static_cast<std::size_t>(mi)];
        nlohmann::json entry;
        for (std::size_t v = 0; v < columns.size(); ++v) {
            std::vector<double> xs;
            for (int t = 0; t < options.trials; ++t) {
                xs.push_back(result.values[static_cast<std::size_t>(mi) *
                                               static_cast<std::size_t>(options.trials) +
                                           static_cast<std::size_t>(t)][v]);
            }
            const double m_hat = mean(xs);
            const double sd = sample_sd(xs);
            entry[columns[v]] = {{"mean", m_hat},
                                 {"sd", sd},
                                 {"bias", m_hat - population[v]},
                                 {"rel_sd", sd / std::abs(population[v])}};
            stats_csv += std::to_string(m) + "," + columns[v] + "," + format_double(m_hat) +
                         "," + format_double(sd) + "," + format_double(m_hat - population[v]) +
                         "," + format_double(sd / std::abs(population[v])) + "\n";
            if (columns[v] == "tse") tse_sds.push_back(sd);
        }
        by_samples[std::to_string(m)] = std::move(entry);
    }

    nlohmann::json pop_json;
    for (std::size_t v = 0; v < columns.size(); ++v) pop_json[columns[v]] = population[v];
    result.summary = {{"population", pop_json}, {"by_samples", by_samples}};
    if (n_sizes >= 2) {
        std::vector<double> grid_as_double(options.sample_grid.begin(),
                                           options.sample_grid.end());
        result.summary["tse_sd_loglog_slope"] = log_log_slope(grid_as_double, tse_sds);
    }
    result.extra_csv.emplace_back("stats", std::move(stats_csv));
    return result;
}

namespace {

// log of the dominant factorization cost, used to predict whether the next
// grid point would blow through the budget without actually running it.
double log_method_cost(const std::string& method, int n) {
    auto log_binom = [](int nn, int kk) {
        return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
    };
    if (method == "tse") return 3.0 * std::log(static_cast<double>(n));
    if (method == "un") return 4.0 * std::log(static_cast<double>(n));
    if (method == "syn") {
        return 3.0 * (std::log(static_cast<double>(n)) +
                      std::log(static_cast<double>(std::max(1, n - 1))));
    }
    // spectrum: sum over orders of (K * binom(N, K))^3
    double max_term = 0.0;
    for (int k = 1; k <= n; ++k) {
        max_term = std::max(max_term, 3.0 * (std::log(static_cast<double>(k)) + log_binom(n, k)));
    }
    return max_term;
}

double run_method_once(const std::string& method, const JointCovariance& cov) {
    const auto start = std::chrono::steady_clock::now();
    if (method == "tse") {
        (void)total_synergistic_effect(cov);
    } else if (method == "un") {
        (void)all_unique_information(cov, 1);
    } else if (method == "syn") {
        (void)narrow_synergy(cov);
    } else {
        SpectrumOptions spectrum_options;
        spectrum_options.allow_large = true;  // controlled internal study
        (void)synergy_spectrum(cov, spectrum_options);
    }
    return elapsed_seconds(start);
}

}  // namespace

ExperimentResult run_scaling(const ScalingOptions& options) {
    ExperimentResult result;
    result.name = "scaling";
    result.config = {{"source_counts", options.source_counts},
                     {"trials", options.trials},
                     {"samples", options.samples},
                     {"budget_seconds", options.budget_seconds},
                     {"seed", options.seed},
                     {"timing", "estimator only, single-threaded, one discarded warm-up"}};
    result.key_columns = {"method", "num_sources"};
    result.value_columns = {"median_seconds"};

    const std::vector<std::string> methods = {"tse", "un", "syn", "spectrum"};
    std::map<std::string, bool> active;
    std::map<std::string, double> last_median;
    std::map<std::string, int> last_n;
    nlohmann::json exceeded;
    for (const auto& method : methods) active[method] = true;

    for (const int n : options.source_counts) {
        bool any_active = false;
        for (const auto& method : methods) any_active |= active[method];
        if (!any_active) break;

        const JointCovariance system = scaling_system(n, derive_seed(options.seed, n, 0));
        const JointCovariance estimate =
            empirical_covariance(sample_gaussian(system, options.samples,
                                                 derive_seed(options.seed, n, 1)));

        for (const auto& method : methods) {
            if (!active[method]) continue;
            if (last_median.count(method) > 0) {
                const double predicted =
                    last_median[method] *
                    std::exp(log_method_cost(method, n) - log_method_cost(method, last_n[method]));
                if (predicted > options.budget_seconds) {
                    exceeded[method] = {{"at_sources", n},
                                        {"predicted_seconds", predicted},
                                        {"measured", false}};
                    active[method] = false;
                    continue;
                }
            }
            (void)run_method_once(method, estimate);  // warm-up, discarded
            std::vector<double> times;
            times.reserve(static_cast<std::size_t>(options.trials));
            for (int t = 0; t < options.trials; ++t) {
                times.push_back(run_method_once(method, estimate));
            }
            const double med = median(times);
            result.keys.push_back({method, std::to_string(n)});
            result.values.push_back({med});
            result.row_wall_seconds.push_back(med * options.trials);
            last_median[method] = med;
            last_n[method] = n;
            if (med > options.budget_seconds) {
                exceeded[method] = {{"at_sources", n},
                                    {"median_seconds", med},
                                    {"measured", true}};
                active[method] = false;
            }
        }
    }

    // Medians should grow with N; flag any drop beyond timing jitter.
    nlohmann::json monotone;
    for (const auto& method : methods) {
        double previous = -1.0;
        bool ok = true;
        for (std::size_t r = 0; r < result.keys.size(); ++r) {
            if (result.keys[r][0] != method) continue;
            const double med = result.values[r][0];
            if (previous >= 0.0 && med < 0.8 * previous) ok = false;
            previous = med;
        }
        monotone[method] = ok;
    }
    result.summary = {{"exceeded_budget", exceeded},
                      {"medians_monotone_within_jitter", monotone},
                      {"budget_seconds", options.budget_seconds}};
    return result;
}

}  // namespace gausspid
