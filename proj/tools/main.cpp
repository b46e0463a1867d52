// Command-line surface: estimation from CSV data, benchmark harnesses,
// oracle validation, and synthetic-sample generation.
//
// Exit codes: 0 success, 1 validation-check failure, 2 input error,
// 3 numerical failure (a required matrix was not positive definite).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gausspid/concurrency.hpp"
#include "gausspid/copy_identity.hpp"
#include "gausspid/errors.hpp"
#include "gausspid/experiments.hpp"
#include "gausspid/measures.hpp"
#include "gausspid/oracle.hpp"
#include "gausspid/report.hpp"
#include "gausspid/rng.hpp"
#include "gausspid/samples.hpp"
#include "gausspid/stats.hpp"
#include "gausspid/systems.hpp"

namespace {

using namespace gausspid;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

SourceSubset parse_subset(const std::string& text) {
    SourceSubset subset;
    for (const auto& part : split_list(text)) {
        try {
            subset.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw InputError("cannot parse source index '" + part + "' in subset '" + text + "'");
        }
    }
    if (subset.empty()) {
        throw InputError("subset '" + text + "' names no sources");
    }
    return subset;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        atomic_write_file(out_path, content);
    }
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string input;
    std::string layout;
    std::string measures = "tse";
    bool header = false;
    double ridge_lambda = 0.0;
    int order = 0;
    std::string subset;
    std::string out;
    std::string format = "json";
    int threads = 0;
    bool allow_large_spectrum = false;
    bool bits = false;  // present values in bits instead of nats
};

int cmd_estimate(const EstimateArgs& args) {
    const BlockLayout layout = load_layout_json(args.layout);
    const SampleMatrix samples = load_samples_csv(args.input, layout, args.header);
    const JointCovariance cov = empirical_covariance(samples);
    const int threads = args.threads > 0 ? args.threads : hardware_threads();

    std::vector<MeasureReport> reports;
    for (const auto& name : split_list(args.measures)) {
        const auto kind = measure_kind_from_name(name);
        if (!kind.has_value()) {
            throw InputError("unknown measure '" + name +
                             "'; expected red, un, se, syn, tse or spectrum");
        }
        MeasureRequest request;
        request.kind = *kind;
        if (*kind == MeasureKind::synergistic_effect) {
            if (args.order < 2) {
                throw InputError("measure 'se' needs --order K with K >= 2");
            }
            request.order = args.order;
        }
        if (*kind == MeasureKind::narrow_synergy && !args.subset.empty()) {
            request.subset = parse_subset(args.subset);
        }
        if (*kind == MeasureKind::spectrum) {
            // Run the guarded computation directly so --allow-large-spectrum
            // is honored.
            MeasureReport report;
            const auto start = std::chrono::steady_clock::now();
            const JointCovariance work = ridge(cov, args.ridge_lambda);
            SpectrumOptions guard;
            guard.allow_large = args.allow_large_spectrum;
            guard.threads = threads;
            try {
                report.values = synergy_spectrum(work, guard);
            } catch (const NumericalFailure& failure) {
                if (args.ridge_lambda == 0.0) {
                    throw NumericalFailure(std::string(failure.what()) +
                                               "; retry with a positive ridge parameter",
                                           failure.pivot_index());
                }
                throw;
            }
            report.measure = "spectrum";
            for (std::size_t k = 0; k < report.values.size(); ++k) {
                report.labels.push_back("se" + std::to_string(k + 2));
            }
            report.signed_measure = true;
            report.lambda = args.ridge_lambda;
            report.target_dim = layout.target_dim();
            report.source_dims = layout.source_dims();
            report.threads = threads;
            report.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            reports.push_back(std::move(report));
            continue;
        }
        reports.push_back(estimate_with_ridge(cov, args.ridge_lambda, request, threads));
    }

    const std::string unit = args.bits ? "bits" : "nats";
    if (args.bits) {
        for (auto& report : reports) {
            for (double& value : report.values) value /= std::numbers::ln2;
        }
    }

    if (args.format == "json") {
        nlohmann::json doc;
        doc["command"] = "estimate";
        doc["config"] = {{"input", args.input},     {"layout", args.layout},
                         {"measures", args.measures}, {"header", args.header},
                         {"ridge", args.ridge_lambda}, {"order", args.order},
                         {"subset", args.subset},     {"format", args.format},
                         {"threads", threads},        {"bits", args.bits},
                         {"allow_large_spectrum", args.allow_large_spectrum},
                         {"out", args.out}};
        doc["layout"] = {{"target_dim", layout.target_dim()},
                         {"source_dims", layout.source_dims()}};
        doc["samples"] = samples.count();
        doc["lambda"] = args.ridge_lambda;
        doc["threads"] = threads;
        doc["unit"] = unit;
        doc["measures"] = nlohmann::json::array();
        for (const auto& report : reports) {
            nlohmann::json entry = measure_report_to_json(report);
            entry["unit"] = unit;
            doc["measures"].push_back(std::move(entry));
        }
        emit(doc.dump(2) + "\n", args.out);
    } else if (args.format == "csv") {
        std::string out = "measure,label,value,lambda\n";
        for (const auto& report : reports) {
            const std::string block = measure_report_to_csv(report);
            out += block.substr(block.find('\n') + 1);  // drop repeated header
        }
        emit(out, args.out);
    } else {
        throw InputError("unknown format '" + args.format + "'; expected json or csv");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
    std::string system = "five-source";
    int sources = 10;
    int samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string layout_out;
    bool header = false;
};

JointCovariance named_system(const std::string& name, int sources, std::uint64_t seed) {
    if (name == "five-source") return five_source_benchmark();
    if (name == "scaling") return scaling_system(sources, seed);
    return two_source_configuration(two_source_config_from_name(name));
}

int cmd_sample(const SampleArgs& args) {
    const JointCovariance cov = named_system(args.system, args.sources, args.seed);
    const SampleMatrix samples = sample_gaussian(cov, args.samples, args.seed);
    write_samples_csv(samples, args.out, args.header);
    if (!args.layout_out.empty()) {
        write_layout_json(cov.layout(), args.layout_out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkArgs {
    std::string experiment;
    std::uint64_t seed = kDefaultSeed;
    int trials = 0;   // 0 = experiment default
    int samples = 0;  // 0 = experiment default
    double budget_seconds = 1000.0;
    std::string out = ".";
    int threads = 0;
};

int cmd_benchmark(const BenchmarkArgs& args) {
    const int threads = args.threads > 0 ? args.threads : hardware_threads();
    ExperimentResult result;
    if (args.experiment == "recovery") {
        RecoveryOptions options;
        options.seed = args.seed;
        options.threads = threads;
        if (args.trials > 0) options.trials = args.trials;
        if (args.samples > 0) options.samples = args.samples;
        result = run_recovery(options);
    } else if (args.experiment == "scaling") {
        ScalingOptions options;
        options.seed = args.seed;
        options.budget_seconds = args.budget_seconds;
        if (args.trials > 0) options.trials = args.trials;
        if (args.samples > 0) options.samples = args.samples;
        result = run_scaling(options);
    } else if (args.experiment == "ridge") {
        RidgeSweepOptions options;
        options.seed = args.seed;
        options.threads = threads;
        if (args.trials > 0) options.trials = args.trials;
        result = run_ridge_sweep(options);
    } else if (args.experiment == "convergence") {
        ConvergenceOptions options;
        options.seed = args.seed;
        options.threads = threads;
        if (args.trials > 0) options.trials = args.trials;
        result = run_convergence(options);
    } else if (args.experiment == "two-source") {
        TwoSourceGridOptions options;
        options.seed = args.seed;
        options.threads = threads;
        if (args.trials > 0) options.trials = args.trials;
        if (args.samples > 0) options.samples = args.samples;
        result = run_two_source_grid(options);
    } else {
        throw InputError("unknown experiment '" + args.experiment +
                         "'; expected recovery, scaling, ridge, convergence or two-source");
    }

    std::filesystem::create_directories(args.out);
    const std::string base = (std::filesystem::path(args.out) / result.name).string();
    result.write_csv(base + "_trials.csv");
    result.write_summary_json(base + "_summary.json");
    for (const auto& [suffix, content] : result.extra_csv) {
        atomic_write_file(base + "_" + suffix + ".csv", content);
    }
    std::cout << "wrote " << base << "_trials.csv and " << base << "_summary.json\n";
    return 0;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
    std::uint64_t seed = kDefaultSeed;
    std::string system = "five-source";
    std::string families = "C1,C2";
    int mc_samples = 100000;
    int random_systems = 20;
    bool inject_gamma_fault = false;
};

struct CheckLog {
    int failures = 0;

    void record(const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        if (!pass) ++failures;
    }
};

JointCovariance random_validation_system(std::uint64_t seed, int index) {
    PhiloxRng rng(seed + static_cast<std::uint64_t>(index));
    const int d_t = 1 + static_cast<int>(rng.next_u64() % 3);
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(1 + static_cast<int>(rng.next_u64() % 2));
    int total = d_t;
    for (int d : dims) total += d;
    Eigen::MatrixXd a(total, total);
    for (int c = 0; c < total; ++c) {
        for (int r = 0; r < total; ++r) a(r, c) = rng.normal();
    }
    Eigen::MatrixXd sigma = (a * a.transpose()) / static_cast<double>(total);
    sigma.diagonal().array() += 0.5;
    return JointCovariance(BlockLayout(d_t, std::move(dims)), symmetrized(sigma));
}

SubsetFamily parse_family_spec(const std::string& spec, int num_sources) {
    if (spec.size() < 2 || (spec[0] != 'C' && spec[0] != 'U' && spec[0] != 'V')) {
        throw InputError("family spec '" + spec + "' should look like C2, U1 or V3");
    }
    int index = 0;
    try {
        index = std::stoi(spec.substr(1));
    } catch (const std::exception&) {
        throw InputError("cannot parse family spec '" + spec + "'");
    }
    switch (spec[0]) {
        case 'C': return SubsetFamily::all_subsets_of_size(num_sources, index);
        case 'U': return SubsetFamily::source_with_complement(num_sources, index);
        default: return SubsetFamily::complement_of(num_sources, index);
    }
}

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// Dual-path Psi with an optional injected sign flip on the off-diagonal
// blocks of Gamma (a mutation canary for the check itself). A mutated Gamma
// may stop being positive definite; that counts as an infinite gap rather
// than a hard error so the check reports FAIL.
double dual_path_gap(const JointCovariance& cov, const SubsetFamily& family, bool inject_fault) {
    Eigen::MatrixXd gamma = build_gamma(cov, family);
    if (inject_fault && family.size() > 1) {
        const BlockLayout& layout = cov.layout();
        for (int a = 0; a < family.size(); ++a) {
            const int off_a = family.block_offset(layout, a);
            const int dim_a = layout.subset_dim(family.subset(a));
            for (int b = 0; b < family.size(); ++b) {
                if (a == b) continue;
                const int off_b = family.block_offset(layout, b);
                const int dim_b = layout.subset_dim(family.subset(b));
                gamma.block(off_a, off_b, dim_a, dim_b) *= -1.0;
            }
        }
    }
    const Eigen::MatrixXd lambda = build_lambda(cov, family);
    try {
        const Eigen::MatrixXd psi_direct =
            schur_complement(cov.target_block(), lambda, gamma, "copy covariance");
        return relative_frobenius(psi_direct, psi_woodbury(cov, family));
    } catch (const NumericalFailure&) {
        if (!inject_fault) throw;
        return std::numeric_limits<double>::infinity();
    }
}

int cmd_validate(const ValidateArgs& args) {
    CheckLog log;

    const JointCovariance system = args.system == "random"
                                       ? random_validation_system(args.seed, 0)
                                       : named_system(args.system, 10, args.seed);
    const int n = system.layout().num_sources();

    std::vector<SubsetFamily> families;
    for (const auto& spec : split_list(args.families)) {
        families.push_back(parse_family_spec(spec, n));
    }

    // Dual-path equivalence on the chosen system and on random systems.
    {
        double worst = 0.0;
        for (const auto& family : families) {
            worst = std::max(worst, dual_path_gap(system, family, args.inject_gamma_fault));
        }
        for (int s = 0; s < args.random_systems; ++s) {
            const JointCovariance random_system = random_validation_system(args.seed, s);
            const int rn = random_system.layout().num_sources();
            for (int k = 1; k <= rn; ++k) {
                worst = std::max(
                    worst, dual_path_gap(random_system, SubsetFamily::all_subsets_of_size(rn, k),
                                         args.inject_gamma_fault));
            }
        }
        log.record("dual-path-psi", worst <= 1e-9,
                   "max relative Frobenius gap " + format_double(worst) + ", tolerance 1e-09");
    }

    // Gamma reconstruction from the generative parameters.
    {
        double worst = 0.0;
        for (const auto& family : families) {
            const GenerativeCopyModel model = generative_params(system, family);
            const Eigen::MatrixXd gamma = build_gamma(system, family);
            Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(gamma.rows(), gamma.cols());
            const Eigen::MatrixXd sigma_t = system.target_block();
            for (int a = 0; a < family.size(); ++a) {
                const int off_a = family.block_offset(system.layout(), a);
                const int dim_a = system.layout().subset_dim(family.subset(a));
                rebuilt.block(off_a, off_a, dim_a, dim_a) =
                    model.residual_covs[static_cast<std::size_t>(a)];
                for (int b = 0; b < family.size(); ++b) {
                    const int off_b = family.block_offset(system.layout(), b);
                    const int dim_b = system.layout().subset_dim(family.subset(b));
                    rebuilt.block(off_a, off_b, dim_a, dim_b) +=
                        model.coefficients[static_cast<std::size_t>(a)] * sigma_t *
                        model.coefficients[static_cast<std::size_t>(b)].transpose();
                }
            }
            worst = std::max(worst, (rebuilt - gamma).cwiseAbs().maxCoeff() /
                                        std::max(1.0, gamma.cwiseAbs().maxCoeff()));
        }
        log.record("gamma-reconstruction", worst <= 1e-10,
                   "max relative entry gap " + format_double(worst) + ", tolerance 1e-10");
    }

    // log det of the copy joint covariance splits as log det Gamma + log det Psi.
    {
        double worst = 0.0;
        for (const auto& family : families) {
            const AuxiliarySystem aux = psi_schur(system, family);
            const double whole = cholesky_logdet(copy_joint_covariance(system, family));
            const double split = cholesky_logdet(aux.gamma) + cholesky_logdet(aux.psi);
            worst = std::max(worst, std::abs(whole - split));
        }
        log.record("joint-logdet-split", worst <= 1e-10,
                   "max |gap| " + format_double(worst) + " nats, tolerance 1e-10");
    }

    // Monte-Carlo oracle against the closed form, dimension-scaled tolerance.
    for (const auto& family : families) {
        const int dim = system.layout().target_dim() + family.total_dim(system.layout());
        const double tol =
            5.0 * std::sqrt(static_cast<double>(dim) / static_cast<double>(args.mc_samples));
        const Eigen::MatrixXd closed = psi_schur(system, family).psi;
        const Eigen::MatrixXd sampled = mc_psi(system, family, args.mc_samples, args.seed + 17);
        const double gap = relative_frobenius(sampled, closed);
        log.record("mc-psi-" + family.to_string(), gap <= tol,
                   "relative Frobenius gap " + format_double(gap) + ", tolerance " +
                       format_double(tol) + " at " + std::to_string(args.mc_samples) +
                       " samples");
    }

    // Residual-ordering diagnostics across the spectrum orders.
    {
        bool consistent = true;
        std::string detail;
        for (int k = 2; k <= n; ++k) {
            const PsdOrderingDiagnostic diag = check_psd_ordering(system, k);
            if (diag.ordering_holds && diag.se_value < -1e-10) consistent = false;
            detail += (k > 2 ? " " : "") + std::string("se") + std::to_string(k) +
                      (diag.ordering_holds ? "(ordered," : "(unordered,") +
                      format_double(diag.se_value) + ")";
        }
        log.record("psd-ordering", consistent, detail);
    }

    // Telescoping of the spectrum against the endpoint form.
    {
        double worst = 0.0;
        for (int s = 0; s < args.random_systems; ++s) {
            const JointCovariance random_system = random_validation_system(args.seed + 1000, s);
            double total = 0.0;
            for (double se : synergy_spectrum(random_system)) total += se;
            worst = std::max(worst, std::abs(total - total_synergistic_effect(random_system)));
        }
        log.record("telescoping", worst <= 1e-10,
                   "max |sum(spectrum) - tse| " + format_double(worst) + " nats, tolerance 1e-10");
    }

    if (log.failures > 0) {
        std::cout << log.failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form Gaussian partial information decomposition"};
    app.require_subcommand(1);

    EstimateArgs estimate_args;
    auto* estimate = app.add_subcommand(
        "estimate", "Estimate information measures from a CSV of joint samples");
    estimate->add_option("--input", estimate_args.input, "CSV of samples, columns target-first")
        ->required()
        ->envname("GAUSSPID_INPUT");
    estimate->add_option("--layout", estimate_args.layout, "layout sidecar JSON")
        ->required()
        ->envname("GAUSSPID_LAYOUT");
    estimate
        ->add_option("--measures", estimate_args.measures,
                     "comma-separated subset of red,un,se,syn,tse,spectrum")
        ->envname("GAUSSPID_MEASURES");
    estimate->add_flag("--header", estimate_args.header, "input CSV has a header row")
        ->envname("GAUSSPID_HEADER");
    estimate->add_option("--ridge", estimate_args.ridge_lambda, "ridge parameter (lambda >= 0)")
        ->envname("GAUSSPID_RIDGE");
    estimate->add_option("--order", estimate_args.order, "order K for the 'se' measure")
        ->envname("GAUSSPID_ORDER");
    estimate->add_option("--subset", estimate_args.subset, "source subset for 'syn', e.g. 1,2")
        ->envname("GAUSSPID_SUBSET");
    estimate->add_option("--out", estimate_args.out, "output path (default stdout)")
        ->envname("GAUSSPID_OUT");
    estimate->add_option("--format", estimate_args.format, "json or csv")
        ->envname("GAUSSPID_FORMAT");
    estimate->add_option("--threads", estimate_args.threads, "worker threads (default: cores)")
        ->envname("GAUSSPID_THREADS");
    estimate->add_flag("--allow-large-spectrum", estimate_args.allow_large_spectrum,
                       "override the spectrum source cap")
        ->envname("GAUSSPID_ALLOW_LARGE_SPECTRUM");
    estimate->add_flag("--bits", estimate_args.bits, "report values in bits instead of nats")
        ->envname("GAUSSPID_BITS");

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Generate synthetic samples from a named system");
    sample->add_option("--system", sample_args.system,
                       "five-source, scaling, pure-redundancy, pure-unique, pure-synergy, "
                       "mixed-correlated or mixed-asymmetric")
        ->envname("GAUSSPID_SYSTEM");
    sample->add_option("--sources", sample_args.sources, "source count for --system scaling")
        ->envname("GAUSSPID_SOURCES");
    sample->add_option("--samples", sample_args.samples, "number of rows")
        ->envname("GAUSSPID_SAMPLES");
    sample->add_option("--seed", sample_args.seed, "generator seed")->envname("GAUSSPID_SEED");
    sample->add_option("--out", sample_args.out, "output CSV path")
        ->required()
        ->envname("GAUSSPID_OUT");
    sample->add_option("--layout-out", sample_args.layout_out, "write the layout sidecar here")
        ->envname("GAUSSPID_LAYOUT_OUT");
    sample->add_flag("--header", sample_args.header, "write a header row")
        ->envname("GAUSSPID_HEADER");

    BenchmarkArgs benchmark_args;
    auto* benchmark = app.add_subcommand("benchmark", "Run a reproduction experiment");
    benchmark
        ->add_option("experiment", benchmark_args.experiment,
                     "recovery, scaling, ridge, convergence or two-source")
        ->required();
    benchmark->add_option("--seed", benchmark_args.seed, "base seed")->envname("GAUSSPID_SEED");
    benchmark->add_option("--trials", benchmark_args.trials, "trial count (0 = default)")
        ->envname("GAUSSPID_TRIALS");
    benchmark->add_option("--samples", benchmark_args.samples, "samples per trial (0 = default)")
        ->envname("GAUSSPID_SAMPLES");
    benchmark
        ->add_option("--budget", benchmark_args.budget_seconds,
                     "per-method budget for the scaling study, seconds")
        ->envname("GAUSSPID_BUDGET");
    benchmark->add_option("--out", benchmark_args.out, "output directory")
        ->envname("GAUSSPID_OUT");
    benchmark->add_option("--threads", benchmark_args.threads, "worker threads (default: cores)")
        ->envname("GAUSSPID_THREADS");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand(
        "validate", "Cross-check the closed forms against independent evaluation paths");
    validate->add_option("--seed", validate_args.seed, "seed for random systems and the oracle")
        ->envname("GAUSSPID_SEED");
    validate->add_option("--system", validate_args.system,
                         "named system or 'random' (default five-source)")
        ->envname("GAUSSPID_SYSTEM");
    validate->add_option("--families", validate_args.families,
                         "families to check, e.g. C1,C2,U1,V2")
        ->envname("GAUSSPID_FAMILIES");
    validate->add_option("--mc-samples", validate_args.mc_samples, "Monte-Carlo sample count")
        ->envname("GAUSSPID_MC_SAMPLES");
    validate->add_option("--random-systems", validate_args.random_systems,
                         "number of random systems per property check")
        ->envname("GAUSSPID_RANDOM_SYSTEMS");
    validate->add_flag("--inject-gamma-fault", validate_args.inject_gamma_fault,
                       "flip the sign of the off-diagonal copy-covariance blocks; the "
                       "dual-path check must then fail (self-test of the validator)");

    try {
        app.parse(argc, argv);
        if (estimate->parsed()) return cmd_estimate(estimate_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (benchmark->parsed()) return cmd_benchmark(benchmark_args);
        if (validate->parsed()) return cmd_validate(validate_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
