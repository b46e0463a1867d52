#include "gausspid/measures.hpp"

#include <chrono>
#include <utility>

#include "gausspid/concurrency.hpp"
#include "gausspid/copy_identity.hpp"

namespace gausspid {
namespace {

void require_sources(const JointCovariance& cov, int minimum, const char* what) {
    if (cov.layout().num_sources() < minimum) {
        throw InputError(std::string(what) + " needs at least " + std::to_string(minimum) +
                         " sources");
    }
}

}  // namespace

double redundancy_two_source(const JointCovariance& cov) {
    if (cov.layout().num_sources() != 2) {
        throw InputError("redundancy is defined for exactly two sources (layout has " +
                         std::to_string(cov.layout().num_sources()) + ")");
    }
    const double ld_s1 = cholesky_logdet(cov.source_block({1}, {1}), "marginal of source 1");
    const double ld_s2 = cholesky_logdet(cov.source_block({2}, {2}), "marginal of source 2");
    const SubsetFamily both = SubsetFamily::source_with_complement(2, 1);
    const double ld_gamma =
        cholesky_logdet(build_gamma(cov, both), "copy covariance for family " + both.to_string());
    return 0.5 * (ld_s1 + ld_s2 - ld_gamma);
}

double unique_information(const JointCovariance& cov, int source) {
    require_sources(cov, 2, "unique information");
    const int n = cov.layout().num_sources();
    if (source < 1 || source > n) {
        throw InputError("source index " + std::to_string(source) + " out of range 1.." +
                         std::to_string(n));
    }
    const double ld_without = psi_log_det(cov, SubsetFamily::complement_of(n, source));
    const double ld_with = psi_log_det(cov, SubsetFamily::source_with_complement(n, source));
    return 0.5 * (ld_without - ld_with);
}

std::vector<double> all_unique_information(const JointCovariance& cov, int threads) {
    require_sources(cov, 2, "unique information");
    const int n = cov.layout().num_sources();
    std::vector<double> result(static_cast<std::size_t>(n));
    parallel_for(0, n, threads,
                 [&](int i) { result[static_cast<std::size_t>(i)] = unique_information(cov, i + 1); });
    return result;
}

double synergistic_effect(const JointCovariance& cov, int order) {
    require_sources(cov, 2, "synergistic effect");
    const int n = cov.layout().num_sources();
    if (order < 2 || order > n) {
        throw InputError("synergistic-effect order " + std::to_string(order) +
                         " out of range 2.." + std::to_string(n));
    }
    const double ld_below = psi_log_det(cov, SubsetFamily::all_subsets_of_size(n, order - 1));
    const double ld_at = psi_log_det(cov, SubsetFamily::all_subsets_of_size(n, order));
    return 0.5 * (ld_below - ld_at);
}

double narrow_synergy(const JointCovariance& cov) {
    return synergistic_effect(cov, cov.layout().num_sources());
}

double subset_narrow_synergy(const JointCovariance& cov, const SourceSubset& subset) {
    const SourceSubset kept = canonical_subset(subset, cov.layout().num_sources());
    if (kept.size() < 2) {
        throw InputError("subset narrow synergy needs a subset of at least two sources");
    }
    return narrow_synergy(cov.restricted_to(kept));
}

double total_synergistic_effect(const JointCovariance& cov) {
    require_sources(cov, 2, "total synergistic effect");
    const int n = cov.layout().num_sources();
    const double ld_first = psi_log_det(cov, SubsetFamily::all_subsets_of_size(n, 1));
    const double ld_last = psi_log_det(cov, SubsetFamily::all_subsets_of_size(n, n));
    return 0.5 * (ld_first - ld_last);
}

std::vector<double> synergy_spectrum(const JointCovariance& cov, const SpectrumOptions& options) {
    require_sources(cov, 2, "synergy spectrum");
    const int n = cov.layout().num_sources();
    if (n >= options.source_cap && !options.allow_large) {
        throw InputError("synergy spectrum over " + std::to_string(n) +
                         " sources exceeds the cap of " + std::to_string(options.source_cap) +
                         "; the cost explodes combinatorially around order N/2. Pass the "
                         "allow-large override to run it anyway");
    }
    std::vector<double> log_dets(static_cast<std::size_t>(n));
    parallel_for(1, n + 1, options.threads, [&](int k) {
        log_dets[static_cast<std::size_t>(k - 1)] =
            psi_log_det(cov, SubsetFamily::all_subsets_of_size(n, k));
    });
    std::vector<double> spectrum(static_cast<std::size_t>(n - 1));
    for (int k = 2; k <= n; ++k) {
        spectrum[static_cast<std::size_t>(k - 2)] =
            0.5 * (log_dets[static_cast<std::size_t>(k - 2)] -
                   log_dets[static_cast<std::size_t>(k - 1)]);
    }
    return spectrum;
}

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::redundancy: return "red";
        case MeasureKind::unique_information: return "un";
        case MeasureKind::synergistic_effect: return "se";
        case MeasureKind::narrow_synergy: return "syn";
        case MeasureKind::total_synergistic_effect: return "tse";
        case MeasureKind::spectrum: return "spectrum";
    }
    return "?";
}

std::optional<MeasureKind> measure_kind_from_name(const std::string& name) {
    if (name == "red") return MeasureKind::redundancy;
    if (name == "un") return MeasureKind::unique_information;
    if (name == "se") return MeasureKind::synergistic_effect;
    if (name == "syn") return MeasureKind::narrow_synergy;
    if (name == "tse") return MeasureKind::total_synergistic_effect;
    if (name == "spectrum") return MeasureKind::spectrum;
    return std::nullopt;
}

MeasureReport estimate_with_ridge(const JointCovariance& cov, double lambda,
                                  const MeasureRequest& request, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const JointCovariance work = ridge(cov, lambda);

    MeasureReport report;
    report.measure = to_string(request.kind);
    report.lambda = lambda;
    report.target_dim = work.layout().target_dim();
    report.source_dims = work.layout().source_dims();
    report.threads = threads;

    try {
        switch (request.kind) {
            case MeasureKind::redundancy:
                report.labels = {"red"};
                report.values = {redundancy_two_source(work)};
                break;
            case MeasureKind::unique_information:
                if (request.source > 0) {
                    report.labels = {"un" + std::to_string(request.source)};
                    report.values = {unique_information(work, request.source)};
                } else {
                    report.values = all_unique_information(work, threads);
                    for (std::size_t i = 0; i < report.values.size(); ++i) {
                        report.labels.push_back("un" + std::to_string(i + 1));
                    }
                }
                break;
            case MeasureKind::synergistic_effect:
                report.signed_measure = true;
                report.labels = {"se" + std::to_string(request.order)};
                report.values = {synergistic_effect(work, request.order)};
                break;
            case MeasureKind::narrow_synergy:
                report.signed_measure = true;
                if (request.subset.has_value()) {
                    report.labels = {"syn" + subset_to_string(*request.subset)};
                    report.values = {subset_narrow_synergy(work, *request.subset)};
                } else {
                    report.labels = {"syn"};
                    report.values = {narrow_synergy(work)};
                }
                break;
            case MeasureKind::total_synergistic_effect:
                report.signed_measure = true;
                report.labels = {"tse"};
                report.values = {total_synergistic_effect(work)};
                break;
            case MeasureKind::spectrum: {
                report.signed_measure = true;
                SpectrumOptions options;
                options.threads = threads;
                report.values = synergy_spectrum(work, options);
                for (std::size_t k = 0; k < report.values.size(); ++k) {
                    report.labels.push_back("se" + std::to_string(k + 2));
                }
                break;
            }
        }
    } catch (const NumericalFailure& failure) {
        if (lambda == 0.0) {
            throw NumericalFailure(std::string(failure.what()) +
                                       "; retry with a positive ridge parameter",
                                   failure.pivot_index());
        }
        throw;
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace gausspid
