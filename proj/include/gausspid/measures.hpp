#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gausspid/covariance.hpp"

namespace gausspid {

/// Two-source redundancy, in nats:
///   1/2 log( det Sigma_11 det Sigma_22 / det Gamma_{U_1} ).
/// Defined for exactly two sources; always nonnegative.
double redundancy_two_source(const JointCovariance& cov);

/// Unique information of source i given the rest, in nats:
///   1/2 log( det Psi_{V_i} / det Psi_{U_i} ).
/// Nonnegative. `source` is 1-based; requires at least two sources.
double unique_information(const JointCovariance& cov, int source);

/// Unique information for every source. Evaluations are independent and run
/// on up to `threads` threads.
std::vector<double> all_unique_information(const JointCovariance& cov, int threads = 1);

/// K-th order synergistic effect, in nats:
///   1/2 log( det Psi_{C_{K-1}} / det Psi_{C_K} ),  2 <= K <= N.
/// Signed: the order families are not nested, so negative values are
/// legitimate and reported as-is.
double synergistic_effect(const JointCovariance& cov, int order);

/// Narrow synergy Syn = SE_N: information available only from all sources
/// jointly. Signed.
double narrow_synergy(const JointCovariance& cov);

/// Narrow synergy of a source subset (size >= 2): the covariance is
/// restricted to (T, subset) and Syn is computed at the top order of the
/// restricted system.
double subset_narrow_synergy(const JointCovariance& cov, const SourceSubset& subset);

/// Total synergistic effect, in nats:
///   1/2 log( det Psi_{C_1} / det Psi_{C_N} ).
/// Evaluated from the two endpoint families directly; never by summing the
/// spectrum. Signed.
double total_synergistic_effect(const JointCovariance& cov);

struct SpectrumOptions {
    /// The spectrum is refused for num_sources >= source_cap unless
    /// allow_large is set: the combinatorial cost explodes around K = N/2.
    int source_cap = 15;
    bool allow_large = false;
    /// Per-order evaluations are independent; run on up to this many threads.
    int threads = 1;
};

/// The synergy spectrum (SE_2, ..., SE_N). Each log det Psi_{C_K} is
/// evaluated once and shared between adjacent ratios.
std::vector<double> synergy_spectrum(const JointCovariance& cov,
                                     const SpectrumOptions& options = {});

enum class MeasureKind {
    redundancy,
    unique_information,
    synergistic_effect,
    narrow_synergy,
    total_synergistic_effect,
    spectrum,
};

std::string to_string(MeasureKind kind);
std::optional<MeasureKind> measure_kind_from_name(const std::string& name);

struct MeasureRequest {
    MeasureKind kind = MeasureKind::total_synergistic_effect;
    int order = 0;                       // synergistic_effect: the K to evaluate
    int source = 0;                      // unique_information: 1-based, 0 = all sources
    std::optional<SourceSubset> subset;  // narrow_synergy: optional restriction
};

/// Named measure values in nats plus estimation metadata.
struct MeasureReport {
    std::string measure;
    std::vector<std::string> labels;  // one per value, e.g. "un1" or "se2"
    std::vector<double> values;
    bool signed_measure = false;  // synergistic effects may be negative
    double lambda = 0.0;          // ridge used; 0 = none
    int target_dim = 0;
    std::vector<int> source_dims;
    int threads = 1;
    double wall_seconds = 0.0;
};

/// Evaluates a measure on ridge(cov, lambda). lambda == 0 delegates to the
/// unregularized path on the input covariance itself, bit for bit; a
/// NumericalFailure raised there is rethrown with advice to retry with a
/// positive ridge.
MeasureReport estimate_with_ridge(const JointCovariance& cov, double lambda,
                                  const MeasureRequest& request, int threads = 1);

}  // namespace gausspid
