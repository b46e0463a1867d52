// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gausspid/copy_identity.hpp"
#include "gausspid/experiments.hpp"
#include "gausspid/measures.hpp"
#include "gausspid/oracle.hpp"
#include "gausspid/samples.hpp"
#include "gausspid/stats.hpp"
#include "gausspid/systems.hpp"
#include "support/random_systems.hpp"
#include "support/transforms.hpp"

using namespace gausspid;
using namespace gausspid::testing;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double now_elapsed(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Wall time of fn, repeated until at least 20 ms total, averaged.
double timed_seconds(const std::function<void()>& fn) {
    fn();  // warm-up
    int repeats = 1;
    while (true) {
        const auto start = std::chrono::steady_clock::now();
        for (int i = 0; i < repeats; ++i) fn();
        const double total = now_elapsed(start);
        if (total >= 0.02) return total / repeats;
        repeats *= 4;
    }
}

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / b.norm();
}

// 1. Closed-form population values on the five-source benchmark, each within
//    5e-4 of the three-decimal reference; under one second.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const JointCovariance bench = five_source_benchmark();
    const auto spectrum = synergy_spectrum(bench);
    const double tse = total_synergistic_effect(bench);
    const double syn_pair = subset_narrow_synergy(bench, {1, 2});
    const double syn_triple = subset_narrow_synergy(bench, {3, 4, 5});
    const double elapsed = now_elapsed(start);

    double worst = 0.0;
    worst = std::max(worst, std::abs(spectrum[0] - 3.727));
    worst = std::max(worst, std::abs(spectrum[1] - 3.268));
    worst = std::max(worst, std::abs(tse - 6.443));
    worst = std::max(worst, std::abs(syn_pair - 3.140));
    worst = std::max(worst, std::abs(syn_triple - 2.853));

    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "population values (max |dev| %.2e <= 5e-04, %.3f s < 1 s)", worst, elapsed);
    report(1, worst <= 5e-4 && elapsed < 1.0, buffer);
}

// 2. Signed tail of the spectrum: SE4 in [0.29, 0.39], SE5 in [-0.95, -0.85].
void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    const auto spectrum = synergy_spectrum(five_source_benchmark());
    const double elapsed = now_elapsed(start);
    const bool pass = spectrum[2] >= 0.29 && spectrum[2] <= 0.39 && spectrum[3] >= -0.95 &&
                      spectrum[3] <= -0.85 && elapsed < 1.0;
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "spectrum signs (se4 %.4f in [0.29,0.39], se5 %.4f in [-0.95,-0.85], %.3f s)",
                  spectrum[2], spectrum[3], elapsed);
    report(2, pass, buffer);
}

// 3. Plug-in recovery over 50 trials of 1000 samples: every spectrum, pair
//    and triple mean within 3.3e-3 of population, all SDs below 0.047.
void criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentResult result = run_recovery({});
    const double elapsed = now_elapsed(start);
    const double max_dev = result.summary["max_abs_mean_error"].get<double>();
    const double max_sd = result.summary["max_sd"].get<double>();
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "plug-in recovery (max |mean dev| %.2e <= 3.3e-03, max sd %.4f < 0.047, "
                  "%.1f s < 60 s)",
                  max_dev, max_sd, elapsed);
    report(3, max_dev <= 3.3e-3 && max_sd < 0.047 && elapsed < 60.0, buffer);
}

// 4. Telescoping: the spectrum sums to the endpoint-form TSE on 50 random
//    systems with 2..8 sources.
void criterion_4() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const JointCovariance cov = random_system(seed, 2, 8);
        const auto spectrum = synergy_spectrum(cov);
        const double sum = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
        worst = std::max(worst, std::abs(sum - total_synergistic_effect(cov)));
    }
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "telescoping over 50 random systems (max |gap| %.2e <= 1e-10)", worst);
    report(4, worst <= 1e-10, buffer);
}

// 5. Structural properties on 50 random systems each: affine invariance,
//    permutation invariance/equivariance, additivity.
void criterion_5() {
    double worst_affine = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const JointCovariance cov = random_system(seed);
        PhiloxRng rng(seed * 977 + 3);
        const auto base = all_measures(cov);
        const auto moved = all_measures(blockwise_transform(cov, rng));
        for (std::size_t i = 0; i < base.size(); ++i) {
            worst_affine = std::max(worst_affine, std::abs(base[i] - moved[i]));
        }
    }

    double worst_perm = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const JointCovariance cov = random_system(seed);
        const int n = cov.layout().num_sources();
        PhiloxRng rng(seed + 555);
        const auto perm = random_permutation(rng, n);
        const JointCovariance relabeled = permute_sources(cov, perm);
        const auto spectrum = synergy_spectrum(cov);
        const auto spectrum_relabeled = synergy_spectrum(relabeled);
        for (std::size_t k = 0; k < spectrum.size(); ++k) {
            worst_perm = std::max(worst_perm, std::abs(spectrum[k] - spectrum_relabeled[k]));
        }
        worst_perm = std::max(worst_perm, std::abs(total_synergistic_effect(cov) -
                                                   total_synergistic_effect(relabeled)));
        for (int i = 1; i <= n; ++i) {
            worst_perm = std::max(
                worst_perm,
                std::abs(unique_information(relabeled, i) -
                         unique_information(cov, perm[static_cast<std::size_t>(i - 1)])));
        }
    }

    double worst_add = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        PhiloxRng rng(seed);
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        std::vector<int> dims_a, dims_b;
        for (int i = 0; i < n; ++i) {
            dims_a.push_back(1 + static_cast<int>(rng.next_u64() % 2));
            dims_b.push_back(1 + static_cast<int>(rng.next_u64() % 2));
        }
        const JointCovariance a = random_system_with_dims(seed * 2 + 1, 1, dims_a);
        const JointCovariance b = random_system_with_dims(seed * 2 + 2, 2, dims_b);
        const JointCovariance stacked = independent_stack(a, b);
        worst_add = std::max(worst_add,
                             std::abs(total_synergistic_effect(stacked) -
                                      (total_synergistic_effect(a) +
                                       total_synergistic_effect(b))));
        for (int i = 1; i <= n; ++i) {
            worst_add = std::max(worst_add, std::abs(unique_information(stacked, i) -
                                                     (unique_information(a, i) +
                                                      unique_information(b, i))));
        }
    }

    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "structural properties (affine %.2e <= 1e-08, permutation %.2e <= 1e-10, "
                  "additivity %.2e <= 1e-09)",
                  worst_affine, worst_perm, worst_add);
    report(5, worst_affine <= 1e-8 && worst_perm <= 1e-10 && worst_add <= 1e-9, buffer);
}

// 6. Oracle equivalence: direct vs structured Psi everywhere; Monte-Carlo
//    oracle at 1e5 samples on small systems.
void criterion_6() {
    double worst_dual = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const JointCovariance cov = random_system(seed);
        const int n = cov.layout().num_sources();
        for (int k = 1; k <= n; ++k) {
            const SubsetFamily family = SubsetFamily::all_subsets_of_size(n, k);
            worst_dual = std::max(worst_dual, relative_frobenius(psi_woodbury(cov, family),
                                                                 psi_schur(cov, family).psi));
        }
    }

    double worst_mc = 0.0;
    const JointCovariance bench = five_source_benchmark();  // total dimension 7
    for (int k : {1, 2}) {
        const SubsetFamily family = SubsetFamily::all_subsets_of_size(5, k);
        worst_mc = std::max(
            worst_mc, relative_frobenius(mc_psi(bench, family, 100000,
                                                1000 + static_cast<std::uint64_t>(k)),
                                         psi_schur(bench, family).psi));
    }
    for (std::uint64_t seed = 60; seed < 64; ++seed) {
        const JointCovariance cov = random_system(seed, 2, 4);  // total dimension <= 11
        const int n = cov.layout().num_sources();
        const SubsetFamily family = SubsetFamily::all_subsets_of_size(n, 2);
        worst_mc = std::max(worst_mc, relative_frobenius(mc_psi(cov, family, 100000, seed),
                                                         psi_schur(cov, family).psi));
    }

    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "oracle equivalence (dual-path %.2e <= 1e-09, monte-carlo %.3f <= 0.05)",
                  worst_dual, worst_mc);
    report(6, worst_dual <= 1e-9 && worst_mc <= 0.05, buffer);
}

// 7. Two-source grid: all five reference rows within 0.03 per cell.
void criterion_7() {
    const ExperimentResult result = run_two_source_grid({});
    const double worst = result.summary["max_abs_reference_error"].get<double>();
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "two-source reference grid (max |mean - reference| %.4f <= 0.03)", worst);
    report(7, worst <= 0.03, buffer);
}

// 8. Ridge guarantees: 1e-6 fixes every rank-deficient draw; unregularized
//    plug-in survives 50 trials at 10 samples; the ridge limit is continuous.
void criterion_8() {
    const JointCovariance bench = five_source_benchmark();

    int deficient_ok = 0, deficient_total = 0;
    for (int samples : {3, 4, 5, 6}) {
        for (int trial = 0; trial < 25; ++trial) {
            ++deficient_total;
            const JointCovariance estimate = empirical_covariance(sample_gaussian(
                bench, samples,
                9000 + static_cast<std::uint64_t>(samples) * 100 +
                    static_cast<std::uint64_t>(trial)));
            try {
                (void)total_synergistic_effect(ridge(estimate, 1e-6));
                ++deficient_ok;
            } catch (const NumericalFailure&) {
            }
        }
    }

    int bare_ok = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const JointCovariance estimate = empirical_covariance(
            sample_gaussian(bench, 10, 17000 + static_cast<std::uint64_t>(trial)));
        try {
            (void)total_synergistic_effect(estimate);
            ++bare_ok;
        } catch (const NumericalFailure&) {
        }
    }

    const double exact = total_synergistic_effect(bench);
    const double ridged = total_synergistic_effect(ridge(bench, 1e-8));
    const double limit_gap = std::abs(ridged - exact);

    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "ridge guarantees (ridged rank-deficient %d/%d, bare at 10 samples %d/50, "
                  "lambda-limit gap %.1e < 1e-04)",
                  deficient_ok, deficient_total, bare_ok, limit_gap);
    report(8, deficient_ok == deficient_total && bare_ok == 50 && limit_gap < 1e-4, buffer);
}

// 9. Desk-scale tractability: TSE plus every unique information at 300
//    sources under 5 s combined; the order-12 spectrum completes while the
//    order-15 one is refused; TSE growth is at most cubic.
void criterion_9() {
    const JointCovariance big =
        empirical_covariance(sample_gaussian(scaling_system(300, 21), 1000, 22));
    const auto start_big = std::chrono::steady_clock::now();
    (void)total_synergistic_effect(big);
    (void)all_unique_information(big, 1);
    const double combined = now_elapsed(start_big);

    const JointCovariance twelve =
        empirical_covariance(sample_gaussian(scaling_system(12, 23), 1000, 24));
    const auto start_twelve = std::chrono::steady_clock::now();
    const auto spectrum_twelve = synergy_spectrum(twelve);
    const double twelve_elapsed = now_elapsed(start_twelve);
    const bool twelve_ok = spectrum_twelve.size() == 11;

    bool fifteen_refused = false;
    const JointCovariance fifteen =
        empirical_covariance(sample_gaussian(scaling_system(15, 25), 1000, 26));
    try {
        (void)synergy_spectrum(fifteen);
    } catch (const InputError&) {
        fifteen_refused = true;
    }

    std::vector<double> sizes, times;
    for (int n : {50, 100, 200, 400}) {
        const JointCovariance estimate =
            empirical_covariance(sample_gaussian(scaling_system(n, 30), 1000, 31));
        sizes.push_back(n);
        times.push_back(timed_seconds([&] { (void)total_synergistic_effect(estimate); }));
    }
    const double slope = log_log_slope(sizes, times);

    char buffer[320];
    std::snprintf(buffer, sizeof(buffer),
                  "scalability (tse+un at 300 sources %.2f s < 5 s; 12-source spectrum done in "
                  "%.1f s, 15 refused: %s; tse growth slope %.2f <= 3.3)",
                  combined, twelve_elapsed, fifteen_refused ? "yes" : "no", slope);
    report(9, combined < 5.0 && twelve_ok && fifteen_refused && slope <= 3.3, buffer);
}

// 10. Convergence: TSE relative SD at 1e4 samples below 0.45% over 100
//     trials; SD decays at the parametric rate.
void criterion_10() {
    ConvergenceOptions options;  // defaults: grid 50..10000, 100 trials
    const ExperimentResult result = run_convergence(options);
    const double rel_sd = result.summary["by_samples"]["10000"]["tse"]["rel_sd"].get<double>();
    const double slope = result.summary["tse_sd_loglog_slope"].get<double>();
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "convergence (tse rel sd %.4f%% < 0.45%% at 1e4 samples; sd slope %.3f in "
                  "[-0.65,-0.35])",
                  rel_sd * 100.0, slope);
    report(10, rel_sd < 0.0045 && slope >= -0.65 && slope <= -0.35, buffer);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
