#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gausspid/covariance.hpp"

namespace gausspid {

/// Five scalar sources around a two-dimensional target, built by linear
/// noise cancellation: with independent t2, t3 ~ N(0,1), u, v1, v2 of
/// standard deviation 2 and measurement noise of standard deviation 0.05,
///   S1 = t2 + u,        S2 = t2 - u,
///   S3 = t3 + v1,       S4 = t3 + v2,   S5 = t3 - v1 - v2,
/// each plus its own noise, and T = (t2, t3). The pair {1,2} and the triple
/// {3,4,5} carry the dominant second- and third-order synergies. The
/// covariance is assembled in closed form from this construction.
JointCovariance five_source_benchmark();

/// N scalar sources plus a scalar target, drawn as the (N+1)-dimensional
/// covariance (1/N) A A^T + 0.5 I with i.i.d. standard-normal A; the offset
/// bounds the condition number, so the matrix is PD for every seed. The
/// first coordinate is the target.
JointCovariance scaling_system(int num_sources, std::uint64_t seed);

/// The five controlled two-source configurations, all with unit-variance
/// noise terms. Covariances are assembled in closed form.
enum class TwoSourceConfig {
    pure_redundancy,   // S_i = T + eps_i, T ~ N(0,1)
    pure_unique,       // T = S_1 + eps,   S_2 independent of T
    pure_synergy,      // T = S_1 + S_2 + eps, S_1 indep S_2
    mixed_correlated,  // pure_synergy with Corr(S_1, S_2) = 0.3
    mixed_asymmetric,  // T = 2 S_1 + S_2 + eps
};

const std::array<TwoSourceConfig, 5>& all_two_source_configs();
std::string to_string(TwoSourceConfig config);
TwoSourceConfig two_source_config_from_name(const std::string& name);

JointCovariance two_source_configuration(TwoSourceConfig config);

}  // namespace gausspid
