#pragma once

#include <cstdint>
#include <vector>

#include "gausspid/covariance.hpp"
#include "gausspid/rng.hpp"

namespace gausspid::testing {

// Well-conditioned random PD system with the given block dimensions:
// A A^T / total + 0.5 I over all coordinates.
inline JointCovariance random_system_with_dims(std::uint64_t seed, int target_dim,
                                               std::vector<int> source_dims) {
    PhiloxRng rng(seed);
    int total = target_dim;
    for (int d : source_dims) total += d;
    Eigen::MatrixXd a(total, total);
    for (int c = 0; c < total; ++c) {
        for (int r = 0; r < total; ++r) a(r, c) = rng.normal();
    }
    Eigen::MatrixXd sigma = (a * a.transpose()) / static_cast<double>(total);
    sigma.diagonal().array() += 0.5;
    return JointCovariance(BlockLayout(target_dim, std::move(source_dims)),
                           symmetrized(sigma));
}

// Random dimensions too: d_T in 1..3, N in [min_sources, max_sources],
// source dims in 1..2.
inline JointCovariance random_system(std::uint64_t seed, int min_sources = 2,
                                     int max_sources = 5) {
    PhiloxRng rng(seed);
    const int d_t = 1 + static_cast<int>(rng.next_u64() % 3);
    const int n =
        min_sources + static_cast<int>(rng.next_u64() %
                                       static_cast<std::uint64_t>(max_sources - min_sources + 1));
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(1 + static_cast<int>(rng.next_u64() % 2));
    return random_system_with_dims(seed + 0x9e3779b9, d_t, std::move(dims));
}

}  // namespace gausspid::testing
