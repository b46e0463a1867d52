#include "gausspid/systems.hpp"

#include <utility>

#include "gausspid/rng.hpp"

namespace gausspid {

JointCovariance five_source_benchmark() {
    // Latent factors: t2, t3, u, v1, v2, one noise term per source.
    const int n_latent = 10;
    Eigen::VectorXd variances(n_latent);
    variances << 1.0, 1.0, 4.0, 4.0, 4.0, 0.0025, 0.0025, 0.0025, 0.0025, 0.0025;

    Eigen::MatrixXd loadings = Eigen::MatrixXd::Zero(7, n_latent);
    loadings(0, 0) = 1.0;                                            // T first coordinate = t2
    loadings(1, 1) = 1.0;                                            // T second coordinate = t3
    loadings.row(2) << 1, 0, 1, 0, 0, 1, 0, 0, 0, 0;                 // S1 = t2 + u + noise
    loadings.row(3) << 1, 0, -1, 0, 0, 0, 1, 0, 0, 0;                // S2 = t2 - u + noise
    loadings.row(4) << 0, 1, 0, 1, 0, 0, 0, 1, 0, 0;                 // S3 = t3 + v1 + noise
    loadings.row(5) << 0, 1, 0, 0, 1, 0, 0, 0, 1, 0;                 // S4 = t3 + v2 + noise
    loadings.row(6) << 0, 1, 0, -1, -1, 0, 0, 0, 0, 1;               // S5 = t3 - v1 - v2 + noise

    Eigen::MatrixXd sigma = loadings * variances.asDiagonal() * loadings.transpose();
    return JointCovariance(BlockLayout(2, {1, 1, 1, 1, 1}), symmetrized(sigma));
}

JointCovariance scaling_system(int num_sources, std::uint64_t seed) {
    if (num_sources < 2) {
        throw InputError("scaling system needs at least two sources");
    }
    const int dim = num_sources + 1;
    PhiloxRng rng(seed);
    Eigen::MatrixXd a(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            a(r, c) = rng.normal();
        }
    }
    Eigen::MatrixXd sigma = (a * a.transpose()) / static_cast<double>(num_sources);
    sigma.diagonal().array() += 0.5;
    return JointCovariance(BlockLayout(1, std::vector<int>(static_cast<std::size_t>(num_sources), 1)),
                           symmetrized(sigma));
}

const std::array<TwoSourceConfig, 5>& all_two_source_configs() {
    static const std::array<TwoSourceConfig, 5> configs = {
        TwoSourceConfig::pure_redundancy, TwoSourceConfig::pure_unique,
        TwoSourceConfig::pure_synergy, TwoSourceConfig::mixed_correlated,
        TwoSourceConfig::mixed_asymmetric};
    return configs;
}

std::string to_string(TwoSourceConfig config) {
    switch (config) {
        case TwoSourceConfig::pure_redundancy: return "pure-redundancy";
        case TwoSourceConfig::pure_unique: return "pure-unique";
        case TwoSourceConfig::pure_synergy: return "pure-synergy";
        case TwoSourceConfig::mixed_correlated: return "mixed-correlated";
        case TwoSourceConfig::mixed_asymmetric: return "mixed-asymmetric";
    }
    return "?";
}

TwoSourceConfig two_source_config_from_name(const std::string& name) {
    for (TwoSourceConfig config : all_two_source_configs()) {
        if (to_string(config) == name) return config;
    }
    throw InputError("unknown two-source configuration '" + name +
                     "'; expected one of pure-redundancy, pure-unique, pure-synergy, "
                     "mixed-correlated, mixed-asymmetric");
}

JointCovariance two_source_configuration(TwoSourceConfig config) {
    Eigen::MatrixXd sigma(3, 3);
    switch (config) {
        case TwoSourceConfig::pure_redundancy:
            // S_i = T + eps_i with T ~ N(0,1) and unit noise.
            sigma << 1, 1, 1,
                     1, 2, 1,
                     1, 1, 2;
            break;
        case TwoSourceConfig::pure_unique:
            // T = S_1 + eps; S_2 independent of everything.
            sigma << 2, 1, 0,
                     1, 1, 0,
                     0, 0, 1;
            break;
        case TwoSourceConfig::pure_synergy:
            // T = S_1 + S_2 + eps with independent unit-variance sources.
            sigma << 3, 1, 1,
                     1, 1, 0,
                     1, 0, 1;
            break;
        case TwoSourceConfig::mixed_correlated:
            // As pure synergy with Corr(S_1, S_2) = 0.3.
            sigma << 3.6, 1.3, 1.3,
                     1.3, 1.0, 0.3,
                     1.3, 0.3, 1.0;
            break;
        case TwoSourceConfig::mixed_asymmetric:
            // T = 2 S_1 + S_2 + eps.
            sigma << 6, 2, 1,
                     2, 1, 0,
                     1, 0, 1;
            break;
    }
    return JointCovariance(BlockLayout(1, {1, 1}), std::move(sigma));
}

}  // namespace gausspid
