#include "gausspid/oracle.hpp"

#include <utility>

#include "gausspid/measures.hpp"
#include "gausspid/rng.hpp"
#include "gausspid/samples.hpp"

namespace gausspid {

GenerativeCopyModel generative_params(const JointCovariance& cov, const SubsetFamily& family) {
    if (family.num_sources() != cov.layout().num_sources()) {
        throw InputError("family built for " + std::to_string(family.num_sources()) +
                         " sources applied to a layout with " +
                         std::to_string(cov.layout().num_sources()));
    }
    const Cholesky chol_t(cov.target_block(), "target block");
    GenerativeCopyModel model{family, {}, {}};
    model.coefficients.reserve(static_cast<std::size_t>(family.size()));
    model.residual_covs.reserve(static_cast<std::size_t>(family.size()));
    for (int a = 0; a < family.size(); ++a) {
        const SourceSubset& subset = family.subset(a);
        const Eigen::MatrixXd cross = cov.cross_target(subset);  // Sigma_{A T}
        model.coefficients.push_back(chol_t.solve(cross.transpose()).transpose());
        model.residual_covs.push_back(schur_complement(
            cov.source_block(subset, subset), cross.transpose(), cov.target_block(),
            "residual covariance of subset " + subset_to_string(subset)));
    }
    return model;
}

Eigen::MatrixXd mc_psi(const JointCovariance& cov, const SubsetFamily& family, int samples,
                       std::uint64_t seed) {
    const BlockLayout& layout = cov.layout();
    const int d_t = layout.target_dim();
    const int d_y = family.total_dim(layout);
    if (samples < d_t + d_y + 2) {
        throw InputError("Monte-Carlo conditional covariance needs at least dim + 2 samples");
    }

    const GenerativeCopyModel model = generative_params(cov, family);
    const Cholesky chol_t(cov.target_block(), "target block");
    const Eigen::MatrixXd root_t = chol_t.factor().triangularView<Eigen::Lower>();
    std::vector<Eigen::MatrixXd> residual_roots;
    residual_roots.reserve(model.residual_covs.size());
    for (std::size_t a = 0; a < model.residual_covs.size(); ++a) {
        const Cholesky chol_d(model.residual_covs[a],
                              "residual covariance of subset " +
                                  subset_to_string(family.subset(a)));
        residual_roots.emplace_back(chol_d.factor().triangularView<Eigen::Lower>());
    }

    // Draw (T, Y): T = L_T z, then block a of Y is B_a T + L_{Delta_a} z_a.
    PhiloxRng rng(seed);
    Eigen::MatrixXd joint(samples, d_t + d_y);
    Eigen::VectorXd z_t(d_t);
    for (int r = 0; r < samples; ++r) {
        for (int j = 0; j < d_t; ++j) z_t(j) = rng.normal();
        const Eigen::VectorXd target = root_t * z_t;
        joint.row(r).head(d_t) = target.transpose();
        int offset = d_t;
        for (std::size_t a = 0; a < residual_roots.size(); ++a) {
            const int block_dim = static_cast<int>(residual_roots[a].rows());
            Eigen::VectorXd z_block(block_dim);
            for (int j = 0; j < block_dim; ++j) z_block(j) = rng.normal();
            joint.row(r).segment(offset, block_dim) =
                (model.coefficients[a] * target + residual_roots[a] * z_block).transpose();
            offset += block_dim;
        }
    }

    // Empirical conditional covariance of T given Y (empirical Schur form).
    const Eigen::RowVectorXd means = joint.colwise().mean();
    const Eigen::MatrixXd centered = joint.rowwise() - means;
    Eigen::MatrixXd cov_hat(d_t + d_y, d_t + d_y);
    cov_hat.noalias() = centered.transpose() * centered;
    cov_hat /= static_cast<double>(samples - 1);
    cov_hat = symmetrized(cov_hat);

    Eigen::MatrixXd copies_block = cov_hat.bottomRightCorner(d_y, d_y);
    const auto factored = Cholesky::try_factor_in_place(std::move(copies_block));
    if (!factored.has_value()) {
        throw NumericalFailure(
            "empirical copy covariance is singular; increase the sample count or add a ridge");
    }
    const Eigen::MatrixXd half = factored->solve_lower(cov_hat.bottomLeftCorner(d_y, d_t));
    Eigen::MatrixXd psi_hat = cov_hat.topLeftCorner(d_t, d_t);
    psi_hat.noalias() -= half.transpose() * half;
    return symmetrized(psi_hat);
}

PsdOrderingDiagnostic check_psd_ordering(const JointCovariance& cov, int order) {
    const int n = cov.layout().num_sources();
    if (order < 2 || order > n) {
        throw InputError("ordering diagnostic order " + std::to_string(order) +
                         " out of range 2.." + std::to_string(n));
    }
    const Eigen::MatrixXd psi_below =
        psi_matrix(cov, SubsetFamily::all_subsets_of_size(n, order - 1));
    const Eigen::MatrixXd psi_at = psi_matrix(cov, SubsetFamily::all_subsets_of_size(n, order));

    // PSD via Cholesky with a tiny scale-relative shift so the boundary
    // (difference exactly zero) counts as ordered.
    Eigen::MatrixXd difference = psi_below - psi_at;
    const double shift = 1e-12 * std::max(1.0, psi_below.cwiseAbs().maxCoeff());
    difference.diagonal().array() += shift;
    const bool holds = cholesky_factor_in_place(difference) < 0;

    const double se_value =
        0.5 * (cholesky_logdet(psi_below, "conditional covariance") -
               cholesky_logdet(psi_at, "conditional covariance"));
    return PsdOrderingDiagnostic{order, holds, se_value};
}

}  // namespace gausspid
