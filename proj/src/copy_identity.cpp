#include "gausspid/copy_identity.hpp"

#include <utility>
#include <vector>

namespace gausspid {
namespace {

void check_family(const JointCovariance& cov, const SubsetFamily& family) {
    if (family.num_sources() != cov.layout().num_sources()) {
        throw InputError("family built for " + std::to_string(family.num_sources()) +
                         " sources applied to a layout with " +
                         std::to_string(cov.layout().num_sources()));
    }
}

// Source-coordinate indices (relative to the start of the source section)
// for every subset block of the family.
std::vector<std::vector<int>> family_source_indices(const BlockLayout& layout,
                                                    const SubsetFamily& family) {
    std::vector<std::vector<int>> result;
    result.reserve(static_cast<std::size_t>(family.size()));
    for (const auto& subset : family.subsets()) {
        auto idx = layout.subset_indices(subset);
        for (int& v : idx) v -= layout.target_dim();
        result.push_back(std::move(idx));
    }
    return result;
}

// Through-target coupling over all source coordinates:
//   H = Sigma_{S T} Sigma_T^{-1} Sigma_{T S},
// symmetrized exactly. One Cholesky solve against Sigma_T serves every
// off-diagonal block of Gamma.
Eigen::MatrixXd through_target_matrix(const JointCovariance& cov) {
    const int d_t = cov.layout().target_dim();
    const int n_src = cov.layout().total_dim() - d_t;
    const Eigen::MatrixXd cross = cov.matrix().bottomLeftCorner(n_src, d_t);  // Sigma_{S T}
    const Cholesky chol_t(cov.target_block(), "target block");
    const Eigen::MatrixXd half = chol_t.solve_lower(cross.transpose());  // L^{-1} Sigma_{T S}
    Eigen::MatrixXd h(n_src, n_src);
    h.noalias() = half.transpose() * half;
    return symmetrized(h);
}

struct GammaLambda {
    Eigen::MatrixXd gamma;
    Eigen::MatrixXd lambda;
};

GammaLambda build_gamma_lambda(const JointCovariance& cov, const SubsetFamily& family) {
    check_family(cov, family);
    const BlockLayout& layout = cov.layout();
    const int d_t = layout.target_dim();
    const int total = family.total_dim(layout);
    const auto blocks = family_source_indices(layout, family);
    const int m = family.size();

    std::vector<int> offsets(static_cast<std::size_t>(m));
    for (int a = 0, off = 0; a < m; ++a) {
        offsets[static_cast<std::size_t>(a)] = off;
        off += static_cast<int>(blocks[static_cast<std::size_t>(a)].size());
    }

    const Eigen::MatrixXd& sigma = cov.matrix();
    GammaLambda out{Eigen::MatrixXd(total, total), Eigen::MatrixXd(total, d_t)};

    for (int a = 0; a < m; ++a) {
        const auto& rows = blocks[static_cast<std::size_t>(a)];
        const int off = offsets[static_cast<std::size_t>(a)];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (int c = 0; c < d_t; ++c) {
                out.lambda(off + static_cast<int>(r), c) = sigma(d_t + rows[r], c);
            }
        }
    }

    // Diagonal blocks come straight from Sigma; a single-subset family needs
    // no through-target coupling at all.
    const Eigen::MatrixXd h = (m > 1) ? through_target_matrix(cov) : Eigen::MatrixXd();
    for (int a = 0; a < m; ++a) {
        const auto& rows = blocks[static_cast<std::size_t>(a)];
        const int row_off = offsets[static_cast<std::size_t>(a)];
        for (int b = 0; b < m; ++b) {
            const auto& cols = blocks[static_cast<std::size_t>(b)];
            const int col_off = offsets[static_cast<std::size_t>(b)];
            const Eigen::MatrixXd& src = (a == b) ? sigma : h;
            const int shift = (a == b) ? layout.target_dim() : 0;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    out.gamma(row_off + static_cast<int>(r), col_off + static_cast<int>(c)) =
                        src(shift + rows[r], shift + cols[c]);
                }
            }
        }
    }
    return out;
}

// Psi from an assembled (gamma, lambda) pair, factoring gamma in place. The
// arithmetic mirrors schur_complement() exactly so that single-block
// families reproduce schur_conditional bit for bit.
Eigen::MatrixXd psi_in_place(const JointCovariance& cov, const SubsetFamily& family,
                             Eigen::MatrixXd&& gamma, const Eigen::MatrixXd& lambda,
                             double* log_det_gamma = nullptr) {
    const int bad = cholesky_factor_in_place(gamma);
    if (bad >= 0) {
        throw NumericalFailure("copy covariance for family " + family.to_string() +
                                   " not positive definite (pivot " + std::to_string(bad) + ")",
                               bad);
    }
    if (log_det_gamma != nullptr) {
        *log_det_gamma = 2.0 * gamma.diagonal().array().log().sum();
    }
    Eigen::MatrixXd half = lambda;
    gamma.triangularView<Eigen::Lower>().solveInPlace(half);
    Eigen::MatrixXd psi = cov.target_block();
    psi.noalias() -= half.transpose() * half;
    return symmetrized(psi);
}

}  // namespace

Eigen::MatrixXd build_lambda(const JointCovariance& cov, const SubsetFamily& family) {
    return build_gamma_lambda(cov, family).lambda;
}

Eigen::MatrixXd build_gamma(const JointCovariance& cov, const SubsetFamily& family) {
    return build_gamma_lambda(cov, family).gamma;
}

AuxiliarySystem psi_schur(const JointCovariance& cov, const SubsetFamily& family) {
    GammaLambda gl = build_gamma_lambda(cov, family);
    Eigen::MatrixXd gamma_copy = gl.gamma;
    Eigen::MatrixXd psi = psi_in_place(cov, family, std::move(gamma_copy), gl.lambda);
    return AuxiliarySystem{family, std::move(gl.lambda), std::move(gl.gamma), std::move(psi)};
}

Eigen::MatrixXd psi_matrix(const JointCovariance& cov, const SubsetFamily& family) {
    GammaLambda gl = build_gamma_lambda(cov, family);
    return psi_in_place(cov, family, std::move(gl.gamma), gl.lambda);
}

double psi_log_det(const JointCovariance& cov, const SubsetFamily& family) {
    return cholesky_logdet(psi_matrix(cov, family),
                           "conditional covariance for family " + family.to_string());
}

Eigen::MatrixXd psi_woodbury(const JointCovariance& cov, const SubsetFamily& family) {
    check_family(cov, family);
    const int d_t = cov.layout().target_dim();
    const Cholesky chol_t(cov.target_block(), "target block");
    Eigen::MatrixXd precision =
        chol_t.solve(Eigen::MatrixXd::Identity(d_t, d_t));  // Sigma_T^{-1}

    for (int a = 0; a < family.size(); ++a) {
        const SourceSubset& subset = family.subset(a);
        const Eigen::MatrixXd cross = cov.cross_target(subset);  // Sigma_{A T}
        const Eigen::MatrixXd coeff =
            chol_t.solve(cross.transpose()).transpose();  // B_a = Sigma_{A T} Sigma_T^{-1}
        const Eigen::MatrixXd delta = schur_complement(
            cov.source_block(subset, subset), cross.transpose(), cov.target_block(),
            "residual covariance of subset " + subset_to_string(subset));
        const Cholesky chol_d(delta, "residual covariance of subset " + subset_to_string(subset));
        const Eigen::MatrixXd half = chol_d.solve_lower(coeff);
        precision.noalias() += half.transpose() * half;
    }
    const Cholesky chol_p(symmetrized(precision), "copy precision");
    return symmetrized(chol_p.solve(Eigen::MatrixXd::Identity(d_t, d_t)));
}

Eigen::MatrixXd copy_joint_covariance(const JointCovariance& cov, const SubsetFamily& family) {
    GammaLambda gl = build_gamma_lambda(cov, family);
    const int d_t = cov.layout().target_dim();
    const int total = static_cast<int>(gl.gamma.rows());
    Eigen::MatrixXd joint(d_t + total, d_t + total);
    joint.topLeftCorner(d_t, d_t) = cov.target_block();
    joint.topRightCorner(d_t, total) = gl.lambda.transpose();
    joint.bottomLeftCorner(total, d_t) = gl.lambda;
    joint.bottomRightCorner(total, total) = gl.gamma;
    return joint;
}

}  // namespace gausspid
