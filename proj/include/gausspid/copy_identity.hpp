#pragma once

#include <Eigen/Dense>

#include "gausspid/covariance.hpp"

namespace gausspid {

/// The auxiliary matrices of the conditional-copy construction for one
/// subset family: Lambda stacks the source-target cross blocks, Gamma is the
/// covariance of the stacked copy vector, Psi = Cov(T | copies).
struct AuxiliarySystem {
    SubsetFamily family;
    Eigen::MatrixXd lambda;  // D_A x d_T
    Eigen::MatrixXd gamma;   // D_A x D_A, symmetric PD
    Eigen::MatrixXd psi;     // d_T x d_T, symmetric PD
};

/// Row block a equals Sigma_{A_a T}, in family order.
Eigen::MatrixXd build_lambda(const JointCovariance& cov, const SubsetFamily& family);

/// Diagonal block (a,a) is Sigma_{A_a A_a}; off-diagonal block (a,b) is
/// Sigma_{A_a T} Sigma_T^{-1} Sigma_{T A_b}. One Cholesky solve against
/// Sigma_T is shared across all pairs.
Eigen::MatrixXd build_gamma(const JointCovariance& cov, const SubsetFamily& family);

/// Psi = Sigma_T - Lambda^T Gamma^{-1} Lambda via the Cholesky factor of
/// Gamma. Returns the full auxiliary system.
AuxiliarySystem psi_schur(const JointCovariance& cov, const SubsetFamily& family);

/// Just Psi, factoring Gamma in place (no retained copy). Preferred by the
/// measure layer for large families.
Eigen::MatrixXd psi_matrix(const JointCovariance& cov, const SubsetFamily& family);

/// log det Psi without retaining intermediates.
double psi_log_det(const JointCovariance& cov, const SubsetFamily& family);

/// Independent evaluation of Psi through the Woodbury identity:
/// Psi = (Sigma_T^{-1} + sum_a B_a^T Delta_a^{-1} B_a)^{-1} with
/// B_a = Sigma_{A_a T} Sigma_T^{-1} and Delta_a the per-subset conditional
/// covariance. Never touches Gamma; used for cross-validation and for
/// many-subset families with a small target.
Eigen::MatrixXd psi_woodbury(const JointCovariance& cov, const SubsetFamily& family);

/// Covariance of (T, copies): [[Sigma_T, Lambda^T], [Lambda, Gamma]].
Eigen::MatrixXd copy_joint_covariance(const JointCovariance& cov, const SubsetFamily& family);

}  // namespace gausspid
