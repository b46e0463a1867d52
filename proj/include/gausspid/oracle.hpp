#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gausspid/copy_identity.hpp"

namespace gausspid {

/// Linear-Gaussian form of the conditional-copy construction: block a of the
/// copy vector is B_a T + xi_a with xi_a ~ N(0, Delta_a), residuals mutually
/// independent and independent of T.
struct GenerativeCopyModel {
    SubsetFamily family;
    std::vector<Eigen::MatrixXd> coefficients;   // B_a = Sigma_{A_a T} Sigma_T^{-1}
    std::vector<Eigen::MatrixXd> residual_covs;  // Delta_a, symmetric PD
};

GenerativeCopyModel generative_params(const JointCovariance& cov, const SubsetFamily& family);

/// Monte-Carlo estimate of Psi: samples (T, copies) from the generative
/// model and returns the empirical conditional covariance of T given the
/// copies (empirical Schur complement). Converges to psi_schur(...).psi at
/// the usual M^(-1/2) rate.
Eigen::MatrixXd mc_psi(const JointCovariance& cov, const SubsetFamily& family, int samples,
                       std::uint64_t seed);

/// Residual-ordering diagnostic for one spectrum order: whether
/// Psi_{C_{K-1}} - Psi_{C_K} is positive semidefinite (Cholesky test with a
/// tiny scale-relative shift to admit the boundary), together with the SE_K
/// value. When the ordering holds, SE_K cannot be materially negative.
struct PsdOrderingDiagnostic {
    int order = 0;
    bool ordering_holds = false;
    double se_value = 0.0;
};

PsdOrderingDiagnostic check_psd_ordering(const JointCovariance& cov, int order);

}  // namespace gausspid
