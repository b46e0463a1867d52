#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "gausspid/errors.hpp"

namespace gausspid {

/// (m + m^T) / 2.
Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m);

/// True when max |m - m^T| <= tol * max |entry|.
bool is_symmetric(const Eigen::MatrixXd& m, double relative_tol = 1e-12);

/// In-place lower-triangular Cholesky factorization (blocked right-looking).
/// Only the lower triangle is referenced and written; the strict upper
/// triangle is left untouched. Returns the index of the first non-positive
/// (or non-finite) pivot, or -1 on success. Positive definiteness is decided
/// by pivot sign alone.
int cholesky_factor_in_place(Eigen::MatrixXd& a);

/// Value-semantic Cholesky factor of a symmetric positive-definite matrix.
/// The constructor symmetrizes its input before factorizing and throws
/// NumericalFailure (with the failed pivot index) when the input is not PD.
class Cholesky {
public:
    explicit Cholesky(Eigen::MatrixXd m, const std::string& context = {});

    /// Factorizes an already-symmetrized matrix in place, no copy.
    /// Returns nullopt when the matrix is not positive definite.
    static std::optional<Cholesky> try_factor_in_place(Eigen::MatrixXd&& m);

    double log_det() const;  // 2 * sum log diag(L)

    /// M^{-1} rhs by forward/backward substitution.
    Eigen::MatrixXd solve(Eigen::MatrixXd rhs) const;
    /// L^{-1} rhs (forward substitution only).
    Eigen::MatrixXd solve_lower(Eigen::MatrixXd rhs) const;

    const Eigen::MatrixXd& factor() const noexcept { return l_; }
    Eigen::Index dim() const noexcept { return l_.rows(); }

private:
    struct InPlaceTag {};
    Cholesky(Eigen::MatrixXd&& factored, InPlaceTag) : l_(std::move(factored)) {}

    Eigen::MatrixXd l_;  // lower triangle valid
};

/// log det of a symmetric positive-definite matrix. Throws NumericalFailure
/// naming the failed pivot otherwise.
double cholesky_logdet(const Eigen::MatrixXd& m, const std::string& context = {});

/// Schur complement sigma_xx - cross^T yy^{-1} cross where cross = Cov(Y, X).
/// Shared by every conditional-covariance path so that single-block results
/// are bit-identical across call sites.
Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& sigma_xx,
                                 const Eigen::MatrixXd& cross_yx,
                                 const Eigen::MatrixXd& sigma_yy,
                                 const std::string& context = {});

}  // namespace gausspid
