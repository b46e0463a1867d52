#include "gausspid/linalg.hpp"

#include <cmath>
#include <utility>

namespace gausspid {
namespace {

constexpr int kPanel = 128;

// Unblocked lower Cholesky of a diagonal block whose left panel updates have
// already been applied. `base` converts the local column to the index
// reported on failure.
int factor_diag_block(Eigen::Ref<Eigen::MatrixXd> a, int base) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < n; ++j) {
        double pivot = a(j, j) - a.row(j).head(j).squaredNorm();
        if (!(pivot > 0.0)) {  // also catches NaN
            return base + j;
        }
        pivot = std::sqrt(pivot);
        a(j, j) = pivot;
        if (j + 1 < n) {
            auto below = a.block(j + 1, j, n - j - 1, 1);
            below.noalias() -= a.block(j + 1, 0, n - j - 1, j) * a.row(j).head(j).transpose();
            below /= pivot;
        }
    }
    return -1;
}

}  // namespace

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

bool is_symmetric(const Eigen::MatrixXd& m, double relative_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = m.cwiseAbs().maxCoeff();
    const double gap = (m - m.transpose()).cwiseAbs().maxCoeff();
    return gap <= relative_tol * std::max(scale, 1e-300);
}

int cholesky_factor_in_place(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    for (int k = 0; k < n; k += kPanel) {
        const int nb = std::min(kPanel, n - k);
        auto diag = a.block(k, k, nb, nb);
        const int bad = factor_diag_block(diag, k);
        if (bad >= 0) return bad;
        const int rest = n - k - nb;
        if (rest > 0) {
            auto panel = a.block(k + nb, k, rest, nb);
            diag.transpose()
                .triangularView<Eigen::Upper>()
                .solveInPlace<Eigen::OnTheRight>(panel);
            a.block(k + nb, k + nb, rest, rest)
                .selfadjointView<Eigen::Lower>()
                .rankUpdate(panel, -1.0);
        }
    }
    return -1;
}

Cholesky::Cholesky(Eigen::MatrixXd m, const std::string& context) {
    if (m.rows() != m.cols()) {
        throw InputError("Cholesky needs a square matrix");
    }
    l_ = symmetrized(m);
    const int bad = cholesky_factor_in_place(l_);
    if (bad >= 0) {
        std::string what = context.empty() ? "matrix not positive definite"
                                           : context + " not positive definite";
        throw NumericalFailure(what + " (pivot " + std::to_string(bad) + ")", bad);
    }
}

std::optional<Cholesky> Cholesky::try_factor_in_place(Eigen::MatrixXd&& m) {
    if (m.rows() != m.cols()) {
        throw InputError("Cholesky needs a square matrix");
    }
    if (cholesky_factor_in_place(m) >= 0) {
        return std::nullopt;
    }
    return Cholesky(std::move(m), InPlaceTag{});
}

double Cholesky::log_det() const {
    return 2.0 * l_.diagonal().array().log().sum();
}

Eigen::MatrixXd Cholesky::solve(Eigen::MatrixXd rhs) const {
    l_.triangularView<Eigen::Lower>().solveInPlace(rhs);
    l_.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
    return rhs;
}

Eigen::MatrixXd Cholesky::solve_lower(Eigen::MatrixXd rhs) const {
    l_.triangularView<Eigen::Lower>().solveInPlace(rhs);
    return rhs;
}

double cholesky_logdet(const Eigen::MatrixXd& m, const std::string& context) {
    return Cholesky(m, context).log_det();
}

Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& sigma_xx,
                                 const Eigen::MatrixXd& cross_yx,
                                 const Eigen::MatrixXd& sigma_yy,
                                 const std::string& context) {
    const Cholesky chol(sigma_yy, context);
    const Eigen::MatrixXd half = chol.solve_lower(cross_yx);  // L^{-1} Sigma_{YX}
    Eigen::MatrixXd result = sigma_xx;
    result.noalias() -= half.transpose() * half;
    return symmetrized(result);
}

}  // namespace gausspid
