#pragma once

#include <Eigen/Dense>

#include "gausspid/block_layout.hpp"
#include "gausspid/linalg.hpp"

namespace gausspid {

/// Joint covariance of (T, S_1, ..., S_N) with its block layout.
/// The constructor validates symmetry (1e-12 relative to the largest entry)
/// and stores the exactly symmetrized matrix. Values are immutable.
class JointCovariance {
public:
    JointCovariance(BlockLayout layout, Eigen::MatrixXd sigma);

    const BlockLayout& layout() const noexcept { return layout_; }
    const Eigen::MatrixXd& matrix() const noexcept { return sigma_; }

    Eigen::MatrixXd target_block() const;                                  // Sigma_T
    Eigen::MatrixXd cross_target(const SourceSubset& subset) const;        // Sigma_{A T}
    Eigen::MatrixXd source_block(const SourceSubset& rows,
                                 const SourceSubset& cols) const;          // Sigma_{A B}

    /// Drops every source outside `keep`; target block is retained.
    JointCovariance restricted_to(const SourceSubset& keep) const;

private:
    BlockLayout layout_;
    Eigen::MatrixXd sigma_;
};

/// Names a group of blocks of the joint vector: optionally the target plus
/// any set of sources. Rows/columns are always emitted target-first, then
/// sources in ascending index order.
struct BlockSelector {
    bool target = false;
    SourceSubset sources;

    static BlockSelector target_only();
    static BlockSelector source_set(SourceSubset subset);
    static BlockSelector target_and(SourceSubset subset);

    int dim(const BlockLayout& layout) const;
    std::vector<int> indices(const BlockLayout& layout) const;
};

/// Sub-matrix of the joint covariance at the selected row/column blocks.
Eigen::MatrixXd extract_block(const JointCovariance& cov, const BlockSelector& rows,
                              const BlockSelector& cols);

/// Cov(T | selected source blocks) = Sigma_T - Sigma_{TY} Sigma_YY^{-1} Sigma_{YT},
/// solved through the Cholesky factor of Sigma_YY.
Eigen::MatrixXd schur_conditional(const JointCovariance& cov, const BlockSelector& conditioning);

/// Sigma + lambda I with the same layout. lambda == 0 returns the input
/// unchanged; lambda < 0 is an input error.
JointCovariance ridge(const JointCovariance& cov, double lambda);

/// Joint covariance of two independent systems with the same source count,
/// stacked per block: T = (T_a, T_b), S_i = (S_i_a, S_i_b).
JointCovariance independent_stack(const JointCovariance& a, const JointCovariance& b);

}  // namespace gausspid
