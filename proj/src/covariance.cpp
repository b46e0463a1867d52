#include "gausspid/covariance.hpp"

#include <algorithm>
#include <utility>

namespace gausspid {
namespace {

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(rows[r], cols[c]);
        }
    }
    return out;
}

}  // namespace

JointCovariance::JointCovariance(BlockLayout layout, Eigen::MatrixXd sigma)
    : layout_(std::move(layout)), sigma_(std::move(sigma)) {
    if (sigma_.rows() != layout_.total_dim() || sigma_.cols() != layout_.total_dim()) {
        throw InputError("covariance is " + std::to_string(sigma_.rows()) + "x" +
                         std::to_string(sigma_.cols()) + " but the layout has total dimension " +
                         std::to_string(layout_.total_dim()));
    }
    if (!is_symmetric(sigma_)) {
        throw InputError("covariance is not symmetric (tolerance 1e-12 relative to the "
                         "largest entry)");
    }
    sigma_ = symmetrized(sigma_);
}

Eigen::MatrixXd JointCovariance::target_block() const {
    const int d = layout_.target_dim();
    return sigma_.topLeftCorner(d, d);
}

Eigen::MatrixXd JointCovariance::cross_target(const SourceSubset& subset) const {
    const auto rows = layout_.subset_indices(canonical_subset(subset, layout_.num_sources()));
    std::vector<int> cols(static_cast<std::size_t>(layout_.target_dim()));
    for (int j = 0; j < layout_.target_dim(); ++j) cols[static_cast<std::size_t>(j)] = j;
    return gather(sigma_, rows, cols);
}

Eigen::MatrixXd JointCovariance::source_block(const SourceSubset& rows,
                                              const SourceSubset& cols) const {
    const auto ri = layout_.subset_indices(canonical_subset(rows, layout_.num_sources()));
    const auto ci = layout_.subset_indices(canonical_subset(cols, layout_.num_sources()));
    return gather(sigma_, ri, ci);
}

JointCovariance JointCovariance::restricted_to(const SourceSubset& keep) const {
    const SourceSubset kept = canonical_subset(keep, layout_.num_sources());
    std::vector<int> indices;
    for (int j = 0; j < layout_.target_dim(); ++j) indices.push_back(j);
    const auto source_indices = layout_.subset_indices(kept);
    indices.insert(indices.end(), source_indices.begin(), source_indices.end());

    std::vector<int> dims;
    dims.reserve(kept.size());
    for (int i : kept) dims.push_back(layout_.source_dim(i));
    return JointCovariance(BlockLayout(layout_.target_dim(), std::move(dims)),
                           gather(sigma_, indices, indices));
}

BlockSelector BlockSelector::target_only() { return BlockSelector{true, {}}; }

BlockSelector BlockSelector::source_set(SourceSubset subset) {
    return BlockSelector{false, std::move(subset)};
}

BlockSelector BlockSelector::target_and(SourceSubset subset) {
    return BlockSelector{true, std::move(subset)};
}

int BlockSelector::dim(const BlockLayout& layout) const {
    int d = target ? layout.target_dim() : 0;
    if (!sources.empty()) {
        d += layout.subset_dim(canonical_subset(sources, layout.num_sources()));
    }
    return d;
}

std::vector<int> BlockSelector::indices(const BlockLayout& layout) const {
    if (!target && sources.empty()) {
        throw InputError("block selector is empty");
    }
    std::vector<int> result;
    if (target) {
        for (int j = 0; j < layout.target_dim(); ++j) result.push_back(j);
    }
    if (!sources.empty()) {
        const auto src = layout.subset_indices(canonical_subset(sources, layout.num_sources()));
        result.insert(result.end(), src.begin(), src.end());
    }
    return result;
}

Eigen::MatrixXd extract_block(const JointCovariance& cov, const BlockSelector& rows,
                              const BlockSelector& cols) {
    const auto ri = rows.indices(cov.layout());
    const auto ci = cols.indices(cov.layout());
    Eigen::MatrixXd out(ri.size(), ci.size());
    for (std::size_t c = 0; c < ci.size(); ++c) {
        for (std::size_t r = 0; r < ri.size(); ++r) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                cov.matrix()(ri[r], ci[c]);
        }
    }
    return out;
}

Eigen::MatrixXd schur_conditional(const JointCovariance& cov, const BlockSelector& conditioning) {
    if (conditioning.target) {
        throw InputError("conditioning selector must name source blocks only");
    }
    if (conditioning.sources.empty()) {
        throw InputError("conditioning selector is empty");
    }
    const Eigen::MatrixXd yy = extract_block(cov, conditioning, conditioning);
    const Eigen::MatrixXd cross = extract_block(cov, conditioning, BlockSelector::target_only());
    return schur_complement(cov.target_block(), cross, yy,
                            "conditioning block " + subset_to_string(conditioning.sources));
}

JointCovariance ridge(const JointCovariance& cov, double lambda) {
    if (lambda < 0.0) {
        throw InputError("ridge parameter must be nonnegative");
    }
    if (lambda == 0.0) {
        return cov;
    }
    Eigen::MatrixXd sigma = cov.matrix();
    sigma.diagonal().array() += lambda;
    return JointCovariance(cov.layout(), std::move(sigma));
}

JointCovariance independent_stack(const JointCovariance& a, const JointCovariance& b) {
    const BlockLayout& la = a.layout();
    const BlockLayout& lb = b.layout();
    if (la.num_sources() != lb.num_sources()) {
        throw InputError("independent_stack needs matching source counts");
    }
    const int n = la.num_sources();
    std::vector<int> dims(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        dims[static_cast<std::size_t>(i - 1)] = la.source_dim(i) + lb.source_dim(i);
    }
    BlockLayout layout(la.target_dim() + lb.target_dim(), std::move(dims));

    // Map the coordinates of each input system onto the stacked layout.
    auto embedding = [&](const BlockLayout& lin, int target_shift,
                         auto source_shift) {
        std::vector<int> map(static_cast<std::size_t>(lin.total_dim()));
        for (int j = 0; j < lin.target_dim(); ++j) {
            map[static_cast<std::size_t>(j)] = target_shift + j;
        }
        for (int i = 1; i <= n; ++i) {
            for (int j = 0; j < lin.source_dim(i); ++j) {
                map[static_cast<std::size_t>(lin.source_offset(i) + j)] =
                    layout.source_offset(i) + source_shift(i) + j;
            }
        }
        return map;
    };
    const auto map_a = embedding(la, 0, [](int) { return 0; });
    const auto map_b = embedding(lb, la.target_dim(), [&](int i) { return la.source_dim(i); });

    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(layout.total_dim(), layout.total_dim());
    for (int c = 0; c < la.total_dim(); ++c) {
        for (int r = 0; r < la.total_dim(); ++r) {
            sigma(map_a[static_cast<std::size_t>(r)], map_a[static_cast<std::size_t>(c)]) =
                a.matrix()(r, c);
        }
    }
    for (int c = 0; c < lb.total_dim(); ++c) {
        for (int r = 0; r < lb.total_dim(); ++r) {
            sigma(map_b[static_cast<std::size_t>(r)], map_b[static_cast<std::size_t>(c)]) =
                b.matrix()(r, c);
        }
    }
    return JointCovariance(std::move(layout), std::move(sigma));
}

}  // namespace gausspid
