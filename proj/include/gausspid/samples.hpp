#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "gausspid/covariance.hpp"

namespace gausspid {

/// Rows of joint observations (T, S_1, ..., S_N), columns in layout order.
/// All entries must be finite.
struct SampleMatrix {
    SampleMatrix(BlockLayout layout, Eigen::MatrixXd data);

    int count() const noexcept { return static_cast<int>(data.rows()); }

    BlockLayout layout;
    Eigen::MatrixXd data;  // count x total_dim
};

/// Column-mean-centered covariance with 1/(M-1) normalization. Symmetric PSD
/// by construction; positive definiteness is not guaranteed (ridge is the
/// caller's decision). Requires at least two rows.
JointCovariance empirical_covariance(const SampleMatrix& samples);

/// `count` i.i.d. zero-mean draws: Cholesky factor of the covariance times
/// standard-normal vectors from PhiloxRng(seed), generated row by row.
SampleMatrix sample_gaussian(const JointCovariance& cov, int count, std::uint64_t seed);

/// CSV: comma separated, '.' decimal point, optional single header row.
/// Columns are target coordinates first, then sources in layout order.
SampleMatrix load_samples_csv(const std::string& path, const BlockLayout& layout,
                              bool expect_header);
void write_samples_csv(const SampleMatrix& samples, const std::string& path, bool write_header);

/// Layout sidecar: {"target_dim": t, "source_dims": [d_1, ..., d_N]}.
BlockLayout load_layout_json(const std::string& path);
void write_layout_json(const BlockLayout& layout, const std::string& path);

}  // namespace gausspid
