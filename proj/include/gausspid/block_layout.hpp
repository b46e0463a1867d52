#pragma once

#include <string>
#include <vector>

#include "gausspid/errors.hpp"

namespace gausspid {

/// A set of source indices, 1-based, strictly ascending.
/// Use canonical_subset() to normalize arbitrary user input.
using SourceSubset = std::vector<int>;

/// Sorts, bounds-checks and rejects duplicate indices.
SourceSubset canonical_subset(SourceSubset subset, int num_sources);

/// Complement of `subset` in {1..num_sources}.
SourceSubset subset_complement(const SourceSubset& subset, int num_sources);

std::string subset_to_string(const SourceSubset& subset);

/// Dimensions of the target block and the N source blocks of a joint vector
/// (T, S_1, ..., S_N), stored target-first. Source indices are 1-based
/// throughout the library.
class BlockLayout {
public:
    BlockLayout(int target_dim, std::vector<int> source_dims);

    int target_dim() const noexcept { return target_dim_; }
    int num_sources() const noexcept { return static_cast<int>(source_dims_.size()); }
    const std::vector<int>& source_dims() const noexcept { return source_dims_; }
    int total_dim() const noexcept { return total_dim_; }

    int source_dim(int i) const;     // i in 1..N
    int source_offset(int i) const;  // offset of source i within the joint vector

    /// Sum of the dimensions of the subset's sources (d_A).
    int subset_dim(const SourceSubset& subset) const;

    /// Flat joint-vector indices of the subset's coordinates, ascending.
    std::vector<int> subset_indices(const SourceSubset& subset) const;

    bool operator==(const BlockLayout& other) const = default;

private:
    int target_dim_;
    std::vector<int> source_dims_;
    std::vector<int> offsets_;
    int total_dim_;
};

/// An ordered collection of source subsets (the families written A, C_K,
/// U_i, V_i). Subset order is fixed at construction and defines the block
/// order of every matrix built for the family. The same subset may appear
/// more than once; repeats are treated as independent copies.
class SubsetFamily {
public:
    SubsetFamily(std::vector<SourceSubset> subsets, int num_sources);

    /// All size-k subsets of {1..n} in lexicographic order (C_K).
    static SubsetFamily all_subsets_of_size(int num_sources, int size);
    /// { {i}, complement of i } (U_i).
    static SubsetFamily source_with_complement(int num_sources, int i);
    /// { complement of i } (V_i).
    static SubsetFamily complement_of(int num_sources, int i);
    /// Single-subset family { A }.
    static SubsetFamily single(SourceSubset subset, int num_sources);

    int size() const noexcept { return static_cast<int>(subsets_.size()); }  // m
    int num_sources() const noexcept { return num_sources_; }
    const SourceSubset& subset(int a) const { return subsets_.at(a); }
    const std::vector<SourceSubset>& subsets() const noexcept { return subsets_; }

    /// D_A = sum of d_{A_a} over the family.
    int total_dim(const BlockLayout& layout) const;

    /// Offset of block a inside the stacked auxiliary vector.
    int block_offset(const BlockLayout& layout, int a) const;

    std::string to_string() const;

private:
    std::vector<SourceSubset> subsets_;
    int num_sources_;
};

}  // namespace gausspid
