#include "gausspid/block_layout.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gausspid {

SourceSubset canonical_subset(SourceSubset subset, int num_sources) {
    if (subset.empty()) {
        throw InputError("source subset must not be empty");
    }
    std::sort(subset.begin(), subset.end());
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (subset[k] < 1 || subset[k] > num_sources) {
            throw InputError("source index " + std::to_string(subset[k]) +
                             " out of range 1.." + std::to_string(num_sources));
        }
        if (k > 0 && subset[k] == subset[k - 1]) {
            throw InputError("duplicate source index " + std::to_string(subset[k]) +
                             " in subset");
        }
    }
    return subset;
}

SourceSubset subset_complement(const SourceSubset& subset, int num_sources) {
    SourceSubset result;
    result.reserve(static_cast<std::size_t>(num_sources) - subset.size());
    auto it = subset.begin();
    for (int i = 1; i <= num_sources; ++i) {
        if (it != subset.end() && *it == i) {
            ++it;
        } else {
            result.push_back(i);
        }
    }
    return result;
}

std::string subset_to_string(const SourceSubset& subset) {
    std::ostringstream out;
    out << '{';
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (k > 0) out << ',';
        out << subset[k];
    }
    out << '}';
    return out.str();
}

BlockLayout::BlockLayout(int target_dim, std::vector<int> source_dims)
    : target_dim_(target_dim), source_dims_(std::move(source_dims)) {
    if (target_dim_ < 1) {
        throw InputError("target dimension must be at least 1");
    }
    if (source_dims_.empty()) {
        throw InputError("layout needs at least one source");
    }
    offsets_.reserve(source_dims_.size());
    int offset = target_dim_;
    for (int d : source_dims_) {
        if (d < 1) {
            throw InputError("every source dimension must be at least 1");
        }
        offsets_.push_back(offset);
        offset += d;
    }
    total_dim_ = offset;
}

int BlockLayout::source_dim(int i) const {
    if (i < 1 || i > num_sources()) {
        throw InputError("source index " + std::to_string(i) + " out of range 1.." +
                         std::to_string(num_sources()));
    }
    return source_dims_[static_cast<std::size_t>(i - 1)];
}

int BlockLayout::source_offset(int i) const {
    if (i < 1 || i > num_sources()) {
        throw InputError("source index " + std::to_string(i) + " out of range 1.." +
                         std::to_string(num_sources()));
    }
    return offsets_[static_cast<std::size_t>(i - 1)];
}

int BlockLayout::subset_dim(const SourceSubset& subset) const {
    int dim = 0;
    for (int i : subset) {
        dim += source_dim(i);
    }
    return dim;
}

std::vector<int> BlockLayout::subset_indices(const SourceSubset& subset) const {
    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(subset_dim(subset)));
    for (int i : subset) {
        const int start = source_offset(i);
        for (int j = 0; j < source_dim(i); ++j) {
            indices.push_back(start + j);
        }
    }
    return indices;
}

SubsetFamily::SubsetFamily(std::vector<SourceSubset> subsets, int num_sources)
    : subsets_(std::move(subsets)), num_sources_(num_sources) {
    if (num_sources_ < 1) {
        throw InputError("family needs a positive source count");
    }
    if (subsets_.empty()) {
        throw InputError("subset family must not be empty");
    }
    for (auto& subset : subsets_) {
        subset = canonical_subset(std::move(subset), num_sources_);
    }
}

SubsetFamily SubsetFamily::all_subsets_of_size(int num_sources, int size) {
    if (size < 1 || size > num_sources) {
        throw InputError("subset size " + std::to_string(size) + " out of range 1.." +
                         std::to_string(num_sources));
    }
    std::vector<SourceSubset> subsets;
    SourceSubset current(static_cast<std::size_t>(size));
    std::iota(current.begin(), current.end(), 1);
    while (true) {
        subsets.push_back(current);
        // next combination in lexicographic order
        int k = size - 1;
        while (k >= 0 && current[static_cast<std::size_t>(k)] == num_sources - (size - 1 - k)) {
            --k;
        }
        if (k < 0) break;
        ++current[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < size; ++j) {
            current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return SubsetFamily(std::move(subsets), num_sources);
}

SubsetFamily SubsetFamily::source_with_complement(int num_sources, int i) {
    if (num_sources < 2) {
        throw InputError("source-with-complement family needs at least two sources");
    }
    SourceSubset self = canonical_subset({i}, num_sources);
    return SubsetFamily({self, subset_complement(self, num_sources)}, num_sources);
}

SubsetFamily SubsetFamily::complement_of(int num_sources, int i) {
    if (num_sources < 2) {
        throw InputError("complement family needs at least two sources");
    }
    SourceSubset self = canonical_subset({i}, num_sources);
    return SubsetFamily({subset_complement(self, num_sources)}, num_sources);
}

SubsetFamily SubsetFamily::single(SourceSubset subset, int num_sources) {
    return SubsetFamily({std::move(subset)}, num_sources);
}

int SubsetFamily::total_dim(const BlockLayout& layout) const {
    int dim = 0;
    for (const auto& subset : subsets_) {
        dim += layout.subset_dim(subset);
    }
    return dim;
}

int SubsetFamily::block_offset(const BlockLayout& layout, int a) const {
    int offset = 0;
    for (int b = 0; b < a; ++b) {
        offset += layout.subset_dim(subsets_[static_cast<std::size_t>(b)]);
    }
    return offset;
}

std::string SubsetFamily::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t a = 0; a < subsets_.size(); ++a) {
        if (a > 0) out << ',';
        out << subset_to_string(subsets_[a]);
    }
    out << '}';
    return out.str();
}

}  // namespace gausspid
