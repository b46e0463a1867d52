#pragma once

#include <array>
#include <cstdint>

namespace gausspid {

/// Counter-based random generator: Philox 4x64 with 10 rounds.
///
/// Every harness in this project draws from this generator so that any
/// published CSV is reproducible from its seed alone. The seed forms the
/// first key word (second word zero); the 256-bit counter starts at zero and
/// increments once per 4-word block. Normal variates use the Box-Muller
/// transform on 53-bit uniforms in (0,1), pairs cached, so the stream of
/// normals is a pure function of the seed.
class PhiloxRng {
public:
    explicit PhiloxRng(std::uint64_t seed) noexcept
        : counter_{0, 0, 0, 0}, key_{seed, 0} {}

    /// One keyed block: the raw bijection applied to an explicit counter.
    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0,1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal variate.
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> buffer_{};
    int buffer_pos_ = 4;   // exhausted
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gausspid
