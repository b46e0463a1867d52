#include "gausspid/rng.hpp"

#include <cmath>
#include <numbers>

namespace gausspid {
namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

inline std::array<std::uint64_t, 4> round_once(const std::array<std::uint64_t, 4>& x,
                                               const std::array<std::uint64_t, 2>& key) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMult0, x[0], hi0, lo0);
    mul_hi_lo(kMult1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> PhiloxRng::block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key) noexcept {
    std::array<std::uint64_t, 4> x = round_once(counter, key);
    std::array<std::uint64_t, 2> k = key;
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        x = round_once(x, k);
    }
    return x;
}

std::uint64_t PhiloxRng::next_u64() noexcept {
    if (buffer_pos_ == 4) {
        buffer_ = block(counter_, key_);
        buffer_pos_ = 0;
        for (auto& word : counter_) {  // 256-bit little-endian increment
            if (++word != 0) break;
        }
    }
    return buffer_[static_cast<std::size_t>(buffer_pos_++)];
}

double PhiloxRng::uniform() noexcept {
    // 53-bit mantissa, offset by half an ulp: never 0, never 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PhiloxRng::normal() noexcept {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace gausspid
