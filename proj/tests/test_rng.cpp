#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "gausspid/rng.hpp"

using namespace gausspid;

TEST_CASE("keyed block matches the published 4x64-10 values") {
    using Block = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    CHECK(PhiloxRng::block(Block{0, 0, 0, 0}, Key{0, 0}) ==
          Block{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                0x7e68b68aec7ba23bULL});

    CHECK(PhiloxRng::block(Block{1, 0, 0, 0}, Key{0, 0}) ==
          Block{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                0x907d7a052fd5b4dcULL});

    CHECK(PhiloxRng::block(Block{2, 0, 0, 0}, Key{0, 0}) ==
          Block{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL,
                0xfc6ed66767a457bcULL});

    constexpr std::uint64_t kAllOnes = 0xffffffffffffffffULL;
    CHECK(PhiloxRng::block(Block{0, 0, 0, 0}, Key{kAllOnes, kAllOnes}) ==
          Block{0x44b7493d1acfc229ULL, 0x6636af8e997921ddULL, 0x3f73e132b5b3780eULL,
                0x605644dde03b01b1ULL});

    CHECK(PhiloxRng::block(Block{1, 0, 0, 0}, Key{kAllOnes, kAllOnes}) ==
          Block{0x6d46cc0e71f0be7eULL, 0x924ea1693f9a8bc0ULL, 0xfdc35f0198c91181ULL,
                0xb4a311f17aa6568dULL});

    CHECK(PhiloxRng::block(Block{0x243f6a8885a308d4ULL, 0x13198a2e03707344ULL,
                                 0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                           Key{0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}) ==
          Block{0x4c8e672094922aa3ULL, 0x527061cd2884102aULL, 0xf4c265b2d783d553ULL,
                0x0556e76cb0298c8dULL});
}

TEST_CASE("the stream walks the counter in block order") {
    PhiloxRng rng(0);
    const std::vector<std::uint64_t> expected = {
        0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
        0x7e68b68aec7ba23bULL, 0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL,
        0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL, 0x809bf322883987c3ULL};
    for (std::uint64_t want : expected) {
        CHECK(rng.next_u64() == want);
    }
}

TEST_CASE("same seed, same stream; different seed, different stream") {
    PhiloxRng a(1234), b(1234), c(1235);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 256; ++i) {
        const std::uint64_t va = a.next_u64();
        all_equal &= (va == b.next_u64());
        any_diff |= (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniforms live strictly inside (0,1)") {
    PhiloxRng rng(7);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal moments") {
    PhiloxRng rng(11);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0, sum_cu = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
        sum_cu += x * x * x;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.01));
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sum_cu / n == doctest::Approx(0.0).epsilon(0.02));
}
