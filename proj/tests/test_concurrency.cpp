#include <atomic>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gausspid/concurrency.hpp"

using namespace gausspid;

TEST_CASE("parallel_for covers the range exactly once") {
    for (int threads : {1, 4}) {
        std::vector<std::atomic<int>> hits(100);
        parallel_for(0, 100, threads, [&](int i) { ++hits[static_cast<std::size_t>(i)]; });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    // empty and single-element ranges
    int count = 0;
    parallel_for(5, 5, 4, [&](int) { ++count; });
    CHECK(count == 0);
    parallel_for(5, 6, 4, [&](int i) { count += i; });
    CHECK(count == 5);
}

TEST_CASE("parallel_for rethrows a worker exception") {
    CHECK_THROWS_AS(parallel_for(0, 64, 4,
                                 [&](int i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    CHECK(hardware_threads() >= 1);
}
