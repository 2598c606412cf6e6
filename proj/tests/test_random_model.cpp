#include "doctest.h"

#include <cmath>

#include "synchrosat/random_model.hpp"

using namespace synchrosat;

TEST_CASE("single-state sample space") {
    for (uint64_t key : {0ull, 1ull, 123456789ull}) {
        Dfa a = gen(1, 2, key);
        CHECK(a.num_states() == 1);
        CHECK(a.step(0, 0) == 0);
        CHECK(a.step(0, 1) == 0);
    }
}

TEST_CASE("determinism under a fixed seed") {
    Seed seed{99};
    Dfa a = gen(10, 2, seed, 5);
    Dfa b = gen(10, 2, seed, 5);
    CHECK(a.to_text() == b.to_text());

    // Different trials give different automata (overwhelmingly).
    Dfa c = gen(10, 2, seed, 6);
    CHECK(a.to_text() != c.to_text());
}

TEST_CASE("per-cell marginals are uniform") {
    const int n = 3, k = 2, samples = 60000;
    Seed seed{7};
    // counts[cell][target]
    int64_t counts[n * k][n] = {};
    for (int i = 0; i < samples; ++i) {
        Dfa a = gen(n, k, seed, i);
        for (int q = 0; q < n; ++q)
            for (int x = 0; x < k; ++x) ++counts[q * k + x][a.step(q, x)];
    }
    const double p = 1.0 / n;
    const double sigma = std::sqrt(p * (1 - p) * samples);
    for (auto& cell : counts)
        for (int64_t cnt : cell) CHECK(std::abs(cnt - p * samples) < 3.5 * sigma);
}

TEST_CASE("rejection sampling keeps a non-power-of-two range uniform") {
    // n = 3 leaves 2^64 mod 3 = 1 rejected value; just exercise a larger n
    // and check the full target range is hit.
    Seed seed{8};
    std::vector<bool> hit(37, false);
    for (int i = 0; i < 200; ++i) {
        Dfa a = gen(37, 2, seed, i);
        for (int q = 0; q < 37; ++q) {
            hit[a.step(q, 0)] = true;
            hit[a.step(q, 1)] = true;
        }
    }
    for (bool h : hit) CHECK(h);
}
