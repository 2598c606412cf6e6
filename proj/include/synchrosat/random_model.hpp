#pragma once

#include <cstdint>

#include "synchrosat/dfa.hpp"

namespace synchrosat {

// 64-bit avalanche mixer (the splitmix64 finalizer). Fully specified here so
// other implementations can reproduce the same automata bit for bit.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Master seed plus the derivation of independent per-trial keys.
/// trial_key(n, i) = mix64(mix64(master ^ mix64(n)) ^ mix64(i)); distinct
/// (n, i) pairs give unrelated streams.
struct Seed {
    uint64_t master = 0;

    uint64_t trial_key(uint64_t n, uint64_t trial_index) const {
        return mix64(mix64(master ^ mix64(n)) ^ mix64(trial_index));
    }
};

// Uniform automaton: each of the n*k transition targets is an independent
// uniform draw from 0..n-1. The stream is counter-based, value i being
// mix64(key + i); draws use rejection sampling, so every target is exactly
// uniform.
Dfa gen(int n, int k, uint64_t key);

inline Dfa gen(int n, int k, const Seed& seed, uint64_t trial_index) {
    return gen(n, k, seed.trial_key(static_cast<uint64_t>(n), trial_index));
}

}  // namespace synchrosat
