#pragma once

#include "synchrosat/dfa.hpp"
#include "synchrosat/random_model.hpp"

namespace synchrosat::testing {

// Classical n-state series: 'a' cycles the states, 'b' merges 0 into 1.
// Its shortest reset word has length (n-1)^2, confirmed by the subset BFS.
inline Dfa cerny(int n) {
    std::vector<State> delta(static_cast<size_t>(n) * 2);
    for (int q = 0; q < n; ++q) {
        delta[q * 2 + 0] = (q + 1) % n;
        delta[q * 2 + 1] = (q == 0) ? 1 : q;
    }
    return Dfa(n, 2, std::move(delta));
}

// Both letters send every state to 0.
inline Dfa constant(int n) {
    return Dfa(n, 2, std::vector<State>(static_cast<size_t>(n) * 2, 0));
}

// Both letters are permutations, so image size never drops.
inline Dfa rotation(int n) {
    std::vector<State> delta(static_cast<size_t>(n) * 2);
    for (int q = 0; q < n; ++q) {
        delta[q * 2 + 0] = (q + 1) % n;
        delta[q * 2 + 1] = (q + n - 1) % n;
    }
    return Dfa(n, 2, std::move(delta));
}

}  // namespace synchrosat::testing
