#include "synchrosat/random_model.hpp"

namespace synchrosat {

Dfa gen(int n, int k, uint64_t key) {
    if (n < 1) throw std::invalid_argument("gen: need at least one state");
    const uint64_t un = static_cast<uint64_t>(n);
    // Values below 2^64 mod n are rejected; the rest split evenly into n bins.
    const uint64_t reject_below = (~un + 1) % un;  // == 2^64 mod n
    std::vector<State> delta(static_cast<size_t>(n) * k);
    uint64_t counter = 0;
    for (auto& target : delta) {
        uint64_t v;
        do {
            v = mix64(key + counter++);
        } while (v < reject_below);
        target = static_cast<State>(v % un);
    }
    return Dfa(n, k, std::move(delta));
}

}  // namespace synchrosat
