#include "synchrosat/shortest.hpp"

namespace synchrosat {

namespace {

struct Probe {
    std::optional<Word> word;
    int64_t conflicts;
    double seconds;
};

Probe probe_length(const Dfa& a, int c, const SearchOptions& opt) {
    auto [formula, vm] = encode(a, c);
    SolveResult res = opt.backend == SolverBackend::external
                          ? solve_external(formula, opt.external_cmd)
                          : solve(formula, opt.budget, opt.solver_seed);
    if (res.status == SolveStatus::budget_exceeded) throw BudgetExceeded(c);
    Probe p{std::nullopt, res.conflicts, res.seconds};
    if (res.status == SolveStatus::sat) {
        Word w = decode_word(res.model, vm);
        if (!verify_reset_word(a, w))
            throw std::logic_error("synchro_word: decoded word is not a reset word");
        p.word = std::move(w);
    }
    return p;
}

}  // namespace

std::optional<Word> synchro_word(const Dfa& a, int c, const SearchOptions& opt) {
    return probe_length(a, c, opt).word;
}

ShortestResult shortest_reset_word(const Dfa& a, const SearchOptions& opt) {
    const int n = a.num_states();
    if (n == 1) return ShortestResult{0, {}, 0, {}};

    ShortestResult result;
    int l = 0;
    int r;
    std::optional<Word> word_at_r;
    if (opt.fig1_exact) {
        r = n * n * n;
    } else {
        auto greedy = greedy_upper_bound(a);
        if (!greedy) throw std::invalid_argument("shortest_reset_word: automaton is not synchronizing");
        r = greedy->length;
        word_at_r = std::move(greedy->word);
    }
    if (!is_synchronizing(a))
        throw std::invalid_argument("shortest_reset_word: automaton is not synchronizing");

    auto probe = [&](int c) {
        Probe p = probe_length(a, c, opt);
        ++result.queries;
        result.trace.push_back({c, p.word.has_value(), p.conflicts, p.seconds});
        return p.word;
    };

    // Invariant: l < shortest <= r (length 0 never resets when n > 1).
    for (;;) {
        int c = (l + r) / 2;
        if (c == l) {
            if (!word_at_r) word_at_r = probe(r);
            result.length = r;
            result.word = std::move(*word_at_r);
            return result;
        }
        if (auto w = probe(c)) {
            r = c;
            word_at_r = std::move(w);
        } else {
            l = c;
        }
    }
}

}  // namespace synchrosat
