#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "synchrosat/dfa.hpp"
#include "synchrosat/solver.hpp"

namespace synchrosat {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(int c)
        : std::runtime_error("solver budget exceeded at length " + std::to_string(c)) {}
};

enum class SolverBackend { internal, external };

struct SearchOptions {
    SolverBackend backend = SolverBackend::internal;
    std::string external_cmd;  // used when backend == external
    SolveBudget budget;
    uint64_t solver_seed = 0;
    bool fig1_exact = false;  // start the search from r = n^3 instead of the greedy bound
};

struct QueryTrace {
    int c;
    bool satisfiable;
    int64_t conflicts;
    double seconds;
};

struct ShortestResult {
    int length = 0;
    Word word;
    int queries = 0;
    std::vector<QueryTrace> trace;
};

// Decides whether a reset word of length <= c exists; returns one of length
// exactly c when it does. Throws BudgetExceeded when the solver gives up.
std::optional<Word> synchro_word(const Dfa& a, int c, const SearchOptions& opt = {});

// Binary search over synchro_word. Requires is_synchronizing(a); throws
// std::invalid_argument otherwise. The result length is certified minimal by
// an unsatisfiable query at length-1 (or is 0).
ShortestResult shortest_reset_word(const Dfa& a, const SearchOptions& opt = {});

}  // namespace synchrosat
