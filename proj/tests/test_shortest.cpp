#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "synchrosat/random_model.hpp"
#include "synchrosat/shortest.hpp"

using namespace synchrosat;
using namespace synchrosat::testing;

TEST_CASE("synchro_word") {
    CHECK(synchro_word(Dfa(1, 2, {0, 0}), 0).has_value());
    CHECK_FALSE(synchro_word(rotation(5), 6).has_value());

    auto w9 = synchro_word(cerny(4), 9);
    REQUIRE(w9.has_value());
    CHECK(w9->size() == 9);
    CHECK(verify_reset_word(cerny(4), *w9));
    CHECK_FALSE(synchro_word(cerny(4), 8).has_value());
}

TEST_CASE("shortest_reset_word basics") {
    ShortestResult one = shortest_reset_word(Dfa(1, 2, {0, 0}));
    CHECK(one.length == 0);
    CHECK(one.word.empty());
    CHECK(one.queries == 0);

    ShortestResult flat = shortest_reset_word(constant(5));
    CHECK(flat.length == 1);
    CHECK(verify_reset_word(constant(5), flat.word));

    ShortestResult c4 = shortest_reset_word(cerny(4));
    CHECK(c4.length == 9);
    CHECK(static_cast<int>(c4.word.size()) == 9);
    CHECK(verify_reset_word(cerny(4), c4.word));

    CHECK_THROWS_AS(shortest_reset_word(rotation(4)), std::invalid_argument);
}

TEST_CASE("matches the subset BFS oracle on random automata") {
    Seed seed{41};
    int matched = 0;
    for (int trial = 0; matched < 120 && trial < 400; ++trial) {
        int n = 2 + trial % 7;
        Dfa a = gen(n, 2, seed, trial);
        auto oracle = brute_force_shortest(a);
        if (!oracle) continue;
        ShortestResult res = shortest_reset_word(a);
        CHECK(res.length == oracle->length);
        CHECK(verify_reset_word(a, res.word));
        ++matched;
    }
    CHECK(matched == 120);
}

TEST_CASE("query trace is monotone and within the binary-search bound") {
    Seed seed{42};
    for (int trial = 0; trial < 30; ++trial) {
        Dfa a = gen(8, 2, seed, trial);
        if (!is_synchronizing(a)) continue;
        ShortestResult res = shortest_reset_word(a);
        // The result length splits the probed lengths: everything below is
        // unsat, everything at or above is sat.
        for (const QueryTrace& q : res.trace) {
            if (q.c < res.length) CHECK_FALSE(q.satisfiable);
            if (q.c >= res.length) CHECK(q.satisfiable);
        }
        auto greedy = greedy_upper_bound(a);
        REQUIRE(greedy.has_value());
        int bound = greedy->length > 1 ? static_cast<int>(std::ceil(std::log2(greedy->length))) + 2
                                       : 3;
        CHECK(res.queries <= bound);
    }
}

TEST_CASE("fig1-exact search agrees with the greedy-bound search") {
    Seed seed{43};
    SearchOptions fig1;
    fig1.fig1_exact = true;
    for (int trial = 0; trial < 10; ++trial) {
        Dfa a = gen(5, 2, seed, trial);
        if (!is_synchronizing(a)) continue;
        CHECK(shortest_reset_word(a, fig1).length == shortest_reset_word(a).length);
    }
    CHECK(shortest_reset_word(cerny(4), fig1).length == 9);
}

TEST_CASE("budget errors propagate") {
    SearchOptions opt;
    opt.budget.max_conflicts = 1;
    CHECK_THROWS_AS(shortest_reset_word(cerny(6), opt), BudgetExceeded);
}
