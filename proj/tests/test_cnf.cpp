#include "doctest.h"

#include "fixtures.hpp"
#include "synchrosat/cnf.hpp"
#include "synchrosat/random_model.hpp"
#include "synchrosat/solver.hpp"

using namespace synchrosat;
using namespace synchrosat::testing;

namespace {

size_t literal_count(const CnfFormula& f) {
    size_t total = 0;
    for (const Clause& cl : f.clauses) total += cl.size();
    return total;
}

}  // namespace

TEST_CASE("encode count formulas") {
    SUBCASE("single state, length zero") {
        auto [f, vm] = encode(Dfa(1, 2, {0, 0}), 0);
        CHECK(f.num_vars == 1);
        CHECK(f.clauses.size() == 1);
        CHECK(f.clauses[0] == Clause{1});
        CHECK(solve(f).status == SolveStatus::sat);
    }
    SUBCASE("n=4, c=9") {
        auto [f, vm] = encode(cerny(4), 9);
        CHECK(f.num_vars == 49);
        CHECK(f.clauses.size() == 82);
        CHECK(literal_count(f) == 232);
    }
    SUBCASE("randomized sizes") {
        Seed seed{21};
        for (int i = 0; i < 40; ++i) {
            Dfa src = gen(50, 2, seed, i);
            int n = 1 + src.step(0, 0) % 30 + (i % 2);
            int c = src.step(1, 0) % 41;
            auto [f, vm] = encode(gen(n, 2, seed, 1000 + i), c);
            CHECK(f.num_vars == (c + 1) * n + c);
            CHECK(f.clauses.size() == static_cast<size_t>(n) * (n - 1) / 2 + n * (2 * c + 1));
            CHECK(literal_count(f) == static_cast<size_t>(n) * n + 6ull * c * n);
        }
    }
}

TEST_CASE("encode rejects alphabets other than two letters") {
    CHECK_THROWS_AS(encode(Dfa(2, 3, {0, 0, 0, 0, 0, 0}), 1), std::invalid_argument);
    CHECK_THROWS_AS(encode(Dfa(2, 1, {0, 0}), 1), std::invalid_argument);
}

TEST_CASE("two-state sink: satisfiable at c=1, not at c=0") {
    Dfa a = constant(2);
    CHECK(solve(encode(a, 1).first).status == SolveStatus::sat);
    CHECK(solve(encode(a, 0).first).status == SolveStatus::unsat);
}

TEST_CASE("decode_word reads letters off the u variables") {
    VarMap vm0{3, 0};
    CHECK(decode_word(Assignment(vm0.num_vars() + 1, true), vm0).empty());

    VarMap vm1{2, 1};
    Assignment asg1(vm1.num_vars() + 1, false);
    asg1[vm1.u(1)] = true;
    CHECK(decode_word(asg1, vm1) == Word{0});

    VarMap vm2{2, 2};
    Assignment asg2(vm2.num_vars() + 1, false);
    asg2[vm2.u(2)] = true;
    CHECK(decode_word(asg2, vm2) == Word{1, 0});
}

TEST_CASE("variable layout is a bijection onto 1..num_vars") {
    VarMap vm{5, 7};
    std::vector<bool> used(vm.num_vars() + 1, false);
    for (int t = 1; t <= vm.c; ++t) {
        REQUIRE(!used[vm.u(t)]);
        used[vm.u(t)] = true;
    }
    for (int t = 0; t <= vm.c; ++t)
        for (int q = 0; q < vm.n; ++q) {
            REQUIRE(!used[vm.x(q, t)]);
            used[vm.x(q, t)] = true;
        }
    for (int v = 1; v <= vm.num_vars(); ++v) CHECK(used[v]);
}

TEST_CASE("to_dimacs") {
    CHECK(to_dimacs(CnfFormula{}) == "p cnf 0 0\n");
    CHECK(to_dimacs(CnfFormula{1, {{1}}}) == "p cnf 1 1\n1 0\n");
    CHECK(to_dimacs(encode(Dfa(1, 2, {0, 0}), 0).first) == "p cnf 1 1\n1 0\n");
}

TEST_CASE("golden DIMACS for the two-state sink at c=1") {
    // Clause order: units, then the two step clauses for each state, then the
    // single pair clause. Variables: u_1 = 1, x(q,t) = 1 + t*2 + q + 1.
    CHECK(to_dimacs(encode(constant(2), 1).first) ==
          "p cnf 5 7\n"
          "2 0\n"
          "3 0\n"
          "-2 -1 4 0\n"
          "-2 1 4 0\n"
          "-3 -1 4 0\n"
          "-3 1 4 0\n"
          "-5 -4 0\n");
}

TEST_CASE("satisfiability matches the subset BFS oracle") {
    Seed seed{22};
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + trial % 7;
        Dfa a = gen(n, 2, seed, trial);
        auto oracle = brute_force_shortest(a);
        for (int c = 0; c <= 12; c += 3) {
            bool expect = oracle && oracle->length <= c;
            auto [f, vm] = encode(a, c);
            SolveResult res = solve(f);
            CHECK(res.status == (expect ? SolveStatus::sat : SolveStatus::unsat));
            if (res.status == SolveStatus::sat) {
                CHECK(verify_reset_word(a, decode_word(res.model, vm)));
                ++checked;
            }
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("satisfiability is monotone in the target length") {
    Seed seed{23};
    for (int trial = 0; trial < 10; ++trial) {
        Dfa a = gen(5, 2, seed, trial);
        bool seen_sat = false;
        for (int c = 0; c <= 10; ++c) {
            bool sat = solve(encode(a, c).first).status == SolveStatus::sat;
            if (seen_sat) CHECK(sat);
            seen_sat = seen_sat || sat;
        }
    }
}
