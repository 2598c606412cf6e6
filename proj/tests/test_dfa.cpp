#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "synchrosat/dfa.hpp"
#include "synchrosat/random_model.hpp"

using namespace synchrosat;
using namespace synchrosat::testing;

TEST_CASE("apply_word folds the transition table") {
    Dfa c4 = cerny(4);
    CHECK(apply_word(c4, 2, {}) == 2);
    CHECK(apply_word(constant(2), 1, {0}) == 0);
    CHECK(apply_word(c4, 3, {0, 1}) == 1);

    // Concatenation splits into two folds.
    Seed seed{11};
    for (int trial = 0; trial < 50; ++trial) {
        Dfa a = gen(6, 2, seed, trial);
        Dfa wsrc = gen(8, 2, seed, 1000 + trial);
        Word w, u;
        for (int i = 0; i < 5; ++i) w.push_back(wsrc.step(i % 8, 0) % 2);
        for (int i = 0; i < 4; ++i) u.push_back(wsrc.step(i % 8, 1) % 2);
        Word wu = w;
        wu.insert(wu.end(), u.begin(), u.end());
        for (State q = 0; q < 6; ++q)
            CHECK(apply_word(a, q, wu) == apply_word(a, apply_word(a, q, w), u));
    }
}

TEST_CASE("image of a state set") {
    Dfa c4 = cerny(4);
    CHECK(image(c4, all_states(c4), {}) == all_states(c4));
    CHECK(image(constant(5), all_states(constant(5)), {0}) == std::vector<State>{0});
    CHECK(image(c4, {0, 1, 2, 3}, {1}) == std::vector<State>{1, 2, 3});

    // Images never grow.
    Seed seed{12};
    for (int trial = 0; trial < 50; ++trial) {
        Dfa a = gen(7, 2, seed, trial);
        Word w = {0, 1, 1, 0, 1};
        auto s = all_states(a);
        CHECK(image(a, s, w).size() <= s.size());
    }
}

TEST_CASE("verify_reset_word") {
    CHECK(verify_reset_word(Dfa(1, 2, {0, 0}), {}));
    CHECK_FALSE(verify_reset_word(cerny(4), {}));
    auto oracle = brute_force_shortest(cerny(4));
    REQUIRE(oracle.has_value());
    CHECK(verify_reset_word(cerny(4), oracle->word));

    // Extension closure: appending letters keeps a reset word a reset word.
    Word extended = oracle->word;
    extended.push_back(1);
    extended.push_back(0);
    CHECK(verify_reset_word(cerny(4), extended));
}

TEST_CASE("is_synchronizing") {
    CHECK(is_synchronizing(constant(6)));
    CHECK_FALSE(is_synchronizing(rotation(5)));
    CHECK(is_synchronizing(cerny(4)));
}

TEST_CASE("is_synchronizing agrees with the subset BFS") {
    Seed seed{13};
    for (int n = 2; n <= 10; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            Dfa a = gen(n, 2, seed, static_cast<uint64_t>(n) * 100 + trial);
            CHECK(is_synchronizing(a) == brute_force_shortest(a).has_value());
        }
    }
}

TEST_CASE("brute_force_shortest") {
    auto one = brute_force_shortest(Dfa(1, 2, {0, 0}));
    REQUIRE(one.has_value());
    CHECK(one->length == 0);
    CHECK(one->word.empty());

    auto flat = brute_force_shortest(constant(5));
    REQUIRE(flat.has_value());
    CHECK(flat->length == 1);

    auto c4 = brute_force_shortest(cerny(4));
    REQUIRE(c4.has_value());
    CHECK(c4->length == 9);

    CHECK_FALSE(brute_force_shortest(rotation(4)).has_value());
    CHECK_THROWS_AS(brute_force_shortest(constant(15)), std::invalid_argument);
}

TEST_CASE("greedy_upper_bound") {
    auto flat = greedy_upper_bound(constant(5));
    REQUIRE(flat.has_value());
    CHECK(flat->length == 1);

    CHECK_FALSE(greedy_upper_bound(rotation(6)).has_value());

    auto c4 = greedy_upper_bound(cerny(4));
    REQUIRE(c4.has_value());
    CHECK(verify_reset_word(cerny(4), c4->word));
    CHECK(c4->length >= 9);
    CHECK(c4->length <= 27);

    // Never below the exact minimum.
    Seed seed{14};
    for (int trial = 0; trial < 60; ++trial) {
        Dfa a = gen(7, 2, seed, trial);
        auto exact = brute_force_shortest(a);
        auto greedy = greedy_upper_bound(a);
        CHECK(exact.has_value() == greedy.has_value());
        if (exact) {
            CHECK(greedy->length >= exact->length);
            CHECK(verify_reset_word(a, greedy->word));
        }
    }
}

TEST_CASE("text format round trip") {
    Dfa a = gen(9, 2, Seed{3}, 0);
    std::istringstream in(a.to_text());
    Dfa b = Dfa::parse(in);
    CHECK(b.to_text() == a.to_text());
}

TEST_CASE("text format accepts comments and blank lines") {
    std::istringstream in("# two-state sink\n\n2 2\n0 0  # both letters to 0\n0 0\n");
    Dfa a = Dfa::parse(in);
    CHECK(a.num_states() == 2);
    CHECK(a.step(1, 1) == 0);
}

TEST_CASE("text format rejects malformed input") {
    auto expect_parse_error = [](const char* text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(Dfa::parse(in), ParseError);
    };
    expect_parse_error("");
    expect_parse_error("2\n0 0\n0 0\n");
    expect_parse_error("2 2\n0 0\n");
    expect_parse_error("2 2\n0 0\n0 5\n");
    expect_parse_error("2 2\n0 0 1\n0 0\n");

    std::istringstream in("2 2\n0 0\n0 9\n");
    try {
        Dfa::parse(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}
