#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace synchrosat {

using State = int;
using Letter = int;  // index into the alphabet, 0 = 'a', 1 = 'b'
using Word = std::vector<Letter>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Complete deterministic automaton over a k-letter alphabet.
/// States are 0..n-1, letters 0..k-1; the transition table is total.
/// Immutable after construction.
class Dfa {
public:
    // delta is row-major: delta[q*k + x] = target of state q under letter x.
    Dfa(int n, int k, std::vector<State> delta);

    int num_states() const { return n_; }
    int alphabet_size() const { return k_; }

    State step(State q, Letter x) const { return delta_[static_cast<size_t>(q) * k_ + x]; }

    // Text format: first non-comment line "n k", then n rows of k targets.
    // '#' starts a comment that runs to end of line.
    static Dfa parse(std::istream& in);
    static Dfa parse_file(const std::string& path);
    std::string to_text() const;

private:
    int n_;
    int k_;
    std::vector<State> delta_;
};

State apply_word(const Dfa& a, State q, const Word& w);

// S and the result are sorted, duplicate-free state sets.
std::vector<State> image(const Dfa& a, const std::vector<State>& s, const Word& w);

std::vector<State> all_states(const Dfa& a);

bool verify_reset_word(const Dfa& a, const Word& w);

// Backward BFS from the diagonal of the unordered-pair graph; O(n^2 k).
bool is_synchronizing(const Dfa& a);

struct ShortestWord {
    int length;
    Word word;
};

// Subset BFS from the full state set; exact but exponential.
// Throws std::invalid_argument when a.num_states() > max_states.
std::optional<ShortestWord> brute_force_shortest(const Dfa& a, int max_states = 14);

// Pair-merging heuristic; result is verified before being returned.
// The returned length upper-bounds the shortest reset word.
std::optional<ShortestWord> greedy_upper_bound(const Dfa& a);

}  // namespace synchrosat
