#pragma once

#include <string>
#include <utility>
#include <vector>

#include "synchrosat/dfa.hpp"

namespace synchrosat {

// A literal is a nonzero integer in DIMACS convention: +v asserts variable v,
// -v asserts its negation.
using Lit = int;
using Clause = std::vector<Lit>;

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;
};

// Total truth assignment, 1-based: values[v] is the value of variable v.
// values[0] is unused.
using Assignment = std::vector<bool>;

/// Variable layout of the length-c reachability encoding.
/// u_t (t in 1..c) selects the t-th letter: true = 'a', false = 'b'.
/// x(q,t) (q in 0..n-1, t in 0..c) marks that q may be reachable from some
/// state by the length-t prefix.
struct VarMap {
    int n;
    int c;

    int u(int t) const { return t; }
    int x(int q, int t) const { return c + t * n + q + 1; }
    int num_vars() const { return (c + 1) * n + c; }
};

// Builds the 3-CNF formula that is satisfiable iff the automaton has a reset
// word of length exactly c. Requires a 2-letter alphabet.
// Clause order is fixed: the n initial units, then for each t in 0..c-1 and
// each q the two step clauses (letter a first), then the at-most-one clauses
// over pairs p < q at time c.
std::pair<CnfFormula, VarMap> encode(const Dfa& a, int c);

// Reads the word off the u variables of a satisfying assignment.
Word decode_word(const Assignment& asg, const VarMap& vm);

std::string to_dimacs(const CnfFormula& f);

}  // namespace synchrosat
