#pragma once

#include <cstdint>
#include <string>

#include "synchrosat/cnf.hpp"

namespace synchrosat {

enum class SolveStatus { sat, unsat, budget_exceeded };

struct SolveResult {
    SolveStatus status;
    Assignment model;  // total over the formula's variables when status == sat
    int64_t conflicts = 0;
    int64_t propagations = 0;
    double seconds = 0.0;
};

struct SolveBudget {
    int64_t max_conflicts = -1;  // < 0 means unlimited
    double max_seconds = -1.0;   // < 0 means unlimited
};

// Complete conflict-driven search: watched-literal propagation, activity
// ordering, first-UIP learning, Luby restarts. Deterministic for a given
// formula and seed; decisions start from polarity false.
// SAT models are checked against the formula before being returned.
SolveResult solve(const CnfFormula& f, const SolveBudget& budget = {}, uint64_t seed = 0);

bool check_model(const CnfFormula& f, const Assignment& asg);

// Bridge to an external SAT-competition style solver: writes DIMACS to a
// temporary file, runs `cmd <file>`, parses the "s ..."/"v ..." output.
SolveResult solve_external(const CnfFormula& f, const std::string& cmd);

}  // namespace synchrosat
