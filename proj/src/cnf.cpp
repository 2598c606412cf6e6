#include "synchrosat/cnf.hpp"

#include <sstream>
#include <stdexcept>

namespace synchrosat {

std::pair<CnfFormula, VarMap> encode(const Dfa& a, int c) {
    if (a.alphabet_size() != 2)
        throw std::invalid_argument("encode: the encoding requires a 2-letter alphabet");
    if (c < 0) throw std::invalid_argument("encode: negative target length");

    const int n = a.num_states();
    VarMap vm{n, c};
    CnfFormula f;
    f.num_vars = vm.num_vars();
    f.clauses.reserve(static_cast<size_t>(n) * (n - 1) / 2 + static_cast<size_t>(n) * (2 * c + 1));

    // Every state is a possible start.
    for (int q = 0; q < n; ++q) f.clauses.push_back({vm.x(q, 0)});

    // Reachability propagates along the chosen letter: u_{t+1} true takes the
    // 'a' transition, false the 'b' transition.
    for (int t = 0; t < c; ++t) {
        for (int q = 0; q < n; ++q) {
            f.clauses.push_back({-vm.x(q, t), -vm.u(t + 1), vm.x(a.step(q, 0), t + 1)});
            f.clauses.push_back({-vm.x(q, t), vm.u(t + 1), vm.x(a.step(q, 1), t + 1)});
        }
    }

    // At most one state survives at time c.
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) f.clauses.push_back({-vm.x(q, c), -vm.x(p, c)});

    return {std::move(f), vm};
}

Word decode_word(const Assignment& asg, const VarMap& vm) {
    Word w;
    w.reserve(vm.c);
    for (int t = 1; t <= vm.c; ++t) w.push_back(asg[vm.u(t)] ? 0 : 1);
    return w;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& cl : f.clauses) {
        for (Lit l : cl) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

}  // namespace synchrosat
