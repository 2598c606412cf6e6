#include "synchrosat/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace synchrosat {

namespace {

// Internal literal encoding: variable v in 0..n-1, literal 2v (positive)
// or 2v+1 (negative).
inline int mk_lit(int var, bool neg) { return 2 * var + (neg ? 1 : 0); }
inline int lit_var(int l) { return l >> 1; }
inline bool lit_neg(int l) { return l & 1; }
inline int lit_flip(int l) { return l ^ 1; }

enum class LBool : uint8_t { unknown, true_, false_ };

inline LBool lit_value(LBool var_val, int l) {
    if (var_val == LBool::unknown) return LBool::unknown;
    bool t = (var_val == LBool::true_) != lit_neg(l);
    return t ? LBool::true_ : LBool::false_;
}

struct SClause {
    std::vector<int> lits;
    double activity = 0.0;
    int lbd = 0;
    bool learnt = false;
    bool deleted = false;
};

struct Watcher {
    int clause;
    int blocker;
};

class Cdcl {
public:
    explicit Cdcl(const CnfFormula& f, uint64_t seed);
    SolveResult run(const SolveBudget& budget);

private:
    int nvars_;
    std::vector<SClause> clauses_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by literal
    std::vector<LBool> assigns_;
    std::vector<bool> phase_;  // saved polarity, starts all false
    std::vector<int> level_;
    std::vector<int> reason_;  // clause index or -1
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;
    bool unsat_ = false;

    // Activity order: binary max-heap over variables.
    std::vector<double> activity_;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;  // -1 when not in heap
    double var_inc_ = 1.0;
    static constexpr double kVarDecay = 0.95;
    double cla_inc_ = 1.0;
    static constexpr double kClaDecay = 0.999;

    int64_t conflicts_ = 0;
    int64_t propagations_ = 0;
    int64_t learnt_count_ = 0;
    int64_t max_learnt_ = 0;

    std::vector<bool> seen_;
    std::vector<int> learnt_tmp_;

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    LBool value(int lit) const { return lit_value(assigns_[lit_var(lit)], lit); }

    void heap_up(int i);
    void heap_down(int i);
    void heap_insert(int v);
    int heap_pop();
    void bump_var(int v);
    void bump_clause(SClause& c);
    void decay();

    int add_clause(std::vector<int> lits, bool learnt);
    void attach(int ci);
    void enqueue(int lit, int reason);
    int propagate();  // returns conflicting clause index or -1
    void analyze(int confl, std::vector<int>& out_learnt, int& out_btlevel);
    void backtrack(int level);
    void reduce_db();
};

Cdcl::Cdcl(const CnfFormula& f, uint64_t seed) : nvars_(f.num_vars) {
    watches_.resize(2 * static_cast<size_t>(nvars_));
    assigns_.assign(nvars_, LBool::unknown);
    phase_.assign(nvars_, false);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, -1);
    activity_.assign(nvars_, 0.0);
    heap_pos_.assign(nvars_, -1);
    seen_.assign(nvars_, false);

    // Optional heuristic perturbation; zero seed keeps the plain index order.
    if (seed != 0) {
        uint64_t s = seed;
        for (int v = 0; v < nvars_; ++v) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            activity_[v] = static_cast<double>(s >> 40) * 1e-12;
        }
    }
    for (int v = 0; v < nvars_; ++v) heap_insert(v);

    for (const Clause& cl : f.clauses) {
        std::vector<int> lits;
        lits.reserve(cl.size());
        for (Lit l : cl) {
            int var = std::abs(l) - 1;
            if (var < 0 || var >= nvars_) throw std::invalid_argument("solve: literal out of range");
            lits.push_back(mk_lit(var, l < 0));
        }
        if (add_clause(std::move(lits), false) == -2) {
            unsat_ = true;
            return;
        }
    }
}

void Cdcl::heap_up(int i) {
    int v = heap_[i];
    while (i > 0) {
        int p = (i - 1) / 2;
        if (activity_[heap_[p]] >= activity_[v]) break;
        heap_[i] = heap_[p];
        heap_pos_[heap_[i]] = i;
        i = p;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Cdcl::heap_down(int i) {
    int v = heap_[i];
    int sz = static_cast<int>(heap_.size());
    while (2 * i + 1 < sz) {
        int c = 2 * i + 1;
        if (c + 1 < sz && activity_[heap_[c + 1]] > activity_[heap_[c]]) ++c;
        if (activity_[heap_[c]] <= activity_[v]) break;
        heap_[i] = heap_[c];
        heap_pos_[heap_[i]] = i;
        i = c;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Cdcl::heap_insert(int v) {
    if (heap_pos_[v] >= 0) return;
    heap_.push_back(v);
    heap_up(static_cast<int>(heap_.size()) - 1);
}

int Cdcl::heap_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_down(0);
    }
    return v;
}

void Cdcl::bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void Cdcl::bump_clause(SClause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
        for (SClause& cl : clauses_)
            if (cl.learnt) cl.activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

void Cdcl::decay() {
    var_inc_ /= kVarDecay;
    cla_inc_ /= kClaDecay;
}

// Returns the clause index, -1 when the clause is absorbed (tautology or
// already-satisfied unit), -2 on an immediate top-level conflict.
int Cdcl::add_clause(std::vector<int> lits, bool learnt) {
    if (!learnt) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (size_t i = 0; i + 1 < lits.size(); ++i)
            if (lits[i] == lit_flip(lits[i + 1])) return -1;
        std::erase_if(lits, [&](int l) { return value(l) == LBool::false_ && level_[lit_var(l)] == 0; });
        for (int l : lits)
            if (value(l) == LBool::true_ && level_[lit_var(l)] == 0) return -1;
        if (lits.empty()) return -2;
    }
    if (lits.size() == 1) {
        if (value(lits[0]) == LBool::false_) return -2;
        if (value(lits[0]) == LBool::unknown) enqueue(lits[0], -1);
        return -1;
    }
    int ci = static_cast<int>(clauses_.size());
    clauses_.push_back(SClause{std::move(lits), 0.0, 0, learnt, false});
    attach(ci);
    if (learnt) ++learnt_count_;
    return ci;
}

void Cdcl::attach(int ci) {
    const auto& lits = clauses_[ci].lits;
    watches_[lit_flip(lits[0])].push_back({ci, lits[1]});
    watches_[lit_flip(lits[1])].push_back({ci, lits[0]});
}

void Cdcl::enqueue(int lit, int reason) {
    int v = lit_var(lit);
    assigns_[v] = lit_neg(lit) ? LBool::false_ : LBool::true_;
    phase_[v] = !lit_neg(lit);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
}

int Cdcl::propagate() {
    while (qhead_ < trail_.size()) {
        int lit = trail_[qhead_++];
        ++propagations_;
        auto& ws = watches_[lit];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            Watcher w = ws[i];
            if (value(w.blocker) == LBool::true_) {
                ws[keep++] = w;
                continue;
            }
            SClause& c = clauses_[w.clause];
            if (c.deleted) continue;
            auto& lits = c.lits;
            int false_lit = lit_flip(lit);
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            if (value(lits[0]) == LBool::true_) {
                ws[keep++] = {w.clause, lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < lits.size(); ++k) {
                if (value(lits[k]) != LBool::false_) {
                    std::swap(lits[1], lits[k]);
                    watches_[lit_flip(lits[1])].push_back({w.clause, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = {w.clause, lits[0]};
            if (value(lits[0]) == LBool::false_) {
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return w.clause;
            }
            enqueue(lits[0], w.clause);
        }
        ws.resize(keep);
    }
    return -1;
}

void Cdcl::analyze(int confl, std::vector<int>& out_learnt, int& out_btlevel) {
    out_learnt.clear();
    out_learnt.push_back(0);  // placeholder for the asserting literal
    int path = 0;
    int lit = -1;
    size_t idx = trail_.size();

    for (;;) {
        SClause& c = clauses_[confl];
        if (c.learnt) bump_clause(c);
        for (size_t j = (lit == -1 ? 0 : 1); j < c.lits.size(); ++j) {
            int q = c.lits[j];
            int v = lit_var(q);
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = true;
            bump_var(v);
            if (level_[v] == decision_level())
                ++path;
            else
                out_learnt.push_back(q);
        }
        do {
            lit = trail_[--idx];
        } while (!seen_[lit_var(lit)]);
        seen_[lit_var(lit)] = false;
        confl = reason_[lit_var(lit)];
        if (--path == 0) break;
        // lit is on the current level with a reason clause; its first literal
        // is lit itself.
    }
    out_learnt[0] = lit_flip(lit);

    // Cheap self-subsumption: drop literals implied by the rest at level 0 or
    // whose full reason is already in the clause.
    auto redundant = [&](int l) {
        int r = reason_[lit_var(l)];
        if (r < 0) return false;
        for (size_t j = 1; j < clauses_[r].lits.size(); ++j) {
            int v = lit_var(clauses_[r].lits[j]);
            if (level_[v] != 0 && !seen_[v]) return false;
        }
        return true;
    };
    const std::vector<int> candidates(out_learnt.begin() + 1, out_learnt.end());
    size_t keep = 1;
    for (int l : candidates)
        if (!redundant(l)) out_learnt[keep++] = l;
    for (int l : candidates) seen_[lit_var(l)] = false;
    out_learnt.resize(keep);

    out_btlevel = 0;
    if (out_learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t j = 2; j < out_learnt.size(); ++j)
            if (level_[lit_var(out_learnt[j])] > level_[lit_var(out_learnt[max_i])]) max_i = j;
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[lit_var(out_learnt[1])];
    }
}

void Cdcl::backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    for (size_t i = trail_.size(); i > static_cast<size_t>(trail_lim_[lvl]);) {
        int v = lit_var(trail_[--i]);
        assigns_[v] = LBool::unknown;
        reason_[v] = -1;
        heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

void Cdcl::reduce_db() {
    std::vector<int> learnts;
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
        const SClause& c = clauses_[ci];
        if (c.learnt && !c.deleted && c.lits.size() > 2) learnts.push_back(ci);
    }
    std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
        if (clauses_[a].activity != clauses_[b].activity)
            return clauses_[a].activity < clauses_[b].activity;
        return a < b;
    });
    std::vector<bool> locked(clauses_.size(), false);
    for (int l : trail_)
        if (reason_[lit_var(l)] >= 0) locked[reason_[lit_var(l)]] = true;
    size_t removed = 0;
    for (size_t i = 0; i < learnts.size() / 2; ++i) {
        if (locked[learnts[i]]) continue;
        clauses_[learnts[i]].deleted = true;
        ++removed;
    }
    learnt_count_ -= static_cast<int64_t>(removed);
    // Rebuild watcher lists without the deleted clauses.
    for (auto& ws : watches_)
        std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.clause].deleted; });
}

// Luby sequence 1 1 2 1 1 2 4 ...; i is 1-based.
int64_t luby_seq(int64_t i) {
    for (int64_t k = 1;; ++k) {
        if (i == (int64_t{1} << k) - 1) return int64_t{1} << (k - 1);
        if (i < (int64_t{1} << k) - 1) return luby_seq(i - (int64_t{1} << (k - 1)) + 1);
    }
}

SolveResult Cdcl::run(const SolveBudget& budget) {
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](SolveStatus st, Assignment model = {}) {
        SolveResult r;
        r.status = st;
        r.model = std::move(model);
        r.conflicts = conflicts_;
        r.propagations = propagations_;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    if (unsat_) return finish(SolveStatus::unsat);

    max_learnt_ = std::max<int64_t>(static_cast<int64_t>(clauses_.size()) / 3, 1000);
    constexpr int64_t kRestartBase = 100;
    int64_t restart_idx = 1;
    int64_t restart_budget = kRestartBase * luby_seq(restart_idx);
    int64_t conflicts_at_restart = 0;
    std::vector<int> learnt;
    int btlevel;

    for (;;) {
        int confl = propagate();
        if (confl >= 0) {
            ++conflicts_;
            if (decision_level() == 0) return finish(SolveStatus::unsat);
            analyze(confl, learnt, btlevel);
            backtrack(btlevel);
            if (learnt.size() == 1) {
                enqueue(learnt[0], -1);
            } else {
                int ci = add_clause(learnt, true);
                bump_clause(clauses_[ci]);
                enqueue(learnt[0], ci);
            }
            decay();
            if (budget.max_conflicts >= 0 && conflicts_ >= budget.max_conflicts)
                return finish(SolveStatus::budget_exceeded);
            if (budget.max_seconds >= 0 && (conflicts_ & 255) == 0 &&
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
                    budget.max_seconds)
                return finish(SolveStatus::budget_exceeded);
        } else {
            if (conflicts_ - conflicts_at_restart >= restart_budget) {
                conflicts_at_restart = conflicts_;
                restart_budget = kRestartBase * luby_seq(++restart_idx);
                backtrack(0);
            }
            if (learnt_count_ > max_learnt_) {
                reduce_db();
                max_learnt_ += max_learnt_ / 2;
            }
            int next = -1;
            while (!heap_.empty()) {
                int v = heap_pop();
                if (assigns_[v] == LBool::unknown) {
                    next = v;
                    break;
                }
            }
            if (next == -1) {
                Assignment model(nvars_ + 1, false);
                for (int v = 0; v < nvars_; ++v) model[v + 1] = assigns_[v] == LBool::true_;
                return finish(SolveStatus::sat, std::move(model));
            }
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(mk_lit(next, !phase_[next]), -1);
        }
    }
}

}  // namespace

SolveResult solve(const CnfFormula& f, const SolveBudget& budget, uint64_t seed) {
    Cdcl solver(f, seed);
    SolveResult r = solver.run(budget);
    if (r.status == SolveStatus::sat && !check_model(f, r.model))
        throw std::logic_error("solve: produced model fails its own formula");
    return r;
}

bool check_model(const CnfFormula& f, const Assignment& asg) {
    if (asg.size() < static_cast<size_t>(f.num_vars) + 1) return false;
    for (const Clause& cl : f.clauses) {
        bool sat = false;
        for (Lit l : cl) {
            int v = std::abs(l);
            if (asg[v] == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

SolveResult solve_external(const CnfFormula& f, const std::string& cmd) {
    namespace fs = std::filesystem;
    auto t0 = std::chrono::steady_clock::now();
    fs::path dimacs = fs::temp_directory_path() /
                      ("synchrosat_" + std::to_string(::getpid()) + "_" +
                       std::to_string(reinterpret_cast<uintptr_t>(&f)) + ".cnf");
    {
        std::ofstream out(dimacs);
        if (!out) throw std::runtime_error("cannot write " + dimacs.string());
        out << to_dimacs(f);
    }
    std::string full = cmd + " " + dimacs.string();
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(full.c_str(), "r"), pclose);
    if (!pipe) {
        fs::remove(dimacs);
        throw std::runtime_error("cannot run external solver: " + cmd);
    }
    std::string output;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe.get())) output.append(buf, got);
    pipe.reset();
    fs::remove(dimacs);

    SolveResult r;
    r.status = SolveStatus::budget_exceeded;
    bool verdict = false;
    Assignment model(f.num_vars + 1, false);
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("s ", 0) == 0) {
            verdict = true;
            if (line.find("UNSATISFIABLE") != std::string::npos)
                r.status = SolveStatus::unsat;
            else if (line.find("SATISFIABLE") != std::string::npos)
                r.status = SolveStatus::sat;
            else
                verdict = false;
        } else if (line.rfind("v ", 0) == 0) {
            std::istringstream vs(line.substr(2));
            int l;
            while (vs >> l)
                if (l != 0 && std::abs(l) <= f.num_vars) model[std::abs(l)] = l > 0;
        }
    }
    if (!verdict) throw std::runtime_error("external solver gave no verdict: " + cmd);
    if (r.status == SolveStatus::sat) {
        if (!check_model(f, model))
            throw std::runtime_error("external solver model fails the formula: " + cmd);
        r.model = std::move(model);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace synchrosat
