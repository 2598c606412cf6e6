#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "synchrosat/harness.hpp"

namespace {

using namespace synchrosat;

// Shared exit-code contract: 0 success / domain-positive, 1 domain-negative
// (not synchronizing, no word), 2 input or usage error, 3 budget exceeded.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

std::string word_to_letters(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter x : w) s.push_back(static_cast<char>('a' + x));
    return s;
}

Dfa load(const std::string& path) {
    try {
        return Dfa::parse_file(path);
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << '\n';
        std::exit(kInputError);
    }
}

struct ShortestFlags {
    std::string solver = "internal";
    std::string solver_cmd;
    int64_t budget = -1;
    bool fig1_exact = false;
    bool json = false;
};

SearchOptions to_options(const ShortestFlags& f) {
    SearchOptions opt;
    if (f.solver == "external") {
        if (f.solver_cmd.empty()) {
            std::cerr << "--solver external requires --solver-cmd\n";
            std::exit(kInputError);
        }
        opt.backend = SolverBackend::external;
        opt.external_cmd = f.solver_cmd;
    }
    opt.budget.max_conflicts = f.budget;
    opt.fig1_exact = f.fig1_exact;
    return opt;
}

int cmd_check(const std::string& file) {
    Dfa a = load(file);
    bool sync = is_synchronizing(a);
    std::cout << "synchronizing: " << (sync ? "true" : "false") << '\n';
    return sync ? kOk : kNegative;
}

int cmd_shortest(const std::string& file, const ShortestFlags& flags) {
    Dfa a = load(file);
    if (!is_synchronizing(a)) {
        std::cerr << "automaton is not synchronizing\n";
        return kNegative;
    }
    try {
        ShortestResult res = shortest_reset_word(a, to_options(flags));
        if (flags.json) {
            nlohmann::ordered_json j;
            j["length"] = res.length;
            j["word"] = word_to_letters(res.word);
            j["queries"] = res.queries;
            j["trace"] = nlohmann::ordered_json::array();
            for (const QueryTrace& q : res.trace)
                j["trace"].push_back({{"c", q.c},
                                      {"sat", q.satisfiable},
                                      {"conflicts", q.conflicts},
                                      {"seconds", q.seconds}});
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "length: " << res.length << '\n'
                      << "word: " << word_to_letters(res.word) << '\n';
            for (const QueryTrace& q : res.trace)
                std::cout << "query c=" << q.c << " -> " << (q.satisfiable ? "sat" : "unsat")
                          << " (" << q.conflicts << " conflicts)\n";
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return kBudget;
    }
}

int cmd_encode(const std::string& file, int c) {
    Dfa a = load(file);
    try {
        auto [formula, vm] = encode(a, c);
        std::cout << to_dimacs(formula);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

int cmd_gen(int n, int k, uint64_t seed, uint64_t trial, const std::string& out_path) {
    Dfa a = gen(n, k, Seed{seed}, trial);
    if (out_path.empty()) {
        std::cout << a.to_text();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << '\n';
            return kInputError;
        }
        out << a.to_text();
    }
    return kOk;
}

int cmd_oracle(const std::string& file, int max_states) {
    Dfa a = load(file);
    try {
        auto res = brute_force_shortest(a, max_states);
        if (!res) {
            std::cout << "not synchronizing\n";
            return kNegative;
        }
        std::cout << "length: " << res->length << '\n'
                  << "word: " << word_to_letters(res->word) << '\n';
        return kOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInputError;
    }
}

int cmd_experiment(const std::string& profile_name, uint64_t seed, const std::string& out_dir,
                   int jobs, int64_t budget, double n_min, bool timings) {
    Profile profile;
    if (profile_name == "paper")
        profile = paper_profile();
    else if (profile_name == "desk")
        profile = desk_profile();
    else {
        try {
            profile = parse_profile_file(profile_name);
        } catch (const std::exception& e) {
            std::cerr << profile_name << ": " << e.what() << '\n';
            return kInputError;
        }
    }
    SolveBudget b;
    b.max_conflicts = budget;
    auto records = run_trials(profile, Seed{seed}, b, jobs);
    auto summaries = summarize_all(records);

    std::optional<FitResult> fit;
    std::vector<std::pair<double, double>> points;
    for (const SizeSummary& s : summaries)
        if (s.mean) points.emplace_back(s.n, *s.mean);
    try {
        fit = fit_power_law(points, n_min);
    } catch (const std::invalid_argument&) {
        // Too few sizes above n_min; emit without a fit.
    }

    try {
        emit(out_dir, records, summaries, fit, profile, seed, EmitOptions{timings});
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kInputError;
    }

    int64_t budget_failures = 0;
    double total_seconds = 0;
    for (const TrialRecord& r : records) {
        if (r.status == TrialStatus::budget_exceeded) ++budget_failures;
        total_seconds += r.seconds;
    }
    std::cerr << "ran " << records.size() << " trials in " << total_seconds << "s cpu; "
              << budget_failures << " exceeded the budget\n";
    if (fit)
        std::cout << "fit: slope " << fit->slope << ", coefficient " << fit->coefficient << '\n';
    return budget_failures == 0 ? kOk : kBudget;
}

int cmd_fit(const std::string& summary_path, double n_min, bool json) {
    std::ifstream in(summary_path);
    if (!in) {
        std::cerr << "cannot open " << summary_path << '\n';
        return kInputError;
    }
    std::vector<std::pair<double, double>> points;
    std::string line;
    std::getline(in, line);  // header
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() < 6) {
            std::cerr << summary_path << ": line " << lineno << ": expected summary row\n";
            return kInputError;
        }
        if (fields[5].empty()) continue;  // no mean for this n
        points.emplace_back(std::stod(fields[0]), std::stod(fields[5]));
    }
    try {
        FitResult fit = fit_power_law(points, n_min);
        if (json) {
            nlohmann::ordered_json j = {{"slope", fit.slope},
                                        {"intercept", fit.intercept},
                                        {"coefficient", fit.coefficient},
                                        {"residual_ss", fit.residual_ss},
                                        {"n_min", fit.n_min},
                                        {"points_used", fit.points_used}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "slope: " << fit.slope << '\n'
                      << "intercept: " << fit.intercept << '\n'
                      << "coefficient: " << fit.coefficient << '\n';
        }
        return kOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact shortest reset words of DFAs via SAT, plus a Monte Carlo study"};
    app.require_subcommand(1);

    std::string file;
    ShortestFlags sflags;
    int c = 0;
    int gen_n = 0, gen_k = 2;
    uint64_t seed = 0, trial = 0;
    std::string out_path, out_dir = "out", profile = "desk", summary_path;
    int jobs = 1, oracle_max = 14;
    int64_t budget = -1;
    double n_min = 20.0;
    bool json = false, timings = false;

    auto* check = app.add_subcommand("check", "Decide whether an automaton is synchronizing");
    check->add_option("file", file, "automaton file")->required();

    auto* shortest = app.add_subcommand("shortest", "Exact shortest reset word (binary search over SAT)");
    shortest->add_option("file", file)->required();
    shortest->add_option("--solver", sflags.solver, "internal|external")
        ->check(CLI::IsMember({"internal", "external"}));
    shortest->add_option("--solver-cmd", sflags.solver_cmd, "external solver command");
    shortest->add_option("--budget", sflags.budget, "conflict limit per SAT query");
    shortest->add_flag("--fig1-exact", sflags.fig1_exact, "start the search from r = n^3");
    shortest->add_flag("--json", sflags.json);

    auto* enc = app.add_subcommand("encode", "Emit the length-c reset-word formula as DIMACS");
    enc->add_option("file", file)->required();
    enc->add_option("c", c, "target word length")->required()->check(CLI::NonNegativeNumber);

    auto* g = app.add_subcommand("gen", "Sample a uniform random automaton");
    g->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
    g->add_option("--k", gen_k)->check(CLI::PositiveNumber);
    g->add_option("--seed", seed, "master seed");
    g->add_option("--trial", trial, "trial index for seed derivation");
    g->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "Exact shortest reset word by subset BFS (small n)");
    oracle->add_option("file", file)->required();
    oracle->add_option("--max-states", oracle_max);

    auto* exp = app.add_subcommand("experiment", "Run the Monte Carlo protocol");
    exp->add_option("--profile", profile, "paper|desk|<file>");
    exp->add_option("--seed", seed);
    exp->add_option("--out-dir", out_dir);
    exp->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    exp->add_option("--budget", budget, "conflict limit per SAT query");
    exp->add_option("--n-min", n_min, "smallest n used by the fit");
    exp->add_flag("--timings", timings, "include wall times in trials.csv (nondeterministic)");

    auto* fit = app.add_subcommand("fit", "Power-law fit over a summary.csv");
    fit->add_option("--summary", summary_path)->required();
    fit->add_option("--n-min", n_min);
    fit->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    if (check->parsed()) return cmd_check(file);
    if (shortest->parsed()) return cmd_shortest(file, sflags);
    if (enc->parsed()) return cmd_encode(file, c);
    if (g->parsed()) return cmd_gen(gen_n, gen_k, seed, trial, out_path);
    if (oracle->parsed()) return cmd_oracle(file, oracle_max);
    if (exp->parsed()) return cmd_experiment(profile, seed, out_dir, jobs, budget, n_min, timings);
    if (fit->parsed()) return cmd_fit(summary_path, n_min, json);
    return kInputError;
}
