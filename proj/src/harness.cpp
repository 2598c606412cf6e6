#include "synchrosat/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace synchrosat {

Profile paper_profile() {
    Profile p{"paper", {}};
    for (int n = 1; n <= 20; ++n) p.sizes.emplace_back(n, 2000);
    for (int n = 25; n <= 50; n += 5) p.sizes.emplace_back(n, 2000);
    for (int n = 55; n <= 70; n += 5) p.sizes.emplace_back(n, 500);
    for (int n = 75; n <= 100; n += 5) p.sizes.emplace_back(n, 200);
    return p;
}

Profile desk_profile() {
    Profile p{"desk", {{2, 200}}};
    for (int n = 5; n <= 50; n += 5) p.sizes.emplace_back(n, 200);
    return p;
}

Profile parse_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Profile p{std::filesystem::path(path).stem().string(), {}};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        int n, trials;
        if (!(ls >> n)) continue;
        if (!(ls >> trials) || n < 1 || trials < 1)
            throw ParseError("expected 'n trials' with positive values", lineno);
        p.sizes.emplace_back(n, trials);
    }
    return p;
}

namespace {

TrialRecord run_one(int n, int trial_index, const Seed& seed, const SolveBudget& budget) {
    TrialRecord rec;
    rec.n = n;
    rec.trial_index = trial_index;
    rec.seed_key = seed.trial_key(static_cast<uint64_t>(n), static_cast<uint64_t>(trial_index));
    auto t0 = std::chrono::steady_clock::now();
    Dfa a = gen(n, 2, rec.seed_key);
    rec.synchronizing = is_synchronizing(a);
    if (rec.synchronizing) {
        SearchOptions opt;
        opt.budget = budget;
        try {
            ShortestResult res = shortest_reset_word(a, opt);
            rec.length = res.length;
            rec.sat_queries = res.queries;
            for (const QueryTrace& q : res.trace) rec.conflicts += q.conflicts;
        } catch (const BudgetExceeded&) {
            rec.status = TrialStatus::budget_exceeded;
            rec.length = -1;
        }
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const Profile& profile, Seed seed, const SolveBudget& budget,
                                    int jobs) {
    struct Task {
        int n;
        int trial_index;
    };
    std::vector<Task> tasks;
    for (auto [n, count] : profile.sizes)
        for (int i = 0; i < count; ++i) tasks.push_back({n, i});

    std::vector<TrialRecord> records(tasks.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            records[i] = run_one(tasks[i].n, tasks[i].trial_index, seed, budget);
        return records;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            records[i] = run_one(tasks[i].n, tasks[i].trial_index, seed, budget);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return records;
}

SizeSummary summarize(std::span<const TrialRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    SizeSummary s{};
    s.n = records.front().n;
    for (const TrialRecord& r : records) {
        if (r.n != s.n) throw std::invalid_argument("summarize: mixed n in record span");
        ++s.trials;
        if (r.status == TrialStatus::budget_exceeded) {
            ++s.budget_exceeded_count;
            continue;
        }
        if (r.synchronizing) {
            ++s.sync_count;
            ++s.histogram[r.length];
        }
    }
    s.sync_fraction = static_cast<double>(s.sync_count) /
                      static_cast<double>(s.trials - s.budget_exceeded_count);
    if (s.sync_count >= 1) {
        double sum = 0;
        for (auto [len, cnt] : s.histogram) sum += static_cast<double>(len) * cnt;
        s.mean = sum / static_cast<double>(s.sync_count);
        if (s.sync_count >= 2) {
            double sq = 0;
            for (auto [len, cnt] : s.histogram) {
                double d = static_cast<double>(len) - *s.mean;
                sq += d * d * cnt;
            }
            s.variance = sq / static_cast<double>(s.sync_count - 1);
            s.ratio = *s.mean > 0 ? std::sqrt(*s.variance) / *s.mean : 0.0;
        }
    }
    return s;
}

std::vector<SizeSummary> summarize_all(std::span<const TrialRecord> records) {
    std::vector<SizeSummary> out;
    size_t begin = 0;
    for (size_t i = 1; i <= records.size(); ++i) {
        if (i == records.size() || records[i].n != records[begin].n) {
            out.push_back(summarize(records.subspan(begin, i - begin)));
            begin = i;
        }
    }
    return out;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points, double n_min) {
    std::vector<std::pair<double, double>> logs;
    for (auto [n, mean] : points)
        if (n >= n_min && mean > 0) logs.emplace_back(std::log(n), std::log(mean));
    if (logs.size() < 2)
        throw std::invalid_argument("fit_power_law: need at least two points with n >= n_min");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(logs.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double rss = 0;
    for (auto [x, y] : logs) {
        double e = y - (slope * x + intercept);
        rss += e * e;
    }
    return FitResult{slope, intercept, std::exp(intercept), rss, n_min,
                     static_cast<int>(logs.size())};
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

}  // namespace

void emit(const std::string& out_dir, std::span<const TrialRecord> records,
          std::span<const SizeSummary> summaries, const std::optional<FitResult>& fit,
          const Profile& profile, uint64_t master_seed, const EmitOptions& opt) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    {
        auto out = open_out(dir / "trials.csv");
        out << "n,trial,seed_key,synchronizing,length,sat_queries,conflicts,status";
        if (opt.include_timings) out << ",seconds";
        out << '\n';
        for (const TrialRecord& r : records) {
            out << r.n << ',' << r.trial_index << ',' << r.seed_key << ','
                << (r.synchronizing ? 1 : 0) << ',';
            if (r.synchronizing && r.status == TrialStatus::ok) out << r.length;
            out << ',' << r.sat_queries << ',' << r.conflicts << ','
                << (r.status == TrialStatus::ok ? "ok" : "budget_exceeded");
            if (opt.include_timings) out << ',' << fmt(r.seconds);
            out << '\n';
        }
    }
    {
        auto out = open_out(dir / "summary.csv");
        out << "n,trials,sync_count,budget_exceeded,sync_fraction,mean,variance,ratio\n";
        for (const SizeSummary& s : summaries)
            out << s.n << ',' << s.trials << ',' << s.sync_count << ',' << s.budget_exceeded_count
                << ',' << fmt(s.sync_fraction) << ',' << opt_fmt(s.mean) << ','
                << opt_fmt(s.variance) << ',' << opt_fmt(s.ratio) << '\n';
    }
    {
        nlohmann::ordered_json j;
        j["profile"] = profile.name;
        j["master_seed"] = master_seed;
        j["trials_total"] = records.size();
        int64_t budget_failures = 0;
        for (const SizeSummary& s : summaries) budget_failures += s.budget_exceeded_count;
        j["budget_exceeded_total"] = budget_failures;
        if (fit) {
            j["fit"] = {{"slope", fit->slope},
                        {"intercept", fit->intercept},
                        {"coefficient", fit->coefficient},
                        {"residual_ss", fit->residual_ss},
                        {"n_min", fit->n_min},
                        {"points_used", fit->points_used}};
        }
        auto out = open_out(dir / "fit.json");
        out << j.dump(2) << '\n';
    }

    // Plot data. Histogram of the largest n with data, as a probability
    // distribution; scatter of (ln n, ln mean); mean with fitted curve;
    // ratio sqrt(variance)/mean against n.
    {
        auto out = open_out(dir / "fig2_hist.csv");
        out << "length,probability\n";
        const SizeSummary* biggest = nullptr;
        for (const SizeSummary& s : summaries)
            if (s.sync_count > 0 && (!biggest || s.n > biggest->n)) biggest = &s;
        if (biggest)
            for (auto [len, cnt] : biggest->histogram)
                out << len << ','
                    << fmt(static_cast<double>(cnt) / static_cast<double>(biggest->sync_count))
                    << '\n';
    }
    {
        auto out = open_out(dir / "fig3_loglog.csv");
        out << "log_n,log_mean\n";
        for (const SizeSummary& s : summaries)
            if (s.mean && *s.mean > 0)
                out << fmt(std::log(s.n)) << ',' << fmt(std::log(*s.mean)) << '\n';
    }
    {
        auto out = open_out(dir / "fig4_mean.csv");
        out << "n,mean,fitted\n";
        for (const SizeSummary& s : summaries)
            if (s.mean) {
                out << s.n << ',' << fmt(*s.mean) << ',';
                if (fit) out << fmt(fit->coefficient * std::pow(s.n, fit->slope));
                out << '\n';
            }
    }
    {
        auto out = open_out(dir / "fig5_ratio.csv");
        out << "n,ratio\n";
        for (const SizeSummary& s : summaries)
            if (s.ratio) out << s.n << ',' << fmt(*s.ratio) << '\n';
    }
}

}  // namespace synchrosat
