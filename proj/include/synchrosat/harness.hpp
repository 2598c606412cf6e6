#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synchrosat/random_model.hpp"
#include "synchrosat/shortest.hpp"

namespace synchrosat {

enum class TrialStatus { ok, budget_exceeded };

struct TrialRecord {
    int n;
    int trial_index;
    uint64_t seed_key;
    bool synchronizing;
    int length = -1;  // valid iff synchronizing and status ok
    int sat_queries = 0;
    int64_t conflicts = 0;  // total over all queries; deterministic
    double seconds = 0.0;   // wall time; excluded from deterministic outputs
    TrialStatus status = TrialStatus::ok;
};

struct SizeSummary {
    int n;
    int64_t trials;
    int64_t sync_count;
    int64_t budget_exceeded_count;
    double sync_fraction;
    std::optional<double> mean;        // needs >= 1 synchronizing ok trial
    std::optional<double> variance;    // Bessel-corrected, needs >= 2
    std::optional<double> ratio;       // sqrt(variance) / mean
    std::map<int, int64_t> histogram;  // length -> count, bin width 1
};

struct FitResult {
    double slope;
    double intercept;    // natural-log intercept
    double coefficient;  // exp(intercept)
    double residual_ss;
    double n_min;
    int points_used;
};

// Ordered list of (n, trial count) pairs.
struct Profile {
    std::string name;
    std::vector<std::pair<int, int>> sizes;
};

// The full protocol: 2000 trials for n in {1..20, 25, 30, ..., 50},
// 500 for {55, 60, 65, 70}, 200 for {75, 80, ..., 100}.
Profile paper_profile();

// Scaled-down desk profile: 200 trials for n in {2, 5, 10, 15, ..., 50}.
Profile desk_profile();

// Custom profile file: one "n trials" pair per line, '#' comments.
Profile parse_profile_file(const std::string& path);

// Runs every trial of the profile. Trials are independent (per-trial derived
// seeds), so results do not depend on the number of worker threads; records
// come back ordered by (n, trial_index).
std::vector<TrialRecord> run_trials(const Profile& profile, Seed seed, const SolveBudget& budget,
                                    int jobs = 1);

// Statistics over the records of a single n. Length statistics are taken over
// synchronizing ok trials only.
SizeSummary summarize(std::span<const TrialRecord> records);

std::vector<SizeSummary> summarize_all(std::span<const TrialRecord> records);

// Least squares of ln(mean) against ln(n) over points with n >= n_min.
// Throws std::invalid_argument with fewer than two usable points.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points, double n_min = 20.0);

struct EmitOptions {
    bool include_timings = false;  // wall times make outputs nondeterministic
};

// Writes trials.csv, summary.csv, fit.json and the four plot-data files
// (histogram for the largest n, log-log scatter, mean with fitted curve,
// ratio curve) into out_dir. Byte-deterministic unless timings are included.
void emit(const std::string& out_dir, std::span<const TrialRecord> records,
          std::span<const SizeSummary> summaries, const std::optional<FitResult>& fit,
          const Profile& profile, uint64_t master_seed, const EmitOptions& opt = {});

}  // namespace synchrosat
