#include "synchrosat/dfa.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace synchrosat {

Dfa::Dfa(int n, int k, std::vector<State> delta) : n_(n), k_(k), delta_(std::move(delta)) {
    if (n < 1) throw std::invalid_argument("Dfa: need at least one state");
    if (k < 1) throw std::invalid_argument("Dfa: need at least one letter");
    if (delta_.size() != static_cast<size_t>(n) * k)
        throw std::invalid_argument("Dfa: transition table has wrong size");
    for (State t : delta_)
        if (t < 0 || t >= n) throw std::invalid_argument("Dfa: transition target out of range");
}

Dfa Dfa::parse(std::istream& in) {
    std::string raw;
    int lineno = 0;
    int n = -1, k = -1;
    std::vector<State> delta;
    int rows_read = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(raw);
        if (n < 0) {
            if (!(ls >> n >> k)) throw ParseError("expected header 'n k'", lineno);
            if (n < 1 || k < 1) throw ParseError("n and k must be positive", lineno);
            delta.reserve(static_cast<size_t>(n) * k);
            continue;
        }
        if (rows_read == n) {
            std::string junk;
            if (ls >> junk) throw ParseError("unexpected content after transition table", lineno);
            continue;
        }
        State t;
        int cols = 0;
        while (ls >> t) {
            if (t < 0 || t >= n) throw ParseError("transition target out of range", lineno);
            delta.push_back(t);
            ++cols;
        }
        if (cols == 0) continue;  // blank or comment-only line
        if (cols != k) throw ParseError("expected " + std::to_string(k) + " targets", lineno);
        ++rows_read;
    }
    if (n < 0) throw ParseError("empty input", lineno);
    if (rows_read != n) throw ParseError("expected " + std::to_string(n) + " transition rows", lineno);
    return Dfa(n, k, std::move(delta));
}

Dfa Dfa::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse(in);
}

std::string Dfa::to_text() const {
    std::ostringstream out;
    out << n_ << ' ' << k_ << '\n';
    for (int q = 0; q < n_; ++q) {
        for (int x = 0; x < k_; ++x) out << (x ? " " : "") << step(q, x);
        out << '\n';
    }
    return out.str();
}

State apply_word(const Dfa& a, State q, const Word& w) {
    for (Letter x : w) q = a.step(q, x);
    return q;
}

std::vector<State> all_states(const Dfa& a) {
    std::vector<State> s(a.num_states());
    std::iota(s.begin(), s.end(), 0);
    return s;
}

std::vector<State> image(const Dfa& a, const std::vector<State>& s, const Word& w) {
    std::vector<State> out;
    out.reserve(s.size());
    for (State q : s) out.push_back(apply_word(a, q, w));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool verify_reset_word(const Dfa& a, const Word& w) {
    return image(a, all_states(a), w).size() == 1;
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Index of the unordered pair {p,q} with p <= q in a triangular layout.
inline int pair_index(int p, int q, int n) {
    if (p > q) std::swap(p, q);
    return p * n - p * (p - 1) / 2 + (q - p);
}

// Distance of every unordered pair to the diagonal, via backward BFS.
// dist[pair_index(p,p)] == 0; kUnreached marks pairs that never merge.
std::vector<int> pair_distances(const Dfa& a) {
    const int n = a.num_states();
    const int k = a.alphabet_size();
    // Inverse transitions: inv[x][t] lists states q with step(q,x) == t.
    std::vector<std::vector<std::vector<State>>> inv(k, std::vector<std::vector<State>>(n));
    for (int q = 0; q < n; ++q)
        for (int x = 0; x < k; ++x) inv[x][a.step(q, x)].push_back(q);

    std::vector<int> dist(static_cast<size_t>(n) * (n + 1) / 2, kUnreached);
    std::deque<std::pair<State, State>> queue;
    for (int q = 0; q < n; ++q) {
        dist[pair_index(q, q, n)] = 0;
        queue.emplace_back(q, q);
    }
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        int d = dist[pair_index(p, q, n)];
        for (int x = 0; x < k; ++x) {
            for (State pp : inv[x][p]) {
                for (State qq : inv[x][q]) {
                    if (pp == qq) continue;
                    int& dd = dist[pair_index(pp, qq, n)];
                    if (dd == kUnreached) {
                        dd = d + 1;
                        queue.emplace_back(std::min(pp, qq), std::max(pp, qq));
                    }
                }
            }
        }
    }
    return dist;
}

}  // namespace

bool is_synchronizing(const Dfa& a) {
    auto dist = pair_distances(a);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreached; });
}

std::optional<ShortestWord> brute_force_shortest(const Dfa& a, int max_states) {
    const int n = a.num_states();
    const int k = a.alphabet_size();
    if (n > max_states)
        throw std::invalid_argument("brute_force_shortest: " + std::to_string(n) +
                                    " states exceeds the limit of " + std::to_string(max_states));
    if (n == 1) return ShortestWord{0, {}};

    using Mask = uint32_t;
    const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
    // parent[m] packs (predecessor mask << 5) | letter; kNoParent marks unvisited.
    constexpr uint64_t kNoParent = ~uint64_t{0};
    std::vector<uint64_t> parent(full + 1, kNoParent);
    std::deque<Mask> queue;
    parent[full] = (static_cast<uint64_t>(full) << 5) | 31;  // self loop sentinel letter
    queue.push_back(full);
    while (!queue.empty()) {
        Mask m = queue.front();
        queue.pop_front();
        for (int x = 0; x < k; ++x) {
            Mask succ = 0;
            for (Mask rest = m; rest;) {
                int q = std::countr_zero(rest);
                rest &= rest - 1;
                succ |= Mask{1} << a.step(q, x);
            }
            if (parent[succ] != kNoParent) continue;
            parent[succ] = (static_cast<uint64_t>(m) << 5) | static_cast<unsigned>(x);
            if (std::popcount(succ) == 1) {
                Word w;
                for (Mask cur = succ; cur != full;) {
                    w.push_back(static_cast<Letter>(parent[cur] & 31));
                    cur = static_cast<Mask>(parent[cur] >> 5);
                }
                std::reverse(w.begin(), w.end());
                return ShortestWord{static_cast<int>(w.size()), std::move(w)};
            }
            queue.push_back(succ);
        }
    }
    return std::nullopt;
}

std::optional<ShortestWord> greedy_upper_bound(const Dfa& a) {
    const int n = a.num_states();
    if (n == 1) return ShortestWord{0, {}};
    auto dist = pair_distances(a);
    if (std::any_of(dist.begin(), dist.end(), [](int d) { return d == kUnreached; }))
        return std::nullopt;

    Word w;
    std::vector<State> s = all_states(a);
    while (s.size() > 1) {
        // Closest-to-merging pair in the current image, ties to smallest (p,q).
        int best_p = -1, best_q = -1, best_d = kUnreached;
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (int d = dist[pair_index(s[i], s[j], n)]; d < best_d) {
                    best_d = d;
                    best_p = s[i];
                    best_q = s[j];
                }
        // Walk the pair down its shortest merging word, first letter that descends.
        Word merge;
        State p = best_p, q = best_q;
        while (p != q) {
            int d = dist[pair_index(p, q, n)];
            for (Letter x = 0; x < a.alphabet_size(); ++x) {
                State pp = a.step(p, x), qq = a.step(q, x);
                if ((pp == qq ? 0 : dist[pair_index(pp, qq, n)]) == d - 1) {
                    merge.push_back(x);
                    p = pp;
                    q = qq;
                    break;
                }
            }
        }
        s = image(a, s, merge);
        w.insert(w.end(), merge.begin(), merge.end());
    }
    if (!verify_reset_word(a, w)) return std::nullopt;
    return ShortestWord{static_cast<int>(w.size()), std::move(w)};
}

}  // namespace synchrosat
