#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pliable {

/// Sorted set of 0-based message indices.
using IndexSet = std::vector<std::size_t>;

/// A pliable index coding instance: m messages, n clients, client i requests any t
/// messages from requests[i] (0-based); its side information is the complement.
struct Instance {
    std::size_t m = 0;
    std::size_t t = 1;
    std::vector<IndexSet> requests;

    std::size_t n() const { return requests.size(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct Violation {
    enum class Severity { error, warning };
    Severity severity;
    std::size_t client;
    std::string message;
};

inline bool has_errors(const std::vector<Violation>& vs) {
    return std::any_of(vs.begin(), vs.end(), [](const Violation& v) { return v.severity == Violation::Severity::error; });
}

/// Structural checks. Duplicate request sets are only warnings: the model assumes distinct side
/// information, but random instances may repeat it and every algorithm copes.
inline std::vector<Violation> validate(const Instance& inst) {
    using S = Violation::Severity;
    std::vector<Violation> out;
    if (inst.m == 0) out.push_back({S::error, 0, "m must be at least 1"});
    if (inst.n() == 0) out.push_back({S::error, 0, "n must be at least 1"});
    if (inst.t == 0) out.push_back({S::error, 0, "t must be at least 1"});
    std::map<IndexSet, std::size_t> seen;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const auto& r = inst.requests[i];
        if (r.empty()) {
            out.push_back({S::error, i, "empty request set"});
            continue;
        }
        if (r.size() < inst.t) out.push_back({S::error, i, "request set smaller than t"});
        if (std::any_of(r.begin(), r.end(), [&](std::size_t j) { return j >= inst.m; }))
            out.push_back({S::error, i, "message index out of range"});
        if (!std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end())
            out.push_back({S::error, i, "request set not strictly increasing"});
        auto [it, fresh] = seen.emplace(r, i);
        if (!fresh) {
            out.push_back({S::warning, i,
                           "same request set as client " + std::to_string(it->second + 1)});
        }
    }
    return out;
}

inline void require_valid(const Instance& inst) {
    for (const auto& v : validate(inst)) {
        if (v.severity == Violation::Severity::error)
            throw std::invalid_argument("invalid instance: client " + std::to_string(v.client + 1) + ": " + v.message);
    }
}

// ---------------------------------------------------------------------------
// Seeded generation.
//
// Every client draws from its own std::mt19937_64 stream whose seed is
// splitmix64(seed ^ splitmix64(client + 1)). Edge (i, j) is present when the next 53-bit
// uniform from client i's stream is below p; messages are drawn in index order, and a client
// whose request set ends up smaller than t redraws all m edges from the same stream.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct GenOptions {
    enum class Kind { random, complete, complete_t, heterogeneous };
    Kind kind = Kind::random;
    std::size_t m = 0;
    std::size_t n = 0;
    double p = 0.0;
    std::size_t t = 1;
    std::uint64_t seed = 0;
    std::vector<double> group_probs;
};

inline GenOptions::Kind parse_kind(const std::string& s) {
    if (s == "random") return GenOptions::Kind::random;
    if (s == "complete") return GenOptions::Kind::complete;
    if (s == "complete-t" || s == "complete_t") return GenOptions::Kind::complete_t;
    if (s == "heterogeneous") return GenOptions::Kind::heterogeneous;
    throw std::invalid_argument("unknown instance kind '" + s + "'");
}

/// Nonempty subsets of {0..k-1}, ordered by size and then lexicographically.
inline std::vector<IndexSet> nonempty_subsets(std::size_t k) {
    if (k > 24) throw std::invalid_argument("too many messages for a complete instance");
    std::vector<IndexSet> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (std::size_t size = 1; size <= k; ++size) {
        std::vector<bool> pick(k, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        // prev_permutation over a leading-true mask yields lexicographic combinations.
        do {
            IndexSet s;
            for (std::size_t j = 0; j < k; ++j)
                if (pick[j]) s.push_back(j);
            out.push_back(std::move(s));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

namespace detail {

inline IndexSet draw_requests(std::mt19937_64& rng, std::size_t m, double p, std::size_t t) {
    for (;;) {
        IndexSet r;
        for (std::size_t j = 0; j < m; ++j)
            if (uniform01(rng) < p) r.push_back(j);
        if (r.size() >= t) return r;
    }
}

inline void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    if (p == 0.0) throw std::invalid_argument(std::string(what) + " = 0 can never give a nonempty request set");
}

}  // namespace detail

inline Instance generate(const GenOptions& opt) {
    using K = GenOptions::Kind;
    if (opt.t == 0) throw std::invalid_argument("t must be at least 1");
    Instance inst;
    inst.m = opt.m;
    inst.t = opt.t;
    switch (opt.kind) {
        case K::complete:
            if (opt.m == 0) throw std::invalid_argument("complete instance needs m >= 1");
            if (opt.t != 1) throw std::invalid_argument("complete instance has t = 1; use complete-t");
            inst.requests = nonempty_subsets(opt.m);
            break;
        case K::complete_t: {
            if (opt.m == 0 || opt.m < opt.t) throw std::invalid_argument("complete-t instance needs m >= t >= 1");
            const std::size_t type1 = opt.m - opt.t + 1;
            inst.requests = nonempty_subsets(type1);
            for (auto& r : inst.requests)
                for (std::size_t j = type1; j < opt.m; ++j) r.push_back(j);
            break;
        }
        case K::random:
        case K::heterogeneous: {
            if (opt.m == 0 || opt.n == 0) throw std::invalid_argument("random instance needs m, n >= 1");
            if (opt.m < opt.t) throw std::invalid_argument("random instance needs m >= t");
            std::vector<double> probs =
                opt.kind == K::random ? std::vector<double>{opt.p} : opt.group_probs;
            if (probs.empty()) throw std::invalid_argument("heterogeneous instance needs group probabilities");
            for (double p : probs) detail::check_probability(p, "edge probability");
            if (probs.size() > opt.n) throw std::invalid_argument("more probability groups than clients");
            const std::size_t block = opt.n / probs.size();
            inst.requests.reserve(opt.n);
            for (std::size_t i = 0; i < opt.n; ++i) {
                const std::size_t g = std::min(i / block, probs.size() - 1);
                std::mt19937_64 rng(derive_seed(opt.seed, i));
                inst.requests.push_back(detail::draw_requests(rng, opt.m, probs[g], opt.t));
            }
            break;
        }
    }
    return inst;
}

inline Instance complete_instance(std::size_t m) {
    GenOptions s;
    s.kind = GenOptions::Kind::complete;
    s.m = m;
    return generate(s);
}

inline Instance complete_t_instance(std::size_t m, std::size_t t) {
    GenOptions s;
    s.kind = GenOptions::Kind::complete_t;
    s.m = m;
    s.t = t;
    return generate(s);
}

inline Instance random_instance(std::size_t m, std::size_t n, double p, std::uint64_t seed, std::size_t t = 1) {
    GenOptions s;
    s.kind = GenOptions::Kind::random;
    s.m = m;
    s.n = n;
    s.p = p;
    s.t = t;
    s.seed = seed;
    return generate(s);
}

}  // namespace pliable
