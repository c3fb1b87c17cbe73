#pragma once

// Binary-field greedy encoders for pliable index coding.
//
// Each round sorts messages by peeling (repeatedly take the message with the largest remaining
// client weight), buckets them into dyadic groups relative to the first message's effective weight
// W, and spends two transmissions per group. Inside a group the messages are visited in sorted
// order and each one receives the 2-bit sub-vector (1,0), (0,1) or (1,1) that keeps the most
// currently-satisfied client weight among the clients it touches.
//
// Client weights are 2^-d where d counts messages the client has decoded. They are stored as the
// integer 2^(t-d) so halving and the retirement test are exact. With t = 1 every active client
// has the same weight and the procedure is the unweighted single-request algorithm.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"
#include "matrix.hpp"

namespace pliable {

enum class SubVector : std::uint8_t { e1 = 0, e2 = 1, sum = 2 };

inline constexpr std::array<SubVector, 3> kSubVectors{SubVector::e1, SubVector::e2, SubVector::sum};

inline std::array<Elem, 2> sub_vector_entries(SubVector v) {
    switch (v) {
        case SubVector::e1: return {1, 0};
        case SubVector::e2: return {0, 1};
        case SubVector::sum: return {1, 1};
    }
    return {0, 0};
}

/// Peeling order with per-message effective weights and effective clients (indexed by message).
struct SortResult {
    std::vector<std::size_t> order;
    std::vector<std::uint64_t> effective_weight;
    std::vector<std::vector<std::size_t>> effective_clients;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> message_adjacency(std::size_t m, const std::vector<IndexSet>& requests,
                                                               const std::vector<bool>& active) {
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t c = 0; c < requests.size(); ++c) {
        if (!active[c]) continue;
        for (auto j : requests[c]) adj[j].push_back(c);
    }
    return adj;
}

// Effective weights for a fixed order: message order[k] owns the clients adjacent to it that are
// not adjacent to any earlier message.
inline SortResult effective_for_order(std::size_t m, const std::vector<IndexSet>& requests,
                                      const std::vector<std::uint64_t>& weight, const std::vector<bool>& active,
                                      std::span<const std::size_t> order) {
    const auto adj = message_adjacency(m, requests, active);
    SortResult out;
    out.order.assign(order.begin(), order.end());
    out.effective_weight.assign(m, 0);
    out.effective_clients.assign(m, {});
    std::vector<bool> covered(requests.size(), false);
    for (auto j : order) {
        for (auto c : adj[j]) {
            if (covered[c]) continue;
            covered[c] = true;
            out.effective_clients[j].push_back(c);
            out.effective_weight[j] += weight[c];
        }
    }
    return out;
}

inline SortResult peel(std::size_t m, const std::vector<IndexSet>& requests, const std::vector<std::uint64_t>& weight,
                       const std::vector<bool>& active) {
    const auto adj = message_adjacency(m, requests, active);
    std::vector<std::uint64_t> remaining(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (auto c : adj[j]) remaining[j] += weight[c];

    SortResult out;
    out.effective_weight.assign(m, 0);
    out.effective_clients.assign(m, {});
    std::vector<bool> picked(m, false), covered(requests.size(), false);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (picked[j]) continue;
            if (best == m || remaining[j] > remaining[best]) best = j;
        }
        picked[best] = true;
        out.order.push_back(best);
        out.effective_weight[best] = remaining[best];
        for (auto c : adj[best]) {
            if (covered[c]) continue;
            covered[c] = true;
            out.effective_clients[best].push_back(c);
            for (auto j : requests[c]) remaining[j] -= weight[c];
        }
    }
    return out;
}

}  // namespace detail

/// Peeling sort with every active client weighing 1, so effective weights are effective degrees.
inline SortResult sort_messages(const Instance& inst, const std::vector<bool>& active) {
    if (active.size() != inst.n()) throw std::invalid_argument("active mask size mismatch");
    return detail::peel(inst.m, inst.requests, std::vector<std::uint64_t>(inst.n(), 1), active);
}

/// Effective degrees and clients with respect to a caller-chosen message order.
inline SortResult effective_degrees(const Instance& inst, std::span<const std::size_t> order,
                                    const std::vector<bool>& active) {
    if (active.size() != inst.n()) throw std::invalid_argument("active mask size mismatch");
    for (auto j : order)
        if (j >= inst.m) throw std::invalid_argument("order names an unknown message");
    return detail::effective_for_order(inst.m, inst.requests, std::vector<std::uint64_t>(inst.n(), 1), active, order);
}

/// Dyadic grouping relative to W, the effective weight of the first sorted message. Message j with
/// effective weight w > 0 joins group s (1-based) when W/2^s < w <= W/2^(s-1) and s <= S, where
/// S = floor(log2 n_active) + 1; lighter messages land in the overflow group, which is not encoded.
struct Grouping {
    static constexpr std::size_t kNone = 0;
    static constexpr std::size_t kOverflow = std::numeric_limits<std::size_t>::max();

    std::uint64_t base = 0;
    std::size_t group_count = 0;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> overflow;
    std::vector<std::size_t> group_of;
};

inline Grouping group_messages(const SortResult& sorted, std::size_t n_active) {
    Grouping g;
    g.group_of.assign(sorted.effective_weight.size(), Grouping::kNone);
    if (n_active == 0 || sorted.order.empty()) return g;
    g.base = sorted.effective_weight[sorted.order.front()];
    g.group_count = static_cast<std::size_t>(std::bit_width(n_active));
    g.groups.assign(g.group_count, {});
    for (auto j : sorted.order) {
        const std::uint64_t w = sorted.effective_weight[j];
        if (w == 0) continue;
        // smallest s with w * 2^s > W
        std::size_t s = 1;
        while (s <= g.group_count && (static_cast<unsigned __int128>(w) << s) <= g.base) ++s;
        if (s > g.group_count) {
            g.overflow.push_back(j);
            g.group_of[j] = Grouping::kOverflow;
        } else {
            g.groups[s - 1].push_back(j);
            g.group_of[j] = s;
        }
    }
    return g;
}

struct GreedyOptions {
    // Once a client drops out of SAT within a group it stays out for that group.
    bool relaxed_unsat = false;
};

struct StepLog {
    std::size_t message = 0;
    // Satisfied weight among previously satisfied clients adjacent to the message, per option.
    std::array<std::uint64_t, 3> retained{};
    SubVector chosen = SubVector::e1;
    std::uint64_t sat_weight_before = 0;
    std::uint64_t moved_weight = 0;
    std::size_t moved_count = 0;
    std::uint64_t returned_weight = 0;
    std::size_t returned_count = 0;
    std::uint64_t new_weight = 0;
    std::size_t new_count = 0;
};

struct DecodeEvent {
    std::size_t client = 0;
    std::size_t message = 0;
};

struct GroupLog {
    std::size_t index = 0;
    std::vector<std::size_t> messages;
    std::vector<SubVector> sub_vectors;
    std::vector<std::size_t> clients;
    std::uint64_t clients_weight = 0;
    std::vector<std::size_t> satisfied;
    std::uint64_t satisfied_weight = 0;
    std::vector<DecodeEvent> decoded;
    std::vector<StepLog> steps;
};

struct RoundLog {
    std::vector<std::size_t> active;
    SortResult sort;
    Grouping grouping;
    std::vector<GroupLog> groups;
    std::uint64_t weight_before = 0;
    std::uint64_t weight_after = 0;
    std::uint64_t grouped_weight = 0;
};

struct ClientDecode {
    std::size_t round = 0;
    std::size_t message = 0;
};

struct EncodeResult {
    Matrix code;
    Matrix reduced;
    std::size_t t = 1;
    // Integer weight of a client that has decoded nothing yet (2^t).
    std::uint64_t weight_unit = 2;
    std::vector<RoundLog> rounds;
    std::vector<std::vector<ClientDecode>> decoded;

    std::size_t raw_len() const { return code.rows(); }
    std::size_t reduced_len() const { return reduced.rows(); }
};

namespace detail {

// Satisfaction of a client inside one group's 2-row code, given how many of its visited requested
// messages carry each sub-vector. Some column must lie outside the span of the others: a type
// occurring exactly once with at most one other type present.
inline bool group_satisfied(const std::array<std::uint32_t, 3>& counts) {
    int distinct = 0;
    bool single = false;
    for (auto c : counts) {
        if (c == 0) continue;
        ++distinct;
        if (c == 1) single = true;
    }
    return distinct >= 1 && distinct <= 2 && single;
}

inline std::array<std::uint32_t, 3> with(std::array<std::uint32_t, 3> counts, SubVector v) {
    ++counts[static_cast<std::size_t>(v)];
    return counts;
}

class GreedyEngine {
  public:
    GreedyEngine(const Instance& inst, GreedyOptions opt) : inst_(inst), opt_(opt) {
        require_valid(inst);
        if (inst.t > 32) throw std::invalid_argument("t above 32 is not supported");
        if (inst.n() >= (std::size_t{1} << 30)) throw std::invalid_argument("too many clients");
        residual_ = inst.requests;
        decoded_count_.assign(inst.n(), 0);
        active_.assign(inst.n(), true);
    }

    EncodeResult run() {
        EncodeResult res;
        res.t = inst_.t;
        res.weight_unit = std::uint64_t{1} << inst_.t;
        res.code = Matrix(2, 0, inst_.m);
        res.decoded.assign(inst_.n(), {});
        const std::size_t max_rounds = 64 * (inst_.t + 64);
        while (active_count() > 0) {
            if (res.rounds.size() >= max_rounds) throw std::logic_error("greedy encoder failed to terminate");
            res.rounds.push_back(round(res));
        }
        res.reduced = row_basis(res.code);
        return res;
    }

  private:
    std::uint64_t weight(std::size_t c) const {
        return active_[c] ? std::uint64_t{1} << (inst_.t - decoded_count_[c]) : 0;
    }
    std::size_t active_count() const {
        std::size_t k = 0;
        for (bool a : active_) k += a;
        return k;
    }
    std::uint64_t total_weight() const {
        std::uint64_t w = 0;
        for (std::size_t c = 0; c < inst_.n(); ++c) w += weight(c);
        return w;
    }

    RoundLog round(EncodeResult& res) {
        RoundLog log;
        for (std::size_t c = 0; c < inst_.n(); ++c)
            if (active_[c]) log.active.push_back(c);
        log.weight_before = total_weight();

        std::vector<std::uint64_t> weights(inst_.n());
        for (std::size_t c = 0; c < inst_.n(); ++c) weights[c] = weight(c);
        log.sort = peel(inst_.m, residual_, weights, active_);
        log.grouping = group_messages(log.sort, log.active.size());
        if (log.grouping.base == 0) throw std::logic_error("active clients but no active edges");

        const auto adj = message_adjacency(inst_.m, residual_, active_);
        std::size_t satisfied_total = 0;
        for (std::size_t s = 0; s < log.grouping.groups.size(); ++s) {
            const auto& members = log.grouping.groups[s];
            if (members.empty()) continue;
            GroupLog g = run_group(s + 1, members, log.sort, adj, weights);
            log.grouped_weight += g.clients_weight;
            satisfied_total += g.satisfied.size();

            Matrix rows(2, 2, inst_.m);
            for (std::size_t k = 0; k < members.size(); ++k) {
                const auto e = sub_vector_entries(g.sub_vectors[k]);
                rows.set(0, members[k], e[0]);
                rows.set(1, members[k], e[1]);
            }
            res.code.append_rows(rows);

            for (const auto& ev : g.decoded) {
                auto& r = residual_[ev.client];
                r.erase(std::find(r.begin(), r.end(), ev.message));
                res.decoded[ev.client].push_back({res.rounds.size(), ev.message});
                if (++decoded_count_[ev.client] == inst_.t) active_[ev.client] = false;
            }
            log.groups.push_back(std::move(g));
        }
        if (satisfied_total == 0) throw std::logic_error("greedy round satisfied no client");
        log.weight_after = total_weight();
        return log;
    }

    GroupLog run_group(std::size_t index, const std::vector<std::size_t>& members, const SortResult& sorted,
                       const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::uint64_t>& weights) {
        enum Status : std::uint8_t { unvisited, sat, unsat };
        GroupLog g;
        g.index = index;
        g.messages = members;
        for (auto j : members)
            for (auto c : sorted.effective_clients[j]) g.clients.push_back(c);
        std::sort(g.clients.begin(), g.clients.end());

        std::vector<bool> in_group(inst_.n(), false);
        for (auto c : g.clients) {
            in_group[c] = true;
            g.clients_weight += weights[c];
        }
        std::vector<Status> status(inst_.n(), unvisited);
        std::vector<std::array<std::uint32_t, 3>> counts(inst_.n(), {0, 0, 0});
        std::vector<SubVector> assigned(inst_.m, SubVector::e1);
        std::vector<bool> member(inst_.m, false);
        for (auto j : members) member[j] = true;

        for (auto j : members) {
            StepLog step;
            step.message = j;
            for (auto c : adj[j]) {
                if (!in_group[c] || status[c] != sat) continue;
                step.sat_weight_before += weights[c];
                for (auto v : kSubVectors)
                    if (group_satisfied(with(counts[c], v))) step.retained[static_cast<std::size_t>(v)] += weights[c];
            }
            std::size_t best = 0;
            for (std::size_t o = 1; o < 3; ++o)
                if (step.retained[o] > step.retained[best]) best = o;
            step.chosen = kSubVectors[best];
            assigned[j] = step.chosen;

            for (auto c : adj[j]) {
                if (!in_group[c]) continue;
                ++counts[c][best];
                const bool ok = group_satisfied(counts[c]);
                switch (status[c]) {
                    case unvisited:
                        status[c] = sat;
                        step.new_weight += weights[c];
                        ++step.new_count;
                        break;
                    case sat:
                        if (!ok) {
                            status[c] = unsat;
                            step.moved_weight += weights[c];
                            ++step.moved_count;
                        }
                        break;
                    case unsat:
                        if (ok && !opt_.relaxed_unsat) {
                            status[c] = sat;
                            step.returned_weight += weights[c];
                            ++step.returned_count;
                        }
                        break;
                }
            }
            g.sub_vectors.push_back(step.chosen);
            g.steps.push_back(step);
        }

        for (auto c : g.clients) {
            if (status[c] != sat) continue;
            g.satisfied.push_back(c);
            g.satisfied_weight += weights[c];
            std::size_t pick = inst_.m;
            for (auto j : residual_[c]) {
                if (member[j] && counts[c][static_cast<std::size_t>(assigned[j])] == 1) {
                    pick = j;
                    break;
                }
            }
            if (pick == inst_.m) throw std::logic_error("satisfied client without a decodable message");
            g.decoded.push_back({c, pick});
        }
        return g;
    }

    const Instance& inst_;
    GreedyOptions opt_;
    std::vector<IndexSet> residual_;
    std::vector<std::size_t> decoded_count_;
    std::vector<bool> active_;
};

}  // namespace detail

/// Single-request greedy encoder. Requires t = 1.
inline EncodeResult encode(const Instance& inst, const GreedyOptions& opt = {}) {
    if (inst.t != 1) throw std::invalid_argument("encode handles t = 1; use encode_t");
    return detail::GreedyEngine(inst, opt).run();
}

/// Weighted greedy encoder for t requests per client.
inline EncodeResult encode_t(const Instance& inst, const GreedyOptions& opt = {}) {
    return detail::GreedyEngine(inst, opt).run();
}

/// Worst-case raw length of the single-request encoder: (2 / log2 1.5) * log2(n)^2.
inline double single_request_length_bound(std::size_t n) {
    const double l = std::log2(static_cast<double>(n));
    return 2.0 / std::log2(1.5) * l * l;
}

/// Explicit form of the t-request guarantee: 2 ceil(log2 n) * ceil((t + log2 n) / log2(12/11)).
inline double t_request_length_bound(std::size_t n, std::size_t t) {
    const double l = std::log2(static_cast<double>(n));
    return 2.0 * std::ceil(l) * std::ceil((static_cast<double>(t) + l) / std::log2(12.0 / 11.0));
}

}  // namespace pliable
