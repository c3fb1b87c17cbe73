#pragma once

// Experiment harness. Each suite expands into a fixed list of tasks; task k draws its instance
// from derive_seed(master seed, k), so rows are reproducible one by one and the output does not
// depend on how many worker threads ran them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "decoding.hpp"
#include "greedy.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "oracle.hpp"

namespace pliable {

/// A produced code failed verification.
class VerificationFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader = "suite,n,m,p,t,seed,alg,raw_len,reduced_len,opt_len,gap,ms";

struct BenchRow {
    std::string suite;
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<double> p;
    std::size_t t = 1;
    std::uint64_t seed = 0;
    std::string alg;
    std::size_t raw_len = 0;
    std::size_t reduced_len = 0;
    std::optional<std::size_t> opt_len;
    std::optional<long long> gap;
    std::optional<double> ms;
};

struct BenchOptions {
    std::string suite = "scaling";
    std::uint64_t seed = 1;
    std::size_t trials = 0;  // 0 = suite default
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ms;
    std::vector<std::size_t> ts;
    std::optional<double> p;
    std::optional<std::size_t> t;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<std::size_t> k_max;
    bool allow_large = false;
    bool timing = false;
    unsigned jobs = 1;
    // custom suite
    std::optional<Instance> instance;
    std::string alg = "bingreedy";
    bool oracle = false;
    std::uint32_t q = 2;
};

struct BenchOutput {
    std::vector<BenchRow> rows;
    std::optional<Json> sidecar;
    std::vector<std::string> warnings;
};

/// Smallest m with m^4 >= n^3, i.e. ceil(n^0.75) without floating point.
inline std::size_t ceil_pow_three_quarters(std::size_t n) {
    const auto target = static_cast<unsigned __int128>(n) * n * n;
    auto m = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.75)));
    auto p4 = [](std::size_t x) { return static_cast<unsigned __int128>(x) * x * x * x; };
    while (m > 0 && p4(m - 1) >= target) --m;
    while (p4(m) < target) ++m;
    return m;
}

namespace detail {

inline std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

struct TaskOutcome {
    std::vector<BenchRow> rows;
    // bounds suite bookkeeping
    bool constant_weight_ok = false;
    bool greedy_meets_lower_bound = false;
};

using Task = std::function<TaskOutcome(std::uint64_t seed)>;

inline void check_code(const Matrix& a, const Instance& inst, const std::string& what) {
    const auto rep = verify(a, inst);
    if (!rep.all_satisfied()) {
        throw VerificationFailure(what + ": " + std::to_string(rep.unsatisfied_count) + " of " +
                                  std::to_string(inst.n()) + " clients not satisfied");
    }
}

inline EncodeResult run_alg(const std::string& alg, const Instance& inst) {
    if (alg == "bingreedy") return encode(inst);
    if (alg == "bingreedy-t") return encode_t(inst);
    throw std::invalid_argument("unknown algorithm '" + alg + "'");
}

inline BenchRow greedy_row(const std::string& suite, const std::string& alg, const Instance& inst,
                           std::optional<double> p, std::uint64_t seed, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    const auto res = run_alg(alg, inst);
    const auto stop = std::chrono::steady_clock::now();
    check_code(res.code, inst, alg + " raw code");
    check_code(res.reduced, inst, alg + " reduced code");
    BenchRow row;
    row.suite = suite;
    row.n = inst.n();
    row.m = inst.m;
    row.p = p;
    row.t = inst.t;
    row.seed = seed;
    row.alg = alg;
    row.raw_len = res.raw_len();
    row.reduced_len = res.reduced_len();
    if (timing) row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return row;
}

inline void attach_oracle(BenchRow& row, const Instance& inst, std::uint32_t q, std::size_t k_max) {
    try {
        const auto opt = optimal_code_length(inst, q, k_max);
        check_code(opt.witness, inst, "oracle witness");
        row.opt_len = opt.length;
        row.gap = static_cast<long long>(row.reduced_len) - static_cast<long long>(opt.length);
    } catch (const OracleError&) {
        // recorded as a row without an optimum
    }
}

inline std::vector<TaskOutcome> run_tasks(const std::vector<Task>& tasks, std::uint64_t master, unsigned jobs) {
    std::vector<TaskOutcome> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
            try {
                out[k] = tasks[k](derive_seed(master, k));
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace detail

inline std::string to_csv(const BenchRow& r) {
    std::ostringstream os;
    os << r.suite << ',' << r.n << ',' << r.m << ',' << (r.p ? detail::format_double(*r.p, "%g") : "") << ',' << r.t
       << ',' << r.seed << ',' << r.alg << ',' << r.raw_len << ',' << r.reduced_len << ',';
    if (r.opt_len) os << *r.opt_len;
    os << ',';
    if (r.gap) os << *r.gap;
    os << ',';
    if (r.ms) os << detail::format_double(*r.ms, "%.3f");
    return os.str();
}

inline std::string to_csv(const std::vector<BenchRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) out += to_csv(r) + "\n";
    return out;
}

inline BenchOutput run_benchmark(const BenchOptions& opt) {
    using detail::Task;
    using detail::TaskOutcome;
    BenchOutput out;
    std::vector<Task> tasks;
    const bool timing = opt.timing;
    auto trials_or = [&](std::size_t d) { return opt.trials ? opt.trials : d; };
    auto list_or = [](const std::vector<std::size_t>& v, std::vector<std::size_t> d) { return v.empty() ? d : v; };

    if (opt.suite == "scaling") {
        const double p = opt.p.value_or(0.3);
        const auto ns = list_or(opt.ns, {64, 128, 256, 512});
        const std::size_t t = opt.t.value_or(1);
        const std::string alg = t == 1 ? "bingreedy" : "bingreedy-t";
        for (auto n : ns) {
            const std::size_t m = opt.m.value_or(ceil_pow_three_quarters(n));
            for (std::size_t k = 0; k < trials_or(10); ++k) {
                tasks.push_back([=](std::uint64_t seed) {
                    const auto inst = random_instance(m, n, p, seed, t);
                    return TaskOutcome{{detail::greedy_row("scaling", alg, inst, p, seed, timing)}};
                });
            }
        }
    } else if (opt.suite == "gap") {
        const double p = opt.p.value_or(0.3);
        const auto ns = opt.n ? std::vector<std::size_t>{*opt.n} : list_or(opt.ns, {12});
        const auto ms = list_or(opt.ms, {4, 5, 6});
        for (auto n : ns) {
            if (n > 12) {
                if (!opt.allow_large)
                    throw std::invalid_argument("gap suite with n > 12 needs --allow-large (the exhaustive oracle grows quickly)");
                out.warnings.push_back("gap suite with n = " + std::to_string(n) +
                                       ": the exhaustive oracle may take a long time");
            }
        }
        for (auto n : ns) {
            for (auto m : ms) {
                const std::size_t k_max = opt.k_max.value_or(m);
                for (std::size_t k = 0; k < trials_or(10); ++k) {
                    tasks.push_back([=, q = opt.q](std::uint64_t seed) {
                        const auto inst = random_instance(m, n, p, seed);
                        auto row = detail::greedy_row("gap", "bingreedy", inst, p, seed, timing);
                        detail::attach_oracle(row, inst, q, k_max);
                        return TaskOutcome{{row}};
                    });
                }
            }
        }
    } else if (opt.suite == "trequests") {
        const double p = opt.p.value_or(0.3);
        const std::size_t fixed_t = opt.t.value_or(4);
        const std::size_t fixed_n = opt.n.value_or(128);
        const auto ns = list_or(opt.ns, {32, 64, 128, 256});
        const auto ts = list_or(opt.ts, {1, 2, 4, 8});
        std::vector<std::pair<std::size_t, std::size_t>> configs;
        for (auto n : ns) configs.emplace_back(n, fixed_t);
        for (auto t : ts) configs.emplace_back(fixed_n, t);
        for (auto [n, t] : configs) {
            const std::size_t m = std::max(opt.m.value_or(ceil_pow_three_quarters(n)), t);
            for (std::size_t k = 0; k < trials_or(5); ++k) {
                tasks.push_back([=](std::uint64_t seed) {
                    const auto inst = random_instance(m, n, p, seed, t);
                    return TaskOutcome{{detail::greedy_row("trequests", "bingreedy-t", inst, p, seed, timing)}};
                });
            }
        }
    } else if (opt.suite == "bounds") {
        const double p = opt.p.value_or(0.5);
        const auto ns = list_or(opt.ns, {256});
        for (auto n : ns) {
            const auto rep = bound_report(n, p);
            const std::size_t m = opt.m.value_or(rep.constructive_rows * rep.weight);
            const auto code = constant_weight_code(m, n, p);
            const double lb = std::ceil(rep.lower_bound);
            for (std::size_t k = 0; k < trials_or(20); ++k) {
                tasks.push_back([=](std::uint64_t seed) {
                    const auto inst = random_instance(m, n, p, seed);
                    TaskOutcome o;
                    o.rows.push_back(detail::greedy_row("bounds", "bingreedy", inst, p, seed, timing));
                    o.greedy_meets_lower_bound = static_cast<double>(o.rows.back().reduced_len) >= lb;
                    o.constant_weight_ok = verify(code, inst).all_satisfied();
                    if (o.constant_weight_ok) {
                        BenchRow cw = o.rows.back();
                        cw.alg = "constant-weight";
                        cw.raw_len = code.rows();
                        cw.reduced_len = rank(code);
                        cw.ms.reset();
                        o.rows.push_back(cw);
                    }
                    return o;
                });
            }
        }
    } else if (opt.suite == "custom") {
        if (!opt.instance) throw std::invalid_argument("custom suite needs an instance (--in)");
        const Instance inst = *opt.instance;
        tasks.push_back([=, alg = opt.alg, oracle = opt.oracle, q = opt.q, master = opt.seed,
                         k_max = opt.k_max.value_or(inst.m)](std::uint64_t) {
            auto row = detail::greedy_row("custom", alg, inst, std::nullopt, master, timing);
            if (oracle) detail::attach_oracle(row, inst, q, k_max);
            return TaskOutcome{{row}};
        });
    } else {
        throw std::invalid_argument("unknown suite '" + opt.suite + "'");
    }

    const auto outcomes = detail::run_tasks(tasks, opt.seed, opt.jobs);
    for (const auto& o : outcomes) out.rows.insert(out.rows.end(), o.rows.begin(), o.rows.end());

    if (opt.suite == "bounds") {
        Json reports = Json::array();
        const double p = opt.p.value_or(0.5);
        const auto ns = list_or(opt.ns, {256});
        const std::size_t per = trials_or(20);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            auto rep = bound_report(ns[i], p);
            rep = bound_report(ns[i], p, opt.m.value_or(rep.constructive_rows * rep.weight));
            std::size_t cw = 0, lb = 0;
            for (std::size_t k = i * per; k < (i + 1) * per; ++k) {
                cw += outcomes[k].constant_weight_ok;
                lb += outcomes[k].greedy_meets_lower_bound;
            }
            Json j = to_json(rep);
            j["trials"] = per;
            j["constant_weight_satisfied"] = cw;
            j["bingreedy_at_least_lower_bound"] = lb;
            reports.push_back(std::move(j));
        }
        out.sidecar = Json{{"seed", opt.seed}, {"reports", std::move(reports)}};
    }
    return out;
}

}  // namespace pliable
