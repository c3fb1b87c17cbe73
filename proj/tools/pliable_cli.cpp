// pliable: generate, encode, verify and benchmark pliable index codes.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 infeasible oracle search.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pliable/pliable.hpp"

namespace {

using namespace pliable;

constexpr int kOk = 0;
constexpr int kUnsatisfied = 1;
constexpr int kInvalid = 2;
constexpr int kInfeasible = 3;

void print_warnings(const Instance& inst) {
    for (const auto& v : validate(inst))
        if (v.severity == Violation::Severity::warning)
            std::cerr << "warning: client " << v.client + 1 << ": " << v.message << "\n";
}

template <class T>
std::optional<T> given(const CLI::Option* opt, const T& value) {
    return opt->count() ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear pliable index coding: greedy encoders, exact oracles and bounds"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    std::string kind = "random", gen_out;
    GenOptions gen_opt;
    std::vector<double> group_probs;
    gen->add_option("--kind", kind, "random, complete, complete-t or heterogeneous")->required();
    gen->add_option("--m", gen_opt.m, "Number of messages")->required();
    gen->add_option("--n", gen_opt.n, "Number of clients");
    gen->add_option("--p", gen_opt.p, "Edge probability");
    gen->add_option("--t", gen_opt.t, "Requests per client")->default_val(1);
    gen->add_option("--seed", gen_opt.seed, "Master seed")->default_val(0);
    gen->add_option("--group-probs", group_probs, "Comma-separated edge probabilities per client block")
        ->delimiter(',');
    gen->add_option("-o,--out", gen_out, "Output instance JSON")->required();

    // encode
    auto* enc = app.add_subcommand("encode", "Run a greedy encoder");
    std::string alg = "bingreedy", enc_in, enc_out, enc_log;
    bool relaxed = false;
    enc->add_option("--alg", alg, "bingreedy or bingreedy-t")->required()->check(CLI::IsMember({"bingreedy", "bingreedy-t"}));
    enc->add_option("--in", enc_in, "Instance JSON")->required();
    enc->add_option("--out", enc_out, "Output matrix JSON (reduced code)")->required();
    enc->add_option("--log", enc_log, "Round log JSON");
    enc->add_flag("--relaxed-unsat", relaxed, "Clients leaving SAT stay out for the rest of the group");

    // verify
    auto* ver = app.add_subcommand("verify", "Check which clients a code satisfies");
    std::string ver_in, ver_matrix;
    ver->add_option("--in", ver_in, "Instance JSON")->required();
    ver->add_option("--matrix", ver_matrix, "Matrix JSON")->required();

    // opt
    auto* opt = app.add_subcommand("opt", "Exhaustive optimal code length");
    std::string opt_in;
    std::uint32_t opt_q = 2;
    std::size_t max_k = 0;
    opt->add_option("--in", opt_in, "Instance JSON")->required();
    opt->add_option("--q", opt_q, "Prime field order")->default_val(2);
    opt->add_option("--max-k", max_k, "Largest length to try")->required();

    // minrank
    auto* mr = app.add_subcommand("minrank", "Minimum rank over fitting matrices (t = 1)");
    std::string mr_in;
    std::uint32_t mr_q = 2;
    mr->add_option("--in", mr_in, "Instance JSON")->required();
    mr->add_option("--q", mr_q, "Prime field order")->default_val(2);

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Random-graph bound calculator");
    std::size_t bnd_n = 0, bnd_m = 0;
    double bnd_p = 0.0;
    bnd->add_option("--n", bnd_n, "Number of clients")->required();
    bnd->add_option("--p", bnd_p, "Edge probability")->required();
    auto* bnd_m_opt = bnd->add_option("--m", bnd_m, "Number of messages (checks that the construction fits)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run an experiment suite and write CSV");
    BenchOptions bo;
    std::string bench_out, bench_in;
    double b_p = 0.0;
    std::size_t b_t = 1, b_n = 0, b_m = 0, b_kmax = 0;
    bench->add_option("--suite", bo.suite, "scaling, gap, trequests, bounds or custom")
        ->required()
        ->check(CLI::IsMember({"scaling", "gap", "trequests", "bounds", "custom"}));
    bench->add_option("--seed", bo.seed, "Master seed")->required();
    bench->add_option("--trials", bo.trials, "Instances per configuration (0 = suite default)")->required();
    bench->add_option("--out", bench_out, "Output CSV")->required();
    bench->add_option("--ns", bo.ns, "Comma-separated client counts")->delimiter(',');
    bench->add_option("--ms", bo.ms, "Comma-separated message counts (gap)")->delimiter(',');
    bench->add_option("--ts", bo.ts, "Comma-separated request counts (trequests)")->delimiter(',');
    auto* o_p = bench->add_option("--p", b_p, "Edge probability");
    auto* o_t = bench->add_option("--t", b_t, "Requests per client");
    auto* o_n = bench->add_option("--n", b_n, "Fixed client count");
    auto* o_m = bench->add_option("--m", b_m, "Fixed message count");
    auto* o_k = bench->add_option("--k-max", b_kmax, "Oracle length limit");
    bench->add_flag("--allow-large", bo.allow_large, "Allow gap runs with n > 12");
    bench->add_flag("--timing", bo.timing, "Fill the ms column (output is then not reproducible)");
    bench->add_option("--jobs", bo.jobs, "Worker threads")->default_val(1)->check(CLI::Range(1U, 256U));
    bench->add_option("--in", bench_in, "Instance JSON (custom)");
    bench->add_option("--alg", bo.alg, "Encoder (custom)")->check(CLI::IsMember({"bingreedy", "bingreedy-t"}));
    bench->add_flag("--oracle", bo.oracle, "Also run the exhaustive oracle (custom)");
    bench->add_option("--q", bo.q, "Oracle field order")->default_val(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*gen) {
            gen_opt.kind = parse_kind(kind);
            gen_opt.group_probs = group_probs;
            const auto inst = generate(gen_opt);
            print_warnings(inst);
            write_json_file(gen_out, to_json(inst));
            std::cout << "m=" << inst.m << " n=" << inst.n() << " t=" << inst.t << "\n";
        } else if (*enc) {
            const auto inst = load_instance(enc_in);
            print_warnings(inst);
            const GreedyOptions gopt{relaxed};
            const auto res = alg == "bingreedy" ? encode(inst, gopt) : encode_t(inst, gopt);
            if (!enc_log.empty()) write_json_file(enc_log, encode_log(res, inst, gopt));
            const auto rep = verify(res.reduced, inst);
            write_json_file(enc_out, to_json(res.reduced));
            std::cout << "raw_len=" << res.raw_len() << " reduced_len=" << res.reduced_len()
                      << " rounds=" << res.rounds.size() << "\n";
            if (!rep.all_satisfied()) {
                std::cerr << "error: " << rep.unsatisfied_count << " clients not satisfied\n";
                return kUnsatisfied;
            }
        } else if (*ver) {
            const auto inst = load_instance(ver_in);
            const auto a = load_matrix(ver_matrix);
            const auto rep = verify(a, inst);
            std::cout << to_json(rep).dump(2) << "\n";
            if (!rep.all_satisfied()) return kUnsatisfied;
        } else if (*opt) {
            const auto inst = load_instance(opt_in);
            const auto res = optimal_code_length(inst, opt_q, max_k);
            std::cout << to_json(res).dump(2) << "\n";
        } else if (*mr) {
            const auto inst = load_instance(mr_in);
            std::cout << Json{{"minrank", minrank_fit(inst, mr_q)}, {"q", mr_q}}.dump(2) << "\n";
        } else if (*bnd) {
            std::cout << to_json(bound_report(bnd_n, bnd_p, given(bnd_m_opt, bnd_m))).dump(2) << "\n";
        } else if (*bench) {
            bo.p = given(o_p, b_p);
            bo.t = given(o_t, b_t);
            bo.n = given(o_n, b_n);
            bo.m = given(o_m, b_m);
            bo.k_max = given(o_k, b_kmax);
            if (!bench_in.empty()) bo.instance = load_instance(bench_in);
            const auto out = run_benchmark(bo);
            for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
            write_text_file(bench_out, to_csv(out.rows));
            if (out.sidecar) write_json_file(bench_out + ".bounds.json", *out.sidecar);
            std::cout << out.rows.size() << " rows written to " << bench_out << "\n";
        }
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kUnsatisfied;
    } catch (const OracleError& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
