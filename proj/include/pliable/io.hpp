#pragma once

// JSON (de)serialization. Message and client indices are 1-based on disk and 0-based in memory.
// Weights in round logs are reported as 2^-d, independent of the integer scaling used internally.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bounds.hpp"
#include "decoding.hpp"
#include "greedy.hpp"
#include "instance.hpp"
#include "matrix.hpp"
#include "oracle.hpp"

namespace pliable {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::int64_t integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

inline std::size_t count(const Json& j, const char* what) {
    const auto v = integer(j, what);
    if (v < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

inline Json one_based(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x + 1);
    return a;
}

}  // namespace detail

inline Json to_json(const Matrix& a) {
    Json data = Json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a.at(r, c));
        data.push_back(std::move(row));
    }
    return {{"q", a.q()}, {"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
    const auto q = detail::count(detail::field(j, "q"), "q");
    const auto rows = detail::count(detail::field(j, "rows"), "rows");
    const auto cols = detail::count(detail::field(j, "cols"), "cols");
    const auto& data = detail::field(j, "data");
    if (!data.is_array() || data.size() != rows) throw std::invalid_argument("matrix data must hold 'rows' rows");
    if (q > 65521) throw std::invalid_argument("field order too large");
    std::vector<std::vector<std::int64_t>> values;
    for (const auto& row : data) {
        if (!row.is_array() || row.size() != cols) throw std::invalid_argument("matrix row must hold 'cols' entries");
        std::vector<std::int64_t> r;
        for (const auto& e : row) r.push_back(detail::integer(e, "matrix entry"));
        values.push_back(std::move(r));
    }
    return Matrix::from_rows(static_cast<std::uint32_t>(q), values, cols);
}

inline Json to_json(const Instance& inst) {
    Json req = Json::array();
    for (const auto& r : inst.requests) req.push_back(detail::one_based(r));
    return {{"m", inst.m}, {"n", inst.n()}, {"t", inst.t}, {"requests", std::move(req)}};
}

/// Parses and structurally validates an instance (errors throw; duplicate sets are accepted).
inline Instance instance_from_json(const Json& j) {
    Instance inst;
    inst.m = detail::count(detail::field(j, "m"), "m");
    inst.t = j.contains("t") ? detail::count(j.at("t"), "t") : 1;
    const auto n = detail::count(detail::field(j, "n"), "n");
    const auto& req = detail::field(j, "requests");
    if (!req.is_array() || req.size() != n) throw std::invalid_argument("'requests' must hold n request sets");
    for (const auto& r : req) {
        if (!r.is_array()) throw std::invalid_argument("request set must be an array");
        IndexSet s;
        for (const auto& e : r) {
            const auto v = detail::integer(e, "message index");
            if (v < 1 || static_cast<std::size_t>(v) > inst.m)
                throw std::invalid_argument("message index " + std::to_string(v) + " outside 1.." + std::to_string(inst.m));
            s.push_back(static_cast<std::size_t>(v - 1));
        }
        inst.requests.push_back(std::move(s));
    }
    require_valid(inst);
    return inst;
}

inline Json to_json(const SatisfactionReport& rep) {
    Json clients = Json::array();
    for (std::size_t i = 0; i < rep.decodable.size(); ++i) {
        clients.push_back({{"client", i + 1},
                           {"decodable", detail::one_based(rep.decodable[i])},
                           {"satisfied", static_cast<bool>(rep.satisfied[i])}});
    }
    return {{"t", rep.t},
            {"satisfied", rep.satisfied_count},
            {"unsatisfied", rep.unsatisfied_count},
            {"all_satisfied", rep.all_satisfied()},
            {"clients", std::move(clients)}};
}

inline Json to_json(const BoundReport& rep) {
    Json j = {{"n", rep.n},
              {"p", rep.p},
              {"lower_bound", rep.lower_bound},
              {"constructive_rows", rep.constructive_rows},
              {"weight", rep.weight},
              {"regime", regime_name(rep.regime)}};
    if (rep.m) j["m"] = *rep.m;
    if (rep.fits) j["fits"] = *rep.fits;
    return j;
}

inline Json to_json(const OracleResult& res) {
    return {{"length", res.length}, {"examined", res.examined}, {"witness", to_json(res.witness)}};
}

inline const char* sub_vector_name(SubVector v) {
    switch (v) {
        case SubVector::e1: return "10";
        case SubVector::e2: return "01";
        case SubVector::sum: return "11";
    }
    return "??";
}

/// Round log of a greedy run. Identical for both encoders when t = 1.
inline Json encode_log(const EncodeResult& res, const Instance& inst, const GreedyOptions& opt = {}) {
    const double unit = static_cast<double>(res.weight_unit);
    auto w = [unit](std::uint64_t v) { return static_cast<double>(v) / unit; };

    Json rounds = Json::array();
    for (std::size_t k = 0; k < res.rounds.size(); ++k) {
        const auto& r = res.rounds[k];
        Json sorted = Json::array();
        for (auto j : r.sort.order) {
            sorted.push_back({{"message", j + 1},
                              {"effective_weight", w(r.sort.effective_weight[j])},
                              {"effective_clients", detail::one_based(r.sort.effective_clients[j])}});
        }
        Json groups = Json::array();
        for (const auto& g : r.groups) {
            Json steps = Json::array();
            for (const auto& s : g.steps) {
                steps.push_back({{"message", s.message + 1},
                                 {"retained", {w(s.retained[0]), w(s.retained[1]), w(s.retained[2])}},
                                 {"chosen", sub_vector_name(s.chosen)},
                                 {"sat_weight_before", w(s.sat_weight_before)},
                                 {"moved_to_unsat", s.moved_count},
                                 {"moved_weight", w(s.moved_weight)},
                                 {"returned_to_sat", s.returned_count},
                                 {"returned_weight", w(s.returned_weight)},
                                 {"new_clients", s.new_count}});
            }
            Json decoded = Json::array();
            for (const auto& d : g.decoded) decoded.push_back({{"client", d.client + 1}, {"message", d.message + 1}});
            Json subs = Json::array();
            for (auto v : g.sub_vectors) subs.push_back(sub_vector_name(v));
            groups.push_back({{"group", g.index},
                              {"messages", detail::one_based(g.messages)},
                              {"sub_vectors", std::move(subs)},
                              {"clients", detail::one_based(g.clients)},
                              {"clients_weight", w(g.clients_weight)},
                              {"satisfied", detail::one_based(g.satisfied)},
                              {"satisfied_weight", w(g.satisfied_weight)},
                              {"decoded", std::move(decoded)},
                              {"steps", std::move(steps)}});
        }
        rounds.push_back({{"round", k + 1},
                          {"active", detail::one_based(r.active)},
                          {"sorted", std::move(sorted)},
                          {"W", w(r.grouping.base)},
                          {"group_count", r.grouping.group_count},
                          {"overflow", detail::one_based(r.grouping.overflow)},
                          {"groups", std::move(groups)},
                          {"weight_before", w(r.weight_before)},
                          {"weight_after", w(r.weight_after)}});
    }

    Json clients = Json::array();
    for (std::size_t i = 0; i < res.decoded.size(); ++i) {
        Json events = Json::array();
        Json weights = Json::array({1.0});
        double cur = 1.0;
        for (const auto& d : res.decoded[i]) {
            events.push_back({{"round", d.round + 1}, {"message", d.message + 1}});
            cur /= 2.0;
            weights.push_back(cur);
        }
        clients.push_back({{"client", i + 1}, {"decoded", std::move(events)}, {"weights", std::move(weights)}});
    }

    return {{"m", inst.m},
            {"n", inst.n()},
            {"t", res.t},
            {"relaxed_unsat", opt.relaxed_unsat},
            {"raw_len", res.raw_len()},
            {"reduced_len", res.reduced_len()},
            {"code", to_json(res.code)},
            {"reduced", to_json(res.reduced)},
            {"rounds", std::move(rounds)},
            {"clients", std::move(clients)}};
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }
inline Matrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

}  // namespace pliable
