#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "zelab/adversary.hpp"
#include "zelab/bounds.hpp"
#include "zelab/construct.hpp"
#include "zelab/coupon.hpp"
#include "zelab/sampler.hpp"
#include "zelab/types.hpp"
#include "zelab/verifier.hpp"

namespace zelab::report {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "zelab";
inline constexpr const char* tool_version = "0.1.0";

// Doubles that JSON cannot carry (inf/nan) are mapped to null by nlohmann;
// everything the reports emit is finite by construction.

inline json to_json(const RowSubset& R) {
    json arr = json::array();
    for (row_t r : R) arr.push_back(r);
    return arr;
}

inline json to_json(const WeightFunction& wt) {
    json j;
    j["q"] = wt.alphabet_size();
    j["support"] = json::array();
    for (symbol_t s : wt.support().to_vector()) j["support"].push_back(s);
    return j;
}

inline json to_json(const CodeMatrix& C) {
    json j;
    j["m"] = C.rows();
    j["n"] = C.cols();
    j["q"] = C.alphabet_size();
    json rows = json::array();
    for (row_t r = 1; r <= C.rows(); ++r) {
        json row = json::array();
        for (col_t c = 1; c <= C.cols(); ++c) row.push_back(C.at(r, c));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline json to_json(const verifier::Verdict& v) {
    json j;
    j["is_code"] = v.is_code;
    j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    return j;
}

inline json to_json(const construct::MinNResult& r) {
    json j;
    j["status"] = construct::to_string(r.status);
    j["n"] = r.status == construct::MinNStatus::found ? json(r.n) : json(nullptr);
    j["nodes"] = r.nodes;
    return j;
}

inline json to_json(const coupon::McResult& r) {
    json j;
    j["mean"] = r.mean;
    j["std_error"] = r.std_error;
    return j;
}

inline json to_json(const coupon::BoundReport& r) {
    json j;
    j["bound"] = r.bound;
    j["exact"] = r.exact;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    j["b_size"] = r.b_size;
    return j;
}

inline json to_json(const coupon::EllSequence& s) {
    json j;
    j["ell"] = s.ell;
    j["prefix"] = s.prefix;
    return j;
}

inline json to_json(const coupon::PhaseSizes& s) {
    json j;
    j["g"] = s.g;
    j["prefix"] = s.prefix;
    j["total"] = s.total;
    return j;
}

inline json to_json(const sampler::SamplerReport& r) {
    json j;
    j["is_sampler"] = r.is_sampler;
    j["max_failure_fraction"] = r.max_failure_fraction;
    j["threshold"] = r.threshold;
    j["worst_wt"] = to_json(r.worst_wt);
    j["sampled"] = r.sampled;
    j["wt_count"] = r.wt_count;
    if (r.sampled) j["note"] = "sampled, one-sided: a true verdict is not a proof";
    return j;
}

inline json to_json(const bounds::CapacityInterval& c) {
    json j;
    j["q"] = c.q;
    j["list_size"] = c.ell;
    j["lower"] = c.lower;
    j["upper"] = c.upper;
    j["source"] = c.source;
    return j;
}

inline json to_json(const adversary::ResolvedParams& p) {
    json j;
    j["gamma"] = p.gamma;
    j["gamma_dev"] = p.gamma_dev;
    j["gamma_prime"] = p.gamma_prime;
    j["delta_prime"] = p.delta_prime;
    j["delta0"] = p.delta0;
    j["schedule_gamma"] = p.schedule_gamma;
    j["schedule_delta_prime"] = p.schedule_delta_prime;
    j["clamped_delta_prime"] = p.clamped_delta_prime;
    j["target"] = p.target;
    return j;
}

inline json to_json(const adversary::RoundRecord& r) {
    json j;
    j["round"] = r.round;
    j["g_real"] = r.g_real;
    j["draws"] = r.draws;
    j["skipped"] = r.skipped;
    j["member_size"] = r.member_size;
    j["universe_before"] = r.universe_before;
    j["universe_after"] = r.universe_after;
    j["bad_count"] = r.bad_count;
    j["bad_columns"] = r.bad_columns;
    j["bad_fraction"] = r.bad_fraction;
    j["gamma_tilde"] = r.gamma_tilde;
    j["delta_tilde"] = r.delta_tilde;
    j["sampler_threshold"] = r.sampler_threshold;
    j["verdict_vacuous"] = r.verdict_vacuous;
    j["fail_bound"] = r.fail_bound;
    j["fail_bound_vacuous"] = r.fail_bound_vacuous;
    j["log_schedule_ensemble"] = r.log_schedule_ensemble;
    j["t_ratio"] = r.t_ratio;
    j["hyp_small_delta"] = r.hyp_small_delta;
    j["hyp_delta_above_prime"] = r.hyp_delta_above_prime;
    j["hyp_t_below_one"] = r.hyp_t_below_one;
    j["mean_expected_image"] = r.mean_expected_image;
    j["max_image_dev"] = r.max_image_dev;
    j["log2_universe"] = r.log2_universe;
    j["size_bound_margin"] = r.size_bound_margin;
    j["assert_member_sizes"] = r.assert_member_sizes;
    j["assert_pruned_images"] = r.assert_pruned_images;
    j["assert_universe_log"] = r.assert_universe_log;
    return j;
}

inline json to_json(const adversary::Transcript& t) {
    json j;
    j["resolved"] = to_json(t.resolved);
    j["rounds"] = json::array();
    for (const auto& r : t.rounds) j["rounds"].push_back(to_json(r));
    j["notes"] = t.notes;
    return j;
}

inline json to_json(const adversary::AttackOutcome& o) {
    json j;
    j["status"] = adversary::to_string(o.status);
    j["target"] = o.target;
    j["verified"] = o.verified;
    j["list"] = o.list ? to_json(*o.list) : json(nullptr);
    j["transcript"] = to_json(o.transcript);
    return j;
}

// Report envelope shared by every subcommand.
inline json make_report(const std::string& command, json config, json result,
                        const std::vector<std::string>& notes, unsigned workers,
                        bool deterministic) {
    json j;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    j["command"] = command;
    j["config"] = std::move(config);
    j["workers"] = workers;
    j["deterministic"] = deterministic;
    j["notes"] = notes;
    j["result"] = std::move(result);
    return j;
}

} // namespace zelab::report
