#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zelab/adversary.hpp"
#include "zelab/bounds.hpp"
#include "zelab/construct.hpp"
#include "zelab/coupon.hpp"
#include "zelab/errors.hpp"
#include "zelab/matrix.hpp"
#include "zelab/phased.hpp"
#include "zelab/report.hpp"
#include "zelab/sampler.hpp"
#include "zelab/types.hpp"
#include "zelab/verifier.hpp"

namespace zelab::cli {

// Exit codes: 0 success (verify: is a code; sampler-check: is a sampler;
// attack: found), 1 negative verdict, 2 verify-only domain error, 3
// infeasible parameters, 64 usage error, 65 data (parse) error, 70 internal.
inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_verify_error = 2;
inline constexpr int exit_infeasible = 3;
inline constexpr int exit_usage = 64;
inline constexpr int exit_data = 65;
inline constexpr int exit_internal = 70;

struct CommonOpts {
    std::string report_path; // empty: report to stdout
    bool timings = false;
    unsigned workers = 1;
};

namespace detail {

using report::json;

inline void emit_report(const CommonOpts& c, json j, double ms, bool suppress_stdout = false) {
    if (c.timings) j["timings_ms"] = json{{"total", ms}};
    const std::string text = j.dump(2) + "\n";
    if (!c.report_path.empty()) {
        std::ofstream out(c.report_path, std::ios::binary);
        if (!out) throw ParseError("cannot open report file for writing: " + c.report_path);
        out << text;
    } else if (!suppress_stdout) {
        std::cout << text;
    }
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Distribution spec: "uniform", "zipf:S", "point:X", "file:PATH", or a bare
// path to a file of q weights (whitespace-separated, normalized to sum 1).
inline std::vector<double> load_weights_file(const std::string& path, std::uint32_t q) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open weights file: " + path);
    std::vector<double> w;
    std::string line;
    int lineno = 0;
    while (zelab::detail::next_content_line(in, line, lineno)) {
        std::istringstream ss(line);
        double v = 0;
        while (ss >> v) {
            if (!(v >= 0))
                throw ParseError("weights must be nonnegative", lineno);
            w.push_back(v);
        }
        if (!ss.eof()) throw ParseError("malformed weight entry", lineno);
    }
    if (w.size() != q)
        throw ParseError("weights file holds " + std::to_string(w.size()) +
                         " entries, expected q = " + std::to_string(q));
    double sum = 0;
    for (double v : w) sum += v;
    if (!(sum > 0)) throw ParseError("weights must have positive total mass");
    for (double& v : w) v /= sum;
    return w;
}

inline std::vector<double> parse_pmf(const std::string& spec, std::uint32_t q) {
    if (spec == "uniform") return coupon::uniform_pmf(q);
    if (spec.rfind("zipf:", 0) == 0) {
        try {
            return coupon::zipf_pmf(q, std::stod(spec.substr(5)));
        } catch (const std::logic_error&) {
            throw DomainError("malformed zipf parameter in distribution spec: " + spec);
        }
    }
    if (spec.rfind("point:", 0) == 0) {
        unsigned long x = 0;
        try {
            x = std::stoul(spec.substr(6));
        } catch (const std::logic_error&) {
            throw DomainError("malformed point symbol in distribution spec: " + spec);
        }
        return coupon::point_pmf(q, static_cast<symbol_t>(x));
    }
    if (spec.rfind("file:", 0) == 0) return load_weights_file(spec.substr(5), q);
    return load_weights_file(spec, q);
}

// "--phase A:DIST": A draws from DIST.
inline void append_phase_spec(coupon::PhaseEnsembleSpec& spec, const std::string& arg,
                              std::uint32_t q) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos || colon == 0)
        throw DomainError("phase spec must look like DRAWS:DIST, got: " + arg);
    std::uint64_t draws = 0;
    try {
        draws = std::stoull(arg.substr(0, colon));
    } catch (const std::logic_error&) {
        throw DomainError("malformed draw count in phase spec: " + arg);
    }
    spec.append_phase(draws, parse_pmf(arg.substr(colon + 1), q));
}

inline coupon::PhaseEnsembleSpec build_phase_spec(std::uint32_t q,
                                                  const std::vector<std::string>& phases) {
    if (phases.empty()) throw DomainError("at least one --phase A:DIST is required");
    coupon::PhaseEnsembleSpec spec(q);
    for (const auto& p : phases) append_phase_spec(spec, p, q);
    return spec;
}

// Rate of a code: log2(m/l)/n.
inline double rate_of(std::uint32_t m, std::uint32_t n, std::uint32_t ell) {
    return verifier::rate(m, n, ell);
}

} // namespace detail

inline int run_cli(int argc, const char* const* argv) {
    using detail::json;

    CLI::App app{"zelab: a laboratory for zero-error list-decoding codes on the q/(q-1) "
                 "channel"};
    app.require_subcommand(1);

    int exit_code = exit_ok;
    std::string active; // subcommand currently executing, for error mapping

    auto add_common = [](CLI::App* sub, CommonOpts& c) {
        sub->add_option("--report", c.report_path, "write the JSON report to this path");
        sub->add_flag("--timings", c.timings, "include wall-clock timings in the report");
        sub->add_option("--workers", c.workers, "worker threads where supported")
            ->check(CLI::PositiveNumber);
    };

    // ----- verify ---------------------------------------------------------
    struct {
        std::string matrix;
        std::uint32_t ell = 1;
        bool oracle = false;
        CommonOpts common;
    } vo;
    auto* verify = app.add_subcommand("verify", "check a matrix for the list-decoding property");
    verify->add_option("--matrix", vo.matrix, "matrix file")->required();
    verify->add_option("--list-size", vo.ell, "list size l")->required();
    verify->add_flag("--oracle", vo.oracle, "use the exhaustive output-word oracle (q^n <= 1e7)");
    add_common(verify, vo.common);
    verify->callback([&] {
        active = "verify";
        detail::Stopwatch sw;
        const CodeMatrix C = load_matrix(vo.matrix);
        const verifier::Verdict verdict = vo.oracle ? verifier::confusable_by_output(C, vo.ell)
                                                    : verifier::is_list_decoding(C, vo.ell);
        json result = report::to_json(verdict);
        if (verdict.is_code && C.rows() > vo.ell)
            result["rate"] = detail::rate_of(C.rows(), C.cols(), vo.ell);
        json config{{"matrix", vo.matrix}, {"list_size", vo.ell}, {"oracle", vo.oracle}};
        detail::emit_report(vo.common,
                            report::make_report("verify", config, result, {}, 1, true),
                            sw.ms());
        exit_code = verdict.is_code ? exit_ok : exit_negative;
    });

    // ----- construct ------------------------------------------------------
    struct {
        std::uint32_t m = 2, n = 1, q = 2;
        std::uint64_t seed = 0;
        std::string out;
        CommonOpts common;
    } co;
    auto* constructc = app.add_subcommand("construct", "emit a seeded random code matrix");
    constructc->add_option("--m", co.m, "rows (messages)")->required();
    constructc->add_option("--n", co.n, "columns (code length)")->required();
    constructc->add_option("--q", co.q, "alphabet size")->required();
    constructc->add_option("--seed", co.seed, "RNG seed");
    constructc->add_option("--out", co.out, "write the matrix here instead of stdout");
    add_common(constructc, co.common);
    constructc->callback([&] {
        active = "construct";
        detail::Stopwatch sw;
        const CodeMatrix C = construct::random_code(co.m, co.n, co.q, co.seed);
        if (co.out.empty())
            save_matrix(C, std::cout);
        else
            save_matrix(C, co.out);
        json config{{"m", co.m}, {"n", co.n},       {"q", co.q},
                    {"seed", co.seed}, {"out", co.out}};
        json result{{"written", co.out.empty() ? json(nullptr) : json(co.out)}};
        detail::emit_report(co.common,
                            report::make_report("construct", config, result, {}, 1, true),
                            sw.ms(), /*suppress_stdout=*/co.out.empty());
        exit_code = exit_ok;
    });

    // ----- min-n ----------------------------------------------------------
    struct {
        std::uint32_t m = 2, q = 2, ell = 1;
        std::uint64_t budget = 10'000'000;
        CommonOpts common;
    } mo;
    auto* minn = app.add_subcommand("min-n", "exact minimum code length by exhaustive search");
    minn->add_option("--m", mo.m, "rows (messages)")->required();
    minn->add_option("--q", mo.q, "alphabet size")->required();
    minn->add_option("--list-size", mo.ell, "list size l")->required();
    minn->add_option("--budget", mo.budget, "row-candidate budget before giving up");
    add_common(minn, mo.common);
    minn->callback([&] {
        active = "min-n";
        detail::Stopwatch sw;
        const auto res = construct::search_min_n(mo.m, mo.q, mo.ell, mo.budget);
        json result = report::to_json(res);
        if (res.example) result["example"] = report::to_json(*res.example);
        json config{{"m", mo.m}, {"q", mo.q}, {"list_size", mo.ell}, {"budget", mo.budget}};
        detail::emit_report(mo.common,
                            report::make_report("min-n", config, result, {}, 1, true), sw.ms());
        exit_code = res.status == construct::MinNStatus::infeasible ? exit_infeasible : exit_ok;
    });

    // ----- cc -------------------------------------------------------------
    auto* cc = app.add_subcommand("cc", "phased coupon-collector calculators");
    cc->require_subcommand(1);

    struct {
        std::uint32_t q = 2;
        std::vector<std::string> phases;
        CommonOpts common;
    } ceo;
    auto* cc_exact = cc->add_subcommand("exact", "exact expected union size");
    cc_exact->add_option("--q", ceo.q, "alphabet size")->required();
    cc_exact->add_option("--phase", ceo.phases, "phase as DRAWS:DIST (repeatable)")
        ->required();
    add_common(cc_exact, ceo.common);
    cc_exact->callback([&] {
        active = "cc exact";
        detail::Stopwatch sw;
        const auto spec = detail::build_phase_spec(ceo.q, ceo.phases);
        json result{{"expectation", coupon::exact_phased_expectation(spec)}};
        json config{{"q", ceo.q}, {"phases", ceo.phases}};
        detail::emit_report(ceo.common,
                            report::make_report("cc exact", config, result, {}, 1, true),
                            sw.ms());
        exit_code = exit_ok;
    });

    struct {
        std::uint32_t q = 2;
        std::vector<std::string> phases;
        std::uint64_t trials = 100'000;
        std::uint64_t seed = 0;
        CommonOpts common;
    } cmo;
    auto* cc_mc = cc->add_subcommand("mc", "Monte Carlo expected union size");
    cc_mc->add_option("--q", cmo.q, "alphabet size")->required();
    cc_mc->add_option("--phase", cmo.phases, "phase as DRAWS:DIST (repeatable)")->required();
    cc_mc->add_option("--trials", cmo.trials, "simulation trials");
    cc_mc->add_option("--seed", cmo.seed, "RNG seed");
    add_common(cc_mc, cmo.common);
    cc_mc->callback([&] {
        active = "cc mc";
        detail::Stopwatch sw;
        const auto spec = detail::build_phase_spec(cmo.q, cmo.phases);
        const auto mc = coupon::mc_phased_expectation(spec, cmo.trials, cmo.seed,
                                                      cmo.common.workers);
        json result = report::to_json(mc);
        result["trials"] = cmo.trials;
        json config{{"q", cmo.q},
                    {"phases", cmo.phases},
                    {"trials", cmo.trials},
                    {"seed", cmo.seed}};
        std::vector<std::string> notes;
        if (cmo.common.workers > 1)
            notes.push_back("statistical output: the mean depends on the worker count; "
                            "reproducible for a fixed worker count and seed");
        detail::emit_report(
            cmo.common,
            report::make_report("cc mc", config, result, notes, cmo.common.workers, true),
            sw.ms());
        exit_code = exit_ok;
    });

    struct {
        std::uint32_t q = 2;
        std::vector<std::string> phases;
        double epsilon = 0.3, lambda = 0.05;
        CommonOpts common;
    } cbo;
    auto* cc_bound = cc->add_subcommand("bound", "closed-form upper bound vs exact expectation");
    cc_bound->add_option("--q", cbo.q, "alphabet size")->required();
    cc_bound->add_option("--phase", cbo.phases, "phase as DRAWS:DIST (repeatable)")->required();
    cc_bound->add_option("--epsilon", cbo.epsilon, "regime exponent, in (0, 1/3)");
    cc_bound->add_option("--lambda", cbo.lambda, "slack exponent, in (0, epsilon)");
    add_common(cc_bound, cbo.common);
    cc_bound->callback([&] {
        active = "cc bound";
        detail::Stopwatch sw;
        const auto spec = detail::build_phase_spec(cbo.q, cbo.phases);
        const auto rep = coupon::expectation_upper_bound(spec, {cbo.epsilon, cbo.lambda});
        json config{{"q", cbo.q},
                    {"phases", cbo.phases},
                    {"epsilon", cbo.epsilon},
                    {"lambda", cbo.lambda}};
        detail::emit_report(
            cbo.common,
            report::make_report("cc bound", config, report::to_json(rep), {}, 1, true),
            sw.ms());
        exit_code = exit_ok;
    });

    struct {
        double q = 2;
        std::uint32_t k = 1;
        CommonOpts common;
    } clo;
    auto* cc_ell = cc->add_subcommand("ell-seq", "list-size recurrence l_1..l_k");
    cc_ell->add_option("--q", clo.q, "alphabet size")->required();
    cc_ell->add_option("--k", clo.k, "sequence length")->required();
    add_common(cc_ell, clo.common);
    cc_ell->callback([&] {
        active = "cc ell-seq";
        detail::Stopwatch sw;
        const auto seq = coupon::ell_sequence(clo.q, clo.k);
        json config{{"q", clo.q}, {"k", clo.k}};
        detail::emit_report(
            clo.common,
            report::make_report("cc ell-seq", config, report::to_json(seq), {}, 1, true),
            sw.ms());
        exit_code = exit_ok;
    });

    struct {
        double q = 3;
        std::uint32_t k = 1;
        double gamma = 0;
        std::string variant = "cumulative";
        CommonOpts common;
    } cgo;
    auto* cc_g = cc->add_subcommand("phase-g", "attack phase-size schedule g_1..g_k");
    cc_g->add_option("--q", cgo.q, "alphabet size")->required();
    cc_g->add_option("--k", cgo.k, "rounds")->required();
    cc_g->add_option("--gamma", cgo.gamma, "deviation fraction in the schedule");
    cc_g->add_option("--g-variant", cgo.variant, "recurrence reading")
        ->check(CLI::IsMember({"cumulative", "as-written"}));
    add_common(cc_g, cgo.common);
    cc_g->callback([&] {
        active = "cc phase-g";
        detail::Stopwatch sw;
        const auto variant = cgo.variant == "cumulative" ? coupon::GVariant::cumulative
                                                         : coupon::GVariant::as_written;
        json config{{"q", cgo.q},
                    {"k", cgo.k},
                    {"gamma", cgo.gamma},
                    {"g_variant", cgo.variant}};
        try {
            const auto sizes = coupon::phase_sizes(cgo.q, cgo.gamma, cgo.k, variant);
            detail::emit_report(
                cgo.common,
                report::make_report("cc phase-g", config, report::to_json(sizes), {}, 1, true),
                sw.ms());
            exit_code = exit_ok;
        } catch (const coupon::PhaseSizeError& e) {
            json result{{"error", e.what()},
                        {"index", e.index()},
                        {"value", e.value()}};
            detail::emit_report(
                cgo.common,
                report::make_report("cc phase-g", config, result, {}, 1, true), sw.ms());
            exit_code = exit_infeasible;
        }
    });

    // ----- sampler-check --------------------------------------------------
    struct {
        std::string matrix;
        std::uint32_t column = 1;
        std::string ensemble;
        double gamma = 0, delta = 0;
        bool exact = false;
        std::uint64_t samples = 4096;
        bool samples_given = false;
        std::vector<std::uint64_t> draws;
        std::uint64_t seed = 0;
        CommonOpts common;
    } so;
    auto* sc = app.add_subcommand("sampler-check",
                                  "test an ensemble file against the sampler definition");
    sc->add_option("--matrix", so.matrix, "matrix file")->required();
    sc->add_option("--column", so.column, "column index (1-based)")->required();
    sc->add_option("--ensemble", so.ensemble, "ensemble file")->required();
    sc->add_option("--gamma", so.gamma, "deviation fraction")->required();
    sc->add_option("--delta", so.delta, "exponent")->required();
    auto* exact_flag = sc->add_flag("--exact", so.exact, "enumerate all 2^q weight functions");
    sc->add_option("--samples", so.samples, "sampled weight functions")
        ->excludes(exact_flag);
    sc->add_option("--seed", so.seed, "RNG seed for sampled mode");
    sc->add_option("--draws", so.draws,
                   "reference uniform phase sizes (repeatable; default: first member's size)");
    add_common(sc, so.common);
    sc->callback([&] {
        active = "sampler-check";
        detail::Stopwatch sw;
        const CodeMatrix C = load_matrix(so.matrix);
        const Ensemble ens = sampler::load_ensemble(so.ensemble);
        if (ens.sets.empty()) throw ParseError("ensemble file holds no row subsets");

        std::vector<std::uint64_t> draws = so.draws;
        std::vector<std::string> notes;
        if (draws.empty()) {
            draws.push_back(ens.sets.front().size());
            notes.push_back("reference distribution defaulted to one uniform phase of " +
                            std::to_string(draws.back()) + " draws (first member's size)");
        }
        PhasedDistribution D(RowSubset::range(1, C.rows()));
        for (std::uint64_t a : draws) D.append_uniform_phase(a, D.universe());

        const sampler::SamplerParams params(so.gamma, so.delta);
        const sampler::SamplerReport rep =
            so.exact ? sampler::check_sampler_exact(ens, so.column, D, C, params,
                                                    so.common.workers)
                     : sampler::check_sampler_sampled(ens, so.column, D, C, params, so.samples,
                                                      so.seed);
        json config{{"matrix", so.matrix}, {"column", so.column}, {"ensemble", so.ensemble},
                    {"gamma", so.gamma},   {"delta", so.delta},   {"exact", so.exact},
                    {"samples", so.samples}, {"seed", so.seed},   {"draws", draws}};
        detail::emit_report(so.common,
                            report::make_report("sampler-check", config, report::to_json(rep),
                                                notes, so.common.workers, true),
                            sw.ms());
        exit_code = rep.is_sampler ? exit_ok : exit_negative;
    });

    // ----- attack ---------------------------------------------------------
    struct {
        std::string matrix;
        double epsilon = 0.1;
        std::uint32_t iterations = 1;
        std::uint32_t ensemble_size = 16;
        std::uint64_t seed = 0;
        bool baseline = false;
        std::string variant = "cumulative";
        double gamma = -1, gamma_dev = -1, gamma_prime = -1, delta_prime = -1, delta0 = -1;
        std::uint32_t num_wt = 64;
        std::int64_t target = -1;
        CommonOpts common;
    } ao;
    auto* attack = app.add_subcommand("attack", "iterated ensemble attack on a code matrix");
    attack->add_option("--matrix", ao.matrix, "matrix file")->required();
    attack->add_option("--epsilon", ao.epsilon, "target exponent")->required();
    attack->add_option("--iterations", ao.iterations, "rounds k")->required();
    attack->add_option("--ensemble-size", ao.ensemble_size, "members kept per round");
    attack->add_option("--seed", ao.seed, "RNG seed");
    attack->add_flag("--baseline", ao.baseline, "run the greedy single-set baseline instead");
    attack->add_option("--g-variant", ao.variant, "phase-size recurrence reading")
        ->check(CLI::IsMember({"cumulative", "as-written"}));
    attack->add_option("--gamma", ao.gamma, "schedule gamma (negative: q^(-2*eps)/2)");
    attack->add_option("--gamma-dev", ao.gamma_dev,
                       "starting verdict deviation fraction (negative: gamma)");
    attack->add_option("--gamma-prime", ao.gamma_prime,
                       "per-round deviation increment (negative: gamma-dev)");
    attack->add_option("--delta-prime", ao.delta_prime,
                       "per-round exponent decrement (negative: q^(-5*eps)/4, clamped)");
    attack->add_option("--delta0", ao.delta0, "starting exponent (negative: gamma-dev^2)");
    attack->add_option("--num-wt", ao.num_wt, "weight functions per sampler verdict");
    attack->add_option("--target", ao.target, "list size sought (negative: ceil(eps*q*ln q))");
    add_common(attack, ao.common);
    attack->callback([&] {
        active = "attack";
        detail::Stopwatch sw;
        const CodeMatrix C = load_matrix(ao.matrix);
        adversary::AttackConfig cfg;
        cfg.epsilon = ao.epsilon;
        cfg.iterations = ao.iterations;
        cfg.ensemble_size = ao.ensemble_size;
        cfg.seed = ao.seed;
        cfg.g_variant = ao.variant == "cumulative" ? coupon::GVariant::cumulative
                                                   : coupon::GVariant::as_written;
        cfg.gamma = ao.gamma;
        cfg.gamma_dev = ao.gamma_dev;
        cfg.gamma_prime = ao.gamma_prime;
        cfg.delta_prime = ao.delta_prime;
        cfg.delta0 = ao.delta0;
        cfg.num_wt = ao.num_wt;
        if (ao.target >= 0) cfg.target = static_cast<std::uint32_t>(ao.target);
        const adversary::AttackOutcome outcome =
            ao.baseline ? adversary::greedy_baseline(C, cfg) : adversary::run_attack(C, cfg);
        json config{{"matrix", ao.matrix},
                    {"epsilon", ao.epsilon},
                    {"iterations", ao.iterations},
                    {"ensemble_size", ao.ensemble_size},
                    {"seed", ao.seed},
                    {"baseline", ao.baseline},
                    {"g_variant", ao.variant},
                    {"gamma", ao.gamma},
                    {"gamma_dev", ao.gamma_dev},
                    {"gamma_prime", ao.gamma_prime},
                    {"delta_prime", ao.delta_prime},
                    {"delta0", ao.delta0},
                    {"num_wt", ao.num_wt},
                    {"target", ao.target}};
        detail::emit_report(ao.common,
                            report::make_report("attack", config, report::to_json(outcome), {},
                                                1, true),
                            sw.ms());
        switch (outcome.status) {
            case adversary::AttackStatus::found: exit_code = exit_ok; break;
            case adversary::AttackStatus::not_found: exit_code = exit_negative; break;
            default: exit_code = exit_infeasible; break;
        }
    });

    // ----- bounds ---------------------------------------------------------
    struct {
        std::uint32_t q = 2;
        std::uint64_t ell = 1;
        CommonOpts common;
    } bo;
    auto* bnd = app.add_subcommand("bounds", "known capacity bounds for (q, list size)");
    bnd->add_option("--q", bo.q, "alphabet size")->required();
    bnd->add_option("--list-size", bo.ell, "list size l")->required();
    add_common(bnd, bo.common);
    bnd->callback([&] {
        active = "bounds";
        detail::Stopwatch sw;
        const auto interval = bounds::known_bounds(bo.q, bo.ell);
        std::vector<std::string> notes;
        json result;
        if (interval) {
            result = report::to_json(*interval);
        } else {
            result = nullptr;
            notes.push_back("no stored bounds for these parameters");
        }
        json config{{"q", bo.q}, {"list_size", bo.ell}};
        detail::emit_report(bo.common,
                            report::make_report("bounds", config, result, notes, 1, true),
                            sw.ms());
        exit_code = exit_ok;
    });

    // ----- rate -----------------------------------------------------------
    struct {
        std::uint32_t m = 2, n = 1, ell = 1;
        CommonOpts common;
    } ro;
    auto* rate = app.add_subcommand("rate", "rate log2(m/l)/n of a code's parameters");
    rate->add_option("--m", ro.m, "rows (messages)")->required();
    rate->add_option("--n", ro.n, "columns (code length)")->required();
    rate->add_option("--list-size", ro.ell, "list size l")->required();
    add_common(rate, ro.common);
    rate->callback([&] {
        active = "rate";
        detail::Stopwatch sw;
        json result{{"rate", verifier::rate(ro.m, ro.n, ro.ell)}};
        json config{{"m", ro.m}, {"n", ro.n}, {"list_size", ro.ell}};
        detail::emit_report(ro.common,
                            report::make_report("rate", config, result, {}, 1, true), sw.ms());
        exit_code = exit_ok;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the usage diagnostic
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const coupon::PhaseSizeError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return active == "verify" ? exit_verify_error : exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_code;
}

} // namespace zelab::cli
