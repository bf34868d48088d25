// Copyright 2026 The gptsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gptsim/gptsim.hpp"

namespace {

using gptsim::Json;
using OJson = nlohmann::ordered_json;

// exit codes: stable CLI contract
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;       // parse / validation failure
constexpr int kExitCap = 3;         // resource cap exceeded
constexpr int kExitPostselect = 4;  // post-selection guard
constexpr int kExitCausality = 5;   // sequential sampling refused

struct ReportBuilder {
    OJson report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool human = false;

    explicit ReportBuilder(const std::vector<std::string>& argv) {
        std::string echo;
        for (const auto& a : argv) {
            if (!echo.empty()) {
                echo += ' ';
            }
            echo += a;
        }
        report["command"] = echo;
        report["inputs"] = OJson::object();
        report["results"] = OJson::object();
        report["diagnostics"] = OJson::array();
    }

    void input_file(const std::string& path) {
        report["inputs"][path] = gptsim::file_digest(path);
    }
    void input_builtin(const std::string& ref) {
        report["inputs"][ref] = gptsim::fnv1a_hex(ref);
    }
    /// Digest a theory reference; relative file refs resolve against the
    /// directory of the file that referenced them, as the loader does.
    void input_theory_ref(const std::string& ref, const std::string& referrer) {
        if (ref.rfind("builtin:", 0) == 0) {
            input_builtin(ref);
            return;
        }
        std::filesystem::path p(ref);
        if (p.is_relative()) {
            p = std::filesystem::path(referrer).parent_path() / p;
        }
        report["inputs"][ref] = gptsim::file_digest(p.string());
    }

    void diagnostic(const std::string& where, const std::string& message) {
        report["diagnostics"].push_back(OJson{{"where", where}, {"message", message}});
    }

    int finish(int code) {
        auto elapsed = std::chrono::steady_clock::now() - start;
        report["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
        report["exit_code"] = code;
        if (!human) {
            std::cout << report.dump(2) << "\n";
        }
        return code;
    }
};

std::string verdict_name(gptsim::BgpVerdict v) {
    switch (v) {
        case gptsim::BgpVerdict::InLanguage:
            return "in-language";
        case gptsim::BgpVerdict::OutOfLanguage:
            return "out-of-language";
        case gptsim::BgpVerdict::Undecided:
            return "undecided";
    }
    return "?";
}

std::string outcome_key(const gptsim::OutcomeString& z) {
    std::string s;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(z[i]);
    }
    return s;
}

gptsim::OutcomeString parse_outcome(const std::string& s, std::size_t want) {
    gptsim::OutcomeString z;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (cur.empty()) {
                throw gptsim::ParseError("bad --outcome '" + s + "': empty index");
            }
            z.push_back(std::stoi(cur));
            cur.clear();
        } else if (ch >= '0' && ch <= '9') {
            cur += ch;
        } else {
            throw gptsim::ParseError("bad --outcome '" + s + "': expected comma-separated indices");
        }
    }
    if (z.size() != want) {
        throw gptsim::ParseError("--outcome has " + std::to_string(z.size()) +
                                 " indices but the circuit has " + std::to_string(want) + " nodes");
    }
    return z;
}

std::int64_t enum_cap_from_env() {
    const char* v = std::getenv("GPTSIM_MAX_ENUM");
    if (v == nullptr || *v == '\0') {
        return gptsim::kMaxEnumeration;
    }
    return std::stoll(v);
}

void require_valid(const gptsim::Theory& t, const gptsim::Circuit* c, ReportBuilder& rb) {
    auto td = gptsim::validate_theory(t);
    for (const auto& d : td) {
        rb.diagnostic(d.where, d.message);
    }
    if (!td.empty()) {
        throw gptsim::ParseError("theory '" + t.name + "' failed validation");
    }
    if (c != nullptr) {
        auto cd = gptsim::validate_circuit(*c, t);
        for (const auto& d : cd) {
            rb.diagnostic(d.where, d.message);
        }
        if (!cd.empty()) {
            throw gptsim::ParseError("circuit failed validation");
        }
    }
}

// ---------------------------------------------------------------------------

int cmd_validate(ReportBuilder& rb, const std::string& theory_ref,
                 const std::optional<std::string>& circuit_path) {
    rb.input_theory_ref(theory_ref, ".");
    gptsim::Theory t = gptsim::resolve_theory(theory_ref);
    auto diags = gptsim::validate_theory(t);
    for (const auto& d : diags) {
        rb.diagnostic(d.where, d.message);
    }
    auto& res = rb.report["results"];
    res["theory"] = t.name;
    res["valid"] = diags.empty();
    if (diags.empty()) {
        gptsim::CausalityReport rep = gptsim::check_causality(t);
        res["causal"] = rep.is_causal;
        res["undetermined_types"] = rep.undetermined;
        auto viols = OJson::array();
        for (const auto& [gate, resid] : rep.violations) {
            viols.push_back(OJson{{"gate", gate}, {"residual", resid}});
        }
        res["violations"] = viols;
    }
    bool circuit_ok = true;
    if (circuit_path) {
        rb.input_file(*circuit_path);
        gptsim::Circuit c =
            gptsim::circuit_from_json(gptsim::load_json_file(*circuit_path), *circuit_path);
        auto cd = gptsim::validate_circuit(c, t);
        for (const auto& d : cd) {
            rb.diagnostic(d.where, d.message);
        }
        res["circuit_valid"] = cd.empty();
        circuit_ok = cd.empty();
    }
    if (rb.human) {
        std::cout << "theory " << t.name << ": " << (diags.empty() ? "valid" : "INVALID");
        if (diags.empty()) {
            std::cout << ", causal=" << (res["causal"].get<bool>() ? "yes" : "no");
        }
        std::cout << "\n";
        for (const auto& d : rb.report["diagnostics"]) {
            std::cout << "  " << d["where"].get<std::string>() << ": "
                      << d["message"].get<std::string>() << "\n";
        }
    }
    return rb.finish(diags.empty() && circuit_ok ? kExitOk : kExitParse);
}

int cmd_eval(ReportBuilder& rb, const std::string& circuit_path, const std::string& engine_name,
             const std::optional<std::string>& outcome, bool want_distribution, int exponent) {
    rb.input_file(circuit_path);
    auto loaded = gptsim::load_circuit_file(circuit_path);
    rb.input_theory_ref(loaded.circuit.theory_ref, circuit_path);
    require_valid(loaded.theory, &loaded.circuit, rb);
    gptsim::Engine engine = gptsim::engine_from_string(engine_name);
    std::int64_t enum_cap = enum_cap_from_env();

    auto& res = rb.report["results"];
    res["engine"] = engine_name;
    gptsim::Foliation f = gptsim::foliate(loaded.circuit, loaded.theory);
    auto one = [&](const gptsim::OutcomeString& z) {
        OJson rec;
        rec["outcome"] = z;
        if (engine == gptsim::Engine::Exact) {
            gptsim::ExactAmplitude a = gptsim::eval_exact(loaded.circuit, loaded.theory, z, exponent);
            rec["f"] = a.f.str();
            rec["exp"] = a.p;
            rec["p"] = gptsim::to_double(a);
        } else {
            rec["p"] = gptsim::engine_value(engine, f, loaded.circuit, loaded.theory, z, exponent,
                                            gptsim::kMaxPaths);
        }
        return rec;
    };
    if (want_distribution) {
        auto dist = OJson::array();
        for (const auto& z : gptsim::OutcomeRange(loaded.circuit, loaded.theory, enum_cap)) {
            dist.push_back(one(z));
        }
        res["distribution"] = dist;
        if (engine == gptsim::Engine::Exact) {
            res["exponent"] = exponent;
        }
        if (rb.human) {
            for (const auto& rec : dist) {
                std::cout << outcome_key(rec["outcome"].get<gptsim::OutcomeString>()) << "  "
                          << rec["p"].get<double>() << "\n";
            }
        }
    } else {
        if (!outcome) {
            throw gptsim::ParseError("eval needs --outcome or --distribution");
        }
        gptsim::OutcomeString z = parse_outcome(*outcome, loaded.circuit.nodes.size());
        res["evaluation"] = one(z);
        if (rb.human) {
            std::cout << "P(" << *outcome << ") = " << res["evaluation"]["p"].get<double>() << "\n";
        }
    }
    return rb.finish(kExitOk);
}

int cmd_accept(ReportBuilder& rb, const std::string& circuit_path, const std::string& rule_path,
               const std::optional<std::string>& postselect_path, double threshold,
               const std::string& engine_name, int exponent) {
    rb.input_file(circuit_path);
    rb.input_file(rule_path);
    auto loaded = gptsim::load_circuit_file(circuit_path);
    rb.input_theory_ref(loaded.circuit.theory_ref, circuit_path);
    require_valid(loaded.theory, &loaded.circuit, rb);
    gptsim::AcceptanceRule rule = gptsim::load_rule_file(rule_path);
    gptsim::Engine engine = gptsim::engine_from_string(engine_name);
    std::int64_t enum_cap = enum_cap_from_env();

    auto& res = rb.report["results"];
    double p_accept = 0.0;
    if (postselect_path) {
        rb.input_file(*postselect_path);
        gptsim::PostSelection sel{gptsim::load_rule_file(*postselect_path), threshold};
        if (engine == gptsim::Engine::Exact) {
            gptsim::ExactRatio ratio = gptsim::postselect_exact(loaded.circuit, loaded.theory, rule,
                                                                sel, exponent, enum_cap);
            p_accept = ratio.value();
            res["postselect"] = OJson{{"l", ratio.l.str()},
                                      {"h", ratio.h.str()},
                                      {"f_joint", ratio.joint.f.str()},
                                      {"f_sel", ratio.sel.f.str()},
                                      {"exp", ratio.joint.p},
                                      {"p_sel", gptsim::to_double(ratio.sel)},
                                      {"p_joint", gptsim::to_double(ratio.joint)}};
        } else {
            p_accept = gptsim::postselect(loaded.circuit, loaded.theory, rule, sel, engine,
                                          exponent, enum_cap);
            double p_sel = gptsim::accept_probability(loaded.circuit, loaded.theory, sel.selector,
                                                      engine, exponent, enum_cap);
            res["postselect"] = OJson{{"p_sel", p_sel}, {"p_joint", p_accept * p_sel}};
        }
        res["threshold"] = threshold;
    } else {
        if (engine == gptsim::Engine::Exact) {
            gptsim::ExactAmplitude a = gptsim::accept_amplitude_exact(loaded.circuit, loaded.theory,
                                                                      rule, exponent, enum_cap);
            p_accept = gptsim::to_double(a);
            res["exact"] = OJson{{"f", a.f.str()}, {"exp", a.p}};
        } else {
            p_accept = gptsim::accept_probability(loaded.circuit, loaded.theory, rule, engine,
                                                  exponent, enum_cap);
        }
    }
    res["p_accept"] = p_accept;
    res["verdict"] = verdict_name(gptsim::bgp_verdict(p_accept));
    res["thresholds"] = OJson{{"accept", 2.0 / 3.0}, {"reject", 1.0 / 3.0}};
    if (rb.human) {
        std::cout << "P(accept) = " << p_accept << "  [" << res["verdict"].get<std::string>()
                  << "]\n";
    }
    return rb.finish(kExitOk);
}

int cmd_approx(ReportBuilder& rb, const std::string& circuit_path, double eps) {
    rb.input_file(circuit_path);
    auto loaded = gptsim::load_circuit_file(circuit_path);
    rb.input_theory_ref(loaded.circuit.theory_ref, circuit_path);
    require_valid(loaded.theory, &loaded.circuit, rb);
    std::int64_t enum_cap = enum_cap_from_env();

    gptsim::DyadicApproximation ap = gptsim::approximate_circuit(loaded.circuit, loaded.theory, eps);
    auto& res = rb.report["results"];
    res["certificate"] = OJson{{"eps", ap.certificate.eps},
                               {"q", ap.certificate.q},
                               {"N", ap.certificate.n},
                               {"D", ap.certificate.d},
                               {"bound", ap.certificate.bound}};
    res["exponent"] = ap.exponent;
    gptsim::Foliation f = gptsim::foliate(loaded.circuit, loaded.theory);
    gptsim::Foliation fr = gptsim::foliate(loaded.circuit, ap.rounded_theory);
    auto outcomes = OJson::array();
    double max_err = 0.0;
    bool all_within = true;
    for (const auto& z : gptsim::OutcomeRange(loaded.circuit, loaded.theory, enum_cap)) {
        double p = gptsim::eval_dense(f, loaded.circuit, loaded.theory, z);
        double pt = gptsim::eval_dense(fr, loaded.circuit, ap.rounded_theory, z);
        double err = std::abs(p - pt);
        max_err = std::max(max_err, err);
        bool within = err <= ap.certificate.bound;
        all_within = all_within && within;
        outcomes.push_back(OJson{{"outcome", z},
                                 {"p", p},
                                 {"p_tilde", pt},
                                 {"abs_err", err},
                                 {"within_bound", within}});
    }
    res["outcomes"] = outcomes;
    res["max_abs_err"] = max_err;
    res["all_within_bound"] = all_within;
    if (rb.human) {
        std::cout << "bound = " << ap.certificate.bound << ", max |P - P~| = " << max_err
                  << (all_within ? " (within bound)" : " (BOUND VIOLATED)") << "\n";
    }
    return rb.finish(kExitOk);
}

int cmd_sample(ReportBuilder& rb, const std::string& program_path, const std::string& oracle_path,
               long long runs, std::uint64_t seed) {
    rb.input_file(program_path);
    rb.input_file(oracle_path);
    auto loaded = gptsim::load_program_file(program_path);
    rb.input_theory_ref(loaded.program.theory_ref, program_path);
    require_valid(loaded.theory, nullptr, rb);
    gptsim::ClassicalOracle oracle = gptsim::load_oracle_file(oracle_path);

    gptsim::SampleEstimate est =
        gptsim::estimate_accept(loaded.theory, loaded.program, oracle, runs, seed);
    auto& res = rb.report["results"];
    res["runs"] = est.runs;
    res["accepted"] = est.accepted;
    res["frequency"] = est.frequency;
    res["wilson95"] = OJson::array({est.wilson_low, est.wilson_high});
    res["total_queries"] = est.total_queries;
    res["seed"] = seed;
    if (rb.human) {
        std::cout << "accept frequency " << est.frequency << " over " << est.runs << " runs, 95% ["
                  << est.wilson_low << ", " << est.wilson_high << "], " << est.total_queries
                  << " oracle queries\n";
    }
    return rb.finish(kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"gptsim: circuit simulator and verifier for generalised probabilistic theories"};
    app.require_subcommand(1);
    bool human = false;
    app.add_flag("--human", human, "print a human-readable table instead of the JSON report");

    auto* validate = app.add_subcommand("validate", "validate a theory (and optionally a circuit)");
    std::string v_theory;
    std::optional<std::string> v_circuit;
    validate->add_option("theory", v_theory, "theory file or builtin:<name>")->required();
    validate->add_option("circuit", v_circuit, "circuit file to validate against the theory");

    auto* eval = app.add_subcommand("eval", "evaluate outcome probabilities of a closed circuit");
    std::string e_circuit, e_engine = "dense";
    std::optional<std::string> e_outcome;
    bool e_distribution = false;
    int e_exponent = 32;
    eval->add_option("circuit", e_circuit, "circuit file")->required();
    eval->add_option("--engine", e_engine, "dense|pathsum|exact (default dense)");
    eval->add_option("--outcome", e_outcome, "comma-separated outcome indices, node order");
    eval->add_flag("--distribution", e_distribution, "emit the full outcome distribution");
    eval->add_option("--exponent", e_exponent, "dyadic exponent d for the exact engine");

    auto* accept = app.add_subcommand("accept", "acceptance probability and BGP verdict");
    std::string a_circuit, a_rule, a_engine = "dense";
    std::optional<std::string> a_postselect;
    double a_threshold = 1e-6;
    int a_exponent = 32;
    accept->add_option("circuit", a_circuit, "circuit file")->required();
    accept->add_option("rule", a_rule, "acceptance rule file")->required();
    accept->add_option("--postselect", a_postselect, "selector rule file for post-selection");
    accept->add_option("--threshold", a_threshold, "lower bound required on P(S) (default 1e-6)");
    accept->add_option("--engine", a_engine, "dense|pathsum|exact");
    accept->add_option("--exponent", a_exponent, "dyadic exponent for the exact engine");

    auto* approx = app.add_subcommand("approx", "dyadic approximation with error certificate");
    std::string x_circuit;
    double x_eps = 0.0;
    approx->add_option("circuit", x_circuit, "circuit file")->required();
    approx->add_option("--eps", x_eps, "entrywise accuracy, in (0,1]")->required();

    auto* sample = app.add_subcommand("sample", "run an adaptive program with a classical oracle");
    std::string s_program, s_oracle;
    long long s_runs = 1000;
    std::uint64_t s_seed = 0;
    sample->add_option("program", s_program, "adaptive program file")->required();
    sample->add_option("oracle", s_oracle, "oracle file")->required();
    sample->add_option("--runs", s_runs, "number of independent runs (default 1000)");
    sample->add_option("--seed", s_seed, "base seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    ReportBuilder rb(args);
    rb.human = human;
    try {
        if (*validate) {
            return cmd_validate(rb, v_theory, v_circuit);
        }
        if (*eval) {
            return cmd_eval(rb, e_circuit, e_engine, e_outcome, e_distribution, e_exponent);
        }
        if (*accept) {
            return cmd_accept(rb, a_circuit, a_rule, a_postselect, a_threshold, a_engine, a_exponent);
        }
        if (*approx) {
            return cmd_approx(rb, x_circuit, x_eps);
        }
        if (*sample) {
            return cmd_sample(rb, s_program, s_oracle, s_runs, s_seed);
        }
    } catch (const gptsim::CapError& e) {
        rb.diagnostic("error", e.what());
        return rb.finish(kExitCap);
    } catch (const gptsim::PostselectError& e) {
        rb.diagnostic("error", e.what());
        return rb.finish(kExitPostselect);
    } catch (const gptsim::CausalityError& e) {
        rb.diagnostic("error", e.what());
        return rb.finish(kExitCausality);
    } catch (const gptsim::ParseError& e) {
        rb.diagnostic("error", e.what());
        return rb.finish(kExitParse);
    } catch (const std::exception& e) {
        rb.diagnostic("error", e.what());
        return rb.finish(kExitUsage);
    }
    return kExitUsage;
}
