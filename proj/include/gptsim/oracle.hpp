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

#ifndef GPTSIM_ORACLE_HPP
#define GPTSIM_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gptsim/circuit.hpp"
#include "gptsim/errors.hpp"
#include "gptsim/eval.hpp"
#include "gptsim/theory.hpp"

namespace gptsim {

// ---------------------------------------------------------------------------
// Classical oracles: total boolean functions on bit strings, given either as
// an explicit table or as a named predicate.
// ---------------------------------------------------------------------------

struct ClassicalOracle {
    enum class Kind { Table, Parity, Member };
    Kind kind = Kind::Table;
    std::map<std::string, int> table;
    std::set<std::string> member_set;

    int query(const std::string& bits) const {
        switch (kind) {
            case Kind::Table: {
                auto it = table.find(bits);
                if (it == table.end()) {
                    throw OracleDomainError("oracle table has no entry for '" + bits + "'");
                }
                return it->second;
            }
            case Kind::Parity: {
                int p = 0;
                for (char ch : bits) {
                    if (ch == '1') {
                        p ^= 1;
                    } else if (ch != '0') {
                        throw OracleDomainError("oracle input is not a bit string: '" + bits + "'");
                    }
                }
                return p;
            }
            case Kind::Member:
                return member_set.count(bits) ? 1 : 0;
        }
        throw OracleDomainError("corrupt oracle");
    }

    static ClassicalOracle from_table(std::map<std::string, int> t) {
        ClassicalOracle o;
        o.kind = Kind::Table;
        o.table = std::move(t);
        return o;
    }
    static ClassicalOracle parity() {
        ClassicalOracle o;
        o.kind = Kind::Parity;
        return o;
    }
    static ClassicalOracle member(std::set<std::string> s) {
        ClassicalOracle o;
        o.kind = Kind::Member;
        o.member_set = std::move(s);
        return o;
    }
};

/// Query-input functions over past outcomes, drawn from a fixed library:
/// "select" concatenates the chosen nodes' outcome indices in binary
/// (each padded to its gate's outcome width), "parity" reduces that string
/// to one bit.
struct OutcomeFn {
    enum class Kind { Select, Parity };
    Kind kind = Kind::Select;
    std::vector<std::string> nodes;
};

// ---------------------------------------------------------------------------
// Adaptive programs
// ---------------------------------------------------------------------------

struct GateStep {
    std::string id;              // instance id of the placed gate
    std::string gate;            // gate name in the theory
    std::vector<int> wires;      // indices into the current open-wire list
};

struct QueryStep {
    std::string id;  // referenced by branches and acceptance atoms
    OutcomeFn fn;
};

struct BranchStep {
    bool on_query = true;            // branch on a query answer or a node outcome
    std::string ref;                 // query step id / node id
    std::map<int, int> cases;        // observed value -> next step index
    std::optional<int> otherwise;    // fallthrough target
};

using AdaptiveStep = std::variant<GateStep, QueryStep, BranchStep>;

struct AdaptiveProgram {
    std::string theory_ref;
    std::vector<AdaptiveStep> steps;
    AcceptanceRule accept;  // atoms may reference node outcomes and query answers
};

struct QueryRecord {
    std::string step_id;
    std::string input;
    int answer = 0;
};

struct ExecutionTrace {
    std::vector<std::pair<std::string, int>> outcomes;  // (node id, outcome), placement order
    std::vector<QueryRecord> queries;
    bool accept = false;
    /// Sampled conditional probability of each gate step's outcome.
    std::vector<double> step_probabilities;
    /// The closed circuit realised by this run.
    Circuit realized;
};

// ---------------------------------------------------------------------------
// Sequential sampling via the deterministic effect
// ---------------------------------------------------------------------------

/// A prefix circuit under construction: placed gates, wires, and the ordered
/// list of open output ports (creation order).
struct PartialCircuit {
    std::vector<Node> nodes;
    std::vector<Wire> wires;
    struct OpenWire {
        PortRef from;
        std::string type;
    };
    std::vector<OpenWire> open;
    OutcomeString past;  // sampled outcome per placed node
};

namespace detail {

inline const std::map<std::string, RealMatrix>& require_causal(const Theory& t) {
    if (!t.causal_certificate) {
        throw CausalityError("theory '" + t.name +
                             "' has no causal certificate; sequential sampling requires a causal "
                             "theory (use joint evaluation instead)");
    }
    return *t.causal_certificate;
}

inline std::string cap_gate_name(const std::string& type_label) {
    return "__cap_" + type_label;
}

/// Theory copy extended with a one-outcome deterministic-effect measurement
/// per type, used to close open wires.
inline Theory capped_theory(const Theory& t) {
    const auto& u = require_causal(t);
    Theory aug = t;
    for (const auto& [label, effect] : u) {
        aug.gates.push_back({cap_gate_name(label), {label}, {}, {effect}});
    }
    return aug;
}

/// Probability of the placed prefix with every open wire capped by u.
inline double capped_probability(const Theory& aug, const PartialCircuit& pc) {
    Circuit c;
    c.theory_ref = aug.name;
    c.nodes = pc.nodes;
    c.wires = pc.wires;
    OutcomeString z = pc.past;
    int k = 0;
    for (const auto& ow : pc.open) {
        std::string id = "__cap" + std::to_string(k++);
        c.nodes.push_back({id, cap_gate_name(ow.type)});
        c.wires.push_back({ow.from, {id, 0}});
        z.push_back(0);
    }
    if (c.nodes.empty()) {
        return 1.0;
    }
    return eval_dense(c, aug, z);
}

}  // namespace detail

namespace detail {

inline std::vector<double> marginal_next_impl(const Theory& t, const Theory& aug,
                                              const PartialCircuit& partial,
                                              const std::string& gate_name,
                                              const std::vector<int>& wire_choice,
                                              double null_tol) {
    const Gate* g = t.find_gate(gate_name);
    if (g == nullptr) {
        throw ParseError("unknown gate '" + gate_name + "'");
    }
    if (wire_choice.size() != g->input_types.size()) {
        throw StructureError("gate '" + gate_name + "' needs " +
                             std::to_string(g->input_types.size()) + " input wires, got " +
                             std::to_string(wire_choice.size()));
    }
    std::set<int> seen;
    for (std::size_t p = 0; p < wire_choice.size(); ++p) {
        int w = wire_choice[p];
        if (w < 0 || w >= static_cast<int>(partial.open.size())) {
            throw StructureError("open-wire index " + std::to_string(w) + " out of range");
        }
        if (!seen.insert(w).second) {
            throw StructureError("open-wire index " + std::to_string(w) + " used twice");
        }
        if (partial.open[static_cast<std::size_t>(w)].type != g->input_types[p]) {
            throw StructureError("gate '" + gate_name + "' input " + std::to_string(p) +
                                 " expects type '" + g->input_types[p] + "', wire has '" +
                                 partial.open[static_cast<std::size_t>(w)].type + "'");
        }
    }
    double p_past = capped_probability(aug, partial);
    if (p_past < null_tol) {
        throw Error("cannot condition on a prefix of probability " + std::to_string(p_past));
    }
    std::vector<double> probs;
    probs.reserve(g->outcomes.size());
    for (std::size_t r = 0; r < g->outcomes.size(); ++r) {
        PartialCircuit next = partial;
        std::string id = "__next";
        next.nodes.push_back({id, gate_name});
        next.past.push_back(static_cast<int>(r));
        // consume chosen wires (indices refer to the pre-placement open list)
        std::vector<int> sorted(wire_choice.begin(), wire_choice.end());
        std::sort(sorted.rbegin(), sorted.rend());
        for (std::size_t p = 0; p < wire_choice.size(); ++p) {
            next.wires.push_back(
                {partial.open[static_cast<std::size_t>(wire_choice[p])].from, {id, static_cast<int>(p)}});
        }
        for (int w : sorted) {
            next.open.erase(next.open.begin() + w);
        }
        for (std::size_t p = 0; p < g->output_types.size(); ++p) {
            next.open.push_back({{id, static_cast<int>(p)}, g->output_types[p]});
        }
        probs.push_back(capped_probability(aug, next) / p_past);
    }
    return probs;
}

}  // namespace detail

/// Conditional outcome distribution of placing `gate` onto the given open
/// wires after the prefix: P(r | past). Requires a causal theory.
///
/// Marginals are evaluated by capping every remaining open wire with the
/// type's deterministic effect, which is exactly what causality licenses.
inline std::vector<double> marginal_next(const Theory& t, const PartialCircuit& partial,
                                         const std::string& gate_name,
                                         const std::vector<int>& wire_choice,
                                         double null_tol = 1e-12) {
    detail::require_causal(t);
    Theory aug = detail::capped_theory(t);
    return detail::marginal_next_impl(t, aug, partial, gate_name, wire_choice, null_tol);
}

// ---------------------------------------------------------------------------
// Seeded execution
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic uniform in [0,1) with 53 bits, from a splitmix64 stream.
class SeededStream {
  public:
    explicit SeededStream(std::uint64_t seed) : state_(seed) {}
    double next_unit() {
        state_ = splitmix64(state_);
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

inline std::string outcome_bits(int outcome, int n_outcomes) {
    int width = 1;
    while ((1 << width) < n_outcomes) {
        ++width;
    }
    std::string s(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b) {
        if (outcome & (1 << (width - 1 - b))) {
            s[static_cast<std::size_t>(b)] = '1';
        }
    }
    return s;
}

}  // namespace detail

inline bool rule_accepts_trace(const AcceptanceRule& rule, const ExecutionTrace& trace) {
    auto node_outcome = [&](const std::string& id) -> int {
        for (const auto& [nid, r] : trace.outcomes) {
            if (nid == id) {
                return r;
            }
        }
        throw ParseError("rule references node '" + id + "' absent from trace");
    };
    auto query_answer = [&](const std::string& id) -> int {
        for (auto it = trace.queries.rbegin(); it != trace.queries.rend(); ++it) {
            if (it->step_id == id) {
                return it->answer;
            }
        }
        throw ParseError("rule references query '" + id + "' absent from trace");
    };
    bool satisfied = false;
    switch (rule.kind) {
        case AcceptanceRule::Kind::Bit:
            satisfied = node_outcome(rule.bit_node) == 0;
            break;
        case AcceptanceRule::Kind::Subset: {
            OutcomeString z;
            z.reserve(trace.outcomes.size());
            for (const auto& [nid, r] : trace.outcomes) {
                z.push_back(r);
            }
            for (const auto& s : rule.subset) {
                if (s == z) {
                    satisfied = true;
                    break;
                }
            }
            break;
        }
        case AcceptanceRule::Kind::Expr:
            satisfied = detail::eval_expr(rule.expr, [&](const RuleAtom& a) {
                return (a.kind == RuleAtom::Kind::NodeOutcome ? node_outcome(a.id)
                                                              : query_answer(a.id)) == a.eq;
            });
            break;
    }
    return satisfied == rule.accept_when_satisfied;
}

/// Execute an adaptive program: gate steps sample outcomes sequentially from
/// marginal_next, query steps evaluate f(past) against the oracle, branch
/// steps jump. Deterministic given (program, oracle, seed).
inline ExecutionTrace run_adaptive(const Theory& t, const AdaptiveProgram& program,
                                   const ClassicalOracle& oracle, std::uint64_t seed,
                                   std::size_t max_steps = 10000) {
    detail::require_causal(t);
    Theory aug = detail::capped_theory(t);
    detail::SeededStream stream(seed);
    PartialCircuit pc;
    ExecutionTrace trace;
    std::map<std::string, std::pair<int, int>> placed;  // id -> (outcome, n_outcomes)

    std::size_t ip = 0;
    std::size_t executed = 0;
    while (ip < program.steps.size()) {
        if (++executed > max_steps) {
            throw StructureError("adaptive program exceeded " + std::to_string(max_steps) +
                                 " steps without terminating");
        }
        const AdaptiveStep& step = program.steps[ip];
        if (const auto* gs = std::get_if<GateStep>(&step)) {
            if (placed.count(gs->id)) {
                throw StructureError("duplicate instance id '" + gs->id + "'");
            }
            const Gate* g = t.find_gate(gs->gate);
            if (g == nullptr) {
                throw ParseError("unknown gate '" + gs->gate + "'");
            }
            std::vector<double> probs =
                detail::marginal_next_impl(t, aug, pc, gs->gate, gs->wires, 1e-12);
            double total = 0.0;
            for (double p : probs) {
                total += std::max(p, 0.0);
            }
            double x = stream.next_unit() * total;
            int outcome = static_cast<int>(probs.size()) - 1;
            double cum = 0.0;
            for (std::size_t r = 0; r < probs.size(); ++r) {
                cum += std::max(probs[r], 0.0);
                if (x < cum) {
                    outcome = static_cast<int>(r);
                    break;
                }
            }
            // commit the placement
            pc.nodes.push_back({gs->id, gs->gate});
            pc.past.push_back(outcome);
            std::vector<int> sorted(gs->wires.begin(), gs->wires.end());
            std::sort(sorted.rbegin(), sorted.rend());
            for (std::size_t p = 0; p < gs->wires.size(); ++p) {
                pc.wires.push_back({pc.open[static_cast<std::size_t>(gs->wires[p])].from,
                                    {gs->id, static_cast<int>(p)}});
            }
            for (int w : sorted) {
                pc.open.erase(pc.open.begin() + w);
            }
            for (std::size_t p = 0; p < g->output_types.size(); ++p) {
                pc.open.push_back({{gs->id, static_cast<int>(p)}, g->output_types[p]});
            }
            trace.outcomes.emplace_back(gs->id, outcome);
            trace.step_probabilities.push_back(probs[static_cast<std::size_t>(outcome)]);
            placed[gs->id] = {outcome, static_cast<int>(g->outcomes.size())};
            ++ip;
        } else if (const auto* qs = std::get_if<QueryStep>(&step)) {
            std::string input;
            for (const auto& id : qs->fn.nodes) {
                auto it = placed.find(id);
                if (it == placed.end()) {
                    throw StructureError("query '" + qs->id + "' references node '" + id +
                                         "' before placement");
                }
                input += detail::outcome_bits(it->second.first, it->second.second);
            }
            if (qs->fn.kind == OutcomeFn::Kind::Parity) {
                int p = 0;
                for (char ch : input) {
                    p ^= (ch == '1');
                }
                input = p ? "1" : "0";
            }
            trace.queries.push_back({qs->id, input, oracle.query(input)});
            ++ip;
        } else {
            const auto& bs = std::get<BranchStep>(step);
            int value = 0;
            if (bs.on_query) {
                bool found = false;
                for (auto it = trace.queries.rbegin(); it != trace.queries.rend(); ++it) {
                    if (it->step_id == bs.ref) {
                        value = it->answer;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw StructureError("branch references query '" + bs.ref +
                                         "' with no recorded answer");
                }
            } else {
                auto it = placed.find(bs.ref);
                if (it == placed.end()) {
                    throw StructureError("branch references node '" + bs.ref +
                                         "' before placement");
                }
                value = it->second.first;
            }
            int next;
            auto it = bs.cases.find(value);
            if (it != bs.cases.end()) {
                next = it->second;
            } else if (bs.otherwise) {
                next = *bs.otherwise;
            } else {
                throw StructureError("branch has no case for value " + std::to_string(value));
            }
            if (next < 0 || next > static_cast<int>(program.steps.size())) {
                throw StructureError("branch target " + std::to_string(next) + " out of range");
            }
            ip = static_cast<std::size_t>(next);
        }
    }
    if (!pc.open.empty()) {
        throw StructureError("program terminated with " + std::to_string(pc.open.size()) +
                             " open wires; every path must close the circuit");
    }
    trace.realized.theory_ref = program.theory_ref;
    trace.realized.nodes = pc.nodes;
    trace.realized.wires = pc.wires;
    trace.accept = rule_accepts_trace(program.accept, trace);
    return trace;
}

struct SampleEstimate {
    long long runs = 0;
    long long accepted = 0;
    double frequency = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    long long total_queries = 0;
};

/// Acceptance frequency over n independent seeded runs, with the Wilson 95%
/// interval. Run i derives its stream from splitmix64(seed + i).
inline SampleEstimate estimate_accept(const Theory& t, const AdaptiveProgram& program,
                                      const ClassicalOracle& oracle, long long n_runs,
                                      std::uint64_t seed) {
    if (n_runs <= 0) {
        throw ParseError("n_runs must be positive");
    }
    SampleEstimate est;
    est.runs = n_runs;
    for (long long i = 0; i < n_runs; ++i) {
        ExecutionTrace trace =
            run_adaptive(t, program, oracle, detail::splitmix64(seed + static_cast<std::uint64_t>(i)));
        est.accepted += trace.accept ? 1 : 0;
        est.total_queries += static_cast<long long>(trace.queries.size());
    }
    est.frequency = static_cast<double>(est.accepted) / static_cast<double>(est.runs);
    const double zc = 1.959963984540054;  // 97.5th normal percentile
    double n = static_cast<double>(est.runs);
    double ph = est.frequency;
    double denom = 1.0 + zc * zc / n;
    double center = (ph + zc * zc / (2.0 * n)) / denom;
    double half = zc * std::sqrt(ph * (1.0 - ph) / n + zc * zc / (4.0 * n * n)) / denom;
    est.wilson_low = std::max(0.0, center - half);
    est.wilson_high = std::min(1.0, center + half);
    return est;
}

}  // namespace gptsim

#endif
