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

#ifndef GPTSIM_IO_HPP
#define GPTSIM_IO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gptsim/circuit.hpp"
#include "gptsim/errors.hpp"
#include "gptsim/eval.hpp"
#include "gptsim/oracle.hpp"
#include "gptsim/theory.hpp"

namespace gptsim {

using Json = nlohmann::json;

namespace io_detail {

inline std::string json_type_name(const Json& j) {
    if (j.is_object()) return "object";
    if (j.is_array()) return "array";
    if (j.is_string()) return "string";
    if (j.is_boolean()) return "boolean";
    if (j.is_number()) return "number";
    if (j.is_null()) return "null";
    return "value";
}

inline void check_keys(const Json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected object, got " + json_type_name(j));
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError(path + ": unknown key '" + it.key() + "'");
        }
    }
}

inline const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(path + ": missing required key '" + key + "'");
    }
    return j.at(key);
}

inline std::string need_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_string()) {
        throw ParseError(path + "." + key + ": expected string, got " + json_type_name(v));
    }
    return v.get<std::string>();
}

inline int need_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_number_integer()) {
        throw ParseError(path + "." + key + ": expected integer, got " + json_type_name(v));
    }
    return v.get<int>();
}

inline const Json& need_array(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_array()) {
        throw ParseError(path + "." + key + ": expected array, got " + json_type_name(v));
    }
    return v;
}

inline std::vector<std::string> string_list(const Json& arr, const std::string& path) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) {
            throw ParseError(path + "[" + std::to_string(i) + "]: expected string");
        }
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

}  // namespace io_detail

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// FNV-1a 64-bit digest, used for report input fingerprints.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << std::hex << h;
    return "fnv1a:" + ss.str();
}

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

// ---------------------------------------------------------------------------
// Theory files: { "types": [{"label","dim"}],
//                 "gates": [{"name","inputs","outputs","outcomes"}] }
// Outcome matrices are flat row-major float arrays; shapes follow from the
// declared port types.
// ---------------------------------------------------------------------------

inline Theory theory_from_json(const Json& j, const std::string& source) {
    io_detail::check_keys(j, source, {"name", "types", "gates"});
    Theory t;
    t.name = j.contains("name") ? io_detail::need_string(j, "name", source) : source;
    const Json& types = io_detail::need_array(j, "types", source);
    for (std::size_t i = 0; i < types.size(); ++i) {
        std::string path = source + ".types[" + std::to_string(i) + "]";
        io_detail::check_keys(types[i], path, {"label", "dim"});
        SystemType ty;
        ty.label = io_detail::need_string(types[i], "label", path);
        ty.dim = io_detail::need_int(types[i], "dim", path);
        if (ty.dim < 1) {
            throw ParseError(path + ".dim: must be >= 1");
        }
        t.types.push_back(std::move(ty));
    }
    const Json& gates = io_detail::need_array(j, "gates", source);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        std::string path = source + ".gates[" + std::to_string(i) + "]";
        io_detail::check_keys(gates[i], path, {"name", "inputs", "outputs", "outcomes"});
        Gate g;
        g.name = io_detail::need_string(gates[i], "name", path);
        g.input_types = io_detail::string_list(io_detail::need_array(gates[i], "inputs", path),
                                               path + ".inputs");
        g.output_types = io_detail::string_list(io_detail::need_array(gates[i], "outputs", path),
                                                path + ".outputs");
        int rows = static_cast<int>(t.product_dim(g.output_types));
        int cols = static_cast<int>(t.product_dim(g.input_types));
        const Json& outcomes = io_detail::need_array(gates[i], "outcomes", path);
        if (outcomes.empty()) {
            throw ParseError(path + ".outcomes: must be non-empty");
        }
        for (std::size_t r = 0; r < outcomes.size(); ++r) {
            std::string opath = path + ".outcomes[" + std::to_string(r) + "]";
            if (!outcomes[r].is_array()) {
                throw ParseError(opath + ": expected flat row-major number array");
            }
            if (static_cast<int>(outcomes[r].size()) != rows * cols) {
                throw ParseError(opath + ": expected " + std::to_string(rows * cols) +
                                 " entries for shape " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + ", got " +
                                 std::to_string(outcomes[r].size()));
            }
            std::vector<double> data;
            data.reserve(outcomes[r].size());
            for (std::size_t e = 0; e < outcomes[r].size(); ++e) {
                if (!outcomes[r][e].is_number()) {
                    throw ParseError(opath + "[" + std::to_string(e) + "]: expected number");
                }
                data.push_back(outcomes[r][e].get<double>());
            }
            RealMatrix m(rows, cols, std::move(data));
            if (!m.all_finite()) {
                throw ParseError(opath + ": non-finite entry");
            }
            g.outcomes.push_back(std::move(m));
        }
        t.gates.push_back(std::move(g));
    }
    return t;
}

/// Resolve a theory reference: "builtin:<name>" or a JSON file path
/// (relative paths resolve against base_dir). Validated theories get their
/// causal certificate attached when check_causality passes.
inline Theory resolve_theory(const std::string& ref, const std::string& base_dir = "") {
    Theory t;
    if (ref.rfind("builtin:", 0) == 0) {
        std::string name = ref.substr(8);
        if (name.rfind("classical", 0) == 0) {
            int n = 0;
            try {
                n = std::stoi(name.substr(9));
            } catch (...) {
                throw ParseError("bad builtin theory '" + ref + "'");
            }
            t = builtin_classical(n);
        } else if (name.rfind("qubits", 0) == 0) {
            int n = 0;
            try {
                n = std::stoi(name.substr(6));
            } catch (...) {
                throw ParseError("bad builtin theory '" + ref + "'");
            }
            t = builtin_quantum(n);
        } else if (name == "boxworld") {
            t = builtin_boxworld();
        } else {
            throw ParseError("unknown builtin theory '" + ref +
                             "' (expected classical<n>, qubits<1..3>, boxworld)");
        }
        return t;
    }
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty()) {
        p = std::filesystem::path(base_dir) / p;
    }
    t = theory_from_json(load_json_file(p.string()), p.string());
    if (validate_theory(t).empty()) {
        CausalityReport rep = check_causality(t);
        if (rep.is_causal) {
            t.causal_certificate = rep.per_type_effect;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Circuit files: { "theory": "...", "nodes": [{"id","gate"}],
//                  "wires": [{"from":[id,port],"to":[id,port]}] }
// ---------------------------------------------------------------------------

namespace io_detail {

inline PortRef port_ref(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_number_integer()) {
        throw ParseError(path + ": expected [node-id, port]");
    }
    return PortRef{v[0].get<std::string>(), v[1].get<int>()};
}

}  // namespace io_detail

inline Circuit circuit_from_json(const Json& j, const std::string& source) {
    io_detail::check_keys(j, source, {"theory", "name", "nodes", "wires"});
    Circuit c;
    c.theory_ref = io_detail::need_string(j, "theory", source);
    if (j.contains("name")) {
        c.name = io_detail::need_string(j, "name", source);
    }
    const Json& nodes = io_detail::need_array(j, "nodes", source);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string path = source + ".nodes[" + std::to_string(i) + "]";
        io_detail::check_keys(nodes[i], path, {"id", "gate"});
        c.nodes.push_back({io_detail::need_string(nodes[i], "id", path),
                           io_detail::need_string(nodes[i], "gate", path)});
    }
    const Json& wires = io_detail::need_array(j, "wires", source);
    for (std::size_t i = 0; i < wires.size(); ++i) {
        std::string path = source + ".wires[" + std::to_string(i) + "]";
        io_detail::check_keys(wires[i], path, {"from", "to"});
        c.wires.push_back({io_detail::port_ref(io_detail::need(wires[i], "from", path), path + ".from"),
                           io_detail::port_ref(io_detail::need(wires[i], "to", path), path + ".to")});
    }
    return c;
}

struct LoadedCircuit {
    Circuit circuit;
    Theory theory;
};

inline LoadedCircuit load_circuit_file(const std::string& path) {
    Json j = load_json_file(path);
    LoadedCircuit out;
    out.circuit = circuit_from_json(j, path);
    out.theory = resolve_theory(out.circuit.theory_ref,
                                std::filesystem::path(path).parent_path().string());
    return out;
}

// ---------------------------------------------------------------------------
// Acceptance rules:
//   {"kind":"bit","node":"m"}                       satisfied iff outcome 0
//   {"kind":"subset","accept":[[0,0],[1,1]]}
//   {"kind":"expr","expr":{...}}                    and/or/not over atoms
// Atoms: {"node":"id","eq":k} or {"query":"id","eq":b}.
// Optional "polarity": "satisfied-accepts" (default) | "satisfied-rejects".
// ---------------------------------------------------------------------------

inline BoolExpr expr_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected object");
    }
    if (j.contains("op")) {
        io_detail::check_keys(j, path, {"op", "args"});
        std::string op = io_detail::need_string(j, "op", path);
        BoolExpr e;
        if (op == "and") {
            e.op = BoolExpr::Op::And;
        } else if (op == "or") {
            e.op = BoolExpr::Op::Or;
        } else if (op == "not") {
            e.op = BoolExpr::Op::Not;
        } else {
            throw ParseError(path + ".op: expected and|or|not, got '" + op + "'");
        }
        const Json& args = io_detail::need_array(j, "args", path);
        if (e.op == BoolExpr::Op::Not && args.size() != 1) {
            throw ParseError(path + ": 'not' takes exactly one argument");
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            e.args.push_back(expr_from_json(args[i], path + ".args[" + std::to_string(i) + "]"));
        }
        return e;
    }
    RuleAtom atom;
    if (j.contains("node")) {
        io_detail::check_keys(j, path, {"node", "eq"});
        atom.kind = RuleAtom::Kind::NodeOutcome;
        atom.id = io_detail::need_string(j, "node", path);
    } else if (j.contains("query")) {
        io_detail::check_keys(j, path, {"query", "eq"});
        atom.kind = RuleAtom::Kind::QueryAnswer;
        atom.id = io_detail::need_string(j, "query", path);
    } else {
        throw ParseError(path + ": expected an operator ('op') or an atom ('node'/'query')");
    }
    atom.eq = io_detail::need_int(j, "eq", path);
    return BoolExpr::make_atom(std::move(atom));
}

inline AcceptanceRule rule_from_json(const Json& j, const std::string& source) {
    io_detail::check_keys(j, source, {"kind", "node", "accept", "expr", "polarity"});
    AcceptanceRule r;
    std::string kind = io_detail::need_string(j, "kind", source);
    if (kind == "bit") {
        r.kind = AcceptanceRule::Kind::Bit;
        r.bit_node = io_detail::need_string(j, "node", source);
    } else if (kind == "subset") {
        r.kind = AcceptanceRule::Kind::Subset;
        const Json& acc = io_detail::need_array(j, "accept", source);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            std::string path = source + ".accept[" + std::to_string(i) + "]";
            if (!acc[i].is_array()) {
                throw ParseError(path + ": expected outcome index array");
            }
            OutcomeString z;
            for (std::size_t k = 0; k < acc[i].size(); ++k) {
                if (!acc[i][k].is_number_integer()) {
                    throw ParseError(path + "[" + std::to_string(k) + "]: expected integer");
                }
                z.push_back(acc[i][k].get<int>());
            }
            r.subset.push_back(std::move(z));
        }
    } else if (kind == "expr") {
        r.kind = AcceptanceRule::Kind::Expr;
        r.expr = expr_from_json(io_detail::need(j, "expr", source), source + ".expr");
    } else {
        throw ParseError(source + ".kind: expected bit|subset|expr, got '" + kind + "'");
    }
    if (j.contains("polarity")) {
        std::string pol = io_detail::need_string(j, "polarity", source);
        if (pol == "satisfied-accepts") {
            r.accept_when_satisfied = true;
        } else if (pol == "satisfied-rejects") {
            r.accept_when_satisfied = false;
        } else {
            throw ParseError(source + ".polarity: expected satisfied-accepts|satisfied-rejects");
        }
    }
    return r;
}

inline AcceptanceRule load_rule_file(const std::string& path) {
    return rule_from_json(load_json_file(path), path);
}

// ---------------------------------------------------------------------------
// Oracles: {"table":{"0":0,"1":1}} | {"named":"parity"}
//        | {"named":"member","set":["01","10"]}
// ---------------------------------------------------------------------------

inline ClassicalOracle oracle_from_json(const Json& j, const std::string& source) {
    io_detail::check_keys(j, source, {"table", "named", "set"});
    if (j.contains("table")) {
        const Json& tbl = j.at("table");
        if (!tbl.is_object()) {
            throw ParseError(source + ".table: expected object");
        }
        std::map<std::string, int> table;
        for (auto it = tbl.begin(); it != tbl.end(); ++it) {
            if (!it.value().is_number_integer()) {
                throw ParseError(source + ".table['" + it.key() + "']: expected 0 or 1");
            }
            int v = it.value().get<int>();
            if (v != 0 && v != 1) {
                throw ParseError(source + ".table['" + it.key() + "']: expected 0 or 1");
            }
            table[it.key()] = v;
        }
        return ClassicalOracle::from_table(std::move(table));
    }
    std::string name = io_detail::need_string(j, "named", source);
    if (name == "parity") {
        return ClassicalOracle::parity();
    }
    if (name == "member") {
        std::set<std::string> s;
        for (const auto& v : io_detail::need_array(j, "set", source)) {
            if (!v.is_string()) {
                throw ParseError(source + ".set: expected strings");
            }
            s.insert(v.get<std::string>());
        }
        return ClassicalOracle::member(std::move(s));
    }
    throw ParseError(source + ".named: expected parity|member, got '" + name + "'");
}

inline ClassicalOracle load_oracle_file(const std::string& path) {
    return oracle_from_json(load_json_file(path), path);
}

// ---------------------------------------------------------------------------
// Adaptive programs:
// { "theory": "...",
//   "steps": [ {"gate":{"id","gate","wires":[...]}},
//              {"query":{"id","fn":{"kind":"select"|"parity","nodes":[...]}}},
//              {"branch":{"on":{"query":"q"}|{"node":"n"},
//                         "cases":{"0":3,...},"otherwise":5}} ],
//   "accept": <rule> }
// ---------------------------------------------------------------------------

inline AdaptiveProgram program_from_json(const Json& j, const std::string& source) {
    io_detail::check_keys(j, source, {"theory", "steps", "accept"});
    AdaptiveProgram p;
    p.theory_ref = io_detail::need_string(j, "theory", source);
    const Json& steps = io_detail::need_array(j, "steps", source);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string path = source + ".steps[" + std::to_string(i) + "]";
        const Json& s = steps[i];
        if (!s.is_object() || s.size() != 1) {
            throw ParseError(path + ": expected exactly one of gate|query|branch");
        }
        if (s.contains("gate")) {
            const Json& g = s.at("gate");
            io_detail::check_keys(g, path + ".gate", {"id", "gate", "wires"});
            GateStep gs;
            gs.id = io_detail::need_string(g, "id", path + ".gate");
            gs.gate = io_detail::need_string(g, "gate", path + ".gate");
            if (g.contains("wires")) {
                for (const auto& w : io_detail::need_array(g, "wires", path + ".gate")) {
                    if (!w.is_number_integer()) {
                        throw ParseError(path + ".gate.wires: expected integers");
                    }
                    gs.wires.push_back(w.get<int>());
                }
            }
            p.steps.emplace_back(std::move(gs));
        } else if (s.contains("query")) {
            const Json& q = s.at("query");
            io_detail::check_keys(q, path + ".query", {"id", "fn"});
            QueryStep qs;
            qs.id = io_detail::need_string(q, "id", path + ".query");
            const Json& fn = io_detail::need(q, "fn", path + ".query");
            io_detail::check_keys(fn, path + ".query.fn", {"kind", "nodes"});
            std::string kind = io_detail::need_string(fn, "kind", path + ".query.fn");
            if (kind == "select") {
                qs.fn.kind = OutcomeFn::Kind::Select;
            } else if (kind == "parity") {
                qs.fn.kind = OutcomeFn::Kind::Parity;
            } else {
                throw ParseError(path + ".query.fn.kind: expected select|parity");
            }
            qs.fn.nodes = io_detail::string_list(
                io_detail::need_array(fn, "nodes", path + ".query.fn"), path + ".query.fn.nodes");
            p.steps.emplace_back(std::move(qs));
        } else if (s.contains("branch")) {
            const Json& b = s.at("branch");
            io_detail::check_keys(b, path + ".branch", {"on", "cases", "otherwise"});
            BranchStep bs;
            const Json& on = io_detail::need(b, "on", path + ".branch");
            if (on.is_object() && on.contains("query")) {
                bs.on_query = true;
                bs.ref = io_detail::need_string(on, "query", path + ".branch.on");
            } else if (on.is_object() && on.contains("node")) {
                bs.on_query = false;
                bs.ref = io_detail::need_string(on, "node", path + ".branch.on");
            } else {
                throw ParseError(path + ".branch.on: expected {\"query\":id} or {\"node\":id}");
            }
            const Json& cases = io_detail::need(b, "cases", path + ".branch");
            if (!cases.is_object()) {
                throw ParseError(path + ".branch.cases: expected object");
            }
            for (auto it = cases.begin(); it != cases.end(); ++it) {
                int key = 0;
                try {
                    key = std::stoi(it.key());
                } catch (...) {
                    throw ParseError(path + ".branch.cases: keys must be integers");
                }
                if (!it.value().is_number_integer()) {
                    throw ParseError(path + ".branch.cases: targets must be step indices");
                }
                bs.cases[key] = it.value().get<int>();
            }
            if (b.contains("otherwise")) {
                if (!b.at("otherwise").is_number_integer()) {
                    throw ParseError(path + ".branch.otherwise: expected step index");
                }
                bs.otherwise = b.at("otherwise").get<int>();
            }
            p.steps.emplace_back(std::move(bs));
        } else {
            throw ParseError(path + ": expected exactly one of gate|query|branch");
        }
    }
    p.accept = rule_from_json(io_detail::need(j, "accept", source), source + ".accept");
    return p;
}

struct LoadedProgram {
    AdaptiveProgram program;
    Theory theory;
};

inline LoadedProgram load_program_file(const std::string& path) {
    Json j = load_json_file(path);
    LoadedProgram out;
    out.program = program_from_json(j, path);
    out.theory = resolve_theory(out.program.theory_ref,
                                std::filesystem::path(path).parent_path().string());
    return out;
}

}  // namespace gptsim

#endif
