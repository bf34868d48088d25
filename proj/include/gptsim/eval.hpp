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

#ifndef GPTSIM_EVAL_HPP
#define GPTSIM_EVAL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gptsim/circuit.hpp"
#include "gptsim/dyadic.hpp"
#include "gptsim/errors.hpp"
#include "gptsim/matrix.hpp"
#include "gptsim/theory.hpp"

namespace gptsim {

/// Default cap on the number of paths the path-sum engines may enumerate.
inline constexpr std::int64_t kMaxPaths = std::int64_t{1} << 26;

enum class Engine { Dense, PathSum, Exact };

inline Engine engine_from_string(const std::string& s) {
    if (s == "dense") {
        return Engine::Dense;
    }
    if (s == "pathsum") {
        return Engine::PathSum;
    }
    if (s == "exact") {
        return Engine::Exact;
    }
    throw ParseError("unknown engine '" + s + "' (expected dense|pathsum|exact)");
}

// ---------------------------------------------------------------------------
// Dense engine: right-to-left product of foliation layer matrices.
// ---------------------------------------------------------------------------

inline double eval_dense(const Foliation& f, const Circuit& c, const Theory& t,
                         const OutcomeString& z) {
    if (z.size() != c.nodes.size()) {
        throw ShapeError("outcome string length " + std::to_string(z.size()) +
                         " does not match node count " + std::to_string(c.nodes.size()));
    }
    std::vector<double> v{1.0};
    for (std::size_t k = 0; k < f.layers.size(); ++k) {
        v = matvec(layer_matrix(f, c, t, static_cast<int>(k), z), v);
    }
    if (v.size() != 1) {
        throw ShapeError("circuit is not closed: final boundary has dimension " +
                         std::to_string(v.size()));
    }
    return v[0];
}

inline double eval_dense(const Circuit& c, const Theory& t, const OutcomeString& z,
                         FoliationMode mode = FoliationMode::Asap) {
    return eval_dense(foliate(c, t, mode), c, t, z);
}

/// Full outcome distribution in lexicographic outcome order.
inline std::vector<std::pair<OutcomeString, double>> distribution(
    const Circuit& c, const Theory& t, std::int64_t enum_cap = kMaxEnumeration) {
    Foliation f = foliate(c, t);
    std::vector<std::pair<OutcomeString, double>> out;
    for (const auto& z : OutcomeRange(c, t, enum_cap)) {
        out.emplace_back(z, eval_dense(f, c, t, z));
    }
    return out;
}

inline double total_probability(const Circuit& c, const Theory& t,
                                std::int64_t enum_cap = kMaxEnumeration) {
    double s = 0.0;
    for (const auto& [z, p] : distribution(c, t, enum_cap)) {
        s += p;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Path-sum engine: embed the layer matrices as square blocks and accumulate
// one index path at a time. Memory is O(layers); the running total is summed
// in a fixed lexicographic path order so results are reproducible.
// ---------------------------------------------------------------------------

struct EmbeddedChain {
    int dim = 1;  // D_global: max boundary dimension
    std::vector<RealMatrix> matrices;
};

inline EmbeddedChain embed_chain(const Foliation& f, const Circuit& c, const Theory& t,
                                 const OutcomeString& z) {
    std::int64_t d = 1;
    for (std::int64_t b : f.boundary_dims) {
        d = std::max(d, b);
    }
    EmbeddedChain chain;
    chain.dim = static_cast<int>(d);
    for (std::size_t k = 0; k < f.layers.size(); ++k) {
        RealMatrix m = layer_matrix(f, c, t, static_cast<int>(k), z);
        RealMatrix sq(chain.dim, chain.dim);
        for (int i = 0; i < m.rows; ++i) {
            for (int j = 0; j < m.cols; ++j) {
                sq.at(i, j) = m.at(i, j);
            }
        }
        chain.matrices.push_back(std::move(sq));
    }
    return chain;
}

namespace detail {

inline void check_path_cap(int dim, std::size_t layers, std::int64_t cap) {
    std::int64_t paths = 1;
    for (std::size_t i = 1; i < layers; ++i) {
        paths *= dim;
        if (paths > cap) {
            throw CapError("path count " + std::to_string(dim) + "^" + std::to_string(layers - 1) +
                           " exceeds cap " + std::to_string(cap) + "; use the dense engine");
        }
    }
}

template <typename Scalar, typename Entry>
Scalar path_sum(int dim, std::size_t layers, const Entry& entry) {
    Scalar total = 0;
    std::function<void(std::size_t, int, Scalar)> walk = [&](std::size_t level, int col,
                                                             Scalar partial) {
        if (level + 1 == layers) {
            total += entry(level, 0, col) * partial;
            return;
        }
        for (int i = 0; i < dim; ++i) {
            Scalar next = entry(level, i, col) * partial;
            if (next == 0) {
                continue;  // every extension of a zero partial contributes zero
            }
            walk(level + 1, i, next);
        }
    };
    walk(0, 0, Scalar(1));
    return total;
}

}  // namespace detail

inline double eval_pathsum(const Circuit& c, const Theory& t, const OutcomeString& z,
                           std::int64_t path_cap = kMaxPaths) {
    EmbeddedChain chain = embed_chain(foliate(c, t), c, t, z);
    detail::check_path_cap(chain.dim, chain.matrices.size(), path_cap);
    return detail::path_sum<double>(
        chain.dim, chain.matrices.size(),
        [&](std::size_t level, int row, int col) { return chain.matrices[level].at(row, col); });
}

// ---------------------------------------------------------------------------
// Exact engine: round every gate to dyadic entries c/2^d, serialise the
// foliation to one gate per layer, and run the path sum in arbitrary
// precision integers. The result is f / 2^p with p = d * (gate count).
// ---------------------------------------------------------------------------

struct ExactAmplitude {
    BigInt f = 0;
    long p = 0;  // value = f / 2^p
};

inline double to_double(const ExactAmplitude& a) {
    return dyadic_to_double(a.f, a.p);
}

namespace detail {

inline DyadicMatrix binary_to_dyadic(const RealMatrix& m) {
    DyadicMatrix out(m.rows, m.cols, 0);
    for (std::size_t i = 0; i < m.data.size(); ++i) {
        out.numerators[i] = static_cast<long long>(m.data[i]);
    }
    return out;
}

inline DyadicMatrix layer_matrix_dyadic(const Foliation& f, const Circuit& c, const Theory& t,
                                        int layer, const OutcomeString& z, int d) {
    const auto& plan = f.plans[static_cast<std::size_t>(layer)];
    DyadicMatrix core;
    bool first = true;
    for (int ni : f.layers[static_cast<std::size_t>(layer)]) {
        const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
        DyadicMatrix m = round_to_dyadic(g->outcomes[static_cast<std::size_t>(z[static_cast<std::size_t>(ni)])], d);
        core = first ? std::move(m) : dyadic_kron(core, m);
        first = false;
    }
    if (!plan.pass_wires.empty()) {
        std::int64_t pass_dim = 1;
        for (int dd : wire_dims(c, t, plan.pass_wires)) {
            pass_dim *= dd;
        }
        DyadicMatrix id = DyadicMatrix::identity(static_cast<int>(pass_dim));
        core = first ? std::move(id) : dyadic_kron(core, id);
        first = false;
    }
    if (!is_identity_permutation(plan.in_perm)) {
        auto dims = wire_dims(c, t, f.boundary_wires[static_cast<std::size_t>(layer)]);
        core = dyadic_matmul(core, binary_to_dyadic(tensor_permutation_matrix(dims, plan.in_perm)));
    }
    if (!is_identity_permutation(plan.out_perm)) {
        std::vector<int> arr;
        for (int ni : f.layers[static_cast<std::size_t>(layer)]) {
            const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
            for (const auto& ty : g->output_types) {
                arr.push_back(t.dim_of(ty));
            }
        }
        for (int dd : wire_dims(c, t, plan.pass_wires)) {
            arr.push_back(dd);
        }
        core = dyadic_matmul(binary_to_dyadic(tensor_permutation_matrix(arr, plan.out_perm)), core);
    }
    return core;
}

}  // namespace detail

struct DyadicChain {
    int dim = 1;
    long total_exponent = 0;
    std::vector<DyadicMatrix> matrices;
};

inline DyadicChain embed_chain_dyadic(const Foliation& f, const Circuit& c, const Theory& t,
                                      const OutcomeString& z, int d) {
    std::int64_t dim = 1;
    for (std::int64_t b : f.boundary_dims) {
        dim = std::max(dim, b);
    }
    DyadicChain chain;
    chain.dim = static_cast<int>(dim);
    for (std::size_t k = 0; k < f.layers.size(); ++k) {
        DyadicMatrix m = detail::layer_matrix_dyadic(f, c, t, static_cast<int>(k), z, d);
        DyadicMatrix sq(chain.dim, chain.dim, m.exponent);
        for (int i = 0; i < m.rows; ++i) {
            for (int j = 0; j < m.cols; ++j) {
                sq.at(i, j) = m.at(i, j);
            }
        }
        chain.total_exponent += m.exponent;
        chain.matrices.push_back(std::move(sq));
    }
    return chain;
}

inline ExactAmplitude eval_exact(const Circuit& c, const Theory& t, const OutcomeString& z, int d,
                                 std::int64_t path_cap = kMaxPaths) {
    if (z.size() != c.nodes.size()) {
        throw ShapeError("outcome string length does not match node count");
    }
    // serialised foliation: one gate per layer, so p = d * gate count
    Foliation f = foliate(c, t, FoliationMode::Serial);
    DyadicChain chain = embed_chain_dyadic(f, c, t, z, d);
    detail::check_path_cap(chain.dim, chain.matrices.size(), path_cap);
    ExactAmplitude out;
    out.p = chain.total_exponent;
    out.f = detail::path_sum<BigInt>(
        chain.dim, chain.matrices.size(),
        [&](std::size_t level, int row, int col) -> const BigInt& {
            return chain.matrices[level].at(row, col);
        });
    return out;
}

// ---------------------------------------------------------------------------
// Acceptance rules over outcome strings.
//
// The rule carries its own polarity: it "accepts" an outcome string when the
// underlying predicate is satisfied (default), or when it is not
// (accept_when_satisfied = false).
// ---------------------------------------------------------------------------

struct RuleAtom {
    enum class Kind { NodeOutcome, QueryAnswer };
    Kind kind = Kind::NodeOutcome;
    std::string id;  // node id or query step id
    int eq = 0;      // satisfied when the referenced value equals eq
};

struct BoolExpr {
    enum class Op { Atom, And, Or, Not };
    Op op = Op::Atom;
    RuleAtom atom;
    std::vector<BoolExpr> args;

    static BoolExpr make_atom(RuleAtom a) {
        BoolExpr e;
        e.op = Op::Atom;
        e.atom = std::move(a);
        return e;
    }
};

struct AcceptanceRule {
    enum class Kind { Bit, Subset, Expr };
    Kind kind = Kind::Bit;
    bool accept_when_satisfied = true;

    std::string bit_node;  // Bit: satisfied iff that node's outcome index is 0
    std::vector<OutcomeString> subset;
    BoolExpr expr;

    static AcceptanceRule accept_all() {
        AcceptanceRule r;
        r.kind = Kind::Expr;
        r.expr.op = BoolExpr::Op::And;  // empty conjunction: always satisfied
        return r;
    }
    static AcceptanceRule accept_none() {
        AcceptanceRule r = accept_all();
        r.accept_when_satisfied = false;
        return r;
    }
    static AcceptanceRule bit(std::string node, bool accept_when_zero = true) {
        AcceptanceRule r;
        r.kind = Kind::Bit;
        r.bit_node = std::move(node);
        r.accept_when_satisfied = accept_when_zero;
        return r;
    }
};

namespace detail {

template <typename AtomEval>
bool eval_expr(const BoolExpr& e, const AtomEval& atom_value) {
    switch (e.op) {
        case BoolExpr::Op::Atom:
            return atom_value(e.atom);
        case BoolExpr::Op::And:
            for (const auto& a : e.args) {
                if (!eval_expr(a, atom_value)) {
                    return false;
                }
            }
            return true;
        case BoolExpr::Op::Or:
            for (const auto& a : e.args) {
                if (eval_expr(a, atom_value)) {
                    return true;
                }
            }
            return false;
        case BoolExpr::Op::Not:
            if (e.args.size() != 1) {
                throw ParseError("'not' takes exactly one argument");
            }
            return !eval_expr(e.args[0], atom_value);
    }
    throw ParseError("corrupt boolean expression");
}

}  // namespace detail

inline bool rule_satisfied(const AcceptanceRule& r, const Circuit& c, const OutcomeString& z) {
    switch (r.kind) {
        case AcceptanceRule::Kind::Bit: {
            int idx = c.node_index(r.bit_node);
            if (idx < 0) {
                throw ParseError("rule references unknown node '" + r.bit_node + "'");
            }
            return z[static_cast<std::size_t>(idx)] == 0;
        }
        case AcceptanceRule::Kind::Subset:
            for (const auto& s : r.subset) {
                if (s == z) {
                    return true;
                }
            }
            return false;
        case AcceptanceRule::Kind::Expr:
            return detail::eval_expr(r.expr, [&](const RuleAtom& a) {
                if (a.kind != RuleAtom::Kind::NodeOutcome) {
                    throw ParseError("query atoms are only valid in adaptive programs");
                }
                int idx = c.node_index(a.id);
                if (idx < 0) {
                    throw ParseError("rule references unknown node '" + a.id + "'");
                }
                return z[static_cast<std::size_t>(idx)] == a.eq;
            });
    }
    throw ParseError("corrupt acceptance rule");
}

inline bool rule_accepts(const AcceptanceRule& r, const Circuit& c, const OutcomeString& z) {
    return rule_satisfied(r, c, z) == r.accept_when_satisfied;
}

// ---------------------------------------------------------------------------
// Acceptance probability, post-selection, BGP verdicts
// ---------------------------------------------------------------------------

inline double engine_value(Engine engine, const Foliation& dense_foliation, const Circuit& c,
                           const Theory& t, const OutcomeString& z, int exponent,
                           std::int64_t path_cap) {
    switch (engine) {
        case Engine::Dense:
            return eval_dense(dense_foliation, c, t, z);
        case Engine::PathSum:
            return eval_pathsum(c, t, z, path_cap);
        case Engine::Exact:
            return to_double(eval_exact(c, t, z, exponent, path_cap));
    }
    throw ParseError("corrupt engine value");
}

inline double accept_probability(const Circuit& c, const Theory& t, const AcceptanceRule& rule,
                                 Engine engine = Engine::Dense, int exponent = 32,
                                 std::int64_t enum_cap = kMaxEnumeration,
                                 std::int64_t path_cap = kMaxPaths) {
    Foliation f = foliate(c, t);
    double total = 0.0;
    for (const auto& z : OutcomeRange(c, t, enum_cap)) {
        if (rule_accepts(rule, c, z)) {
            total += engine_value(engine, f, c, t, z, exponent, path_cap);
        }
    }
    return total;
}

/// Exact acceptance amplitude: sum of exact amplitudes over accepted outcome
/// strings. All summands share the exponent p = d * gate count, so the sum
/// is a plain integer sum.
inline ExactAmplitude accept_amplitude_exact(const Circuit& c, const Theory& t,
                                             const AcceptanceRule& rule, int exponent,
                                             std::int64_t enum_cap = kMaxEnumeration,
                                             std::int64_t path_cap = kMaxPaths) {
    ExactAmplitude total;
    total.p = static_cast<long>(exponent) * static_cast<long>(c.nodes.size());
    for (const auto& z : OutcomeRange(c, t, enum_cap)) {
        if (rule_accepts(rule, c, z)) {
            ExactAmplitude a = eval_exact(c, t, z, exponent, path_cap);
            total.f += a.f;
        }
    }
    return total;
}

struct PostSelection {
    AcceptanceRule selector;
    double threshold = 0.0;  // required lower bound on P(S), must be > 0
};

/// Is f/2^p < x, exactly? (x must be a finite non-negative double.)
inline bool dyadic_less_than(const ExactAmplitude& a, double x) {
    if (a.f <= 0) {
        return x > to_double(ExactAmplitude{a.f, a.p});  // f <= 0: compare in floats (exact for 0)
    }
    int e2 = 0;
    double m = std::frexp(x, &e2);                     // x = m * 2^e2, m in [0.5, 1)
    long long mant = std::llround(std::ldexp(m, 53));  // exact for doubles
    long shift = static_cast<long>(e2) - 53 + a.p;     // compare f < mant * 2^shift
    BigInt lhs = a.f;
    BigInt rhs = mant;
    if (shift >= 0) {
        rhs <<= shift;
    } else {
        lhs <<= -shift;
    }
    return lhs < rhs;
}

inline double postselect(const Circuit& c, const Theory& t, const AcceptanceRule& accept,
                         const PostSelection& sel, Engine engine = Engine::Dense,
                         int exponent = 32, std::int64_t enum_cap = kMaxEnumeration,
                         std::int64_t path_cap = kMaxPaths) {
    if (sel.threshold <= 0.0) {
        throw PostselectError("post-selection threshold must be positive");
    }
    Foliation f = foliate(c, t);
    double p_sel = 0.0;
    double p_joint = 0.0;
    for (const auto& z : OutcomeRange(c, t, enum_cap)) {
        if (!rule_accepts(sel.selector, c, z)) {
            continue;
        }
        double p = engine_value(engine, f, c, t, z, exponent, path_cap);
        p_sel += p;
        if (rule_accepts(accept, c, z)) {
            p_joint += p;
        }
    }
    if (p_sel == 0.0) {
        throw PostselectError("conditioning event has probability zero");
    }
    if (p_sel < sel.threshold) {
        throw PostselectError("post-selection below threshold: P(S) = " + std::to_string(p_sel) +
                              " < " + std::to_string(sel.threshold));
    }
    return p_joint / p_sel;
}

/// Exact conditional as a ratio of integers l/h, reported before division.
struct ExactRatio {
    BigInt l;  // f_joint * 2^{p_sel}
    BigInt h;  // f_sel   * 2^{p_joint}
    ExactAmplitude joint;
    ExactAmplitude sel;

    double value() const {
        return to_double(joint) / to_double(sel);
    }
};

inline ExactRatio postselect_exact(const Circuit& c, const Theory& t,
                                   const AcceptanceRule& accept, const PostSelection& sel,
                                   int exponent, std::int64_t enum_cap = kMaxEnumeration,
                                   std::int64_t path_cap = kMaxPaths) {
    if (sel.threshold <= 0.0) {
        throw PostselectError("post-selection threshold must be positive");
    }
    ExactRatio out;
    out.joint.p = out.sel.p = static_cast<long>(exponent) * static_cast<long>(c.nodes.size());
    for (const auto& z : OutcomeRange(c, t, enum_cap)) {
        if (!rule_accepts(sel.selector, c, z)) {
            continue;
        }
        ExactAmplitude a = eval_exact(c, t, z, exponent, path_cap);
        out.sel.f += a.f;
        if (rule_accepts(accept, c, z)) {
            out.joint.f += a.f;
        }
    }
    if (out.sel.f == 0) {
        throw PostselectError("conditioning event has amplitude exactly zero");
    }
    if (dyadic_less_than(out.sel, sel.threshold)) {
        throw PostselectError("post-selection below threshold: P(S) = " +
                              std::to_string(to_double(out.sel)) + " < " +
                              std::to_string(sel.threshold));
    }
    out.l = out.joint.f << out.sel.p;
    out.h = out.sel.f << out.joint.p;
    return out;
}

enum class BgpVerdict { InLanguage, OutOfLanguage, Undecided };

struct BgpThresholds {
    double accept = 2.0 / 3.0;
    double reject = 1.0 / 3.0;
};

inline BgpVerdict bgp_verdict(double p_accept, BgpThresholds thr = {}) {
    if (p_accept >= thr.accept) {
        return BgpVerdict::InLanguage;
    }
    if (p_accept <= thr.reject) {
        return BgpVerdict::OutOfLanguage;
    }
    return BgpVerdict::Undecided;
}

inline std::vector<BgpVerdict> decide_bgp(
    const std::vector<std::pair<const Circuit*, const AcceptanceRule*>>& family, const Theory& t,
    BgpThresholds thr = {}, Engine engine = Engine::Dense) {
    std::vector<BgpVerdict> out;
    out.reserve(family.size());
    for (const auto& [c, rule] : family) {
        out.push_back(bgp_verdict(accept_probability(*c, t, *rule, engine), thr));
    }
    return out;
}

}  // namespace gptsim

#endif
