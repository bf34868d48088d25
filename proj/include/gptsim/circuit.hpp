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

#ifndef GPTSIM_CIRCUIT_HPP
#define GPTSIM_CIRCUIT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gptsim/errors.hpp"
#include "gptsim/matrix.hpp"
#include "gptsim/theory.hpp"

namespace gptsim {

/// Default cap on the number of outcome strings a command may enumerate.
inline constexpr std::int64_t kMaxEnumeration = std::int64_t{1} << 24;

struct Node {
    std::string id;
    std::string gate;
};

struct PortRef {
    std::string node;
    int port = 0;
};

struct Wire {
    PortRef from;  // (node, output port)
    PortRef to;    // (node, input port)
};

/// A closed circuit: a typed acyclic wiring of gate instances with every
/// port connected exactly once.
struct Circuit {
    std::string theory_ref;
    std::string name;
    std::vector<Node> nodes;
    std::vector<Wire> wires;

    int node_index(const std::string& id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].id == id) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }
};

/// One classical outcome index per node, in node order.
using OutcomeString = std::vector<int>;

inline std::vector<Diagnostic> validate_circuit(const Circuit& c, const Theory& t) {
    std::vector<Diagnostic> out;
    if (c.nodes.empty()) {
        out.push_back({"nodes", "a closed circuit needs at least one gate"});
        return out;
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const auto& n = c.nodes[i];
        std::string where = "nodes[" + std::to_string(i) + "] ('" + n.id + "')";
        if (index.count(n.id)) {
            out.push_back({where, "duplicate node id"});
        }
        index[n.id] = static_cast<int>(i);
        if (t.find_gate(n.gate) == nullptr) {
            out.push_back({where, "unknown gate '" + n.gate + "'"});
        }
    }
    if (!out.empty()) {
        return out;  // wiring checks need resolvable nodes/gates
    }
    auto gate_of = [&](int ni) { return t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate); };
    // per-port connection counts
    std::vector<std::vector<int>> in_count(c.nodes.size()), out_count(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Gate* g = gate_of(static_cast<int>(i));
        in_count[i].assign(g->input_types.size(), 0);
        out_count[i].assign(g->output_types.size(), 0);
    }
    for (std::size_t w = 0; w < c.wires.size(); ++w) {
        const auto& wire = c.wires[w];
        std::string where = "wires[" + std::to_string(w) + "]";
        auto fi = index.find(wire.from.node);
        auto ti = index.find(wire.to.node);
        if (fi == index.end() || ti == index.end()) {
            out.push_back({where, "wire references unknown node"});
            continue;
        }
        const Gate* fg = gate_of(fi->second);
        const Gate* tg = gate_of(ti->second);
        if (wire.from.port < 0 || wire.from.port >= static_cast<int>(fg->output_types.size())) {
            out.push_back({where, "output port " + std::to_string(wire.from.port) +
                                      " out of range for gate '" + fg->name + "'"});
            continue;
        }
        if (wire.to.port < 0 || wire.to.port >= static_cast<int>(tg->input_types.size())) {
            out.push_back({where, "input port " + std::to_string(wire.to.port) +
                                      " out of range for gate '" + tg->name + "'"});
            continue;
        }
        const std::string& ft = fg->output_types[static_cast<std::size_t>(wire.from.port)];
        const std::string& tt = tg->input_types[static_cast<std::size_t>(wire.to.port)];
        if (ft != tt) {
            out.push_back({where, "type mismatch: '" + ft + "' wired into '" + tt + "'"});
        }
        out_count[static_cast<std::size_t>(fi->second)][static_cast<std::size_t>(wire.from.port)]++;
        in_count[static_cast<std::size_t>(ti->second)][static_cast<std::size_t>(wire.to.port)]++;
    }
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        for (std::size_t p = 0; p < in_count[i].size(); ++p) {
            if (in_count[i][p] == 0) {
                out.push_back({"nodes[" + std::to_string(i) + "]",
                               "unconnected port: input " + std::to_string(p)});
            } else if (in_count[i][p] > 1) {
                out.push_back({"nodes[" + std::to_string(i) + "]",
                               "input " + std::to_string(p) + " connected more than once"});
            }
        }
        for (std::size_t p = 0; p < out_count[i].size(); ++p) {
            if (out_count[i][p] == 0) {
                out.push_back({"nodes[" + std::to_string(i) + "]",
                               "unconnected port: output " + std::to_string(p)});
            } else if (out_count[i][p] > 1) {
                out.push_back({"nodes[" + std::to_string(i) + "]",
                               "output " + std::to_string(p) + " connected more than once"});
            }
        }
    }
    // acyclicity (Kahn)
    {
        std::vector<std::set<int>> preds(c.nodes.size());
        for (const auto& w : c.wires) {
            auto fi = index.find(w.from.node);
            auto ti = index.find(w.to.node);
            if (fi != index.end() && ti != index.end()) {
                preds[static_cast<std::size_t>(ti->second)].insert(fi->second);
            }
        }
        std::vector<int> deg(c.nodes.size(), 0);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            deg[i] = static_cast<int>(preds[i].size());
        }
        std::vector<int> queue;
        for (std::size_t i = 0; i < deg.size(); ++i) {
            if (deg[i] == 0) {
                queue.push_back(static_cast<int>(i));
            }
        }
        std::size_t seen = 0;
        while (seen < queue.size()) {
            int n = queue[seen++];
            for (std::size_t i = 0; i < preds.size(); ++i) {
                if (preds[i].erase(n) && --deg[i] == 0) {
                    queue.push_back(static_cast<int>(i));
                }
            }
        }
        if (seen != c.nodes.size()) {
            out.push_back({"wires", "wiring contains a cycle"});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Foliation: slice the DAG into layers of parallel gates, with explicit
// wire-permutation operators at every layer boundary. Any valid foliation of
// a circuit yields the same probabilities; the default schedule is
// deterministic (longest-path depth, ties broken by instance id).
// ---------------------------------------------------------------------------

enum class FoliationMode {
    Asap,    ///< layer = longest path from any source (default)
    Alap,    ///< layer = latest slot allowed by successors
    Serial,  ///< one gate per layer, topological (depth, id) order
};

struct Foliation {
    /// Node indices per layer, sorted by instance id.
    std::vector<std::vector<int>> layers;
    /// Wire indices crossing each boundary (size layers+1), canonical order.
    std::vector<std::vector<int>> boundary_wires;
    /// Product of system dims crossing each boundary (1 when empty).
    std::vector<std::int64_t> boundary_dims;

    struct LayerPlan {
        /// arrangement_in[i] = boundary_wires[k][in_perm[i]]; the gathered
        /// order is [gate inputs in (node, port) order] + [passthrough].
        std::vector<int> in_perm;
        /// boundary_wires[k+1][j] = arrangement_out[out_perm[j]].
        std::vector<int> out_perm;
        std::vector<int> pass_wires;  // wires passing through, canonical order
    };
    std::vector<LayerPlan> plans;
};

namespace detail {

struct WireInfo {
    int producer_node = -1;
    int consumer_node = -1;
    int producer_layer = -1;
    int consumer_layer = -1;
    int dim = 1;
};

}  // namespace detail

inline Foliation foliate(const Circuit& c, const Theory& t,
                         FoliationMode mode = FoliationMode::Asap) {
    std::size_t n = c.nodes.size();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < n; ++i) {
        index[c.nodes[i].id] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> preds(n), succs(n);
    for (const auto& w : c.wires) {
        int f = index.at(w.from.node);
        int to = index.at(w.to.node);
        preds[static_cast<std::size_t>(to)].push_back(f);
        succs[static_cast<std::size_t>(f)].push_back(to);
    }
    // longest-path depths via Kahn order
    std::vector<int> deg(n, 0), topo;
    for (std::size_t i = 0; i < n; ++i) {
        std::set<int> uniq(preds[i].begin(), preds[i].end());
        deg[i] = static_cast<int>(uniq.size());
        if (deg[i] == 0) {
            topo.push_back(static_cast<int>(i));
        }
    }
    std::vector<std::set<int>> pred_sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        pred_sets[i] = std::set<int>(preds[i].begin(), preds[i].end());
    }
    for (std::size_t head = 0; head < topo.size(); ++head) {
        int v = topo[head];
        for (std::size_t i = 0; i < n; ++i) {
            if (pred_sets[i].erase(v) && --deg[i] == 0) {
                topo.push_back(static_cast<int>(i));
            }
        }
    }
    if (topo.size() != n) {
        throw Error("foliate: wiring contains a cycle");
    }
    std::vector<int> depth(n, 0);
    for (int v : topo) {
        for (int p : preds[static_cast<std::size_t>(v)]) {
            depth[static_cast<std::size_t>(v)] =
                std::max(depth[static_cast<std::size_t>(v)], depth[static_cast<std::size_t>(p)] + 1);
        }
    }
    int max_depth = 0;
    for (std::size_t i = 0; i < n; ++i) {
        max_depth = std::max(max_depth, depth[i]);
    }
    std::vector<int> layer_of(n, 0);
    int layer_count = 0;
    if (mode == FoliationMode::Serial) {
        std::vector<int> order(topo);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (depth[static_cast<std::size_t>(a)] != depth[static_cast<std::size_t>(b)]) {
                return depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)];
            }
            return c.nodes[static_cast<std::size_t>(a)].id < c.nodes[static_cast<std::size_t>(b)].id;
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            layer_of[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        }
        layer_count = static_cast<int>(n);
    } else if (mode == FoliationMode::Alap) {
        std::vector<int> height(n, 0);
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            for (int s : succs[static_cast<std::size_t>(*it)]) {
                height[static_cast<std::size_t>(*it)] = std::max(
                    height[static_cast<std::size_t>(*it)], height[static_cast<std::size_t>(s)] + 1);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            layer_of[i] = max_depth - height[i];
        }
        layer_count = max_depth + 1;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            layer_of[i] = depth[i];
        }
        layer_count = max_depth + 1;
    }

    Foliation f;
    f.layers.assign(static_cast<std::size_t>(layer_count), {});
    for (std::size_t i = 0; i < n; ++i) {
        f.layers[static_cast<std::size_t>(layer_of[i])].push_back(static_cast<int>(i));
    }
    for (auto& layer : f.layers) {
        std::sort(layer.begin(), layer.end(), [&](int a, int b) {
            return c.nodes[static_cast<std::size_t>(a)].id < c.nodes[static_cast<std::size_t>(b)].id;
        });
    }
    std::vector<int> pos_in_layer(n, 0);
    for (const auto& layer : f.layers) {
        for (std::size_t p = 0; p < layer.size(); ++p) {
            pos_in_layer[static_cast<std::size_t>(layer[p])] = static_cast<int>(p);
        }
    }

    std::vector<detail::WireInfo> winfo(c.wires.size());
    for (std::size_t w = 0; w < c.wires.size(); ++w) {
        const auto& wire = c.wires[w];
        int f_node = index.at(wire.from.node);
        int t_node = index.at(wire.to.node);
        const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(f_node)].gate);
        winfo[w].producer_node = f_node;
        winfo[w].consumer_node = t_node;
        winfo[w].producer_layer = layer_of[static_cast<std::size_t>(f_node)];
        winfo[w].consumer_layer = layer_of[static_cast<std::size_t>(t_node)];
        winfo[w].dim = t.dim_of(g->output_types[static_cast<std::size_t>(wire.from.port)]);
    }

    // canonical boundary orders: (producer layer, producer position, port)
    f.boundary_wires.assign(static_cast<std::size_t>(layer_count) + 1, {});
    f.boundary_dims.assign(static_cast<std::size_t>(layer_count) + 1, 1);
    for (int b = 0; b <= layer_count; ++b) {
        std::vector<int> alive;
        for (std::size_t w = 0; w < c.wires.size(); ++w) {
            if (winfo[w].producer_layer < b && winfo[w].consumer_layer >= b) {
                alive.push_back(static_cast<int>(w));
            }
        }
        std::sort(alive.begin(), alive.end(), [&](int a, int bb) {
            const auto& wa = winfo[static_cast<std::size_t>(a)];
            const auto& wb = winfo[static_cast<std::size_t>(bb)];
            if (wa.producer_layer != wb.producer_layer) {
                return wa.producer_layer < wb.producer_layer;
            }
            int pa = pos_in_layer[static_cast<std::size_t>(wa.producer_node)];
            int pb = pos_in_layer[static_cast<std::size_t>(wb.producer_node)];
            if (pa != pb) {
                return pa < pb;
            }
            return c.wires[static_cast<std::size_t>(a)].from.port <
                   c.wires[static_cast<std::size_t>(bb)].from.port;
        });
        std::int64_t dim = 1;
        for (int w : alive) {
            dim *= winfo[static_cast<std::size_t>(w)].dim;
        }
        f.boundary_wires[static_cast<std::size_t>(b)] = std::move(alive);
        f.boundary_dims[static_cast<std::size_t>(b)] = dim;
    }

    // wire lookup: node -> port -> wire index, both directions
    std::map<std::pair<int, int>, int> out_wire, in_wire;
    for (std::size_t w = 0; w < c.wires.size(); ++w) {
        out_wire[{winfo[w].producer_node, c.wires[w].from.port}] = static_cast<int>(w);
        in_wire[{winfo[w].consumer_node, c.wires[w].to.port}] = static_cast<int>(w);
    }

    f.plans.assign(static_cast<std::size_t>(layer_count), {});
    for (int k = 0; k < layer_count; ++k) {
        auto& plan = f.plans[static_cast<std::size_t>(k)];
        const auto& bnd = f.boundary_wires[static_cast<std::size_t>(k)];
        std::map<int, int> bnd_pos;
        for (std::size_t i = 0; i < bnd.size(); ++i) {
            bnd_pos[bnd[i]] = static_cast<int>(i);
        }
        std::set<int> consumed;
        std::vector<int> arrangement_in;
        for (int ni : f.layers[static_cast<std::size_t>(k)]) {
            const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
            for (std::size_t p = 0; p < g->input_types.size(); ++p) {
                int w = in_wire.at({ni, static_cast<int>(p)});
                arrangement_in.push_back(w);
                consumed.insert(w);
            }
        }
        for (int w : bnd) {
            if (!consumed.count(w)) {
                plan.pass_wires.push_back(w);
                arrangement_in.push_back(w);
            }
        }
        plan.in_perm.reserve(arrangement_in.size());
        for (int w : arrangement_in) {
            plan.in_perm.push_back(bnd_pos.at(w));
        }
        std::vector<int> arrangement_out;
        for (int ni : f.layers[static_cast<std::size_t>(k)]) {
            const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
            for (std::size_t p = 0; p < g->output_types.size(); ++p) {
                arrangement_out.push_back(out_wire.at({ni, static_cast<int>(p)}));
            }
        }
        for (int w : plan.pass_wires) {
            arrangement_out.push_back(w);
        }
        std::map<int, int> arr_pos;
        for (std::size_t i = 0; i < arrangement_out.size(); ++i) {
            arr_pos[arrangement_out[i]] = static_cast<int>(i);
        }
        const auto& next_bnd = f.boundary_wires[static_cast<std::size_t>(k) + 1];
        plan.out_perm.reserve(next_bnd.size());
        for (int w : next_bnd) {
            plan.out_perm.push_back(arr_pos.at(w));
        }
    }
    return f;
}

namespace detail {

inline std::vector<int> wire_dims(const Circuit& c, const Theory& t, const std::vector<int>& wires) {
    std::vector<int> dims;
    dims.reserve(wires.size());
    for (int w : wires) {
        const auto& wire = c.wires[static_cast<std::size_t>(w)];
        const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(c.node_index(wire.from.node))].gate);
        dims.push_back(t.dim_of(g->output_types[static_cast<std::size_t>(wire.from.port)]));
    }
    return dims;
}

}  // namespace detail

/// Matrix of one foliation layer for a fixed outcome string: boundary
/// permutation, kron of the layer's gate outcome matrices padded with an
/// identity on passthrough wires, then the outgoing boundary permutation.
inline RealMatrix layer_matrix(const Foliation& f, const Circuit& c, const Theory& t, int layer,
                               const OutcomeString& z, std::int64_t max_entries = kKronMaxEntries) {
    const auto& plan = f.plans[static_cast<std::size_t>(layer)];
    RealMatrix core{{1.0}};
    bool first = true;
    for (int ni : f.layers[static_cast<std::size_t>(layer)]) {
        const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
        int r = z[static_cast<std::size_t>(ni)];
        if (r < 0 || r >= static_cast<int>(g->outcomes.size())) {
            throw ShapeError("outcome index " + std::to_string(r) + " out of range for gate '" +
                             g->name + "'");
        }
        const RealMatrix& m = g->outcomes[static_cast<std::size_t>(r)];
        core = first ? m : kron(core, m, max_entries);
        first = false;
    }
    if (!plan.pass_wires.empty()) {
        std::int64_t pass_dim = 1;
        for (int d : detail::wire_dims(c, t, plan.pass_wires)) {
            pass_dim *= d;
        }
        core = kron(core, RealMatrix::identity(static_cast<int>(pass_dim)), max_entries);
    }
    // gather boundary wires into the layer's input arrangement
    if (!is_identity_permutation(plan.in_perm)) {
        auto dims = detail::wire_dims(c, t, f.boundary_wires[static_cast<std::size_t>(layer)]);
        core = matmul(core, tensor_permutation_matrix(dims, plan.in_perm, max_entries));
    }
    if (!is_identity_permutation(plan.out_perm)) {
        // arrangement_out dims: gate outputs then passthrough
        std::vector<int> arr;
        for (int ni : f.layers[static_cast<std::size_t>(layer)]) {
            const Gate* g = t.find_gate(c.nodes[static_cast<std::size_t>(ni)].gate);
            for (const auto& ty : g->output_types) {
                arr.push_back(t.dim_of(ty));
            }
        }
        for (int d : detail::wire_dims(c, t, plan.pass_wires)) {
            arr.push_back(d);
        }
        core = matmul(tensor_permutation_matrix(arr, plan.out_perm, max_entries), core);
    }
    return core;
}

// ---------------------------------------------------------------------------
// Outcome enumeration (lexicographic, first node most significant)
// ---------------------------------------------------------------------------

inline std::vector<int> outcome_counts(const Circuit& c, const Theory& t) {
    std::vector<int> counts;
    counts.reserve(c.nodes.size());
    for (const auto& n : c.nodes) {
        const Gate* g = t.find_gate(n.gate);
        if (g == nullptr) {
            throw ParseError("unknown gate '" + n.gate + "'");
        }
        if (g->outcomes.empty()) {
            throw ParseError("gate '" + n.gate + "' has no outcomes");
        }
        counts.push_back(static_cast<int>(g->outcomes.size()));
    }
    return counts;
}

inline std::int64_t count_outcomes(const Circuit& c, const Theory& t,
                                   std::int64_t cap = kMaxEnumeration) {
    std::int64_t total = 1;
    for (int k : outcome_counts(c, t)) {
        total *= k;
        if (total > cap) {
            throw CapError("outcome enumeration exceeds cap " + std::to_string(cap) +
                           "; raise GPTSIM_MAX_ENUM to override");
        }
    }
    return total;
}

class OutcomeRange {
  public:
    OutcomeRange(const Circuit& c, const Theory& t, std::int64_t cap = kMaxEnumeration)
        : counts_(outcome_counts(c, t)) {
        total_ = 1;
        for (int k : counts_) {
            total_ *= k;
            if (total_ > cap) {
                throw CapError("outcome enumeration exceeds cap " + std::to_string(cap) +
                               "; raise GPTSIM_MAX_ENUM to override");
            }
        }
    }

    class iterator {
      public:
        iterator(const std::vector<int>* counts, bool done)
            : counts_(counts), current_(counts->size(), 0), done_(done) {}
        const OutcomeString& operator*() const { return current_; }
        iterator& operator++() {
            for (std::size_t i = current_.size(); i-- > 0;) {
                if (++current_[i] < (*counts_)[i]) {
                    return *this;
                }
                current_[i] = 0;
            }
            done_ = true;
            return *this;
        }
        bool operator!=(const iterator& o) const { return done_ != o.done_; }

      private:
        const std::vector<int>* counts_;
        OutcomeString current_;
        bool done_;
    };

    iterator begin() const { return iterator(&counts_, false); }
    iterator end() const { return iterator(&counts_, true); }
    std::int64_t size() const { return total_; }

  private:
    std::vector<int> counts_;
    std::int64_t total_;
};

}  // namespace gptsim

#endif
