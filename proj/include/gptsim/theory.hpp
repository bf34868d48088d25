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

#ifndef GPTSIM_THEORY_HPP
#define GPTSIM_THEORY_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gptsim/errors.hpp"
#include "gptsim/matrix.hpp"

namespace gptsim {

/// A system type: one real vector space per wire label.
struct SystemType {
    std::string label;
    int dim = 0;
};

/// A gate (test): a finite set of outcome matrices over typed ports.
/// Empty inputs = preparation (columns), empty outputs = measurement (rows),
/// both empty = scalar gate. A single outcome marks a deterministic test.
struct Gate {
    std::string name;
    std::vector<std::string> input_types;
    std::vector<std::string> output_types;
    std::vector<RealMatrix> outcomes;
};

struct Theory {
    std::string name;
    std::vector<SystemType> types;
    std::vector<Gate> gates;
    /// Deterministic effect per type label; present only when the theory has
    /// been certified causal.
    std::optional<std::map<std::string, RealMatrix>> causal_certificate;

    const SystemType* find_type(const std::string& label) const {
        for (const auto& t : types) {
            if (t.label == label) {
                return &t;
            }
        }
        return nullptr;
    }

    const Gate* find_gate(const std::string& name_) const {
        for (const auto& g : gates) {
            if (g.name == name_) {
                return &g;
            }
        }
        return nullptr;
    }

    int dim_of(const std::string& label) const {
        const SystemType* t = find_type(label);
        if (t == nullptr) {
            throw ParseError("unknown system type '" + label + "'");
        }
        return t->dim;
    }

    std::int64_t product_dim(const std::vector<std::string>& labels) const {
        std::int64_t d = 1;
        for (const auto& l : labels) {
            d *= dim_of(l);
        }
        return d;
    }
};

struct Diagnostic {
    std::string where;
    std::string message;
};

inline std::vector<Diagnostic> validate_theory(const Theory& t) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < t.types.size(); ++i) {
        const auto& ty = t.types[i];
        if (ty.dim < 1) {
            out.push_back({"types[" + std::to_string(i) + "]", "dimension must be >= 1"});
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (t.types[j].label == ty.label) {
                out.push_back({"types[" + std::to_string(i) + "]", "duplicate label '" + ty.label + "'"});
            }
        }
    }
    for (std::size_t i = 0; i < t.gates.size(); ++i) {
        const auto& g = t.gates[i];
        std::string where = "gates[" + std::to_string(i) + "] ('" + g.name + "')";
        for (std::size_t j = 0; j < i; ++j) {
            if (t.gates[j].name == g.name) {
                out.push_back({where, "duplicate gate name"});
            }
        }
        bool types_ok = true;
        for (const auto& l : g.input_types) {
            if (t.find_type(l) == nullptr) {
                out.push_back({where, "unknown input type '" + l + "'"});
                types_ok = false;
            }
        }
        for (const auto& l : g.output_types) {
            if (t.find_type(l) == nullptr) {
                out.push_back({where, "unknown output type '" + l + "'"});
                types_ok = false;
            }
        }
        if (g.outcomes.empty()) {
            out.push_back({where, "gate must have at least one outcome"});
        }
        if (!types_ok) {
            continue;
        }
        int want_rows = static_cast<int>(t.product_dim(g.output_types));
        int want_cols = static_cast<int>(t.product_dim(g.input_types));
        for (std::size_t r = 0; r < g.outcomes.size(); ++r) {
            const auto& m = g.outcomes[r];
            if (m.rows != want_rows || m.cols != want_cols) {
                out.push_back({where + ".outcomes[" + std::to_string(r) + "]",
                               "expected shape " + std::to_string(want_rows) + "x" +
                                   std::to_string(want_cols) + ", got " + m.shape_str()});
            }
            if (!m.all_finite()) {
                out.push_back({where + ".outcomes[" + std::to_string(r) + "]", "non-finite entry"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Causality: a theory is causal iff each type has a unique deterministic
// effect u such that every complete measurement's outcomes sum to u and
// every gate's coarse-graining preserves it (u_out . sum_r M_r == u_in).
// ---------------------------------------------------------------------------

struct CausalityReport {
    bool is_causal = false;
    std::map<std::string, RealMatrix> per_type_effect;
    std::vector<std::pair<std::string, double>> violations;  // (gate, residual norm)
    std::vector<std::string> undetermined;  // types with no measurement gate
};

namespace detail {

inline RealMatrix sum_outcomes(const Gate& g) {
    RealMatrix s = g.outcomes[0];
    for (std::size_t r = 1; r < g.outcomes.size(); ++r) {
        for (std::size_t i = 0; i < s.data.size(); ++i) {
            s.data[i] += g.outcomes[r].data[i];
        }
    }
    return s;
}

inline double frobenius_diff(const RealMatrix& a, const RealMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace detail

inline CausalityReport check_causality(const Theory& t, double tol = 1e-9) {
    CausalityReport rep;
    // Candidate deterministic effect per type, from single-system measurements.
    for (const auto& ty : t.types) {
        bool found = false;
        for (const auto& g : t.gates) {
            if (!g.output_types.empty() || g.input_types.size() != 1 ||
                g.input_types[0] != ty.label) {
                continue;
            }
            RealMatrix s = detail::sum_outcomes(g);
            if (!found) {
                rep.per_type_effect.emplace(ty.label, s);
                found = true;
            }
        }
        if (!found) {
            rep.undetermined.push_back(ty.label);
        }
    }
    // Deterministic effect of a (possibly empty) port list.
    auto u_of = [&](const std::vector<std::string>& labels) -> std::optional<RealMatrix> {
        RealMatrix u{{1.0}};
        for (const auto& l : labels) {
            auto it = rep.per_type_effect.find(l);
            if (it == rep.per_type_effect.end()) {
                return std::nullopt;
            }
            u = kron(u, it->second);
        }
        return u;
    };
    for (const auto& g : t.gates) {
        auto u_in = u_of(g.input_types);
        auto u_out = u_of(g.output_types);
        if (!u_in || !u_out) {
            continue;  // involves an undetermined type, already reported
        }
        RealMatrix lhs = matmul(*u_out, detail::sum_outcomes(g));
        double resid = detail::frobenius_diff(lhs, *u_in);
        if (resid > tol) {
            rep.violations.emplace_back(g.name, resid);
        }
    }
    rep.is_causal = rep.violations.empty() && rep.undetermined.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Quantum machinery: transfer matrices over the orthonormal Hermitian basis.
// ---------------------------------------------------------------------------

using Complex = std::complex<double>;

/// Minimal complex matrix, used only to construct quantum transfer matrices.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    Complex& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    Complex at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 1.0;
        }
        return m;
    }
};

inline ComplexMatrix cmatmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) {
        throw ShapeError("complex matmul shape mismatch");
    }
    ComplexMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            Complex aik = a.at(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (int j = 0; j < b.cols; ++j) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix cdagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            out.at(j, i) = std::conj(a.at(i, j));
        }
    }
    return out;
}

inline ComplexMatrix ckron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (int i1 = 0; i1 < a.rows; ++i1) {
        for (int j1 = 0; j1 < a.cols; ++j1) {
            for (int i2 = 0; i2 < b.rows; ++i2) {
                for (int j2 = 0; j2 < b.cols; ++j2) {
                    out.at(i1 * b.rows + i2, j1 * b.cols + j2) = a.at(i1, j1) * b.at(i2, j2);
                }
            }
        }
    }
    return out;
}

inline Complex ctrace(const ComplexMatrix& a) {
    Complex s = 0.0;
    for (int i = 0; i < a.rows && i < a.cols; ++i) {
        s += a.at(i, i);
    }
    return s;
}

/// Orthonormal Hermitian basis of d x d matrices under Tr(AB).
///
/// For d = 2^k this is the Pauli-string basis {I,X,Y,Z}^{⊗k} / sqrt(d) with
/// the first qubit as the slowest index (element a has digits a = a_1 a_2 ...
/// base 4). For other d: identity/sqrt(d), then symmetric and antisymmetric
/// off-diagonal pairs in lexicographic (i<j) order, then diagonal traceless
/// elements.
inline std::vector<ComplexMatrix> hermitian_basis(int d) {
    if (d < 1) {
        throw ShapeError("hermitian basis needs d >= 1");
    }
    const Complex kI(0.0, 1.0);
    int log2d = 0;
    while ((1 << log2d) < d) {
        ++log2d;
    }
    std::vector<ComplexMatrix> basis;
    if ((1 << log2d) == d) {
        std::vector<ComplexMatrix> pauli(4, ComplexMatrix(2, 2));
        pauli[0].at(0, 0) = 1;
        pauli[0].at(1, 1) = 1;
        pauli[1].at(0, 1) = 1;
        pauli[1].at(1, 0) = 1;
        pauli[2].at(0, 1) = -kI;
        pauli[2].at(1, 0) = kI;
        pauli[3].at(0, 0) = 1;
        pauli[3].at(1, 1) = -1;
        int count = 1;
        for (int q = 0; q < log2d; ++q) {
            count *= 4;
        }
        double norm = 1.0 / std::sqrt(static_cast<double>(d));
        for (int a = 0; a < count; ++a) {
            ComplexMatrix m = ComplexMatrix::identity(1);
            int rem = a;
            std::vector<int> digits(static_cast<std::size_t>(log2d));
            for (int q = log2d; q-- > 0;) {
                digits[static_cast<std::size_t>(q)] = rem % 4;
                rem /= 4;
            }
            for (int q = 0; q < log2d; ++q) {
                m = ckron(m, pauli[static_cast<std::size_t>(digits[static_cast<std::size_t>(q)])]);
            }
            for (auto& v : m.data) {
                v *= norm;
            }
            basis.push_back(std::move(m));
        }
        return basis;
    }
    // generalised Gell-Mann style basis for non-power-of-two dims
    ComplexMatrix id = ComplexMatrix::identity(d);
    for (auto& v : id.data) {
        v /= std::sqrt(static_cast<double>(d));
    }
    basis.push_back(std::move(id));
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix s(d, d);
            s.at(i, j) = inv_sqrt2;
            s.at(j, i) = inv_sqrt2;
            basis.push_back(s);
            ComplexMatrix a(d, d);
            a.at(i, j) = -kI * inv_sqrt2;
            a.at(j, i) = kI * inv_sqrt2;
            basis.push_back(a);
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix m(d, d);
        double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int i = 0; i < l; ++i) {
            m.at(i, i) = norm;
        }
        m.at(l, l) = -static_cast<double>(l) * norm;
        basis.push_back(m);
    }
    return basis;
}

/// Coordinates of a state (density operator) in the Hermitian basis: a column
/// with entries Tr(B_a rho).
inline RealMatrix state_to_coords(const ComplexMatrix& rho) {
    auto basis = hermitian_basis(rho.rows);
    RealMatrix v(static_cast<int>(basis.size()), 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        v.data[a] = ctrace(cmatmul(basis[a], rho)).real();
    }
    return v;
}

/// Coordinates of an effect (POVM element): a row with entries Tr(B_a E).
inline RealMatrix effect_to_row(const ComplexMatrix& e) {
    auto basis = hermitian_basis(e.rows);
    RealMatrix v(1, static_cast<int>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a) {
        v.data[a] = ctrace(cmatmul(basis[a], e)).real();
    }
    return v;
}

/// Transfer matrix of the CP map rho -> sum_k K rho K† in the Hermitian
/// basis: T[a,b] = Tr(B_a sum_k K B_b K†).
///
/// Rejects Kraus sets whose completeness operator exceeds the identity by
/// more than 1e-9 (not trace non-increasing) and entries whose imaginary
/// residue exceeds 1e-9; residues below that are discarded.
inline RealMatrix cp_map_to_transfer(const std::vector<ComplexMatrix>& kraus_ops) {
    if (kraus_ops.empty()) {
        throw ShapeError("cp map needs at least one Kraus operator");
    }
    int d = kraus_ops[0].rows;
    for (const auto& k : kraus_ops) {
        if (k.rows != d || k.cols != d) {
            throw ShapeError("Kraus operators must be square and same-dimensional");
        }
    }
    // trace non-increasing: lambda_max(sum K†K) <= 1 + 1e-9, by power iteration
    ComplexMatrix comp(d, d);
    for (const auto& k : kraus_ops) {
        ComplexMatrix kk = cmatmul(cdagger(k), k);
        for (std::size_t i = 0; i < comp.data.size(); ++i) {
            comp.data[i] += kk.data[i];
        }
    }
    {
        std::vector<Complex> v(static_cast<std::size_t>(d), Complex(1.0, 0.0));
        double lambda = 0.0;
        for (int it = 0; it < 200; ++it) {
            std::vector<Complex> w(static_cast<std::size_t>(d), Complex(0.0, 0.0));
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    w[static_cast<std::size_t>(i)] += comp.at(i, j) * v[static_cast<std::size_t>(j)];
                }
            }
            double norm = 0.0;
            for (const auto& x : w) {
                norm += std::norm(x);
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                lambda = 0.0;
                break;
            }
            for (auto& x : w) {
                x /= norm;
            }
            v = std::move(w);
            lambda = norm;
        }
        if (lambda > 1.0 + 1e-9) {
            throw ParseError("Kraus set is not trace non-increasing (lambda_max = " +
                             std::to_string(lambda) + ")");
        }
    }
    auto basis = hermitian_basis(d);
    int n = static_cast<int>(basis.size());
    RealMatrix transfer(n, n);
    for (int b = 0; b < n; ++b) {
        ComplexMatrix image(d, d);
        for (const auto& k : kraus_ops) {
            ComplexMatrix term = cmatmul(cmatmul(k, basis[static_cast<std::size_t>(b)]), cdagger(k));
            for (std::size_t i = 0; i < image.data.size(); ++i) {
                image.data[i] += term.data[i];
            }
        }
        for (int a = 0; a < n; ++a) {
            Complex tr = ctrace(cmatmul(basis[static_cast<std::size_t>(a)], image));
            if (std::abs(tr.imag()) > 1e-9) {
                throw ParseError("cp map transfer entry has imaginary residue " +
                                 std::to_string(tr.imag()));
            }
            transfer.at(a, b) = tr.real();
        }
    }
    return transfer;
}

// ---------------------------------------------------------------------------
// Built-in theories
// ---------------------------------------------------------------------------

namespace detail {

inline void certify(Theory& t) {
    CausalityReport rep = check_causality(t);
    if (rep.is_causal) {
        t.causal_certificate = rep.per_type_effect;
    }
}

}  // namespace detail

/// Finite classical probability theory on n levels: point/uniform/coin
/// preparations, a generating set of stochastic maps and the delta-effect
/// measurement. Also carries a portless two-outcome fair coin.
inline Theory builtin_classical(int n_levels) {
    if (n_levels < 2) {
        throw ParseError("classical theory needs n_levels >= 2");
    }
    int n = n_levels;
    std::string ty = "c" + std::to_string(n);
    Theory t;
    t.name = "builtin:classical" + std::to_string(n);
    t.types.push_back({ty, n});

    auto point = [&](int k) {
        RealMatrix col(n, 1);
        col.at(k, 0) = 1.0;
        return col;
    };
    for (int k = 0; k < n; ++k) {
        t.gates.push_back({"point_" + std::to_string(k), {}, {ty}, {point(k)}});
    }
    {
        RealMatrix col(n, 1);
        for (int k = 0; k < n; ++k) {
            col.at(k, 0) = 1.0 / n;
        }
        t.gates.push_back({"uniform", {}, {ty}, {col}});
    }
    {
        // n-outcome preparation: outcome k prepares point k with weight 1/n
        std::vector<RealMatrix> outcomes;
        for (int k = 0; k < n; ++k) {
            RealMatrix col(n, 1);
            col.at(k, 0) = 1.0 / n;
            outcomes.push_back(col);
        }
        t.gates.push_back({"coin", {}, {ty}, std::move(outcomes)});
    }
    t.gates.push_back({"scalar_coin", {}, {}, {RealMatrix{{0.5}}, RealMatrix{{0.5}}}});
    t.gates.push_back({"id", {ty}, {ty}, {RealMatrix::identity(n)}});
    {
        RealMatrix shift(n, n);
        for (int j = 0; j < n; ++j) {
            shift.at((j + 1) % n, j) = 1.0;
        }
        t.gates.push_back({"shift", {ty}, {ty}, {shift}});
    }
    if (n == 2) {
        t.gates.push_back({"noise", {ty}, {ty}, {RealMatrix{{0.75, 0.25}, {0.25, 0.75}}}});
    }
    {
        std::vector<RealMatrix> outcomes;
        for (int k = 0; k < n; ++k) {
            RealMatrix row(1, n);
            row.at(0, k) = 1.0;
            outcomes.push_back(row);
        }
        t.gates.push_back({"measure", {ty}, {}, std::move(outcomes)});
    }
    detail::certify(t);
    return t;
}

/// Qubit theory in the transfer-matrix representation (dim-4 real vector
/// space per qubit, Pauli basis). n_qubits_max in {1,2,3}; two-qubit gates
/// (Bell preparation, CNOT) appear from 2 on.
inline Theory builtin_quantum(int n_qubits_max) {
    if (n_qubits_max < 1 || n_qubits_max > 3) {
        throw ParseError("quantum builtin supports 1..3 qubits");
    }
    Theory t;
    t.name = "builtin:qubits" + std::to_string(n_qubits_max);
    t.types.push_back({"qubit", 4});

    auto ket_density = [](std::vector<Complex> amps) {
        int d = static_cast<int>(amps.size());
        ComplexMatrix rho(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                rho.at(i, j) = amps[static_cast<std::size_t>(i)] * std::conj(amps[static_cast<std::size_t>(j)]);
            }
        }
        return rho;
    };
    double s2 = 1.0 / std::sqrt(2.0);

    t.gates.push_back({"prep_0", {}, {"qubit"}, {state_to_coords(ket_density({1.0, 0.0}))}});
    t.gates.push_back({"prep_plus", {}, {"qubit"}, {state_to_coords(ket_density({s2, s2}))}});

    auto unitary_gate = [&](const std::string& name, ComplexMatrix u,
                            std::vector<std::string> io) {
        t.gates.push_back({name, io, io, {cp_map_to_transfer({u})}});
    };
    {
        ComplexMatrix h(2, 2);
        h.at(0, 0) = s2;
        h.at(0, 1) = s2;
        h.at(1, 0) = s2;
        h.at(1, 1) = -s2;
        unitary_gate("H", h, {"qubit"});
    }
    {
        ComplexMatrix tg(2, 2);
        tg.at(0, 0) = 1.0;
        tg.at(1, 1) = std::exp(Complex(0.0, M_PI / 4.0));
        unitary_gate("T", tg, {"qubit"});
    }
    {
        ComplexMatrix x(2, 2);
        x.at(0, 1) = 1.0;
        x.at(1, 0) = 1.0;
        unitary_gate("X", x, {"qubit"});
    }
    {
        ComplexMatrix z(2, 2);
        z.at(0, 0) = 1.0;
        z.at(1, 1) = -1.0;
        unitary_gate("Z", z, {"qubit"});
    }
    {
        ComplexMatrix e0(2, 2);
        e0.at(0, 0) = 1.0;
        ComplexMatrix e1(2, 2);
        e1.at(1, 1) = 1.0;
        t.gates.push_back({"measure", {"qubit"}, {}, {effect_to_row(e0), effect_to_row(e1)}});
    }
    if (n_qubits_max >= 2) {
        t.gates.push_back(
            {"bell", {}, {"qubit", "qubit"}, {state_to_coords(ket_density({s2, 0.0, 0.0, s2}))}});
        ComplexMatrix cnot(4, 4);
        cnot.at(0, 0) = 1.0;
        cnot.at(1, 1) = 1.0;
        cnot.at(2, 3) = 1.0;
        cnot.at(3, 2) = 1.0;
        t.gates.push_back({"CNOT", {"qubit", "qubit"}, {"qubit", "qubit"}, {cp_map_to_transfer({cnot})}});
    }
    detail::certify(t);
    return t;
}

/// Box world on generalised bits: state coordinates
/// (p(a=0|x=0), p(a=0|x=1), 1), the four extremal local preparations, the
/// PR-box pair preparation and the two fiducial measurements.
inline Theory builtin_boxworld() {
    Theory t;
    t.name = "builtin:boxworld";
    t.types.push_back({"gbit", 3});

    for (int a0 = 0; a0 < 2; ++a0) {
        for (int a1 = 0; a1 < 2; ++a1) {
            RealMatrix col(3, 1);
            col.at(0, 0) = a0 == 0 ? 1.0 : 0.0;
            col.at(1, 0) = a1 == 0 ? 1.0 : 0.0;
            col.at(2, 0) = 1.0;
            t.gates.push_back(
                {"local_" + std::to_string(a0) + std::to_string(a1), {}, {"gbit"}, {col}});
        }
    }
    {
        // PR pair: joint fiducial table P(ab|xy) = 1/2 [a xor b == x.y]
        RealMatrix s(9, 1);
        auto set = [&](int i, int j, double v) { s.at(i * 3 + j, 0) = v; };
        set(0, 0, 0.5);  // P(00|x=0,y=0)
        set(0, 1, 0.5);  // P(00|x=0,y=1)
        set(1, 0, 0.5);  // P(00|x=1,y=0)
        set(1, 1, 0.0);  // P(00|x=1,y=1)
        set(0, 2, 0.5);  // P(a=0|x=0)
        set(1, 2, 0.5);  // P(a=0|x=1)
        set(2, 0, 0.5);  // P(b=0|y=0)
        set(2, 1, 0.5);  // P(b=0|y=1)
        set(2, 2, 1.0);
        t.gates.push_back({"pr", {}, {"gbit", "gbit"}, {s}});
    }
    t.gates.push_back({"measure_x0",
                       {"gbit"},
                       {},
                       {RealMatrix{{1.0, 0.0, 0.0}}, RealMatrix{{-1.0, 0.0, 1.0}}}});
    t.gates.push_back({"measure_x1",
                       {"gbit"},
                       {},
                       {RealMatrix{{0.0, 1.0, 0.0}}, RealMatrix{{0.0, -1.0, 1.0}}}});
    detail::certify(t);
    return t;
}

}  // namespace gptsim

#endif
