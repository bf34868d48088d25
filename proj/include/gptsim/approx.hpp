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

#ifndef GPTSIM_APPROX_HPP
#define GPTSIM_APPROX_HPP

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gptsim/circuit.hpp"
#include "gptsim/dyadic.hpp"
#include "gptsim/errors.hpp"
#include "gptsim/theory.hpp"

namespace gptsim {

/// Certified bound on |P(z) - P~(z)| for an eps-approximated circuit:
/// bound = D^(q-1) * q * eps * N, with q the gate count, N the largest
/// rows*cols over the circuit's gate matrices, D'' the largest certified
/// operator-norm upper bound (Frobenius) over the original gate matrices,
/// and D = D'' + N. Requires eps <= 1.
struct ErrorCertificate {
    double eps = 0.0;
    int q = 0;
    double n = 0.0;             // N
    double d_doubleprime = 0.0; // D''
    double d = 0.0;             // D = D'' + N
    double bound = 0.0;
};

/// A circuit's gate set rounded to dyadic entries, with its certificate.
struct DyadicApproximation {
    Theory rounded_theory;
    std::map<std::string, std::vector<DyadicMatrix>> dyadic_gates;
    int exponent = 0;  // every entry is numerator / 2^exponent
    ErrorCertificate certificate;
};

/// Round every gate of the circuit's theory at precision 2^-d with
/// d = ceil(log2(1/eps)) + 1, so the entrywise rounding error is strictly
/// below eps. The certificate is computed from the original matrices.
inline DyadicApproximation approximate_circuit(const Circuit& c, const Theory& t, double eps) {
    if (!(eps > 0.0) || eps > 1.0) {
        throw ParseError("eps must lie in (0, 1], got " + std::to_string(eps));
    }
    if (c.nodes.empty()) {
        throw ParseError("cannot certify an empty circuit");
    }
    int d = static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 1;

    DyadicApproximation out;
    out.exponent = d;
    out.rounded_theory = t;
    out.rounded_theory.name = t.name + "~rounded";
    out.rounded_theory.causal_certificate.reset();  // rounding may break exact causality
    for (auto& g : out.rounded_theory.gates) {
        std::vector<DyadicMatrix> dy;
        dy.reserve(g.outcomes.size());
        for (auto& m : g.outcomes) {
            DyadicMatrix dm = round_to_dyadic(m, d);
            m = dm.to_real();
            dy.push_back(std::move(dm));
        }
        out.dyadic_gates.emplace(g.name, std::move(dy));
    }

    std::set<std::string> used;
    for (const auto& n : c.nodes) {
        used.insert(n.gate);
    }
    double n_max = 0.0;
    double d2 = 0.0;
    for (const auto& name : used) {
        const Gate* g = t.find_gate(name);
        if (g == nullptr) {
            throw ParseError("circuit references unknown gate '" + name + "'");
        }
        for (const auto& m : g->outcomes) {
            n_max = std::max(n_max, static_cast<double>(m.rows) * m.cols);
            d2 = std::max(d2, opnorm_upper(m));
        }
    }
    auto& cert = out.certificate;
    cert.eps = eps;
    cert.q = static_cast<int>(c.nodes.size());
    cert.n = n_max;
    cert.d_doubleprime = d2;
    cert.d = d2 + n_max;
    cert.bound = std::pow(cert.d, cert.q - 1) * cert.q * eps * n_max;
    return out;
}

/// Perturbation of a T-fold matrix product: with D = max of norm_list and
/// per-factor deviations deltas, the product norms differ by at most
/// D^(T-1) * sum(deltas).
inline double product_perturbation_bound(const std::vector<double>& norm_list,
                                         const std::vector<double>& deltas) {
    if (norm_list.empty() || deltas.empty()) {
        throw ParseError("product perturbation bound needs non-empty lists");
    }
    if (norm_list.size() != deltas.size()) {
        throw ParseError("norm and delta lists must have the same length");
    }
    double d = 0.0;
    for (double x : norm_list) {
        d = std::max(d, x);
    }
    double sum = 0.0;
    for (double x : deltas) {
        sum += x;
    }
    return std::pow(d, static_cast<double>(norm_list.size()) - 1.0) * sum;
}

/// The approximation accuracy that preserves the 2/3 vs 1/3 acceptance
/// separation as 7/12 vs 5/12: eps = 1 / (12 q D^(q-1) N).
inline double bgp_margin_epsilon(int q, double d, double n) {
    if (q < 1) {
        throw ParseError("gate count must be >= 1");
    }
    return 1.0 / (12.0 * q * std::pow(d, q - 1) * n);
}

}  // namespace gptsim

#endif
