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

#ifndef GPTSIM_MATRIX_HPP
#define GPTSIM_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gptsim/errors.hpp"

namespace gptsim {

/// Total-entry cap for Kronecker products and permutation matrices.
inline constexpr std::int64_t kKronMaxEntries = std::int64_t{1} << 20;

/// Dense row-major real matrix. Values are immutable by convention once a
/// matrix has been handed to a Theory or Circuit; all operations below are
/// pure functions returning fresh matrices.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major, data.size() == rows*cols

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {
        if (r < 1 || c < 1) {
            throw ShapeError("matrix dimensions must be positive, got " + shape_str());
        }
    }
    RealMatrix(int r, int c, std::vector<double> d) : rows(r), cols(c), data(std::move(d)) {
        if (r < 1 || c < 1) {
            throw ShapeError("matrix dimensions must be positive, got " + shape_str());
        }
        if (data.size() != static_cast<std::size_t>(r) * c) {
            throw ShapeError("entry count " + std::to_string(data.size()) + " does not match shape " + shape_str());
        }
    }
    /// Construct from nested row lists: RealMatrix({{1,0},{0,1}}).
    RealMatrix(std::initializer_list<std::initializer_list<double>> m) {
        rows = static_cast<int>(m.size());
        cols = rows > 0 ? static_cast<int>(m.begin()->size()) : 0;
        if (rows < 1 || cols < 1) {
            throw ShapeError("matrix literal must be non-empty");
        }
        data.reserve(static_cast<std::size_t>(rows) * cols);
        for (const auto& row : m) {
            if (static_cast<int>(row.size()) != cols) {
                throw ShapeError("ragged matrix literal");
            }
            data.insert(data.end(), row.begin(), row.end());
        }
    }

    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    std::string shape_str() const {
        return std::to_string(rows) + "x" + std::to_string(cols);
    }

    bool all_finite() const {
        for (double v : data) {
            if (!std::isfinite(v)) {
                return false;
            }
        }
        return true;
    }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 1.0;
        }
        return m;
    }

    static RealMatrix column(std::vector<double> v) {
        int n = static_cast<int>(v.size());
        return RealMatrix(n, 1, std::move(v));
    }
    static RealMatrix row(std::vector<double> v) {
        int n = static_cast<int>(v.size());
        return RealMatrix(1, n, std::move(v));
    }
};

inline RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.rows) {
        throw ShapeError("matmul shape mismatch: " + a.shape_str() + " * " + b.shape_str());
    }
    RealMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            double aik = a.at(i, k);
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

inline std::vector<double> matvec(const RealMatrix& a, const std::vector<double>& v) {
    if (a.cols != static_cast<int>(v.size())) {
        throw ShapeError("matvec shape mismatch: " + a.shape_str() + " * " + std::to_string(v.size()) + "-vector");
    }
    std::vector<double> out(static_cast<std::size_t>(a.rows), 0.0);
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols; ++j) {
            s += a.at(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

/// Kronecker product. Index convention: result[(i1*b.rows+i2),(j1*b.cols+j2)]
/// = a[i1,j1] * b[i2,j2], i.e. the left factor is the slow index.
inline RealMatrix kron(const RealMatrix& a, const RealMatrix& b,
                       std::int64_t max_entries = kKronMaxEntries) {
    std::int64_t r = std::int64_t{a.rows} * b.rows;
    std::int64_t c = std::int64_t{a.cols} * b.cols;
    if (r * c > max_entries) {
        throw CapError("kron result " + std::to_string(r) + "x" + std::to_string(c) +
                       " exceeds entry cap " + std::to_string(max_entries));
    }
    RealMatrix out(static_cast<int>(r), static_cast<int>(c));
    for (int i1 = 0; i1 < a.rows; ++i1) {
        for (int j1 = 0; j1 < a.cols; ++j1) {
            double aij = a.at(i1, j1);
            if (aij == 0.0) {
                continue;
            }
            for (int i2 = 0; i2 < b.rows; ++i2) {
                for (int j2 = 0; j2 < b.cols; ++j2) {
                    out.at(i1 * b.rows + i2, j1 * b.cols + j2) = aij * b.at(i2, j2);
                }
            }
        }
    }
    return out;
}

/// Entrywise operator-norm bound: a matrix whose entries are all bounded by
/// eps in magnitude has operator norm at most rows*cols*eps.
inline double entrywise_opnorm_bound(int rows, int cols, double eps) {
    if (eps < 0.0) {
        throw ShapeError("entrywise bound needs eps >= 0");
    }
    return static_cast<double>(rows) * static_cast<double>(cols) * eps;
}

/// Certified upper bound on the operator norm: the Frobenius norm.
inline double opnorm_upper(const RealMatrix& a) {
    double s = 0.0;
    for (double v : a.data) {
        s += v * v;
    }
    return std::sqrt(s);
}

/// Permutation of tensor factors as an explicit 0/1 matrix.
///
/// `dims` are the factor dimensions in source order; `target_from_source`
/// lists, for each target slot, which source slot it carries
/// (target factor i == source factor target_from_source[i]). Rows are indexed
/// by the target mixed-radix multi-index, columns by the source one.
inline RealMatrix tensor_permutation_matrix(const std::vector<int>& dims,
                                            const std::vector<int>& target_from_source,
                                            std::int64_t max_entries = kKronMaxEntries) {
    if (dims.size() != target_from_source.size()) {
        throw ShapeError("permutation arity mismatch");
    }
    std::int64_t total = 1;
    for (int d : dims) {
        if (d < 1) {
            throw ShapeError("tensor factor dims must be positive");
        }
        total *= d;
    }
    if (total * total > max_entries) {
        throw CapError("permutation matrix " + std::to_string(total) + "^2 exceeds entry cap");
    }
    int n = static_cast<int>(total);
    std::size_t k = dims.size();
    // Strides of the target multi-index (target dims follow the permutation).
    std::vector<std::int64_t> tstride(k, 1);
    std::vector<int> tdims(k);
    for (std::size_t i = 0; i < k; ++i) {
        tdims[i] = dims[static_cast<std::size_t>(target_from_source[i])];
    }
    for (std::size_t i = k; i-- > 0;) {
        tstride[i] = (i + 1 < k) ? tstride[i + 1] * tdims[i + 1] : 1;
    }
    RealMatrix p(n, n);
    std::vector<int> digits(k, 0);
    for (int s = 0; s < n; ++s) {
        // decompose s in source order
        std::int64_t rem = s;
        for (std::size_t i = k; i-- > 0;) {
            digits[i] = static_cast<int>(rem % dims[i]);
            rem /= dims[i];
        }
        std::int64_t t = 0;
        for (std::size_t i = 0; i < k; ++i) {
            t += tstride[i] * digits[static_cast<std::size_t>(target_from_source[i])];
        }
        p.at(static_cast<int>(t), s) = 1.0;
    }
    return p;
}

/// True when the permutation is the identity (matrix would be I).
inline bool is_identity_permutation(const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

}  // namespace gptsim

#endif
