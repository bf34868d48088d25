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

#ifndef GPTSIM_DYADIC_HPP
#define GPTSIM_DYADIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gptsim/errors.hpp"
#include "gptsim/matrix.hpp"

namespace gptsim {

using BigInt = boost::multiprecision::cpp_int;

/// Largest exponent accepted by round_to_dyadic.
inline constexpr int kMaxDyadicExponent = 256;

/// value = numerator / 2^exponent. Representations are not canonicalised
/// (even numerators with positive exponent are allowed); equality is value
/// equality after exponent alignment.
struct Dyadic {
    BigInt numerator = 0;
    int exponent = 0;  // non-negative

    Dyadic() = default;
    Dyadic(BigInt n, int e) : numerator(std::move(n)), exponent(e) {
        if (e < 0) {
            throw ShapeError("dyadic exponent must be non-negative");
        }
    }
};

/// Convert n / 2^e to the nearest double. Handles numerators wider than the
/// double range by dropping bits that cannot affect the rounded result.
inline double dyadic_to_double(BigInt n, long exponent) {
    if (n == 0) {
        return 0.0;
    }
    long bits = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(n))) + 1;
    if (bits > 992) {
        long shift = bits - 992;
        n >>= shift;
        exponent -= shift;
    }
    return std::ldexp(n.convert_to<double>(), static_cast<int>(-exponent));
}

inline double to_double(const Dyadic& d) {
    return dyadic_to_double(d.numerator, d.exponent);
}

inline bool value_equal(const Dyadic& a, const Dyadic& b) {
    int e = std::max(a.exponent, b.exponent);
    return (a.numerator << (e - a.exponent)) == (b.numerator << (e - b.exponent));
}

/// Matrix with a single shared exponent: entry(i,j) = numerators[i*cols+j] / 2^exponent.
struct DyadicMatrix {
    int rows = 0;
    int cols = 0;
    int exponent = 0;
    std::vector<BigInt> numerators;

    DyadicMatrix() = default;
    DyadicMatrix(int r, int c, int e)
        : rows(r), cols(c), exponent(e), numerators(static_cast<std::size_t>(r) * c, BigInt(0)) {
        if (r < 1 || c < 1) {
            throw ShapeError("dyadic matrix dimensions must be positive");
        }
        if (e < 0) {
            throw ShapeError("dyadic exponent must be non-negative");
        }
    }

    BigInt& at(int i, int j) { return numerators[static_cast<std::size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return numerators[static_cast<std::size_t>(i) * cols + j]; }

    Dyadic entry(int i, int j) const { return Dyadic(at(i, j), exponent); }

    static DyadicMatrix identity(int n) {
        DyadicMatrix m(n, n, 0);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 1;
        }
        return m;
    }

    RealMatrix to_real() const {
        RealMatrix m(rows, cols);
        for (std::size_t i = 0; i < numerators.size(); ++i) {
            m.data[i] = dyadic_to_double(numerators[i], exponent);
        }
        return m;
    }
};

/// Round each entry to the nearest multiple of 2^-d (ties away from zero).
/// The result satisfies |value(i,j) - m(i,j)| <= 2^-(d+1).
inline DyadicMatrix round_to_dyadic(const RealMatrix& m, int d) {
    if (d < 0 || d > kMaxDyadicExponent) {
        throw CapError("dyadic exponent " + std::to_string(d) + " outside [0, " +
                       std::to_string(kMaxDyadicExponent) + "]");
    }
    DyadicMatrix out(m.rows, m.cols, d);
    for (std::size_t i = 0; i < m.data.size(); ++i) {
        // ldexp is exact here (pure exponent shift, far from overflow)
        double scaled = std::ldexp(m.data[i], d);
        if (std::abs(scaled) >= 9007199254740992.0) {  // 2^53: already an integer
            out.numerators[i] = BigInt(scaled);
        } else {
            out.numerators[i] = BigInt(std::llround(scaled));
        }
    }
    return out;
}

inline DyadicMatrix dyadic_matmul(const DyadicMatrix& a, const DyadicMatrix& b) {
    if (a.cols != b.rows) {
        throw ShapeError("dyadic matmul shape mismatch: " + std::to_string(a.rows) + "x" +
                         std::to_string(a.cols) + " * " + std::to_string(b.rows) + "x" +
                         std::to_string(b.cols));
    }
    DyadicMatrix out(a.rows, b.cols, a.exponent + b.exponent);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const BigInt& aik = a.at(i, k);
            if (aik == 0) {
                continue;
            }
            for (int j = 0; j < b.cols; ++j) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

inline DyadicMatrix dyadic_kron(const DyadicMatrix& a, const DyadicMatrix& b,
                                std::int64_t max_entries = kKronMaxEntries) {
    std::int64_t r = std::int64_t{a.rows} * b.rows;
    std::int64_t c = std::int64_t{a.cols} * b.cols;
    if (r * c > max_entries) {
        throw CapError("dyadic kron result exceeds entry cap");
    }
    DyadicMatrix out(static_cast<int>(r), static_cast<int>(c), a.exponent + b.exponent);
    for (int i1 = 0; i1 < a.rows; ++i1) {
        for (int j1 = 0; j1 < a.cols; ++j1) {
            const BigInt& aij = a.at(i1, j1);
            if (aij == 0) {
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

/// Rescale to a larger shared exponent without changing values.
inline DyadicMatrix dyadic_align(const DyadicMatrix& a, int exponent) {
    if (exponent < a.exponent) {
        throw ShapeError("cannot align dyadic matrix to a smaller exponent");
    }
    DyadicMatrix out(a.rows, a.cols, exponent);
    int shift = exponent - a.exponent;
    for (std::size_t i = 0; i < a.numerators.size(); ++i) {
        out.numerators[i] = a.numerators[i] << shift;
    }
    return out;
}

inline bool value_equal(const DyadicMatrix& a, const DyadicMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        return false;
    }
    int e = std::max(a.exponent, b.exponent);
    for (std::size_t i = 0; i < a.numerators.size(); ++i) {
        if ((a.numerators[i] << (e - a.exponent)) != (b.numerators[i] << (e - b.exponent))) {
            return false;
        }
    }
    return true;
}

}  // namespace gptsim

#endif
