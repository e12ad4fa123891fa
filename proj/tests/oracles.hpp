#pragma once

// Brute-force reference computations. They avoid the library's own
// algorithms on purpose: plain loops over every index combination.

#include <optional>
#include <vector>

#include "mslab/mslab.hpp"

namespace oracle {

using mslab::Matrix;
using mslab::Rational;

inline bool is_metric(const Matrix& d, const Rational& bound) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i].size() != n) return false;
            if ((i == j) != d[i][j].is_zero()) return false;
            if (d[i][j].sign() < 0 || d[i][j] > bound || d[i][j] != d[j][i]) return false;
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][j] > d[i][k] + d[k][j]) return false;
        }
    return true;
}

inline bool is_metric(const mslab::MetricSpace& x) { return is_metric(x.matrix(), x.diam_bound()); }

inline bool is_katetov(const std::vector<Rational>& f, const Matrix& d, const Rational& bound) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].sign() < 0 || f[i] > bound) return false;
        for (std::size_t j = 0; j < f.size(); ++j) {
            Rational diff = f[i] - f[j];
            if (diff.sign() < 0) diff = -diff;
            if (diff > d[i][j] || d[i][j] > f[i] + f[j]) return false;
        }
    }
    return true;
}

/// Every vector over {0, 1/denom, ..., top/denom}^n that is Katetov, in
/// lexicographic order (odometer over the full grid).
inline std::vector<std::vector<Rational>> enumerate_katetov(const Matrix& d, long denom, const Rational& bound) {
    const std::size_t n = d.size();
    const long top = (bound * Rational(denom)).numerator().get_si();
    std::vector<long> digits(n, 0);
    std::vector<std::vector<Rational>> out;
    for (;;) {
        std::vector<Rational> f;
        for (auto u : digits) f.emplace_back(u, denom);
        if (is_katetov(f, d, bound)) out.push_back(f);
        std::size_t p = n;
        while (p > 0 && digits[p - 1] == top) digits[--p] = 0;
        if (p == 0) break;
        ++digits[p - 1];
    }
    return out;
}

/// All-pairs shortest paths over edges given as optional lengths.
inline Matrix shortest_paths(std::vector<std::vector<std::optional<Rational>>> g) {
    const std::size_t n = g.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g[i][k] && g[k][j] && (!g[i][j] || *g[i][k] + *g[k][j] < *g[i][j])) g[i][j] = *g[i][k] + *g[k][j];
    Matrix out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = g[i][j].value_or(Rational(-1));
    return out;
}

inline Matrix capped(Matrix m, const Rational& c) {
    for (auto& row : m)
        for (auto& v : row)
            if (v > c) v = c;
    return m;
}

}  // namespace oracle
