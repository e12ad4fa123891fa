#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "mslab/katetov.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/rational.hpp"

namespace mslab {

/// Deterministic generator. Bounded draws use rejection sampling on the raw
/// 64-bit stream so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
        std::uint64_t v;
        do { v = next(); } while (limit != 0 && v >= limit);
        return lo + static_cast<std::int64_t>(span == 0 ? v : v % span);
    }

    bool coin() { return (next() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }

    /// Independent stream derived from this generator's seed.
    Rng fork(std::uint64_t stream) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

namespace gen {

/// Random Katetov profile on the 1/denom grid by sequential interval
/// sampling: `fixed` values first, then the `caps` points (value also
/// bounded by the cap), then the rest in index order. Returns nullopt when
/// a cap or strict positivity cannot be honored.
inline std::optional<std::vector<Rational>> katetov_values(Rng& rng, const MetricSpace& x, std::int64_t denom,
                                                           const std::map<std::size_t, Rational>& fixed = {},
                                                           const std::map<std::size_t, Rational>& caps = {},
                                                           bool positive = true) {
    const std::size_t n = x.size();
    std::vector<std::optional<Rational>> vals(n);
    std::vector<std::size_t> assigned;
    for (const auto& [i, v] : fixed) {
        vals[i] = v;
        assigned.push_back(i);
    }
    std::vector<std::size_t> order;
    for (const auto& [i, c] : caps)
        if (!vals[i]) order.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
        if (!vals[i] && !caps.count(i)) order.push_back(i);
    const Rational step(1, denom);
    for (auto u : order) {
        Rational lo = positive ? step : Rational(0);
        Rational hi = x.diam_bound();
        for (auto s : assigned) {
            lo = max(lo, abs(*vals[s] - x(s, u)));
            hi = min(hi, *vals[s] + x(s, u));
        }
        if (auto it = caps.find(u); it != caps.end()) hi = min(hi, it->second);
        // round lo up and hi down onto the grid
        mpz_class lo_units, hi_units;
        mpz_class num = lo.numerator() * denom, den = lo.denominator();
        mpz_cdiv_q(lo_units.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        num = hi.numerator() * denom;
        den = hi.denominator();
        mpz_fdiv_q(hi_units.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (lo_units > hi_units) return std::nullopt;
        vals[u] = Rational(rng.uniform(lo_units.get_si(), hi_units.get_si()), denom);
        assigned.push_back(u);
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (auto& v : vals) out.push_back(*v);
    return out;
}

inline MetricSpace append_point(const MetricSpace& x, const std::vector<Rational>& profile) {
    const std::size_t n = x.size();
    std::vector<Rational> flat;
    flat.reserve((n + 1) * (n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = x.row(i);
        flat.insert(flat.end(), row.begin(), row.end());
        flat.push_back(profile[i]);
    }
    flat.insert(flat.end(), profile.begin(), profile.end());
    flat.emplace_back();
    auto labels = x.labels();
    labels.push_back(std::to_string(n));
    return MetricSpace::from_flat(std::move(labels), std::move(flat), x.diam_bound());
}

/// Random n-point metric space on the 1/denom grid, built one Katetov
/// extension at a time.
inline MetricSpace space(Rng& rng, std::size_t n, std::int64_t denom, const Rational& diam = Rational(1)) {
    MetricSpace x = MetricSpace::make({}, Matrix{}, diam);
    while (x.size() < n) {
        if (x.size() == 0) {
            x = MetricSpace::make({"0"}, Matrix{{Rational(0)}}, diam);
            continue;
        }
        if (auto p = katetov_values(rng, x, denom)) x = append_point(x, *p);
    }
    return x;
}

inline KatetovFn katetov(Rng& rng, const SpacePtr& x, std::int64_t denom) {
    for (;;) {
        if (auto v = katetov_values(rng, *x, denom, {}, {}, false)) return KatetovFn::make(x, std::move(*v));
    }
}

/// Random subset of {0..n-1} (each index with probability 1/2), sorted.
inline std::vector<std::size_t> subset(Rng& rng, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (rng.coin()) out.push_back(i);
    return out;
}

}  // namespace gen
}  // namespace mslab
