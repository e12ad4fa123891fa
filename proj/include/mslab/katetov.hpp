#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/rational.hpp"

namespace mslab {

using SpacePtr = std::shared_ptr<const MetricSpace>;

inline SpacePtr share(MetricSpace x) { return std::make_shared<const MetricSpace>(std::move(x)); }

struct KatetovViolation {
    enum class Kind { OutOfRange, Lipschitz, Sum };
    Kind kind;
    std::size_t i;
    std::size_t j;  ///< equals i for OutOfRange
};

inline std::string to_string(KatetovViolation::Kind k) {
    switch (k) {
    case KatetovViolation::Kind::OutOfRange: return "out-of-range";
    case KatetovViolation::Kind::Lipschitz: return "|f(x)-f(y)| > d(x,y)";
    case KatetovViolation::Kind::Sum: return "d(x,y) > f(x)+f(y)";
    }
    return "unknown";
}

struct KatetovVerdict {
    std::optional<KatetovViolation> violation;
    bool valid() const { return !violation.has_value(); }
    explicit operator bool() const { return valid(); }
};

/// |f(x)-f(y)| <= d(x,y) <= f(x)+f(y) and 0 <= f <= diam_bound, scanned in
/// lexicographic pair order.
inline KatetovVerdict is_katetov(std::span<const Rational> values, const MetricSpace& x) {
    using K = KatetovViolation::Kind;
    if (values.size() != x.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(values.size()) + " values for " +
                                                   std::to_string(x.size()) + " points");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (values[i].sign() < 0 || values[i] > x.diam_bound()) return {KatetovViolation{K::OutOfRange, i, i}};
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (abs(values[i] - values[j]) > x(i, j)) return {KatetovViolation{K::Lipschitz, i, j}};
            if (x(i, j) > values[i] + values[j]) return {KatetovViolation{K::Sum, i, j}};
        }
    }
    return {};
}

/// A Katetov function over a shared metric space; construction validates.
class KatetovFn {
public:
    static KatetovFn make(SpacePtr space, std::vector<Rational> values) {
        if (!space) throw Error(ErrorCode::InvalidArgument, "null space");
        if (auto v = is_katetov(values, *space); !v.valid())
            throw Error(ErrorCode::KatetovViolation, to_string(v.violation->kind), {v.violation->i, v.violation->j});
        return KatetovFn(std::move(space), std::move(values));
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    friend bool operator==(const KatetovFn& a, const KatetovFn& b) {
        return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.values_ == b.values_;
    }

private:
    KatetovFn(SpacePtr space, std::vector<Rational> values) : space_(std::move(space)), values_(std::move(values)) {}

    friend KatetovFn elementary_katetov(const SpacePtr& x, std::size_t z);
    friend class KatetovEnumerator;

    SpacePtr space_;
    std::vector<Rational> values_;
};

/// f_z(x) = d(x, z).
inline KatetovFn elementary_katetov(const SpacePtr& x, std::size_t z) {
    x->check_index(z);
    auto row = x->row(z);
    return KatetovFn(x, std::vector<Rational>(row.begin(), row.end()));
}

struct Extension {
    MetricSpace space;
    std::size_t point;
};

/// Realizes f as a new point p with d(p, x) = f(x).
inline Extension extend_by_katetov(const MetricSpace& x, std::span<const Rational> f,
                                   std::string label = {}) {
    if (auto v = is_katetov(f, x); !v.valid())
        throw Error(ErrorCode::KatetovViolation, to_string(v.violation->kind), {v.violation->i, v.violation->j});
    for (std::size_t i = 0; i < x.size(); ++i)
        if (f[i].is_zero())
            throw Error(ErrorCode::DuplicatePoint, "value 0 at point " + std::to_string(i) + " would duplicate it", {i});
    const std::size_t n = x.size();
    std::vector<Rational> flat;
    flat.reserve((n + 1) * (n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = x.row(i);
        flat.insert(flat.end(), row.begin(), row.end());
        flat.push_back(f[i]);
    }
    flat.insert(flat.end(), f.begin(), f.end());
    flat.emplace_back();
    auto labels = x.labels();
    labels.push_back(label.empty() ? "p" + std::to_string(n) : std::move(label));
    return {MetricSpace::from_flat(std::move(labels), std::move(flat), x.diam_bound(), ErrorCode::MetricFailure), n};
}

inline Extension extend_by_katetov(const MetricSpace& x, const KatetovFn& f, std::string label = {}) {
    return extend_by_katetov(x, std::span<const Rational>(f.values()), std::move(label));
}

inline Rational sup_distance(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::SpaceMismatch, "functions over different point counts");
    Rational best;
    for (std::size_t i = 0; i < a.size(); ++i) best = max(best, abs(a[i] - b[i]));
    return best;
}

inline Rational sup_distance(const KatetovFn& a, const KatetovFn& b) {
    if (a.space() != b.space() && !(*a.space() == *b.space()))
        throw Error(ErrorCode::SpaceMismatch, "functions over different spaces");
    return sup_distance(std::span<const Rational>(a.values()), std::span<const Rational>(b.values()));
}

inline std::vector<KatetovFn> kuratowski_embed(const SpacePtr& x) {
    std::vector<KatetovFn> out;
    out.reserve(x->size());
    for (std::size_t z = 0; z < x->size(); ++z) out.push_back(elementary_katetov(x, z));
    return out;
}

enum class TruncationMode { Max, Min };

/// Pointwise max(lambda, f) or min(lambda, f). Only the max form is
/// guaranteed to stay Katetov, so the result is untyped.
inline std::vector<Rational> truncate_katetov(const KatetovFn& f, const Rational& lambda, TruncationMode mode) {
    if (lambda.sign() <= 0 || lambda >= f.space()->diam_bound())
        throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie strictly between 0 and the diam bound");
    std::vector<Rational> out;
    out.reserve(f.size());
    for (const auto& v : f.values()) out.push_back(mode == TruncationMode::Max ? max(lambda, v) : min(lambda, v));
    return out;
}

namespace detail {

/// Lexicographic enumeration of integer Katetov vectors over a k-point
/// space given in grid units. Each coordinate ranges over the interval
/// allowed by the prefix, which is never empty, so there are no dead ends.
class GridKatetovEnumerator {
public:
    GridKatetovEnumerator(std::vector<std::int64_t> dist, std::size_t k, std::int64_t top)
        : dist_(std::move(dist)), k_(k), top_(top), vals_(k), lo_(k), hi_(k) {}

    bool next(std::vector<std::int64_t>& out) {
        if (done_) return false;
        if (!started_) {
            started_ = true;
            if (k_ == 0) {
                done_ = true;
                out.clear();
                return true;
            }
            fill_from(0);
        } else {
            std::size_t p = k_;
            while (p > 0 && vals_[p - 1] == hi_[p - 1]) --p;
            if (p == 0) {
                done_ = true;
                return false;
            }
            ++vals_[p - 1];
            fill_from(p);
        }
        out = vals_;
        return true;
    }

private:
    void fill_from(std::size_t p) {
        for (; p < k_; ++p) {
            std::int64_t lo = 0, hi = top_;
            for (std::size_t q = 0; q < p; ++q) {
                const std::int64_t d = dist_[q * k_ + p];
                lo = std::max(lo, vals_[q] > d ? vals_[q] - d : d - vals_[q]);
                hi = std::min(hi, vals_[q] + d);
            }
            lo_[p] = lo;
            hi_[p] = hi;
            vals_[p] = lo;
        }
    }

    std::vector<std::int64_t> dist_;
    std::size_t k_;
    std::int64_t top_;
    std::vector<std::int64_t> vals_, lo_, hi_;
    bool started_ = false;
    bool done_ = false;
};

inline std::int64_t require_units(const Rational& r, std::int64_t denom) {
    auto u = r.units(denom);
    if (!u) throw Error(ErrorCode::DenominatorMismatch, r.str() + " is not a multiple of 1/" + std::to_string(denom));
    return *u;
}

}  // namespace detail

/// Yields every Katetov function over X with values in {0, 1/denom, ..., diam_bound},
/// in lexicographic order.
class KatetovEnumerator {
public:
    KatetovEnumerator(SpacePtr x, std::int64_t denom) : space_(std::move(x)), denom_(denom), grid_({}, 0, 0) {
        if (denom < 1) throw Error(ErrorCode::DenominatorMismatch, "denominator must be positive");
        const std::size_t n = space_->size();
        std::vector<std::int64_t> dist;
        dist.reserve(n * n);
        for (const auto& v : space_->flat()) dist.push_back(detail::require_units(v, denom));
        grid_ = detail::GridKatetovEnumerator(std::move(dist), n, detail::require_units(space_->diam_bound(), denom));
    }

    std::optional<KatetovFn> next() {
        if (!grid_.next(buf_)) return std::nullopt;
        std::vector<Rational> values;
        values.reserve(buf_.size());
        for (auto u : buf_) values.emplace_back(u, denom_);
        return KatetovFn(space_, std::move(values));
    }

    std::vector<KatetovFn> collect() {
        std::vector<KatetovFn> out;
        while (auto f = next()) out.push_back(std::move(*f));
        return out;
    }

private:
    SpacePtr space_;
    std::int64_t denom_;
    detail::GridKatetovEnumerator grid_;
    std::vector<std::int64_t> buf_;
};

inline KatetovEnumerator enumerate_katetov(SpacePtr x, std::int64_t denom) {
    return KatetovEnumerator(std::move(x), denom);
}

}  // namespace mslab
