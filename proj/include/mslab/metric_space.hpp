#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/rational.hpp"

namespace mslab {

using Matrix = std::vector<std::vector<Rational>>;

struct MetricViolation {
    enum class Kind { NonzeroDiagonal, Asymmetric, NonPositive, ExceedsBound, Triangle };
    Kind kind;
    /// A pair (i, j), or a triple (i, j, k) read as d(i,j) > d(i,k) + d(k,j).
    std::vector<std::size_t> indices;
};

inline std::string to_string(MetricViolation::Kind k) {
    switch (k) {
    case MetricViolation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::Asymmetric: return "asymmetric";
    case MetricViolation::Kind::NonPositive: return "non-positive";
    case MetricViolation::Kind::ExceedsBound: return "exceeds-diam-bound";
    case MetricViolation::Kind::Triangle: return "triangle";
    }
    return "unknown";
}

struct MetricVerdict {
    std::optional<MetricViolation> violation;

    bool valid() const { return !violation.has_value(); }
    explicit operator bool() const { return valid(); }
};

namespace detail {

/// Common denominator of all entries, if scaling by it keeps every pairwise
/// sum inside int64.
inline std::optional<std::vector<std::int64_t>> scale_to_int64(std::span<const Rational> flat,
                                                              const Rational& extra) {
    mpz_class lcm = extra.denominator();
    for (const auto& r : flat) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.raw().get_den_mpz_t());
    if (!lcm.fits_slong_p()) return std::nullopt;
    const mpz_class limit = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> out;
    out.reserve(flat.size());
    for (const auto& r : flat) {
        mpz_class v = r.raw().get_num() * (lcm / r.raw().get_den());
        if (abs(v) > limit) return std::nullopt;
        out.push_back(v.get_si());
    }
    return out;
}

template <typename T>
std::optional<MetricViolation> triangle_scan(std::size_t n, std::span<const T> d) {
    for (std::size_t i = 0; i < n; ++i) {
        const T* row_i = d.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (row_i[j] > row_i[k] + d[k * n + j])
                    return MetricViolation{MetricViolation::Kind::Triangle, {i, j, k}};
            }
        }
    }
    return std::nullopt;
}

/// Pair checks first, then the triple scan; the first violation in
/// lexicographic index order wins within each phase.
inline MetricVerdict validate_flat(std::size_t n, std::span<const Rational> d, const Rational& diam_bound) {
    using K = MetricViolation::Kind;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& v = d[i * n + j];
            if (i == j) {
                if (!v.is_zero()) return {MetricViolation{K::NonzeroDiagonal, {i, i}}};
                continue;
            }
            if (i < j && v != d[j * n + i]) return {MetricViolation{K::Asymmetric, {i, j}}};
            if (v.sign() <= 0) return {MetricViolation{K::NonPositive, {i, j}}};
            if (v > diam_bound) return {MetricViolation{K::ExceedsBound, {i, j}}};
        }
    }
    if (auto scaled = scale_to_int64(d, diam_bound)) {
        return {triangle_scan<std::int64_t>(n, *scaled)};
    }
    return {triangle_scan<Rational>(n, d)};
}

}  // namespace detail

/// Brute-force O(n^3) check of the metric axioms plus the diameter bound.
inline MetricVerdict validate_metric(const Matrix& d, const Rational& diam_bound) {
    const std::size_t n = d.size();
    std::vector<Rational> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n)
            throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                                  std::to_string(d[i].size()) + " entries, expected " +
                                                  std::to_string(n));
        flat.insert(flat.end(), d[i].begin(), d[i].end());
    }
    return detail::validate_flat(n, flat, diam_bound);
}

inline std::string describe(const MetricViolation& v) {
    std::string s = to_string(v.kind) + " at (";
    for (std::size_t i = 0; i < v.indices.size(); ++i) s += (i ? "," : "") + std::to_string(v.indices[i]);
    return s + ")";
}

/// Finite metric space with exact rational distances and a declared
/// diameter bound. Instances always satisfy the metric axioms.
class MetricSpace {
public:
    MetricSpace() = default;

    static MetricSpace make(std::vector<std::string> labels, const Matrix& d, Rational diam_bound,
                            ErrorCode on_failure = ErrorCode::InvalidMetric) {
        const std::size_t n = d.size();
        std::vector<Rational> flat;
        flat.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i].size() != n) throw Error(ErrorCode::NonSquare, "distance matrix is not square");
            flat.insert(flat.end(), d[i].begin(), d[i].end());
        }
        return from_flat(std::move(labels), std::move(flat), std::move(diam_bound), on_failure);
    }

    static MetricSpace from_flat(std::vector<std::string> labels, std::vector<Rational> flat,
                                 Rational diam_bound, ErrorCode on_failure = ErrorCode::InvalidMetric) {
        std::size_t n = 0;
        while (n * n < flat.size()) ++n;
        if (n * n != flat.size()) throw Error(ErrorCode::NonSquare, "flat matrix size is not a square");
        if (labels.empty()) {
            for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        }
        if (labels.size() != n)
            throw Error(ErrorCode::LengthMismatch, std::to_string(labels.size()) + " labels for " +
                                                       std::to_string(n) + " points");
        if (auto verdict = detail::validate_flat(n, flat, diam_bound); !verdict.valid())
            throw Error(on_failure, describe(*verdict.violation), verdict.violation->indices);
        MetricSpace m;
        m.labels_ = std::move(labels);
        m.d_ = std::move(flat);
        m.diam_bound_ = std::move(diam_bound);
        return m;
    }

    std::size_t size() const { return labels_.size(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
    const Rational& diam_bound() const { return diam_bound_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::span<const Rational> row(std::size_t i) const { return {d_.data() + i * size(), size()}; }
    std::span<const Rational> flat() const { return d_; }

    Matrix matrix() const {
        Matrix out(size());
        for (std::size_t i = 0; i < size(); ++i) out[i].assign(row(i).begin(), row(i).end());
        return out;
    }

    Rational diameter() const {
        Rational best;
        for (const auto& v : d_) best = max(best, v);
        return best;
    }

    void check_index(std::size_t i) const {
        if (i >= size())
            throw Error(ErrorCode::IndexOutOfRange,
                        "point " + std::to_string(i) + " not in a space of " + std::to_string(size()), {i});
    }

    /// The induced metric on `idx`, in the given order.
    MetricSpace subspace(std::span<const std::size_t> idx) const {
        std::vector<std::string> labels;
        std::vector<Rational> flat;
        flat.reserve(idx.size() * idx.size());
        for (auto i : idx) {
            check_index(i);
            labels.push_back(labels_[i]);
        }
        for (auto i : idx)
            for (auto j : idx) flat.push_back((*this)(i, j));
        return from_flat(std::move(labels), std::move(flat), diam_bound_);
    }

    friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
        return a.labels_ == b.labels_ && a.d_ == b.d_ && a.diam_bound_ == b.diam_bound_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<Rational> d_;
    Rational diam_bound_;
};

/// d'(x,y) = min(d(x,y), c); the result carries diam bound c.
inline MetricSpace cap_metric(const MetricSpace& x, const Rational& c) {
    if (c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "cap must be positive");
    std::vector<Rational> flat(x.flat().begin(), x.flat().end());
    for (auto& v : flat) v = min(v, c);
    return MetricSpace::from_flat(x.labels(), std::move(flat), c, ErrorCode::MetricFailure);
}

/// A map domain[i] -> image[i] between point sets of two spaces.
struct PartialIsometry {
    std::vector<std::size_t> domain;
    std::vector<std::size_t> image;
};

/// Returns the first (i, j) position pair in the domain list where the map
/// fails to preserve distance; throws on malformed maps.
inline std::optional<std::pair<std::size_t, std::size_t>> isometry_defect(const MetricSpace& from,
                                                                          const MetricSpace& to,
                                                                          const PartialIsometry& p) {
    if (p.domain.size() != p.image.size())
        throw Error(ErrorCode::LengthMismatch, "domain and image differ in length");
    for (auto i : p.domain) from.check_index(i);
    for (auto i : p.image) to.check_index(i);
    for (std::size_t a = 0; a < p.domain.size(); ++a)
        for (std::size_t b = a + 1; b < p.domain.size(); ++b)
            if (from(p.domain[a], p.domain[b]) != to(p.image[a], p.image[b])) return std::pair{a, b};
    for (std::size_t a = 0; a < p.domain.size(); ++a)
        for (std::size_t b = a + 1; b < p.domain.size(); ++b)
            if (p.domain[a] == p.domain[b]) return std::pair{a, b};
    return std::nullopt;
}

struct Amalgam {
    MetricSpace space;
    std::vector<std::size_t> from_x;  ///< index of each X point in the result
    std::vector<std::size_t> from_y;  ///< index of each Y point in the result
};

/// Free amalgam of X and Y over the glued set: cross distances are the
/// shortest two-leg paths through a glued point, capped at the bound.
inline Amalgam amalgamate(const MetricSpace& x, const MetricSpace& y, const PartialIsometry& glue,
                          const std::optional<Rational>& diam_bound) {
    if (auto defect = isometry_defect(x, y, glue))
        throw Error(ErrorCode::NotIsometry, "glue map does not preserve distances",
                    {glue.domain[defect->first], glue.domain[defect->second]});
    if (glue.domain.empty() && !diam_bound)
        throw Error(ErrorCode::EmptyGlue, "empty glue needs a diameter bound");
    const Rational bound = diam_bound ? *diam_bound : x.diam_bound() + y.diam_bound();
    if (x.diameter() > bound || y.diameter() > bound)
        throw Error(ErrorCode::DiameterExceeded, "factor diameter exceeds the bound");

    std::vector<std::optional<std::size_t>> glued_to_x(y.size());
    for (std::size_t a = 0; a < glue.domain.size(); ++a) glued_to_x[glue.image[a]] = glue.domain[a];

    Amalgam out;
    std::vector<std::string> labels = x.labels();
    for (std::size_t i = 0; i < x.size(); ++i) out.from_x.push_back(i);
    std::vector<std::size_t> fresh;
    out.from_y.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (glued_to_x[j]) {
            out.from_y[j] = *glued_to_x[j];
            continue;
        }
        out.from_y[j] = labels.size();
        std::string label = y.labels()[j];
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) label += "_Y";
        labels.push_back(std::move(label));
        fresh.push_back(j);
    }

    const std::size_t n = labels.size();
    std::vector<Rational> flat(n * n);
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return flat[i * n + j]; };
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) at(i, j) = x(i, j);
    for (std::size_t a = 0; a < fresh.size(); ++a)
        for (std::size_t b = 0; b < fresh.size(); ++b)
            at(x.size() + a, x.size() + b) = y(fresh[a], fresh[b]);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            Rational best = bound;
            for (std::size_t g = 0; g < glue.domain.size(); ++g)
                best = min(best, x(i, glue.domain[g]) + y(glue.image[g], fresh[a]));
            at(i, x.size() + a) = best;
            at(x.size() + a, i) = best;
        }
    }
    out.space = MetricSpace::from_flat(std::move(labels), std::move(flat), bound, ErrorCode::MetricFailure);
    return out;
}

}  // namespace mslab
