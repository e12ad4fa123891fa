#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/katetov.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/rational.hpp"
#include "mslab/report.hpp"

namespace mslab {

/// Which distance prescription the extension witnesses use.
///
/// `Amalgam` is the capped shortest-path (free amalgam) metric. `Literal`
/// applies the textbook formulas as written; those can violate the
/// triangle inequality, in which case the operation throws MetricFailure.
/// On every input where the literal formula yields a metric both readings
/// coincide.
enum class ExtensionReading { Amalgam, Literal };

namespace detail {

inline void require_distinct(const MetricSpace& x, std::span<const std::size_t> idx) {
    std::set<std::size_t> seen;
    for (auto i : idx) {
        x.check_index(i);
        if (!seen.insert(i).second) throw Error(ErrorCode::IndexClash, "index " + std::to_string(i) + " repeated", {i});
    }
}

inline MetricSpace extend_with_profiles(const MetricSpace& x, const std::vector<std::vector<Rational>>& cross,
                                        const std::vector<std::vector<Rational>>& among,
                                        const std::vector<std::string>& new_labels, const Rational& bound) {
    const std::size_t n = x.size(), k = cross.size(), m = n + k;
    std::vector<Rational> flat(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) flat[i * m + j] = x(i, j);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            flat[i * m + n + a] = cross[a][i];
            flat[(n + a) * m + i] = cross[a][i];
        }
        for (std::size_t b = 0; b < k; ++b) flat[(n + a) * m + n + b] = among[a][b];
    }
    auto labels = x.labels();
    labels.insert(labels.end(), new_labels.begin(), new_labels.end());
    return MetricSpace::from_flat(std::move(labels), std::move(flat), bound, ErrorCode::MetricFailure);
}

}  // namespace detail

struct MARequest {
    SpacePtr space;
    std::vector<std::size_t> F;
    std::size_t x = 0;
    std::size_t y = 0;
    Rational delta;
};

/// The space F + {x} plus a point y' with d(y',x) = delta and
/// d(y',z) = d(y,z) for z in F. Points appear in the order F, x, y'.
inline Extension ma_extension(const MARequest& req) {
    const MetricSpace& X = *req.space;
    X.check_index(req.x);
    X.check_index(req.y);
    detail::require_distinct(X, req.F);
    if (req.x == req.y) throw Error(ErrorCode::IndexClash, "x and y coincide", {req.x});
    if (std::find(req.F.begin(), req.F.end(), req.y) != req.F.end())
        throw Error(ErrorCode::IndexClash, "y belongs to F", {req.y});
    if (req.delta.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
    if (req.delta >= X.diam_bound()) throw Error(ErrorCode::DiameterExceeded, "delta must be below the diam bound");
    for (auto z : req.F)
        if (abs(X(req.x, z) - X(req.y, z)) >= req.delta)
            throw Error(ErrorCode::PreconditionA, "|d(x,z)-d(y,z)| >= delta at z=" + std::to_string(z), {z});
    for (auto z : req.F)
        if (req.delta > X(req.x, z) + X(req.y, z))
            throw Error(ErrorCode::PreconditionB, "delta > d(x,z)+d(y,z) at z=" + std::to_string(z), {z});

    std::vector<std::size_t> kept = req.F;
    kept.push_back(req.x);
    MetricSpace base = X.subspace(kept);
    std::vector<Rational> profile;
    for (auto z : req.F) profile.push_back(X(req.y, z));
    profile.push_back(req.delta);
    return {detail::extend_with_profiles(base, {profile}, {{Rational(0)}}, {X.labels()[req.y] + "'"}, X.diam_bound()),
            kept.size()};
}

struct UwmtExtension {
    MetricSpace space;
    std::vector<std::size_t> primes;  ///< index of z'_j for each z_j in Z
};

/// Adds a copy z'_j of each z_j so that {x} + Z maps isometrically onto
/// {y} + Z' with every z_j moved by at most d(x,y). Existing distances are
/// untouched.
inline UwmtExtension uwmt_extension(const MetricSpace& X, std::size_t x, std::size_t y,
                                    const std::vector<std::size_t>& Z,
                                    ExtensionReading reading = ExtensionReading::Amalgam) {
    std::vector<std::size_t> all{x, y};
    all.insert(all.end(), Z.begin(), Z.end());
    detail::require_distinct(X, all);
    const Rational& bound = X.diam_bound();
    const Rational t = X(x, y);
    std::vector<bool> in_k(X.size(), false);
    in_k[x] = true;
    for (auto z : Z) in_k[z] = true;

    std::vector<std::vector<Rational>> cross, among;
    std::vector<std::string> labels;
    for (auto zj : Z) {
        std::vector<Rational> col(X.size());
        for (std::size_t u = 0; u < X.size(); ++u) {
            if (u == y) {
                col[u] = X(x, zj);
            } else if (reading == ExtensionReading::Literal && in_k[u]) {
                col[u] = min(X(u, zj) + t, bound);
            } else {
                col[u] = min(bound, min(X(u, zj) + t, X(u, y) + X(x, zj)));
            }
        }
        cross.push_back(std::move(col));
        std::vector<Rational> row;
        for (auto zk : Z) row.push_back(X(zj, zk));
        among.push_back(std::move(row));
        labels.push_back(X.labels()[zj] + "'");
    }
    UwmtExtension out{detail::extend_with_profiles(X, cross, among, labels, bound), {}};
    for (std::size_t j = 0; j < Z.size(); ++j) out.primes.push_back(X.size() + j);
    return out;
}

/// Pairs x_i -> y_i forming a partial isometry moving each point by at most epsilon.
struct BFState {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    Rational epsilon;
};

inline void check_bf_state(const MetricSpace& X, const BFState& st) {
    if (st.pairs.empty()) throw Error(ErrorCode::EmptyState, "no pairs");
    if (st.epsilon.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    PartialIsometry p;
    for (auto [a, b] : st.pairs) {
        p.domain.push_back(a);
        p.image.push_back(b);
    }
    if (auto defect = isometry_defect(X, X, p))
        throw Error(ErrorCode::NotIsometry, "pairs do not form a partial isometry",
                    {p.domain[defect->first], p.domain[defect->second]});
    for (auto [a, b] : st.pairs)
        if (X(a, b) > st.epsilon)
            throw Error(ErrorCode::InvalidArgument, "d(x_i,y_i) exceeds epsilon at x_i=" + std::to_string(a), {a, b});
}

/// Distances from the new point z' to every point of F = {x_i, y_i, z}:
/// d(z',y_i) = d(z,x_i), d(z',x_i) = min(diam, min_j d(z,x_j)+d(y_j,x_i))
/// and d(z',z) = min(eps, min_j d(z,x_j)+d(y_j,z)). The literal reading
/// uses only the j = i term for d(z',x_i).
inline std::map<std::size_t, Rational> prop53_profile(const MetricSpace& X, const BFState& st, std::size_t z,
                                                      ExtensionReading reading = ExtensionReading::Amalgam) {
    check_bf_state(X, st);
    X.check_index(z);
    for (auto [a, b] : st.pairs)
        if (a == z) throw Error(ErrorCode::IndexClash, "z is already in the domain", {z});
    std::map<std::size_t, Rational> prof;
    for (auto [a, b] : st.pairs) prof[b] = X(z, a);
    for (auto [a, b] : st.pairs) {
        if (prof.count(a)) continue;
        Rational v = X.diam_bound();
        if (reading == ExtensionReading::Literal) {
            v = min(v, X(z, a) + X(a, b));
        } else {
            for (auto [aj, bj] : st.pairs) v = min(v, X(z, aj) + X(bj, a));
        }
        prof[a] = v;
    }
    if (!prof.count(z)) {
        Rational v = st.epsilon;
        for (auto [aj, bj] : st.pairs) v = min(v, X(z, aj) + X(bj, z));
        prof[z] = v;
    }
    return prof;
}

/// Adds z' to X: the profile above on F, free amalgam over F elsewhere.
inline Extension prop53_extension(const MetricSpace& X, const BFState& st, std::size_t z,
                                  ExtensionReading reading = ExtensionReading::Amalgam) {
    auto prof = prop53_profile(X, st, z, reading);
    std::vector<Rational> col(X.size());
    for (std::size_t u = 0; u < X.size(); ++u) {
        if (auto it = prof.find(u); it != prof.end()) {
            col[u] = it->second;
            continue;
        }
        Rational v = X.diam_bound();
        for (const auto& [f, pv] : prof) v = min(v, pv + X(f, u));
        col[u] = v;
    }
    auto space = detail::extend_with_profiles(X, {col}, {{Rational(0)}}, {X.labels()[z] + "'"}, X.diam_bound());
    return {std::move(space), X.size()};
}

/// n + 1 points, n = ceil(s/r) (2 when s < r), with consecutive gaps r and endpoint gap s: the
/// shortest-path metric of the cycle with n edges of length r closed by
/// one edge of length s, capped at the diam bound.
inline MetricSpace injectivity_chain(const Rational& r, const Rational& s, const Rational& diam_bound) {
    if (r.sign() <= 0 || r > diam_bound) throw Error(ErrorCode::InvalidArgument, "need 0 < r <= diam");
    if (s.sign() <= 0 || s > diam_bound) throw Error(ErrorCode::InvalidArgument, "need 0 < s <= diam");
    mpz_class q;
    Rational ratio = s / r;
    mpz_cdiv_q(q.get_mpz_t(), ratio.raw().get_num_mpz_t(), ratio.raw().get_den_mpz_t());
    // s < r would leave a single edge carrying both r and s; a triangle
    // r, r, s keeps both distances exact
    const std::size_t n = s < r ? 2 : q.get_ui();
    const std::size_t m = n + 1;
    std::vector<Rational> flat(m * m);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Rational direct = r * Rational(static_cast<long>(j - i));
            Rational around = s + r * Rational(static_cast<long>(i + n - j));
            Rational v = min(diam_bound, min(direct, around));
            flat[i * m + j] = v;
            flat[j * m + i] = v;
        }
    return MetricSpace::from_flat(std::move(labels), std::move(flat), diam_bound, ErrorCode::MetricFailure);
}

/// A point y with d(x,y) = lambda and d(y,z) = max(lambda, d(x,z)) for z in
/// Z. The output keeps only x, Z (in that order) and y.
inline Extension nonproper_witness(const MetricSpace& X, std::size_t x, const std::vector<std::size_t>& Z,
                                   const Rational& lambda) {
    std::vector<std::size_t> kept{x};
    kept.insert(kept.end(), Z.begin(), Z.end());
    detail::require_distinct(X, kept);
    if (lambda.sign() <= 0 || lambda >= X.diam_bound())
        throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie strictly between 0 and the diam bound");
    MetricSpace base = X.subspace(kept);
    std::vector<Rational> profile{lambda};
    for (auto z : Z) profile.push_back(max(lambda, X(x, z)));
    return {detail::extend_with_profiles(base, {profile}, {{Rational(0)}}, {"y"}, X.diam_bound()), kept.size()};
}

/// One realization made by a Fraisse step.
struct Realization {
    std::size_t round = 0;
    std::vector<std::size_t> subset;
    std::vector<std::int64_t> values;  ///< in units of 1/denom
    std::size_t point = 0;
};

/// Finite approximant of the rational Urysohn space. Distances are kept as
/// integers in units of 1/denom, which is exact because every distance is
/// a multiple of 1/denom.
class Approximant {
public:
    static Approximant seed(const MetricSpace& x, std::int64_t denom, std::size_t subset_bound) {
        if (denom < 1) throw Error(ErrorCode::DenominatorMismatch, "denominator must be positive");
        Approximant a;
        a.denom_ = denom;
        a.subset_bound_ = subset_bound;
        a.diam_bound_ = x.diam_bound();
        a.top_ = detail::require_units(x.diam_bound(), denom);
        a.labels_ = x.labels();
        a.rows_.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) a.rows_[i].push_back(detail::require_units(x(i, j), denom));
        a.round_sizes_.push_back(x.size());
        return a;
    }

    /// Rebuilds from serialized parts; every distance is re-validated.
    static Approximant restore(const MetricSpace& x, std::int64_t denom, std::size_t subset_bound,
                               std::vector<std::size_t> round_sizes, std::vector<Realization> log) {
        Approximant a = seed(x, denom, subset_bound);
        if (round_sizes.empty() || round_sizes.back() != x.size() ||
            !std::is_sorted(round_sizes.begin(), round_sizes.end()))
            throw Error(ErrorCode::InvalidArgument, "round sizes inconsistent with the point count");
        a.round_sizes_ = std::move(round_sizes);
        a.log_ = std::move(log);
        return a;
    }

    std::size_t size() const { return rows_.size(); }
    std::int64_t denom() const { return denom_; }
    std::size_t subset_bound() const { return subset_bound_; }
    std::size_t rounds() const { return round_sizes_.size() - 1; }
    const Rational& diam_bound() const { return diam_bound_; }
    std::int64_t top() const { return top_; }
    std::int64_t units(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<std::size_t>& round_sizes() const { return round_sizes_; }
    const std::vector<Realization>& log() const { return log_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Indices of the points present after round r (round 0 is the seed).
    std::vector<std::size_t> snapshot(std::size_t round) const {
        if (round >= round_sizes_.size()) throw Error(ErrorCode::InvalidArgument, "no such round");
        std::vector<std::size_t> idx(round_sizes_[round]);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return idx;
    }

    Rational distance(std::size_t i, std::size_t j) const { return Rational(rows_[i][j], denom_); }

    MetricSpace subspace(std::span<const std::size_t> idx) const {
        std::vector<std::string> labels;
        std::vector<Rational> flat;
        for (auto i : idx) {
            if (i >= size()) throw Error(ErrorCode::IndexOutOfRange, "point " + std::to_string(i), {i});
            labels.push_back(labels_[i]);
        }
        for (auto i : idx)
            for (auto j : idx) flat.push_back(distance(i, j));
        return MetricSpace::from_flat(std::move(labels), std::move(flat), diam_bound_);
    }

    MetricSpace to_metric_space() const {
        std::vector<std::size_t> all(size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return subspace(all);
    }

    /// First point whose distances to `subset` equal `values` (grid units), if any.
    std::optional<std::size_t> find_realizer(std::span<const std::size_t> subset,
                                             std::span<const std::int64_t> values) const {
        for (std::size_t p = 0; p < size(); ++p) {
            const auto& row = rows_[p];
            bool ok = true;
            for (std::size_t s = 0; s < subset.size() && ok; ++s) ok = row[subset[s]] == values[s];
            if (ok) return p;
        }
        return std::nullopt;
    }

private:
    friend Approximant fraisse_step(const Approximant& a, std::size_t budget);

    /// Appends a point; the profile must be Katetov over the whole space
    /// (checked here in O(n^2) integer arithmetic).
    void append(const std::vector<std::int64_t>& profile) {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            if (profile[i] <= 0 || profile[i] > top_)
                throw Error(ErrorCode::MetricFailure, "new point distance out of range", {i, n});
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::int64_t d = rows_[i][j];
                if (std::abs(profile[i] - profile[j]) > d || d > profile[i] + profile[j])
                    throw Error(ErrorCode::MetricFailure, "new point breaks a triangle", {i, j, n});
            }
        }
        for (std::size_t i = 0; i < n; ++i) rows_[i].push_back(profile[i]);
        rows_.push_back(profile);
        rows_.back().push_back(0);
        labels_.push_back("u" + std::to_string(n));
    }

    std::int64_t denom_ = 1;
    std::size_t subset_bound_ = 0;
    Rational diam_bound_;
    std::int64_t top_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<std::size_t> round_sizes_;
    std::vector<Realization> log_;
};

namespace detail {

/// Visits the nonempty subsets of {0..n-1} of size <= bound in
/// lexicographic order of their sorted index lists.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t bound, Visit&& visit) {
    if (bound == 0) return;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            visit(std::span<const std::size_t>(cur));
            if (cur.size() < bound) self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace detail

inline constexpr std::size_t kDefaultBudget = 5000;

/// One saturation round: every grid Katetov function over every subset of
/// the current points of size <= subset_bound is realized, new points
/// being glued in by the free amalgam formula capped at the diam bound.
inline Approximant fraisse_step(const Approximant& a, std::size_t budget = kDefaultBudget) {
    Approximant out = a;
    const std::size_t n0 = a.size();
    const std::size_t round = a.rounds() + 1;
    std::vector<std::int64_t> values;
    detail::for_each_subset(n0, a.subset_bound(), [&](std::span<const std::size_t> subset) {
        const std::size_t k = subset.size();
        std::vector<std::int64_t> dist(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) dist[i * k + j] = out.units(subset[i], subset[j]);
        detail::GridKatetovEnumerator grid(std::move(dist), k, out.top());
        while (grid.next(values)) {
            if (out.find_realizer(subset, values)) continue;
            if (out.size() + 1 > budget)
                throw Error(ErrorCode::BudgetExceeded, "point budget " + std::to_string(budget) + " reached");
            std::vector<std::int64_t> profile(out.size());
            for (std::size_t q = 0; q < out.size(); ++q) {
                std::int64_t v = out.top();
                for (std::size_t s = 0; s < k; ++s) v = std::min(v, values[s] + out.units(subset[s], q));
                profile[q] = v;
            }
            out.append(profile);
            out.log_.push_back({round, std::vector<std::size_t>(subset.begin(), subset.end()), values, out.size() - 1});
        }
    });
    out.round_sizes_.push_back(out.size());
    return out;
}

/// Checks that every Katetov function on the 1/denom grid over every
/// subset of `over` with at most k points is realized by a current point.
inline WitnessReport finite_injectivity_check(const Approximant& a, std::span<const std::size_t> over, std::size_t k,
                                              std::int64_t denom) {
    WitnessReport rep;
    rep.check = "urysohn.finite_injectivity";
    rep.params = {{"snapshot_size", over.size()}, {"k", k}, {"denom", denom}, {"points", a.size()}};
    if (denom < 1) throw Error(ErrorCode::DenominatorMismatch, "denominator must be positive");
    for (auto i : over)
        if (i >= a.size()) throw Error(ErrorCode::InvalidArgument, "snapshot is not a subset of the points");
    const std::int64_t top = detail::require_units(a.diam_bound(), denom);
    std::int64_t subsets = 0, functions = 0;
    std::optional<json> witness;
    std::vector<std::int64_t> values;
    std::vector<std::size_t> subset_idx;
    detail::for_each_subset(over.size(), k, [&](std::span<const std::size_t> pos) {
        if (witness) return;
        ++subsets;
        subset_idx.clear();
        for (auto p : pos) subset_idx.push_back(over[p]);
        const std::size_t m = subset_idx.size();
        std::vector<std::int64_t> dist(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                dist[i * m + j] = detail::require_units(a.distance(subset_idx[i], subset_idx[j]), denom);
        detail::GridKatetovEnumerator grid(std::move(dist), m, top);
        while (grid.next(values)) {
            ++functions;
            bool found = false;
            for (std::size_t p = 0; p < a.size() && !found; ++p) {
                bool ok = true;
                for (std::size_t s = 0; s < m && ok; ++s)
                    ok = values[s] * a.denom() == a.units(p, subset_idx[s]) * denom;
                found = ok;
            }
            if (!found) {
                json vals = json::array();
                for (auto v : values) vals.push_back(Rational(v, denom).str());
                witness = json{{"subset", subset_idx}, {"values", vals}};
                return;
            }
        }
    });
    rep.counts["subsets"] = subsets;
    rep.counts["functions"] = functions;
    if (witness) rep.fail(*witness);
    return rep;
}

/// Extends the partial isometry to z: computes the target profile of z'
/// and looks for an existing point realizing it exactly.
inline BFState back_and_forth_extend(const Approximant& a, const BFState& st, std::size_t z,
                                     ExtensionReading reading = ExtensionReading::Amalgam) {
    if (z >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "point " + std::to_string(z), {z});
    std::vector<std::size_t> involved;
    for (auto [x, y] : st.pairs) {
        involved.push_back(x);
        involved.push_back(y);
    }
    involved.push_back(z);
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    MetricSpace local = a.subspace(involved);
    auto local_index = [&](std::size_t g) {
        return static_cast<std::size_t>(std::lower_bound(involved.begin(), involved.end(), g) - involved.begin());
    };
    BFState local_st{{}, st.epsilon};
    for (auto [x, y] : st.pairs) local_st.pairs.emplace_back(local_index(x), local_index(y));
    auto prof = prop53_profile(local, local_st, local_index(z), reading);

    std::vector<std::size_t> subset;
    std::vector<std::int64_t> values;
    for (const auto& [li, v] : prof) {
        subset.push_back(involved[li]);
        auto u = v.units(a.denom());
        if (!u) throw Error(ErrorCode::Unsaturated, "target distance " + v.str() + " is off the grid");
        values.push_back(*u);
    }
    auto found = a.find_realizer(subset, values);
    if (!found) throw Error(ErrorCode::Unsaturated, "no point realizes the target profile of z'", {z});

    BFState out = st;
    out.pairs.emplace_back(z, *found);
    std::vector<std::size_t> dom, img;
    for (auto [x, y] : out.pairs) {
        dom.push_back(x);
        img.push_back(y);
    }
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = 0; j < dom.size(); ++j)
            if (a.units(dom[i], dom[j]) != a.units(img[i], img[j]))
                throw Error(ErrorCode::MetricFailure, "extended map is not isometric", {dom[i], dom[j]});
        if (a.distance(dom[i], img[i]) > st.epsilon)
            throw Error(ErrorCode::MetricFailure, "displacement exceeds epsilon", {dom[i], img[i]});
    }
    return out;
}

}  // namespace mslab
