#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/katetov.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/rational.hpp"
#include "mslab/report.hpp"

namespace mslab {

/// Continuous piecewise-linear h on [0, inf): linear between breakpoints,
/// then slope `tail_slope` after the last one.
struct RadialProfile {
    std::vector<Rational> breakpoints;
    std::vector<Rational> values;
    Rational tail_slope;

    void validate() const {
        if (breakpoints.empty() || !breakpoints.front().is_zero())
            throw Error(ErrorCode::InvalidProfile, "breakpoints must start at 0");
        if (values.size() != breakpoints.size())
            throw Error(ErrorCode::InvalidProfile, "one value per breakpoint");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                throw Error(ErrorCode::InvalidProfile, "breakpoints must be strictly increasing");
    }

    Rational operator()(const Rational& r) const {
        if (r.sign() < 0) throw Error(ErrorCode::InvalidArgument, "profile evaluated at a negative radius");
        auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
        const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
        if (k + 1 == breakpoints.size()) return values[k] + tail_slope * (r - breakpoints[k]);
        const Rational s = (values[k + 1] - values[k]) / (breakpoints[k + 1] - breakpoints[k]);
        return values[k] + s * (r - breakpoints[k]);
    }

    /// Segment slopes followed by the tail slope.
    std::vector<Rational> slopes() const {
        std::vector<Rational> s;
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            s.push_back((values[i] - values[i - 1]) / (breakpoints[i] - breakpoints[i - 1]));
        s.push_back(tail_slope);
        return s;
    }

    friend bool operator==(const RadialProfile&, const RadialProfile&) = default;
};

namespace profiles {

/// max{1, r}
inline RadialProfile gurarij_h() { return {{0, 1}, {1, 1}, 1}; }
/// r + (1 - 2r) on [0, 1/2]: 1 - r, then r
inline RadialProfile gurarij_h_prime() { return {{0, Rational(1, 2)}, {1, Rational(1, 2)}, 1}; }
/// 1 + r
inline RadialProfile ball_h1() { return {{0}, {1}, 1}; }
/// 1 + r on [0,1), 2 on [1,2), r after
inline RadialProfile ball_h2() { return {{0, 1, 2}, {1, 2, 2}, 1}; }
/// max(1 + r/2, r + 1/2)
inline RadialProfile corrected_h1() { return {{0, 1}, {1, Rational(3, 2)}, 1}; }
/// max(1 + r/2, r)
inline RadialProfile corrected_h2() { return {{0, 2}, {1, 2}, 1}; }

inline std::optional<RadialProfile> builtin(const std::string& name) {
    if (name == "gurarij-h") return gurarij_h();
    if (name == "gurarij-h-prime") return gurarij_h_prime();
    if (name == "ball-h1") return ball_h1();
    if (name == "ball-h2") return ball_h2();
    if (name == "corrected-h1") return corrected_h1();
    if (name == "corrected-h2") return corrected_h2();
    return std::nullopt;
}

inline std::vector<std::string> builtin_names() {
    return {"gurarij-h", "gurarij-h-prime", "ball-h1", "ball-h2", "corrected-h1", "corrected-h2"};
}

}  // namespace profiles

struct ConvexityWitness {
    Rational left, mid, right;
    Rational gap;  ///< h(mid) - (h(left) + h(right)) / 2, positive
};

struct ProfileFlags {
    bool lipschitz1 = false;
    bool nondecreasing = false;
    bool convex = false;
    bool convex_midpoint = false;  ///< independent midpoint scan, must agree with `convex`
    bool dominates_identity = false;
    bool katetov_radial = false;
    Rational value_at_0;
    std::optional<ConvexityWitness> convexity_witness;
    std::optional<Rational> first_decrease;    ///< left end of the first decreasing piece
    std::optional<Rational> first_steep;       ///< left end of the first piece with |slope| > 1
    std::optional<Rational> below_identity;    ///< a breakpoint with h(b) < b, or the last one when the tail slope is < 1

    bool unit_at_0() const { return value_at_0 == Rational(1); }
    bool all() const {
        return lipschitz1 && nondecreasing && convex && unit_at_0() && dominates_identity && katetov_radial;
    }
};

/// Flags of h read off its slopes and breakpoint values. The tail is part
/// of the profile, so its slope always counts; `horizon` only bounds the
/// midpoint window at the last breakpoint.
inline ProfileFlags radial_profile_flags(const RadialProfile& h, const Rational& horizon) {
    h.validate();
    const auto& b = h.breakpoints;
    if (horizon < b.back()) throw Error(ErrorCode::InvalidArgument, "horizon is before the last breakpoint");
    const auto s = h.slopes();

    ProfileFlags f;
    f.value_at_0 = h.values.front();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k].sign() < 0 && !f.first_decrease) f.first_decrease = b[k];
        if (abs(s[k]) > Rational(1) && !f.first_steep) f.first_steep = b[k];
    }
    f.nondecreasing = !f.first_decrease;
    f.lipschitz1 = !f.first_steep;

    f.convex = true;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] < s[k - 1]) {
            f.convex = false;
            const Rational left_len = b[k] - b[k - 1];
            Rational right_len = k + 1 < b.size() ? b[k + 1] - b[k] : (horizon > b[k] ? horizon - b[k] : left_len);
            const Rational delta = min(left_len, right_len) / Rational(2);
            const Rational l = b[k] - delta, r = b[k] + delta;
            f.convexity_witness = ConvexityWitness{l, b[k], r, h(b[k]) - (h(l) + h(r)) / Rational(2)};
            break;
        }

    // midpoint scan over every breakpoint with a symmetric window inside the
    // neighbouring pieces
    f.convex_midpoint = true;
    for (std::size_t k = 1; k < b.size(); ++k) {
        const Rational left_len = b[k] - b[k - 1];
        Rational right_len = k + 1 < b.size() ? b[k + 1] - b[k] : (horizon > b[k] ? horizon - b[k] : left_len);
        const Rational delta = min(left_len, right_len) / Rational(2);
        if (h(b[k]) > (h(b[k] - delta) + h(b[k] + delta)) / Rational(2)) {
            f.convex_midpoint = false;
            break;
        }
    }

    for (std::size_t k = 0; k < b.size() && !f.below_identity; ++k)
        if (h.values[k] < b[k]) f.below_identity = b[k];
    if (!f.below_identity && h.tail_slope < Rational(1)) f.below_identity = b.back();
    f.dominates_identity = !f.below_identity;
    f.katetov_radial = f.lipschitz1 && f.dominates_identity;
    return f;
}

inline json to_json(const ProfileFlags& f) {
    json j{{"lipschitz1", f.lipschitz1},
           {"nondecreasing", f.nondecreasing},
           {"convex", f.convex},
           {"convex_midpoint_scan", f.convex_midpoint},
           {"value_at_0", f.value_at_0.str()},
           {"dominates_identity", f.dominates_identity},
           {"katetov_radial", f.katetov_radial}};
    if (f.convexity_witness) {
        const auto& w = *f.convexity_witness;
        j["convexity_witness"] = {{"triple", {w.left.str(), w.mid.str(), w.right.str()}}, {"gap", w.gap.str()}};
    }
    if (f.first_decrease) j["first_decrease"] = f.first_decrease->str();
    if (f.first_steep) j["first_steep"] = f.first_steep->str();
    if (f.below_identity) j["below_identity"] = f.below_identity->str();
    return j;
}

/// Report form: passes iff every flag holds and h(0) = 1.
inline WitnessReport radial_profile_check(const RadialProfile& h, const Rational& horizon) {
    const ProfileFlags f = radial_profile_flags(h, horizon);
    WitnessReport rep;
    rep.check = "profile.check";
    rep.params = {{"horizon", horizon.str()}, {"breakpoints", h.breakpoints.size()}};
    rep.result = to_json(f);
    if (!f.all()) rep.fail(*rep.result);
    return rep;
}

struct ProfileAgreement {
    bool agree = true;
    std::optional<Rational> first_difference;  ///< leftmost checked point where the values differ
    std::optional<Rational> last_agreement;    ///< the checked point just before it, if any
    Rational gap;                              ///< h1 - h2 at first_difference
};

/// Exact comparison on [lo, hi]: both profiles are linear between the merged
/// breakpoints, so equality at those points decides equality on the interval.
inline ProfileAgreement profiles_agree_on(const RadialProfile& h1, const RadialProfile& h2, const Rational& lo,
                                          const Rational& hi) {
    h1.validate();
    h2.validate();
    if (lo.sign() < 0 || hi < lo) throw Error(ErrorCode::InvalidArgument, "need 0 <= lo <= hi");
    std::vector<Rational> pts{lo, hi};
    for (const auto* h : {&h1, &h2})
        for (const auto& r : h->breakpoints)
            if (lo < r && r < hi) pts.push_back(r);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ProfileAgreement out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Rational g = h1(pts[i]) - h2(pts[i]);
        if (!g.is_zero()) {
            out.agree = false;
            out.first_difference = pts[i];
            if (i > 0) out.last_agreement = pts[i - 1];
            out.gap = g;
            break;
        }
    }
    return out;
}

inline WitnessReport profiles_agree_report(const RadialProfile& h1, const RadialProfile& h2, const Rational& lo,
                                           const Rational& hi) {
    const auto a = profiles_agree_on(h1, h2, lo, hi);
    WitnessReport rep;
    rep.check = "profile.agree";
    rep.params = {{"lo", lo.str()}, {"hi", hi.str()}};
    json r{{"agree", a.agree}};
    if (a.first_difference) {
        r["first_difference"] = a.first_difference->str();
        r["h1"] = h1(*a.first_difference).str();
        r["h2"] = h2(*a.first_difference).str();
        r["gap"] = a.gap.str();
        if (a.last_agreement) r["last_agreement"] = a.last_agreement->str();
        rep.fail(r);
    }
    rep.result = r;
    return rep;
}

enum class SampleNorm { L1, LInf };

inline Rational vector_norm(std::span<const Rational> v, SampleNorm n) {
    Rational out;
    for (const auto& x : v) out = n == SampleNorm::L1 ? out + abs(x) : max(out, abs(x));
    return out;
}

/// The finite normed-space sample `points` (distinct) as a metric space,
/// together with xi(v) = h(‖v‖). The diameter bound is large enough to admit
/// every value of xi.
struct RadialSample {
    MetricSpace space;
    std::vector<Rational> xi;
};

inline RadialSample radial_sample(const RadialProfile& h, const std::vector<std::vector<Rational>>& points,
                                  SampleNorm norm) {
    const std::size_t n = points.size();
    Matrix m(n, std::vector<Rational>(n));
    Rational bound(1);
    std::vector<Rational> xi;
    for (std::size_t i = 0; i < n; ++i) {
        xi.push_back(h(vector_norm(points[i], norm)));
        bound = max(bound, xi.back());
        for (std::size_t j = 0; j < n; ++j) {
            if (points[i].size() != points[j].size())
                throw Error(ErrorCode::DimensionMismatch, "sample points differ in dimension");
            std::vector<Rational> d(points[i].size());
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[j][k];
            m[i][j] = vector_norm(d, norm);
            bound = max(bound, m[i][j]);
        }
    }
    return {MetricSpace::make({}, std::move(m), bound), std::move(xi)};
}

}  // namespace mslab
