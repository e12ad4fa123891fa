#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/random.hpp"
#include "mslab/rational.hpp"
#include "mslab/report.hpp"

namespace mslab {

namespace detail {

inline void check_breaks(const std::vector<Rational>& breaks, const Rational& end, const char* what) {
    if (breaks.size() < 2 || !breaks.front().is_zero() || breaks.back() != end)
        throw Error(ErrorCode::InvalidStepFunction, std::string(what) + " must run from 0 to " + end.str());
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i - 1] < breaks[i]))
            throw Error(ErrorCode::InvalidStepFunction, std::string(what) + " must be strictly increasing");
}

inline std::vector<Rational> merge_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Index of the cell of `breaks` containing the open interval (lo, hi).
inline std::size_t cell_of(const std::vector<Rational>& breaks, const Rational& lo) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
    return static_cast<std::size_t>(it - breaks.begin()) - 1;
}

}  // namespace detail

/// Step function on [0,1].
struct StepFn1D {
    std::vector<Rational> breaks;
    std::vector<Rational> values;  ///< one per cell

    void validate() const {
        detail::check_breaks(breaks, Rational(1), "breaks");
        if (values.size() + 1 != breaks.size())
            throw Error(ErrorCode::InvalidStepFunction, "need one value per cell");
    }
    const Rational& on_cell(const Rational& lo) const { return values[detail::cell_of(breaks, lo)]; }
};

/// Step function on [0,2] x [0,1]; values[i][j] is the value on
/// x-cell i times y-cell j.
struct StepFn2D {
    std::vector<Rational> x_breaks;
    std::vector<Rational> y_breaks;
    Matrix values;

    void validate() const {
        detail::check_breaks(x_breaks, Rational(2), "x_breaks");
        detail::check_breaks(y_breaks, Rational(1), "y_breaks");
        if (values.size() + 1 != x_breaks.size())
            throw Error(ErrorCode::InvalidStepFunction, "need one value row per x-cell");
        for (const auto& row : values)
            if (row.size() + 1 != y_breaks.size())
                throw Error(ErrorCode::InvalidStepFunction, "need one value per y-cell");
    }

    const Rational& on_cell(const Rational& x_lo, const Rational& y_lo) const {
        return values[detail::cell_of(x_breaks, x_lo)][detail::cell_of(y_breaks, y_lo)];
    }

    static StepFn2D constant(const Rational& c) {
        return {{Rational(0), Rational(2)}, {Rational(0), Rational(1)}, {{c}}};
    }

    /// Same function on a finer grid containing both break lists.
    StepFn2D refined(const std::vector<Rational>& xb, const std::vector<Rational>& yb) const {
        StepFn2D out{detail::merge_breaks(x_breaks, xb), detail::merge_breaks(y_breaks, yb), {}};
        out.values.assign(out.x_breaks.size() - 1, std::vector<Rational>(out.y_breaks.size() - 1));
        for (std::size_t i = 0; i + 1 < out.x_breaks.size(); ++i)
            for (std::size_t j = 0; j + 1 < out.y_breaks.size(); ++j)
                out.values[i][j] = on_cell(out.x_breaks[i], out.y_breaks[j]);
        return out;
    }

    Rational cell_area(std::size_t i, std::size_t j) const {
        return (x_breaks[i + 1] - x_breaks[i]) * (y_breaks[j + 1] - y_breaks[j]);
    }
};

/// Pointwise a + scale * b on the common refinement.
inline StepFn2D combine(const StepFn2D& a, const StepFn2D& b, const Rational& scale) {
    StepFn2D ra = a.refined(b.x_breaks, b.y_breaks);
    for (std::size_t i = 0; i + 1 < ra.x_breaks.size(); ++i)
        for (std::size_t j = 0; j + 1 < ra.y_breaks.size(); ++j)
            ra.values[i][j] += scale * b.on_cell(ra.x_breaks[i], ra.y_breaks[j]);
    return ra;
}

/// Nonzero |value| and the measure of its cell, one entry per cell.
struct CellMass {
    Rational abs_value;
    Rational area;
};

inline std::vector<CellMass> cell_masses(const StepFn2D& f) {
    f.validate();
    std::vector<CellMass> out;
    for (std::size_t i = 0; i + 1 < f.x_breaks.size(); ++i)
        for (std::size_t j = 0; j + 1 < f.y_breaks.size(); ++j)
            if (!f.values[i][j].is_zero()) out.push_back({abs(f.values[i][j]), f.cell_area(i, j)});
    return out;
}

inline std::vector<CellMass> cell_masses(const StepFn1D& f) {
    f.validate();
    std::vector<CellMass> out;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (!f.values[i].is_zero()) out.push_back({abs(f.values[i]), f.breaks[i + 1] - f.breaks[i]});
    return out;
}

/// Writes a positive rational r as b^k with b > 1 not a perfect power and k
/// an integer; r = 1 gives (1, 0).
inline std::pair<Rational, long> primitive_power(const Rational& r) {
    if (r.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "primitive_power needs a positive rational");
    if (r == Rational(1)) return {Rational(1), 0};
    mpz_class num = r.numerator(), den = r.denominator();
    long sign = 1;
    if (num < den) {
        std::swap(num, den);
        sign = -1;
    }
    const long bits = static_cast<long>(std::max(mpz_sizeinbase(num.get_mpz_t(), 2), mpz_sizeinbase(den.get_mpz_t(), 2)));
    for (long k = bits; k >= 2; --k) {
        mpz_class rn, rd;
        if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k)) &&
            mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k)))
            return {Rational(mpq_class(rn, rd)), sign * k};
    }
    return {Rational(mpq_class(num, den)), sign};
}

/// A norm value: 0, an exact power base^exponent with a canonical base, or
/// a float with a declared tolerance.
class PNormValue {
public:
    enum class Kind { Zero, Exact, Float };

    static PNormValue zero() { return PNormValue(Kind::Zero); }

    /// base^exponent for a positive rational base; normalized so that equal
    /// values have equal (base, exponent).
    static PNormValue power(const Rational& base, const Rational& exponent) {
        auto [b, k] = primitive_power(base);
        PNormValue v(Kind::Exact);
        v.exponent_ = exponent * Rational(k);
        v.base_ = v.exponent_.is_zero() ? Rational(1) : b;
        if (v.base_ == Rational(1)) v.exponent_ = Rational(0);
        return v;
    }

    static PNormValue approx(double value, double tol = 1e-12) {
        PNormValue v(Kind::Float);
        v.float_ = value;
        v.tol_ = tol;
        return v;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ != Kind::Float; }
    const Rational& base() const { return base_; }
    const Rational& exponent() const { return exponent_; }

    double to_double() const {
        switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Exact: return std::pow(base_.to_double(), exponent_.to_double());
        case Kind::Float: return float_;
        }
        return 0.0;
    }

    /// The exponent e with value = base^e, when the value is an exact power of `base`.
    std::optional<Rational> exponent_over(const Rational& base) const {
        if (kind_ != Kind::Exact) return std::nullopt;
        if (base_ == Rational(1)) return Rational(0);
        auto [b, k] = primitive_power(base);
        if (b != base_ || k == 0) return std::nullopt;
        return exponent_ / Rational(k);
    }

    /// Exact comparison of canonical forms; any float operand falls back
    /// to |a - b| <= tol * max(1, |a|).
    friend bool equal(const PNormValue& a, const PNormValue& b) {
        if (a.is_exact() && b.is_exact()) {
            if (a.kind_ != b.kind_) return false;
            return a.kind_ == Kind::Zero || (a.base_ == b.base_ && a.exponent_ == b.exponent_);
        }
        const double tol = std::max(a.kind_ == Kind::Float ? a.tol_ : 0.0, b.kind_ == Kind::Float ? b.tol_ : 0.0);
        const double x = a.to_double(), y = b.to_double();
        return std::fabs(x - y) <= tol * std::max(1.0, std::fabs(x));
    }

    json to_json() const {
        switch (kind_) {
        case Kind::Zero: return {{"kind", "exact"}, {"value", "0"}};
        case Kind::Exact:
            return {{"kind", "exact"}, {"base", base_.str()}, {"exponent", exponent_.str()}, {"approx", to_double()}};
        case Kind::Float: return {{"kind", "float"}, {"value", float_}, {"tol", tol_}};
        }
        return nullptr;
    }

private:
    explicit PNormValue(Kind k) : kind_(k) {}

    Kind kind_;
    Rational base_{1};
    Rational exponent_{0};
    double float_ = 0.0;
    double tol_ = 0.0;
};

/// Integral of |f|^p; exact when p is an integer.
inline std::optional<Rational> p_power_integral_exact(std::span<const CellMass> cells, const Rational& p) {
    if (!p.is_integer() || p.sign() <= 0) return std::nullopt;
    const unsigned long e = p.numerator().get_ui();
    Rational s;
    for (const auto& c : cells) s += c.area * pow(c.abs_value, e);
    return s;
}

inline double p_power_integral_float(std::span<const CellMass> cells, const Rational& p) {
    const double pd = p.to_double();
    double s = 0.0;
    for (const auto& c : cells) s += c.area.to_double() * std::pow(c.abs_value.to_double(), pd);
    return s;
}

namespace detail {

inline PNormValue norm_from_masses(const std::vector<CellMass>& cells, const Rational& p) {
    if (p.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    if (cells.empty()) return PNormValue::zero();
    // single monomial mu * c^p: norm = c * mu^(1/p)
    const bool uniform = std::all_of(cells.begin(), cells.end(),
                                     [&](const CellMass& c) { return c.abs_value == cells.front().abs_value; });
    if (uniform) {
        Rational mu;
        for (const auto& c : cells) mu += c.area;
        auto [bc, kc] = primitive_power(cells.front().abs_value);
        auto [bm, km] = primitive_power(mu);
        if (kc == 0 || km == 0 || bc == bm) {
            const Rational base = kc == 0 ? bm : bc;
            return PNormValue::power(base, Rational(kc) + Rational(km) / p);
        }
    }
    if (auto s = p_power_integral_exact(cells, p)) {
        auto [b, k] = primitive_power(*s);
        return PNormValue::power(b, Rational(k) / p);
    }
    return PNormValue::approx(std::pow(p_power_integral_float(cells, p), 1.0 / p.to_double()));
}

}  // namespace detail

inline PNormValue lp_norm(const StepFn2D& f, const Rational& p) { return detail::norm_from_masses(cell_masses(f), p); }
inline PNormValue lp_norm(const StepFn1D& f, const Rational& p) { return detail::norm_from_masses(cell_masses(f), p); }

/// Integral over [0,2]x[0,1] of x(t1,t2) * z(t1) * 1[t1 <= 1].
inline Rational lp_pairing(const StepFn2D& x, const StepFn1D& z) {
    x.validate();
    z.validate();
    std::vector<Rational> xb = z.breaks;
    StepFn2D r = x.refined(xb, {});
    Rational s;
    for (std::size_t i = 0; i + 1 < r.x_breaks.size(); ++i) {
        if (r.x_breaks[i] >= Rational(1)) break;
        const Rational& zv = z.on_cell(r.x_breaks[i]);
        for (std::size_t j = 0; j + 1 < r.y_breaks.size(); ++j) s += r.cell_area(i, j) * r.values[i][j] * zv;
    }
    return s;
}

/// The two test vectors and the sphere point of the L^p separation
/// argument on [0,2]x[0,1].
struct LpWitnessVectors {
    StepFn2D w;        ///< +1 on [0,1]x[0,1/2], -1 on [0,1]x(1/2,1], 0 on (1,2]x[0,1]
    StepFn2D w_prime;  ///< 1 on (1,2]x[0,1], 0 elsewhere
    StepFn2D v;        ///< indicator of [0,1]x[0,1]
};

inline LpWitnessVectors lp_witness_vectors() {
    const Rational half(1, 2);
    LpWitnessVectors out;
    out.w = {{0, 1, 2}, {0, half, 1}, {{1, -1}, {0, 0}}};
    out.w_prime = {{0, 1, 2}, {0, 1}, {{0}, {1}}};
    out.v = {{0, 1, 2}, {0, 1}, {{1}, {0}}};
    return out;
}

/// Random rational step function on [0,1] with up to `max_cells` cells.
inline StepFn1D random_step_1d(Rng& rng, int max_cells = 6, std::int64_t denom = 12) {
    const std::int64_t cells = rng.uniform(1, max_cells);
    std::vector<std::int64_t> cuts;
    for (std::int64_t i = 0; i < cells - 1; ++i) cuts.push_back(rng.uniform(1, denom - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    StepFn1D f;
    f.breaks.emplace_back(0);
    for (auto c : cuts) f.breaks.emplace_back(c, denom);
    f.breaks.emplace_back(1);
    for (std::size_t i = 0; i + 1 < f.breaks.size(); ++i) f.values.emplace_back(rng.uniform(-20, 20), rng.uniform(1, 9));
    return f;
}

/// Separation of w and w' by the distance to v, and their agreement on
/// every pairing against a step function z supported in [0,1].
inline WitnessReport lp_counterexample(const Rational& p, Rng rng, int samples = 100) {
    if (p.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    const auto vecs = lp_witness_vectors();
    const Rational two(2);
    const PNormValue dist_w = lp_norm(combine(vecs.w, vecs.v, Rational(-1)), p);
    const PNormValue dist_wp = lp_norm(combine(vecs.w_prime, vecs.v, Rational(-1)), p);
    const auto e_w = dist_w.exponent_over(two);
    const auto e_wp = dist_wp.exponent_over(two);

    WitnessReport rep;
    rep.check = "lp.counterexample";
    rep.params = {{"p", p.str()}, {"samples", samples}};
    rep.result = json{{"norm_w", lp_norm(vecs.w, p).to_json()},
                      {"norm_w_prime", lp_norm(vecs.w_prime, p).to_json()},
                      {"dist_w_v", dist_w.to_json()},
                      {"dist_w_prime_v", dist_wp.to_json()},
                      {"exponent_w_v", e_w ? json(e_w->str()) : json(nullptr)},
                      {"exponent_w_prime_v", e_wp ? json(e_wp->str()) : json(nullptr)}};

    std::int64_t zero_pairings = 0;
    std::optional<json> bad_pairing;
    for (int i = 0; i < samples; ++i) {
        StepFn1D z = random_step_1d(rng);
        const Rational a = lp_pairing(vecs.w, z), b = lp_pairing(vecs.w_prime, z);
        if (a.is_zero() && b.is_zero()) {
            ++zero_pairings;
        } else if (!bad_pairing) {
            bad_pairing = json{{"sample", i}, {"pairing_w", a.str()}, {"pairing_w_prime", b.str()}};
        }
    }
    rep.counts["pairings_checked"] = samples;
    rep.counts["pairings_zero"] = zero_pairings;

    if (bad_pairing) {
        rep.fail(json{{"reason", "nonzero pairing"}, {"detail", *bad_pairing}});
    } else if (!e_w || !e_wp) {
        rep.fail(json{{"reason", "distances are not exact powers of 2"}});
    } else if (*e_w == *e_wp) {
        rep.fail(json{{"reason", "not separated: equal exponents (the Hilbert case p = 2)"}, {"exponent", e_w->str()}});
    } else {
        rep.counts["separated"] = true;
    }
    return rep;
}

/// Checks the p-th power identity for parts with pairwise disjoint supports:
///   int |x - sum v_i|^p = sum_i int |x - v_i|^p - (n-1) int |x|^p.
/// Exact for integer p, otherwise within tol relative to max(1, |lhs|).
inline WitnessReport disjoint_support_identity(const StepFn2D& x, const std::vector<StepFn2D>& parts,
                                               const Rational& p, double tol = 1e-12) {
    if (p.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    x.validate();
    StepFn2D grid = x;
    for (const auto& v : parts) {
        v.validate();
        grid = grid.refined(v.x_breaks, v.y_breaks);
    }
    for (std::size_t i = 0; i + 1 < grid.x_breaks.size(); ++i)
        for (std::size_t j = 0; j + 1 < grid.y_breaks.size(); ++j) {
            std::optional<std::size_t> owner;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                if (parts[k].on_cell(grid.x_breaks[i], grid.y_breaks[j]).is_zero()) continue;
                if (owner)
                    throw Error(ErrorCode::OverlappingSupports,
                                "parts " + std::to_string(*owner) + " and " + std::to_string(k) + " overlap",
                                {*owner, k});
                owner = k;
            }
        }

    StepFn2D sum = StepFn2D::constant(Rational(0));
    for (const auto& v : parts) sum = combine(sum, v, Rational(1));
    const auto lhs_cells = cell_masses(combine(x, sum, Rational(-1)));
    std::vector<std::vector<CellMass>> part_cells;
    for (const auto& v : parts) part_cells.push_back(cell_masses(combine(x, v, Rational(-1))));
    const auto x_cells = cell_masses(x);
    const Rational n_minus_1(static_cast<long>(parts.size()) - 1);

    WitnessReport rep;
    rep.check = "lp.disjoint_support_identity";
    rep.params = {{"p", p.str()}, {"parts", parts.size()}, {"tol", tol}};
    rep.caveat = "identity checked on p-th powers; the correction term is (n-1) * ||x||^p";
    if (auto lhs = p_power_integral_exact(lhs_cells, p)) {
        Rational rhs = -n_minus_1 * *p_power_integral_exact(x_cells, p);
        for (const auto& c : part_cells) rhs += *p_power_integral_exact(c, p);
        rep.counts["exact"] = true;
        rep.result = json{{"lhs", lhs->str()}, {"rhs", rhs.str()}};
        if (*lhs != rhs) rep.fail(*rep.result);
    } else {
        const double l = p_power_integral_float(lhs_cells, p);
        double r = -n_minus_1.to_double() * p_power_integral_float(x_cells, p);
        for (const auto& c : part_cells) r += p_power_integral_float(c, p);
        rep.counts["exact"] = false;
        rep.result = json{{"lhs", l}, {"rhs", r}, {"abs_diff", std::fabs(l - r)}};
        if (std::fabs(l - r) > tol * std::max(1.0, std::fabs(l))) rep.fail(*rep.result);
    }
    return rep;
}

/// Random step function on [0,2]x[0,1] on a grid of at most 4x4 cells.
inline StepFn2D random_step_2d(Rng& rng, std::int64_t denom = 8) {
    auto cuts = [&](std::int64_t end_units) {
        std::vector<std::int64_t> c;
        const std::int64_t k = rng.uniform(0, 3);
        for (std::int64_t i = 0; i < k; ++i) c.push_back(rng.uniform(1, end_units - 1));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        std::vector<Rational> b{Rational(0)};
        for (auto u : c) b.emplace_back(u, denom);
        b.emplace_back(end_units / denom);
        return b;
    };
    StepFn2D f;
    f.x_breaks = cuts(2 * denom);
    f.y_breaks = cuts(denom);
    f.values.assign(f.x_breaks.size() - 1, std::vector<Rational>(f.y_breaks.size() - 1));
    for (auto& row : f.values)
        for (auto& v : row) v = Rational(rng.uniform(-6, 6), rng.uniform(1, 4));
    return f;
}

/// Random parts with pairwise disjoint supports: a random function is cut
/// along a random partition of its cells.
inline std::vector<StepFn2D> random_disjoint_parts(Rng& rng, std::size_t n) {
    StepFn2D base = random_step_2d(rng);
    std::vector<StepFn2D> parts(n, base);
    for (std::size_t i = 0; i < base.values.size(); ++i)
        for (std::size_t j = 0; j < base.values[i].size(); ++j) {
            const auto owner = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
            for (std::size_t k = 0; k < n; ++k)
                if (k != owner) parts[k].values[i][j] = Rational(0);
        }
    return parts;
}

}  // namespace mslab
