#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mslab/hilbert.hpp"
#include "mslab/katetov.hpp"
#include "mslab/lp.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/radial.hpp"
#include "mslab/rado.hpp"
#include "mslab/random.hpp"
#include "mslab/report.hpp"
#include "mslab/urysohn.hpp"
#include "mslab/weak_uniformity.hpp"

namespace mslab::battery {

inline bool revalidates(const MetricSpace& x) { return validate_metric(x.matrix(), x.diam_bound()).valid(); }

inline std::size_t pick(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
}

// ---- instance generators -------------------------------------------------

/// Random MA request satisfying both preconditions, or nullopt when the
/// drawn data leaves no admissible delta. delta lives on the 1/(2D) grid.
inline std::optional<MARequest> random_ma(Rng& rng) {
    const std::int64_t D = rng.uniform(2, 12);
    auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(2, 8)), D));
    const std::size_t n = X->size();
    MARequest req{X, {}, pick(rng, n), 0, {}};
    do { req.y = pick(rng, n); } while (req.y == req.x);
    for (std::size_t i = 0; i < n; ++i)
        if (i != req.x && i != req.y && rng.coin()) req.F.push_back(i);
    const std::int64_t G = 2 * D;
    std::int64_t lo = 1, hi = G - 1;  // delta in (0, 1)
    for (auto z : req.F) {
        const auto gap = *abs((*X)(req.x, z) - (*X)(req.y, z)).units(G);
        const auto sum = *((*X)(req.x, z) + (*X)(req.y, z)).units(G);
        lo = std::max(lo, gap + 1);
        hi = std::min(hi, sum);
    }
    if (lo > hi) return std::nullopt;
    req.delta = Rational(rng.uniform(lo, hi), G);
    return req;
}

struct UwmtInstance {
    MetricSpace X;
    std::size_t x, y;
    std::vector<std::size_t> Z;
};

inline UwmtInstance random_uwmt(Rng& rng) {
    const std::int64_t D = rng.uniform(2, 24);
    UwmtInstance in{gen::space(rng, static_cast<std::size_t>(rng.uniform(3, 8)), D), 0, 0, {}};
    const std::size_t n = in.X.size();
    in.x = pick(rng, n);
    do { in.y = pick(rng, n); } while (in.y == in.x);
    for (std::size_t i = 0; i < n; ++i)
        if (i != in.x && i != in.y && rng.coin()) in.Z.push_back(i);
    if (in.Z.empty())
        for (std::size_t i = 0; i < n; ++i)
            if (i != in.x && i != in.y) {
                in.Z.push_back(i);
                break;
            }
    return in;
}

struct BFInstance {
    MetricSpace X;
    BFState state;
    std::size_t z;
};

/// A valid back-and-forth state: y_j is either x_j itself (when that keeps
/// the map isometric) or a fresh point realizing d(y_j,y_i) = d(x_j,x_i)
/// with d(y_j,x_j) <= eps. At most 8 points in total.
inline std::optional<BFInstance> random_bf(Rng& rng) {
    const std::int64_t D = rng.uniform(2, 24);
    const std::size_t n0 = static_cast<std::size_t>(rng.uniform(2, 5));
    MetricSpace X = gen::space(rng, n0, D);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(n0 - 1, 3))));
    std::vector<std::size_t> order(n0);
    for (std::size_t i = 0; i < n0; ++i) order[i] = i;
    rng.shuffle(order);
    const Rational eps(rng.uniform(1, D), D);
    BFState st{{}, eps};
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t xj = order[j];
        bool identity = rng.uniform(0, 4) == 0;
        for (auto [xi, yi] : st.pairs)
            if (X(yi, xj) != X(xi, xj)) identity = false;
        if (identity) {
            st.pairs.emplace_back(xj, xj);
            continue;
        }
        std::map<std::size_t, Rational> fixed, caps{{xj, eps}};
        for (auto [xi, yi] : st.pairs) fixed[yi] = X(xi, xj);
        auto vals = gen::katetov_values(rng, X, D, fixed, caps);
        if (!vals) return std::nullopt;
        X = gen::append_point(X, *vals);
        st.pairs.emplace_back(xj, X.size() - 1);
    }
    return BFInstance{std::move(X), std::move(st), order[k]};
}

// ---- acceptance checks ---------------------------------------------------

inline constexpr int kBatterySize = 10000;

inline WitnessReport ac1_extension_batteries(Rng rng, int per_op = kBatterySize) {
    WitnessReport rep;
    rep.check = "ac1.extension_batteries";
    rep.params = {{"instances_per_op", per_op}, {"max_points", 8}, {"max_denominator", 24}};
    std::optional<json> witness;
    auto fail_once = [&](json w) {
        if (!witness) witness = std::move(w);
    };

    std::int64_t ma_ok = 0, ma_resampled = 0;
    for (int i = 0; i < per_op;) {
        auto req = random_ma(rng);
        if (!req) {
            ++ma_resampled;
            continue;
        }
        ++i;
        try {
            Extension e = ma_extension(*req);
            const std::size_t xi = req->F.size();
            if (!revalidates(e.space)) fail_once({{"op", "ma"}, {"instance", i}, {"reason", "invalid metric"}});
            else if (e.space(e.point, xi) != req->delta) fail_once({{"op", "ma"}, {"instance", i}, {"reason", "d(y',x) != delta"}});
            else ++ma_ok;
        } catch (const Error& err) {
            fail_once({{"op", "ma"}, {"instance", i}, {"error", to_string(err.code())}, {"message", err.what()}});
        }
    }

    std::int64_t uwmt_ok = 0, uwmt_literal_fail = 0;
    for (int i = 0; i < per_op; ++i) {
        UwmtInstance in = random_uwmt(rng);
        try {
            UwmtExtension e = uwmt_extension(in.X, in.x, in.y, in.Z);
            const MetricSpace& Y = e.space;
            const Rational t = in.X(in.x, in.y);
            bool ok = revalidates(Y);
            for (std::size_t a = 0; a < in.Z.size() && ok; ++a) {
                const std::size_t za = in.Z[a], pa = e.primes[a];
                ok = Y(in.y, pa) == in.X(in.x, za) && Y(za, pa) <= t;
                for (std::size_t b = 0; b < in.Z.size() && ok; ++b) ok = Y(pa, e.primes[b]) == in.X(za, in.Z[b]);
            }
            if (ok) ++uwmt_ok;
            else fail_once({{"op", "uwmt"}, {"instance", i}, {"reason", "post-condition"}});
        } catch (const Error& err) {
            fail_once({{"op", "uwmt"}, {"instance", i}, {"error", to_string(err.code())}, {"message", err.what()}});
        }
        try {
            uwmt_extension(in.X, in.x, in.y, in.Z, ExtensionReading::Literal);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::MetricFailure) throw;
            ++uwmt_literal_fail;
        }
    }

    std::int64_t bf_ok = 0, bf_resampled = 0, bf_literal_fail = 0;
    for (int i = 0; i < per_op;) {
        auto in = random_bf(rng);
        if (!in) {
            ++bf_resampled;
            continue;
        }
        ++i;
        try {
            Extension e = prop53_extension(in->X, in->state, in->z);
            bool ok = revalidates(e.space) && e.space(e.point, in->z) <= in->state.epsilon;
            for (auto [a, b] : in->state.pairs) ok = ok && e.space(e.point, b) == in->X(in->z, a);
            if (ok) ++bf_ok;
            else fail_once({{"op", "prop53"}, {"instance", i}, {"reason", "post-condition"}});
        } catch (const Error& err) {
            fail_once({{"op", "prop53"}, {"instance", i}, {"error", to_string(err.code())}, {"message", err.what()}});
        }
        try {
            prop53_extension(in->X, in->state, in->z, ExtensionReading::Literal);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::MetricFailure) throw;
            ++bf_literal_fail;
        }
    }

    rep.counts["ma_passed"] = ma_ok;
    rep.counts["ma_resampled"] = ma_resampled;
    rep.counts["uwmt_passed"] = uwmt_ok;
    rep.counts["uwmt_literal_reading_failures"] = uwmt_literal_fail;
    rep.counts["prop53_passed"] = bf_ok;
    rep.counts["prop53_resampled"] = bf_resampled;
    rep.counts["prop53_literal_reading_failures"] = bf_literal_fail;
    rep.caveat = "literal_reading_failures are diagnostics for the uncorrected extension formulas";
    if (witness) rep.fail(*witness);
    return rep;
}

inline WitnessReport ac2_kuratowski_gromov(Rng rng, int trials = 1000) {
    WitnessReport rep;
    rep.check = "ac2.kuratowski_gromov";
    rep.params = {{"trials", trials}};
    std::optional<json> witness;
    std::int64_t pairs = 0, min_form_not_katetov = 0;
    for (int t = 0; t < trials && !witness; ++t) {
        const std::int64_t D = rng.uniform(2, 24);
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(2, 8)), D));
        auto fs = kuratowski_embed(X);
        for (std::size_t a = 0; a < X->size(); ++a)
            for (std::size_t b = 0; b < X->size(); ++b, ++pairs)
                if (sup_distance(fs[a], fs[b]) != (*X)(a, b) && !witness)
                    witness = json{{"part", "kuratowski"}, {"trial", t}, {"pair", {a, b}}};
    }
    for (int t = 0; t < trials && !witness; ++t) {
        const std::int64_t D = rng.uniform(2, 24);
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 8)), D));
        KatetovFn xi = gen::katetov(rng, X, D);
        const Rational lambda(rng.uniform(1, D - 1), D);
        if (!is_katetov(truncate_katetov(xi, lambda, TruncationMode::Max), *X).valid())
            witness = json{{"part", "truncation"}, {"trial", t}, {"lambda", lambda.str()}};
        if (!is_katetov(truncate_katetov(xi, lambda, TruncationMode::Min), *X).valid()) ++min_form_not_katetov;
    }
    for (int t = 0; t < trials && !witness; ++t) {
        const std::int64_t D = rng.uniform(2, 24);
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 8)), D));
        KatetovFn f = gen::katetov(rng, X, D), g = gen::katetov(rng, X, D);
        auto S = gen::subset(rng, X->size());
        if (S.empty()) S.push_back(pick(rng, X->size()));
        if (sup_distance(restrict_katetov(f, S), restrict_katetov(g, S)) > sup_distance(f, g))
            witness = json{{"part", "restriction"}, {"trial", t}, {"subset", S}};
    }
    rep.counts["kuratowski_pairs"] = pairs;
    rep.counts["min_truncation_not_katetov"] = min_form_not_katetov;
    if (witness) rep.fail(*witness);
    return rep;
}

inline WitnessReport ac3_lp_counterexample(Rng rng) {
    WitnessReport rep;
    rep.check = "ac3.lp_counterexample";
    std::optional<json> witness;
    const Rational one(1);
    json per_p = json::object();
    const std::vector<Rational> ps{Rational(1), Rational(3, 2), Rational(3), Rational(5), Rational(2)};
    const auto vecs = lp_witness_vectors();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const Rational& p = ps[i];
        const bool hilbert = p == Rational(2);
        WitnessReport r = lp_counterexample(p, rng.fork(i));
        const PNormValue nw = lp_norm(vecs.w, p), nwp = lp_norm(vecs.w_prime, p);
        const PNormValue a = lp_norm(combine(vecs.w, vecs.v, Rational(-1)), p);
        const PNormValue b = lp_norm(combine(vecs.w_prime, vecs.v, Rational(-1)), p);
        const auto ea = a.exponent_over(Rational(2)), eb = b.exponent_over(Rational(2));
        const bool exact = nw.is_exact() && nwp.is_exact() && a.is_exact() && b.is_exact();
        const bool units = equal(nw, PNormValue::power(one, one)) && equal(nwp, PNormValue::power(one, one));
        const bool exps = ea && eb && *ea == (p - one) / p && *eb == one / p;
        const bool pairings = r.counts["pairings_zero"] == r.counts["pairings_checked"];
        const bool verdict_ok = hilbert ? !r.passed() && equal(a, b) : r.passed() && !equal(a, b);
        per_p[p.str()] = {{"exponent_w_v", ea ? json(ea->str()) : json(nullptr)},
                          {"exponent_w_prime_v", eb ? json(eb->str()) : json(nullptr)},
                          {"separated", r.passed()}};
        if (!(exact && units && exps && pairings && verdict_ok) && !witness)
            witness = json{{"p", p.str()}, {"exact", exact}, {"unit_norms", units}, {"exponents", exps},
                           {"pairings_zero", pairings}, {"verdict_ok", verdict_ok}};
    }
    rep.result = per_p;
    if (witness) rep.fail(*witness);
    return rep;
}

inline RationalVector random_rational_vector(Rng& rng, std::size_t n) {
    RationalVector t;
    for (std::size_t i = 0; i < n; ++i) t.emplace_back(rng.uniform(-9, 9), rng.uniform(1, 9));
    return t;
}

inline WitnessReport ac4_hilbert(Rng rng, int trials = 1000) {
    WitnessReport rep;
    rep.check = "ac4.hilbert";
    rep.params = {{"trials", trials}, {"dims", "2-6"}, {"tol", 1e-9}};
    for (int t = 0; t < trials; ++t) {
        const std::size_t dim = static_cast<std::size_t>(rng.uniform(2, 6));
        auto u = stereographic(random_rational_vector(rng, dim - 1));
        auto v = stereographic(random_rational_vector(rng, dim - 1));
        auto z = stereographic(random_rational_vector(rng, dim - 1));
        WitnessReport r = hilbert_check(u, v, z, 1e-9);
        if (!r.passed()) {
            rep.fail(json{{"trial", t}, {"dim", dim}, {"detail", *r.witness}});
            break;
        }
    }
    return rep;
}

inline WitnessReport ac5_profiles() {
    using namespace profiles;
    WitnessReport rep;
    rep.check = "ac5.profiles";
    json subs = json::object();
    std::vector<std::string> failed;
    auto sub = [&](const std::string& name, bool ok) {
        subs[name] = ok;
        if (!ok) failed.push_back(name);
    };
    const Rational one(1), half(1, 2), quarter(1, 4);

    const auto fh = radial_profile_flags(gurarij_h(), one);
    const auto fhp = radial_profile_flags(gurarij_h_prime(), one);
    sub("gurarij_h_all_flags", fh.all());
    sub("gurarij_h_prime_all_flags", fhp.all());
    sub("gurarij_h_prime_lipschitz_convex_dominates",
        fhp.lipschitz1 && fhp.convex && fhp.dominates_identity && fhp.katetov_radial && fhp.unit_at_0());
    sub("gurarij_agree_at_1", profiles_agree_on(gurarij_h(), gurarij_h_prime(), one, one).agree);
    const auto g = profiles_agree_on(gurarij_h(), gurarij_h_prime(), Rational(0), one);
    sub("gurarij_differ_at_half_by_half", !g.agree && g.first_difference == half && g.gap == half);

    const auto f2 = radial_profile_flags(ball_h2(), Rational(3));
    const bool triple = f2.convexity_witness && f2.convexity_witness->left == half &&
                        f2.convexity_witness->mid == one && f2.convexity_witness->right == Rational(3, 2);
    sub("ball_h2_not_convex", !f2.convex && !f2.convex_midpoint);
    sub("ball_h2_witness_triple", triple);
    sub("ball_h2_gap_quarter", f2.convexity_witness && f2.convexity_witness->gap == quarter);

    const auto c1 = radial_profile_flags(corrected_h1(), Rational(3));
    const auto c2 = radial_profile_flags(corrected_h2(), Rational(3));
    sub("corrected_pair_all_flags", c1.all() && c2.all());
    sub("corrected_pair_agree_on_0_1", profiles_agree_on(corrected_h1(), corrected_h2(), Rational(0), one).agree);
    const auto c = profiles_agree_on(corrected_h1(), corrected_h2(), one, Rational(2));
    const Rational r32(3, 2);
    sub("corrected_pair_differ_at_3_2_by_quarter",
        !c.agree && corrected_h1()(r32) == Rational(2) && corrected_h1()(r32) - corrected_h2()(r32) == quarter);

    rep.result = json{{"subchecks", subs},
                      {"gurarij_h", to_json(fh)},
                      {"gurarij_h_prime", to_json(fhp)},
                      {"ball_h2", to_json(f2)},
                      {"corrected_h1", to_json(c1)},
                      {"corrected_h2", to_json(c2)}};
    if (!failed.empty()) rep.fail(json{{"failed_subchecks", failed}});
    return rep;
}

inline WitnessReport ac6_disjoint_support(Rng rng, int instances = 200) {
    WitnessReport rep;
    rep.check = "ac6.disjoint_support";
    rep.params = {{"instances_per_case", instances}};
    std::optional<json> witness;
    std::int64_t exact_checked = 0, float_checked = 0;
    for (long p = 1; p <= 3; ++p)
        for (std::size_t n = 1; n <= 3; ++n)
            for (int i = 0; i < instances && !witness; ++i) {
                StepFn2D x = random_step_2d(rng);
                auto parts = random_disjoint_parts(rng, n);
                WitnessReport r = disjoint_support_identity(x, parts, Rational(p));
                ++exact_checked;
                if (!r.passed() || r.counts["exact"] != true)
                    witness = json{{"p", p}, {"n", n}, {"instance", i}, {"detail", r.to_json()}};
            }
    for (int i = 0; i < instances && !witness; ++i) {
        StepFn2D x = random_step_2d(rng);
        auto parts = random_disjoint_parts(rng, static_cast<std::size_t>(rng.uniform(1, 3)));
        WitnessReport r = disjoint_support_identity(x, parts, Rational(3, 2), 1e-12);
        ++float_checked;
        if (!r.passed()) witness = json{{"p", "3/2"}, {"instance", i}, {"detail", r.to_json()}};
    }
    rep.counts["exact_instances"] = exact_checked;
    rep.counts["float_instances"] = float_checked;
    if (witness) rep.fail(*witness);
    return rep;
}

inline WitnessReport ac7_rado(Rng rng, int pairs = 10000) {
    WitnessReport rep;
    rep.check = "ac7.rado";
    std::optional<json> witness;
    std::int64_t witnesses = 0;
    // every subset S of {0..15} with |S| <= 6, split into U and V by a mask
    std::vector<RadoVertex> S;
    auto visit = [&](auto&& self, RadoVertex start) -> void {
        for (std::uint32_t mask = 0; mask < (1u << S.size()) && !witness; ++mask) {
            std::set<RadoVertex> U, V;
            for (std::size_t i = 0; i < S.size(); ++i) ((mask >> i) & 1u ? U : V).insert(S[i]);
            const RadoVertex w = rado_extension_witness(U, V);
            ++witnesses;
            bool ok = !U.count(w) && !V.count(w);
            for (auto u : U) ok = ok && rado_adjacent(w, u);
            for (auto v : V) ok = ok && !rado_adjacent(w, v);
            if (!ok) witness = json{{"part", "extension"}, {"U", U}, {"V", V}, {"w", w}};
        }
        if (S.size() == 6) return;
        for (RadoVertex v = start; v < 16 && !witness; ++v) {
            S.push_back(v);
            self(self, v + 1);
            S.pop_back();
        }
    };
    visit(visit, 0);

    std::vector<RadoVertex> verts(256);
    for (RadoVertex v = 0; v < 256; ++v) verts[v] = v;
    Matrix m(256, std::vector<Rational>(256));
    for (RadoVertex i = 0; i < 256; ++i)
        for (RadoVertex j = 0; j < 256; ++j) m[i][j] = Rational(rado_metric(i, j));
    if (!witness) {
        auto verdict = validate_metric(m, Rational(2));
        if (!verdict.valid()) witness = json{{"part", "metric"}, {"violation", describe(*verdict.violation)}};
    }

    std::int64_t adjacent = 0;
    for (int t = 0; t < pairs && !witness; ++t) {
        const RadoVertex i = static_cast<RadoVertex>(rng.uniform(0, 65535));
        RadoVertex j;
        do { j = static_cast<RadoVertex>(rng.uniform(0, 65535)); } while (j == i);
        const bool adj = rado_adjacent(i, j);
        adjacent += adj;
        if ((rado_metric(i, j) == 1) != adj) witness = json{{"part", "coding"}, {"pair", {i, j}}};
    }
    rep.counts["extension_witnesses"] = witnesses;
    rep.counts["random_pairs_adjacent"] = adjacent;
    if (witness) rep.fail(*witness);
    return rep;
}

inline WitnessReport ac8_urysohn_approximant(Rng rng, int probes = 50) {
    WitnessReport rep;
    rep.check = "ac8.urysohn_approximant";
    rep.params = {{"denom", 4}, {"subset_bound", 2}, {"budget", kDefaultBudget}, {"rounds", 2}, {"epsilon", "1/4"}};
    const Rational half(1, 2), eps(1, 4);
    MetricSpace seed = MetricSpace::make({"a", "b"}, {{Rational(0), half}, {half, Rational(0)}}, Rational(1));
    Approximant a = fraisse_step(fraisse_step(Approximant::seed(seed, 4, 2)), kDefaultBudget);
    const auto snap = a.snapshot(1);
    WitnessReport inj = finite_injectivity_check(a, snap, 2, 4);
    rep.counts["points"] = a.size();
    rep.counts["snapshot_size"] = snap.size();
    rep.counts["injectivity_functions"] = inj.counts["functions"];
    if (!inj.passed()) {
        rep.fail(json{{"part", "finite_injectivity"}, {"detail", *inj.witness}});
        return rep;
    }
    for (int t = 0; t < probes; ++t) {
        const std::size_t x = snap[pick(rng, snap.size())];
        std::size_t z;
        do { z = snap[pick(rng, snap.size())]; } while (z == x);
        try {
            BFState out = back_and_forth_extend(a, BFState{{{x, x}}, eps}, z);
            const std::size_t zp = out.pairs.back().second;
            if (a.distance(z, zp) > eps || a.distance(zp, x) != a.distance(z, x)) {
                rep.fail(json{{"part", "back_and_forth"}, {"probe", t}, {"x", x}, {"z", z}, {"image", zp}});
                return rep;
            }
        } catch (const Error& err) {
            rep.fail(json{{"part", "back_and_forth"}, {"probe", t}, {"x", x}, {"z", z}, {"error", to_string(err.code())}});
            return rep;
        }
    }
    rep.counts["probes"] = probes;
    return rep;
}

inline WitnessReport ac9_nonproper(Rng rng, int trials = 100) {
    WitnessReport rep;
    rep.check = "ac9.nonproper";
    rep.params = {{"trials", trials}, {"lambda", "1/2"}};
    const Rational lambda(1, 2);
    for (int t = 0; t < trials; ++t) {
        MetricSpace X = gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 8)), rng.uniform(2, 24));
        const std::size_t x = pick(rng, X.size());
        std::vector<std::size_t> Z;
        for (std::size_t i = 0; i < X.size(); ++i)
            if (i != x && rng.coin()) Z.push_back(i);
        Extension e = nonproper_witness(X, x, Z, lambda);
        bool ok = revalidates(e.space) && e.space(e.point, 0) == lambda;
        for (std::size_t i = 0; i < Z.size(); ++i) ok = ok && e.space(e.point, i + 1) == max(lambda, X(x, Z[i]));
        if (!ok) {
            rep.fail(json{{"trial", t}, {"x", x}, {"Z", Z}});
            break;
        }
    }
    return rep;
}

inline WitnessReport ac10_injectivity_chain(Rng rng, int trials = 1000) {
    WitnessReport rep;
    rep.check = "ac10.injectivity_chain";
    rep.params = {{"trials", trials}};
    std::int64_t max_points = 0;
    for (int t = 0; t < trials; ++t) {
        const Rational diam(rng.uniform(1, 6), rng.uniform(1, 4));
        const std::int64_t D = rng.uniform(1, 12);
        const Rational r = diam * Rational(rng.uniform(1, D), D);
        const Rational s = diam * Rational(rng.uniform(1, D), D);
        MetricSpace c = injectivity_chain(r, s, diam);
        max_points = std::max<std::int64_t>(max_points, static_cast<std::int64_t>(c.size()));
        const bool ok = revalidates(c) && c(0, 1) == r && c(0, c.size() - 1) == s;
        if (!ok) {
            rep.fail(json{{"trial", t}, {"r", r.str()}, {"s", s.str()}, {"diam", diam.str()}});
            break;
        }
    }
    rep.counts["max_points"] = max_points;
    return rep;
}

// ---- whole battery -------------------------------------------------------

struct NamedCheck {
    std::string id;
    std::function<WitnessReport(Rng)> run;
};

inline std::vector<NamedCheck> acceptance_checks() {
    return {
        {"AC1", [](Rng r) { return ac1_extension_batteries(r); }},
        {"AC2", [](Rng r) { return ac2_kuratowski_gromov(r); }},
        {"AC3", [](Rng r) { return ac3_lp_counterexample(r); }},
        {"AC4", [](Rng r) { return ac4_hilbert(r); }},
        {"AC5", [](Rng) { return ac5_profiles(); }},
        {"AC6", [](Rng r) { return ac6_disjoint_support(r); }},
        {"AC7", [](Rng r) { return ac7_rado(r); }},
        {"AC8", [](Rng r) { return ac8_urysohn_approximant(r); }},
        {"AC9", [](Rng r) { return ac9_nonproper(r); }},
        {"AC10", [](Rng r) { return ac10_injectivity_chain(r); }},
    };
}

/// Runs one check on its own stream forked from the seed; elapsed_ms is
/// filled only on request so that default output stays byte-stable.
inline WitnessReport run_check(const NamedCheck& c, std::size_t index, std::uint64_t seed, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    WitnessReport r = c.run(Rng(seed).fork(index));
    if (timing)
        r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline json run_suite(std::uint64_t seed, bool timing = false) {
    const auto checks = acceptance_checks();
    json reports = json::array();
    std::int64_t passed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        json r = run_check(checks[i], i, seed, timing).to_json();
        r["id"] = checks[i].id;
        passed += r["verdict"] == "pass";
        reports.push_back(std::move(r));
    }
    return {{"seed", seed},
            {"reports", std::move(reports)},
            {"passed", passed},
            {"failed", static_cast<std::int64_t>(checks.size()) - passed}};
}

}  // namespace mslab::battery
