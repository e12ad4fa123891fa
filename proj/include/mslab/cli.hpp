#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mslab/mslab.hpp"

namespace mslab::cli {

enum ExitCode { kPass = 0, kFail = 1, kMalformed = 2 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const auto p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

inline std::size_t parse_index(const std::string& s) {
    std::size_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw Error(ErrorCode::Parse, "bad index '" + s + "'");
    return v;
}

/// "1,2,3" -> {1,2,3}; "" -> {}
inline std::vector<std::size_t> index_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_index(t));
    return out;
}

inline std::vector<Rational> rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s, ',')) out.push_back(Rational::parse(t));
    return out;
}

/// "0:1,2:3" -> {(0,1),(2,3)}
inline std::vector<std::pair<std::size_t, std::size_t>> pair_list(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& t : split(s, ',')) {
        auto ab = split(t, ':');
        if (ab.size() != 2) throw Error(ErrorCode::Parse, "expected a:b in '" + t + "'");
        out.emplace_back(parse_index(ab[0]), parse_index(ab[1]));
    }
    return out;
}

/// "lo..hi" inclusive, or a comma list.
inline std::vector<RadoVertex> vertex_scan(const std::string& s) {
    std::vector<RadoVertex> out;
    if (auto p = s.find(".."); p != std::string::npos) {
        const auto lo = parse_index(s.substr(0, p)), hi = parse_index(s.substr(p + 2));
        if (hi < lo) throw Error(ErrorCode::Parse, "empty range '" + s + "'");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    for (auto v : index_list(s)) out.push_back(v);
    return out;
}

inline ExtensionReading reading(const std::string& s) {
    if (s == "amalgam") return ExtensionReading::Amalgam;
    if (s == "literal") return ExtensionReading::Literal;
    throw Error(ErrorCode::Parse, "reading must be 'amalgam' or 'literal'");
}

inline RadialProfile load_profile(const std::string& ref) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        if (auto h = profiles::builtin(ref.substr(prefix.size()))) return *h;
        throw Error(ErrorCode::Parse, "unknown builtin profile '" + ref + "'");
    }
    return io::profile(io::load_file(ref));
}

inline WitnessReport constructed(std::string check, json params, json result) {
    WitnessReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.result = std::move(result);
    return r;
}

inline json error_json(const Error& e) {
    return {{"error", to_string(e.code())}, {"message", e.what()}, {"indices", e.indices()}};
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its JSON report to `out` and
/// a one-line summary to `err`. Returns 0 on pass, 1 on fail and 2 on
/// malformed input or violated preconditions.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Finite exact-arithmetic models of metric spaces, Katetov extensions and their compactifications",
                 "mslab"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::uint64_t seed = 42;
    std::size_t budget = kDefaultBudget;
    double tol = 1e-12;
    bool timing = false;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--budget", budget, "point ceiling for approximant growth")->capture_default_str();
    app.add_option("--tol", tol, "float slack where floats occur")->capture_default_str();
    app.add_flag("--timing", timing, "fill elapsed_ms (breaks byte-identical output)");

    std::function<WitnessReport()> action;
    std::function<int()> raw_action;  // commands printing their own document

    // ---- validate ----
    std::string file, file2;
    auto* validate = app.add_subcommand("validate", "check a metric space file");
    validate->add_option("file", file)->required();
    validate->callback([&] {
        action = [&] {
            const json j = io::load_file(file);
            const Matrix d = io::matrix(io::field(j, "d"));
            const Rational diam = io::rational(io::field(j, "diam"));
            WitnessReport r;
            r.check = "validate";
            r.params = {{"file", file}, {"points", d.size()}, {"diam", diam.str()}};
            auto v = validate_metric(d, diam);
            if (!v.valid())
                r.fail({{"kind", to_string(v.violation->kind)}, {"indices", v.violation->indices},
                        {"description", describe(*v.violation)}});
            return r;
        };
    });

    // ---- katetov ----
    auto* katetov = app.add_subcommand("katetov", "Katetov function operations");
    katetov->require_subcommand(1);
    std::string label, mode = "max";
    std::int64_t denom = 0, limit = -1;
    std::string lambda_s;
    auto* k_check = katetov->add_subcommand("check", "test the Katetov conditions");
    k_check->add_option("file", file)->required();
    k_check->callback([&] {
        action = [&] {
            const json j = io::load_file(file);
            const std::filesystem::path base = std::filesystem::path(file).parent_path();
            const json& s = io::field(j, "space");
            MetricSpace x = io::metric_space(s.is_string() ? io::load_file(base / s.get<std::string>()) : s);
            auto values = io::rationals(io::field(j, "values"));
            WitnessReport r;
            r.check = "katetov.check";
            r.params = {{"file", file}};
            auto v = is_katetov(values, x);
            if (!v.valid())
                r.fail({{"kind", to_string(v.violation->kind)}, {"indices", {v.violation->i, v.violation->j}}});
            return r;
        };
    });
    auto* k_extend = katetov->add_subcommand("extend", "realize a Katetov function as a new point");
    k_extend->add_option("file", file)->required();
    k_extend->add_option("--label", label);
    k_extend->callback([&] {
        action = [&] {
            KatetovFn f = io::katetov_fn(io::load_file(file), std::filesystem::path(file).parent_path());
            Extension e = extend_by_katetov(*f.space(), f, label);
            return constructed("katetov.extend", {{"file", file}}, {{"space", io::to_json(e.space)}, {"point", e.point}});
        };
    });
    auto* k_enum = katetov->add_subcommand("enumerate", "all Katetov functions on the 1/denom grid");
    k_enum->add_option("file", file)->required();
    k_enum->add_option("--denom", denom)->required();
    k_enum->add_option("--limit", limit, "stop after this many functions");
    k_enum->callback([&] {
        action = [&] {
            auto x = share(io::metric_space(io::load_file(file)));
            KatetovEnumerator en(x, denom);
            json fs = json::array();
            std::int64_t count = 0;
            while (auto f = en.next()) {
                if (limit >= 0 && count >= limit) break;
                fs.push_back(io::to_json(std::span<const Rational>(f->values())));
                ++count;
            }
            WitnessReport r = constructed("katetov.enumerate", {{"file", file}, {"denom", denom}}, fs);
            r.counts["functions"] = count;
            return r;
        };
    });
    auto* k_trunc = katetov->add_subcommand("truncate", "pointwise max or min with lambda");
    k_trunc->add_option("file", file)->required();
    k_trunc->add_option("--lambda", lambda_s)->required();
    k_trunc->add_option("--mode", mode)->check(CLI::IsMember({"max", "min"}))->capture_default_str();
    k_trunc->callback([&] {
        action = [&] {
            KatetovFn f = io::katetov_fn(io::load_file(file), std::filesystem::path(file).parent_path());
            const Rational lambda = Rational::parse(lambda_s);
            auto values = truncate_katetov(f, lambda, mode == "max" ? TruncationMode::Max : TruncationMode::Min);
            WitnessReport r = constructed("katetov.truncate", {{"file", file}, {"lambda", lambda.str()}, {"mode", mode}},
                                          io::to_json(std::span<const Rational>(values)));
            auto v = is_katetov(values, *f.space());
            if (!v.valid())
                r.fail({{"kind", to_string(v.violation->kind)}, {"indices", {v.violation->i, v.violation->j}}});
            return r;
        };
    });

    // ---- urysohn ----
    auto* ury = app.add_subcommand("urysohn", "Urysohn-space constructions");
    ury->require_subcommand(1);
    std::size_t subset_bound = 2, rounds = 1, round = 1, k_sub = 2, x_idx = 0, y_idx = 0, z_idx = 0;
    std::string out_file, F_s, Z_s, pairs_s, delta_s, eps_s, reading_s = "amalgam", r_s, s_s, diam_s;
    auto* u_build = ury->add_subcommand("build", "grow a finite approximant by saturation rounds");
    u_build->add_option("file", file, "seed metric space")->required();
    u_build->add_option("--denom", denom)->required();
    u_build->add_option("--subset-bound", subset_bound)->capture_default_str();
    u_build->add_option("--rounds", rounds)->capture_default_str();
    u_build->add_option("--out", out_file, "also write the approximant here");
    u_build->callback([&] {
        action = [&] {
            Approximant a = Approximant::seed(io::metric_space(io::load_file(file)), denom, subset_bound);
            for (std::size_t i = 0; i < rounds; ++i) a = fraisse_step(a, budget);
            json j = io::to_json(a);
            if (!out_file.empty()) {
                std::ofstream o(out_file);
                if (!o) throw Error(ErrorCode::Parse, "cannot write " + out_file);
                o << j.dump() << '\n';
            }
            WitnessReport r;
            r.check = "urysohn.build";
            r.params = {{"file", file}, {"denom", denom}, {"subset_bound", subset_bound}, {"rounds", rounds}, {"budget", budget}};
            r.counts["points"] = a.size();
            r.counts["round_sizes"] = a.round_sizes();
            if (out_file.empty()) r.result = std::move(j);
            return r;
        };
    });
    auto* u_check = ury->add_subcommand("check", "finite injectivity over a round snapshot");
    u_check->add_option("file", file, "approximant")->required();
    u_check->add_option("--round", round)->capture_default_str();
    u_check->add_option("--k", k_sub, "subset size bound")->capture_default_str();
    u_check->add_option("--denom", denom, "grid of the tested functions (default: the approximant's)");
    u_check->callback([&] {
        action = [&] {
            Approximant a = io::approximant(io::load_file(file));
            auto snap = a.snapshot(round);
            WitnessReport r = finite_injectivity_check(a, snap, k_sub, denom > 0 ? denom : a.denom());
            r.params["round"] = round;
            return r;
        };
    });
    auto* u_ma = ury->add_subcommand("ma", "metrically achievable extension");
    u_ma->add_option("file", file)->required();
    u_ma->add_option("--x", x_idx)->required();
    u_ma->add_option("--y", y_idx)->required();
    u_ma->add_option("--F", F_s, "comma-separated indices");
    u_ma->add_option("--delta", delta_s)->required();
    u_ma->callback([&] {
        action = [&] {
            MARequest req{share(io::metric_space(io::load_file(file))), index_list(F_s), x_idx, y_idx, Rational::parse(delta_s)};
            Extension e = ma_extension(req);
            return constructed("urysohn.ma", {{"file", file}, {"x", x_idx}, {"y", y_idx}, {"F", req.F}, {"delta", req.delta.str()}},
                               {{"space", io::to_json(e.space)}, {"point", e.point}});
        };
    });
    auto* u_uwmt = ury->add_subcommand("uwmt", "copy of {x} + Z moved onto y");
    u_uwmt->add_option("file", file)->required();
    u_uwmt->add_option("--x", x_idx)->required();
    u_uwmt->add_option("--y", y_idx)->required();
    u_uwmt->add_option("--Z", Z_s)->required();
    u_uwmt->add_option("--reading", reading_s)->capture_default_str();
    u_uwmt->callback([&] {
        action = [&] {
            MetricSpace X = io::metric_space(io::load_file(file));
            auto e = uwmt_extension(X, x_idx, y_idx, index_list(Z_s), reading(reading_s));
            return constructed("urysohn.uwmt", {{"file", file}, {"x", x_idx}, {"y", y_idx}, {"Z", Z_s}, {"reading", reading_s}},
                               {{"space", io::to_json(e.space)}, {"primes", e.primes}});
        };
    });
    auto* u_p53 = ury->add_subcommand("prop53", "extend a partial isometry by one point");
    u_p53->add_option("file", file)->required();
    u_p53->add_option("--pairs", pairs_s, "x:y,x:y,...")->required();
    u_p53->add_option("--eps", eps_s)->required();
    u_p53->add_option("--z", z_idx)->required();
    u_p53->add_option("--reading", reading_s)->capture_default_str();
    u_p53->callback([&] {
        action = [&] {
            MetricSpace X = io::metric_space(io::load_file(file));
            BFState st{pair_list(pairs_s), Rational::parse(eps_s)};
            Extension e = prop53_extension(X, st, z_idx, reading(reading_s));
            return constructed("urysohn.prop53",
                               {{"file", file}, {"pairs", pairs_s}, {"eps", st.epsilon.str()}, {"z", z_idx}, {"reading", reading_s}},
                               {{"space", io::to_json(e.space)}, {"point", e.point}});
        };
    });
    auto* u_bf = ury->add_subcommand("bf", "back-and-forth step inside an approximant");
    u_bf->add_option("file", file, "approximant")->required();
    u_bf->add_option("--pairs", pairs_s)->required();
    u_bf->add_option("--eps", eps_s)->required();
    u_bf->add_option("--z", z_idx)->required();
    u_bf->callback([&] {
        action = [&] {
            Approximant a = io::approximant(io::load_file(file));
            BFState st{pair_list(pairs_s), Rational::parse(eps_s)};
            BFState next = back_and_forth_extend(a, st, z_idx);
            json pairs = json::array();
            for (auto [p, q] : next.pairs) pairs.push_back({p, q});
            return constructed("urysohn.bf", {{"file", file}, {"pairs", pairs_s}, {"eps", st.epsilon.str()}, {"z", z_idx}},
                               {{"pairs", pairs}});
        };
    });
    auto* u_chain = ury->add_subcommand("chain", "cycle with gaps r and closing gap s");
    u_chain->add_option("--r", r_s)->required();
    u_chain->add_option("--s", s_s)->required();
    u_chain->add_option("--diam", diam_s)->required();
    u_chain->callback([&] {
        action = [&] {
            MetricSpace c = injectivity_chain(Rational::parse(r_s), Rational::parse(s_s), Rational::parse(diam_s));
            return constructed("urysohn.chain", {{"r", r_s}, {"s", s_s}, {"diam", diam_s}}, io::to_json(c));
        };
    });
    auto* u_np = ury->add_subcommand("nonproper", "point at distance lambda from x");
    u_np->add_option("file", file)->required();
    u_np->add_option("--x", x_idx)->required();
    u_np->add_option("--Z", Z_s);
    u_np->add_option("--lambda", lambda_s)->required();
    u_np->callback([&] {
        action = [&] {
            MetricSpace X = io::metric_space(io::load_file(file));
            Extension e = nonproper_witness(X, x_idx, index_list(Z_s), Rational::parse(lambda_s));
            return constructed("urysohn.nonproper", {{"file", file}, {"x", x_idx}, {"Z", Z_s}, {"lambda", lambda_s}},
                               {{"space", io::to_json(e.space)}, {"point", e.point}});
        };
    });

    // ---- weak ----
    auto* weak = app.add_subcommand("weak", "landmark seminorms of the weak uniformity");
    weak->require_subcommand(1);
    std::string A_s, B_s, S_s;
    auto landmarks = [&](const SpacePtr& x) {
        return F_s.empty() ? LandmarkSet::all(x) : LandmarkSet(x, index_list(F_s));
    };
    auto* w_sn = weak->add_subcommand("seminorm", "matrix of rho_F");
    w_sn->add_option("file", file)->required();
    w_sn->add_option("--F", F_s, "landmarks (default: all points)");
    w_sn->callback([&] {
        action = [&] {
            auto x = share(io::metric_space(io::load_file(file)));
            WeakSeminorm s = weak_seminorm(landmarks(x));
            WitnessReport r = constructed("weak.seminorm", {{"file", file}, {"F", F_s}}, io::to_json(s));
            if (auto d = pseudometric_defect(s.matrix)) r.fail({{"pseudometric_defect", *d}});
            return r;
        };
    });
    auto* w_prox = weak->add_subcommand("proximity", "is some a in A within eps of some b in B");
    w_prox->add_option("file", file)->required();
    w_prox->add_option("--A", A_s)->required();
    w_prox->add_option("--B", B_s)->required();
    w_prox->add_option("--F", F_s);
    w_prox->add_option("--eps", eps_s)->required();
    w_prox->callback([&] {
        action = [&] {
            auto x = share(io::metric_space(io::load_file(file)));
            LandmarkSet L = landmarks(x);
            auto A = index_list(A_s), B = index_list(B_s);
            const Rational eps = Rational::parse(eps_s);
            auto v = proximity_test(A, B, L, eps);
            WitnessReport r;
            r.check = "weak.proximity";
            r.params = {{"file", file}, {"A", A}, {"B", B}, {"F", L.landmarks()}, {"eps", eps.str()}};
            r.caveat = kProximityCaveat;
            if (v.pass()) {
                r.result = json{{"pair", {v.witness->first, v.witness->second}}, {"rho", L.rho(v.witness->first, v.witness->second).str()}};
            } else {
                std::size_t ba = A[0], bb = B[0];
                for (auto a : A)
                    for (auto b : B)
                        if (L.rho(a, b) < L.rho(ba, bb)) ba = a, bb = b;
                r.fail({{"closest_pair", {ba, bb}}, {"rho", L.rho(ba, bb).str()}});
            }
            return r;
        };
    });
    auto* w_net = weak->add_subcommand("net", "greedy eps-net of elementary functions");
    w_net->add_option("file", file)->required();
    w_net->add_option("--F", F_s);
    w_net->add_option("--eps", eps_s)->required();
    w_net->callback([&] {
        action = [&] {
            auto x = share(io::metric_space(io::load_file(file)));
            LandmarkSet L = landmarks(x);
            GromovNet net = gromov_approximant(L, Rational::parse(eps_s));
            WitnessReport r = constructed("weak.net", {{"file", file}, {"F", L.landmarks()}, {"eps", eps_s}},
                                          {{"representatives", net.representatives}});
            r.counts["net_size"] = net.representatives.size();
            return r;
        };
    });
    auto* w_res = weak->add_subcommand("restrict", "restrict a Katetov function to a subset");
    w_res->add_option("file", file)->required();
    w_res->add_option("--S", S_s)->required();
    w_res->callback([&] {
        action = [&] {
            KatetovFn f = io::katetov_fn(io::load_file(file), std::filesystem::path(file).parent_path());
            return constructed("weak.restrict", {{"file", file}, {"S", S_s}}, io::to_json(restrict_katetov(f, index_list(S_s))));
        };
    });

    // ---- banach ----
    std::string u_s, v_s, zv_s, p_s = "3";
    bool stereo = false;
    int samples = 100;
    auto* hil = app.add_subcommand("hilbert", "distance-to-inner-product identity on the unit sphere");
    hil->add_option("--u", u_s)->required();
    hil->add_option("--v", v_s)->required();
    hil->add_option("--z", zv_s)->required();
    hil->add_flag("--stereographic", stereo, "inputs are preimages under stereographic projection");
    hil->callback([&] {
        action = [&] {
            auto u = rational_list(u_s), v = rational_list(v_s), z = rational_list(zv_s);
            if (stereo) {
                u = stereographic(u);
                v = stereographic(v);
                z = stereographic(z);
            }
            return hilbert_check(u, v, z, tol > 1e-9 ? tol : 1e-9);
        };
    });
    auto* lp = app.add_subcommand("lp", "separation of w and w' in L^p");
    lp->add_option("--p", p_s)->capture_default_str();
    lp->add_option("--samples", samples)->capture_default_str();
    lp->callback([&] { action = [&] { return lp_counterexample(Rational::parse(p_s), Rng(seed), samples); }; });
    auto* disj = app.add_subcommand("disjoint", "p-th power identity for disjointly supported parts");
    disj->add_option("file", file, "{\"x\": step function, \"parts\": [...]}")->required();
    disj->add_option("--p", p_s)->capture_default_str();
    disj->callback([&] {
        action = [&] {
            const json j = io::load_file(file);
            std::vector<StepFn2D> parts;
            for (const auto& v : io::field(j, "parts")) parts.push_back(io::step_fn_2d(v));
            return disjoint_support_identity(io::step_fn_2d(io::field(j, "x")), parts, Rational::parse(p_s), tol);
        };
    });
    auto* prof = app.add_subcommand("profile", "radial profiles h(|v|)");
    prof->require_subcommand(1);
    std::string horizon_s, lo_s = "0", hi_s = "1";
    auto* p_check = prof->add_subcommand("check", "flags of one profile");
    p_check->add_option("profile", file, "file or builtin:NAME")->required();
    p_check->add_option("--horizon", horizon_s);
    p_check->callback([&] {
        action = [&] {
            RadialProfile h = load_profile(file);
            const Rational horizon = horizon_s.empty() ? h.breakpoints.back() : Rational::parse(horizon_s);
            WitnessReport r = radial_profile_check(h, horizon);
            r.params["profile"] = file;
            return r;
        };
    });
    auto* p_agree = prof->add_subcommand("agree", "exact comparison of two profiles on [lo, hi]");
    p_agree->add_option("first", file)->required();
    p_agree->add_option("second", file2)->required();
    p_agree->add_option("--lo", lo_s)->capture_default_str();
    p_agree->add_option("--hi", hi_s)->capture_default_str();
    p_agree->callback([&] {
        action = [&] {
            WitnessReport r = profiles_agree_report(load_profile(file), load_profile(file2), Rational::parse(lo_s), Rational::parse(hi_s));
            r.params["first"] = file;
            r.params["second"] = file2;
            return r;
        };
    });

    // ---- rado ----
    auto* rado = app.add_subcommand("rado", "the BIT graph model of the Rado graph");
    rado->require_subcommand(1);
    RadoVertex vi = 0, vj = 0;
    std::string U_s, V_s, code_s, q_s, scan_s = "0..63", codes_s;
    bool has_q = false;
    for (const char* name : {"adj", "metric"}) {
        auto* c = rado->add_subcommand(name, name == std::string("adj") ? "adjacency" : "graph metric");
        c->add_option("i", vi)->required();
        c->add_option("j", vj)->required();
        const std::string n = name;
        c->callback([&, n] {
            action = [&, n] {
                json res = n == "adj" ? json{{"adjacent", rado_adjacent(vi, vj)}} : json{{"distance", rado_metric(vi, vj)}};
                return constructed("rado." + n, {{"i", vi}, {"j", vj}}, res);
            };
        });
    }
    auto* r_wit = rado->add_subcommand("witness", "vertex adjacent to U and to nothing in V");
    r_wit->add_option("--u", U_s);
    r_wit->add_option("--v", V_s);
    r_wit->callback([&] {
        action = [&] {
            std::set<RadoVertex> U, V;
            for (auto u : index_list(U_s)) U.insert(u);
            for (auto v : index_list(V_s)) V.insert(v);
            const RadoVertex w = rado_extension_witness(U, V);
            WitnessReport r = constructed("rado.witness", {{"U", U}, {"V", V}}, {{"w", w}});
            for (auto u : U)
                if (!rado_adjacent(w, u)) r.fail({{"not_adjacent_to", u}});
            for (auto v : V)
                if (rado_adjacent(w, v)) r.fail({{"adjacent_to", v}});
            return r;
        };
    });
    auto* r_basis = rado->add_subcommand("basis", "basic open sets B_p on a finite sample");
    r_basis->add_option("--code", code_s, "vertex:value,...")->required();
    auto* q_opt = r_basis->add_option("--q", q_s, "second code: run the refinement checks");
    r_basis->add_option("--scan", scan_s, "vertex range lo..hi or list")->capture_default_str();
    r_basis->add_option("--codes", codes_s, "sample codes separated by ';'");
    r_basis->callback([&] {
        has_q = q_opt->count() > 0;
        action = [&] {
            const BasisCode p = BasisCode::parse(code_s);
            const auto verts = vertex_scan(scan_s);
            std::vector<BasisCode> codes;
            for (const auto& c : split(codes_s, ';')) codes.push_back(BasisCode::parse(c));
            if (has_q) return basis_refinement_check(p, BasisCode::parse(q_s), verts, codes);
            json members = json::array(), code_members = json::array();
            for (auto b : verts)
                if (basis_member(p, b)) members.push_back(b);
            for (const auto& c : codes) code_members.push_back(basis_member(p, c));
            WitnessReport r = constructed("rado.basis", {{"p", p.str()}, {"scan", scan_s}},
                                          {{"vertex_members", members}, {"code_members", code_members}});
            r.caveat = kBasisCaveat;
            return r;
        };
    });

    // ---- suite ----
    auto* suite = app.add_subcommand("suite", "run the full acceptance battery");
    suite->callback([&] {
        raw_action = [&] {
            json j = battery::run_suite(seed, timing);
            out << j.dump(2) << '\n';
            for (const auto& r : j["reports"])
                err << r["id"].get<std::string>() << ' ' << r["check"].get<std::string>() << ": "
                    << r["verdict"].get<std::string>() << '\n';
            return j["failed"].get<std::int64_t>() == 0 ? kPass : kFail;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kMalformed;
    }

    try {
        if (raw_action) return raw_action();
        const auto t0 = std::chrono::steady_clock::now();
        WitnessReport r;
        try {
            r = action();
        } catch (const Error& e) {
            // a construction that was supposed to succeed did not
            if (e.code() != ErrorCode::MetricFailure && e.code() != ErrorCode::Unsaturated) throw;
            r.check = "error";
            r.fail(detail::error_json(e));
        }
        if (timing)
            r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        out << r.to_json().dump(2) << '\n';
        err << r.check << ": " << to_string(r.verdict) << '\n';
        return r.passed() ? kPass : kFail;
    } catch (const Error& e) {
        out << json{{"verdict", "malformed"}, {"error", detail::error_json(e)}}.dump(2) << '\n';
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return kMalformed;
    }
}

}  // namespace mslab::cli
