#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/katetov.hpp"
#include "mslab/lp.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/radial.hpp"
#include "mslab/rational.hpp"
#include "mslab/report.hpp"
#include "mslab/urysohn.hpp"
#include "mslab/weak_uniformity.hpp"

namespace mslab::io {

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
}

inline json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

/// Rationals travel as strings ("3/4"); bare integers are accepted too.
inline Rational rational(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorCode::Parse, "expected a rational string, got " + j.dump());
}

inline std::vector<Rational> rationals(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational(x));
    return out;
}

inline Matrix matrix(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a matrix");
    Matrix m;
    for (const auto& row : j) m.push_back(rationals(row));
    return m;
}

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(std::span<const Rational> v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

inline json to_json(const Matrix& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(to_json(std::span<const Rational>(row)));
    return a;
}

inline std::vector<std::size_t> indices(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of indices");
    std::vector<std::size_t> out;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw Error(ErrorCode::Parse, "expected a nonnegative index, got " + x.dump());
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

/// {"points": [...], "diam": "p/q", "d": [[...]]}; validation failures
/// surface as InvalidMetric.
inline MetricSpace metric_space(const json& j) {
    std::vector<std::string> labels;
    const json& pts = field(j, "points");
    if (!pts.is_array()) throw Error(ErrorCode::Parse, "'points' must be an array");
    for (const auto& p : pts) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    Matrix d = matrix(field(j, "d"));
    if (d.size() != labels.size())
        throw Error(ErrorCode::NonSquare, std::to_string(labels.size()) + " points but " + std::to_string(d.size()) + " rows");
    return MetricSpace::make(std::move(labels), d, rational(field(j, "diam")));
}

inline json to_json(const MetricSpace& x) {
    return {{"points", x.labels()}, {"diam", x.diam_bound().str()}, {"d", to_json(x.matrix())}};
}

/// {"space": {...} | "path/relative/to/base", "values": [...]}
inline KatetovFn katetov_fn(const json& j, const std::filesystem::path& base_dir = {}) {
    const json& s = field(j, "space");
    SpacePtr space = share(s.is_string() ? metric_space(load_file(base_dir / s.get<std::string>())) : metric_space(s));
    return KatetovFn::make(std::move(space), rationals(field(j, "values")));
}

inline json to_json(const KatetovFn& f) {
    return {{"space", to_json(*f.space())}, {"values", to_json(std::span<const Rational>(f.values()))}};
}

inline json to_json(const Approximant& a) {
    json j = to_json(a.to_metric_space());
    j["denom"] = a.denom();
    j["subset_bound"] = a.subset_bound();
    j["rounds"] = a.rounds();
    j["round_sizes"] = a.round_sizes();
    json log = json::array();
    for (const auto& r : a.log()) {
        json vals = json::array();
        for (auto v : r.values) vals.push_back(Rational(v, a.denom()).str());
        log.push_back({{"round", r.round}, {"subset", r.subset}, {"values", vals}, {"point", r.point}});
    }
    j["log"] = std::move(log);
    return j;
}

inline Approximant approximant(const json& j) {
    MetricSpace x = metric_space(j);
    const std::int64_t denom = field(j, "denom").get<std::int64_t>();
    const std::size_t sb = field(j, "subset_bound").get<std::size_t>();
    if (!j.contains("round_sizes")) return Approximant::seed(x, denom, sb);
    std::vector<std::size_t> sizes = indices(j.at("round_sizes"));
    std::vector<Realization> log;
    if (j.contains("log"))
        for (const auto& r : j.at("log")) {
            Realization z;
            z.round = field(r, "round").get<std::size_t>();
            z.subset = indices(field(r, "subset"));
            for (const auto& v : rationals(field(r, "values"))) z.values.push_back(detail::require_units(v, denom));
            z.point = field(r, "point").get<std::size_t>();
            log.push_back(std::move(z));
        }
    return Approximant::restore(x, denom, sb, std::move(sizes), std::move(log));
}

inline StepFn2D step_fn_2d(const json& j) {
    StepFn2D f{rationals(field(j, "x_breaks")), rationals(field(j, "y_breaks")), matrix(field(j, "values"))};
    f.validate();
    return f;
}

inline json to_json(const StepFn2D& f) {
    return {{"x_breaks", to_json(std::span<const Rational>(f.x_breaks))},
            {"y_breaks", to_json(std::span<const Rational>(f.y_breaks))},
            {"values", to_json(f.values)}};
}

inline StepFn1D step_fn_1d(const json& j) {
    StepFn1D f{rationals(field(j, "breaks")), rationals(field(j, "values"))};
    f.validate();
    return f;
}

inline RadialProfile profile(const json& j) {
    RadialProfile h{rationals(field(j, "breakpoints")), rationals(field(j, "values")), rational(field(j, "tail_slope"))};
    h.validate();
    return h;
}

inline json to_json(const RadialProfile& h) {
    return {{"breakpoints", to_json(std::span<const Rational>(h.breakpoints))},
            {"values", to_json(std::span<const Rational>(h.values))},
            {"tail_slope", h.tail_slope.str()}};
}

inline json to_json(const WeakSeminorm& s) {
    return {{"points", s.landmarks.space()->labels()},
            {"landmarks", s.landmarks.landmarks()},
            {"d", to_json(s.matrix)}};
}

}  // namespace mslab::io
