#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/report.hpp"

namespace mslab {

using RadoVertex = std::uint64_t;

/// BIT graph: i ~ j iff bit min(i,j) of max(i,j) is set.
inline bool rado_adjacent(RadoVertex i, RadoVertex j) {
    if (i == j) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(i) + " compared with itself");
    const RadoVertex lo = std::min(i, j), hi = std::max(i, j);
    return lo < 64 && ((hi >> lo) & 1u) != 0;
}

inline int rado_metric(RadoVertex i, RadoVertex j) {
    if (i == j) return 0;
    return rado_adjacent(i, j) ? 1 : 2;
}

/// w adjacent to all of U and none of V: bits of U plus a fresh top bit.
inline RadoVertex rado_extension_witness(const std::set<RadoVertex>& U, const std::set<RadoVertex>& V) {
    for (auto u : U)
        if (V.count(u)) throw Error(ErrorCode::InvalidArgument, "U and V share vertex " + std::to_string(u), {u});
    RadoVertex top = 0;
    bool any = false;
    for (const auto* s : {&U, &V})
        if (!s->empty()) {
            top = std::max(top, *s->rbegin());
            any = true;
        }
    const RadoVertex N = any ? top + 1 : 0;
    if (N >= 64) throw Error(ErrorCode::InvalidArgument, "witness needs a bit beyond 63");
    RadoVertex w = RadoVertex{1} << N;
    for (auto u : U) w |= RadoVertex{1} << u;
    return w;
}

inline MetricSpace rado_space(std::span<const RadoVertex> vertices) {
    const std::size_t n = vertices.size();
    std::vector<Rational> flat(n * n);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(vertices[i]));
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = Rational(rado_metric(vertices[i], vertices[j]));
    }
    return MetricSpace::from_flat(std::move(labels), std::move(flat), Rational(2));
}

/// Finite partial function into {1,2}.
struct BasisCode {
    std::map<RadoVertex, int> assignment;

    /// "0:1,1:2"; the empty string is the empty code.
    static BasisCode parse(std::string_view text) {
        BasisCode c;
        while (!text.empty()) {
            const auto comma = text.find(',');
            const std::string_view item = text.substr(0, comma);
            const auto colon = item.find(':');
            if (colon == std::string_view::npos) throw Error(ErrorCode::Parse, "expected vertex:value in '" + std::string(item) + "'");
            RadoVertex v = 0;
            int val = 0;
            const auto a = item.substr(0, colon), b = item.substr(colon + 1);
            auto r1 = std::from_chars(a.data(), a.data() + a.size(), v);
            auto r2 = std::from_chars(b.data(), b.data() + b.size(), val);
            if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
                r2.ptr != b.data() + b.size() || (val != 1 && val != 2))
                throw Error(ErrorCode::Parse, "bad code entry '" + std::string(item) + "'");
            if (!c.assignment.emplace(v, val).second)
                throw Error(ErrorCode::Parse, "vertex " + std::to_string(v) + " assigned twice");
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return c;
    }

    std::string str() const {
        std::string out;
        for (const auto& [v, x] : assignment) {
            if (!out.empty()) out += ',';
            out += std::to_string(v) + ':' + std::to_string(x);
        }
        return out;
    }

    bool extends(const BasisCode& p) const {
        for (const auto& [v, x] : p.assignment) {
            auto it = assignment.find(v);
            if (it == assignment.end() || it->second != x) return false;
        }
        return true;
    }

    bool covers(const BasisCode& p) const {
        for (const auto& [v, x] : p.assignment)
            if (!assignment.count(v)) return false;
        return true;
    }

    bool compatible(const BasisCode& q) const {
        for (const auto& [v, x] : q.assignment) {
            auto it = assignment.find(v);
            if (it != assignment.end() && it->second != x) return false;
        }
        return true;
    }

    friend bool operator==(const BasisCode&, const BasisCode&) = default;
};

inline BasisCode basis_union(const BasisCode& p, const BasisCode& q) {
    if (!p.compatible(q)) throw Error(ErrorCode::IncompatibleCodes, "codes " + p.str() + " and " + q.str() + " conflict");
    BasisCode u = p;
    u.assignment.insert(q.assignment.begin(), q.assignment.end());
    return u;
}

inline bool basis_member(const BasisCode& p, RadoVertex b) {
    for (const auto& [a, x] : p.assignment)
        if (rado_metric(a, b) != x) return false;
    return true;
}

/// Membership of a point of {1,2}^R known only through the finite data `s`.
inline bool basis_member(const BasisCode& p, const BasisCode& s) {
    if (!s.covers(p))
        throw Error(ErrorCode::UndeterminedMembership, "code " + s.str() + " does not decide membership in B_{" + p.str() + "}");
    return s.extends(p);
}

inline constexpr const char* kBasisCaveat =
    "finite fragment only: base axioms are checked on the sample, the compactification itself is not verified";

/// Base-axiom checks on a finite sample of vertices and codes. Codes that
/// cannot decide a membership are counted and skipped.
inline WitnessReport basis_refinement_check(const BasisCode& p, const BasisCode& q, std::span<const RadoVertex> vertices,
                                            std::span<const BasisCode> codes) {
    WitnessReport rep;
    rep.check = "rado.basis";
    rep.params = {{"p", p.str()}, {"q", q.str()}, {"vertices", vertices.size()}, {"codes", codes.size()}};
    rep.caveat = kBasisCaveat;
    std::int64_t undetermined = 0, in_p = 0, in_q = 0, in_both = 0;
    std::optional<json> witness;

    auto decide = [&](const BasisCode& c, const BasisCode& s) -> std::optional<bool> {
        if (!s.covers(c)) return std::nullopt;
        return basis_member(c, s);
    };

    const bool q_extends_p = q.extends(p);
    const bool compatible = p.compatible(q);
    std::string mode = q_extends_p ? "refinement" : compatible ? "intersection" : "conflict";
    rep.params["mode"] = mode;
    const BasisCode pq = compatible ? basis_union(p, q) : BasisCode{};

    for (auto b : vertices) {
        const bool mp = basis_member(p, b), mq = basis_member(q, b);
        in_p += mp;
        in_q += mq;
        in_both += mp && mq;
        if (witness) continue;
        if (q_extends_p && mq && !mp) witness = json{{"vertex", b}, {"reason", "in B_q but not in B_p"}};
        if (compatible && basis_member(pq, b) != (mp && mq))
            witness = json{{"vertex", b}, {"reason", "B_{p u q} differs from B_p n B_q"}};
        if (!compatible && mp && mq) witness = json{{"vertex", b}, {"reason", "conflicting codes share a vertex"}};
    }
    for (const auto& s : codes) {
        const auto mp = decide(p, s), mq = decide(q, s);
        if (!mp || !mq) {
            ++undetermined;
            continue;
        }
        if (witness) continue;
        if (q_extends_p && *mq && !*mp) witness = json{{"code", s.str()}, {"reason", "in B_q but not in B_p"}};
        if (compatible && s.covers(pq) && basis_member(pq, s) != (*mp && *mq))
            witness = json{{"code", s.str()}, {"reason", "B_{p u q} differs from B_p n B_q"}};
        if (!compatible && *mp && *mq) witness = json{{"code", s.str()}, {"reason", "conflicting codes share a point"}};
    }
    rep.counts["vertices_in_p"] = in_p;
    rep.counts["vertices_in_q"] = in_q;
    rep.counts["vertices_in_both"] = in_both;
    rep.counts["codes_undetermined"] = undetermined;
    if (witness) rep.fail(*witness);
    return rep;
}

}  // namespace mslab
