#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mslab/error.hpp"
#include "mslab/rational.hpp"
#include "mslab/report.hpp"

namespace mslab {

using RationalVector = std::vector<Rational>;

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in dimension");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational squared_norm(std::span<const Rational> a) { return dot(a, a); }

inline RationalVector minus(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in dimension");
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

/// Inverse stereographic projection of t in Q^n onto the unit sphere of
/// Q^(n+1): (2t, |t|^2 - 1) / (|t|^2 + 1). Exact, so the image has norm 1.
inline RationalVector stereographic(std::span<const Rational> t) {
    const Rational s = squared_norm(t);
    const Rational denom = s + Rational(1);
    RationalVector out;
    out.reserve(t.size() + 1);
    for (const auto& ti : t) out.push_back(Rational(2) * ti / denom);
    out.push_back((s - Rational(1)) / denom);
    return out;
}

/// Checks, for unit vectors u, v, z, the exact identity
///   |<u,z> - <v,z>| = |‖u-z‖^2 - ‖v-z‖^2| / 2
/// and, in floating point with slack `tol`, rho_z <= 2 d_z and d_z^2 <= 2 rho_z
/// where d_z = |‖u-z‖ - ‖v-z‖|.
inline WitnessReport hilbert_check(std::span<const Rational> u, std::span<const Rational> v,
                                   std::span<const Rational> z, double tol = 1e-9) {
    if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty vectors");
    if (u.size() != v.size() || u.size() != z.size())
        throw Error(ErrorCode::DimensionMismatch, "u, v, z differ in dimension");
    const char* names[] = {"u", "v", "z"};
    const std::span<const Rational> vecs[] = {u, v, z};
    for (int i = 0; i < 3; ++i) {
        Rational n2 = squared_norm(vecs[i]);
        if (n2 != Rational(1))
            throw Error(ErrorCode::NotOnSphere, std::string(names[i]) + " has squared norm " + n2.str());
    }

    const Rational rho = abs(dot(u, z) - dot(v, z));
    const Rational a2 = squared_norm(minus(u, z));
    const Rational b2 = squared_norm(minus(v, z));
    const Rational half_gap = abs(a2 - b2) / Rational(2);
    const double dz = std::fabs(std::sqrt(a2.to_double()) - std::sqrt(b2.to_double()));
    const double rho_d = rho.to_double();

    WitnessReport rep;
    rep.check = "hilbert";
    rep.params = {{"dim", u.size()}, {"tol", tol}};
    const bool identity = rho == half_gap;
    const bool upper = rho_d <= 2 * dz + tol;
    const bool lower = dz * dz <= 2 * rho_d + tol;
    rep.result = json{{"rho_z", rho.str()},
                      {"half_squared_gap", half_gap.str()},
                      {"d_z", dz},
                      {"identity_exact", identity},
                      {"rho_le_2dz", upper},
                      {"dz2_le_2rho", lower}};
    if (!identity || !upper || !lower) rep.fail(*rep.result);
    return rep;
}

}  // namespace mslab
