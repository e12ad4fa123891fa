#pragma once

#include <cstddef>
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

namespace mslab {

/// Nonempty, duplicate-free set of landmark points.
class LandmarkSet {
public:
    LandmarkSet(SpacePtr space, std::vector<std::size_t> landmarks) : space_(std::move(space)), F_(std::move(landmarks)) {
        if (F_.empty()) throw Error(ErrorCode::InvalidLandmarks, "landmark set is empty");
        std::set<std::size_t> seen;
        for (auto z : F_) {
            space_->check_index(z);
            if (!seen.insert(z).second) throw Error(ErrorCode::InvalidLandmarks, "landmark " + std::to_string(z) + " repeated", {z});
        }
    }

    static LandmarkSet all(SpacePtr space) {
        std::vector<std::size_t> F(space->size());
        for (std::size_t i = 0; i < F.size(); ++i) F[i] = i;
        return LandmarkSet(std::move(space), std::move(F));
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<std::size_t>& landmarks() const { return F_; }

    /// rho_F(a,b) = max over landmarks z of |d(a,z) - d(b,z)|.
    Rational rho(std::size_t a, std::size_t b) const {
        const MetricSpace& X = *space_;
        Rational best;
        for (auto z : F_) best = max(best, abs(X(a, z) - X(b, z)));
        return best;
    }

private:
    SpacePtr space_;
    std::vector<std::size_t> F_;
};

/// The pseudometric rho_F over all points of the space.
struct WeakSeminorm {
    LandmarkSet landmarks;
    Matrix matrix;
};

inline WeakSeminorm weak_seminorm(const LandmarkSet& L) {
    const std::size_t n = L.space()->size();
    Matrix m(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            m[a][b] = L.rho(a, b);
            m[b][a] = m[a][b];
        }
    return {L, std::move(m)};
}

/// Symmetry, zero diagonal and triangle inequality (zero off-diagonal allowed).
inline std::optional<std::vector<std::size_t>> pseudometric_defect(const Matrix& m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw Error(ErrorCode::NonSquare, "matrix is not square");
        if (!m[i][i].is_zero() || m[i][i].sign() < 0) return std::vector<std::size_t>{i, i};
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] != m[j][i] || m[i][j].sign() < 0) return std::vector<std::size_t>{i, j};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (m[i][j] > m[i][k] + m[k][j]) return std::vector<std::size_t>{i, j, k};
    return std::nullopt;
}

struct ProximityVerdict {
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    bool pass() const { return witness.has_value(); }
};

/// Passes iff some a in A, b in B have d_z(a,b) < eps for every landmark z.
/// Evidence at one scale only: a pass never certifies proximity.
inline ProximityVerdict proximity_test(std::span<const std::size_t> A, std::span<const std::size_t> B,
                                       const LandmarkSet& L, const Rational& eps) {
    if (A.empty() || B.empty()) throw Error(ErrorCode::EmptySubset, "A and B must be nonempty");
    if (eps.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    for (auto a : A) L.space()->check_index(a);
    for (auto b : B) L.space()->check_index(b);
    for (auto a : A)
        for (auto b : B)
            if (L.rho(a, b) < eps) return {std::pair{a, b}};
    return {};
}

inline constexpr const char* kProximityCaveat =
    "finite evidence only: a pass at (F, eps) never certifies proximity, only non-separation at that scale";

struct GromovNet {
    std::vector<std::size_t> representatives;
    std::vector<KatetovFn> functions;  ///< elementary functions f_z of the representatives
};

/// Greedy eps-net (index order) of the elementary functions under the
/// landmark-restricted sup seminorm.
inline GromovNet gromov_approximant(const LandmarkSet& L, const Rational& eps) {
    if (eps.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    GromovNet net;
    for (std::size_t z = 0; z < L.space()->size(); ++z) {
        bool covered = false;
        for (auto r : net.representatives)
            if (L.rho(z, r) < eps) {
                covered = true;
                break;
            }
        if (!covered) {
            net.representatives.push_back(z);
            net.functions.push_back(elementary_katetov(L.space(), z));
        }
    }
    return net;
}

/// The restriction of f to the subspace S (in the given order).
inline KatetovFn restrict_katetov(const KatetovFn& f, std::span<const std::size_t> S) {
    if (S.empty()) throw Error(ErrorCode::EmptySubset, "restriction to the empty set");
    auto sub = share(f.space()->subspace(S));
    std::vector<Rational> values;
    values.reserve(S.size());
    for (auto i : S) values.push_back(f[i]);
    return KatetovFn::make(std::move(sub), std::move(values));
}

}  // namespace mslab
