#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mslab;
using namespace mslab::literals;

namespace {

Matrix two_point(const Rational& d) { return {{0, d}, {d, 0}}; }

Matrix equilateral(std::size_t n, const Rational& d) {
    Matrix m(n, std::vector<Rational>(n, d));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
    return m;
}

SpacePtr space_of(const Matrix& m, const Rational& bound) { return share(MetricSpace::make({}, m, bound)); }

}  // namespace

// ---- Rational ----

TEST(Rational, ParseAndPrintCanonical) {
    EXPECT_EQ(Rational::parse("6/8").str(), "3/4");
    EXPECT_EQ(Rational::parse("-4/2").str(), "-2");
    EXPECT_EQ(Rational::parse("+7").str(), "7");
    EXPECT_EQ(Rational::parse("0/5").str(), "0");
    EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
}

TEST(Rational, RejectsMalformedText) {
    for (const char* bad : {"", "1/0", "a", "1//2", "1/ 2", "1.5", "/3", "3/"})
        EXPECT_THROW(Rational::parse(bad), Error) << bad;
}

TEST(Rational, DivisionByZeroThrows) { EXPECT_THROW(Rational(1) / Rational(0), Error); }

TEST(Rational, UnitsOnGrid) {
    EXPECT_EQ(Rational(3, 4).units(8), 6);
    EXPECT_EQ(Rational(1, 3).units(4), std::nullopt);
    EXPECT_EQ("5/6"_q.units(12), 10);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
    Rng rng(7);
    for (int t = 0; t < 500; ++t) {
        Rational a(rng.uniform(-50, 50), rng.uniform(1, 30)), b(rng.uniform(-50, 50), rng.uniform(1, 30)),
            c(rng.uniform(-50, 50), rng.uniform(1, 30));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
        EXPECT_EQ(Rational::parse(a.str()), a);
    }
}

// ---- validate_metric ----

TEST(ValidateMetric, TwoPointSpace) { EXPECT_TRUE(validate_metric(two_point(1), 1).valid()); }

TEST(ValidateMetric, TriangleViolationTriple) {
    auto v = validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, 3);
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(v.violation->kind, MetricViolation::Kind::Triangle);
    EXPECT_EQ(v.violation->indices, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(ValidateMetric, EquilateralHalf) { EXPECT_TRUE(validate_metric(equilateral(3, "1/2"_q), 1).valid()); }

TEST(ValidateMetric, PairDefectsReported) {
    EXPECT_EQ(validate_metric({{1}}, 1).violation->kind, MetricViolation::Kind::NonzeroDiagonal);
    EXPECT_EQ(validate_metric({{0, 1}, {"1/2"_q, 0}}, 1).violation->kind, MetricViolation::Kind::Asymmetric);
    EXPECT_EQ(validate_metric(two_point(0), 1).violation->kind, MetricViolation::Kind::NonPositive);
    EXPECT_EQ(validate_metric(two_point(2), 1).violation->kind, MetricViolation::Kind::ExceedsBound);
}

TEST(ValidateMetric, NonSquareThrows) { EXPECT_THROW(validate_metric({{0, 1}, {1}}, 1), Error); }

TEST(ValidateMetric, AgreesWithBruteForceOnPerturbedSpaces) {
    Rng rng(11);
    int invalid = 0;
    for (int t = 0; t < 400; ++t) {
        const std::int64_t D = rng.uniform(2, 12);
        Matrix m = gen::space(rng, static_cast<std::size_t>(rng.uniform(2, 7)), D).matrix();
        // nudge one symmetric entry, often breaking a triangle
        const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m.size()) - 2));
        const std::size_t j = i + 1;
        m[i][j] = m[j][i] = Rational(rng.uniform(1, D), D);
        const bool expect = oracle::is_metric(m, 1);
        invalid += !expect;
        EXPECT_EQ(validate_metric(m, 1).valid(), expect);
    }
    EXPECT_GT(invalid, 0);
}

TEST(ValidateMetric, LargeDenominatorsTakeExactPath) {
    // entries whose lcm does not fit 64 bits
    const Rational a(1, 1000000007), b(1, 998244353);
    Matrix m{{0, a, a + b}, {a, 0, b}, {a + b, b, 0}};
    EXPECT_TRUE(validate_metric(m, 1).valid());
    m[0][2] = m[2][0] = a + b + Rational(1, 1000000009);
    EXPECT_FALSE(validate_metric(m, 1).valid());
}

// ---- cap_metric / amalgamate ----

TEST(CapMetric, Examples) {
    auto eq = MetricSpace::make({}, equilateral(3, 1), 1);
    EXPECT_EQ(cap_metric(eq, 2).matrix(), eq.matrix());
    auto path = MetricSpace::make({}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 2);
    EXPECT_EQ(cap_metric(path, 1).matrix(), equilateral(3, 1));
    EXPECT_EQ(cap_metric(MetricSpace::make({}, two_point(3), 3), "1/2"_q).matrix(), two_point("1/2"_q));
}

TEST(Amalgamate, GlueOnePoint) {
    auto X = MetricSpace::make({"a", "b"}, two_point(1), 1);
    auto Y = MetricSpace::make({"a", "c"}, two_point(1), 1);
    auto am = amalgamate(X, Y, {{0}, {0}}, Rational(1));
    EXPECT_EQ(am.space.size(), 3u);
    EXPECT_EQ(am.space(1, 2), Rational(1));
    auto uncapped = amalgamate(X, X, {{0}, {0}}, Rational(2));
    EXPECT_EQ(uncapped.space(1, 2), Rational(2));
    EXPECT_EQ(uncapped.space.labels()[2], "b_Y");
}

TEST(Amalgamate, FullOverlapIsIdentity) {
    auto X = MetricSpace::make({}, {{0, "1/2"_q, 1}, {"1/2"_q, 0, "1/2"_q}, {1, "1/2"_q, 0}}, 1);
    auto am = amalgamate(X, X, {{0, 1, 2}, {0, 1, 2}}, Rational(1));
    EXPECT_EQ(am.space.matrix(), X.matrix());
}

TEST(Amalgamate, Errors) {
    auto X = MetricSpace::make({}, two_point(1), 1);
    auto Y = MetricSpace::make({}, two_point("1/2"_q), 1);
    EXPECT_THROW(amalgamate(X, Y, {{0, 1}, {0, 1}}, Rational(1)), Error);
    EXPECT_THROW(amalgamate(X, Y, {{}, {}}, std::nullopt), Error);
    EXPECT_THROW(amalgamate(X, Y, {{0}, {0}}, "1/2"_q), Error);
}

TEST(Amalgamate, MatchesShortestPathsOnGluedGraph) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t D = rng.uniform(2, 10);
        auto X = gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 5)), D, Rational(2));
        auto core = X.subspace(std::vector<std::size_t>{0});
        // Y extends X's point 0 by a few fresh points
        auto Y = core;
        for (int k = rng.uniform(1, 3); k > 0; --k)
            if (auto p = gen::katetov_values(rng, Y, D)) Y = gen::append_point(Y, *p);
        auto am = amalgamate(X, Y, {{0}, {0}}, Rational(2));
        // oracle: disjoint union joined at the glued point, shortest paths, cap
        const std::size_t nx = X.size(), n = nx + Y.size() - 1;
        std::vector<std::vector<std::optional<Rational>>> g(n, std::vector<std::optional<Rational>>(n));
        auto yi = [&](std::size_t j) { return j == 0 ? std::size_t{0} : nx + j - 1; };
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < nx; ++j) g[i][j] = X(i, j);
        for (std::size_t i = 0; i < Y.size(); ++i)
            for (std::size_t j = 0; j < Y.size(); ++j) g[yi(i)][yi(j)] = Y(i, j);
        EXPECT_EQ(am.space.matrix(), oracle::capped(oracle::shortest_paths(g), 2));
        EXPECT_TRUE(oracle::is_metric(am.space));
    }
}

// ---- Katetov functions ----

TEST(Katetov, Examples) {
    auto X = space_of(two_point(1), 1);
    EXPECT_TRUE(is_katetov(std::vector<Rational>{0, 1}, *X).valid());
    auto bad = is_katetov(std::vector<Rational>{0, 0}, *X);
    ASSERT_FALSE(bad.valid());
    EXPECT_EQ(bad.violation->kind, KatetovViolation::Kind::Sum);
    auto eq = space_of(equilateral(4, 1), 1);
    EXPECT_TRUE(is_katetov(std::vector<Rational>(4, "1/2"_q), *eq).valid());
    EXPECT_THROW(is_katetov(std::vector<Rational>{0}, *X), Error);
}

TEST(Katetov, ElementaryFunctions) {
    EXPECT_EQ(elementary_katetov(space_of(two_point(1), 1), 0).values(), (std::vector<Rational>{0, 1}));
    EXPECT_EQ(elementary_katetov(space_of(equilateral(3, "1/2"_q), 1), 2).values(),
              (std::vector<Rational>{"1/2"_q, "1/2"_q, 0}));
}

TEST(Katetov, ExtendAddsMidpoint) {
    auto X = MetricSpace::make({}, two_point(1), 1);
    auto e = extend_by_katetov(X, std::vector<Rational>{"1/2"_q, "1/2"_q});
    EXPECT_EQ(e.point, 2u);
    EXPECT_EQ(e.space(0, 2), "1/2"_q);
    auto eq = MetricSpace::make({}, equilateral(3, 1), 1);
    auto e3 = extend_by_katetov(eq, std::vector<Rational>{1, 1, 1});
    EXPECT_EQ(e3.space.diameter(), Rational(1));
    EXPECT_TRUE(oracle::is_metric(e3.space));
}

TEST(Katetov, ExtendRejectsDuplicatesAndViolations) {
    auto X = MetricSpace::make({}, two_point(1), 1);
    try {
        extend_by_katetov(X, std::vector<Rational>{0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicatePoint);
    }
    try {
        extend_by_katetov(X, std::vector<Rational>{"1/4"_q, "1/4"_q});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::KatetovViolation);
    }
}

TEST(Katetov, SupDistance) {
    auto X = space_of(two_point(1), 1);
    auto f0 = elementary_katetov(X, 0), f1 = elementary_katetov(X, 1);
    EXPECT_EQ(sup_distance(f0, f1), Rational(1));
    EXPECT_EQ(sup_distance(f0, f0), Rational(0));
    auto other = space_of(two_point("1/2"_q), 1);
    EXPECT_THROW(sup_distance(f0, elementary_katetov(other, 0)), Error);
}

TEST(Katetov, KuratowskiEmbeddingIsIsometric) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 7)), rng.uniform(2, 24)));
        auto fs = kuratowski_embed(X);
        ASSERT_EQ(fs.size(), X->size());
        for (std::size_t a = 0; a < fs.size(); ++a)
            for (std::size_t b = 0; b < fs.size(); ++b) {
                // oracle: max over points of |d(a,.) - d(b,.)|
                Rational best;
                for (std::size_t c = 0; c < X->size(); ++c) {
                    Rational v = (*X)(a, c) - (*X)(b, c);
                    if (v.sign() < 0) v = -v;
                    if (v > best) best = v;
                }
                EXPECT_EQ(best, (*X)(a, b));
                EXPECT_EQ(sup_distance(fs[a], fs[b]), best);
            }
    }
    EXPECT_EQ(kuratowski_embed(space_of({{0}}, 1)).front().values(), std::vector<Rational>{0});
}

TEST(Katetov, TruncationMaxStaysKatetov) {
    Rng rng(13);
    for (int t = 0; t < 300; ++t) {
        const std::int64_t D = rng.uniform(2, 16);
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 6)), D));
        auto f = gen::katetov(rng, X, D);
        const Rational lambda(rng.uniform(1, D - 1), D);
        auto v = truncate_katetov(f, lambda, TruncationMode::Max);
        EXPECT_TRUE(oracle::is_katetov(v, X->matrix(), X->diam_bound()));
    }
}

TEST(Katetov, TruncationExamples) {
    auto X = space_of(two_point(1), 1);
    auto f = elementary_katetov(X, 0);
    EXPECT_EQ(truncate_katetov(f, "1/2"_q, TruncationMode::Max), (std::vector<Rational>{"1/2"_q, 1}));
    auto half = KatetovFn::make(X, {"1/2"_q, "1/2"_q});
    EXPECT_EQ(truncate_katetov(half, "3/4"_q, TruncationMode::Min), half.values());
    EXPECT_THROW(truncate_katetov(f, 1, TruncationMode::Max), Error);
    EXPECT_THROW(truncate_katetov(f, 0, TruncationMode::Max), Error);
}

TEST(Katetov, EnumerateTwoPointGrid) {
    auto X = space_of(two_point(1), 1);
    auto got = enumerate_katetov(X, 2).collect();
    auto brute = oracle::enumerate_katetov(X->matrix(), 2, 1);
    ASSERT_EQ(got.size(), brute.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].values(), brute[i]);
    // frozen from the brute-force oracle
    const std::vector<std::vector<Rational>> expected{{0, 1}, {"1/2"_q, "1/2"_q}, {"1/2"_q, 1},
                                                      {1, 0}, {1, "1/2"_q},       {1, 1}};
    ASSERT_EQ(got.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(got[i].values(), expected[i]);
}

TEST(Katetov, EnumerateSingleton) {
    auto got = enumerate_katetov(space_of({{0}}, 1), 1).collect();
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].values(), std::vector<Rational>{0});
    EXPECT_EQ(got[1].values(), std::vector<Rational>{1});
}

TEST(Katetov, EnumerateMatchesBruteForceAndGrowsWithDenominator) {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 4)), 2));
        auto c2 = enumerate_katetov(X, 2).collect();
        auto c4 = enumerate_katetov(X, 4).collect();
        auto brute = oracle::enumerate_katetov(X->matrix(), 4, 1);
        ASSERT_EQ(c4.size(), brute.size());
        for (std::size_t i = 0; i < brute.size(); ++i) EXPECT_EQ(c4[i].values(), brute[i]);
        EXPECT_LE(c2.size(), c4.size());
    }
    EXPECT_THROW(enumerate_katetov(space_of(two_point("1/3"_q), 1), 2), Error);
}

TEST(Generators, SpacesAndFunctionsAreValid) {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t D = rng.uniform(2, 24);
        auto X = share(gen::space(rng, static_cast<std::size_t>(rng.uniform(1, 8)), D));
        EXPECT_TRUE(oracle::is_metric(*X));
        auto f = gen::katetov(rng, X, D);
        EXPECT_TRUE(oracle::is_katetov(f.values(), X->matrix(), X->diam_bound()));
    }
}

TEST(Generators, ForkedStreamsAreReproducible) {
    Rng a(42), b(42);
    EXPECT_EQ(a.fork(3).next(), b.fork(3).next());
    EXPECT_NE(a.fork(3).next(), a.fork(4).next());
    for (int i = 0; i < 1000; ++i) {
        auto v = a.uniform(-3, 5);
        EXPECT_GE(v, -3);
        EXPECT_LE(v, 5);
    }
}
