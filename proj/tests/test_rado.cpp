#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mslab;

namespace {

// independent reading of the BIT rule: write the larger vertex in binary as
// a string and look up the character for the smaller one
bool bit_oracle(std::uint64_t i, std::uint64_t j) {
    const auto lo = std::min(i, j), hi = std::max(i, j);
    std::string bits;
    for (auto v = hi; v != 0; v >>= 1) bits.push_back((v & 1) ? '1' : '0');
    return lo < bits.size() && bits[lo] == '1';
}

}  // namespace

TEST(Rado, AdjacencyGolden) {
    EXPECT_TRUE(rado_adjacent(0, 1));
    EXPECT_TRUE(rado_adjacent(1, 2));
    EXPECT_FALSE(rado_adjacent(0, 2));
    EXPECT_TRUE(rado_adjacent(2, 0) == rado_adjacent(0, 2));
    EXPECT_FALSE(rado_adjacent(70, 3));  // bit 3 of 70 = 0b1000110
    EXPECT_TRUE(rado_adjacent(70, 2));
    EXPECT_FALSE(rado_adjacent(64, 1ull << 40));
    EXPECT_THROW(rado_adjacent(5, 5), Error);
}

TEST(Rado, AdjacencyMatchesOracle) {
    for (std::uint64_t i = 0; i < 200; ++i)
        for (std::uint64_t j = 0; j < 200; ++j)
            if (i != j) ASSERT_EQ(rado_adjacent(i, j), bit_oracle(i, j)) << i << ' ' << j;
    Rng rng(401);
    for (int t = 0; t < 2000; ++t) {
        const auto i = static_cast<std::uint64_t>(rng.uniform(0, 1 << 20)), j = static_cast<std::uint64_t>(rng.uniform(0, 1 << 20));
        if (i != j) EXPECT_EQ(rado_metric(i, j) == 1, bit_oracle(i, j));
    }
}

TEST(Rado, MetricSpaceValid) {
    std::vector<RadoVertex> vs;
    for (RadoVertex v = 0; v < 40; ++v) vs.push_back(v);
    auto X = rado_space(vs);
    EXPECT_TRUE(oracle::is_metric(X));
    EXPECT_EQ(X(0, 1), Rational(1));
    EXPECT_EQ(X(0, 2), Rational(2));
}

TEST(Rado, WitnessExamples) {
    EXPECT_EQ(rado_extension_witness({0}, {2}), 9u);
    EXPECT_EQ(rado_extension_witness({1, 3}, {0}), 26u);
    EXPECT_EQ(rado_extension_witness({}, {}), 1u);
    EXPECT_THROW(rado_extension_witness({1}, {1}), Error);
    EXPECT_THROW(rado_extension_witness({63}, {}), Error);
}

TEST(Rado, WitnessExhaustiveSmall) {
    // every disjoint pair U, V inside {0..7}
    for (int mask = 0; mask < 6561; ++mask) {
        std::set<RadoVertex> U, V;
        int m = mask;
        for (RadoVertex v = 0; v < 8; ++v, m /= 3) {
            if (m % 3 == 1) U.insert(v);
            if (m % 3 == 2) V.insert(v);
        }
        const auto w = rado_extension_witness(U, V);
        for (auto u : U) ASSERT_TRUE(bit_oracle(w, u));
        for (auto v : V) ASSERT_FALSE(bit_oracle(w, v));
        ASSERT_FALSE(U.count(w) || V.count(w));
    }
}

TEST(BasisCode, ParseAndPrint) {
    auto c = BasisCode::parse("3:2,0:1");
    EXPECT_EQ(c.str(), "0:1,3:2");
    EXPECT_TRUE(BasisCode::parse("").assignment.empty());
    for (const char* bad : {"0", "0:3", "a:1", "0:1,0:2", ":1"}) EXPECT_THROW(BasisCode::parse(bad), Error) << bad;
}

TEST(BasisCode, MembershipExamples) {
    auto p = BasisCode::parse("0:1");
    // vertices adjacent to 0 are the odd ones
    for (RadoVertex b = 1; b < 64; ++b) EXPECT_EQ(basis_member(p, b), b % 2 == 1);
    EXPECT_FALSE(basis_member(p, 0));  // d(0,0) = 0
    EXPECT_TRUE(basis_member(p, BasisCode::parse("0:1,5:2")));
    EXPECT_FALSE(basis_member(p, BasisCode::parse("0:2")));
    try {
        basis_member(p, BasisCode::parse("1:1"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndeterminedMembership);
    }
    EXPECT_TRUE(basis_member(BasisCode{}, 17));
}

TEST(BasisCode, RefinementShrinksSets) {
    Rng rng(403);
    for (int t = 0; t < 300; ++t) {
        BasisCode p, q;
        for (int k = 0; k < 3; ++k) p.assignment[static_cast<RadoVertex>(rng.uniform(0, 10))] = static_cast<int>(rng.uniform(1, 2));
        q = p;
        for (int k = 0; k < 2; ++k) q.assignment.emplace(static_cast<RadoVertex>(rng.uniform(0, 10)), static_cast<int>(rng.uniform(1, 2)));
        ASSERT_TRUE(q.extends(p));
        for (RadoVertex b = 11; b < 300; ++b)
            if (basis_member(q, b)) EXPECT_TRUE(basis_member(p, b));
        std::vector<RadoVertex> vs;
        for (RadoVertex b = 0; b < 128; ++b) vs.push_back(b);
        auto rep = basis_refinement_check(p, q, vs, std::vector<BasisCode>{q, p});
        EXPECT_TRUE(rep.passed());
        EXPECT_EQ(rep.params["mode"], "refinement");
        EXPECT_LE(rep.counts["vertices_in_q"].get<std::int64_t>(), rep.counts["vertices_in_p"].get<std::int64_t>());
    }
}

TEST(BasisCode, IntersectionAndConflict) {
    auto p = BasisCode::parse("0:1"), q = BasisCode::parse("1:1"), r = BasisCode::parse("0:2");
    std::vector<RadoVertex> vs;
    for (RadoVertex b = 0; b < 64; ++b) vs.push_back(b);
    std::vector<BasisCode> codes{BasisCode::parse("0:1,1:1"), BasisCode::parse("0:1"), BasisCode::parse("2:2")};
    auto i = basis_refinement_check(p, q, vs, codes);
    EXPECT_TRUE(i.passed());
    EXPECT_EQ(i.params["mode"], "intersection");
    EXPECT_EQ(i.counts["codes_undetermined"], 2);
    // odd vertices with bit 1 set: 3 mod 4, above 1
    EXPECT_EQ(i.counts["vertices_in_both"], 16);
    auto c = basis_refinement_check(p, r, vs, codes);
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.params["mode"], "conflict");
    EXPECT_THROW(basis_union(p, r), Error);
    EXPECT_EQ(basis_union(p, q).str(), "0:1,1:1");
}
