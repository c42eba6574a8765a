#include "splinter/affine.hpp"
#include "splinter/catalog.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace splinter;

namespace {

void expect_matches_oracle(const RootSystem& rs, const Weight& mu, std::int64_t k, int N) {
    const GradedCharacter ch = affine_character(rs, AffineWeight{mu, k, 0}, N);
    const oracle::AffineFreudenthal ref(rs, mu, k, N);
    for (int n = 0; n <= N; ++n) {
        FormalCharacter want;
        for (const auto& [w, m] : ref.layer(n)) want.add(w, m);
        EXPECT_EQ(ch.layer(n), want) << rs.name() << " mu=" << mu << " k=" << k << " grade " << n;
    }
}

const Splint& catalog_splint(const std::string& name) { return find_splint(builtin_catalog(), name)->splint; }

}  // namespace

TEST(AffineCharacter, A1VacuumGradeZero) {
    const RootSystem a1 = build_root_system("A1");
    const Weight zero(a1.dimension());
    const GradedCharacter ch = affine_character(a1, AffineWeight{zero, 1, 0}, 0);
    EXPECT_EQ(ch.cutoff(), 0);
    EXPECT_EQ(ch.layer(0), FormalCharacter::monomial(zero));
}

TEST(AffineCharacter, A1BasicRepresentationStrings) {
    const RootSystem a1 = build_root_system("A1");
    const Weight zero(a1.dimension());
    const GradedCharacter ch = affine_character(a1, AffineWeight{zero, 1, 0}, 8);
    EXPECT_EQ(string_function(ch, zero), (std::vector<std::int64_t>{1, 1, 2, 3, 5, 7, 11, 15, 22}));
    EXPECT_EQ(string_function(ch, a1.from_dynkin({2})), (std::vector<std::int64_t>{0, 1, 1, 2, 3, 5, 7, 11, 15}));
}

TEST(AffineCharacter, MatchesAffineFreudenthalOracle) {
    const RootSystem a1 = build_root_system("A1");
    expect_matches_oracle(a1, a1.from_dynkin({0}), 1, 6);
    expect_matches_oracle(a1, a1.from_dynkin({1}), 1, 6);
    expect_matches_oracle(a1, a1.from_dynkin({0}), 2, 5);
    expect_matches_oracle(a1, a1.from_dynkin({1}), 2, 5);
    expect_matches_oracle(a1, a1.from_dynkin({2}), 2, 5);
    expect_matches_oracle(a1, a1.from_dynkin({1}), 3, 4);
    const RootSystem a2 = build_root_system("A2");
    expect_matches_oracle(a2, a2.from_dynkin({0, 0}), 1, 3);
    expect_matches_oracle(a2, a2.from_dynkin({1, 0}), 1, 3);
    expect_matches_oracle(a2, a2.from_dynkin({1, 1}), 2, 2);
    const RootSystem b2 = build_root_system("B2");
    expect_matches_oracle(b2, b2.from_dynkin({0, 0}), 1, 2);
    expect_matches_oracle(b2, b2.from_dynkin({0, 1}), 1, 2);
    const RootSystem g2 = build_root_system("G2");
    expect_matches_oracle(g2, g2.from_dynkin({0, 0}), 1, 2);
    expect_matches_oracle(g2, g2.from_dynkin({1, 0}), 1, 2);
}

TEST(AffineCharacter, PropertyWeylInvariantLayers) {
    const RootSystem b2 = build_root_system("B2");
    const GradedCharacter ch = affine_character(b2, AffineWeight{b2.from_dynkin({1, 0}), 2, 0}, 2);
    for (std::int64_t n = 0; n <= 2; ++n)
        for (const auto& [w, m] : ch.layer(n).terms()) {
            EXPECT_GT(m, 0);
            for (std::size_t i = 0; i < b2.rank(); ++i) EXPECT_EQ(ch.layer(n).at(b2.reflect(w, i)), m);
        }
}

TEST(AffineCharacter, TrivialLevelZeroModule) {
    const RootSystem g2 = build_root_system("G2");
    const Weight zero(g2.dimension());
    const GradedCharacter ch = affine_character(g2, AffineWeight{zero, 0, 0}, 3);
    EXPECT_EQ(ch.layer(0), FormalCharacter::monomial(zero));
    for (std::int64_t n = 1; n <= 3; ++n) EXPECT_TRUE(ch.layer(n).empty());
}

TEST(AffineCharacter, RejectsBadInput) {
    const RootSystem a1 = build_root_system("A1");
    EXPECT_THROW(affine_character(a1, AffineWeight{a1.from_dynkin({2}), 1, 0}, 2), InvalidInput);  // not integrable
    EXPECT_THROW(affine_character(a1, AffineWeight{a1.from_dynkin({0}), -1, 0}, 2), InvalidInput);
    EXPECT_THROW(affine_character(a1, AffineWeight{a1.from_dynkin({0}), 1, 0}, -1), InvalidInput);
    EXPECT_THROW(affine_character(a1, AffineWeight{-a1.fundamental_weights()[0], 1, 0}, 1), InvalidInput);
    const RootSystem a1a1 = build_root_system("A1+A1");
    EXPECT_THROW(affine_character(a1a1, AffineWeight{Weight(a1a1.dimension()), 1, 0}, 1), InvalidInput);
}

TEST(AffineCharacter, NumeratorEqualsDenominatorAtLevelZero) {
    for (const char* n : {"A1", "A2", "B2", "G2"}) {
        const RootSystem rs = build_root_system(n);
        const GradedCharacter num = affine_numerator(rs, Weight(rs.dimension()), 0, 4);
        GradedCharacter d0(4);
        const FormalCharacter wd = weyl_denominator(rs);
        for (const auto& [w, c] : wd.terms()) d0.add(0, w, c);
        EXPECT_EQ(num, d0 * affine_denominator_tail(rs, 4)) << n;
    }
}

TEST(GradedBranch, A1Examples) {
    const RootSystem a1 = build_root_system("A1");
    const Weight zero(a1.dimension()), adj = a1.from_dynkin({2});
    const BranchingSeries b0 = graded_branch_to_g(a1, AffineWeight{zero, 1, 0}, 0);
    EXPECT_EQ(b0.series().size(), 1u);
    EXPECT_EQ(b0.at(zero, 0), 1);
    const BranchingSeries b1 = graded_branch_to_g(a1, AffineWeight{zero, 1, 0}, 1);
    EXPECT_EQ(b1.at(adj, 1), 1);
    EXPECT_EQ(b1.at(zero, 1), 0);
    const BranchingSeries b3 = graded_branch_to_g(a1, AffineWeight{zero, 1, 0}, 3);
    EXPECT_EQ(b3.of(zero), (std::vector<std::int64_t>{1, 0, 1, 1}));
    EXPECT_EQ(b3.of(adj), (std::vector<std::int64_t>{0, 1, 1, 2}));
}

TEST(GradedBranch, PropertyMultiplicityRecomposition) {
    // m(nu, n) = sum_xi b_xi(n) m^xi_nu, for every weight in every layer
    for (const char* name : {"A1", "A2", "B2"}) {
        const RootSystem rs = build_root_system(name);
        const GradedCharacter ch = affine_character(rs, AffineWeight{Weight(rs.dimension()), 1, 0}, 3);
        const BranchingSeries br = graded_branch_to_g(rs, ch);
        EXPECT_TRUE(br.nonnegative());
        for (std::int64_t n = 0; n <= 3; ++n) {
            FormalCharacter rebuilt;
            for (const auto& [xi, s] : br.series()) rebuilt += s[n] * freudenthal_character(rs, xi);
            EXPECT_EQ(rebuilt, ch.layer(n)) << name << " grade " << n;
        }
    }
}

TEST(StringFunction, Examples) {
    const RootSystem a1 = build_root_system("A1");
    const Weight zero(a1.dimension());
    const AffineWeight vac{zero, 1, 0};
    EXPECT_EQ(string_function(a1, vac, zero, 0), std::vector<std::int64_t>{1});
    EXPECT_EQ(string_function(a1, vac, a1.from_dynkin({6}), 3), (std::vector<std::int64_t>{0, 0, 0, 0}));
    const AffineWeight one{a1.from_dynkin({1}), 1, 0};
    EXPECT_EQ(string_function(a1, one, a1.from_dynkin({1}), 0), std::vector<std::int64_t>{1});
}

TEST(MultiplicityMatrix, A1Block) {
    const RootSystem a1 = build_root_system("A1");
    const MultiplicityMatrix m = multiplicity_matrix(a1, Rational(1));
    ASSERT_EQ(m.size(), 3u);  // 0, omega, 2 omega
    EXPECT_EQ(m.entries, (IntMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}));
    const IntMatrix inv = invert_multiplicity_matrix(m.entries);
    EXPECT_EQ(inv, (IntMatrix{{1, 0, -1}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(*m.index_of(a1.from_dynkin({2})), 2u);
    EXPECT_FALSE(m.index_of(a1.from_dynkin({3})).has_value());
}

TEST(MultiplicityMatrix, InverseProperty) {
    for (const char* n : {"A2", "B2", "G2", "A3"}) {
        const RootSystem rs = build_root_system(n);
        const MultiplicityMatrix m = multiplicity_matrix(rs, Rational(8));
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < r; ++c) EXPECT_EQ(m.entries[r][c], 0) << n;
        const IntMatrix inv = invert_multiplicity_matrix(m.entries);
        const IntMatrix id = multiply(inv, m.entries);
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m.size(); ++c) EXPECT_EQ(id[r][c], r == c ? 1 : 0);
    }
    EXPECT_EQ(invert_multiplicity_matrix(IntMatrix{{1, 0}, {0, 1}}), (IntMatrix{{1, 0}, {0, 1}}));
    EXPECT_THROW(invert_multiplicity_matrix(IntMatrix{{2, 0}, {0, 1}}), InvalidInput);
    EXPECT_THROW(invert_multiplicity_matrix(IntMatrix{{1, 0}, {1, 1}}), InvalidInput);
}

TEST(MatrixRelation, A1LevelsOneAndTwo) {
    const RootSystem a1 = build_root_system("A1");
    for (std::int64_t k : {1, 2})
        for (std::int64_t l = 0; l <= k; ++l) {
            const MatrixRelation r = matrix_relation(a1, AffineWeight{a1.from_dynkin({l}), k, 0}, 6);
            EXPECT_TRUE(r.sigma_matches) << k << "," << l;
            EXPECT_TRUE(r.inverse_ok);
            EXPECT_TRUE(r.b_matches);
        }
}

TEST(QDimension, Examples) {
    const RootSystem a1 = build_root_system("A1");
    EXPECT_EQ(q_dimension(a1, AffineWeight{Weight(a1.dimension()), 1, 0}, 6),
              (std::vector<std::int64_t>{1, 3, 4, 7, 13, 19, 29}));
    for (const char* n : {"A2", "B2", "G2"}) {
        const RootSystem rs = build_root_system(n);
        const Weight mu = rs.fundamental_weights()[0];
        EXPECT_EQ(q_dimension(rs, AffineWeight{mu, 1, 0}, 0).front(), weyl_dimension(rs, mu)) << n;
    }
}

TEST(QDimension, MatchesLayerTotals) {
    const RootSystem g2 = build_root_system("G2");
    const GradedCharacter ch = affine_character(g2, AffineWeight{Weight(g2.dimension()), 1, 0}, 2);
    const auto qd = q_dimension(g2, graded_branch_to_g(g2, ch));
    EXPECT_EQ(qd, (std::vector<std::int64_t>{1, 14, 42}));
    for (std::int64_t n = 0; n <= 2; ++n) EXPECT_EQ(qd[n], ch.layer(n).total());
}

TEST(SubalgebraBranching, TrivialModule) {
    const Splint& s = catalog_splint("G2:A2A2");
    const Weight zero(s.ambient.dimension());
    const SubalgebraBranching r = branch_affine_to_subalgebra(s, AffineWeight{zero, 1, 0}, 0);
    EXPECT_TRUE(r.match());
    EXPECT_EQ(r.composed.series().size(), 1u);
    EXPECT_EQ(r.composed.at(zero, 0), 1);
}

TEST(SubalgebraBranching, RouteEqualityAllCatalogSplints) {
    for (const auto& e : builtin_catalog()) {
        const Splint& s = e.splint;
        const SubalgebraBranching r =
            branch_affine_to_subalgebra(s, AffineWeight{Weight(s.ambient.dimension()), 1, 0}, 2);
        EXPECT_TRUE(r.match()) << s.qualified_name();
        EXPECT_TRUE(r.composed.nonnegative());
    }
    const Splint& a2 = catalog_splint("A2:A1-A1A1");
    const SubalgebraBranching r = branch_affine_to_subalgebra(a2, AffineWeight{a2.ambient.from_dynkin({1, 0}), 1, 0}, 3);
    EXPECT_TRUE(r.match());
}
