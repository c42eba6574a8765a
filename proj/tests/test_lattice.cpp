#include "splinter/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace splinter;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace

TEST(BuildRootSystem, A1Basics) {
    const RootSystem rs = build_root_system("A1");
    ASSERT_EQ(rs.positive_roots().size(), 1u);
    const Weight& a = rs.positive_roots()[0];
    EXPECT_EQ(rs.inner(a, a), 2);
    EXPECT_EQ(rs.rho(), R(1, 2) * a);
}

TEST(BuildRootSystem, A2Basics) {
    const RootSystem rs = build_root_system("A2");
    const auto& s = rs.simple_roots();
    const std::set<Weight> pos(rs.positive_roots().begin(), rs.positive_roots().end());
    EXPECT_EQ(pos, (std::set<Weight>{s[0], s[1], s[0] + s[1]}));
    EXPECT_EQ(rs.rho(), s[0] + s[1]);
    EXPECT_EQ(rs.inner(rs.rho(), rs.rho()), 2);
}

TEST(BuildRootSystem, G2Counts) {
    const RootSystem rs = build_root_system("G2");
    EXPECT_EQ(rs.positive_roots().size(), 6u);
    EXPECT_EQ(rs.dual_coxeter_number(), 4);
    EXPECT_EQ(rs.weyl_order(), 12u);
    EXPECT_EQ(rs.algebra_dimension(), 14u);
}

TEST(BuildRootSystem, TableOfInvariants) {
    struct Row {
        const char* name;
        std::size_t positive;
        std::int64_t hv;
        std::uint64_t w;
    };
    for (const Row& r : {Row{"A1", 1, 2, 2}, Row{"A3", 6, 4, 24}, Row{"B2", 4, 3, 8}, Row{"B3", 9, 5, 48},
                         Row{"C3", 9, 4, 48}, Row{"D4", 12, 6, 192}, Row{"F4", 24, 9, 1152}, Row{"E6", 36, 12, 51840}}) {
        const RootSystem rs = build_root_system(r.name);
        EXPECT_EQ(rs.positive_roots().size(), r.positive) << r.name;
        EXPECT_EQ(rs.dual_coxeter_number(), r.hv) << r.name;
        EXPECT_EQ(rs.weyl_order(), r.w) << r.name;
    }
}

TEST(BuildRootSystem, LongRootsHaveNormTwo) {
    for (const char* n : {"A2", "B3", "C2", "C3", "D4", "G2", "F4"}) {
        const RootSystem rs = build_root_system(n);
        Rational longest(0);
        for (const auto& a : rs.positive_roots()) longest = std::max(longest, rs.norm2(a));
        EXPECT_EQ(longest, 2) << n;
    }
}

TEST(BuildRootSystem, CartanMatrixConvention) {
    const RootSystem b2 = build_root_system("B2");
    EXPECT_EQ(b2.cartan_matrix(), (IntMatrix{{2, -2}, {-1, 2}}));
    const RootSystem g2 = build_root_system("G2");
    EXPECT_EQ(g2.cartan_matrix(), (IntMatrix{{2, -1}, {-3, 2}}));
}

TEST(BuildRootSystem, SemisimpleFactors) {
    const RootSystem rs = build_root_system("A1+A1");
    EXPECT_FALSE(rs.is_simple());
    EXPECT_EQ(rs.factors().size(), 2u);
    EXPECT_EQ(rs.positive_roots().size(), 2u);
    EXPECT_EQ(rs.inner(rs.simple_roots()[0], rs.simple_roots()[1]), 0);
    EXPECT_EQ(rs.dual_coxeter(), (std::vector<std::int64_t>{2, 2}));
    EXPECT_THROW((void)rs.dual_coxeter_number(), InvalidInput);
}

TEST(BuildRootSystem, RejectsBadInput) {
    for (const char* bad : {"X9", "G3", "B1", "D2", "E9", "F5", "A0", "", "A", "A1+", "+A1", "A-1"})
        EXPECT_THROW(build_root_system(bad), InvalidInput) << bad;
    EXPECT_THROW(build_root_system("A5+A4"), InvalidInput);  // rank beyond 8
    const RootSystem e8 = build_root_system("E8");
    EXPECT_THROW(weyl_orbit(e8, e8.rho()), InvalidInput);  // Weyl group beyond supported order
}

TEST(InnerProduct, Examples) {
    const RootSystem a1 = build_root_system("A1");
    const Weight& a = a1.positive_roots()[0];
    EXPECT_EQ(inner_product(a1, a, a), 2);
    const RootSystem a2 = build_root_system("A2");
    EXPECT_EQ(inner_product(a2, a2.rho(), a2.rho()), 2);
    for (const char* n : {"B2", "G2", "A3"}) {
        const RootSystem rs = build_root_system(n);
        EXPECT_EQ(inner_product(rs, Weight(rs.dimension()), rs.rho()), 0) << n;
    }
}

TEST(InnerProduct, PropertyBilinearSymmetric) {
    std::mt19937 gen(20240601);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const char* n : {"A2", "B2", "C3", "G2", "A1+B2"}) {
        const RootSystem rs = build_root_system(n);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::int64_t> x(rs.rank()), y(rs.rank()), z(rs.rank());
            for (std::size_t i = 0; i < rs.rank(); ++i) x[i] = d(gen), y[i] = d(gen), z[i] = d(gen);
            const Weight X = rs.from_simple_coordinates(x), Y = rs.from_simple_coordinates(y),
                         Z = rs.from_simple_coordinates(z);
            const Rational c(d(gen), 2);
            EXPECT_EQ(rs.inner(X, Y), rs.inner(Y, X));
            EXPECT_EQ(rs.inner(c * X + Y, Z), c * rs.inner(X, Z) + rs.inner(Y, Z));
            EXPECT_GE(rs.inner(X, X), 0);
        }
    }
}

TEST(Weights, DynkinRoundTrip) {
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> d(0, 4);
    for (const char* n : {"A3", "B3", "C2", "G2", "D4", "A1+A2"}) {
        const RootSystem rs = build_root_system(n);
        for (int t = 0; t < 20; ++t) {
            std::vector<std::int64_t> l(rs.rank());
            for (auto& v : l) v = d(gen);
            const Weight w = rs.from_dynkin(l);
            const auto back = rs.dynkin_labels(w);
            for (std::size_t i = 0; i < l.size(); ++i) EXPECT_EQ(back[i], l[i]);
            EXPECT_TRUE(rs.is_dominant(w));
        }
    }
}

TEST(WeylOrbit, A1Rho) {
    const RootSystem rs = build_root_system("A1");
    const auto orbit = weyl_orbit(rs, rs.rho());
    ASSERT_EQ(orbit.size(), 2u);
    EXPECT_EQ(orbit[0].weight, rs.rho());
    EXPECT_EQ(orbit[0].sign, 1);
    EXPECT_EQ(orbit[1].weight, -rs.rho());
    EXPECT_EQ(orbit[1].sign, -1);
}

TEST(WeylOrbit, A2RhoAndOmega) {
    const RootSystem rs = build_root_system("A2");
    const auto orbit = weyl_orbit(rs, rs.rho());
    ASSERT_EQ(orbit.size(), 6u);
    int total = 0;
    for (const auto& o : orbit) total += o.sign;
    EXPECT_EQ(total, 0);
    // sign is the parity of the distance from the dominant chamber
    for (const auto& o : orbit) {
        const auto rep = dominant_representative(rs, o.weight);
        EXPECT_EQ(rep.sign, o.sign) << o.weight;
    }
    EXPECT_EQ(weyl_orbit(rs, rs.fundamental_weights()[0]).size(), 3u);
}

TEST(WeylOrbit, PropertyOrbitSizeTimesStabilizerIsGroupOrder) {
    for (const char* n : {"A2", "B2", "G2", "A3", "C3"}) {
        const RootSystem rs = build_root_system(n);
        const auto group = oracle::weyl_group(rs);
        ASSERT_EQ(group.size(), rs.weyl_order()) << n;
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            const Weight w = rs.fundamental_weights()[i];
            const auto orbit = weyl_orbit(rs, w);
            std::set<Weight> pts;
            for (const auto& o : orbit) {
                pts.insert(o.weight);
                EXPECT_EQ(rs.norm2(o.weight), rs.norm2(w));
            }
            EXPECT_EQ(pts.size(), orbit.size());
            EXPECT_EQ(rs.weyl_order() % orbit.size(), 0u);
        }
        EXPECT_EQ(weyl_orbit(rs, rs.rho()).size(), rs.weyl_order()) << n;
    }
}

TEST(DominantRepresentative, Examples) {
    const RootSystem a1 = build_root_system("A1");
    const auto r = dominant_representative(a1, -a1.rho());
    EXPECT_EQ(r.weight, a1.rho());
    EXPECT_EQ(r.sign, -1);
    EXPECT_TRUE(r.regular);
    EXPECT_FALSE(dominant_representative(a1, Weight(a1.dimension())).regular);

    const RootSystem a2 = build_root_system("A2");
    const auto s = dominant_representative(a2, a2.simple_roots()[0]);
    EXPECT_EQ(s.weight, a2.simple_roots()[0] + a2.simple_roots()[1]);
    EXPECT_EQ(s.sign, -1);
    EXPECT_TRUE(a2.is_dominant(s.weight));
}

TEST(DominantRepresentative, PropertyRandomWeights) {
    std::mt19937 gen(99);
    std::uniform_int_distribution<int> d(-5, 5);
    for (const char* n : {"A2", "B2", "G2", "A3", "B3"}) {
        const RootSystem rs = build_root_system(n);
        for (int t = 0; t < 50; ++t) {
            std::vector<std::int64_t> l(rs.rank());
            for (auto& v : l) v = d(gen);
            Weight w(rs.dimension());
            for (std::size_t i = 0; i < l.size(); ++i) w += Rational(l[i]) * rs.fundamental_weights()[i];
            const auto rep = dominant_representative(rs, w);
            EXPECT_TRUE(rs.is_dominant(rep.weight));
            EXPECT_EQ(rs.norm2(rep.weight), rs.norm2(w));
            bool on_wall = false;
            for (const auto& a : rs.positive_roots()) on_wall |= rs.inner(w, a) == 0;
            EXPECT_EQ(rep.regular, !on_wall);
        }
    }
}

TEST(RootSubsystem, G2LongRootsAreA2) {
    const RootSystem g2 = build_root_system("G2");
    std::vector<Weight> longs;
    for (const auto& a : g2.all_roots())
        if (g2.norm2(a) == 2) longs.push_back(a);
    ASSERT_EQ(longs.size(), 6u);
    const RootSubsystem sub = root_subsystem(g2, longs);
    EXPECT_EQ(sub.abstract.name(), "A2");
    EXPECT_EQ(sub.realized.positive_roots().size(), 3u);
    for (const auto& a : sub.realized.positive_roots())
        EXPECT_TRUE(std::find(longs.begin(), longs.end(), a) != longs.end());
}

TEST(RootSubsystem, B2LongRootsAreA1A1) {
    const RootSystem b2 = build_root_system("B2");
    std::vector<Weight> longs;
    for (const auto& a : b2.all_roots())
        if (b2.norm2(a) == 2) longs.push_back(a);
    const RootSubsystem sub = root_subsystem(b2, longs);
    EXPECT_EQ(sub.abstract.name(), "A1+A1");
}

TEST(RootSubsystem, A2SingleRootPair) {
    const RootSystem a2 = build_root_system("A2");
    const Weight a = a2.simple_roots()[0];
    EXPECT_EQ(root_subsystem(a2, {a, -a}).abstract.name(), "A1");
}

TEST(RootSubsystem, NotClosedIsRejected) {
    const RootSystem a2 = build_root_system("A2");
    const Weight a = a2.simple_roots()[0], b = a2.simple_roots()[1];
    try {
        root_subsystem(a2, {a, -a, b, -b});
        FAIL() << "expected rejection";
    } catch (const InvalidInput& ex) {
        EXPECT_NE(std::string(ex.what()).find("+"), std::string::npos) << ex.what();
    }
}

TEST(Ellipsoid, CountsLatticePointsInA2Ball) {
    const RootSystem a2 = build_root_system("A2");
    RationalMatrix G(2, std::vector<Rational>(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) G[i][j] = a2.inner(a2.simple_roots()[i], a2.simple_roots()[j]);
    std::size_t count = 0;
    for_each_in_ellipsoid(G, {Rational(0), Rational(0)}, Rational(2), [&](const std::vector<std::int64_t>&) { ++count; });
    EXPECT_EQ(count, 7u);  // origin plus the six roots
}
