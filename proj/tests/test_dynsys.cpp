#include "conjalg/dynsys.hpp"
#include "conjalg/random.hpp"

#include <gtest/gtest.h>

using namespace conjalg;

namespace {

FiniteDynSys sys(std::vector<Point> m) { return FiniteDynSys(std::move(m)); }

} // namespace

TEST(FiniteDynSys, RejectsOutOfRangeEntries) {
    EXPECT_THROW(sys({0, 2}), Error);
    EXPECT_THROW(sys({}), Error);
    try {
        sys({5});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidSystem);
    }
}

TEST(FiniteDynSys, Iterate) {
    const auto s = sys({1, 2, 0});
    EXPECT_EQ(s.iterate(0, 0), 0u);
    EXPECT_EQ(s.iterate(0, 2), 2u);
    EXPECT_EQ(s.iterate(1, 3), 1u);
}

TEST(FixedPoints, Examples) {
    EXPECT_EQ(fixed_points(FiniteDynSys::identity(3)), (std::vector<Point>{0, 1, 2}));
    EXPECT_TRUE(fixed_points(sys({1, 0})).empty());
    EXPECT_EQ(fixed_points(sys({0, 0, 1})), (std::vector<Point>{0}));
}

TEST(OrbitStructure, Identity) {
    const auto os = orbit_structure(FiniteDynSys::identity(2));
    ASSERT_EQ(os.cycles.size(), 2u);
    EXPECT_EQ(os.cycles[0], (std::vector<Point>{0}));
    EXPECT_EQ(os.cycles[1], (std::vector<Point>{1}));
    EXPECT_EQ(os.trees[0][0], "()");
    EXPECT_EQ(os.trees[1][0], "()");
}

TEST(OrbitStructure, Swap) {
    const auto os = orbit_structure(sys({1, 0}));
    ASSERT_EQ(os.cycles.size(), 1u);
    EXPECT_EQ(os.cycles[0], (std::vector<Point>{0, 1}));
}

TEST(OrbitStructure, ChainIntoFixedPoint) {
    // 2 -> 1 -> 0 -> 0: a path of length two hangs off the fixed point.
    const auto os = orbit_structure(sys({0, 0, 1}));
    ASSERT_EQ(os.cycles.size(), 1u);
    EXPECT_EQ(os.cycles[0], (std::vector<Point>{0}));
    EXPECT_EQ(os.trees[0][0], "((()))");
}

TEST(CanonicalForm, Examples) {
    EXPECT_EQ(canonical_form(FiniteDynSys::identity(1)), canonical_form(FiniteDynSys::identity(1)));
    EXPECT_NE(canonical_form(sys({1, 0})), canonical_form(sys({0, 1})));

    const auto a = sys({1, 2, 0, 0});
    const auto b = relabel(a, ConjugacyWitness{{2, 0, 1, 3}});
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    EXPECT_TRUE(brute_force_conjugate(a, b).has_value());
}

TEST(CanonicalForm, DistinguishesTreeShapes) {
    // Two trees on one fixed point: a path of length 2 vs two leaves.
    EXPECT_NE(canonical_form(sys({0, 0, 1})), canonical_form(sys({0, 0, 0})));
    // Same multiset of trees on a 2-cycle, in different cyclic arrangements is still conjugate.
    EXPECT_EQ(canonical_form(sys({1, 0, 0, 1})), canonical_form(sys({1, 0, 1, 0})));
    // Cyclic order matters on a 3-cycle only up to rotation.
    const auto c1 = sys({1, 2, 0, 0, 1, 1});
    const auto c2 = sys({1, 2, 0, 1, 2, 2});
    EXPECT_EQ(canonical_form(c1) == canonical_form(c2), brute_force_conjugate(c1, c2).has_value());
}

TEST(CanonicalForm, RelabelingInvariance) {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 1 + rng.index(12);
        const auto s = random_system(rng, n);
        EXPECT_EQ(canonical_form(s), canonical_form(relabel(s, random_permutation(rng, n))));
    }
}

TEST(AreConjugate, Examples) {
    const auto id = FiniteDynSys::identity(3);
    const auto w = are_conjugate(id, id);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_witness(*w, id, id));

    EXPECT_FALSE(are_conjugate(sys({1, 0}), sys({0, 1})).has_value());

    const auto a = sys({1, 2, 0, 0});
    const auto b = relabel(a, ConjugacyWitness{{2, 0, 1, 3}});
    const auto wb = are_conjugate(a, b);
    ASSERT_TRUE(wb.has_value());
    EXPECT_TRUE(is_witness(*wb, a, b));
}

TEST(AreConjugate, SizeMismatch) {
    EXPECT_FALSE(are_conjugate(FiniteDynSys::identity(2), FiniteDynSys::identity(3)).has_value());
    EXPECT_FALSE(brute_force_conjugate(FiniteDynSys::identity(2), FiniteDynSys::identity(3)).has_value());
}

TEST(BruteForce, Examples) {
    const auto w = brute_force_conjugate(FiniteDynSys::identity(2), FiniteDynSys::identity(2));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->bijection, (std::vector<Point>{0, 1}));

    const auto s = brute_force_conjugate(sys({1, 0}), sys({1, 0}));
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(is_witness(*s, sys({1, 0}), sys({1, 0})));

    // Both are a path of length two into a fixed point.
    const auto a = sys({0, 0, 1});
    const auto b = sys({1, 1, 0});
    const auto wb = brute_force_conjugate(a, b);
    ASSERT_TRUE(wb.has_value());
    EXPECT_TRUE(is_witness(*wb, a, b));
    EXPECT_TRUE(are_conjugate(a, b).has_value());
}

TEST(BruteForce, RefusesLargeSystems) {
    const auto big = FiniteDynSys::identity(kBruteForceLimit + 1);
    try {
        brute_force_conjugate(big, big);
        FAIL() << "expected OracleBound";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OracleBound);
    }
}

TEST(AreConjugate, AgreesWithBruteForce) {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng.index(6);
        const auto a = random_system(rng, n);
        const auto b = (i % 2 == 0) ? relabel(a, random_permutation(rng, n)) : random_system(rng, n);
        const auto fast = are_conjugate(a, b);
        ASSERT_EQ(fast.has_value(), brute_force_conjugate(a, b).has_value()) << canonical_form(a) << " vs " << canonical_form(b);
        if (fast) {
            EXPECT_TRUE(is_witness(*fast, a, b));
            // Fixed points go onto fixed points.
            std::vector<Point> image;
            for (auto x : fixed_points(a)) image.push_back((*fast)(x));
            std::sort(image.begin(), image.end());
            EXPECT_EQ(image, fixed_points(b));
        }
    }
}

TEST(AreConjugate, LargeSystemsRoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 200 + rng.index(300);
        const auto a = random_system(rng, n);
        const auto b = relabel(a, random_permutation(rng, n));
        const auto w = are_conjugate(a, b);
        ASSERT_TRUE(w.has_value());
        EXPECT_TRUE(is_witness(*w, a, b));
    }
}

TEST(Witness, InverseAndPermutation) {
    const ConjugacyWitness w{{2, 0, 1}};
    EXPECT_TRUE(w.is_permutation());
    const auto inv = w.inverse();
    for (Point x = 0; x < 3; ++x) EXPECT_EQ(inv(w(x)), x);
    EXPECT_FALSE((ConjugacyWitness{{0, 0, 1}}).is_permutation());
    EXPECT_FALSE(is_witness(ConjugacyWitness{{0, 0}}, sys({1, 0}), sys({1, 0})));
}
