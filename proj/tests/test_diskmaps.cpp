#include "conjalg/diskmaps.hpp"
#include "conjalg/oracle.hpp"
#include "conjalg/random.hpp"
#include "conjalg/repr.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace conjalg;

namespace {

const Complex kC{0.6, 0.8};

DiskKind kind_of(const MobiusMap& m) { return classify(m).kind; }

} // namespace

TEST(Mobius, Evaluation) {
    EXPECT_NEAR(std::abs(MobiusMap::remark_eta1()(0.0) - Complex(-0.5)), 0.0, 1e-15);
    EXPECT_EQ(MobiusMap::identity()(Complex(0.3, 0.7)), Complex(0.3, 0.7));
    const MobiusMap m{Complex{1, 2}, 0.5, Complex{0, 0.2}, 3.0};
    EXPECT_TRUE(compose(m, m.inverse()).is_identity());
    EXPECT_TRUE(compose(m.inverse(), m).is_identity());
}

TEST(Mobius, NormalizationAndEquality) {
    const MobiusMap m{2.0, 1.0, 0.0, 3.0};
    const MobiusMap scaled{-4.0, -2.0, 0.0, -6.0};
    EXPECT_TRUE(m.approx_equal(scaled));
    EXPECT_NEAR(std::abs(m.a() * m.d() - m.b() * m.c() - 1.0), 0.0, 1e-14);
    EXPECT_GE(m.trace().real(), 0.0);
}

TEST(Mobius, SingularAndPole) {
    try {
        MobiusMap(1.0, 2.0, 2.0, 4.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
    const auto c = MobiusMap::cayley();
    EXPECT_TRUE(c.has_pole_at(-1.0));
    EXPECT_THROW(c(-1.0), Error);
}

TEST(Mobius, DerivativeMatchesFiniteDifference) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto m = random_elliptic(rng, rng.coin());
        const Complex z = rng.in_disk(0.8);
        EXPECT_LE(std::abs(oracle::central_difference(m, z) - m.derivative(z)), 1e-6);
    }
}

TEST(Mobius, ConjugateBy) {
    const auto g = MobiusMap::disk_automorphism(Complex{0.2, -0.3});
    const auto m = MobiusMap::dilation(0.5);
    const auto c = conjugate_by(g, m);
    for (auto z : disk_samples(50)) EXPECT_LE(std::abs(c(g(z)) - g(m(z))), 1e-14);
}

TEST(SelfMap, Predicates) {
    EXPECT_TRUE(is_disk_self_map(MobiusMap::dilation(0.5)));
    EXPECT_TRUE(is_disk_automorphism(MobiusMap::rotation(kC)));
    EXPECT_FALSE(is_disk_automorphism(MobiusMap::dilation(0.5)));
    EXPECT_FALSE(is_disk_self_map(MobiusMap::dilation(1.5)));
    EXPECT_FALSE(is_disk_self_map(MobiusMap(1.0, 0.0, -0.5, 1.0)));
    EXPECT_TRUE(is_disk_self_map(MobiusMap(1.0, 0.0, -1.0, 2.0)));
    EXPECT_TRUE(is_disk_automorphism(MobiusMap::remark_eta1()));
    EXPECT_THROW(MobiusMap::rotation(2.0), Error);
}

TEST(SelfMap, ExactTestAgreesWithProbeGrid) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const MobiusMap m{rng.gaussian_like(), rng.gaussian_like(), rng.gaussian_like(), rng.gaussian_like() + 2.0};
        const bool exact = is_disk_self_map(m);
        const double probe = probe_max_modulus(m);
        // The probe grid can only underestimate the image radius.
        if (exact) {
            EXPECT_LE(probe, 1.0 + 1e-9);
        }
        if (probe > 1.0 + 1e-6) {
            EXPECT_FALSE(exact);
        }
    }
}

TEST(Classify, Rotation) {
    const auto cls = classify(MobiusMap::rotation(kC));
    EXPECT_EQ(cls.kind, DiskKind::EllipticAutomorphism);
    EXPECT_LE(std::abs(cls.distinguished_point().z), 1e-15);
    EXPECT_LE(std::abs(cls.multiplier - kC), 1e-15);
}

TEST(Classify, HalfDilation) {
    const auto cls = classify(MobiusMap::dilation(0.5));
    EXPECT_EQ(cls.kind, DiskKind::EllipticNonAutomorphism);
    EXPECT_LE(std::abs(cls.distinguished_point().z), 1e-15);
    EXPECT_LE(std::abs(cls.multiplier - 0.5), 1e-15);
}

TEST(Classify, HyperbolicPair) {
    for (const auto& m : {MobiusMap::remark_eta1(), MobiusMap::remark_eta2()}) {
        const auto cls = classify(m);
        EXPECT_EQ(cls.kind, DiskKind::Hyperbolic);
        ASSERT_EQ(cls.fixed_points.size(), 2u);
        std::vector<double> xs;
        for (const auto& fp : cls.fixed_points) {
            EXPECT_EQ(fp.location, Location::Boundary);
            xs.push_back(fp.z.real());
            EXPECT_LE(std::abs(fp.z.imag()), 1e-12);
        }
        std::sort(xs.begin(), xs.end());
        EXPECT_NEAR(xs[0], -1.0, 1e-12);
        EXPECT_NEAR(xs[1], 1.0, 1e-12);
        EXPECT_NEAR(cls.distinguished_point().z.real(), -1.0, 1e-12);
    }
}

TEST(Classify, OtherKinds) {
    EXPECT_EQ(kind_of(MobiusMap::identity()), DiskKind::Identity);
    // z / (2 - z) fixes 0 and 1.
    EXPECT_EQ(kind_of(MobiusMap(1.0, 0.0, -1.0, 2.0)), DiskKind::EllipticNonAutomorphism);
    // Parabolic automorphism: upper half plane translation w -> w + 1.
    const auto c = MobiusMap::cayley_upper();
    EXPECT_EQ(kind_of(conjugate_by(c.inverse(), MobiusMap(1.0, 1.0, 0.0, 1.0))), DiskKind::Parabolic);
    // w -> 2w + i on the half plane.
    EXPECT_EQ(kind_of(conjugate_by(c.inverse(), MobiusMap(2.0, Complex{0, 1}, 0.0, 1.0))),
              DiskKind::NonEllipticNonAutomorphism);
    try {
        classify(MobiusMap::dilation(2.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotDiskSelfMap);
    }
}

TEST(Classify, SchwarzConsistency) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const bool aut = rng.coin();
        const auto cls = classify(random_elliptic(rng, aut));
        if (aut) {
            EXPECT_EQ(cls.kind, DiskKind::EllipticAutomorphism);
            EXPECT_NEAR(std::abs(cls.multiplier), 1.0, 1e-9);
        } else {
            EXPECT_EQ(cls.kind, DiskKind::EllipticNonAutomorphism);
            EXPECT_LT(std::abs(cls.multiplier), 1.0);
        }
    }
}

TEST(Classify, MultiplierInvariance) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto m = random_elliptic(rng, rng.coin());
        const auto g = random_disk_automorphism(rng);
        EXPECT_LE(std::abs(classify(conjugate_by(g, m)).multiplier - classify(m).multiplier), 1e-10);
    }
}

TEST(Classify, InverseMultiplier) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto m = random_elliptic(rng, true);
        const Complex mu = classify(m).multiplier;
        const Complex inv = classify(m.inverse()).multiplier;
        EXPECT_LE(std::abs(inv - std::conj(mu)), 1e-10);
        EXPECT_LE(std::abs(inv * mu - 1.0), 1e-10);
    }
}

TEST(NormalForm, Examples) {
    const auto r = normal_form(MobiusMap::rotation(kC));
    EXPECT_EQ(r.kind, DiskKind::EllipticAutomorphism);
    EXPECT_LE(std::abs(r.lambda - kC), 1e-15);
    EXPECT_LE(r.kappa_modulus, 1e-15);

    EXPECT_NEAR(normal_form(MobiusMap::remark_eta1()).dilation_ratio, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(normal_form(MobiusMap::remark_eta2()).dilation_ratio, 3.0 / 5.0, 1e-12);
}

TEST(NormalForm, EllipticNormalizedShape) {
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const auto m = random_elliptic(rng, false);
        const auto nf = normal_form(m);
        // Normalized map fixes 0 and equals lambda z / (1 - kappa z).
        for (auto z : disk_samples(20)) {
            EXPECT_LE(std::abs(nf.normalized(z) - nf.lambda * z / (1.0 - nf.kappa * z)), 1e-12);
        }
    }
}

TEST(AnalyticConjugacy, Examples) {
    const auto rot = MobiusMap::rotation(kC);
    const auto w = analytically_conjugate(rot, rot);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(w->gamma.is_identity());

    EXPECT_FALSE(analytically_conjugate(MobiusMap::dilation(0.5), MobiusMap::dilation(0.25)).has_value());
    EXPECT_FALSE(analytically_conjugate(MobiusMap::remark_eta1(), MobiusMap::remark_eta2()).has_value());
}

TEST(AnalyticConjugacy, RandomConjugatesAllKinds) {
    Rng rng(7);
    const auto c = MobiusMap::cayley_upper();
    const auto probe = witness_probe();
    std::vector<MobiusMap> maps;
    for (int i = 0; i < 40; ++i) {
        maps.push_back(random_elliptic(rng, true));
        maps.push_back(random_elliptic(rng, false));
        const double t = rng.uniform(0.2, 2.0) * (rng.coin() ? 1 : -1);
        maps.push_back(conjugate_by(c.inverse(), MobiusMap(1.0, t, 0.0, 1.0)));
        maps.push_back(conjugate_by(c.inverse(), MobiusMap(rng.uniform(1.2, 3.0), rng.uniform(-1, 1), 0.0, 1.0)));
        maps.push_back(conjugate_by(c.inverse(), MobiusMap(rng.uniform(1.0, 3.0), Complex{rng.uniform(-1, 1), rng.uniform(0.2, 1)}, 0.0, 1.0)));
    }
    for (const auto& m : maps) {
        const auto g = random_disk_automorphism(rng, 0.6);
        const auto m2 = conjugate_by(g, m);
        const auto w = analytically_conjugate(m, m2);
        ASSERT_TRUE(w.has_value()) << m;
        EXPECT_LE(verify_conjugacy_witness(w->gamma, m, m2, probe), 1e-10);
        EXPECT_TRUE(is_disk_automorphism(w->gamma, 1e-8));
    }
}

TEST(AnalyticConjugacy, ParabolicSignsDiffer) {
    const auto c = MobiusMap::cayley_upper();
    const auto fwd = conjugate_by(c.inverse(), MobiusMap(1.0, 1.0, 0.0, 1.0));
    const auto back = conjugate_by(c.inverse(), MobiusMap(1.0, -1.0, 0.0, 1.0));
    EXPECT_FALSE(analytically_conjugate(fwd, back).has_value());
    EXPECT_TRUE(analytically_conjugate(fwd, conjugate_by(c.inverse(), MobiusMap(1.0, 5.0, 0.0, 1.0))).has_value());
}

TEST(IsoVerdict, Examples) {
    const auto r = MobiusMap::rotation(kC);
    EXPECT_EQ(semicrossed_iso_verdict(r, r).verdict, IsoVerdict::Conjugate);
    EXPECT_EQ(semicrossed_iso_verdict(r, MobiusMap::rotation(std::conj(kC))).verdict, IsoVerdict::InverseConjugate);
    EXPECT_EQ(semicrossed_iso_verdict(MobiusMap::dilation(0.5), MobiusMap::dilation(0.25)).verdict,
              IsoVerdict::NotIsomorphic);
    EXPECT_EQ(semicrossed_iso_verdict(MobiusMap::remark_eta1(), MobiusMap::remark_eta2()).verdict,
              IsoVerdict::NotIsomorphic);
    const auto m = MobiusMap(1.0, 0.0, -1.0, 2.0);
    EXPECT_EQ(semicrossed_iso_verdict(m, m).verdict, IsoVerdict::Conjugate);
}

TEST(IsoVerdict, RotationDichotomy) {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        Complex c;
        do c = rng.unimodular();
        while (std::abs(c.imag()) < 1e-3);
        Complex c2;
        do c2 = rng.unimodular();
        while (std::abs(c2 - c) < 1e-3 || std::abs(c2 - std::conj(c)) < 1e-3);
        const auto r = MobiusMap::rotation(c);
        EXPECT_EQ(semicrossed_iso_verdict(r, r).verdict, IsoVerdict::Conjugate);
        EXPECT_EQ(semicrossed_iso_verdict(r, MobiusMap::rotation(std::conj(c))).verdict, IsoVerdict::InverseConjugate);
        EXPECT_EQ(semicrossed_iso_verdict(r, MobiusMap::rotation(c2)).verdict, IsoVerdict::NotIsomorphic);
    }
}

TEST(IsoVerdict, ConjugatedRotationsStillInverse) {
    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        const Complex c = std::polar(1.0, rng.uniform(0.1, 3.0));
        const auto g = random_disk_automorphism(rng);
        const auto m2 = conjugate_by(g, MobiusMap::rotation(std::conj(c)));
        EXPECT_EQ(semicrossed_iso_verdict(MobiusMap::rotation(c), m2).verdict, IsoVerdict::InverseConjugate);
    }
}

TEST(Witness, SquareRadiusIntertwinesDilations) {
    const auto samples = disk_samples(1000);
    EXPECT_LE(verify_conjugacy_witness(gamma_presets::square_radius(), MobiusMap::dilation(0.5),
                                       MobiusMap::dilation(0.25), samples),
              1e-12);
    EXPECT_EQ(verify_conjugacy_witness(gamma_presets::identity(), MobiusMap::dilation(0.5),
                                       MobiusMap::dilation(0.5), samples),
              0.0);
}

TEST(Witness, CayleyCarriesHyperbolicPairToDilations) {
    const auto samples = disk_samples(1000);
    const auto e1 = MobiusMap::remark_eta1();
    const auto e2 = MobiusMap::remark_eta2();
    // Attracting point -1 goes to infinity, so the maps themselves become w -> 3w and w -> 5w/3;
    // their inverses become w -> w/3 and w -> 3w/5.
    EXPECT_LE(verify_conjugacy_witness(gamma_presets::cayley(), e1.inverse(), MobiusMap::dilation(1.0 / 3.0), samples),
              1e-10);
    EXPECT_LE(verify_conjugacy_witness(gamma_presets::cayley(), e2.inverse(), MobiusMap::dilation(3.0 / 5.0), samples),
              1e-10);
    EXPECT_LE(verify_conjugacy_witness(gamma_presets::cayley(), e1, MobiusMap::dilation(3.0), samples), 1e-10);
    EXPECT_LE(verify_conjugacy_witness(gamma_presets::cayley(), e2, MobiusMap::dilation(5.0 / 3.0), samples), 1e-10);
}

TEST(DiskAlgebra, CharacterRelation) {
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const auto m = random_elliptic(rng, rng.coin());
        const Complex x = classify(m).distinguished_point().z;
        const auto rep = build_fixed_derivative(m, x, rng.in_disk(0.9), 1.0);
        const auto [t1, t2] = extract_characters(rep);
        const auto u = DiskSkewPoly::shift(m);
        EXPECT_EQ(eval_character(t1, u), rep.multiplier * eval_character(t2, u));
        EXPECT_LE(std::abs(oracle::central_difference(m, x) - rep.multiplier), 1e-6);
    }
}
