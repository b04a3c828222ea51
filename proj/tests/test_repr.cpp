#include "conjalg/diskmaps.hpp"
#include "conjalg/random.hpp"
#include "conjalg/repr.hpp"

#include <gtest/gtest.h>

using namespace conjalg;

namespace {

const FiniteDynSys kSwap{std::vector<Point>{1, 0}};
const FiniteDynSys kPencil{std::vector<Point>{1, 1, 1}};

double dev(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
double dev(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST(RepMatrix, Unit) {
    const TruncatedRep rep(kSwap, 0, 5);
    EXPECT_EQ(rep_matrix(rep, SkewPoly::one(kSwap)).matrix, Matrix::Identity(5, 5));
}

TEST(RepMatrix, BackwardShift) {
    const auto m = rep_matrix(TruncatedRep(kSwap, 0, 3), SkewPoly::shift(kSwap)).matrix;
    Matrix expect = Matrix::Zero(3, 3);
    expect(0, 1) = 1.0;
    expect(1, 2) = 1.0;
    EXPECT_EQ(m, expect);
    EXPECT_EQ(rep_matrix(TruncatedRep(kSwap, 0, 3, Convention::Forward), SkewPoly::shift(kSwap)).matrix,
              Matrix(expect.transpose()));
}

TEST(RepMatrix, DiagonalFollowsOrbit) {
    const auto m = rep_matrix(TruncatedRep(kSwap, 1, 4), SkewPoly::constant(kSwap, {10, 20})).matrix;
    EXPECT_EQ(m(0, 0), Complex(20));
    EXPECT_EQ(m(1, 1), Complex(10));
    EXPECT_EQ(m(2, 2), Complex(20));
}

TEST(RepMatrix, CovarianceExact) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_system(rng, 1 + rng.index(6));
        const auto f = random_coef(rng, s.size());
        const auto u = SkewPoly::shift(s);
        const TruncatedRep rep(s, rng.index(s.size()), 1 + rng.index(10));
        EXPECT_EQ(rep_matrix(rep, skew_mul(u, SkewPoly::constant(s, f))).matrix,
                  rep_matrix(rep, skew_mul(SkewPoly::constant(s, compose(f, s, 1)), u)).matrix);
        const Matrix mu = rep_matrix(rep, u).matrix;
        EXPECT_EQ(Matrix(mu * rep_matrix(rep, SkewPoly::constant(s, f)).matrix),
                  Matrix(rep_matrix(rep, SkewPoly::constant(s, compose(f, s, 1))).matrix * mu));
    }
}

TEST(RepMatrix, TruncationIsMultiplicative) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_system(rng, 1 + rng.index(6));
        const auto p = random_poly(rng, s, rng.index(6));
        const auto q = random_poly(rng, s, rng.index(6));
        const Point x = rng.index(s.size());
        const std::size_t n = 1 + rng.index(12);
        const TruncatedRep back(s, x, n);
        const TruncatedRep fwd(s, x, n, Convention::Forward);
        const auto pq = skew_mul(p, q);
        EXPECT_LE(dev(rep_matrix(back, pq).matrix, rep_matrix(back, p).matrix * rep_matrix(back, q).matrix), 1e-12);
        // Forward is an anti-homomorphism.
        EXPECT_LE(dev(rep_matrix(fwd, pq).matrix, rep_matrix(fwd, q).matrix * rep_matrix(fwd, p).matrix), 1e-12);
        EXPECT_EQ(rep_matrix(fwd, pq).matrix, Matrix(rep_matrix(back, pq).matrix.transpose()));
    }
}

TEST(RepMatrix, TruncationWarning) {
    const auto p = SkewPoly::monomial(kSwap, {1, 1}, 4);
    EXPECT_TRUE(rep_matrix(TruncatedRep(kSwap, 0, 4), p).truncation_warning);
    EXPECT_FALSE(rep_matrix(TruncatedRep(kSwap, 0, 5), p).truncation_warning);
    EXPECT_THROW(TruncatedRep(kSwap, 0, 0), Error);
    EXPECT_THROW(TruncatedRep(kSwap, 2, 4), Error);
}

TEST(NormEstimate, Examples) {
    const auto pts = all_points(kSwap);
    const CoefFn f{Complex{0, 3}, -2.0};
    EXPECT_DOUBLE_EQ(norm_estimate(SkewPoly::constant(kSwap, f), 8, pts), 3.0);
    EXPECT_EQ(norm_estimate(SkewPoly(kSwap), 8, pts), 0.0);
    EXPECT_NEAR(norm_estimate(SkewPoly::monomial(kSwap, {1, 1}, 1), 8, pts), 1.0, 1e-14);
}

TEST(NormEstimate, MonotoneAndBelowL1) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_system(rng, 1 + rng.index(6));
        const auto p = random_poly(rng, s, rng.index(6));
        const auto pts = all_points(s);
        for (auto conv : {Convention::Backward, Convention::Forward}) {
            double prev = 0.0;
            for (std::size_t n = 1; n <= 20; ++n) {
                const double cur = norm_estimate(p, n, pts, conv);
                EXPECT_GE(cur, prev - 1e-12);
                EXPECT_LE(cur, l1_norm(p) + 1e-12);
                prev = cur;
            }
        }
    }
}

TEST(SpectralRadius, UnitShift) {
    const auto u = SkewPoly::shift(kPencil);
    for (auto conv : {Convention::Backward, Convention::Forward}) {
        const auto r = spectral_radius_estimate(u, all_points(kPencil), 64, conv);
        ASSERT_EQ(r.power_norms.size(), 64u);
        for (double v : r.power_norms) EXPECT_NEAR(v, 1.0, 1e-12);
        EXPECT_NEAR(r.estimate, 1.0, 1e-12);
    }
}

TEST(SpectralRadius, WeightedShift) {
    const auto s = FiniteDynSys::identity(1);
    const Complex w{0.3, 0.4};
    const auto r = spectral_radius_estimate(SkewPoly::monomial(s, {w}, 1), all_points(s), 32);
    EXPECT_NEAR(r.estimate, std::abs(w), 1e-12);
}

TEST(OffFixed, Examples) {
    const FiniteDynSys s{std::vector<Point>{1, 2, 2}};
    const auto rep = build_offfixed(s, 0);
    const CoefFn f{3, 5, 7};
    Mat2 expect;
    expect << 3.0, 0.0, 0.0, 5.0;
    EXPECT_EQ(rep.apply(SkewPoly::constant(s, f)), expect);
    EXPECT_EQ(rep.apply(SkewPoly::monomial(s, f, 2)), Mat2::Zero());
    Mat2 shifted;
    shifted << 0.0, 3.0, 0.0, 0.0;
    EXPECT_EQ(rep.apply(SkewPoly::monomial(s, f, 1)), shifted);

    const auto [c1, c2] = extract_characters(rep);
    EXPECT_EQ(c1.point, 0u);
    EXPECT_EQ(c2.point, 1u);
    EXPECT_EQ(c1.disc_param, Complex{});
    EXPECT_EQ(c2.disc_param, Complex{});

    try {
        build_offfixed(s, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FixedPoint);
    }
}

TEST(OffFixed, Homomorphism) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_system(rng, 2 + rng.index(5));
        std::vector<Point> moving;
        for (Point x = 0; x < s.size(); ++x)
            if (!s.is_fixed(x)) moving.push_back(x);
        if (moving.empty()) continue;
        const auto rep = build_offfixed(s, moving[rng.index(moving.size())]);
        const auto p = random_poly(rng, s, rng.index(6));
        const auto q = random_poly(rng, s, rng.index(6));
        EXPECT_LE(dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)), 1e-12);
        const auto [c1, c2] = extract_characters(rep);
        EXPECT_EQ(c2.point, s(c1.point));
    }
}

TEST(Pencil, Examples) {
    const Complex z{0.2, 0.5};
    const auto rep = build_pencil(kPencil, 0, z);
    Mat2 u;
    u << 0.0, z, 0.0, z;
    EXPECT_EQ(rep.apply(SkewPoly::shift(kPencil)), u);
    EXPECT_EQ(rep.shift_image(), u);

    const CoefFn f{2, 3, 4};
    Mat2 diag;
    diag << 2.0, 0.0, 0.0, 3.0;
    EXPECT_EQ(rep.apply(SkewPoly::constant(kPencil, f)), diag);

    const auto [c1, c2] = extract_characters(rep);
    EXPECT_EQ(c1.point, 0u);
    EXPECT_EQ(c2.point, 1u);
    EXPECT_EQ(c2.disc_param, z);
    const auto p = SkewPoly(kPencil, {f, {1, 2, 3}, {4, 5, 6}});
    EXPECT_NEAR(std::abs(eval_character(c2, p) - (3.0 + 2.0 * z + 5.0 * z * z)), 0.0, 1e-15);
    EXPECT_LE(std::abs(rep.apply(p)(1, 1) - eval_character(c2, p)), 1e-15);

    const auto [d1, d2] = extract_characters(build_pencil(kPencil, 0, 0.0));
    EXPECT_EQ(d2.point, 1u);
    EXPECT_EQ(d2.disc_param, Complex{});
}

TEST(Pencil, Preconditions) {
    try {
        build_pencil(FiniteDynSys(std::vector<Point>{1, 2, 0}), 0, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPreperiodic);
    }
    try {
        build_pencil(kPencil, 0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OnBoundary);
    }
    EXPECT_THROW(build_pencil(kPencil, 1, 0.1), Error);
}

TEST(Pencil, Homomorphism) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        auto [s, x] = random_pencil_system(rng, 2 + rng.index(6));
        const auto rep = build_pencil(s, x, rng.in_disk(0.9));
        const auto p = random_poly(rng, s, rng.index(9));
        const auto q = random_poly(rng, s, rng.index(9));
        EXPECT_LE(dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)), 1e-12);
    }
}

TEST(FixedDerivative, IdentityFunction) {
    const auto eta = MobiusMap::rotation(Complex{0.6, 0.8});
    const Complex z{0.1, 0.2}, a{2.0, -1.0};
    const auto rep = build_fixed_derivative(eta, 0.0, z, a);
    Mat2 expect;
    expect << 0.0, a, 0.0, 0.0;
    EXPECT_EQ(rep.coefficient_image(DiskCoefFn::identity()), expect);

    Mat2 u;
    u << Complex{0.6, 0.8} * z, 0.0, 0.0, z;
    EXPECT_LE(dev(rep.shift_image(), u), 1e-15);
    EXPECT_LE(std::abs(rep.shift_image()(0, 0) / rep.shift_image()(1, 1) - Complex{0.6, 0.8}), 1e-15);
}

TEST(FixedDerivative, AtInteriorPoint) {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        const auto eta = random_elliptic(rng, rng.coin());
        const Complex x = classify(eta).distinguished_point().z;
        const Complex c{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto rep = build_fixed_derivative(eta, x, rng.in_disk(0.9), 1.0);
        // pi(z) = [[x, a], [0, x]] and a polynomial coefficient picks up f'(x).
        Mat2 expect;
        expect << x, 1.0, 0.0, x;
        EXPECT_LE(dev(rep.coefficient_image(DiskCoefFn::identity()), expect), 1e-15);
        const auto f = DiskCoefFn::polynomial({1.0, c, c * c});
        EXPECT_LE(std::abs(rep.coefficient_image(f)(0, 1) - (c + 2.0 * c * c * x)), 1e-13);
    }
}

TEST(FixedDerivative, Homomorphism) {
    Rng rng(7);
    auto random_disk_poly = [&](const MobiusMap& eta) {
        std::vector<DiskCoefFn> c;
        for (std::size_t k = 0, deg = rng.index(4); k <= deg; ++k)
            c.push_back(DiskCoefFn::polynomial({rng.gaussian_like(), rng.gaussian_like()}));
        return DiskSkewPoly(eta, std::move(c));
    };
    for (int i = 0; i < 100; ++i) {
        const auto eta = random_elliptic(rng, rng.coin());
        const Complex x = classify(eta).distinguished_point().z;
        const auto rep = build_fixed_derivative(eta, x, rng.in_disk(0.9), rng.unimodular());
        const auto p = random_disk_poly(eta);
        const auto q = random_disk_poly(eta);
        EXPECT_LE(dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)), 1e-12);
    }
}

TEST(FixedDerivative, Preconditions) {
    const auto eta = MobiusMap::dilation(0.5);
    try {
        build_fixed_derivative(eta, 0.3, 0.1, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFixedPoint);
    }
    EXPECT_THROW(build_fixed_derivative(eta, 0.0, 1.5, 1.0), Error);
    EXPECT_THROW(build_fixed_derivative(eta, 0.0, 0.5, 0.0), Error);
}
