#pragma once

// Seeded property suite over every module. Reports carry no timings so that a
// fixed seed reproduces them byte for byte.

#include "conjalg/charspace.hpp"
#include "conjalg/diskmaps.hpp"
#include "conjalg/dynsys.hpp"
#include "conjalg/json_io.hpp"
#include "conjalg/oracle.hpp"
#include "conjalg/random.hpp"
#include "conjalg/repr.hpp"
#include "conjalg/skewpoly.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conjalg {

struct SuiteOptions {
    std::uint64_t seed = kDefaultSeed;
    std::size_t max_n = 7;    // largest finite system; oracle comparisons need max_n <= 9
    std::size_t cases = 200;  // random cases per property
};

struct PropertyResult {
    std::string name;
    std::string module;
    bool passed = true;
    std::size_t cases = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    nlohmann::json failing_case; // first failure only; null when passed
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    std::size_t passed() const {
        std::size_t k = 0;
        for (const auto& p : properties) k += p.passed ? 1 : 0;
        return k;
    }
    std::size_t failed() const { return properties.size() - passed(); }
    bool all_passed() const { return failed() == 0; }
};

/// Collects the outcome of one property across its cases.
class PropertyCheck {
public:
    PropertyCheck(std::string module, std::string name, double tolerance) {
        r_.module = std::move(module);
        r_.name = std::move(name);
        r_.tolerance = tolerance;
    }

    /// Records a numeric case; the description is only built on the first failure.
    void deviation(double dev, const std::function<nlohmann::json()>& describe) {
        ++r_.cases;
        r_.max_deviation = std::max(r_.max_deviation, dev);
        if (!(dev <= r_.tolerance)) fail(describe);
    }

    void holds(bool ok, const std::function<nlohmann::json()>& describe) {
        ++r_.cases;
        if (!ok) fail(describe);
    }

    /// Exceptions inside a case count as failures.
    template <class F>
    void run_case(F&& body, const std::function<nlohmann::json()>& describe) {
        try {
            body();
        } catch (const std::exception& e) {
            ++r_.cases;
            fail([&] {
                auto j = describe();
                j["exception"] = e.what();
                return j;
            });
        }
    }

    PropertyResult result() && { return std::move(r_); }

private:
    void fail(const std::function<nlohmann::json()>& describe) {
        if (r_.passed) r_.failing_case = describe();
        r_.passed = false;
    }

    PropertyResult r_;
};

namespace detail {

using nlohmann::json;

inline std::uint64_t property_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step: independent streams per property.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double mat_dev(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

inline double mat_dev(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline json case_json(std::size_t index, json body) {
    body["case"] = index;
    return body;
}

inline std::size_t random_size(Rng& rng, std::size_t max_n) { return 1 + rng.index(max_n); }

/// Pair generator for oracle comparisons: relabeled copies, perturbed copies, independent draws.
inline std::pair<FiniteDynSys, FiniteDynSys> random_pair(Rng& rng, std::size_t max_n, std::size_t i) {
    const std::size_t n = random_size(rng, max_n);
    auto a = random_system(rng, n);
    switch (i % 4) {
    case 0:
    case 1: return {a, relabel(a, random_permutation(rng, n))};
    case 2: {
        auto b = relabel(a, random_permutation(rng, n));
        std::vector<Point> m(b.map().begin(), b.map().end());
        m[rng.index(n)] = rng.index(n);
        return {a, FiniteDynSys(std::move(m))};
    }
    default: return {a, random_system(rng, n)};
    }
}

inline DiskSkewPoly random_disk_poly(Rng& rng, const MobiusMap& eta, std::size_t degree) {
    std::vector<DiskCoefFn> coeffs;
    for (std::size_t k = 0; k <= degree; ++k) {
        std::vector<Complex> c(1 + rng.index(3));
        for (auto& v : c) v = rng.gaussian_like();
        coeffs.push_back(DiskCoefFn::polynomial(std::move(c)));
    }
    return {eta, std::move(coeffs)};
}

/// Random non-elliptic disk self-map built on the upper half plane as w -> alpha w + beta.
inline MobiusMap random_non_elliptic(Rng& rng, DiskKind kind) {
    double alpha = 1.0;
    Complex beta;
    switch (kind) {
    case DiskKind::Hyperbolic:
        alpha = rng.uniform(1.2, 4.0);
        beta = rng.uniform(-1.0, 1.0);
        break;
    case DiskKind::Parabolic: beta = rng.coin() ? rng.uniform(0.2, 2.0) : -rng.uniform(0.2, 2.0); break;
    default:
        alpha = rng.coin() ? 1.0 : rng.uniform(1.2, 4.0);
        beta = {rng.uniform(-1.0, 1.0), rng.uniform(0.2, 1.5)};
        break;
    }
    const auto c = MobiusMap::cayley_upper();
    const MobiusMap half{alpha, beta, 0.0, 1.0};
    return compose(MobiusMap::dilation(rng.unimodular()),
                   conjugate_by(c.inverse(), half));
}

inline json map_json(const MobiusMap& m) { return io::to_json(m); }

inline json poly_json(const SkewPoly& p) { return io::to_json(p); }

// ----------------------------------------------------------------- dynsys

inline PropertyResult dynsys_oracle(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("dynsys", "are_conjugate agrees with brute force", 0.0);
    const std::size_t max_n = std::min(o.max_n, kBruteForceLimit);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [a, b] = random_pair(rng, max_n, i);
        const auto fast = are_conjugate(a, b);
        const auto slow = brute_force_conjugate(a, b);
        chk.holds(fast.has_value() == slow.has_value(), [&] {
            return case_json(i, {{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"fast", fast.has_value()},
                                 {"brute_force", slow.has_value()}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult dynsys_witness(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("dynsys", "returned witnesses pass the composition check", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::size_t n = random_size(rng, o.max_n);
        auto a = random_system(rng, n);
        auto b = relabel(a, random_permutation(rng, n));
        const auto w = are_conjugate(a, b);
        chk.holds(w && is_witness(*w, a, b), [&] {
            return case_json(i, {{"a", io::to_json(a)}, {"b", io::to_json(b)},
                                 {"witness", w ? io::to_json(*w) : json(nullptr)}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult dynsys_canonical(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("dynsys", "canonical form is invariant under relabeling", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::size_t n = random_size(rng, o.max_n);
        auto a = random_system(rng, n);
        auto sigma = random_permutation(rng, n);
        auto b = relabel(a, sigma);
        chk.holds(canonical_form(a) == canonical_form(b), [&] {
            return case_json(i, {{"a", io::to_json(a)}, {"sigma", io::to_json(sigma)}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult dynsys_fixed_points(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("dynsys", "witnesses map fixed points onto fixed points", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::size_t n = random_size(rng, o.max_n);
        auto a = random_system(rng, n);
        auto b = relabel(a, random_permutation(rng, n));
        const auto w = are_conjugate(a, b);
        bool ok = w.has_value();
        if (ok) {
            auto fa = conjalg::fixed_points(a);
            std::vector<Point> image;
            for (auto x : fa) image.push_back((*w)(x));
            std::sort(image.begin(), image.end());
            ok = image == conjalg::fixed_points(b);
        }
        chk.holds(ok, [&] { return case_json(i, {{"a", io::to_json(a)}, {"b", io::to_json(b)}}); });
    }
    return std::move(chk).result();
}

// --------------------------------------------------------------- skewpoly

inline PropertyResult skew_associativity(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("skewpoly", "multiplication is associative", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        auto p = random_poly(rng, sys, rng.index(5));
        auto q = random_poly(rng, sys, rng.index(5));
        auto r = random_poly(rng, sys, rng.index(5));
        const auto l = skew_mul(skew_mul(p, q), r);
        const auto rr = skew_mul(p, skew_mul(q, r));
        chk.deviation(max_deviation(l, rr), [&] {
            return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}, {"r", poly_json(r)}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult skew_covariance(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("skewpoly", "U f = (f o eta) U", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        auto f = random_coef(rng, sys.size());
        const auto u = SkewPoly::shift(sys);
        const auto l = skew_mul(u, SkewPoly::constant(sys, f));
        const auto r = skew_mul(SkewPoly::constant(sys, compose(f, sys, 1)), u);
        chk.holds(l == r, [&] { return case_json(i, {{"system", io::to_json(sys)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult skew_additivity(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("skewpoly", "coefficient extraction is additive", 1e-15);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        auto p = random_poly(rng, sys, rng.index(6));
        auto q = random_poly(rng, sys, rng.index(6));
        const auto s = skew_add(p, q);
        double dev = 0.0;
        for (std::size_t n = 0; n < 7; ++n) {
            auto expect = coefficient(p, n);
            const auto b = coefficient(q, n);
            for (std::size_t x = 0; x < expect.size(); ++x) expect[x] += b[x];
            dev = std::max(dev, max_abs_diff(coefficient(s, n), expect));
        }
        chk.deviation(dev, [&] { return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult skew_convolution_oracle(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("skewpoly", "product matches the term-rewriting oracle", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        auto p = random_poly(rng, sys, rng.index(6));
        auto q = random_poly(rng, sys, rng.index(6));
        const auto fast = skew_mul(p, q);
        const auto slow = oracle::multiply(p, q);
        const double dev =
            fast.degree() == slow.degree() ? max_deviation(fast, slow) : std::numeric_limits<double>::infinity();
        chk.deviation(dev, [&] { return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult skew_transport(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("skewpoly", "transport composes coefficients with the inverse witness", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::size_t n = random_size(rng, o.max_n);
        auto sys = random_system(rng, n);
        auto sigma = random_permutation(rng, n);
        auto target = relabel(sys, sigma);
        auto p = random_poly(rng, sys, rng.index(5));
        const auto t = transport(p, sigma, target);
        const auto inv = sigma.inverse();
        bool ok = t.degree() == p.degree();
        for (std::size_t k = 0; ok && k < p.coeffs().size(); ++k) {
            const auto& f = p.coeffs()[k];
            for (Point y = 0; y < n; ++y) ok = ok && coefficient(t, k)[y] == f[inv(y)];
        }
        // transport is multiplicative
        auto q = random_poly(rng, sys, rng.index(4));
        ok = ok && transport(skew_mul(p, q), sigma, target) ==
                       skew_mul(t, transport(q, sigma, target));
        chk.holds(ok, [&] {
            return case_json(i, {{"p", poly_json(p)}, {"sigma", io::to_json(sigma)}});
        });
    }
    return std::move(chk).result();
}

// -------------------------------------------------------------- charspace

/// A system with at least one fixed point and one of its fixed points.
inline std::pair<FiniteDynSys, Point> random_with_fixed_point(Rng& rng, std::size_t max_n) {
    const std::size_t n = random_size(rng, max_n);
    std::vector<Point> m(n);
    for (auto& v : m) v = rng.index(n);
    const Point x = rng.index(n);
    m[x] = x;
    return {FiniteDynSys(std::move(m)), x};
}

inline PropertyResult char_multiplicative(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("charspace", "characters are multiplicative", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_with_fixed_point(rng, o.max_n);
        const Point at = rng.coin() ? x : rng.index(sys.size());
        const Complex z = sys.is_fixed(at) ? rng.in_disk(0.9) : Complex{};
        const auto ch = make_character(sys, at, z);
        auto p = random_poly(rng, sys, rng.index(7));
        auto q = random_poly(rng, sys, rng.index(7));
        const double dev = std::abs(eval_character(ch, skew_mul(p, q)) - eval_character(ch, p) * eval_character(ch, q));
        chk.deviation(dev, [&] {
            return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}, {"x", at}, {"z", io::to_json(z)}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult char_transport(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("charspace", "characters commute with transport", 1e-13);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_with_fixed_point(rng, o.max_n);
        auto sigma = random_permutation(rng, sys.size());
        auto target = relabel(sys, sigma);
        const Complex z = rng.in_disk(0.9);
        auto p = random_poly(rng, sys, rng.index(7));
        const double dev = std::abs(eval_character(make_character(target, sigma(x), z), transport(p, sigma, target)) -
                                    eval_character(make_character(sys, x, z), p));
        chk.deviation(dev, [&] {
            return case_json(i, {{"p", poly_json(p)}, {"sigma", io::to_json(sigma)}, {"x", x}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult char_kills_shift(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("charspace", "characters at non-fixed points kill positive degrees", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, 2 + rng.index(std::max<std::size_t>(o.max_n, 2) - 1));
        std::vector<Point> moving;
        for (Point x = 0; x < sys.size(); ++x)
            if (!sys.is_fixed(x)) moving.push_back(x);
        if (moving.empty()) continue;
        const Point x = moving[rng.index(moving.size())];
        auto p = random_poly(rng, sys, 1 + rng.index(6));
        const auto ch = make_character(sys, x, 0.0);
        const double dev = std::abs(eval_character(ch, p) - coefficient(p, 0)[x]);
        chk.deviation(dev, [&] { return case_json(i, {{"p", poly_json(p)}, {"x", x}}); });
    }
    return std::move(chk).result();
}

// ------------------------------------------------------------------- repr

inline PropertyResult repr_offfixed(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "off-fixed representations are homomorphisms", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_pencil_system(rng, 2 + rng.index(std::max<std::size_t>(o.max_n, 2) - 1));
        const auto rep = build_offfixed(sys, x);
        auto p = random_poly(rng, sys, rng.index(9));
        auto q = random_poly(rng, sys, rng.index(9));
        chk.deviation(mat_dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)),
                      [&] { return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}, {"x", x}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_pencil(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "pencil representations are homomorphisms", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_pencil_system(rng, 2 + rng.index(std::max<std::size_t>(o.max_n, 2) - 1));
        const Complex z = rng.in_disk(0.9);
        const auto rep = build_pencil(sys, x, z);
        auto p = random_poly(rng, sys, rng.index(9));
        auto q = random_poly(rng, sys, rng.index(9));
        chk.deviation(mat_dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)), [&] {
            return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}, {"x", x}, {"z", io::to_json(z)}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_pencil_shift(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "pencil image of U is [[0, z], [0, z]]", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_pencil_system(rng, 2 + rng.index(std::max<std::size_t>(o.max_n, 2) - 1));
        const Complex z = rng.in_disk(0.9);
        const auto rep = build_pencil(sys, x, z);
        Mat2 expect;
        expect << Complex{}, z, Complex{}, z;
        chk.holds(rep.apply(SkewPoly::shift(sys)) == expect && rep.shift_image() == expect,
                  [&] { return case_json(i, {{"system", io::to_json(sys)}, {"x", x}, {"z", io::to_json(z)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_fixed_derivative(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "fixed-point derivative representations are homomorphisms", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const auto eta = random_elliptic(rng, rng.coin());
        const auto x = classify(eta).distinguished_point().z;
        const Complex z = rng.in_disk(0.9);
        const Complex a = rng.unimodular();
        const auto rep = build_fixed_derivative(eta, x, z, a);
        auto p = random_disk_poly(rng, eta, rng.index(4));
        auto q = random_disk_poly(rng, eta, rng.index(4));
        chk.deviation(mat_dev(rep.apply(skew_mul(p, q)), rep.apply(p) * rep.apply(q)),
                      [&] { return case_json(i, {{"eta", map_json(eta)}, {"z", io::to_json(z)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_lemma_characters(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "second character sits over eta(x)", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto [sys, x] = random_pencil_system(rng, 2 + rng.index(std::max<std::size_t>(o.max_n, 2) - 1));
        const auto [a1, a2] = extract_characters(build_offfixed(sys, x));
        const auto [b1, b2] = extract_characters(build_pencil(sys, x, rng.in_disk(0.9)));
        chk.holds(a2.point == sys(a1.point) && b2.point == sys(b1.point) && a1.point == x && b1.point == x,
                  [&] { return case_json(i, {{"system", io::to_json(sys)}, {"x", x}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_truncated_covariance(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "truncated models respect U f = (f o eta) U", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        const Point x = rng.index(sys.size());
        const std::size_t trunc = 1 + rng.index(12);
        const auto conv = rng.coin() ? Convention::Backward : Convention::Forward;
        const TruncatedRep rep(sys, x, trunc, conv);
        auto f = random_coef(rng, sys.size());
        const Matrix u = rep_matrix(rep, SkewPoly::shift(sys)).matrix;
        const Matrix mf = rep_matrix(rep, SkewPoly::constant(sys, f)).matrix;
        const Matrix mg = rep_matrix(rep, SkewPoly::constant(sys, compose(f, sys, 1))).matrix;
        // Forward images multiply in the opposite order.
        const bool ok = conv == Convention::Backward ? Matrix(u * mf) == Matrix(mg * u) : Matrix(mf * u) == Matrix(u * mg);
        chk.holds(ok, [&] {
            return case_json(i, {{"system", io::to_json(sys)}, {"x", x}, {"N", trunc},
                                 {"convention", std::string(to_string(conv))}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_truncated_product(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "truncation is multiplicative (Forward reverses order)", 1e-12);
    for (std::size_t i = 0; i < o.cases; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        const Point x = rng.index(sys.size());
        const std::size_t trunc = 1 + rng.index(16);
        auto p = random_poly(rng, sys, rng.index(6));
        auto q = random_poly(rng, sys, rng.index(6));
        const auto pq = skew_mul(p, q);
        const TruncatedRep back(sys, x, trunc, Convention::Backward);
        const TruncatedRep fwd(sys, x, trunc, Convention::Forward);
        const Matrix b = rep_matrix(back, p).matrix * rep_matrix(back, q).matrix;
        const Matrix f = rep_matrix(fwd, q).matrix * rep_matrix(fwd, p).matrix;
        const double dev = std::max(mat_dev(rep_matrix(back, pq).matrix, b),
                                    std::max(mat_dev(rep_matrix(fwd, pq).matrix, f),
                                             mat_dev(rep_matrix(fwd, pq).matrix,
                                                     Matrix(rep_matrix(back, pq).matrix.transpose()))));
        chk.deviation(dev, [&] {
            return case_json(i, {{"p", poly_json(p)}, {"q", poly_json(q)}, {"x", x}, {"N", trunc}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_norm_chain(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("repr", "norm estimates grow with N and stay below the l1 norm", 1e-12);
    const std::size_t count = std::max<std::size_t>(1, o.cases / 2);
    for (std::size_t i = 0; i < count; ++i) {
        auto sys = random_system(rng, random_size(rng, o.max_n));
        auto p = random_poly(rng, sys, rng.index(6));
        const auto conv = rng.coin() ? Convention::Backward : Convention::Forward;
        const auto pts = all_points(sys);
        double prev = 0.0;
        double worst = 0.0; // largest violation of either inequality
        for (std::size_t n = 1; n <= 24; ++n) {
            const double cur = norm_estimate(p, n, pts, conv);
            worst = std::max({worst, prev - cur, cur - l1_norm(p)});
            prev = cur;
        }
        chk.deviation(worst, [&] {
            return case_json(i, {{"p", poly_json(p)}, {"convention", std::string(to_string(conv))}});
        });
    }
    return std::move(chk).result();
}

inline PropertyResult repr_shift_powers(const SuiteOptions&, Rng& rng) {
    PropertyCheck chk("repr", "powers of U have unit norm and spectral radius 1", 1e-12);
    constexpr std::size_t max_power = 64;
    for (const auto conv : {Convention::Backward, Convention::Forward}) {
        auto sys = random_system(rng, 1 + rng.index(5));
        const auto pts = all_points(sys);
        const auto report = spectral_radius_estimate(SkewPoly::shift(sys), pts, max_power, conv);
        double dev = std::abs(report.estimate - 1.0);
        for (double v : report.power_norms) dev = std::max(dev, std::abs(v - 1.0));
        chk.deviation(dev, [&] {
            return json{{"system", io::to_json(sys)}, {"convention", std::string(to_string(conv))}};
        });
    }
    return std::move(chk).result();
}

// --------------------------------------------------------------- diskmaps

inline PropertyResult disk_multiplier_invariance(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "multipliers are conjugation invariant", 1e-10);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const auto m = random_elliptic(rng, rng.coin());
        const auto g = random_disk_automorphism(rng);
        chk.run_case(
            [&] {
                const auto c = conjugate_by(g, m);
                chk.deviation(std::abs(classify(c).multiplier - classify(m).multiplier),
                              [&] { return case_json(i, {{"m", map_json(m)}, {"gamma", map_json(g)}}); });
            },
            [&] { return case_json(i, {{"m", map_json(m)}, {"gamma", map_json(g)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult disk_inverse_multiplier(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "inverse automorphisms have reciprocal conjugate multipliers", 1e-10);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const auto m = random_elliptic(rng, true);
        chk.run_case(
            [&] {
                const Complex mu = classify(m).multiplier;
                const Complex inv = classify(m.inverse()).multiplier;
                chk.deviation(std::abs(inv - 1.0 / mu) + std::abs(inv - std::conj(mu)),
                              [&] { return case_json(i, {{"m", map_json(m)}}); });
            },
            [&] { return case_json(i, {{"m", map_json(m)}}); });
    }
    return std::move(chk).result();
}

inline Complex random_nonreal_unimodular(Rng& rng) {
    for (;;) {
        const Complex c = rng.unimodular();
        if (std::abs(c.imag()) > 1e-3) return c;
    }
}

inline PropertyResult disk_rotation_dichotomy(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "rotations: conjugate, inverse-conjugate, or not isomorphic", 0.0);
    const std::size_t count = std::max<std::size_t>(1, o.cases / 4);
    for (std::size_t i = 0; i < count; ++i) {
        const Complex c = random_nonreal_unimodular(rng);
        Complex c2;
        do c2 = random_nonreal_unimodular(rng);
        while (std::abs(c2 - c) < 1e-3 || std::abs(c2 - std::conj(c)) < 1e-3);
        const auto r = MobiusMap::rotation(c);
        const bool ok = semicrossed_iso_verdict(r, r).verdict == IsoVerdict::Conjugate &&
                        semicrossed_iso_verdict(r, MobiusMap::rotation(std::conj(c))).verdict ==
                            IsoVerdict::InverseConjugate &&
                        semicrossed_iso_verdict(r, MobiusMap::rotation(c2)).verdict == IsoVerdict::NotIsomorphic;
        chk.holds(ok, [&] { return case_json(i, {{"c", io::to_json(c)}, {"c_other", io::to_json(c2)}}); });
    }
    return std::move(chk).result();
}

inline PropertyResult disk_witness_soundness(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "constructed witnesses intertwine on the probe grid", 1e-10);
    const auto probe = witness_probe();
    const DiskKind kinds[] = {DiskKind::EllipticAutomorphism, DiskKind::EllipticNonAutomorphism,
                              DiskKind::Hyperbolic, DiskKind::Parabolic, DiskKind::NonEllipticNonAutomorphism};
    for (std::size_t i = 0; i < o.cases; ++i) {
        const DiskKind kind = kinds[i % 5];
        const auto m = is_elliptic(kind) ? random_elliptic(rng, kind == DiskKind::EllipticAutomorphism)
                                         : random_non_elliptic(rng, kind);
        const auto g = random_disk_automorphism(rng, 0.6);
        const auto describe = [&] {
            return case_json(i, {{"m", map_json(m)}, {"gamma", map_json(g)}, {"kind", std::string(to_string(kind))}});
        };
        chk.run_case(
            [&] {
                const auto m2 = conjugate_by(g, m);
                const auto w = analytically_conjugate(m, m2);
                const double dev = w ? verify_conjugacy_witness(w->gamma, m, m2, probe)
                                     : std::numeric_limits<double>::infinity();
                chk.deviation(dev, describe);
            },
            describe);
    }
    return std::move(chk).result();
}

inline PropertyResult disk_derivative_relation(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "theta1(U) = eta'(x) theta2(U) with eta' matching finite differences",
                      1e-6);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const auto m = random_elliptic(rng, rng.coin());
        const Complex z = rng.in_disk(0.9);
        const auto describe = [&] { return case_json(i, {{"m", map_json(m)}, {"z", io::to_json(z)}}); };
        chk.run_case(
            [&] {
                const auto x = classify(m).distinguished_point().z;
                const auto rep = build_fixed_derivative(m, x, z, rng.unimodular());
                const auto shift = DiskSkewPoly::shift(m);
                const auto [t1, t2] = extract_characters(rep);
                const Complex th1 = eval_character(t1, shift);
                const Complex th2 = eval_character(t2, shift);
                const Mat2 img = rep.apply(shift);
                const bool exact = th1 == rep.multiplier * th2 && img(0, 0) == th1 && img(1, 1) == th2;
                const double fd = std::abs(oracle::central_difference(m, x) - m.derivative(x));
                chk.deviation(exact ? fd : std::numeric_limits<double>::infinity(), describe);
            },
            describe);
    }
    return std::move(chk).result();
}

inline PropertyResult disk_schwarz(const SuiteOptions& o, Rng& rng) {
    PropertyCheck chk("diskmaps", "elliptic multipliers obey the Schwarz lemma", 0.0);
    for (std::size_t i = 0; i < o.cases; ++i) {
        const bool automorphism = rng.coin();
        const auto m = random_elliptic(rng, automorphism);
        const auto describe = [&] { return case_json(i, {{"m", map_json(m)}}); };
        chk.run_case(
            [&] {
                const auto cls = classify(m);
                const double mod = std::abs(cls.multiplier);
                const bool ok = automorphism
                                    ? cls.kind == DiskKind::EllipticAutomorphism && std::abs(mod - 1.0) <= 1e-9
                                    : cls.kind == DiskKind::EllipticNonAutomorphism && mod < 1.0;
                chk.holds(ok, describe);
            },
            describe);
    }
    return std::move(chk).result();
}

inline PropertyResult disk_remark_examples(const SuiteOptions&, Rng&) {
    PropertyCheck chk("diskmaps", "closing examples: z/2 vs z/4 and the hyperbolic pair", 1e-10);
    const auto samples = disk_samples(1000);
    const auto half = MobiusMap::dilation(0.5);
    const auto quarter = MobiusMap::dilation(0.25);
    chk.deviation(verify_conjugacy_witness(gamma_presets::square_radius(), half, quarter, samples),
                  [] { return json{{"example", "square-radius"}}; });
    chk.holds(!analytically_conjugate(half, quarter).has_value(),
              [] { return json{{"example", "z/2 vs z/4 analytic"}}; });

    const auto e1 = MobiusMap::remark_eta1();
    const auto e2 = MobiusMap::remark_eta2();
    const auto n1 = normal_form(e1);
    const auto n2 = normal_form(e2);
    chk.deviation(std::abs(n1.dilation_ratio - 1.0 / 3.0) + std::abs(n2.dilation_ratio - 3.0 / 5.0),
                  [] { return json{{"example", "dilation ratios"}}; });
    chk.holds(semicrossed_iso_verdict(e1, e2).verdict == IsoVerdict::NotIsomorphic,
              [] { return json{{"example", "hyperbolic verdict"}}; });
    chk.deviation(verify_conjugacy_witness(gamma_presets::cayley(), e1.inverse(), MobiusMap::dilation(1.0 / 3.0),
                                           samples),
                  [] { return json{{"example", "cayley eta1"}}; });
    chk.deviation(verify_conjugacy_witness(gamma_presets::cayley(), e2.inverse(), MobiusMap::dilation(3.0 / 5.0),
                                           samples),
                  [] { return json{{"example", "cayley eta2"}}; });
    return std::move(chk).result();
}

} // namespace detail

inline SuiteReport run_verify_suite(const SuiteOptions& opts) {
    if (opts.max_n == 0 || opts.max_n > kBruteForceLimit)
        throw Error(ErrorCode::InvalidArgument,
                    "sizes must lie in [1, " + std::to_string(kBruteForceLimit) + "] for oracle comparisons");
    if (opts.cases == 0) throw Error(ErrorCode::InvalidArgument, "case count must be positive");

    using Fn = PropertyResult (*)(const SuiteOptions&, Rng&);
    static constexpr Fn properties[] = {
        detail::dynsys_oracle,           detail::dynsys_witness,
        detail::dynsys_canonical,        detail::dynsys_fixed_points,
        detail::skew_associativity,      detail::skew_covariance,
        detail::skew_additivity,         detail::skew_convolution_oracle,
        detail::skew_transport,          detail::char_multiplicative,
        detail::char_transport,          detail::char_kills_shift,
        detail::repr_offfixed,           detail::repr_pencil,
        detail::repr_pencil_shift,       detail::repr_fixed_derivative,
        detail::repr_lemma_characters,   detail::repr_truncated_covariance,
        detail::repr_truncated_product,  detail::repr_norm_chain,
        detail::repr_shift_powers,       detail::disk_multiplier_invariance,
        detail::disk_inverse_multiplier, detail::disk_rotation_dichotomy,
        detail::disk_witness_soundness,  detail::disk_derivative_relation,
        detail::disk_schwarz,            detail::disk_remark_examples,
    };

    SuiteReport report;
    report.seed = opts.seed;
    std::uint64_t index = 0;
    for (auto fn : properties) {
        Rng rng(detail::property_seed(opts.seed, index++));
        report.properties.push_back(fn(opts, rng));
    }
    return report;
}

inline nlohmann::json to_json(const SuiteReport& r, const SuiteOptions& opts) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
        props.push_back({{"module", p.module},
                         {"name", p.name},
                         {"passed", p.passed},
                         {"cases", p.cases},
                         {"max_deviation", p.max_deviation},
                         {"tolerance", p.tolerance},
                         {"failing_case", p.failing_case}});
    }
    return {{"command", "verify-suite"},
            {"seed", r.seed},
            {"sizes", opts.max_n},
            {"cases", opts.cases},
            {"passed", r.passed()},
            {"failed", r.failed()},
            {"properties", std::move(props)}};
}

} // namespace conjalg
