#pragma once

// Slow reference implementations used to cross-check the fast paths.

#include "conjalg/dynsys.hpp"
#include "conjalg/mobius.hpp"
#include "conjalg/skewpoly.hpp"

#include <map>
#include <vector>

namespace conjalg::oracle {

/// One word f U^k of a skew polynomial.
struct Term {
    CoefFn coef;
    std::size_t power = 0;
};

inline std::vector<Term> expand(const SkewPoly& p) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) out.push_back({p.coeffs()[k], k});
    return out;
}

/// Moves one U past g: U g = (g o eta) U.
inline CoefFn step(const CoefFn& g, const FiniteDynSys& sys) {
    CoefFn out(g.size());
    for (Point x = 0; x < g.size(); ++x) out[x] = g[sys(x)];
    return out;
}

/// (f U^a)(g U^b) rewritten as f * (g o eta^a) U^(a+b) by a single-step rewrites.
inline Term rewrite(const Term& l, const Term& r, const FiniteDynSys& sys) {
    CoefFn g = r.coef;
    for (std::size_t i = 0; i < l.power; ++i) g = step(g, sys);
    CoefFn prod(g.size());
    for (Point x = 0; x < g.size(); ++x) prod[x] = l.coef[x] * g[x];
    return {std::move(prod), l.power + r.power};
}

/// Product by expanding into words, rewriting each pair, and collecting by power.
inline SkewPoly multiply(const SkewPoly& p, const SkewPoly& q) {
    const auto& sys = p.system();
    std::map<std::size_t, CoefFn> collected;
    for (const auto& l : expand(p)) {
        for (const auto& r : expand(q)) {
            auto t = rewrite(l, r, sys);
            auto [it, fresh] = collected.try_emplace(t.power, CoefFn(sys.size()));
            for (Point x = 0; x < sys.size(); ++x) it->second[x] += t.coef[x];
        }
    }
    std::vector<CoefFn> coeffs;
    for (auto& [k, f] : collected) {
        coeffs.resize(k + 1, CoefFn(sys.size()));
        coeffs[k] = std::move(f);
    }
    return SkewPoly(sys, std::move(coeffs));
}

/// Central difference (m(z + h) - m(z - h)) / 2h.
inline Complex central_difference(const MobiusMap& m, Complex z, double h = 1e-5) {
    return (m(z + h) - m(z - h)) / (2.0 * h);
}

} // namespace conjalg::oracle
