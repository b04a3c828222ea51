#pragma once

#include "conjalg/charspace.hpp"
#include "conjalg/diskmaps.hpp"
#include "conjalg/dynsys.hpp"
#include "conjalg/json_io.hpp"
#include "conjalg/random.hpp"
#include "conjalg/repr.hpp"
#include "conjalg/verify_suite.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace conjalg::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailed = 1, kParse = 2, kModule = 3 };

namespace detail {

/// Inline JSON when the argument starts with '{', a file path otherwise.
inline json load_json(const std::string& arg, std::filesystem::path* origin = nullptr) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw io::ParseError("cannot open \"" + arg + "\"");
    if (origin) *origin = std::filesystem::path(arg).parent_path();
    return json::parse(in);
}

inline FiniteDynSys load_system(const std::string& arg) { return io::system_from_json(load_json(arg)); }

inline SkewPoly load_poly(const std::string& arg) {
    std::filesystem::path origin;
    const auto j = load_json(arg, &origin);
    return io::poly_from_json(j, [&](const std::string& ref) {
        const auto path = std::filesystem::path(ref).is_absolute() ? std::filesystem::path(ref) : origin / ref;
        return load_system(path.string());
    });
}

inline MobiusMap load_map(const std::string& arg) { return io::map_from_json(load_json(arg)); }

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CONJ_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const auto v = std::stoull(s, &used);
            if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw io::ParseError(std::string("CONJ_SEED must be a non-negative integer, got \"") + env + "\"");
        }
    }
    return kDefaultSeed;
}

inline json witness_json(const std::optional<ConjugationWitnessMobius>& w) {
    if (!w) return nullptr;
    auto j = io::to_json(w->gamma);
    j["max_deviation"] = w->max_deviation;
    return j;
}

inline PointMap gamma_preset(const std::string& name) {
    if (name == "identity") return gamma_presets::identity();
    if (name == "square-radius") return gamma_presets::square_radius();
    if (name == "cayley") return gamma_presets::cayley();
    throw io::ParseError("unknown witness preset \"" + name + "\" (identity, square-radius, cayley)");
}

inline json cmd_finite(const std::string& a_arg, const std::string& b_arg) {
    const auto a = load_system(a_arg);
    const auto b = load_system(b_arg);
    const auto w = are_conjugate(a, b);
    return {{"command", "finite"},
            {"conjugate", w.has_value()},
            {"witness", w ? io::to_json(*w) : json(nullptr)},
            {"canonical_a", canonical_form(a)},
            {"canonical_b", canonical_form(b)}};
}

inline json cmd_canon(const std::string& arg) {
    const auto sys = load_system(arg);
    const auto orbits = orbit_structure(sys);
    return {{"command", "canon"},
            {"canonical", canonical_form(sys)},
            {"cycles", orbits.cycles},
            {"trees", orbits.trees},
            {"fixed_points", fixed_points(sys)}};
}

inline json cmd_char_space(const std::string& arg, double radius) {
    auto out = io::to_json(build_catalog(load_system(arg), radius));
    out["command"] = "char-space";
    return out;
}

inline json cmd_norms(const std::string& arg, std::size_t trunc, Convention conv) {
    const auto p = load_poly(arg);
    const auto pts = all_points(p.system());
    const double l1 = l1_norm(p);
    bool monotone = true;
    bool below_l1 = true;
    double prev = 0.0;
    double estimate = 0.0;
    for (std::size_t n = 1; n <= trunc; ++n) {
        estimate = norm_estimate(p, n, pts, conv);
        monotone = monotone && estimate >= prev - 1e-12;
        below_l1 = below_l1 && estimate <= l1 + 1e-12;
        prev = estimate;
    }
    const bool warning = p.degree() >= static_cast<std::ptrdiff_t>(trunc);
    return {{"command", "norms"},        {"estimate", estimate}, {"N", trunc},
            {"monotone_check", monotone}, {"below_l1", below_l1}, {"l1_norm", l1},
            {"convention", std::string(to_string(conv))}, {"truncation_warning", warning}};
}

inline json cmd_pencil_check(const std::string& arg, const std::optional<std::size_t>& point,
                             const std::optional<std::vector<double>>& z_flag, std::size_t samples,
                             std::size_t degree, std::uint64_t seed) {
    const auto sys = load_system(arg);
    std::vector<Point> xs;
    if (point) {
        xs.push_back(*point);
    } else {
        for (Point x = 0; x < sys.size(); ++x)
            if (!sys.is_fixed(x) && sys.is_fixed(sys(x))) xs.push_back(x);
        if (xs.empty())
            throw Error(ErrorCode::NotPreperiodic, "no point x with eta(x) != x and eta(eta(x)) = eta(x)");
    }
    Rng rng(seed);
    double worst = 0.0;
    bool lemma = true;
    bool shift_exact = true;
    std::size_t cases = 0;
    for (Point x : xs) {
        for (std::size_t s = 0; s < samples; ++s) {
            const Complex z = z_flag ? Complex{(*z_flag)[0], (*z_flag)[1]} : rng.in_disk(0.9);
            const auto rep = build_pencil(sys, x, z);
            const auto p = random_poly(rng, sys, rng.index(degree + 1));
            const auto q = random_poly(rng, sys, rng.index(degree + 1));
            worst = std::max(worst, (rep.apply(skew_mul(p, q)) - rep.apply(p) * rep.apply(q)).cwiseAbs().maxCoeff());
            Mat2 u;
            u << Complex{}, z, Complex{}, z;
            shift_exact = shift_exact && rep.apply(SkewPoly::shift(sys)) == u;
            const auto [c1, c2] = extract_characters(rep);
            lemma = lemma && c2.point == sys(c1.point);
            ++cases;
        }
    }
    return {{"command", "pencil-check"},
            {"passed", worst <= 1e-12 && lemma && shift_exact},
            {"cases", cases},
            {"points", xs},
            {"seed", seed},
            {"max_deviation", worst},
            {"shift_image_exact", shift_exact},
            {"lemma_y_equals_eta_x", lemma}};
}

inline json cmd_disk_classify(const std::string& arg, double tol) {
    const auto m = load_map(arg);
    return {{"command", "disk classify"},
            {"map", io::to_json(m)},
            {"classification", io::to_json(classify(m, tol))},
            {"normal_form", io::to_json(normal_form(m, tol))}};
}

inline json cmd_disk_conjugate(const std::string& a, const std::string& b, double tol) {
    const auto m1 = load_map(a);
    const auto m2 = load_map(b);
    const auto w = analytically_conjugate(m1, m2, tol);
    return {{"command", "disk conjugate"},
            {"conjugate", w.has_value()},
            {"kinds", {std::string(to_string(classify(m1, tol).kind)), std::string(to_string(classify(m2, tol).kind))}},
            {"witness", witness_json(w)}};
}

inline json cmd_disk_iso(const std::string& a, const std::string& b, double tol) {
    const auto r = semicrossed_iso_verdict(load_map(a), load_map(b), tol);
    return {{"command", "disk iso"}, {"verdict", std::string(to_string(r.verdict))}, {"witness", witness_json(r.witness)}};
}

inline json cmd_disk_verify(const std::string& preset, const std::string& a, const std::string& b,
                            std::size_t samples, double tol) {
    const auto gamma = gamma_preset(preset);
    const auto m1 = load_map(a);
    const auto m2 = load_map(b);
    const auto pts = disk_samples(samples);
    const double dev = verify_conjugacy_witness(gamma, m1, m2, pts);
    return {{"command", "disk verify-witness"},
            {"gamma", preset},
            {"max_deviation", dev},
            {"samples", samples},
            {"tolerance", tol},
            {"intertwines", dev <= tol}};
}

} // namespace detail

/// Runs the tool on args (without the program name). Writes one JSON document to out.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conjugacy invariants for finite systems and Mobius disk maps", "conj"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string a_arg, b_arg, preset;
    double radius = 1.0;
    double tol = kDefaultTolerance;
    double witness_tol = kWitnessTolerance;
    std::size_t trunc = kDefaultTruncation;
    std::size_t samples = 1000;
    std::size_t pencil_samples = 50;
    std::size_t degree = 8;
    std::size_t sizes = 7;
    std::size_t cases = 200;
    std::string convention = "backward";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> point;
    std::optional<std::vector<double>> z_flag;

    auto* finite = app.add_subcommand("finite", "Decide conjugacy of two finite systems");
    finite->add_option("a", a_arg, "System JSON (file or inline)")->required();
    finite->add_option("b", b_arg, "System JSON (file or inline)")->required();

    auto* canon = app.add_subcommand("canon", "Canonical form and orbit structure of a finite system");
    canon->add_option("system", a_arg, "System JSON (file or inline)")->required();

    auto* chars = app.add_subcommand("char-space", "Character catalog of a finite system");
    chars->add_option("system", a_arg, "System JSON (file or inline)")->required();
    chars->add_option("--radius", radius, "Disc radius over fixed points")->check(CLI::PositiveNumber);

    auto* norms = app.add_subcommand("norms", "Truncated shift-model norm estimate of a polynomial");
    norms->add_option("poly", a_arg, "Polynomial JSON (file or inline)")->required();
    norms->add_option("--trunc", trunc, "Truncation size N")->check(CLI::PositiveNumber);
    norms->add_option("--convention", convention, "forward or backward")
        ->check(CLI::IsMember({"forward", "backward"}));

    auto* pencil = app.add_subcommand("pencil-check", "Check pencil representations on random polynomials");
    pencil->add_option("system", a_arg, "System JSON (file or inline)")->required();
    pencil->add_option("--point", point, "Base point x (default: every eligible point)");
    pencil->add_option("--z", z_flag, "Pencil parameter as RE IM")->expected(2);
    pencil->add_option("--samples", pencil_samples, "Random cases per point")->check(CLI::PositiveNumber);
    pencil->add_option("--degree", degree, "Maximum polynomial degree")->check(CLI::PositiveNumber);
    pencil->add_option("--seed", seed, "Random seed (overrides CONJ_SEED)");

    auto* disk = app.add_subcommand("disk", "Mobius self-maps of the unit disk");
    disk->require_subcommand(1);
    auto* classify_cmd = disk->add_subcommand("classify", "Classify a map and give its normal form");
    classify_cmd->add_option("map", a_arg, "Map JSON (file or inline)")->required();
    auto* conj_cmd = disk->add_subcommand("conjugate", "Decide analytic conjugacy of two maps");
    conj_cmd->add_option("m1", a_arg, "Map JSON (file or inline)")->required();
    conj_cmd->add_option("m2", b_arg, "Map JSON (file or inline)")->required();
    auto* iso_cmd = disk->add_subcommand("iso", "Isomorphism verdict for the semicrossed products");
    iso_cmd->add_option("m1", a_arg, "Map JSON (file or inline)")->required();
    iso_cmd->add_option("m2", b_arg, "Map JSON (file or inline)")->required();
    auto* verify_cmd = disk->add_subcommand("verify-witness", "Check gamma o m1 = m2 o gamma on disk samples");
    verify_cmd->add_option("gamma", preset, "identity, square-radius or cayley")->required();
    verify_cmd->add_option("m1", a_arg, "Map JSON (file or inline)")->required();
    verify_cmd->add_option("m2", b_arg, "Map JSON (file or inline)")->required();
    verify_cmd->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tolerance", witness_tol, "Pass threshold for the deviation")
        ->check(CLI::PositiveNumber);
    for (auto* sub : {classify_cmd, conj_cmd, iso_cmd})
        sub->add_option("--tolerance", tol, "Comparison tolerance")->check(CLI::PositiveNumber);

    auto* suite = app.add_subcommand("verify-suite", "Run the seeded property suite");
    suite->add_option("--seed", seed, "Random seed (overrides CONJ_SEED)");
    suite->add_option("--sizes", sizes, "Largest finite system size (at most 9)")
        ->check(CLI::Range(std::size_t{1}, kBruteForceLimit));
    suite->add_option("--cases", cases, "Random cases per property")->check(CLI::PositiveNumber);

    auto emit_error = [&](const std::string& kind, const std::string& message, int code) {
        out << json{{"error", kind}, {"message", message}}.dump(2) << '\n';
        err << "conj: " << message << '\n';
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return emit_error("ParseError", e.what(), kParse);
    }

    try {
        json report;
        int code = kOk;
        if (*finite) {
            report = detail::cmd_finite(a_arg, b_arg);
        } else if (*canon) {
            report = detail::cmd_canon(a_arg);
        } else if (*chars) {
            report = detail::cmd_char_space(a_arg, radius);
        } else if (*norms) {
            report = detail::cmd_norms(a_arg, trunc,
                                       convention == "forward" ? Convention::Forward : Convention::Backward);
        } else if (*pencil) {
            report = detail::cmd_pencil_check(a_arg, point, z_flag, pencil_samples, degree,
                                              detail::resolve_seed(seed));
            if (!report["passed"].get<bool>()) code = kFailed;
        } else if (*classify_cmd) {
            report = detail::cmd_disk_classify(a_arg, tol);
        } else if (*conj_cmd) {
            report = detail::cmd_disk_conjugate(a_arg, b_arg, tol);
        } else if (*iso_cmd) {
            report = detail::cmd_disk_iso(a_arg, b_arg, tol);
        } else if (*verify_cmd) {
            report = detail::cmd_disk_verify(preset, a_arg, b_arg, samples, witness_tol);
        } else if (*suite) {
            const SuiteOptions opts{detail::resolve_seed(seed), sizes, cases};
            const auto r = run_verify_suite(opts);
            report = to_json(r, opts);
            if (!r.all_passed()) code = kFailed;
        }
        out << report.dump(2) << '\n';
        return code;
    } catch (const json::exception& e) {
        return emit_error("ParseError", e.what(), kParse);
    } catch (const io::ParseError& e) {
        return emit_error("ParseError", e.what(), kParse);
    } catch (const Error& e) {
        return emit_error(std::string(to_string(e.code())), e.what(), kModule);
    }
}

} // namespace conjalg::cli
