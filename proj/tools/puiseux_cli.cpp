// puiseux: analyze, solve and verify first-order algebraic ODEs F(x, y, y') = 0.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "puiseux/report/render.hpp"

namespace {

enum ExitCode { kOk = 0, kParse = 1, kUnsupported = 2, kInternal = 3 };

/// Malformed command-line value; reported like a parse error.
class ArgumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string equation;
    std::string x0 = "0";
    long terms = 16;
    std::string mode = "exact";
    unsigned precision = 256;
    long smax = 4;
    bool force = false;
    bool explore = false;
    bool json = false;
    std::string svg;
    bool local = false;
    unsigned jobs = 1;
    long max_field_degree = 12;
    long family = -1;
    std::string ansatz;
    long ram = 1;
    std::string free_from;
    std::string series;
    std::string target;
};

puiseux::AnalyzeOptions analyze_options(const Flags& fl) {
    puiseux::AnalyzeOptions o;
    o.terms = fl.terms;
    o.mode = fl.mode == "numeric" ? puiseux::FamilyKind::Numeric : puiseux::FamilyKind::Exact;
    o.precision = fl.precision;
    o.s_max = fl.smax;
    o.force = fl.force;
    o.polygon = fl.local ? puiseux::PolygonKind::Local : puiseux::PolygonKind::Petrovic;
    o.max_field_degree = fl.max_field_degree;
    o.jobs = fl.jobs;
    return o;
}

puiseux::Rational rational_arg(const std::string& text, const char* name) {
    try {
        return puiseux::parse_rational(text);
    } catch (const std::exception&) {
        throw ArgumentError(std::string(name) + ": not a rational number: '" + text + "'");
    }
}

void emit(const puiseux::AnalysisReport& rep, const Flags& fl) {
    if (fl.json) std::cout << puiseux::to_json(rep).dump(2) << "\n";
    else std::cout << puiseux::to_text(rep);
    if (!fl.svg.empty()) {
        if (!rep.polygon) {
            std::cerr << "warning: no polygon was built, SVG not written\n";
            return;
        }
        std::ofstream out(fl.svg);
        if (!out) throw std::runtime_error("cannot write " + fl.svg);
        out << puiseux::polygon_svg(*rep.polygon);
    }
}

void common_flags(CLI::App* cmd, Flags& fl) {
    cmd->add_option("equation", fl.equation, "F(x, y, y'), optionally written as lhs = rhs")->required();
    cmd->add_option("--x0", fl.x0, "base point (rational)")->capture_default_str();
    cmd->add_option("--precision", fl.precision, "ball precision in bits")->capture_default_str()->check(CLI::Range(64u, 1u << 16));
    cmd->add_flag("--json", fl.json, "machine-readable report");
}

void series_flags(CLI::App* cmd, Flags& fl) {
    cmd->add_option("--terms", fl.terms, "number of correction terms")->capture_default_str()->check(CLI::Range(0L, 4096L));
    cmd->add_option("--mode", fl.mode, "coefficient domain")->capture_default_str()->check(CLI::IsMember({"exact", "numeric"}));
    cmd->add_option("--smax", fl.smax, "largest ramification tried by the explorer")->capture_default_str()->check(CLI::Range(1L, 64L));
    cmd->add_flag("--force", fl.force, "analyze at a singular point anyway");
    cmd->add_option("--svg", fl.svg, "write the polygon as SVG");
    cmd->add_flag("--local-polygon", fl.local, "use ord_{x0} a instead of a(x0) (algebraic equations)");
    cmd->add_option("--jobs", fl.jobs, "families expanded in parallel")->capture_default_str()->check(CLI::Range(1u, 256u));
    cmd->add_option("--max-field-degree", fl.max_field_degree, "exact mode: largest number-field degree before falling back to balls")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formal Puiseux series solutions of F(x, y, y') = 0"};
    app.require_subcommand(1);
    Flags fl;

    auto* analyze = app.add_subcommand("analyze", "singular points, Sigma, polygon, families, series and diagnostics");
    common_flags(analyze, fl);
    series_flags(analyze, fl);

    auto* solve = app.add_subcommand("solve", "series for the polygon families or from a seed");
    common_flags(solve, fl);
    series_flags(solve, fl);
    solve->add_option("--family", fl.family, "index of the family to expand");
    solve->add_flag("--explore", fl.explore, "search continuations of exceptional families");
    solve->add_option("--ansatz", fl.ansatz, "seed series, e.g. \"-x\" or \"x^4\"");
    solve->add_option("--ram", fl.ram, "ramification of the ansatz")->capture_default_str();
    solve->add_option("--free-from", fl.free_from, "first free exponent of the ansatz");

    auto* verify = app.add_subcommand("verify", "residual order of a series literal");
    common_flags(verify, fl);
    verify->add_option("series", fl.series, "series literal in x (or xi = x - x0)")->required();
    verify->add_option("--target", fl.target, "required residual order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        const puiseux::Rational x0 = rational_arg(fl.x0, "--x0");
        if (analyze->parsed()) {
            auto opt = analyze_options(fl);
            opt.explore = true;
            emit(puiseux::analyze(fl.equation, x0, opt), fl);
        } else if (solve->parsed()) {
            puiseux::SolveOptions opt;
            opt.analyze = analyze_options(fl);
            opt.analyze.explore = fl.explore;
            if (fl.family >= 0) opt.analyze.family = static_cast<std::size_t>(fl.family);
            if (!fl.ansatz.empty()) opt.ansatz = fl.ansatz;
            opt.ram = fl.ram;
            if (!fl.free_from.empty()) opt.free_from = rational_arg(fl.free_from, "--free-from");
            emit(puiseux::solve(fl.equation, x0, opt), fl);
        } else {
            std::optional<puiseux::Rational> target;
            if (!fl.target.empty()) target = rational_arg(fl.target, "--target");
            emit(puiseux::verify(fl.equation, fl.series, x0, target, fl.precision), fl);
        }
    } catch (const puiseux::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const puiseux::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const puiseux::UnsupportedRequest& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const puiseux::InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
