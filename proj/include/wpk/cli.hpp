#pragma once

#include <wpk/derivs.hpp>
#include <wpk/elliptic.hpp>
#include <wpk/error.hpp>
#include <wpk/examples.hpp>
#include <wpk/kernel.hpp>
#include <wpk/norms.hpp>
#include <wpk/parallel.hpp>
#include <wpk/regimes.hpp>
#include <wpk/report.hpp>
#include <wpk/samplers.hpp>
#include <wpk/suites.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wpk::cli {

enum class Command { eval, norm, regime, verify, example, report };
enum class Format { json, csv };

struct RunConfig {
    Command command = Command::regime;
    double alpha = 0.0;
    bool alpha_given = false;     // Example 4.1 falls back to -0.5
    PExponent p = PExponent(2.0);
    int n = 1;
    std::size_t nodes = 2048;
    double r_max = 0.999;
    std::size_t radial_nodes = 64;
    std::vector<double> cutoffs;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    std::optional<Format> format;
    std::uint64_t seed = 12345;
    unsigned threads = default_threads();
    std::string suite = "all";
    std::string example;          // 4.1, 4.2, 4.3, monomial
    std::string quantity = "dr";  // dr, dz, dzbar, dtheta, f
    std::string kind = "hardy";   // hardy, bergman
    std::size_t angles = 64;
    std::vector<double> K_list{1.0, 10.0, 100.0};
    std::size_t terms = ex43_default_terms;
    bool spectral = false;
};

class UsageError : public DomainError {
public:
    using DomainError::DomainError;
};

namespace detail {

inline double ex41_alpha(const RunConfig& c) { return c.alpha_given ? c.alpha : -0.5; }

inline QuadSpec quad_spec(const RunConfig& c) {
    QuadSpec q;
    q.angular_nodes = c.nodes;
    q.r_max = c.r_max;
    q.radial_nodes = c.radial_nodes;
    q.spectral_derivative = c.spectral;
    q.validate();
    return q;
}

inline BoundaryData boundary(const RunConfig& c) {
    if (c.input_path) {
        std::ifstream in(*c.input_path);
        if (!in) throw UsageError("cannot open input file '" + *c.input_path + "'");
        return read_boundary_csv(in);
    }
    if (c.example == "4.1") return ex41_boundary({ex41_alpha(c), c.n}, c.nodes);
    if (c.example == "4.2") return ex42_boundary(c.nodes);
    if (c.example == "4.3") return ex43_boundary(c.terms, c.nodes);
    if (c.example == "monomial") return BoundaryData::from_fourier({{c.n, 1.0}}, c.nodes);
    if (c.example.empty()) throw UsageError("need --input or --example");
    throw UsageError("unknown --example '" + c.example + "' (expected 4.1, 4.2, 4.3, monomial)");
}

inline Partial partial(const std::string& s) {
    if (s == "dr") return Partial::dr;
    if (s == "dz") return Partial::dz;
    if (s == "dzbar") return Partial::dzbar;
    if (s == "dtheta") return Partial::dtheta;
    throw UsageError("unknown --quantity '" + s + "' (expected dr, dz, dzbar, dtheta, f)");
}

inline void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

inline int cmd_eval(const RunConfig& c, std::ostream& os) {
    const QuadSpec q = quad_spec(c);
    auto F = boundary(c);
    AlphaParam a(c.alpha);
    auto field = build_field(a, F, q.radii(), c.angles, q, c.threads);
    if (c.format.value_or(Format::csv) == Format::csv) {
        write_field_csv(os, field);
        return 0;
    }
    json pts = json::array();
    auto pair = [](cplx v) { return json::array({v.real(), v.imag()}); };
    for (std::size_t k = 0; k < field.size(); ++k)
        pts.push_back({{"r", field.grid[k].r()}, {"theta", field.grid[k].theta()}, {"dtheta", pair(field.dtheta[k])},
                       {"dr", pair(field.dr[k])}, {"dz", pair(field.dz[k])}, {"dzbar", pair(field.dzbar[k])},
                       {"flag", field.flags[k]}});
    write_json(os, {{"alpha", c.alpha}, {"points", pts}});
    return 0;
}

inline int cmd_norm(const RunConfig& c, std::ostream& os) {
    const QuadSpec q = quad_spec(c);
    std::vector<double> cut = c.cutoffs.empty() ? nested_cutoffs(c.r_max) : c.cutoffs;
    if (cut.size() < 3) throw UsageError("--cutoffs needs at least 3 values");
    for (double v : cut)
        if (v > q.r_max) throw UsageError("cutoffs must not exceed --r-max");
    NormKind kind;
    if (c.kind == "hardy") kind = NormKind::hardy;
    else if (c.kind == "bergman") kind = NormKind::bergman;
    else throw UsageError("unknown --kind '" + c.kind + "' (expected hardy, bergman)");
    CircleSampler s;
    if (c.quantity == "f") {
        s = kernel_value_sampler(AlphaParam(c.alpha), boundary(c), q);
    } else if (!c.input_path && c.example == "4.1") {
        s = partial_sampler(ex41_circle({ex41_alpha(c), c.n}), partial(c.quantity), c.angles);
    } else if (!c.input_path && c.example == "4.3") {
        s = partial_sampler(ex43_circle(ex43_terms_for(cut.back())), partial(c.quantity), c.angles);
    } else {
        s = kernel_partial_sampler(AlphaParam(c.alpha), boundary(c), q, partial(c.quantity));
    }
    auto g = divergence_probe(s, c.p, cut, kind, q, c.threads);
    auto j = growth_json(g, c.quantity, c.example == "4.1" ? ex41_alpha(c) : c.alpha);
    const double a = g.values[g.values.size() - 2], b = g.values.back();
    if (!g.diverging && std::fabs(b - a) <= 1e-12 * std::max(std::fabs(a), std::fabs(b))) j["status"] = "converged";
    write_json(os, j);
    return 0;
}

inline int cmd_regime(const RunConfig& c, std::ostream& os) {
    write_json(os, to_json(classify(c.alpha, c.p)));
    return 0;
}

inline int cmd_verify(const RunConfig& c, std::ostream& os) {
    std::vector<Certification> all;
    auto add = [&](std::vector<Certification> v) { all.insert(all.end(), v.begin(), v.end()); };
    const bool every = c.suite == "all";
    bool known = every;
    if (every || c.suite == "specfun") { add(specfun_suite()); known = true; }
    if (every || c.suite == "inequalities") { add(inequalities_suite(quad_spec(c), c.threads)); known = true; }
    if (every || c.suite == "oracles") { add(oracles_suite(c.seed)); known = true; }
    if (every || c.suite == "divergence") { add(divergence_suite(c.threads)); known = true; }
    if (!known) throw UsageError("unknown --suite '" + c.suite + "' (expected specfun, inequalities, oracles, divergence, all)");
    write_json(os, to_json(all));
    for (auto& x : all)
        if (!x.holds) return 1;
    return 0;
}

inline int cmd_example(const RunConfig& c, std::ostream& os) {
    if (c.example.empty()) throw UsageError("example needs --id");
    auto F = boundary(c);
    write_boundary_csv(os, F);
    return 0;
}

inline int cmd_report(const RunConfig& c, std::ostream& os) {
    if (c.example.empty()) throw UsageError("report needs --id (4.1, 4.2, 4.3 or identity)");
    for (double K : c.K_list)
        if (!(K >= 1.0)) throw UsageError("--K values must be >= 1");
    auto s = elliptic_setup(c.example, c.example == "4.1" ? ex41_alpha(c) : c.alpha, c.n, c.threads);
    auto rep = ellipticity_report(s.fields, s.cutoffs, c.K_list);
    auto j = to_json(rep);
    j["id"] = c.example;
    write_json(os, j);
    return 0;
}

} // namespace detail

// Dispatches one command. Exit status: 0 ok, 1 failed certification,
// 2 usage or domain error.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        std::ofstream file;
        std::ostream* os = &out;
        if (c.output_path) {
            file.open(*c.output_path);
            if (!file) throw UsageError("cannot open output file '" + *c.output_path + "'");
            os = &file;
        }
        switch (c.command) {
        case Command::eval: return detail::cmd_eval(c, *os);
        case Command::norm: return detail::cmd_norm(c, *os);
        case Command::regime: return detail::cmd_regime(c, *os);
        case Command::verify: return detail::cmd_verify(c, *os);
        case Command::example: return detail::cmd_example(c, *os);
        case Command::report: return detail::cmd_report(c, *os);
        }
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const MissingDerivativeError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace wpk::cli
