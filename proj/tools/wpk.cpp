// wpk: weighted Poisson kernel toolkit.
#include <wpk/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

void add_common(CLI::App* sub, wpk::cli::RunConfig& c, std::string& p_text) {
    sub->add_option("--alpha", c.alpha, "kernel weight alpha > -1")->each([&c](const std::string&) { c.alpha_given = true; });
    sub->add_option("--p", p_text, "exponent p >= 1, or inf");
    sub->add_option("--n", c.n, "monomial degree / Example 4.1 index");
    sub->add_option("--nodes", c.nodes, "angular nodes N (even, >= 16)");
    sub->add_option("--r-max", c.r_max, "truncation radius");
    sub->add_option("--radial-nodes", c.radial_nodes, "radial grid size");
    sub->add_option("--threads", c.threads, "worker threads (default: WPK_THREADS or 1)");
    sub->add_option("--output", c.output_path, "write the report to this path");
}

} // namespace

int main(int argc, char** argv) {
    using wpk::cli::Command;
    using wpk::cli::Format;
    CLI::App app{"Weighted Poisson integrals, derivatives, norms and certifications"};
    app.require_subcommand(1);
    wpk::cli::RunConfig c;
    std::string p_text = "2";
    std::string format_text;

    auto* eval = app.add_subcommand("eval", "derivative field of K_alpha[F] on the radial grid");
    auto* norm = app.add_subcommand("norm", "truncated Hardy/Bergman norms over nested cutoffs");
    auto* regime = app.add_subcommand("regime", "classify (alpha, p)");
    auto* verify = app.add_subcommand("verify", "run a certification suite");
    auto* example = app.add_subcommand("example", "export a bundled boundary function as CSV");
    auto* report = app.add_subcommand("report", "ellipticity report for a bundled mapping");

    for (auto* s : {eval, norm, regime, verify, example, report}) add_common(s, c, p_text);
    for (auto* s : {eval, norm}) {
        s->add_option("--input", c.input_path, "boundary CSV (theta,re,im)");
        s->add_option("--example", c.example, "bundled boundary: 4.1, 4.2, 4.3, monomial");
        s->add_flag("--spectral", c.spectral, "differentiate sampled input spectrally");
        s->add_option("--angles", c.angles, "angles per circle");
        s->add_option("--terms", c.terms, "Example 4.3 truncation");
    }
    eval->add_option("--format", format_text, "csv or json");
    norm->add_option("--quantity", c.quantity, "dr, dz, dzbar, dtheta or f");
    norm->add_option("--kind", c.kind, "hardy or bergman");
    norm->add_option("--cutoffs", c.cutoffs, "increasing truncation radii (>= 3)")->delimiter(',');
    verify->add_option("--suite", c.suite, "specfun, inequalities, oracles, divergence, all");
    verify->add_option("--seed", c.seed, "seed for random test points");
    example->add_option("--id", c.example, "4.1, 4.2, 4.3, monomial")->required();
    example->add_option("--export", c.output_path, "CSV output path");
    example->add_option("--terms", c.terms, "Example 4.3 truncation");
    report->add_option("--id", c.example, "4.1, 4.2, 4.3, identity")->required();
    report->add_option("--K", c.K_list, "K values")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (*eval) c.command = Command::eval;
    else if (*norm) c.command = Command::norm;
    else if (*regime) c.command = Command::regime;
    else if (*verify) c.command = Command::verify;
    else if (*example) c.command = Command::example;
    else c.command = Command::report;

    try {
        c.p = wpk::PExponent::parse(p_text);
    } catch (const wpk::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (!format_text.empty()) {
        if (format_text == "json") c.format = Format::json;
        else if (format_text == "csv") c.format = Format::csv;
        else {
            std::cerr << "error: --format must be json or csv\n";
            return 2;
        }
    }
    return wpk::cli::run(c, std::cout, std::cerr);
}
