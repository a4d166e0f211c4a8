// omega-pseudoalg: exact-arithmetic kernel for omega-associative
// H-pseudoalgebras over finite-dimensional cocommutative Hopf algebras.
//
// Subcommands: verify, construct, cohomology, deform, report.
// Exit codes: 0 all checks passed, 1 identity failures (reported),
// 2 input errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "opal/runner.hpp"

using namespace opal;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("json parse error: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for omega-associative H-pseudoalgebras"};
    app.require_subcommand(1);

    std::string file, structure, coefficients, jet_name, out_path, format = "text";
    long degree = 0, max_degree = 3;
    std::optional<long> order;
    bool extend = false, poisson = false;
    ConstructArgs cargs;

    auto* verify = app.add_subcommand("verify", "run every checker on a definition file");
    verify->add_option("file", file)->required();
    verify->add_option("--structure", structure, "check a single structure only");

    auto* construct = app.add_subcommand("construct", "apply a construction and write a new file");
    construct
        ->add_option("kind", cargs.kind,
                     "pack|current|rb-lift|dend-sum|dend-prelie|commutator|zinbiel|oop|poisson")
        ->required();
    construct->add_option("file", file)->required();
    construct->add_option("--out", out_path)->required();
    construct->add_option("--structure", cargs.structure);
    construct->add_option("--classical", cargs.classical);
    construct->add_option("--hopf", cargs.hopf);
    construct->add_option("--sub", cargs.sub);
    construct->add_option("--formula", cargs.formula, "prop35|eq310|ex25");
    construct->add_option("--source", cargs.source, "associative|prelie|prelie-family");
    construct->add_option("--direction", cargs.direction,
                          "to-dendriform|from-dendriform|symmetrize");
    construct->add_option("--family", cargs.family);
    construct->add_option("--output", cargs.output, "omega-assoc|bimodule-back|dendriform");

    auto* cohomology = app.add_subcommand("cohomology", "dimensions of Z^n, B^n, H^n");
    cohomology->add_option("file", file)->required();
    cohomology->add_option("--structure", structure)->required();
    cohomology->add_option("--degree", degree)->required();
    cohomology->add_option("--coefficients", coefficients, "bimodule name (default adjoint)");
    cohomology->add_option("--max-degree", max_degree, "degree cap (default 3)");

    auto* deform = app.add_subcommand("deform", "deformation equations, extension, poisson");
    deform->add_option("file", file)->required();
    deform->add_option("--jet", jet_name)->required();
    deform->add_option("--order", order, "check only up to this order");
    deform->add_flag("--extend", extend, "attempt a one-order extension");
    deform->add_flag("--poisson", poisson, "extract the first-order poisson structure");

    auto* report = app.add_subcommand("report", "full verification report");
    report->add_option("file", file)->required();
    report->add_option("--format", format, "text|json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            BuiltDocument b = parse_document(load_json(file));
            VerifyResult v = verify_document(b, structure);
            std::cout << render_text(v);
            return v.exit_code();
        }
        if (construct->parsed()) {
            json doc = load_json(file);
            BuiltDocument b = parse_document(doc);
            if (!b.build_failures.empty()) {
                std::cout << "input fails verification: " << b.build_failures[0].first << ": "
                          << b.build_failures[0].second << "\n";
                return 1;
            }
            json out = run_construct(doc, b, cargs);
            std::ofstream os(out_path);
            if (!os) throw input_error("cannot write file: " + out_path);
            os << out.dump(1) << "\n";
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
        if (cohomology->parsed()) {
            BuiltDocument b = parse_document(load_json(file));
            if (!b.build_failures.empty()) {
                std::cout << "input fails verification: " << b.build_failures[0].first << ": "
                          << b.build_failures[0].second << "\n";
                return 1;
            }
            std::cout << run_cohomology(b, structure, degree, coefficients, max_degree);
            return 0;
        }
        if (deform->parsed()) {
            BuiltDocument b = parse_document(load_json(file));
            if (!b.build_failures.empty()) {
                std::cout << "input fails verification: " << b.build_failures[0].first << ": "
                          << b.build_failures[0].second << "\n";
                return 1;
            }
            DeformResult r = run_deform(b, jet_name, order, extend, poisson);
            std::cout << r.text;
            return r.ok ? 0 : 1;
        }
        if (report->parsed()) {
            BuiltDocument b = parse_document(load_json(file));
            VerifyResult v = verify_document(b);
            if (format == "json")
                std::cout << render_json(v).dump(1) << "\n";
            else if (format == "text")
                std::cout << render_text(v);
            else
                throw input_error("unknown format: " + format);
            return v.exit_code();
        }
    } catch (const check_error& e) {
        std::cout << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
