// Command-line front end: analyze, convert, gen, serial.
//
// Exit codes: 0 when every check passes, 1 for a failed theorem check or an
// obstructed conversion, 2 for bad input of any kind.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "origami/error.hpp"
#include "origami/fold_io.hpp"
#include "origami/json_emit.hpp"
#include "origami/report.hpp"

namespace {

using namespace origami;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct GlobalOptions {
    double tol = linalg::kDefaultTol;
    std::uint64_t seed = 1;
    std::string format = "json";
    bool no_jitter = false;
};

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

std::string render(const nlohmann::json &j, const std::string &text, const GlobalOptions &g) {
    return g.format == "text" ? text : emit_json(j);
}

ModelKind parse_kind(const std::string &name) {
    if (name == "hinge") return ModelKind::Hinge;
    if (name == "spatial") return ModelKind::Spatial;
    if (name == "truss") return ModelKind::Truss;
    throw Error(ErrorKind::InvalidInput, "unknown model '" + name + "'");
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::ParseError, path + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

// Sequence and theorem failures are verdicts on the surface, not on the
// input format.
int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ExactnessViolation:
    case ErrorKind::FunctorialityViolation:
    case ErrorKind::WellDefinednessViolation:
    case ErrorKind::LiftFailure:
        return kCheckFailed;
    default:
        return kInputError;
    }
}

int run_analyze(const std::string &file, bool timing, const std::string &out, const GlobalOptions &g) {
    const auto start = std::chrono::steady_clock::now();
    const KinematicAnalysis a = analyze_kinematics(to_surface(read_fold_file(file), g.tol), g.tol);
    AnalysisReport r = make_analysis_report(a);
    if (timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(render(to_json(r), to_text(r), g), out);
    return r.passed() ? kPass : kCheckFailed;
}

int run_convert(const std::string &file, const std::string &solution, const std::string &from, const std::string &to,
                const std::string &out, double obstruction_tol, const GlobalOptions &g) {
    const KinematicAnalysis a = analyze_kinematics(to_surface(read_fold_file(file), g.tol), g.tol);
    const ModelKind source = parse_kind(from);
    const ModelKind target = parse_kind(to);
    const VectorXd x = solution_from_json(a, read_json_file(solution), source);

    ConversionReport r;
    std::optional<ModelSolution> result;
    if (source == ModelKind::Hinge && target == ModelKind::Spatial) {
        r = theta_pinv(a, x, obstruction_tol);
        result = r.spatial;
    } else if (source == ModelKind::Hinge && target == ModelKind::Truss) {
        r = hinge_to_truss(a, x, obstruction_tol);
        result = r.truss;
    } else if (source == ModelKind::Spatial && target == ModelKind::Truss) {
        r.input = {ModelKind::Spatial, x, (a.spatial.complex.d2 * x).norm()};
        r.obstruction = VectorXd(0);
        r.truss = eta_map(a, x);
        r.checks.emplace_back("truss_in_kernel", r.truss->admissible(a.tol));
        result = r.truss;
    } else {
        throw Error(ErrorKind::InvalidInput, "no conversion from " + from + " to " + to);
    }

    nlohmann::json report = to_json(r);
    if (result) {
        const nlohmann::json sol = solution_to_json(a, *result);
        if (out.empty())
            report["output"] = sol;
        else
            write_text_file(out, emit_json(sol));
    }
    std::cout << render(report, to_text(r), g);
    return r.passed() ? kPass : kCheckFailed;
}

int run_gen(const std::string &shape, const std::vector<double> &params, const std::string &out,
            const GlobalOptions &g) {
    const Mesh m = generate(shape, params, {g.seed, !g.no_jitter});
    to_surface(m, g.tol); // validate before writing
    emit(serialize_fold(to_document(m)), out);
    return kPass;
}

int run_serial(int n, bool check, const GlobalOptions &g) {
    const SerialReport r = run_serial_check(n, g.seed, g.tol);
    std::cout << render(to_json(r), to_text(r), g);
    return check && !r.passed() ? kCheckFailed : kPass;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"First-order kinematics of rigid origami surfaces"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--tol", g.tol, "Rank tolerance (relative)")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for jitter and random chains");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--no-jitter", g.no_jitter, "Disable generic-position jitter in generators");

    std::string file, out, solution, from, to, shape;
    bool timing = false, check = false;
    double obstruction_tol = kObstructionTol;
    std::vector<double> params;
    int n = 0;

    auto *analyze = app.add_subcommand("analyze", "Build all models and run the dimension ledgers");
    analyze->add_option("file", file, "FOLD file")->required();
    analyze->add_option("--out", out, "Write the report here instead of stdout");
    analyze->add_flag("--timing", timing, "Include wall-clock time in the report");

    auto *convert = app.add_subcommand("convert", "Convert a solution between models");
    convert->add_option("file", file, "FOLD file")->required();
    convert->add_option("--input-solution", solution, "Solution JSON")->required();
    convert->add_option("--from", from, "Source model")->required()->check(CLI::IsMember({"hinge", "spatial"}));
    convert->add_option("--to", to, "Target model")->required()->check(CLI::IsMember({"spatial", "truss"}));
    convert->add_option("--out", out, "Write the converted solution here");
    convert->add_option("--obstruction-tol", obstruction_tol, "Relative loop-closure tolerance");

    auto *gen = app.add_subcommand("gen", "Generate a surface as FOLD");
    gen->add_option("shape", shape, "Shape name")->required()->check(CLI::IsMember(shape_names()));
    gen->add_option("params", params, "Shape parameters");
    gen->add_option("--out", out, "Output file");
    std::string shape_help = "shapes:";
    for (const auto &s : shape_names()) shape_help += "\n  " + shape_usage(s);
    gen->footer(shape_help);

    auto *serial = app.add_subcommand("serial", "Check the serial-chain operators on a random chain");
    serial->add_option("n", n, "Number of hinges")->required();
    serial->add_flag("--check", check, "Exit 1 when a residual is out of tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*analyze) return run_analyze(file, timing, out, g);
        if (*convert) return run_convert(file, solution, from, to, out, obstruction_tol, g);
        if (*gen) return run_gen(shape, params, out, g);
        return run_serial(n, check, g);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
