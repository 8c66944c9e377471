#include "origami/report.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "origami/error.hpp"
#include "origami/generators.hpp"
#include "origami/serial_chain.hpp"

namespace origami {

namespace {

using nlohmann::json;

std::string format(const char *fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

json vector_json(const VectorXd &v) {
    json out = json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
    return out;
}

json checks_json(const std::vector<std::pair<std::string, bool>> &checks) {
    json out = json::object();
    for (const auto &[name, ok] : checks) out[name] = ok;
    return out;
}

int parse_id(const std::string &key) {
    if (key.empty() || key.size() > 9 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(ErrorKind::UnknownCellId, "'" + key + "' is not a cell id");
    return std::stoi(key);
}

VectorXd read_block(const json &value, Index width, const std::string &key) {
    VectorXd out(width);
    if (width == 1) {
        if (!value.is_number()) throw Error(ErrorKind::ParseError, "/values/" + key + ": expected a number");
        out[0] = value.get<double>();
        return out;
    }
    if (!value.is_array() || static_cast<Index>(value.size()) != width)
        throw Error(ErrorKind::ParseError, "/values/" + key + ": expected " + std::to_string(width) + " numbers");
    for (Index k = 0; k < width; ++k) {
        if (!value[k].is_number()) throw Error(ErrorKind::ParseError, "/values/" + key + ": expected numbers");
        out[k] = value[k].get<double>();
    }
    return out;
}

} // namespace

bool AnalysisReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck &c) { return c.passed; });
}

AnalysisReport make_analysis_report(const KinematicAnalysis &a) {
    AnalysisReport r;
    r.tol = a.tol;
    r.vertices = a.surface->num_vertices();
    r.edges = a.surface->num_edges();
    r.faces = a.surface->num_faces();
    r.interior_edges = a.surface->interior_edges().size();
    r.interior_vertices = a.surface->interior_vertices().size();
    r.dims = ledger_dimensions(a);
    r.checks = check_theorems(a, r.dims);
    return r;
}

json to_json(const AnalysisReport &r) {
    json checks = json::object();
    for (const auto &c : r.checks) checks[c.name] = {{"passed", c.passed}, {"detail", c.detail}};
    json out = {
        {"surface",
         {{"vertices", r.vertices},
          {"edges", r.edges},
          {"faces", r.faces},
          {"interior_edges", r.interior_edges},
          {"interior_vertices", r.interior_vertices}}},
        {"betti", {{"b0", r.dims.betti.b0}, {"b1", r.dims.betti.b1}, {"b2", r.dims.betti.b2}}},
        {"dimensions",
         {{"H1_hinge", r.dims.h1_hinge},
          {"H2_spatial", r.dims.h2_spatial},
          {"H2_rigid", r.dims.h2_rigid},
          {"H1_rigid", r.dims.h1_rigid},
          {"ker_truss", r.dims.truss_kernel}}},
        {"ranks", {{"theta", r.dims.theta_rank}, {"iota_star", r.dims.iota_star_rank}}},
        {"eta_gram_determinant", r.dims.eta_gram_determinant},
        {"tolerance", r.tol},
        {"checks", checks},
        {"passed", r.passed()},
    };
    if (r.seconds) out["timing"] = {{"seconds", *r.seconds}};
    return out;
}

std::string to_text(const AnalysisReport &r) {
    std::string out;
    auto line = [&out](const std::string &s) { out += s + "\n"; };
    line("surface: " + std::to_string(r.vertices) + " vertices, " + std::to_string(r.edges) + " edges, " +
         std::to_string(r.faces) + " faces (" + std::to_string(r.interior_edges) + " interior edges, " +
         std::to_string(r.interior_vertices) + " interior vertices)");
    line("betti: b0=" + std::to_string(r.dims.betti.b0) + " b1=" + std::to_string(r.dims.betti.b1) +
         " b2=" + std::to_string(r.dims.betti.b2));
    line("dim H1 hinge   = " + std::to_string(r.dims.h1_hinge));
    line("dim H2 spatial = " + std::to_string(r.dims.h2_spatial));
    line("dim H2 rigid   = " + std::to_string(r.dims.h2_rigid));
    line("dim H1 rigid   = " + std::to_string(r.dims.h1_rigid));
    line("dim ker M'     = " + std::to_string(r.dims.truss_kernel));
    line("rank theta     = " + std::to_string(r.dims.theta_rank));
    line("rank iota*     = " + std::to_string(r.dims.iota_star_rank));
    line("tolerance      = " + format("%.3g", r.tol));
    for (const auto &c : r.checks) line(std::string(c.passed ? "PASS " : "FAIL ") + c.name + " (" + c.detail + ")");
    if (r.seconds) line("time: " + format("%.3f", *r.seconds) + " s");
    line(r.passed() ? "all checks passed" : "some checks failed");
    return out;
}

json to_json(const ConversionReport &r) {
    json out = {
        {"input_residual", r.input.residual},
        {"obstructed", r.obstructed},
        {"obstruction", vector_json(r.obstruction)},
        {"obstruction_norm", r.obstruction.norm()},
        {"checks", checks_json(r.checks)},
        {"passed", r.passed()},
    };
    if (r.spatial) {
        out["spatial_residual"] = r.spatial->residual;
        out["theta_roundtrip_residual"] = r.theta_roundtrip_residual;
    }
    if (r.truss) out["truss_residual"] = r.truss->residual;
    return out;
}

std::string to_text(const ConversionReport &r) {
    std::string out = "input residual: " + format("%.3e", r.input.residual) + "\n";
    out += "obstruction norm: " + format("%.3e", r.obstruction.norm()) + (r.obstructed ? " (obstructed)\n" : "\n");
    if (r.obstructed) {
        out += "obstruction:";
        for (Index k = 0; k < r.obstruction.size(); ++k) out += " " + format("%.6g", r.obstruction[k]);
        out += "\n";
    }
    if (r.spatial) {
        out += "spatial residual: " + format("%.3e", r.spatial->residual) + "\n";
        out += "theta round trip: " + format("%.3e", r.theta_roundtrip_residual) + "\n";
    }
    if (r.truss) out += "truss residual: " + format("%.3e", r.truss->residual) + "\n";
    for (const auto &[name, ok] : r.checks) out += std::string(ok ? "PASS " : "FAIL ") + name + "\n";
    return out;
}

json solution_to_json(const KinematicAnalysis &a, const ModelSolution &s) {
    json values = json::object();
    const VectorXd &x = s.coefficients;
    switch (s.model) {
    case ModelKind::Hinge:
        for (int e : a.surface->interior_edges()) values[std::to_string(e)] = x[a.hinge.complex.offset[1][e]];
        break;
    case ModelKind::Spatial:
        for (std::size_t f = 0; f < a.surface->num_faces(); ++f)
            values[std::to_string(f)] = vector_json(x.segment<6>(a.spatial.complex.offset[2][f]));
        break;
    case ModelKind::Truss:
        for (std::size_t p = 0; p < a.linkage.num_vertices(); ++p)
            values[std::to_string(p)] = vector_json(x.segment<3>(3 * p));
        break;
    }
    return {{"model", to_string(s.model)}, {"values", values}};
}

VectorXd solution_from_json(const KinematicAnalysis &a, const json &j, ModelKind expected) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
        throw Error(ErrorKind::ParseError, "solution must be an object with a \"values\" object");
    if (j.contains("model") && j["model"] != to_string(expected))
        throw Error(ErrorKind::InvalidInput, "solution is for model " + j["model"].dump() + ", expected " +
                                                 to_string(expected));
    const auto &s = *a.surface;
    VectorXd x;
    switch (expected) {
    case ModelKind::Hinge: x = VectorXd::Zero(a.hinge.complex.dim[1]); break;
    case ModelKind::Spatial: x = VectorXd::Zero(a.spatial.complex.dim[2]); break;
    case ModelKind::Truss: x = VectorXd::Zero(3 * static_cast<Index>(a.linkage.num_vertices())); break;
    }
    for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
        const int id = parse_id(it.key());
        switch (expected) {
        case ModelKind::Hinge:
            if (static_cast<std::size_t>(id) >= s.num_edges() || !s.is_interior_edge(id))
                throw Error(ErrorKind::UnknownCellId, "no interior edge " + it.key());
            x[a.hinge.complex.offset[1][id]] = read_block(it.value(), 1, it.key())[0];
            break;
        case ModelKind::Spatial:
            if (static_cast<std::size_t>(id) >= s.num_faces())
                throw Error(ErrorKind::UnknownCellId, "no face " + it.key());
            x.segment<6>(a.spatial.complex.offset[2][id]) = read_block(it.value(), 6, it.key());
            break;
        case ModelKind::Truss:
            if (static_cast<std::size_t>(id) >= a.linkage.num_vertices())
                throw Error(ErrorKind::UnknownCellId, "no linkage vertex " + it.key());
            x.segment<3>(3 * id) = read_block(it.value(), 3, it.key());
            break;
        }
    }
    return x;
}

bool SerialReport::passed() const {
    return recurrence_residual <= kRecurrenceTol && inverse_residual <= kSerialInverseTol &&
           left_inverse_residual <= kLeftInverseTol && connecting_residual <= kSerialConnectingTol;
}

SerialReport run_serial_check(int n, std::uint64_t seed, double tol) {
    if (n < 1) throw Error(ErrorKind::InvalidParams, "serial chain needs n >= 1");
    const SerialChain chain = serial_chain_from_surface(to_surface(random_chain(n, seed), tol));
    const SerialOperators ops = serial_chain_operators(chain.geometry, tol);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorXd rates(n);
    for (Index k = 0; k < n; ++k) rates[k] = unit(rng);

    const VectorXd direct = ops.d * rates;
    const VectorXd stepped = propagate_recurrence(chain.geometry, rates);

    SerialReport r;
    r.n = n;
    r.seed = seed;
    r.recurrence_residual = linalg::max_abs(direct - stepped) / std::max(1.0, linalg::max_abs(direct));
    r.inverse_residual = ops.inverse_residual;
    r.left_inverse_residual = ops.left_inverse_residual;
    r.connecting_residual = linalg::max_abs(ops.d_pinv - pinned_connecting_operator(chain, tol));
    return r;
}

json to_json(const SerialReport &r) {
    return {
        {"n", r.n},
        {"seed", r.seed},
        {"residuals",
         {{"recurrence", r.recurrence_residual},
          {"psi_inverse", r.inverse_residual},
          {"left_inverse", r.left_inverse_residual},
          {"connecting", r.connecting_residual}}},
        {"passed", r.passed()},
    };
}

std::string to_text(const SerialReport &r) {
    std::string out = "serial chain n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed) + "\n";
    out += "recurrence vs D theta_dot : " + format("%.3e", r.recurrence_residual) + "\n";
    out += "Psi^-1 Psi - I            : " + format("%.3e", r.inverse_residual) + "\n";
    out += "D^+ D - I                 : " + format("%.3e", r.left_inverse_residual) + "\n";
    out += "D^+ vs connecting map     : " + format("%.3e", r.connecting_residual) + "\n";
    out += r.passed() ? "all residuals within tolerance\n" : "residuals out of tolerance\n";
    return out;
}

} // namespace origami
