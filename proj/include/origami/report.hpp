#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "origami/model_maps.hpp"

namespace origami {

struct AnalysisReport {
    double tol = linalg::kDefaultTol;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    std::size_t interior_edges = 0;
    std::size_t interior_vertices = 0;
    LedgerDimensions dims;
    std::vector<TheoremCheck> checks;
    std::optional<double> seconds; // omitted unless timing was requested

    bool passed() const;
};

AnalysisReport make_analysis_report(const KinematicAnalysis &a);

nlohmann::json to_json(const AnalysisReport &r);
std::string to_text(const AnalysisReport &r);

nlohmann::json to_json(const ConversionReport &r);
std::string to_text(const ConversionReport &r);

// {"model": name, "values": {id: value}} keyed by decimal cell index:
// interior edge -> rate, face -> [omega, beta], linkage vertex -> velocity.
nlohmann::json solution_to_json(const KinematicAnalysis &a, const ModelSolution &s);
// Missing ids read as zero. Throws UnknownCellId or ParseError.
VectorXd solution_from_json(const KinematicAnalysis &a, const nlohmann::json &j, ModelKind expected);

struct SerialReport {
    int n = 0;
    std::uint64_t seed = 0;
    double recurrence_residual = 0.0;  // |Psi iota theta_dot - recurrence| relative to |nu|
    double inverse_residual = 0.0;     // |Psi^-1 Psi - I|
    double left_inverse_residual = 0.0; // |D^+ D - I|
    double connecting_residual = 0.0;  // |D^+ - pinned connecting operator|

    bool passed() const;
};

inline constexpr double kRecurrenceTol = 1e-12;
inline constexpr double kSerialInverseTol = 1e-12;
inline constexpr double kLeftInverseTol = 1e-11;
inline constexpr double kSerialConnectingTol = 1e-9;

// Random chain with n hinges: operators, one random rate vector through the
// recurrence, and the homological comparison. Throws InvalidParams for n < 1.
SerialReport run_serial_check(int n, std::uint64_t seed, double tol = linalg::kDefaultTol);

nlohmann::json to_json(const SerialReport &r);
std::string to_text(const SerialReport &r);

} // namespace origami
