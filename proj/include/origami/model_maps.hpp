#pragma once

#include <optional>
#include <string>
#include <vector>

#include "origami/origami_models.hpp"

namespace origami {

enum class ModelKind { Hinge, Spatial, Truss };
const char *to_string(ModelKind k);

// Coefficients over a model's DOF cells: interior-edge hinge rates in
// hinge-complex order, stacked [omega; beta] per face, or stacked velocities
// per stiffened-linkage vertex.
struct ModelSolution {
    ModelKind model = ModelKind::Hinge;
    VectorXd coefficients;
    // |A x| for the model's constraint matrix A
    double residual = 0.0;

    bool admissible(double tol) const { return residual <= tol * coefficients.norm(); }
};

// Verification of 0 -> H -> B -> S -> 0: per-cell exactness (three rows per
// v < e < f triple) plus naturality of iota and pi on every incidence (six
// squares per triple).
struct SequenceVerification {
    ExactnessReport exactness;
    double iota_naturality = 0.0;
    double pi_naturality = 0.0;
    bool passed = false;

    double max_residual() const;
};

inline constexpr double kNaturalityTol = 1e-12;
inline constexpr double kObstructionTol = 1e-8;

// Builds iota: H -> B and pi: B -> S on the given models and verifies the
// sequence. Throws Error(ExactnessViolation) naming the offending cell.
ShortExactSequence build_exact_sequence(const Model &hinge, const Model &rigid, const Model &spatial,
                                        double tol = linalg::kDefaultTol, SequenceVerification *verification = nullptr);

// Everything needed to move solutions between the hinge, spatial and truss
// models of one surface. Immutable after construction.
struct KinematicAnalysis {
    SurfacePtr surface;
    double tol = linalg::kDefaultTol;

    Model hinge;
    Model spatial;
    Model rigid;
    ShortExactSequence sequence;
    SequenceVerification verification;

    SubspaceBasis h1_hinge;
    SubspaceBasis h2_spatial;
    SubspaceBasis h2_rigid;
    SubspaceBasis h1_rigid;

    MatrixXd theta;     // H2 S -> H1 H
    MatrixXd iota_star; // H1 H -> H1 B
    MatrixXd pi_star;   // H2 B -> H2 S
    // max |theta - block formula| in homology coordinates
    double theta_formula_residual = 0.0;
    // Scale used for rank decisions on theta.
    double theta_scale = 1.0;

    StiffenedLinkage linkage;
};

KinematicAnalysis analyze_kinematics(const SurfacePtr &s, double tol = linalg::kDefaultTol);

// The direct block formula (e, f) -> [e:f] <l_e, omega_f> as a chain-level
// matrix C_2 S -> C_1 H.
SparseMatrix theta_block_formula(const KinematicAnalysis &a);

Index theta_rank(const KinematicAnalysis &a);
Index iota_star_rank(const KinematicAnalysis &a);
// Orthonormal basis of ker iota_* in H1 H coordinates.
MatrixXd iota_star_kernel(const KinematicAnalysis &a);

struct ConversionReport {
    ModelSolution input;
    std::optional<ModelSolution> spatial;
    std::optional<ModelSolution> truss;
    VectorXd obstruction; // iota_*(theta_dot) in the H1 B basis
    bool obstructed = false;
    // |theta(theta^+ c) - c| / |c| in H1 H coordinates
    double theta_roundtrip_residual = 0.0;
    std::vector<std::pair<std::string, bool>> checks;

    bool passed() const;
};

// Hinge rates (one per interior edge, in hinge-complex order) to a spatial
// solution orthogonal to the global motions. Throws NotACycle.
ConversionReport theta_pinv(const KinematicAnalysis &a, const VectorXd &hinge_rates,
                            double obstruction_tol = kObstructionTol);

// Face spatial velocities to stiffened-linkage vertex velocities.
// Throws NotACycle or WellDefinednessViolation.
ModelSolution eta_map(const KinematicAnalysis &a, const VectorXd &face_velocities);

// Truss velocities back to face spatial velocities. Throws NonRigidMotion
// when some face is warped, NotACycle if the fitted faces disagree.
ModelSolution eta_inverse(const KinematicAnalysis &a, const VectorXd &truss_velocities);

// eta o theta^+ on ker iota_*.
ConversionReport hinge_to_truss(const KinematicAnalysis &a, const VectorXd &hinge_rates,
                                double obstruction_tol = kObstructionTol);

// Named pass/fail checks of the dimension ledgers and exactness claims.
struct TheoremCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct LedgerDimensions {
    BettiNumbers betti;
    Index h1_hinge = 0;
    Index h2_spatial = 0;
    Index h2_rigid = 0;
    Index h1_rigid = 0;
    Index truss_kernel = 0;
    Index theta_rank = 0;
    Index iota_star_rank = 0;
    double eta_gram_determinant = 0.0;
};

LedgerDimensions ledger_dimensions(const KinematicAnalysis &a);
std::vector<TheoremCheck> check_theorems(const KinematicAnalysis &a, const LedgerDimensions &dims);

// det of the column-normalized Gram matrix of eta applied to a basis of
// H2 S; 1 for orthogonal images, 0 when they are dependent.
double eta_gram_determinant(const KinematicAnalysis &a);

} // namespace origami
