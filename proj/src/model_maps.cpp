#include "origami/model_maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "origami/error.hpp"

namespace origami {

namespace {

inline constexpr double kRoundTripTol = 1e-9;
inline constexpr double kWellDefinedTol = 1e-10;
inline constexpr double kThetaFormulaTol = 1e-10;
inline constexpr double kBoundaryTol = 1e-11;
inline constexpr double kGramTol = 1e-12;

Eigen::Matrix<double, 6, 3> angular_embedding() {
    Eigen::Matrix<double, 6, 3> m = Eigen::Matrix<double, 6, 3>::Zero();
    m.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();
    return m;
}

Eigen::Matrix<double, 3, 6> linear_projection() {
    Eigen::Matrix<double, 3, 6> m = Eigen::Matrix<double, 3, 6>::Zero();
    m.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
    return m;
}

void require_size(const VectorXd &v, Index n, const char *what) {
    if (v.size() != n)
        throw Error(ErrorKind::InvalidInput, std::string(what) + " has " + std::to_string(v.size()) +
                                                 " coefficients, expected " + std::to_string(n));
}

std::string describe(const char *label, double value) {
    std::ostringstream os;
    os << label << "=" << value;
    return os.str();
}

// Rows of eta for one face anchored at p_f, evaluated at every stiffened
// vertex of that face.
Eigen::Matrix<double, 3, 6> eta_at(const KinematicAnalysis &a, int f, int vertex) {
    return eta_matrix(a.surface->face_centroid(f), a.linkage.positions[vertex]);
}

} // namespace

const char *to_string(ModelKind k) {
    switch (k) {
    case ModelKind::Hinge: return "hinge";
    case ModelKind::Spatial: return "spatial";
    case ModelKind::Truss: return "truss";
    }
    return "unknown";
}

double SequenceVerification::max_residual() const {
    return std::max({exactness.max_residual, iota_naturality, pi_naturality});
}

ShortExactSequence build_exact_sequence(const Model &hinge, const Model &rigid, const Model &spatial, double tol,
                                        SequenceVerification *verification) {
    const auto &s = *hinge.cosheaf->surface();
    CosheafMap iota(hinge.cosheaf, rigid.cosheaf);
    CosheafMap pi(rigid.cosheaf, spatial.cosheaf);
    for (std::size_t f = 0; f < s.num_faces(); ++f) pi.set({2, static_cast<int>(f)}, Matrix6d::Identity());
    for (int e : s.interior_edges()) {
        iota.set({1, e}, MatrixXd(hinge_embed(s.edge_axis(e)).matrix));
        pi.set({1, e}, MatrixXd(edge_projection(s.edge_axis(e)).matrix));
    }
    for (int v : s.interior_vertices()) {
        iota.set({0, v}, MatrixXd(angular_embedding()));
        pi.set({0, v}, MatrixXd(linear_projection()));
    }

    SequenceVerification check;
    check.exactness = check_exact_sequence(iota, pi, tol);
    Incidence worst_iota, worst_pi;
    check.iota_naturality = iota.naturality_residual(&worst_iota);
    check.pi_naturality = pi.naturality_residual(&worst_pi);
    check.passed = check.exactness.passed && check.iota_naturality <= kNaturalityTol &&
                   check.pi_naturality <= kNaturalityTol;
    if (verification) *verification = check;

    if (!check.exactness.passed) {
        for (const auto &cell : check.exactness.cells)
            if (!cell.violations.empty())
                throw Error(ErrorKind::ExactnessViolation, std::string(to_string(cell.violations.front())) + " at " +
                                                               to_string(cell.cell) + ", residual " +
                                                               std::to_string(cell.composition_residual));
    }
    if (check.iota_naturality > kNaturalityTol)
        throw Error(ErrorKind::ExactnessViolation, "iota not natural at " + to_string(worst_iota.higher) + " > " +
                                                       to_string(worst_iota.lower) + ", residual " +
                                                       std::to_string(check.iota_naturality));
    if (check.pi_naturality > kNaturalityTol)
        throw Error(ErrorKind::ExactnessViolation, "pi not natural at " + to_string(worst_pi.higher) + " > " +
                                                       to_string(worst_pi.lower) + ", residual " +
                                                       std::to_string(check.pi_naturality));

    return {std::move(iota), std::move(pi), hinge.complex, rigid.complex, spatial.complex};
}

SparseMatrix theta_block_formula(const KinematicAnalysis &a) {
    const auto &s = *a.surface;
    const ChainComplex &h = a.hinge.complex;
    const ChainComplex &sp = a.spatial.complex;
    std::vector<Eigen::Triplet<double>> entries;
    for (int e : s.interior_edges()) {
        const Eigen::Vector3d l = s.edge_axis(e);
        for (int f : s.edge_faces(e))
            for (int k = 0; k < 3; ++k)
                entries.emplace_back(h.offset[1][e], sp.offset[2][f] + k, s.edge_face_sign(e, f) * l[k]);
    }
    SparseMatrix m(h.dim[1], sp.dim[2]);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

KinematicAnalysis analyze_kinematics(const SurfacePtr &s, double tol) {
    KinematicAnalysis a;
    a.surface = s;
    a.tol = tol;
    a.hinge = build_hinge_model(s);
    a.spatial = build_spatial_model(s);
    a.rigid = build_rigid_model(s);
    a.sequence = build_exact_sequence(a.hinge, a.rigid, a.spatial, tol, &a.verification);

    a.h1_hinge = homology_basis(a.hinge.complex, 1, tol);
    a.h2_spatial = homology_basis(a.spatial.complex, 2, tol);
    a.h2_rigid = homology_basis(a.rigid.complex, 2, tol);
    a.h1_rigid = homology_basis(a.rigid.complex, 1, tol);

    a.theta = connecting_map(a.sequence, 2, a.h2_spatial, a.h1_hinge, tol);
    a.iota_star = induced_map(a.sequence.iota, 1, a.hinge.complex, a.rigid.complex, a.h1_hinge, a.h1_rigid);
    a.pi_star = induced_map(a.sequence.pi, 2, a.rigid.complex, a.spatial.complex, a.h2_rigid, a.h2_spatial);

    const SparseMatrix formula = theta_block_formula(a);
    a.theta_scale = std::max(1.0, linalg::spectral_norm_estimate(formula));
    const MatrixXd image = formula * a.h2_spatial.basis;
    a.theta_formula_residual = linalg::max_abs(MatrixXd(a.h1_hinge.basis.transpose() * image - a.theta));

    a.linkage = stiffen(s);
    return a;
}

Index theta_rank(const KinematicAnalysis &a) { return linalg::rank_abs(a.theta, a.tol * a.theta_scale); }

Index iota_star_rank(const KinematicAnalysis &a) { return linalg::rank_abs(a.iota_star, a.tol); }

MatrixXd iota_star_kernel(const KinematicAnalysis &a) {
    if (a.iota_star.cols() == 0) return MatrixXd(0, 0);
    return linalg::kernel_basis_abs(a.iota_star, a.tol);
}

bool ConversionReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.second; });
}

ConversionReport theta_pinv(const KinematicAnalysis &a, const VectorXd &hinge_rates, double obstruction_tol) {
    require_size(hinge_rates, a.hinge.complex.dim[1], "hinge solution");
    ConversionReport report;
    report.input = {ModelKind::Hinge, hinge_rates, (a.hinge.complex.d1 * hinge_rates).norm()};
    if (!report.input.admissible(a.tol))
        throw Error(ErrorKind::NotACycle, "hinge rates violate vertex closure (residual " +
                                              std::to_string(report.input.residual) + ")");
    report.checks.emplace_back("input_is_cycle", true);

    const VectorXd coords = a.h1_hinge.basis.transpose() * hinge_rates;
    report.obstruction = a.iota_star * coords;
    report.obstructed = report.obstruction.norm() > obstruction_tol * hinge_rates.norm();
    report.checks.emplace_back("loop_closure", !report.obstructed);
    if (report.obstructed) return report;

    const VectorXd spatial_coords = linalg::pseudo_inverse_abs(a.theta, a.tol * a.theta_scale) * coords;
    const VectorXd nu = a.h2_spatial.basis * spatial_coords;
    report.spatial = ModelSolution{ModelKind::Spatial, nu, (a.spatial.complex.d2 * nu).norm()};
    report.theta_roundtrip_residual =
        coords.norm() == 0.0 ? 0.0 : (a.theta * spatial_coords - coords).norm() / coords.norm();
    report.checks.emplace_back("spatial_is_cycle", report.spatial->admissible(a.tol));
    report.checks.emplace_back("theta_roundtrip", report.theta_roundtrip_residual <= kRoundTripTol);
    return report;
}

ModelSolution eta_map(const KinematicAnalysis &a, const VectorXd &nu) {
    const auto &s = *a.surface;
    require_size(nu, a.spatial.complex.dim[2], "spatial solution");
    const double cycle_residual = (a.spatial.complex.d2 * nu).norm();
    if (cycle_residual > a.tol * nu.norm())
        throw Error(ErrorKind::NotACycle, "face velocities violate hinge constraints (residual " +
                                              std::to_string(cycle_residual) + ")");

    const double length = s.length_scale();
    double reference = 0.0;
    for (std::size_t f = 0; f < s.num_faces(); ++f) {
        const auto block = nu.segment<6>(6 * f);
        reference = std::max(reference, block.tail<3>().norm() + block.head<3>().norm() * length);
    }

    VectorXd y = VectorXd::Zero(3 * a.linkage.num_vertices());
    for (std::size_t vi = 0; vi < s.num_vertices(); ++vi) {
        const int v = static_cast<int>(vi);
        const auto faces = s.vertex_faces(v);
        const Eigen::Vector3d first = eta_at(a, faces[0], v) * nu.segment<6>(6 * faces[0]);
        for (std::size_t k = 1; k < faces.size(); ++k) {
            const Eigen::Vector3d other = eta_at(a, faces[k], v) * nu.segment<6>(6 * faces[k]);
            const double gap = (other - first).norm();
            if (gap > kWellDefinedTol * reference)
                throw Error(ErrorKind::WellDefinednessViolation,
                            "faces " + std::to_string(faces[0]) + " and " + std::to_string(faces[k]) +
                                " disagree at vertex " + std::to_string(v) + " by " + std::to_string(gap));
        }
        y.segment<3>(3 * v) = first;
    }
    for (std::size_t f = 0; f < s.num_faces(); ++f) {
        const int apex = a.linkage.apex(static_cast<int>(f));
        y.segment<3>(3 * apex) = eta_at(a, static_cast<int>(f), apex) * nu.segment<6>(6 * f);
    }
    return {ModelKind::Truss, y, (a.linkage.truss_matrix * y).norm()};
}

ModelSolution eta_inverse(const KinematicAnalysis &a, const VectorXd &y) {
    const auto &s = *a.surface;
    require_size(y, 3 * static_cast<Index>(a.linkage.num_vertices()), "truss solution");
    double reference = 0.0;
    for (Index p = 0; p < y.size() / 3; ++p) reference = std::max(reference, y.segment<3>(3 * p).norm());

    VectorXd xi = VectorXd::Zero(6 * s.num_faces());
    for (std::size_t fi = 0; fi < s.num_faces(); ++fi) {
        const int f = static_cast<int>(fi);
        std::vector<int> points(s.face_vertices(f).begin(), s.face_vertices(f).end());
        points.push_back(a.linkage.apex(f));

        MatrixXd lhs(3 * points.size(), 6);
        VectorXd rhs(3 * points.size());
        for (std::size_t k = 0; k < points.size(); ++k) {
            lhs.block<3, 6>(3 * k, 0) = eta_at(a, f, points[k]);
            rhs.segment<3>(3 * k) = y.segment<3>(3 * points[k]);
        }
        const VectorXd fit = lhs.colPivHouseholderQr().solve(rhs);
        const double misfit = (lhs * fit - rhs).norm();
        if (misfit > a.tol * std::max(reference, 1e-300) && misfit > 0.0)
            throw Error(ErrorKind::NonRigidMotion,
                        "face " + std::to_string(f) + " is deformed (fit residual " + std::to_string(misfit) + ")");
        xi.segment<6>(6 * f) = fit;
    }

    const double residual = (a.spatial.complex.d2 * xi).norm();
    if (residual > a.tol * xi.norm())
        throw Error(ErrorKind::NotACycle, "recovered face velocities violate hinge constraints (residual " +
                                              std::to_string(residual) + ")");
    return {ModelKind::Spatial, xi, residual};
}

ConversionReport hinge_to_truss(const KinematicAnalysis &a, const VectorXd &hinge_rates, double obstruction_tol) {
    ConversionReport report = theta_pinv(a, hinge_rates, obstruction_tol);
    if (!report.spatial) return report;
    report.truss = eta_map(a, report.spatial->coefficients);
    report.checks.emplace_back("truss_in_kernel", report.truss->admissible(a.tol));
    return report;
}

double eta_gram_determinant(const KinematicAnalysis &a) {
    const auto &s = *a.surface;
    const Index k = a.h2_spatial.dimension();
    if (k == 0) return 1.0;
    std::vector<Eigen::Triplet<double>> entries;
    auto put = [&](int point, int f) {
        const Eigen::Matrix<double, 3, 6> block = eta_at(a, f, point);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) entries.emplace_back(3 * point + i, 6 * f + j, block(i, j));
    };
    for (std::size_t v = 0; v < s.num_vertices(); ++v) put(static_cast<int>(v), s.vertex_faces(static_cast<int>(v))[0]);
    for (std::size_t f = 0; f < s.num_faces(); ++f) put(a.linkage.apex(static_cast<int>(f)), static_cast<int>(f));
    SparseMatrix eta(3 * a.linkage.num_vertices(), a.spatial.complex.dim[2]);
    eta.setFromTriplets(entries.begin(), entries.end());
    const MatrixXd images = eta * a.h2_spatial.basis;
    MatrixXd gram = images.transpose() * images;
    const VectorXd scale = gram.diagonal().cwiseSqrt().cwiseMax(1e-300).cwiseInverse();
    gram = scale.asDiagonal() * gram * scale.asDiagonal();
    return gram.determinant();
}

LedgerDimensions ledger_dimensions(const KinematicAnalysis &a) {
    LedgerDimensions d;
    d.betti = base_homology(*a.surface, a.tol);
    d.h1_hinge = a.h1_hinge.dimension();
    d.h2_spatial = a.h2_spatial.dimension();
    d.h2_rigid = a.h2_rigid.dimension();
    d.h1_rigid = a.h1_rigid.dimension();
    d.truss_kernel = truss_kernel(a.linkage, a.tol).dimension();
    d.theta_rank = theta_rank(a);
    d.iota_star_rank = iota_star_rank(a);
    d.eta_gram_determinant = eta_gram_determinant(a);
    return d;
}

std::vector<TheoremCheck> check_theorems(const KinematicAnalysis &a, const LedgerDimensions &d) {
    std::vector<TheoremCheck> checks;
    auto add = [&](std::string name, bool ok, std::string detail) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    add("exact_sequence", a.verification.passed, describe("max_residual", a.verification.max_residual()));

    const Model constant{constant_cosheaf(a.surface, 6, Support::InteriorCells), {}};
    const double boundary = std::max({a.hinge.complex.boundary_residual(), a.spatial.complex.boundary_residual(),
                                      a.rigid.complex.boundary_residual(),
                                      assemble_chain_complex(*constant.cosheaf).boundary_residual()});
    const bool base_exact = (a.surface->vertex_edge_incidence() * a.surface->edge_face_incidence()).cwiseAbs().maxCoeff() == 0;
    add("boundary_squared_zero", boundary <= kBoundaryTol && base_exact, describe("max_residual", boundary));

    add("rigid_h2_global_motions", d.h2_rigid == 6 * d.betti.b0,
        "dim H2B=" + std::to_string(d.h2_rigid) + " b0=" + std::to_string(d.betti.b0));
    add("rigid_h1_six_per_loop", d.h1_rigid == 6 * d.betti.b1,
        "dim H1B=" + std::to_string(d.h1_rigid) + " b1=" + std::to_string(d.betti.b1));

    const Index ker_iota = d.h1_hinge - d.iota_star_rank;
    add("hinge_spatial_ledger", ker_iota == d.h2_spatial - d.h2_rigid,
        "dim ker iota*=" + std::to_string(ker_iota) + " dim H2S=" + std::to_string(d.h2_spatial));

    const Index pi_rank = linalg::rank_abs(a.pi_star, a.tol);
    const double theta_pi = linalg::max_abs(a.theta * a.pi_star) / a.theta_scale;
    add("exact_at_spatial_h2",
        pi_rank == d.h2_rigid && pi_rank + d.theta_rank == d.h2_spatial && theta_pi <= kRoundTripTol,
        describe("composition", theta_pi));

    const double iota_theta = linalg::max_abs(a.iota_star * a.theta) / a.theta_scale;
    add("exact_at_hinge_h1", d.theta_rank + d.iota_star_rank == d.h1_hinge && iota_theta <= kRoundTripTol,
        describe("composition", iota_theta));

    add("theta_block_formula", a.theta_formula_residual <= kThetaFormulaTol,
        describe("residual", a.theta_formula_residual));

    add("spatial_truss_ledger", d.truss_kernel == d.h2_spatial,
        "dim ker M'=" + std::to_string(d.truss_kernel) + " dim H2S=" + std::to_string(d.h2_spatial));
    add("eta_full_rank", d.eta_gram_determinant >= kGramTol, describe("gram_determinant", d.eta_gram_determinant));
    return checks;
}

} // namespace origami
