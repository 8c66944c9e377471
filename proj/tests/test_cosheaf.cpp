#include <doctest.h>

#include "origami/error.hpp"
#include "origami/model_maps.hpp"
#include "support.hpp"

using namespace origami;
using testing_support::dense;
using testing_support::Rng;

namespace {

ErrorKind error_kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidInput;
}

// Orthogonal projector onto the null space, from a full JacobiSVD.
Eigen::MatrixXd oracle_null_projector(const Eigen::MatrixXd &m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol * s[0]) ++rank;
    const Eigen::MatrixXd n = svd.matrixV().rightCols(m.cols() - rank);
    return n * n.transpose();
}

CellRef first_interior_edge(const OrigamiSurface &s) { return {1, s.interior_edges().front()}; }

} // namespace

TEST_SUITE("cosheaf") {

TEST_CASE("constant cosheaf R has the signed incidence matrix as boundary") {
    for (const Mesh &m : {grid(2, 3), annulus(4, 4, 1), torus(4, 5)}) {
        const SurfacePtr s = to_surface(m);
        const ChainComplex cc = assemble_chain_complex(*constant_cosheaf(s, 1));
        CHECK(dense(cc.d1) == Eigen::MatrixXd(s->vertex_edge_incidence().cast<double>()));
        CHECK(dense(cc.d2) == Eigen::MatrixXd(s->edge_face_incidence().cast<double>()));
    }
}

TEST_CASE("zero stalks give an empty complex") {
    const SurfacePtr s = to_surface(grid(2, 2));
    const ChainComplex cc = assemble_chain_complex(*constant_cosheaf(s, 0));
    CHECK(cc.dim == std::array<Index, 3>{0, 0, 0});
    for (int k = 0; k < 3; ++k) CHECK(homology_basis(cc, k).dimension() == 0);
}

TEST_CASE("hinge cosheaf on two triangles has a 0x1 boundary") {
    const SurfacePtr s = to_surface(testing_support::two_triangles());
    const Model h = build_hinge_model(s);
    CHECK(h.complex.d1.rows() == 0);
    CHECK(h.complex.d1.cols() == 1);
    CHECK(homology_basis(h.complex, 1).dimension() == 1);
}

TEST_CASE("constant cosheaf homology is w copies of the base homology") {
    const std::vector<Mesh> meshes{grid(3, 3), annulus(4, 4, 1), cylinder(2, 6), torus(5, 5)};
    for (const Mesh &m : meshes) {
        const SurfacePtr s = to_surface(m);
        const BettiNumbers b = base_homology(*s);
        for (int w : {1, 6}) {
            const ChainComplex cc = assemble_chain_complex(*constant_cosheaf(s, w));
            CHECK(homology_basis(cc, 0).dimension() == w * b.b0);
            CHECK(homology_basis(cc, 1).dimension() == w * b.b1);
            CHECK(homology_basis(cc, 2).dimension() == w * b.b2);
        }
    }
}

TEST_CASE("zero extension maps keep the whole chain space as homology") {
    const SurfacePtr s = to_surface(grid(2, 2));
    Cosheaf f(s, "free");
    for (std::size_t i = 0; i < s->num_faces(); ++i) f.set_stalk_dim({2, static_cast<int>(i)}, 2);
    for (std::size_t i = 0; i < s->num_edges(); ++i) f.set_stalk_dim({1, static_cast<int>(i)}, 1);
    const ChainComplex cc = assemble_chain_complex(f);
    const SubspaceBasis h2 = homology_basis(cc, 2);
    CHECK(h2.dimension() == cc.dim[2]);
    CHECK(testing_support::max_abs(h2.basis.transpose() * h2.basis - Eigen::MatrixXd::Identity(cc.dim[2], cc.dim[2])) <=
          1e-12);
    CHECK(homology_basis(cc, 1).dimension() == cc.dim[1]);
}

TEST_CASE("functoriality and shape errors") {
    const SurfacePtr s = to_surface(grid(2, 2));
    auto c = constant_cosheaf(s, 2);
    for (const Incidence &inc : incidences(*s))
        if (inc.higher.dim == 1) {
            c->set_extension(inc, 1.001 * Eigen::MatrixXd::Identity(2, 2));
            break;
        }
    CHECK(error_kind_of([&] { assemble_chain_complex(*c); }) == ErrorKind::FunctorialityViolation);
    CHECK(c->functoriality_residual() > 1e-4);

    const Incidence any = incidences(*s).front();
    CHECK(error_kind_of([&] { c->set_extension(any, Eigen::MatrixXd::Identity(3, 2)); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("boundary squares to zero and rank-nullity holds") {
    for (const auto &[name, mesh, holes] : testing_support::test_surfaces()) {
        CAPTURE(name);
        const SurfacePtr s = to_surface(mesh);
        for (const Model &m : {build_hinge_model(s), build_spatial_model(s), build_rigid_model(s)}) {
            CHECK(m.complex.boundary_residual() <= 1e-11);
            const Eigen::MatrixXd d2 = dense(m.complex.d2);
            const auto k = linalg::sparse_kernel_basis(m.complex.d2, m.complex.coordinate_points(2));
            CHECK(k.cols() + testing_support::oracle_rank(d2) == m.complex.dim[2]);
        }
    }
}

TEST_CASE("sparse kernel matches a dense SVD oracle") {
    const std::vector<Mesh> meshes{grid(6, 7), annulus(6, 6, 2), torus(6, 8), miura(5, 5, 0.6),
                                   grid(6, 6, {.jitter = false})};
    for (const Mesh &m : meshes) {
        const SurfacePtr s = to_surface(m);
        for (const Model &model : {build_spatial_model(s), build_rigid_model(s)}) {
            const ChainComplex &cc = model.complex;
            REQUIRE(cc.dim[2] > 96);
            const Eigen::MatrixXd k = linalg::sparse_kernel_basis(cc.d2, cc.coordinate_points(2));
            const Eigen::MatrixXd p = oracle_null_projector(dense(cc.d2), 1e-9);
            CHECK(k.cols() == testing_support::oracle_nullity(dense(cc.d2)));
            CHECK(testing_support::max_abs(k * k.transpose() - p) <= 1e-8);
        }
    }
}

TEST_CASE("identity cosheaf map induces the identity") {
    const SurfacePtr s = to_surface(annulus(4, 4, 1));
    const Model b = build_rigid_model(s);
    CosheafMap id(b.cosheaf, b.cosheaf);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < s->num_cells(d); ++i) {
            const CellRef c{d, static_cast<int>(i)};
            id.set(c, Eigen::MatrixXd::Identity(b.cosheaf->stalk_dim(c), b.cosheaf->stalk_dim(c)));
        }
    CHECK(id.naturality_residual() == 0.0);
    for (int k : {1, 2}) {
        const SubspaceBasis h = homology_basis(b.complex, k);
        const Eigen::MatrixXd m = induced_map(id, k, b.complex, b.complex, h, h);
        CHECK(testing_support::max_abs(m - Eigen::MatrixXd::Identity(h.dimension(), h.dimension())) <= 1e-12);
    }
}

TEST_CASE("exactness checks pass on the hinge, rigid, spatial sequence") {
    const SurfacePtr s = to_surface(testing_support::two_panel());
    const KinematicAnalysis a = analyze_kinematics(s);
    const ExactnessReport r = check_exact_sequence(a.sequence.iota, a.sequence.pi);
    CHECK(r.passed);
    CHECK(r.max_residual <= 1e-12);
    const CellRef e = first_interior_edge(*s);
    for (const CellExactness &c : r.cells)
        if (c.cell == e) {
            CHECK(c.sub_dim == 1);
            CHECK(c.rank_iota == 1);
            CHECK(c.quotient_dim == 5);
        }
    CHECK_THROWS_AS(check_exact_sequence(a.sequence.pi, a.sequence.iota), Error);
}

TEST_CASE("exactness checks catch a zero iota and a perturbed pi") {
    const SurfacePtr s = to_surface(grid(2, 2));
    const KinematicAnalysis a = analyze_kinematics(s);
    const CellRef e = first_interior_edge(*s);

    CosheafMap zero_iota = a.sequence.iota;
    zero_iota.set(e, Eigen::MatrixXd::Zero(6, 1));
    ExactnessReport r = check_exact_sequence(zero_iota, a.sequence.pi);
    CHECK_FALSE(r.passed);
    bool injectivity = false;
    for (const CellExactness &c : r.cells)
        for (SequenceViolation v : c.violations) injectivity |= c.cell == e && v == SequenceViolation::Injectivity;
    CHECK(injectivity);

    Rng rng(5);
    CosheafMap bent_pi = a.sequence.pi;
    Eigen::MatrixXd noise = Eigen::MatrixXd::NullaryExpr(5, 6, [&] { return rng.uniform(); });
    noise /= testing_support::max_abs(noise);
    bent_pi.set(e, a.sequence.pi.at(e) + 1e-3 * noise);
    r = check_exact_sequence(a.sequence.iota, bent_pi);
    CHECK_FALSE(r.passed);
    CHECK(r.max_residual > 1e-4);
    CHECK(r.max_residual < 1e-2);
}

TEST_CASE("connecting map on the two-panel fold matches the block formula") {
    const SurfacePtr s = to_surface(testing_support::two_panel());
    const KinematicAnalysis a = analyze_kinematics(s);
    REQUIRE(a.h2_spatial.dimension() == 7);
    REQUIRE(a.h1_hinge.dimension() == 1);

    const int e = s->interior_edges().front();
    const Eigen::Vector3d l = s->edge_axis(e);
    const Eigen::Vector3d q = s->vertex_position(s->edge_vertices(e)[0]);
    const double rate = 0.7;

    // face 0 at rest, face 1 turning about the hinge line
    Eigen::VectorXd nu = Eigen::VectorXd::Zero(12);
    const Index off = a.spatial.complex.offset[2][1];
    nu.segment<3>(off) = rate * l;
    nu.segment<3>(off + 3) = (rate * l).cross(s->face_centroid(1) - q);
    REQUIRE((dense(a.spatial.complex.d2) * nu).norm() <= 1e-14);

    const Eigen::VectorXd hinge = a.h1_hinge.basis * (a.theta * (a.h2_spatial.basis.transpose() * nu));
    const double expected = s->edge_face_sign(e, 1) * l.dot(nu.segment<3>(off));
    CHECK(hinge.size() == 1);
    CHECK(hinge[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(hinge[0]) == doctest::Approx(rate).epsilon(1e-12));

    // rigid translation of both panels
    Eigen::VectorXd translate = Eigen::VectorXd::Zero(12);
    for (int f = 0; f < 2; ++f) translate.segment<3>(a.spatial.complex.offset[2][f] + 3) = Eigen::Vector3d(1, -2, 0.5);
    CHECK((a.theta * (a.h2_spatial.basis.transpose() * translate)).norm() <= 1e-12);
}

TEST_CASE("connecting map kills the image of pi_star") {
    for (const auto &[name, mesh, holes] : testing_support::test_surfaces()) {
        CAPTURE(name);
        const KinematicAnalysis a = analyze_kinematics(to_surface(mesh));
        CHECK(testing_support::max_abs(a.theta * a.pi_star) <= 1e-9 * std::max(1.0, a.theta_scale));
    }
}

TEST_CASE("connecting map is independent of the lift") {
    const std::vector<Mesh> meshes{grid(3, 3), annulus(4, 4, 1), single_vertex(5, 0.3), torus(4, 4)};
    std::vector<KinematicAnalysis> analyses;
    for (const Mesh &m : meshes) analyses.push_back(analyze_kinematics(to_surface(m)));

    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(6000 + seed);
        const KinematicAnalysis &a = analyses[seed % analyses.size()];
        const ShortExactSequence &seq = a.sequence;
        CAPTURE(seed);

        // a random 1-cycle of the spatial model
        const Eigen::MatrixXd z = linalg::kernel_basis(dense(a.spatial.complex.d1));
        REQUIRE(z.cols() > 0);
        const Eigen::VectorXd q = z * rng.vec(z.cols());

        const SubspaceBasis h0 = homology_basis(a.hinge.complex, 0);
        const Eigen::VectorXd least_squares = seq.pi.chain_pseudo_inverse(1, seq.total, seq.quotient) * q;
        const Eigen::VectorXd other =
            least_squares + seq.iota.chain_matrix(1, seq.sub, seq.total) * rng.vec(seq.sub.dim[1]);
        REQUIRE((seq.pi.chain_matrix(1, seq.total, seq.quotient) * other - q).norm() <= 1e-12 * q.norm());

        const Eigen::VectorXd x0 = connect_lift(seq, 1, least_squares, h0);
        const Eigen::VectorXd x1 = connect_lift(seq, 1, other, h0);
        CHECK((x0 - x1).norm() <= 1e-9 * std::max(1.0, x0.norm()));
    }
}

TEST_CASE("connect_lift rejects a lift of a non-cycle") {
    const KinematicAnalysis a = analyze_kinematics(to_surface(grid(3, 3)));
    const ShortExactSequence &seq = a.sequence;
    Rng rng(9);
    const Eigen::VectorXd q = rng.vec(seq.quotient.dim[1]);
    REQUIRE((dense(a.spatial.complex.d1) * q).norm() > 1e-3);
    const Eigen::VectorXd y = seq.pi.chain_pseudo_inverse(1, seq.total, seq.quotient) * q;
    CHECK(error_kind_of([&] { connect_lift(seq, 1, y, homology_basis(a.hinge.complex, 0)); }) ==
          ErrorKind::LiftFailure);
}

} // TEST_SUITE
