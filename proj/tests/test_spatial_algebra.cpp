#include <doctest.h>

#include "origami/error.hpp"
#include "origami/spatial_algebra.hpp"
#include "support.hpp"

using namespace origami;
using testing_support::Rng;

TEST_SUITE("spatial_algebra") {

TEST_CASE("cross_op layout and zero") {
    CHECK(cross_op(Eigen::Vector3d::Zero()).isZero(0.0));

    const Eigen::Matrix3d x = cross_op({1, 0, 0});
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(1, 2) = -1.0;
    expected(2, 1) = 1.0;
    CHECK(x == expected);
}

TEST_CASE("cross_op agrees with the cross product and is antisymmetric") {
    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(seed);
        const Eigen::Vector3d w = rng.vec3(3.0), a = rng.vec3(3.0);
        const Eigen::Matrix3d m = cross_op(w);
        CHECK(testing_support::max_abs(m * a - w.cross(a)) <= 1e-14);
        CHECK(Eigen::Matrix3d(m.transpose()) == Eigen::Matrix3d(-m));
    }
}

TEST_CASE("rigid transfer examples") {
    const Eigen::Vector3d p(0.3, -1.2, 2.0);
    CHECK(rigid_transfer_matrix(p, p) == Matrix6d::Identity());

    SpatialVector nu{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
    const SpatialVector out = rigid_transfer({0, 0, 0}, {1, 0, 0}).apply(nu);
    CHECK(out.omega == Eigen::Vector3d(0, 0, 1));
    CHECK((out.beta - Eigen::Vector3d(0, 1, 0)).norm() <= 1e-15);
    CHECK(out.anchor == Eigen::Vector3d(1, 0, 0));
}

TEST_CASE("rigid transfer composition, inverse, determinant and lower-left block") {
    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(1000 + seed);
        const Eigen::Vector3d f = rng.vec3(2.0), g = rng.vec3(2.0), h = rng.vec3(2.0);
        const Matrix6d fg = rigid_transfer_matrix(f, g);
        const Matrix6d gh = rigid_transfer_matrix(g, h);
        const Matrix6d fh = rigid_transfer_matrix(f, h);
        CHECK(testing_support::max_abs(gh * fg - fh) <= 1e-13);
        CHECK(testing_support::max_abs(rigid_transfer_matrix(g, f) * fg - Matrix6d::Identity()) <= 1e-13);
        CHECK(fg.determinant() == doctest::Approx(1.0).epsilon(1e-13));

        Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
        const Eigen::Vector3d d = f - g;
        expected << 0, -d.z(), d.y(), d.z(), 0, -d.x(), -d.y(), d.x(), 0;
        CHECK(testing_support::max_abs(fg.block<3, 3>(3, 0) - expected) <= 1e-15);

        const Vector6d v = Vector6d::NullaryExpr([&] { return rng.uniform(); });
        const SpatialVector a = SpatialVector::from_stacked(v, f);
        CHECK((rigid_transfer(f, g).apply(a).stacked() - fg * v).norm() <= 1e-14);
    }
}

TEST_CASE("hinge embedding") {
    Vector6d expected = Vector6d::Zero();
    expected[0] = 1.0;
    CHECK(hinge_embed({1, 0, 0}).matrix == expected);

    Vector6d y = Vector6d::Zero();
    y[1] = 2.0;
    CHECK(Vector6d(2.0 * hinge_embed({0, 1, 0}).matrix) == y);
    CHECK(Vector6d(0.0 * hinge_embed({0, 0, 1}).matrix).isZero(0.0));

    CHECK_THROWS_AS(hinge_embed({0, 0, 0}), Error);
    try {
        hinge_embed({0, 0, 0});
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::ZeroAxis);
    }
    try {
        hinge_embed({2, 0, 0});
        FAIL("non-unit axis accepted");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NonUnitAxis);
    }
}

TEST_CASE("edge projection kills the hinge and keeps beta") {
    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(2000 + seed);
        const Eigen::Vector3d l = rng.unit3();
        const EdgeProjection p = edge_projection(l);
        const HingeOp i = hinge_embed(l);

        CHECK((p.matrix * i.matrix).norm() <= 1e-15);
        CHECK(testing_support::max_abs(p.matrix * p.matrix.transpose() - Eigen::Matrix<double, 5, 5>::Identity()) <= 1e-14);
        CHECK(testing_support::oracle_rank(p.matrix) == 5);

        Vector6d pure_linear = Vector6d::Zero();
        pure_linear.tail<3>() = rng.vec3();
        CHECK((p.matrix * pure_linear).norm() == doctest::Approx(pure_linear.norm()).epsilon(1e-14));
        CHECK(i.matrix.tail<3>().isZero(0.0));
    }
}

TEST_CASE("axis complement is deterministic and right-handed") {
    const auto c = axis_complement({1, 0, 0});
    Eigen::Matrix3d frame;
    frame << Eigen::Vector3d(1, 0, 0), c;
    CHECK(frame.determinant() == doctest::Approx(1.0));
    CHECK(testing_support::max_abs(frame.transpose() * frame - Eigen::Matrix3d::Identity()) <= 1e-15);
    CHECK(c.col(0) == Eigen::Vector3d(0, 1, 0));
    CHECK(c == axis_complement({1, 0, 0}));
}

TEST_CASE("eta examples and agreement with rigid transfer") {
    const SpatialVector translation{{0, 0, 0}, {0.5, -2, 1}, {3, 1, 0}};
    CHECK(eta_face_vertex(translation, {7, -4, 2}) == translation.beta);

    const SpatialVector spin{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
    CHECK((eta_face_vertex(spin, {1, 0, 0}) - Eigen::Vector3d(0, 1, 0)).norm() <= 1e-15);

    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(3000 + seed);
        const Eigen::Vector3d pf = rng.vec3(), pv = rng.vec3();
        const SpatialVector nu{rng.vec3(), rng.vec3(), pf};
        const Eigen::Vector3d via_transfer = rigid_transfer(pf, pv).apply(nu).beta;
        CHECK((eta_face_vertex(nu, pv) - via_transfer).norm() <= 1e-13);
        CHECK((eta_matrix(pf, pv) * nu.stacked() - via_transfer).norm() <= 1e-13);
    }
}

} // TEST_SUITE
