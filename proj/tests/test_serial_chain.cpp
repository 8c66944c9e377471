#include <doctest.h>

#include "origami/error.hpp"
#include "origami/report.hpp"
#include "origami/serial_chain.hpp"
#include "support.hpp"

using namespace origami;
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

// Moves [w; b] measured at `from` to `to` with plain cross products.
Vector6d move(const Vector6d &v, const Eigen::Vector3d &from, const Eigen::Vector3d &to) {
    Vector6d out = v;
    out.tail<3>() += v.head<3>().cross(to - from);
    return out;
}

// Body velocities panel by panel, base at rest.
Eigen::VectorXd recurrence_oracle(const ChainGeometry &g, const Eigen::VectorXd &rates) {
    const int n = g.num_hinges();
    Eigen::VectorXd nu(6 * n);
    Vector6d prev = Vector6d::Zero();
    for (int i = 0; i < n; ++i) {
        Vector6d joint = Vector6d::Zero();
        joint.head<3>() = rates[i] * g.hinge_axis[i].normalized();
        prev = move(prev, g.face_anchor[i], g.face_anchor[i + 1]) + move(joint, g.hinge_anchor[i], g.face_anchor[i + 1]);
        nu.segment<6>(6 * i) = prev;
    }
    return nu;
}

ChainGeometry random_geometry(int n, Rng &rng) {
    ChainGeometry g;
    for (int i = 0; i <= n; ++i) g.face_anchor.push_back(rng.vec3(3.0));
    for (int i = 0; i < n; ++i) {
        g.hinge_anchor.push_back(rng.vec3(3.0));
        g.hinge_axis.push_back(rng.unit3());
    }
    return g;
}

} // namespace

TEST_SUITE("serial_chain") {

TEST_CASE("one hinge") {
    Rng rng(1);
    const ChainGeometry g = random_geometry(1, rng);
    const SerialOperators ops = serial_chain_operators(g);
    Vector6d expected = Vector6d::Zero();
    expected.head<3>() = g.hinge_axis[0];
    expected = move(expected, g.hinge_anchor[0], g.face_anchor[1]);
    REQUIRE(ops.d.rows() == 6);
    REQUIRE(ops.d.cols() == 1);
    CHECK((ops.d.col(0) - expected).norm() <= 1e-15);
    CHECK(ops.inverse_residual <= 1e-12);
    CHECK(ops.left_inverse_residual <= 1e-12);
}

TEST_CASE("recurrence equals D theta_dot") {
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(700 + seed);
        const int n = 1 + seed % 8;
        const ChainGeometry g = random_geometry(n, rng);
        const SerialOperators ops = serial_chain_operators(g);
        const Eigen::VectorXd rates = rng.vec(n);
        const Eigen::VectorXd oracle = recurrence_oracle(g, rates);
        CHECK(testing_support::max_abs(ops.d * rates - oracle) <= 1e-12 * std::max(1.0, testing_support::max_abs(oracle)));
        CHECK(testing_support::max_abs(propagate_recurrence(g, rates) - oracle) <= 1e-12 * std::max(1.0, testing_support::max_abs(oracle)));
        CHECK(ops.inverse_residual <= 1e-12);
        CHECK(ops.left_inverse_residual <= 1e-11);
        CHECK(testing_support::max_abs(ops.d_pinv * ops.d - Eigen::MatrixXd::Identity(n, n)) <= 1e-11);
    }
}

TEST_CASE("psi is block lower triangular and its inverse bidiagonal") {
    Rng rng(5);
    const SerialOperators ops = serial_chain_operators(random_geometry(4, rng));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (j > i) CHECK(ops.psi.block<6, 6>(6 * i, 6 * j).isZero(0.0));
            if (j > i || j < i - 1) CHECK(ops.psi_inverse.block<6, 6>(6 * i, 6 * j).isZero(0.0));
        }
}

TEST_CASE("non-unit axes are normalized") {
    Rng rng(8);
    ChainGeometry g = random_geometry(3, rng);
    const SerialOperators unit = serial_chain_operators(g);
    g.hinge_axis[1] *= 3.0;
    const SerialOperators scaled = serial_chain_operators(g);
    CHECK(testing_support::max_abs(unit.d - scaled.d) <= 1e-15);
}

TEST_CASE("D^+ equals the pinned connecting operator") {
    for (int n = 1; n <= 8; ++n) {
        for (std::uint64_t seed : {3u, 42u}) {
            CAPTURE(n);
            CAPTURE(seed);
            const SerialChain chain = serial_chain_from_surface(to_surface(random_chain(n, seed)));
            REQUIRE(chain.hinges.size() == static_cast<std::size_t>(n));
            const SerialOperators ops = serial_chain_operators(chain.geometry);
            CHECK(testing_support::max_abs(ops.d_pinv - pinned_connecting_operator(chain)) <= 1e-9);
        }
    }
}

TEST_CASE("serial check reports") {
    const SerialReport one = run_serial_check(1, 1);
    CHECK(one.passed());
    CHECK(one.recurrence_residual <= 1e-12);
    CHECK(one.inverse_residual <= 1e-12);
    CHECK(one.left_inverse_residual <= 1e-12);
    CHECK(one.connecting_residual <= 1e-12);

    const SerialReport eight = run_serial_check(8, 42);
    CHECK(eight.passed());
    CHECK(eight.recurrence_residual <= 1e-10);
    CHECK(eight.inverse_residual <= 1e-10);
    CHECK(eight.left_inverse_residual <= 1e-10);
    CHECK(eight.connecting_residual <= 1e-10);
}

TEST_CASE("serial chain errors") {
    CHECK(error_kind_of([] { run_serial_check(0, 1); }) == ErrorKind::InvalidParams);
    CHECK(error_kind_of([] { serial_chain_operators(ChainGeometry{{Eigen::Vector3d::Zero()}, {}, {}}); }) ==
          ErrorKind::InvalidParams);

    Rng rng(2);
    ChainGeometry g = random_geometry(3, rng);
    g.hinge_axis[2].setZero();
    CHECK(error_kind_of([&] { serial_chain_operators(g); }) == ErrorKind::DegenerateHinge);

    g = random_geometry(3, rng);
    g.face_anchor.pop_back();
    CHECK(error_kind_of([&] { serial_chain_operators(g); }) == ErrorKind::ShapeMismatch);

    CHECK(error_kind_of([] { serial_chain_from_surface(to_surface(grid(2, 2))); }) == ErrorKind::InvalidInput);
}

TEST_CASE("chain generator reads back as a path") {
    const SerialChain c = serial_chain_from_surface(to_surface(chain(5)));
    CHECK(c.faces.size() == 6);
    CHECK(c.hinges.size() == 5);
    CHECK(c.faces.front() == 0);
}

} // TEST_SUITE
