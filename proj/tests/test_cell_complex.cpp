#include <doctest.h>

#include <cmath>
#include <numbers>

#include "origami/cell_complex.hpp"
#include "origami/error.hpp"
#include "support.hpp"

using namespace origami;
using testing_support::Rng;

namespace {

ErrorKind build_error(std::vector<Eigen::Vector3d> v, std::vector<std::vector<int>> f) {
    try {
        build_surface(std::move(v), std::move(f));
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("surface was accepted");
    return ErrorKind::InvalidInput;
}

// Five quads closed into a band with a half twist.
Mesh mobius_band() {
    Mesh m;
    const int n = 5;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        for (double s : {0.3, -0.3}) {
            const double r = 1.0 + s * std::cos(a / 2);
            m.vertices.emplace_back(r * std::cos(a), r * std::sin(a), s * std::sin(a / 2));
        }
    }
    auto t = [](int i) { return 2 * i; };
    auto b = [](int i) { return 2 * i + 1; };
    for (int i = 0; i + 1 < n; ++i) m.faces.push_back({t(i), t(i + 1), b(i + 1), b(i)});
    m.faces.push_back({t(n - 1), b(0), t(0), b(n - 1)});
    return m;
}

// Betti numbers from integer incidence ranks, computed without the library.
BettiNumbers oracle_betti(const OrigamiSurface &s) {
    const Eigen::MatrixXd d1 = s.vertex_edge_incidence().cast<double>();
    const Eigen::MatrixXd d2 = s.edge_face_incidence().cast<double>();
    const auto r1 = testing_support::oracle_rank(d1);
    const auto r2 = testing_support::oracle_rank(d2);
    return {static_cast<int>(s.num_vertices() - r1), static_cast<int>(s.num_edges() - r1 - r2),
            static_cast<int>(s.num_faces() - r2)};
}

} // namespace

TEST_SUITE("cell_complex") {

TEST_CASE("two triangles sharing an edge") {
    const auto m = testing_support::two_triangles();
    const OrigamiSurface s = build_surface(m.vertices, m.faces);
    CHECK(s.num_vertices() == 4);
    CHECK(s.num_edges() == 5);
    CHECK(s.interior_edges().size() == 1);
    CHECK(s.interior_vertices().empty());
    CHECK(s.num_faces() == 2);

    const int e = s.interior_edges().front();
    CHECK(s.edge_vertices(e) == std::array<int, 2>{1, 2});
    CHECK((s.edge_centroid(e) - 0.5 * (m.vertices[1] + m.vertices[2])).norm() <= 1e-15);
    CHECK((s.face_centroid(0) - (m.vertices[0] + m.vertices[1] + m.vertices[2]) / 3.0).norm() <= 1e-15);
    CHECK((s.edge_axis(e) - (m.vertices[2] - m.vertices[1]).normalized()).norm() <= 1e-15);
}

TEST_CASE("3x3 grid counts") {
    // 4x4 lattice points; 2*3*4 segments of which 2*3*2 lie between two
    // squares; the inner 2x2 points are interior.
    const OrigamiSurface s = *to_surface(grid(3, 3, {.jitter = false}));
    CHECK(s.num_vertices() == 16);
    CHECK(s.num_edges() == 24);
    CHECK(s.interior_edges().size() == 12);
    CHECK(s.num_faces() == 9);
    CHECK(s.interior_vertices().size() == 4);
}

TEST_CASE("construction errors") {
    CHECK(build_error({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, {{0, 1, 2}}) == ErrorKind::Degenerate);
    CHECK(build_error({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}}, {{0, 1, 2}}) == ErrorKind::Degenerate);

    // three triangles on one edge
    CHECK(build_error({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}}, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}) ==
          ErrorKind::NonManifold);
    // bowtie: two triangles meeting in a single vertex
    CHECK(build_error({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}, {{0, 1, 2}, {0, 3, 4}}) ==
          ErrorKind::NonManifold);

    const Mesh mobius = mobius_band();
    CHECK(build_error(mobius.vertices, mobius.faces) == ErrorKind::NonOrientable);

    CHECK(build_error({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 7}}) == ErrorKind::IndexOutOfRange);
    CHECK(build_error({{0, 0, 0}, {1, 0, 0}}, {{0, 1}}) == ErrorKind::InvalidInput);
}

TEST_CASE("a coplanar face through the origin is accepted") {
    const OrigamiSurface s = build_surface({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    CHECK(s.num_faces() == 1);
}

TEST_CASE("explicit edge order is respected") {
    const auto m = testing_support::two_triangles();
    const std::vector<std::array<int, 2>> order{{2, 1}, {0, 1}, {3, 2}, {0, 2}, {1, 3}};
    const OrigamiSurface s = build_surface(m.vertices, m.faces, order);
    CHECK(s.edge_vertices(0) == std::array<int, 2>{1, 2});
    CHECK(s.edge_vertices(2) == std::array<int, 2>{2, 3});
    CHECK(s.is_interior_edge(0));
}

TEST_CASE("betti numbers of the standard shapes") {
    const GeneratorOptions o;
    const std::vector<std::pair<Mesh, BettiNumbers>> cases{
        {grid(3, 4, o), {1, 0, 0}},     {single_vertex(5, 0.3, o), {1, 0, 0}}, {annulus(4, 4, 1, o), {1, 1, 0}},
        {cylinder(2, 8, o), {1, 1, 0}}, {torus(6, 6, o), {1, 2, 1}},           {chain(4, o), {1, 0, 0}},
    };
    for (const auto &[mesh, expected] : cases) {
        const SurfacePtr s = to_surface(mesh);
        const BettiNumbers b = base_homology(*s);
        CHECK(b == expected);
        CHECK(b == oracle_betti(*s));
        const auto chi = static_cast<long>(s->num_vertices()) - static_cast<long>(s->num_edges()) +
                         static_cast<long>(s->num_faces());
        CHECK(chi == b.b0 - b.b1 + b.b2);
    }
}

TEST_CASE("base boundary squares to zero and interior edges get opposite signs") {
    for (const auto &[name, mesh, holes] : testing_support::test_surfaces()) {
        CAPTURE(name);
        const SurfacePtr s = to_surface(mesh);
        const Eigen::MatrixXi dd = s->vertex_edge_incidence() * s->edge_face_incidence();
        CHECK(testing_support::max_abs(dd) == 0);
        for (int e : s->interior_edges()) {
            const auto f = s->edge_faces(e);
            REQUIRE(f.size() == 2);
            CHECK(s->edge_face_sign(e, f[0]) * s->edge_face_sign(e, f[1]) == -1);
        }
        CHECK(base_homology(*s).b1 == holes);
    }
}

TEST_CASE("relabeling vertices leaves the betti numbers unchanged") {
    const std::vector<Mesh> meshes{grid(3, 3), annulus(4, 4, 1), torus(4, 4), cylinder(2, 5)};
    for (int seed = 0; seed < testing_support::kPropertyInstances; ++seed) {
        Rng rng(4000 + seed);
        const Mesh &m = meshes[seed % meshes.size()];
        const Mesh r = testing_support::relabel(m, testing_support::random_permutation(m.vertices.size(), rng));
        CHECK(base_homology(*to_surface(r)) == base_homology(*to_surface(m)));
    }
}

} // TEST_SUITE
