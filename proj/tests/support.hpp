#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "origami/generators.hpp"

// Helpers shared by the unit and acceptance binaries. The oracles here
// deliberately avoid origami::linalg so they can catch its mistakes.
namespace testing_support {

using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

inline constexpr int kPropertyInstances = 100;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(m_engine); }
    Vector3d vec3(double scale = 1.0) { return scale * Vector3d(uniform(), uniform(), uniform()); }
    Vector3d unit3() {
        Vector3d v;
        do v = vec3();
        while (v.norm() < 0.1);
        return v.normalized();
    }
    VectorXd vec(Eigen::Index n) {
        VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform();
        return v;
    }
    std::mt19937_64 &engine() { return m_engine; }

private:
    std::mt19937_64 m_engine;
};

// Nullity by a full JacobiSVD with a relative cutoff.
inline Eigen::Index oracle_nullity(const MatrixXd &m, double tol = 1e-9) {
    if (m.cols() == 0) return 0;
    if (m.rows() == 0) return m.cols();
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto &s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol * s[0]) ++rank;
    return m.cols() - rank;
}

// Largest absolute entry of any expression; 0 when it is empty.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
template <typename Derived>
double max_abs(const Eigen::ArrayBase<Derived> &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Eigen::Index oracle_rank(const MatrixXd &m, double tol = 1e-9) { return m.cols() - oracle_nullity(m, tol); }

inline MatrixXd dense(const Eigen::SparseMatrix<double> &m) { return MatrixXd(m); }

// Two unit squares sharing the edge x = 1, the second one tilted out of
// plane so the fold is not flat.
inline origami::Mesh two_panel() {
    return {{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {1.9, 0, 0.4}, {1.9, 1, 0.4}},
            {{0, 1, 2, 3}, {1, 4, 5, 2}}};
}

inline origami::Mesh two_triangles() {
    return {{{0, 0, 0}, {1, 0, 0}, {0.3, 1, 0.1}, {1.2, 0.9, 0.5}}, {{0, 1, 2}, {1, 3, 2}}};
}

// Mesh with vertex i renamed perm[i], faces listed in reverse order.
inline origami::Mesh relabel(const origami::Mesh &m, const std::vector<int> &perm) {
    origami::Mesh out;
    out.vertices.resize(m.vertices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out.vertices[perm[i]] = m.vertices[i];
    for (auto it = m.faces.rbegin(); it != m.faces.rend(); ++it) {
        std::vector<int> f;
        for (int v : *it) f.push_back(perm[v]);
        std::rotate(f.begin(), f.begin() + 1, f.end());
        out.faces.push_back(std::move(f));
    }
    return out;
}

inline std::vector<int> random_permutation(std::size_t n, Rng &rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng.engine());
    return p;
}

struct NamedMesh {
    std::string name;
    origami::Mesh mesh;
    int holes = 0; // dim H1 of the base complex
};

// The generated test surfaces used by the ledger checks.
inline std::vector<NamedMesh> test_surfaces() {
    using namespace origami;
    return {
        {"chain(5)", chain(5), 0},
        {"grid(3,3)", grid(3, 3), 0},
        {"grid(4,5)", grid(4, 5), 0},
        {"single_vertex(4)", single_vertex(4, 0.3), 0},
        {"single_vertex(6)", single_vertex(6, 0.25), 0},
        {"annulus(4,4,1)", annulus(4, 4, 1), 1},
        {"annulus(5,5,3)", annulus(5, 5, 3), 1},
        {"cylinder(2,8)", cylinder(2, 8), 1},
        {"torus(6,6)", torus(6, 6), 2},
        {"miura(3,3)", miura(3, 3, 0.6), 0},
        {"random_chain(4)", random_chain(4, 7), 0},
    };
}

} // namespace testing_support
