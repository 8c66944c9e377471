#include "origami/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include "origami/error.hpp"

namespace origami {

namespace {

constexpr double kJitter = 1e-3;

// Uniform in [-1, 1) from the top 53 bits, identical on every platform.
double symmetric_unit(std::mt19937_64 &rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

void perturb(Mesh &m, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (auto &p : m.vertices)
        for (int k = 0; k < 3; ++k) p[k] += amplitude * symmetric_unit(rng);
}

Mesh finish(Mesh m, const GeneratorOptions &opt, double edge_length = 1.0) {
    if (opt.jitter) perturb(m, kJitter * edge_length, opt.seed);
    return m;
}

void require(bool ok, const std::string &what) {
    if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

// Vertex (i, j) of a (rows + 1) x (cols + 1) lattice.
int lattice(int i, int j, int cols) { return i * (cols + 1) + j; }

Mesh flat_lattice(int rows, int cols) {
    Mesh m;
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j <= cols; ++j) m.vertices.emplace_back(j, i, 0.0);
    return m;
}

std::vector<int> quad(int i, int j, int cols) {
    return {lattice(i, j, cols), lattice(i, j + 1, cols), lattice(i + 1, j + 1, cols), lattice(i + 1, j, cols)};
}

// Drops vertices no face uses and renumbers the rest in order.
Mesh compact(Mesh m) {
    std::vector<int> remap(m.vertices.size(), -1);
    for (const auto &f : m.faces)
        for (int v : f) remap[v] = 0;
    std::vector<Eigen::Vector3d> kept;
    for (std::size_t v = 0; v < remap.size(); ++v) {
        if (remap[v] < 0) continue;
        remap[v] = static_cast<int>(kept.size());
        kept.push_back(m.vertices[v]);
    }
    for (auto &f : m.faces)
        for (int &v : f) v = remap[v];
    m.vertices = std::move(kept);
    return m;
}

int as_int(double x, const std::string &name) {
    require(std::isfinite(x) && std::floor(x) == x && std::abs(x) < 1e6, name + " must be an integer");
    return static_cast<int>(x);
}

struct ShapeInfo {
    std::vector<std::string> names;
    std::vector<double> defaults;
};

const std::map<std::string, ShapeInfo> &shapes() {
    static const std::map<std::string, ShapeInfo> table = {
        {"chain", {{"n"}, {5}}},
        {"single_vertex", {{"degree", "fold_angle"}, {4, 0.3}}},
        {"grid", {{"rows", "cols"}, {3, 3}}},
        {"annulus", {{"rows", "cols", "hole"}, {4, 4, 1}}},
        {"cylinder", {{"rows", "cols"}, {2, 8}}},
        {"torus", {{"rows", "cols"}, {6, 6}}},
        {"miura", {{"rows", "cols", "angle"}, {3, 3, 0.6}}},
    };
    return table;
}

} // namespace

Mesh chain(int n, const GeneratorOptions &opt) {
    require(n >= 1, "chain needs n >= 1");
    Mesh m = flat_lattice(n + 1, 1);
    for (int i = 0; i <= n; ++i) m.faces.push_back(quad(i, 0, 1));
    return finish(std::move(m), opt);
}

Mesh single_vertex(int degree, double fold_angle, const GeneratorOptions &opt) {
    require(degree >= 3, "single_vertex needs degree >= 3");
    require(std::isfinite(fold_angle) && std::abs(fold_angle) < std::numbers::pi / 2,
            "fold_angle must lie in (-pi/2, pi/2)");
    Mesh m;
    m.vertices.emplace_back(0.0, 0.0, 0.0);
    const double radial = std::cos(fold_angle);
    const double lift = std::sin(fold_angle);
    for (int k = 0; k < degree; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / degree;
        m.vertices.emplace_back(radial * std::cos(phi), radial * std::sin(phi), k % 2 == 0 ? lift : -lift);
    }
    for (int k = 0; k < degree; ++k) m.faces.push_back({0, 1 + k, 1 + (k + 1) % degree});
    return finish(std::move(m), opt);
}

Mesh grid(int rows, int cols, const GeneratorOptions &opt) {
    require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
    Mesh m = flat_lattice(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.faces.push_back(quad(i, j, cols));
    return finish(std::move(m), opt);
}

Mesh annulus(int rows, int cols, int hole, const GeneratorOptions &opt) {
    require(hole >= 1, "annulus needs hole >= 1");
    require(rows >= hole + 2 && cols >= hole + 2, "annulus needs rows, cols >= hole + 2");
    const int r0 = (rows - hole) / 2;
    const int c0 = (cols - hole) / 2;
    Mesh m = flat_lattice(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const bool in_hole = i >= r0 && i < r0 + hole && j >= c0 && j < c0 + hole;
            if (!in_hole) m.faces.push_back(quad(i, j, cols));
        }
    return finish(compact(std::move(m)), opt);
}

Mesh cylinder(int rows, int cols, const GeneratorOptions &opt) {
    require(rows >= 1 && cols >= 3, "cylinder needs rows >= 1, cols >= 3");
    const double radius = 0.5 / std::sin(std::numbers::pi / cols);
    Mesh m;
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / cols;
            m.vertices.emplace_back(radius * std::cos(phi), radius * std::sin(phi), i);
        }
    const auto at = [cols](int i, int j) { return i * cols + (j % cols); };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.faces.push_back({at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)});
    return finish(std::move(m), opt);
}

Mesh torus(int rows, int cols, const GeneratorOptions &opt) {
    require(rows >= 3 && cols >= 3, "torus needs rows, cols >= 3");
    const double tube = 0.5 / std::sin(std::numbers::pi / cols);
    const double major = tube + 0.5 / std::sin(std::numbers::pi / rows);
    Mesh m;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double u = 2.0 * std::numbers::pi * i / rows;
            const double v = 2.0 * std::numbers::pi * j / cols;
            const double ring = major + tube * std::cos(v);
            m.vertices.emplace_back(ring * std::cos(u), ring * std::sin(u), tube * std::sin(v));
        }
    const auto at = [rows, cols](int i, int j) { return (i % rows) * cols + (j % cols); };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
    return finish(std::move(m), opt);
}

Mesh miura(int rows, int cols, double angle, const GeneratorOptions &) {
    require(rows >= 1 && cols >= 1, "miura needs rows, cols >= 1");
    require(std::isfinite(angle) && angle > 0.0 && angle < std::numbers::pi / 2, "angle must lie in (0, pi/2)");
    constexpr double zig = 0.5;
    Mesh m;
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j <= cols; ++j) {
            const Eigen::Vector3d a(0.0, i * std::cos(angle), (i % 2) * std::sin(angle));
            const Eigen::Vector3d b(j * std::cos(zig), (j % 2) * std::sin(zig), 0.0);
            m.vertices.push_back(a + b);
        }
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.faces.push_back(quad(i, j, cols));
    return m;
}

Mesh random_chain(int n, std::uint64_t seed) {
    require(n >= 1, "chain needs n >= 1");
    std::mt19937_64 rng(seed);
    Mesh m;
    for (int i = 0; i <= n + 1; ++i) {
        const Eigen::Vector3d a(i + 0.3 * symmetric_unit(rng), 0.3 * symmetric_unit(rng), 0.3 * symmetric_unit(rng));
        const Eigen::Vector3d b(i + 0.3 * symmetric_unit(rng), 1.0 + 0.3 * symmetric_unit(rng),
                                0.3 * symmetric_unit(rng));
        m.vertices.push_back(a);
        m.vertices.push_back(b);
    }
    for (int i = 0; i <= n; ++i) m.faces.push_back({2 * i, 2 * i + 2, 2 * i + 3, 2 * i + 1});
    return m;
}

std::vector<std::string> shape_names() {
    std::vector<std::string> out;
    for (const auto &[name, info] : shapes()) out.push_back(name);
    return out;
}

std::string shape_usage(const std::string &shape) {
    const auto it = shapes().find(shape);
    if (it == shapes().end()) throw Error(ErrorKind::InvalidParams, "unknown shape '" + shape + "'");
    std::string out = shape;
    for (std::size_t k = 0; k < it->second.names.size(); ++k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " [%s=%g]", it->second.names[k].c_str(), it->second.defaults[k]);
        out += buf;
    }
    return out;
}

Mesh generate(const std::string &shape, const std::vector<double> &params, const GeneratorOptions &opt) {
    const auto it = shapes().find(shape);
    if (it == shapes().end()) throw Error(ErrorKind::InvalidParams, "unknown shape '" + shape + "'");
    const ShapeInfo &info = it->second;
    require(params.size() <= info.defaults.size(), "too many parameters: " + shape_usage(shape));
    std::vector<double> p = info.defaults;
    std::copy(params.begin(), params.end(), p.begin());
    const auto i = [&](std::size_t k) { return as_int(p[k], info.names[k]); };

    if (shape == "chain") return chain(i(0), opt);
    if (shape == "single_vertex") return single_vertex(i(0), p[1], opt);
    if (shape == "grid") return grid(i(0), i(1), opt);
    if (shape == "annulus") return annulus(i(0), i(1), i(2), opt);
    if (shape == "cylinder") return cylinder(i(0), i(1), opt);
    if (shape == "torus") return torus(i(0), i(1), opt);
    return miura(i(0), i(1), p[2], opt);
}

SurfacePtr to_surface(const Mesh &m, double tol) { return make_surface(m.vertices, m.faces, tol); }

} // namespace origami
