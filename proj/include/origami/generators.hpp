#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "origami/cell_complex.hpp"

namespace origami {

// Raw vertex positions and face cycles, before validation.
struct Mesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::vector<int>> faces;
};

struct GeneratorOptions {
    std::uint64_t seed = 1;
    // Seeded perturbation of every vertex by up to 1e-3 of the nominal edge
    // length, per coordinate. Ignored by miura, whose faces stay planar.
    bool jitter = true;
};

// Strip of n + 1 quads joined by n parallel hinges.
Mesh chain(int n, const GeneratorOptions &opt = {});
// One interior vertex of the given degree, triangles around it, ring
// vertices alternately raised and lowered by fold_angle.
Mesh single_vertex(int degree, double fold_angle, const GeneratorOptions &opt = {});
Mesh grid(int rows, int cols, const GeneratorOptions &opt = {});
// Grid with a centered hole x hole block of faces removed.
Mesh annulus(int rows, int cols, int hole, const GeneratorOptions &opt = {});
// Open tube: cols quads around, rows along the axis.
Mesh cylinder(int rows, int cols, const GeneratorOptions &opt = {});
Mesh torus(int rows, int cols, const GeneratorOptions &opt = {});
// Translational surface with zig-zag rows and columns; every face is a
// planar parallelogram.
Mesh miura(int rows, int cols, double angle, const GeneratorOptions &opt = {});
// Chain with randomly placed, non-parallel hinges.
Mesh random_chain(int n, std::uint64_t seed);

// Dispatch by name with positional parameters; missing parameters take the
// defaults listed by shape_usage(). Throws InvalidParams.
Mesh generate(const std::string &shape, const std::vector<double> &params, const GeneratorOptions &opt = {});
std::vector<std::string> shape_names();
std::string shape_usage(const std::string &shape);

SurfacePtr to_surface(const Mesh &m, double tol = linalg::kDefaultTol);

} // namespace origami
