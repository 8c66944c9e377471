#pragma once

#include <vector>

#include "origami/model_maps.hpp"

namespace origami {

// Panels f_0..f_n and hinges e_1..e_n, hinge e_i joining f_{i-1} and f_i.
// Vectors indexed from zero: hinge_anchor[i-1] belongs to e_i.
struct ChainGeometry {
    std::vector<Eigen::Vector3d> face_anchor;  // n + 1
    std::vector<Eigen::Vector3d> hinge_anchor; // n
    std::vector<Eigen::Vector3d> hinge_axis;   // n, oriented so a positive rate turns f_i relative to f_{i-1}

    int num_hinges() const { return static_cast<int>(hinge_axis.size()); }
};

struct SerialOperators {
    MatrixXd psi;         // 6n x 6n lower block triangular, block (i, j) = Psi_{e_j, f_i}
    MatrixXd psi_inverse; // block bidiagonal
    MatrixXd iota;        // 6n x n block diagonal hinge embeddings
    MatrixXd d;           // Psi iota
    MatrixXd d_pinv;      // iota^T Psi^-1
    double inverse_residual = 0.0;      // max |Psi^-1 Psi - I|
    double left_inverse_residual = 0.0; // max |D^+ D - I|
};

// Throws DegenerateHinge for a hinge axis of length <= tol, InvalidParams
// for an empty chain. Non-unit axes are normalized.
SerialOperators serial_chain_operators(const ChainGeometry &g, double tol = linalg::kDefaultTol);

// Body velocities nu_1..nu_n, stacked, by the base-to-tip recurrence.
VectorXd propagate_recurrence(const ChainGeometry &g, const VectorXd &hinge_rates);

// A surface whose dual graph is a path, read as a serial chain starting
// from the lowest-index end face.
struct SerialChain {
    SurfacePtr surface;
    std::vector<int> faces;  // f_0..f_n
    std::vector<int> hinges; // e_1..e_n
    ChainGeometry geometry;
};

// Throws InvalidInput when the dual graph is not a path.
SerialChain serial_chain_from_surface(const SurfacePtr &s);

// Chain-level connecting operator C_2 S -> C_1 H of the surface with the
// base face's columns removed, rows and columns in chain order. This is the
// homological counterpart of D^+.
MatrixXd pinned_connecting_operator(const SerialChain &chain, double tol = linalg::kDefaultTol);

} // namespace origami
