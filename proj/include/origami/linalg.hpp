#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <span>

// Dense rank-revealing helpers. Every rank decision in the library goes
// through these, using a relative singular-value cutoff: a singular value
// sigma counts as zero when sigma <= tol * sigma_max.
namespace origami::linalg {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr double kDefaultTol = 1e-9;

Eigen::VectorXd singular_values(const MatrixXd &m);
Index rank(const MatrixXd &m, double tol = kDefaultTol);

// Orthonormal basis (columns) of the null space of m.
MatrixXd kernel_basis(const MatrixXd &m, double tol = kDefaultTol);
// Orthonormal basis (columns) of the column space of m.
MatrixXd image_basis(const MatrixXd &m, double tol = kDefaultTol);
// Orthonormal basis of the orthogonal complement of span(sub) inside
// span(ambient). `ambient` must have orthonormal columns and span(sub) must
// lie (numerically) inside span(ambient).
MatrixXd complement_within(const MatrixXd &ambient, const MatrixXd &sub, double tol = kDefaultTol);

MatrixXd pseudo_inverse(const MatrixXd &m, double tol = kDefaultTol);

// Variants with an absolute cutoff: sigma counts as zero when
// sigma <= threshold. Used for maps that may vanish identically, where a
// relative cutoff would promote rounding noise to rank.
Index rank_abs(const MatrixXd &m, double threshold);
MatrixXd kernel_basis_abs(const MatrixXd &m, double threshold);
MatrixXd pseudo_inverse_abs(const MatrixXd &m, double threshold);

// Largest singular value (spectral norm); 0 for empty matrices.
double spectral_norm(const MatrixXd &m);

// Largest absolute entry; 0 for empty matrices.
double max_abs(const MatrixXd &m);
double max_abs(const SparseMatrix &m);

// Spectral norm by power iteration on m^T m. Accurate to a few digits,
// which is all a rank cutoff needs.
double spectral_norm_estimate(const SparseMatrix &m);

// Orthonormal null-space basis of a sparse matrix. Columns carry a point in
// space; they are bisected recursively into spatially compact groups, each
// group's kernel is found from the rows local to it, and parents only solve
// the coupling rows on the children's kernels. A vector counts as null when
// it is annihilated up to tol * |m|. Small inputs fall back to kernel_basis.
MatrixXd sparse_kernel_basis(const SparseMatrix &m, std::span<const Eigen::Vector3d> column_points,
                             double tol = kDefaultTol);

} // namespace origami::linalg
