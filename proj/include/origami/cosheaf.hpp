#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "origami/cell_complex.hpp"
#include "origami/linalg.hpp"

namespace origami {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using linalg::SparseMatrix;

struct CellRef {
    int dim = 0;
    int index = 0;
    bool operator==(const CellRef &) const = default;
};

std::string to_string(CellRef c);

// One incidence lower < higher between cells of adjacent or equal+2
// dimension. `slot` locates the lower cell within the higher cell's
// boundary: the endpoint (0 = u, 1 = v) for an edge, the position in the
// face cycle for a face.
struct Incidence {
    CellRef higher;
    CellRef lower;
    int slot = 0;
};

// Every incidence e>v, f>e and f>v of the surface, in a fixed order.
std::vector<Incidence> incidences(const OrigamiSurface &s);

// A cellular cosheaf: a stalk dimension per cell and an extension map per
// incidence, of shape stalk(lower) x stalk(higher). Extension maps default
// to zero of the right shape whenever stalk dimensions are set.
class Cosheaf {
public:
    Cosheaf(SurfacePtr surface, std::string name);

    const SurfacePtr &surface() const { return m_surface; }
    const std::string &name() const { return m_name; }

    int stalk_dim(CellRef c) const { return m_stalk[c.dim][c.index]; }
    // Must be called before the extension maps touching the cell are set.
    void set_stalk_dim(CellRef c, int dim);

    const MatrixXd &extension(const Incidence &inc) const;
    void set_extension(const Incidence &inc, MatrixXd map);

    // Largest relative residual of F(e>v) F(f>e) - F(f>v) over all v<e<f.
    double functoriality_residual(Incidence *worst = nullptr) const;

private:
    MatrixXd &slot_ref(const Incidence &inc);
    const MatrixXd &slot_ref(const Incidence &inc) const;
    void reset_maps_touching(CellRef c);

    SurfacePtr m_surface;
    std::string m_name;
    std::array<std::vector<int>, 3> m_stalk;
    std::vector<std::array<MatrixXd, 2>> m_edge_vertex;
    std::vector<std::vector<MatrixXd>> m_face_edge;
    std::vector<std::vector<MatrixXd>> m_face_vertex;
};

using CosheafPtr = std::shared_ptr<const Cosheaf>;

// C_2 -> C_1 -> C_0 with per-cell block offsets. Cells with zero stalks
// contribute no rows or columns.
struct ChainComplex {
    std::array<std::vector<Index>, 3> offset;
    std::array<std::vector<Index>, 3> stalk;
    std::array<std::vector<Eigen::Vector3d>, 3> position; // cell centroids
    std::array<Index, 3> dim{0, 0, 0};
    SparseMatrix d1; // dim[0] x dim[1]
    SparseMatrix d2; // dim[1] x dim[2]

    // boundary(1) = d1, boundary(2) = d2; other degrees are zero maps.
    SparseMatrix boundary(int degree) const;
    // Centroid of the owning cell for every coordinate of C_degree.
    std::vector<Eigen::Vector3d> coordinate_points(int degree) const;
    // Relative size of d1 * d2.
    double boundary_residual() const;
};

inline constexpr double kFunctorialityTol = 1e-12;

// Throws Error(FunctorialityViolation) naming the worst incidence when the
// cosheaf is not functorial to `functor_tol`.
ChainComplex assemble_chain_complex(const Cosheaf &f, double functor_tol = kFunctorialityTol);

// Orthonormal basis of a subspace of an ambient chain space.
struct SubspaceBasis {
    Index ambient_dim = 0;
    MatrixXd basis; // ambient_dim x dimension, orthonormal columns
    double tol = linalg::kDefaultTol;

    Index dimension() const { return basis.cols(); }
};

// Harmonic representatives: ker d_i intersected with (im d_{i+1})^perp,
// found as the null space of d_i stacked on d_{i+1}^T.
SubspaceBasis homology_basis(const ChainComplex &cc, int degree, double tol = linalg::kDefaultTol);

// A cosheaf map F -> G given by per-cell components phi_c: F_c -> G_c.
struct CosheafMap {
    CosheafPtr source;
    CosheafPtr target;
    std::array<std::vector<MatrixXd>, 3> component;

    CosheafMap() = default;
    CosheafMap(CosheafPtr source, CosheafPtr target);

    const MatrixXd &at(CellRef c) const { return component[c.dim][c.index]; }
    void set(CellRef c, MatrixXd m);

    // Relative residual of phi_c F(d>c) - G(d>c) phi_d, maximized over
    // all incidences.
    double naturality_residual(Incidence *worst = nullptr) const;
    double naturality_residual(const Incidence &inc) const;

    // Block-diagonal chain map C_i F -> C_i G.
    SparseMatrix chain_matrix(int degree, const ChainComplex &src, const ChainComplex &tgt) const;
    // Block-diagonal map C_i G -> C_i F built from per-cell pseudoinverses.
    SparseMatrix chain_pseudo_inverse(int degree, const ChainComplex &src, const ChainComplex &tgt,
                                  double tol = linalg::kDefaultTol) const;
};

enum class SequenceViolation { Injectivity, Surjectivity, Exactness };
const char *to_string(SequenceViolation v);

struct CellExactness {
    CellRef cell;
    Index sub_dim = 0;
    Index total_dim = 0;
    Index quotient_dim = 0;
    Index rank_iota = 0;
    Index rank_pi = 0;
    // max |pi_c iota_c| relative to the component sizes
    double composition_residual = 0.0;
    std::vector<SequenceViolation> violations;
};

struct ExactnessReport {
    std::vector<CellExactness> cells;
    double max_residual = 0.0;
    bool passed = true;
};

// Per-cell check of 0 -> F -> G -> Q -> 0. Throws ShapeMismatch when the
// maps do not compose or a component disagrees with the stalk dimensions.
ExactnessReport check_exact_sequence(const CosheafMap &iota, const CosheafMap &pi, double tol = linalg::kDefaultTol);

// Matrix of phi_* in the given homology bases.
MatrixXd induced_map(const CosheafMap &phi, int degree, const ChainComplex &src, const ChainComplex &tgt,
                     const SubspaceBasis &src_homology, const SubspaceBasis &tgt_homology);

// The chain complexes of a short exact sequence F -> G -> Q.
struct ShortExactSequence {
    CosheafMap iota;
    CosheafMap pi;
    ChainComplex sub;
    ChainComplex total;
    ChainComplex quotient;
};

// Chain-level connecting operator iota^+ d_degree pi^+ : C_degree Q -> C_{degree-1} F.
SparseMatrix connecting_chain_operator(const ShortExactSequence &seq, int degree, double tol = linalg::kDefaultTol);

// Pushes one lift y in C_degree G down to H_{degree-1} F coordinates.
// Throws LiftFailure when d y is not in the image of iota.
VectorXd connect_lift(const ShortExactSequence &seq, int degree, const VectorXd &lift,
                      const SubspaceBasis &sub_homology, double tol = linalg::kDefaultTol);

// Connecting homomorphism H_degree Q -> H_{degree-1} F using least-squares
// lifts through pi.
MatrixXd connecting_map(const ShortExactSequence &seq, int degree, const SubspaceBasis &quotient_homology,
                        const SubspaceBasis &sub_homology, double tol = linalg::kDefaultTol);

} // namespace origami
