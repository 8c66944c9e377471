#pragma once

#include <memory>
#include <vector>

#include "origami/cosheaf.hpp"
#include "origami/spatial_algebra.hpp"

namespace origami {

// A cosheaf together with its assembled chain complex.
struct Model {
    CosheafPtr cosheaf;
    ChainComplex complex;
};

// Hinge rates on interior edges, so(3) (axis vectors) on interior vertices.
Model build_hinge_model(const SurfacePtr &s);
// se(3) on faces, se(3)/span{l_e} on interior edges, se(3)/so(3) on
// interior vertices. Edge stalk coordinates are those of edge_projection.
Model build_spatial_model(const SurfacePtr &s);
// se(3) on faces, interior edges and interior vertices, with rigid body
// transfers as extension maps.
Model build_rigid_model(const SurfacePtr &s);

enum class Support {
    AllCells,
    // faces plus interior edges and vertices: the support of the rigid
    // body cosheaf
    InteriorCells,
};

std::shared_ptr<Cosheaf> constant_cosheaf(const SurfacePtr &s, int w, Support support = Support::AllCells);

// Lemma-style isomorphism from the constant se(3) cosheaf (same support as
// the rigid model) to the rigid model: component Psi_{0,c} at every cell.
CosheafMap constant_rigid_iso(const Model &rigid);

// The surface with one apex per face and every face braced as a complete
// graph. Vertex ids 0..|V|-1 are the surface vertices, |V| + f is the apex
// of face f. Edges are stored (u, v) with u < v; the first |E| edges are the
// surface edges in surface order.
struct StiffenedLinkage {
    SurfacePtr surface;
    std::vector<Eigen::Vector3d> positions;
    std::vector<std::array<int, 2>> edges;
    // |E'| x 3|V'|; row (u, v) reads <l, y_v> - <l, y_u> with l the unit
    // vector from p_u to p_v.
    SparseMatrix truss_matrix;

    int apex(int f) const { return static_cast<int>(surface->num_vertices()) + f; }
    std::size_t num_vertices() const { return positions.size(); }
};

StiffenedLinkage stiffen(const SurfacePtr &s);
SubspaceBasis truss_kernel(const StiffenedLinkage &x, double tol = linalg::kDefaultTol);

} // namespace origami
