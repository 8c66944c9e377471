#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "origami/linalg.hpp"

namespace origami {

// An oriented cellular 2-complex realized in R^3.
//
// Edges are always stored as (u, v) with u < v and are oriented u -> v, so
// [u:e] = -1 and [v:e] = +1. Face cycles are stored in the globally
// consistent orientation chosen at construction; [e:f] is +1 when the face
// cycle traverses e from u to v.
//
// Centroids: vertices use their input position, edges the midpoint of their
// endpoints, faces the mean of their vertex positions.
class OrigamiSurface {
public:
    std::size_t num_vertices() const { return m_positions.size(); }
    std::size_t num_edges() const { return m_edges.size(); }
    std::size_t num_faces() const { return m_faces.size(); }
    std::size_t num_cells(int dim) const;

    const Eigen::Vector3d &vertex_position(int v) const { return m_positions[v]; }
    const std::vector<Eigen::Vector3d> &vertex_positions() const { return m_positions; }
    Eigen::Vector3d edge_centroid(int e) const;
    const Eigen::Vector3d &face_centroid(int f) const { return m_face_centroids[f]; }
    Eigen::Vector3d centroid(int dim, int index) const;

    // Unit hinge axis l_e pointing from the lower to the higher vertex id.
    Eigen::Vector3d edge_axis(int e) const;
    double edge_length(int e) const;

    const std::array<int, 2> &edge_vertices(int e) const { return m_edges[e]; }
    std::span<const int> edge_faces(int e) const { return m_edge_faces[e]; }

    // Vertex cycle of f in its stored orientation.
    std::span<const int> face_vertices(int f) const { return m_faces[f]; }
    // face_edges(f)[i] joins face_vertices(f)[i] and face_vertices(f)[i+1].
    std::span<const int> face_edges(int f) const { return m_face_edges[f]; }
    std::span<const int> face_edge_signs(int f) const { return m_face_edge_signs[f]; }

    std::span<const int> vertex_edges(int v) const { return m_vertex_edges[v]; }
    std::span<const int> vertex_faces(int v) const { return m_vertex_faces[v]; }

    // [v:e] in {-1, +1}; v must be an endpoint of e.
    int vertex_edge_sign(int v, int e) const { return m_edges[e][1] == v ? 1 : -1; }
    // [e:f] in {-1, +1}; e must bound f.
    int edge_face_sign(int e, int f) const;

    bool is_interior_edge(int e) const { return m_edge_faces[e].size() == 2; }
    bool is_interior_vertex(int v) const { return m_interior_vertex[v]; }
    const std::vector<int> &interior_edges() const { return m_interior_edges; }
    const std::vector<int> &interior_vertices() const { return m_interior_vertices; }

    // Bounding-box diagonal of the vertex positions.
    double length_scale() const { return m_length_scale; }
    double tolerance() const { return m_tol; }

    // Signed incidence matrices of the base complex, in integers.
    Eigen::MatrixXi vertex_edge_incidence() const; // |V| x |E|
    Eigen::MatrixXi edge_face_incidence() const;   // |E| x |F|

private:
    friend OrigamiSurface build_surface(std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>,
                                        const std::optional<std::vector<std::array<int, 2>>> &, double);

    std::vector<Eigen::Vector3d> m_positions;
    std::vector<std::array<int, 2>> m_edges;
    std::vector<std::vector<int>> m_edge_faces;
    std::vector<std::vector<int>> m_faces;
    std::vector<std::vector<int>> m_face_edges;
    std::vector<std::vector<int>> m_face_edge_signs;
    std::vector<Eigen::Vector3d> m_face_centroids;
    std::vector<std::vector<int>> m_vertex_edges;
    std::vector<std::vector<int>> m_vertex_faces;
    std::vector<bool> m_interior_vertex;
    std::vector<int> m_interior_edges;
    std::vector<int> m_interior_vertices;
    double m_length_scale = 0.0;
    double m_tol = linalg::kDefaultTol;
};

using SurfacePtr = std::shared_ptr<const OrigamiSurface>;

// Builds and validates a surface from vertex positions and face cycles.
//
// Edges are derived from the face boundaries. When `edge_order` is given it
// fixes the edge numbering (its pairs may be in either orientation) and must
// list exactly the face-boundary segments.
//
// Faces are re-oriented as needed so every interior edge receives opposite
// signs from its two faces; the first face of each connected component keeps
// its input orientation.
//
// Throws Error with kind NonManifold (an edge on 0 or >= 3 faces, or a
// vertex whose face fan is disconnected), NonOrientable, Degenerate (a cell
// whose affine span is too small, or a vertex on no face) or InvalidInput.
OrigamiSurface build_surface(std::vector<Eigen::Vector3d> vertices, std::vector<std::vector<int>> faces,
                             const std::optional<std::vector<std::array<int, 2>>> &edge_order = std::nullopt,
                             double tol = linalg::kDefaultTol);

inline SurfacePtr make_surface(std::vector<Eigen::Vector3d> vertices, std::vector<std::vector<int>> faces,
                               double tol = linalg::kDefaultTol) {
    return std::make_shared<const OrigamiSurface>(build_surface(std::move(vertices), std::move(faces), std::nullopt, tol));
}

struct BettiNumbers {
    int b0 = 0;
    int b1 = 0;
    int b2 = 0;
    bool operator==(const BettiNumbers &) const = default;
};

// Real cellular homology of the underlying complex (absolute, so an open
// sheet has b2 = 0 and a closed surface b2 = 1).
BettiNumbers base_homology(const OrigamiSurface &s, double tol = linalg::kDefaultTol);

} // namespace origami
