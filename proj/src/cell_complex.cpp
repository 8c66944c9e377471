#include "origami/cell_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "origami/error.hpp"

namespace origami {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::string cell_name(const char *kind, std::size_t index) {
    return std::string(kind) + " " + std::to_string(index);
}

// Connectivity of the fan around a vertex: nodes are incident edges, every
// incident face links the two of its edges that meet at the vertex.
// Returns true when the fan is a closed cycle; throws when it splits into
// several pieces.
bool classify_vertex_link(int v, const std::vector<int> &edges, const std::vector<int> &faces,
                          const std::vector<std::vector<int>> &face_edges,
                          const std::vector<std::vector<int>> &face_cycles,
                          const std::vector<std::vector<int>> &edge_faces) {
    std::map<int, int> node_of_edge;
    for (std::size_t i = 0; i < edges.size(); ++i) node_of_edge[edges[i]] = static_cast<int>(i);

    std::vector<int> parent(edges.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int f : faces) {
        const auto &cycle = face_cycles[f];
        const auto m = cycle.size();
        const auto pos = static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin());
        const int e_out = face_edges[f][pos];
        const int e_in = face_edges[f][(pos + m - 1) % m];
        parent[find(node_of_edge.at(e_out))] = find(node_of_edge.at(e_in));
    }

    int components = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++components;
    if (components != 1)
        throw Error(ErrorKind::NonManifold, "faces around vertex " + std::to_string(v) +
                                                " do not form a single fan");

    return std::all_of(edges.begin(), edges.end(), [&](int e) { return edge_faces[e].size() == 2; });
}

} // namespace

std::size_t OrigamiSurface::num_cells(int dim) const {
    switch (dim) {
    case 0: return num_vertices();
    case 1: return num_edges();
    case 2: return num_faces();
    default: return 0;
    }
}

Eigen::Vector3d OrigamiSurface::edge_centroid(int e) const {
    return 0.5 * (m_positions[m_edges[e][0]] + m_positions[m_edges[e][1]]);
}

Eigen::Vector3d OrigamiSurface::centroid(int dim, int index) const {
    switch (dim) {
    case 0: return vertex_position(index);
    case 1: return edge_centroid(index);
    default: return face_centroid(index);
    }
}

Eigen::Vector3d OrigamiSurface::edge_axis(int e) const {
    return (m_positions[m_edges[e][1]] - m_positions[m_edges[e][0]]).normalized();
}

double OrigamiSurface::edge_length(int e) const {
    return (m_positions[m_edges[e][1]] - m_positions[m_edges[e][0]]).norm();
}

int OrigamiSurface::edge_face_sign(int e, int f) const {
    const auto &edges = m_face_edges[f];
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == e) return m_face_edge_signs[f][i];
    throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " does not bound face " + std::to_string(f));
}

Eigen::MatrixXi OrigamiSurface::vertex_edge_incidence() const {
    Eigen::MatrixXi d = Eigen::MatrixXi::Zero(num_vertices(), num_edges());
    for (std::size_t e = 0; e < num_edges(); ++e) {
        d(m_edges[e][0], e) = -1;
        d(m_edges[e][1], e) = 1;
    }
    return d;
}

Eigen::MatrixXi OrigamiSurface::edge_face_incidence() const {
    Eigen::MatrixXi d = Eigen::MatrixXi::Zero(num_edges(), num_faces());
    for (std::size_t f = 0; f < num_faces(); ++f)
        for (std::size_t i = 0; i < m_face_edges[f].size(); ++i) d(m_face_edges[f][i], f) = m_face_edge_signs[f][i];
    return d;
}

OrigamiSurface build_surface(std::vector<Eigen::Vector3d> vertices, std::vector<std::vector<int>> faces,
                             const std::optional<std::vector<std::array<int, 2>>> &edge_order, double tol) {
    const int nv = static_cast<int>(vertices.size());
    if (faces.empty()) throw Error(ErrorKind::InvalidInput, "surface needs at least one face");
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (!vertices[v].allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite position for vertex " + std::to_string(v));

    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto &cycle = faces[f];
        if (cycle.size() < 3) throw Error(ErrorKind::InvalidInput, cell_name("face", f) + " has fewer than 3 vertices");
        for (int v : cycle)
            if (v < 0 || v >= nv)
                throw Error(ErrorKind::IndexOutOfRange, cell_name("face", f) + " references vertex " + std::to_string(v));
        std::vector<int> sorted = cycle;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::InvalidInput, cell_name("face", f) + " repeats a vertex");
    }

    OrigamiSurface s;
    s.m_tol = tol;

    std::map<EdgeKey, int> edge_index;
    if (edge_order) {
        for (const auto &[a, b] : *edge_order) {
            if (a < 0 || a >= nv || b < 0 || b >= nv)
                throw Error(ErrorKind::IndexOutOfRange, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
            if (a == b) throw Error(ErrorKind::InvalidInput, "edge with identical endpoints " + std::to_string(a));
            const EdgeKey key = edge_key(a, b);
            if (!edge_index.emplace(key, static_cast<int>(s.m_edges.size())).second)
                throw Error(ErrorKind::InvalidInput, "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
            s.m_edges.push_back({key.first, key.second});
        }
    }

    // Raw traversal direction of each face segment, +1 when it runs u -> v.
    std::vector<std::vector<int>> raw_dir(faces.size());
    std::vector<std::vector<int>> face_edges(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto &cycle = faces[f];
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
            const EdgeKey key = edge_key(a, b);
            auto it = edge_index.find(key);
            if (it == edge_index.end()) {
                if (edge_order)
                    throw Error(ErrorKind::InvalidInput, "face boundary segment (" + std::to_string(a) + "," +
                                                             std::to_string(b) + ") missing from the edge list");
                it = edge_index.emplace(key, static_cast<int>(s.m_edges.size())).first;
                s.m_edges.push_back({key.first, key.second});
            }
            face_edges[f].push_back(it->second);
            raw_dir[f].push_back(a < b ? 1 : -1);
        }
    }

    const std::size_t ne = s.m_edges.size();
    s.m_edge_faces.assign(ne, {});
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int e : face_edges[f]) s.m_edge_faces[e].push_back(static_cast<int>(f));
    for (std::size_t e = 0; e < ne; ++e) {
        const auto n = s.m_edge_faces[e].size();
        if (n == 0) throw Error(ErrorKind::NonManifold, cell_name("edge", e) + " bounds no face");
        if (n > 2) throw Error(ErrorKind::NonManifold, cell_name("edge", e) + " bounds " + std::to_string(n) + " faces");
    }

    // Propagate a consistent orientation across interior edges.
    std::vector<int> orient(faces.size(), 0);
    auto direction_of = [&](std::size_t f, int e) {
        for (std::size_t i = 0; i < face_edges[f].size(); ++i)
            if (face_edges[f][i] == e) return raw_dir[f][i];
        return 0;
    };
    for (std::size_t seed = 0; seed < faces.size(); ++seed) {
        if (orient[seed] != 0) continue;
        orient[seed] = 1;
        std::queue<int> queue;
        queue.push(static_cast<int>(seed));
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop();
            for (int e : face_edges[f]) {
                if (s.m_edge_faces[e].size() != 2) continue;
                const int g = s.m_edge_faces[e][0] == f ? s.m_edge_faces[e][1] : s.m_edge_faces[e][0];
                const int want = -orient[f] * direction_of(f, e) * direction_of(g, e);
                if (orient[g] == 0) {
                    orient[g] = want;
                    queue.push(g);
                } else if (orient[g] != want) {
                    throw Error(ErrorKind::NonOrientable,
                                "faces " + std::to_string(f) + " and " + std::to_string(g) + " cannot be oriented consistently");
                }
            }
        }
    }

    s.m_faces.resize(faces.size());
    s.m_face_edges.resize(faces.size());
    s.m_face_edge_signs.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        auto cycle = faces[f];
        if (orient[f] < 0) std::reverse(cycle.begin() + 1, cycle.end());
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
            s.m_face_edges[f].push_back(edge_index.at(edge_key(a, b)));
            s.m_face_edge_signs[f].push_back(a < b ? 1 : -1);
        }
        s.m_faces[f] = std::move(cycle);
    }

    s.m_vertex_edges.assign(nv, {});
    s.m_vertex_faces.assign(nv, {});
    for (std::size_t e = 0; e < ne; ++e)
        for (int v : s.m_edges[e]) s.m_vertex_edges[v].push_back(static_cast<int>(e));
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int v : s.m_faces[f]) s.m_vertex_faces[v].push_back(static_cast<int>(f));

    s.m_interior_vertex.assign(nv, false);
    for (int v = 0; v < nv; ++v) {
        if (s.m_vertex_faces[v].empty()) throw Error(ErrorKind::Degenerate, cell_name("vertex", v) + " lies on no face");
        s.m_interior_vertex[v] = classify_vertex_link(v, s.m_vertex_edges[v], s.m_vertex_faces[v], s.m_face_edges,
                                                      s.m_faces, s.m_edge_faces);
        if (s.m_interior_vertex[v]) s.m_interior_vertices.push_back(v);
    }
    for (std::size_t e = 0; e < ne; ++e)
        if (s.m_edge_faces[e].size() == 2) s.m_interior_edges.push_back(static_cast<int>(e));

    s.m_positions = std::move(vertices);
    Eigen::Vector3d lo = s.m_positions[0], hi = s.m_positions[0];
    for (const auto &p : s.m_positions) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    s.m_length_scale = (hi - lo).norm();

    s.m_face_centroids.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        Eigen::Vector3d c = Eigen::Vector3d::Zero();
        for (int v : s.m_faces[f]) c += s.m_positions[v];
        s.m_face_centroids[f] = c / static_cast<double>(s.m_faces[f].size());
    }

    // Non-degeneracy, affine reading: the points of an i-cell span an
    // i-dimensional affine subspace.
    for (std::size_t e = 0; e < ne; ++e)
        if (s.edge_length(static_cast<int>(e)) <= tol * s.m_length_scale)
            throw Error(ErrorKind::Degenerate, cell_name("edge", e) + " has zero length");
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto &cycle = s.m_faces[f];
        Eigen::MatrixXd diffs(3, cycle.size() - 1);
        for (std::size_t i = 1; i < cycle.size(); ++i) diffs.col(i - 1) = s.m_positions[cycle[i]] - s.m_positions[cycle[0]];
        if (linalg::rank(diffs, tol) < 2) throw Error(ErrorKind::Degenerate, cell_name("face", f) + " spans less than a plane");
    }

    return s;
}

BettiNumbers base_homology(const OrigamiSurface &s, double tol) {
    const Eigen::MatrixXd d1 = s.vertex_edge_incidence().cast<double>();
    const Eigen::MatrixXd d2 = s.edge_face_incidence().cast<double>();
    const auto r1 = static_cast<int>(linalg::rank(d1, tol));
    const auto r2 = static_cast<int>(linalg::rank(d2, tol));
    const int nv = static_cast<int>(s.num_vertices());
    const int ne = static_cast<int>(s.num_edges());
    const int nf = static_cast<int>(s.num_faces());
    return {nv - r1, (ne - r1) - r2, nf - r2};
}

} // namespace origami
