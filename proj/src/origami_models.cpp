#include "origami/origami_models.hpp"

#include <algorithm>
#include <set>

#include "origami/error.hpp"

namespace origami {

namespace {

// [0 | I]: keeps the linear part of a spatial vector.
Eigen::Matrix<double, 3, 6> linear_part() {
    Eigen::Matrix<double, 3, 6> m = Eigen::Matrix<double, 3, 6>::Zero();
    m.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
    return m;
}

template <typename Fn>
void for_each_incidence(const Cosheaf &f, Fn &&fn) {
    for (const Incidence &inc : incidences(*f.surface()))
        if (f.stalk_dim(inc.lower) > 0 && f.stalk_dim(inc.higher) > 0) fn(inc);
}

void set_interior_stalks(Cosheaf &f, int face_dim, int edge_dim, int vertex_dim) {
    const auto &s = *f.surface();
    for (std::size_t i = 0; i < s.num_faces(); ++i) f.set_stalk_dim({2, static_cast<int>(i)}, face_dim);
    for (int e : s.interior_edges()) f.set_stalk_dim({1, e}, edge_dim);
    for (int v : s.interior_vertices()) f.set_stalk_dim({0, v}, vertex_dim);
}

} // namespace

Model build_hinge_model(const SurfacePtr &s) {
    auto h = std::make_shared<Cosheaf>(s, "hinge");
    set_interior_stalks(*h, 0, 1, 3);
    for_each_incidence(*h, [&](const Incidence &inc) {
        h->set_extension(inc, MatrixXd(s->edge_axis(inc.higher.index)));
    });
    Model m{h, assemble_chain_complex(*h)};
    return m;
}

Model build_spatial_model(const SurfacePtr &s) {
    auto sp = std::make_shared<Cosheaf>(s, "spatial");
    set_interior_stalks(*sp, 6, 5, 3);
    for_each_incidence(*sp, [&](const Incidence &inc) {
        const Eigen::Vector3d p_hi = s->centroid(inc.higher.dim, inc.higher.index);
        const Eigen::Vector3d p_lo = s->centroid(inc.lower.dim, inc.lower.index);
        if (inc.higher.dim == 2 && inc.lower.dim == 1) {
            const auto proj = edge_projection(s->edge_axis(inc.lower.index));
            sp->set_extension(inc, proj.matrix * rigid_transfer_matrix(p_hi, p_lo));
        } else if (inc.higher.dim == 1) {
            const auto proj = edge_projection(s->edge_axis(inc.higher.index));
            sp->set_extension(inc, linear_part() * rigid_transfer_matrix(p_hi, p_lo) * proj.matrix.transpose());
        } else {
            sp->set_extension(inc, eta_matrix(p_hi, p_lo));
        }
    });
    return {sp, assemble_chain_complex(*sp)};
}

Model build_rigid_model(const SurfacePtr &s) {
    auto b = std::make_shared<Cosheaf>(s, "rigid");
    set_interior_stalks(*b, 6, 6, 6);
    for_each_incidence(*b, [&](const Incidence &inc) {
        b->set_extension(inc, rigid_transfer_matrix(s->centroid(inc.higher.dim, inc.higher.index),
                                                    s->centroid(inc.lower.dim, inc.lower.index)));
    });
    return {b, assemble_chain_complex(*b)};
}

std::shared_ptr<Cosheaf> constant_cosheaf(const SurfacePtr &s, int w, Support support) {
    auto c = std::make_shared<Cosheaf>(s, "constant");
    if (support == Support::InteriorCells) {
        set_interior_stalks(*c, w, w, w);
    } else {
        for (int d = 0; d < 3; ++d)
            for (std::size_t i = 0; i < s->num_cells(d); ++i) c->set_stalk_dim({d, static_cast<int>(i)}, w);
    }
    for_each_incidence(*c, [&](const Incidence &inc) { c->set_extension(inc, MatrixXd::Identity(w, w)); });
    return c;
}

CosheafMap constant_rigid_iso(const Model &rigid) {
    const auto &s = rigid.cosheaf->surface();
    CosheafMap map(constant_cosheaf(s, 6, Support::InteriorCells), rigid.cosheaf);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < s->num_cells(d); ++i) {
            const CellRef c{d, static_cast<int>(i)};
            if (rigid.cosheaf->stalk_dim(c) > 0)
                map.set(c, rigid_transfer_matrix(Eigen::Vector3d::Zero(), s->centroid(d, c.index)));
        }
    return map;
}

StiffenedLinkage stiffen(const SurfacePtr &s) {
    StiffenedLinkage x;
    x.surface = s;
    x.positions = s->vertex_positions();
    x.edges.assign(s->num_edges(), {});
    std::set<std::array<int, 2>> seen;
    for (std::size_t e = 0; e < s->num_edges(); ++e) {
        x.edges[e] = s->edge_vertices(static_cast<int>(e));
        seen.insert(x.edges[e]);
    }
    auto add_edge = [&](int a, int b) {
        const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
        if (seen.insert(key).second) x.edges.push_back(key);
    };

    for (std::size_t fi = 0; fi < s->num_faces(); ++fi) {
        const int f = static_cast<int>(fi);
        const auto verts = s->face_vertices(f);
        const Eigen::Vector3d &c = s->face_centroid(f);

        Eigen::MatrixXd centered(3, verts.size());
        Eigen::Vector3d newell = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < verts.size(); ++i) {
            centered.col(i) = s->vertex_position(verts[i]) - c;
            newell += s->vertex_position(verts[i]).cross(s->vertex_position(verts[(i + 1) % verts.size()]));
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullU);
        const auto &sigma = svd.singularValues();
        if (!(sigma(1) > s->tolerance() * sigma(0)))
            throw Error(ErrorKind::DegenerateFace, "face " + std::to_string(f) + " has no best-fit plane");
        Eigen::Vector3d normal = svd.matrixU().col(2);
        if (normal.dot(newell) < 0.0) normal = -normal;

        double mean_edge = 0.0;
        for (int e : s->face_edges(f)) mean_edge += s->edge_length(e);
        mean_edge /= static_cast<double>(verts.size());

        x.positions.push_back(c + mean_edge * normal);

        std::vector<int> sorted(verts.begin(), verts.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            for (std::size_t j = i + 1; j < sorted.size(); ++j) add_edge(sorted[i], sorted[j]);
        for (int v : verts) add_edge(v, x.apex(f));
    }

    std::vector<Eigen::Triplet<double>> entries;
    for (std::size_t r = 0; r < x.edges.size(); ++r) {
        const auto [u, v] = x.edges[r];
        const Eigen::Vector3d l = (x.positions[v] - x.positions[u]).normalized();
        for (int k = 0; k < 3; ++k) {
            entries.emplace_back(r, 3 * v + k, l[k]);
            entries.emplace_back(r, 3 * u + k, -l[k]);
        }
    }
    x.truss_matrix.resize(x.edges.size(), 3 * x.positions.size());
    x.truss_matrix.setFromTriplets(entries.begin(), entries.end());
    return x;
}

SubspaceBasis truss_kernel(const StiffenedLinkage &x, double tol) {
    SubspaceBasis out;
    out.ambient_dim = x.truss_matrix.cols();
    out.tol = tol;
    std::vector<Eigen::Vector3d> points;
    for (const auto &p : x.positions) points.insert(points.end(), 3, p);
    out.basis = linalg::sparse_kernel_basis(x.truss_matrix, points, tol);
    return out;
}

} // namespace origami
