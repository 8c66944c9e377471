#include "origami/serial_chain.hpp"

#include <algorithm>

#include "origami/error.hpp"

namespace origami {

namespace {

Matrix6d transfer(const Eigen::Vector3d &from, const Eigen::Vector3d &to) { return rigid_transfer_matrix(from, to); }

} // namespace

SerialOperators serial_chain_operators(const ChainGeometry &g, double tol) {
    const int n = g.num_hinges();
    if (n < 1) throw Error(ErrorKind::InvalidParams, "serial chain needs at least one hinge");
    if (g.face_anchor.size() != static_cast<std::size_t>(n) + 1 || g.hinge_anchor.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::ShapeMismatch, "chain geometry sizes disagree");

    SerialOperators ops;
    ops.psi = MatrixXd::Zero(6 * n, 6 * n);
    ops.psi_inverse = MatrixXd::Zero(6 * n, 6 * n);
    ops.iota = MatrixXd::Zero(6 * n, n);

    // Row/column block i corresponds to f_{i+1} and e_{i+1}.
    for (int i = 0; i < n; ++i) {
        const double len = g.hinge_axis[i].norm();
        if (len <= tol) throw Error(ErrorKind::DegenerateHinge, "hinge e_" + std::to_string(i + 1) + " has no axis");
        ops.iota.block<6, 1>(6 * i, i) = hinge_embed(g.hinge_axis[i] / len).matrix;

        const Eigen::Vector3d &face = g.face_anchor[i + 1];
        for (int j = 0; j <= i; ++j) ops.psi.block<6, 6>(6 * i, 6 * j) = transfer(g.hinge_anchor[j], face);
        ops.psi_inverse.block<6, 6>(6 * i, 6 * i) = transfer(face, g.hinge_anchor[i]);
        if (i > 0) ops.psi_inverse.block<6, 6>(6 * i, 6 * (i - 1)) = -transfer(g.face_anchor[i], g.hinge_anchor[i]);
    }

    // The identity re-indexing between edge- and face-anchored blocks is
    // kept explicit on both sides.
    const MatrixXd reindex = MatrixXd::Identity(6 * n, 6 * n);
    ops.d = reindex * ops.psi * ops.iota;
    ops.d_pinv = ops.iota.transpose() * ops.psi_inverse * reindex;

    ops.inverse_residual = linalg::max_abs(ops.psi_inverse * ops.psi - MatrixXd::Identity(6 * n, 6 * n));
    ops.left_inverse_residual = linalg::max_abs(ops.d_pinv * ops.d - MatrixXd::Identity(n, n));
    return ops;
}

VectorXd propagate_recurrence(const ChainGeometry &g, const VectorXd &hinge_rates) {
    const int n = g.num_hinges();
    if (hinge_rates.size() != n) throw Error(ErrorKind::ShapeMismatch, "one rate per hinge expected");
    VectorXd nu = VectorXd::Zero(6 * n);
    Vector6d prev = Vector6d::Zero();
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d axis = g.hinge_axis[i].normalized();
        Vector6d hinge = Vector6d::Zero();
        hinge.head<3>() = axis * hinge_rates[i];
        const Vector6d next = transfer(g.face_anchor[i], g.face_anchor[i + 1]) * prev +
                              transfer(g.hinge_anchor[i], g.face_anchor[i + 1]) * hinge;
        nu.segment<6>(6 * i) = next;
        prev = next;
    }
    return nu;
}

SerialChain serial_chain_from_surface(const SurfacePtr &s) {
    const int nf = static_cast<int>(s->num_faces());
    std::vector<std::vector<std::pair<int, int>>> adjacent(nf); // (neighbor face, shared edge)
    for (int e : s->interior_edges()) {
        const auto faces = s->edge_faces(e);
        adjacent[faces[0]].emplace_back(faces[1], e);
        adjacent[faces[1]].emplace_back(faces[0], e);
    }
    if (s->interior_edges().size() + 1 != static_cast<std::size_t>(nf))
        throw Error(ErrorKind::InvalidInput, "dual graph is not a path");

    int start = -1;
    for (int f = 0; f < nf && start < 0; ++f) {
        if (adjacent[f].size() > 2) throw Error(ErrorKind::InvalidInput, "face " + std::to_string(f) + " branches");
        if (adjacent[f].size() <= 1) start = f;
    }
    if (start < 0) throw Error(ErrorKind::InvalidInput, "dual graph is a cycle");

    SerialChain chain;
    chain.surface = s;
    chain.faces.push_back(start);
    int prev = -1;
    for (int f = start; static_cast<int>(chain.faces.size()) < nf;) {
        const auto it = std::find_if(adjacent[f].begin(), adjacent[f].end(),
                                     [prev](const auto &a) { return a.first != prev; });
        if (it == adjacent[f].end()) throw Error(ErrorKind::InvalidInput, "dual graph is disconnected");
        if (adjacent[f].size() > 2) throw Error(ErrorKind::InvalidInput, "face " + std::to_string(f) + " branches");
        prev = f;
        f = it->first;
        chain.faces.push_back(f);
        chain.hinges.push_back(it->second);
    }

    auto &g = chain.geometry;
    for (int f : chain.faces) g.face_anchor.push_back(s->face_centroid(f));
    for (std::size_t i = 0; i < chain.hinges.size(); ++i) {
        const int e = chain.hinges[i];
        g.hinge_anchor.push_back(s->edge_centroid(e));
        g.hinge_axis.push_back(s->edge_face_sign(e, chain.faces[i + 1]) * s->edge_axis(e));
    }
    return chain;
}

MatrixXd pinned_connecting_operator(const SerialChain &chain, double tol) {
    const Model hinge = build_hinge_model(chain.surface);
    const Model spatial = build_spatial_model(chain.surface);
    const Model rigid = build_rigid_model(chain.surface);
    const ShortExactSequence seq = build_exact_sequence(hinge, rigid, spatial, tol);
    const MatrixXd full = MatrixXd(connecting_chain_operator(seq, 2, tol));

    const int n = static_cast<int>(chain.hinges.size());
    MatrixXd pinned(n, 6 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pinned.block<1, 6>(i, 6 * j) =
                full.block<1, 6>(hinge.complex.offset[1][chain.hinges[i]], spatial.complex.offset[2][chain.faces[j + 1]]);
    return pinned;
}

} // namespace origami
