#pragma once

#include <Eigen/Dense>

#include "origami/linalg.hpp"

// Spatial (screw) vector algebra with identity frame rotations. Spatial
// vectors are stacked as [omega; beta]: angular velocity first, linear
// velocity second.
namespace origami {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

struct SpatialVector {
    Eigen::Vector3d omega = Eigen::Vector3d::Zero();
    Eigen::Vector3d beta = Eigen::Vector3d::Zero();
    Eigen::Vector3d anchor = Eigen::Vector3d::Zero();

    Vector6d stacked() const {
        Vector6d v;
        v << omega, beta;
        return v;
    }
    static SpatialVector from_stacked(const Vector6d &v, const Eigen::Vector3d &anchor) {
        return {v.head<3>(), v.tail<3>(), anchor};
    }
};

// cross_op(w) * a == w.cross(a)
Eigen::Matrix3d cross_op(const Eigen::Vector3d &omega);

// Transfers a spatial velocity measured at `from` to the same rigid motion
// measured at `to`: [w, b] -> [w, w x (to - from) + b].
struct RigidBodyOp {
    Eigen::Vector3d from_point;
    Eigen::Vector3d to_point;
    Matrix6d matrix;

    SpatialVector apply(const SpatialVector &nu) const;
};

RigidBodyOp rigid_transfer(const Eigen::Vector3d &from, const Eigen::Vector3d &to);
Matrix6d rigid_transfer_matrix(const Eigen::Vector3d &from, const Eigen::Vector3d &to);

// Embeds a hinge rate as a pure rotation about the unit axis.
struct HingeOp {
    Eigen::Vector3d axis;
    Vector6d matrix;
};

// Projection onto the orthogonal complement of [axis; 0]. Rows 0-1 are the
// angular components orthogonal to the axis; rows 2-4 pass beta through.
struct EdgeProjection {
    Eigen::Vector3d axis;
    Eigen::Matrix<double, 5, 6> matrix;
};

HingeOp hinge_embed(const Eigen::Vector3d &axis, double tol = linalg::kDefaultTol);
EdgeProjection edge_projection(const Eigen::Vector3d &axis, double tol = linalg::kDefaultTol);

// Two unit vectors completing `axis` to a right-handed orthonormal frame.
// The first one comes from the standard basis vector least aligned with the
// axis (lowest index on ties), so the choice is deterministic.
Eigen::Matrix<double, 3, 2> axis_complement(const Eigen::Vector3d &axis);

// Linear velocity at p_v of the rigid motion nu measured at p_f.
Eigen::Vector3d eta_face_vertex(const SpatialVector &nu, const Eigen::Vector3d &p_v);
// 3x6 matrix of the same map for a face anchored at p_f.
Eigen::Matrix<double, 3, 6> eta_matrix(const Eigen::Vector3d &p_f, const Eigen::Vector3d &p_v);

} // namespace origami
