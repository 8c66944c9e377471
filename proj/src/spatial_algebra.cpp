#include "origami/spatial_algebra.hpp"

#include <cmath>

#include "origami/error.hpp"

namespace origami {

namespace {

Eigen::Vector3d checked_unit_axis(const Eigen::Vector3d &axis, double tol) {
    const double n = axis.norm();
    if (!(n > tol)) throw Error(ErrorKind::ZeroAxis, "hinge axis has zero length");
    if (std::abs(n - 1.0) > tol) throw Error(ErrorKind::NonUnitAxis, "hinge axis norm " + std::to_string(n));
    return axis;
}

} // namespace

Eigen::Matrix3d cross_op(const Eigen::Vector3d &w) {
    Eigen::Matrix3d m;
    m << 0.0, -w(2), w(1),
         w(2), 0.0, -w(0),
        -w(1), w(0), 0.0;
    return m;
}

Matrix6d rigid_transfer_matrix(const Eigen::Vector3d &from, const Eigen::Vector3d &to) {
    Matrix6d m = Matrix6d::Identity();
    m.block<3, 3>(3, 0) = cross_op(from - to);
    return m;
}

RigidBodyOp rigid_transfer(const Eigen::Vector3d &from, const Eigen::Vector3d &to) {
    return {from, to, rigid_transfer_matrix(from, to)};
}

SpatialVector RigidBodyOp::apply(const SpatialVector &nu) const {
    return SpatialVector::from_stacked(matrix * nu.stacked(), to_point);
}

HingeOp hinge_embed(const Eigen::Vector3d &axis, double tol) {
    const Eigen::Vector3d l = checked_unit_axis(axis, tol);
    Vector6d m = Vector6d::Zero();
    m.head<3>() = l;
    return {l, m};
}

Eigen::Matrix<double, 3, 2> axis_complement(const Eigen::Vector3d &axis) {
    Eigen::Index least = 0;
    axis.cwiseAbs().minCoeff(&least);
    const Eigen::Vector3d seed = Eigen::Vector3d::Unit(least);
    const Eigen::Vector3d a = (seed - seed.dot(axis) * axis).normalized();
    Eigen::Matrix<double, 3, 2> basis;
    basis.col(0) = a;
    basis.col(1) = axis.cross(a);
    return basis;
}

EdgeProjection edge_projection(const Eigen::Vector3d &axis, double tol) {
    const Eigen::Vector3d l = checked_unit_axis(axis, tol);
    Eigen::Matrix<double, 5, 6> m = Eigen::Matrix<double, 5, 6>::Zero();
    m.block<2, 3>(0, 0) = axis_complement(l).transpose();
    m.block<3, 3>(2, 3) = Eigen::Matrix3d::Identity();
    return {l, m};
}

Eigen::Vector3d eta_face_vertex(const SpatialVector &nu, const Eigen::Vector3d &p_v) {
    return nu.beta + nu.omega.cross(p_v - nu.anchor);
}

Eigen::Matrix<double, 3, 6> eta_matrix(const Eigen::Vector3d &p_f, const Eigen::Vector3d &p_v) {
    Eigen::Matrix<double, 3, 6> m;
    m.block<3, 3>(0, 0) = cross_op(p_f - p_v);
    m.block<3, 3>(0, 3) = Eigen::Matrix3d::Identity();
    return m;
}

} // namespace origami
