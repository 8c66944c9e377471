#include "origami/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace origami::linalg {

namespace {

Index count_above(const Eigen::VectorXd &sigma, double cutoff) {
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff) ++r;
    return r;
}

Index numerical_rank(const Eigen::VectorXd &sigma, double tol) {
    if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
    return count_above(sigma, tol * sigma(0));
}

} // namespace

Eigen::VectorXd singular_values(const MatrixXd &m) {
    if (m.size() == 0) return Eigen::VectorXd();
    return Eigen::BDCSVD<MatrixXd>(m).singularValues();
}

Index rank(const MatrixXd &m, double tol) {
    return numerical_rank(singular_values(m), tol);
}

MatrixXd kernel_basis(const MatrixXd &m, double tol) {
    const Index n = m.cols();
    if (n == 0) return MatrixXd(0, 0);
    if (m.rows() == 0) return MatrixXd::Identity(n, n);
    Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const Index r = numerical_rank(svd.singularValues(), tol);
    return svd.matrixV().rightCols(n - r);
}

MatrixXd image_basis(const MatrixXd &m, double tol) {
    const Index rows = m.rows();
    if (rows == 0 || m.cols() == 0) return MatrixXd(rows, 0);
    Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
    const Index r = numerical_rank(svd.singularValues(), tol);
    return svd.matrixU().leftCols(r);
}

MatrixXd complement_within(const MatrixXd &ambient, const MatrixXd &sub, double tol) {
    const Index k = ambient.cols();
    if (k == 0) return MatrixXd(ambient.rows(), 0);
    if (sub.cols() == 0) return ambient;
    // Coordinates of span(sub) in the ambient basis; its left null space is
    // the complement expressed in the same coordinates.
    const MatrixXd coords = ambient.transpose() * sub;
    Eigen::BDCSVD<MatrixXd> svd(coords, Eigen::ComputeFullU);
    const Index r = numerical_rank(svd.singularValues(), tol);
    return ambient * svd.matrixU().rightCols(k - r);
}

MatrixXd pseudo_inverse(const MatrixXd &m, double tol) {
    if (m.size() == 0) return MatrixXd::Zero(m.cols(), m.rows());
    Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sigma = svd.singularValues();
    const Index r = numerical_rank(sigma, tol);
    return svd.matrixV().leftCols(r) * sigma.head(r).cwiseInverse().asDiagonal() *
           svd.matrixU().leftCols(r).transpose();
}

Index rank_abs(const MatrixXd &m, double threshold) {
    return count_above(singular_values(m), threshold);
}

MatrixXd kernel_basis_abs(const MatrixXd &m, double threshold) {
    const Index n = m.cols();
    if (n == 0) return MatrixXd(0, 0);
    if (m.rows() == 0) return MatrixXd::Identity(n, n);
    Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const Index r = count_above(svd.singularValues(), threshold);
    return svd.matrixV().rightCols(n - r);
}

MatrixXd pseudo_inverse_abs(const MatrixXd &m, double threshold) {
    if (m.size() == 0) return MatrixXd::Zero(m.cols(), m.rows());
    Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sigma = svd.singularValues();
    const Index r = count_above(sigma, threshold);
    return svd.matrixV().leftCols(r) * sigma.head(r).cwiseInverse().asDiagonal() *
           svd.matrixU().leftCols(r).transpose();
}

double spectral_norm(const MatrixXd &m) {
    const Eigen::VectorXd sigma = singular_values(m);
    return sigma.size() == 0 ? 0.0 : sigma(0);
}

double max_abs(const MatrixXd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrix &m) {
    double out = 0.0;
    for (Index k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
    return out;
}

double spectral_norm_estimate(const SparseMatrix &m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    // A start vector with no special symmetry, fixed for reproducibility.
    VectorXd x(m.cols());
    for (Index k = 0; k < x.size(); ++k) x[k] = 1.0 + 0.1 * static_cast<double>(k % 7);
    x.normalize();
    double estimate = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const VectorXd y = m.transpose() * (m * x);
        const double norm = y.norm();
        if (norm == 0.0) return 0.0;
        const double next = std::sqrt(norm);
        x = y / norm;
        if (std::abs(next - estimate) <= 1e-10 * next) return next;
        estimate = next;
    }
    return estimate;
}

namespace {

constexpr Index kLeafColumns = 96;
// Intermediate groups keep every direction with sigma <= kLooseCutoff * |m|.
// Keeping near-null directions as well stops rounding errors in local bases
// from compounding up the tree; the root applies the real cutoff.
constexpr double kLooseCutoff = 1e-2;

// Columns [lo, hi) of the bisection order, with the rows whose support
// lies in this range but in neither child.
struct KernelNode {
    Index lo = 0;
    Index hi = 0;
    int left = -1;
    int right = -1;
    std::vector<Index> rows;
};

class HierarchicalKernel {
public:
    HierarchicalKernel(const SparseMatrix &m, std::span<const Eigen::Vector3d> points, double norm, double tol)
        : m_rows(m), m_points(points), m_norm(norm), m_tol(tol), m_order(m.cols()), m_position(m.cols()) {
        std::iota(m_order.begin(), m_order.end(), Index{0});
        build(0, m.cols());
        for (Index k = 0; k < m.cols(); ++k) m_position[m_order[k]] = k;
        assign_rows();
    }

    MatrixXd solve() {
        std::vector<Index> rows;
        const MatrixXd local = solve(0, rows);
        MatrixXd out(local.rows(), local.cols());
        for (Index k = 0; k < local.rows(); ++k) out.row(m_order[k]) = local.row(k);
        return out;
    }

private:
    using RowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    int build(Index lo, Index hi) {
        const int id = static_cast<int>(m_nodes.size());
        m_nodes.push_back(KernelNode{lo, hi, -1, -1, {}});
        if (hi - lo <= kLeafColumns) return id;

        Eigen::Vector3d low = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
        Eigen::Vector3d high = -low;
        for (Index k = lo; k < hi; ++k) {
            low = low.cwiseMin(m_points[m_order[k]]);
            high = high.cwiseMax(m_points[m_order[k]]);
        }
        Index axis = 0;
        (high - low).maxCoeff(&axis);
        const Index mid = lo + (hi - lo) / 2;
        std::nth_element(m_order.begin() + lo, m_order.begin() + mid, m_order.begin() + hi, [&](Index a, Index b) {
            const double pa = m_points[a][axis], pb = m_points[b][axis];
            return pa < pb || (pa == pb && a < b);
        });
        const int left = build(lo, mid);
        const int right = build(mid, hi);
        m_nodes[id].left = left;
        m_nodes[id].right = right;
        return id;
    }

    void assign_rows() {
        for (Index r = 0; r < m_rows.rows(); ++r) {
            Index lo = m_rows.cols(), hi = -1;
            for (RowMajor::InnerIterator it(m_rows, r); it; ++it) {
                if (it.value() == 0.0) continue;
                lo = std::min(lo, m_position[it.col()]);
                hi = std::max(hi, m_position[it.col()]);
            }
            if (hi < 0) continue;
            int node = 0;
            for (;;) {
                const KernelNode &n = m_nodes[node];
                if (n.left < 0) break;
                if (hi < m_nodes[n.left].hi)
                    node = n.left;
                else if (lo >= m_nodes[n.right].lo)
                    node = n.right;
                else
                    break;
            }
            m_nodes[node].rows.push_back(r);
        }
    }

    // `rows` receives every row internal to the subtree.
    MatrixXd solve(int id, std::vector<Index> &rows) {
        const KernelNode &n = m_nodes[id];
        const Index width = n.hi - n.lo;
        MatrixXd basis;
        if (n.left < 0) {
            basis = MatrixXd::Identity(width, width);
        } else {
            std::vector<Index> right_rows;
            const MatrixXd a = solve(n.left, rows);
            const MatrixXd b = solve(n.right, right_rows);
            rows.insert(rows.end(), right_rows.begin(), right_rows.end());
            basis = MatrixXd::Zero(width, a.cols() + b.cols());
            basis.topLeftCorner(a.rows(), a.cols()) = a;
            basis.bottomRightCorner(b.rows(), b.cols()) = b;
        }
        rows.insert(rows.end(), n.rows.begin(), n.rows.end());
        if (rows.empty() || basis.cols() == 0) return basis;

        MatrixXd constrained = MatrixXd::Zero(static_cast<Index>(rows.size()), basis.cols());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (RowMajor::InnerIterator it(m_rows, rows[i]); it; ++it)
                constrained.row(static_cast<Index>(i)) += it.value() * basis.row(m_position[it.col()] - n.lo);
        const double cutoff = (id == 0 ? m_tol : kLooseCutoff) * m_norm;
        return basis * kernel_basis_abs(constrained, cutoff);
    }

    RowMajor m_rows;
    std::span<const Eigen::Vector3d> m_points;
    double m_norm;
    double m_tol;
    std::vector<Index> m_order;
    std::vector<Index> m_position;
    std::vector<KernelNode> m_nodes;
};

} // namespace

MatrixXd sparse_kernel_basis(const SparseMatrix &m, std::span<const Eigen::Vector3d> column_points, double tol) {
    const Index n = m.cols();
    if (n == 0) return MatrixXd(0, 0);
    if (n <= kLeafColumns) return kernel_basis(MatrixXd(m), tol);
    const double norm = spectral_norm_estimate(m);
    if (norm == 0.0) return MatrixXd::Identity(n, n);
    return HierarchicalKernel(m, column_points, norm, tol).solve();
}

} // namespace origami::linalg
