#include "origami/cosheaf.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "origami/error.hpp"

namespace origami {

namespace {

// Residual tolerance of the lift and preimage steps of the connecting map,
// measured relative to the chains involved.
double lift_tolerance(double tol) { return 1e3 * tol; }

double relative_residual(const MatrixXd &lhs, const MatrixXd &rhs) {
    const double scale = std::max({1.0, linalg::max_abs(lhs), linalg::max_abs(rhs)});
    return linalg::max_abs(lhs - rhs) / scale;
}

int position_in(std::span<const int> items, int value) {
    return static_cast<int>(std::find(items.begin(), items.end(), value) - items.begin());
}

std::string shape(const MatrixXd &m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_block(Triplets &t, Index row, Index col, const MatrixXd &block, double sign = 1.0) {
    for (Index j = 0; j < block.cols(); ++j)
        for (Index i = 0; i < block.rows(); ++i)
            if (block(i, j) != 0.0) t.emplace_back(row + i, col + j, sign * block(i, j));
}

SparseMatrix from_triplets(Index rows, Index cols, const Triplets &t) {
    SparseMatrix m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

} // namespace

std::string to_string(CellRef c) {
    static const char *names[] = {"vertex", "edge", "face"};
    return std::string(names[c.dim]) + " " + std::to_string(c.index);
}

std::vector<Incidence> incidences(const OrigamiSurface &s) {
    std::vector<Incidence> out;
    for (std::size_t e = 0; e < s.num_edges(); ++e)
        for (int end = 0; end < 2; ++end)
            out.push_back({{1, static_cast<int>(e)}, {0, s.edge_vertices(static_cast<int>(e))[end]}, end});
    for (std::size_t f = 0; f < s.num_faces(); ++f) {
        const auto verts = s.face_vertices(static_cast<int>(f));
        const auto edges = s.face_edges(static_cast<int>(f));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            out.push_back({{2, static_cast<int>(f)}, {1, edges[i]}, static_cast<int>(i)});
            out.push_back({{2, static_cast<int>(f)}, {0, verts[i]}, static_cast<int>(i)});
        }
    }
    return out;
}

// ---------------------------------------------------------------- Cosheaf

Cosheaf::Cosheaf(SurfacePtr surface, std::string name) : m_surface(std::move(surface)), m_name(std::move(name)) {
    const auto &s = *m_surface;
    for (int d = 0; d < 3; ++d) m_stalk[d].assign(s.num_cells(d), 0);
    m_edge_vertex.resize(s.num_edges());
    for (auto &maps : m_edge_vertex) maps = {MatrixXd(0, 0), MatrixXd(0, 0)};
    m_face_edge.resize(s.num_faces());
    m_face_vertex.resize(s.num_faces());
    for (std::size_t f = 0; f < s.num_faces(); ++f) {
        const auto n = s.face_vertices(static_cast<int>(f)).size();
        m_face_edge[f].assign(n, MatrixXd(0, 0));
        m_face_vertex[f].assign(n, MatrixXd(0, 0));
    }
}

MatrixXd &Cosheaf::slot_ref(const Incidence &inc) {
    return const_cast<MatrixXd &>(std::as_const(*this).slot_ref(inc));
}

const MatrixXd &Cosheaf::slot_ref(const Incidence &inc) const {
    if (inc.higher.dim == 1) return m_edge_vertex[inc.higher.index][inc.slot];
    if (inc.lower.dim == 1) return m_face_edge[inc.higher.index][inc.slot];
    return m_face_vertex[inc.higher.index][inc.slot];
}

const MatrixXd &Cosheaf::extension(const Incidence &inc) const { return slot_ref(inc); }

void Cosheaf::set_extension(const Incidence &inc, MatrixXd map) {
    const int rows = stalk_dim(inc.lower);
    const int cols = stalk_dim(inc.higher);
    if (map.rows() != rows || map.cols() != cols)
        throw Error(ErrorKind::ShapeMismatch, m_name + ": extension " + to_string(inc.higher) + " > " +
                                                  to_string(inc.lower) + " has shape " + shape(map) + ", expected " +
                                                  std::to_string(rows) + "x" + std::to_string(cols));
    slot_ref(inc) = std::move(map);
}

void Cosheaf::set_stalk_dim(CellRef c, int dim) {
    if (dim < 0) throw Error(ErrorKind::ShapeMismatch, "negative stalk dimension");
    m_stalk[c.dim][c.index] = dim;
    reset_maps_touching(c);
}

void Cosheaf::reset_maps_touching(CellRef c) {
    const auto &s = *m_surface;
    auto reset = [&](const Incidence &inc) {
        slot_ref(inc) = MatrixXd::Zero(stalk_dim(inc.lower), stalk_dim(inc.higher));
    };
    switch (c.dim) {
    case 0:
        for (int e : s.vertex_edges(c.index)) reset({{1, e}, c, s.edge_vertices(e)[1] == c.index ? 1 : 0});
        for (int f : s.vertex_faces(c.index)) reset({{2, f}, c, position_in(s.face_vertices(f), c.index)});
        break;
    case 1:
        for (int end = 0; end < 2; ++end) reset({c, {0, s.edge_vertices(c.index)[end]}, end});
        for (int f : s.edge_faces(c.index)) reset({{2, f}, c, position_in(s.face_edges(f), c.index)});
        break;
    default: {
        const auto verts = s.face_vertices(c.index);
        const auto edges = s.face_edges(c.index);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            reset({c, {1, edges[i]}, static_cast<int>(i)});
            reset({c, {0, verts[i]}, static_cast<int>(i)});
        }
    }
    }
}

double Cosheaf::functoriality_residual(Incidence *worst) const {
    const auto &s = *m_surface;
    double max_res = 0.0;
    for (std::size_t fi = 0; fi < s.num_faces(); ++fi) {
        const int f = static_cast<int>(fi);
        const auto verts = s.face_vertices(f);
        const auto edges = s.face_edges(f);
        const int n = static_cast<int>(verts.size());
        for (int i = 0; i < n; ++i) {
            const int e = edges[i];
            const MatrixXd &fe = m_face_edge[f][i];
            for (int slot : {i, (i + 1) % n}) {
                const int v = verts[slot];
                const int end = s.edge_vertices(e)[1] == v ? 1 : 0;
                const double r = relative_residual(m_edge_vertex[e][end] * fe, m_face_vertex[f][slot]);
                if (r > max_res) {
                    max_res = r;
                    if (worst) *worst = {{2, f}, {0, v}, slot};
                }
            }
        }
    }
    return max_res;
}

// ----------------------------------------------------------- ChainComplex

SparseMatrix ChainComplex::boundary(int degree) const {
    if (degree == 1) return d1;
    if (degree == 2) return d2;
    const Index rows = degree >= 1 && degree <= 3 ? dim[degree - 1] : 0;
    const Index cols = degree >= 0 && degree <= 2 ? dim[degree] : 0;
    return SparseMatrix(rows, cols);
}

std::vector<Eigen::Vector3d> ChainComplex::coordinate_points(int degree) const {
    std::vector<Eigen::Vector3d> out;
    out.reserve(dim[degree]);
    for (std::size_t i = 0; i < stalk[degree].size(); ++i) out.insert(out.end(), stalk[degree][i], position[degree][i]);
    return out;
}

double ChainComplex::boundary_residual() const {
    if (d1.size() == 0 || d2.size() == 0) return 0.0;
    const double scale = std::max(linalg::max_abs(d1), linalg::max_abs(d2));
    if (scale == 0.0) return 0.0;
    const SparseMatrix product = d1 * d2;
    return linalg::max_abs(product) / scale;
}

ChainComplex assemble_chain_complex(const Cosheaf &f, double functor_tol) {
    Incidence worst;
    const double res = f.functoriality_residual(&worst);
    if (res > functor_tol)
        throw Error(ErrorKind::FunctorialityViolation, f.name() + ": residual " + std::to_string(res) + " at " +
                                                           to_string(worst.higher) + " > " + to_string(worst.lower));

    const auto &s = *f.surface();
    ChainComplex cc;
    for (int d = 0; d < 3; ++d) {
        const auto n = s.num_cells(d);
        cc.offset[d].resize(n);
        cc.stalk[d].resize(n);
        cc.position[d].resize(n);
        Index running = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cc.offset[d][i] = running;
            cc.stalk[d][i] = f.stalk_dim({d, static_cast<int>(i)});
            cc.position[d][i] = s.centroid(d, static_cast<int>(i));
            running += cc.stalk[d][i];
        }
        cc.dim[d] = running;
    }

    Triplets t1, t2;
    for (const Incidence &inc : incidences(s)) {
        const MatrixXd &ext = f.extension(inc);
        if (ext.size() == 0) continue;
        const Index row = cc.offset[inc.lower.dim][inc.lower.index];
        const Index col = cc.offset[inc.higher.dim][inc.higher.index];
        if (inc.higher.dim == 1) {
            const int sign = s.vertex_edge_sign(inc.lower.index, inc.higher.index);
            add_block(t1, row, col, ext, sign);
        } else if (inc.lower.dim == 1) {
            const int sign = s.face_edge_signs(inc.higher.index)[inc.slot];
            add_block(t2, row, col, ext, sign);
        }
    }
    cc.d1 = from_triplets(cc.dim[0], cc.dim[1], t1);
    cc.d2 = from_triplets(cc.dim[1], cc.dim[2], t2);
    return cc;
}

SubspaceBasis homology_basis(const ChainComplex &cc, int degree, double tol) {
    SubspaceBasis out;
    out.ambient_dim = cc.dim[degree];
    out.tol = tol;
    if (out.ambient_dim == 0) {
        out.basis = MatrixXd(0, 0);
        return out;
    }
    const SparseMatrix down = cc.boundary(degree);
    const SparseMatrix up = SparseMatrix(cc.boundary(degree + 1).transpose());
    Triplets t;
    t.reserve(down.nonZeros() + up.nonZeros());
    for (const auto *part : {&down, &up}) {
        const Index shift = part == &down ? 0 : down.rows();
        for (Index k = 0; k < part->outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(*part, k); it; ++it) t.emplace_back(shift + it.row(), it.col(), it.value());
    }
    const SparseMatrix stacked = from_triplets(down.rows() + up.rows(), out.ambient_dim, t);
    out.basis = linalg::sparse_kernel_basis(stacked, cc.coordinate_points(degree), tol);
    return out;
}

// ------------------------------------------------------------- CosheafMap

CosheafMap::CosheafMap(CosheafPtr src, CosheafPtr tgt) : source(std::move(src)), target(std::move(tgt)) {
    if (source->surface() != target->surface())
        throw Error(ErrorKind::ShapeMismatch, "cosheaf map between different surfaces");
    const auto &s = *source->surface();
    for (int d = 0; d < 3; ++d) {
        component[d].resize(s.num_cells(d));
        for (std::size_t i = 0; i < s.num_cells(d); ++i) {
            const CellRef c{d, static_cast<int>(i)};
            component[d][i] = MatrixXd::Zero(target->stalk_dim(c), source->stalk_dim(c));
        }
    }
}

void CosheafMap::set(CellRef c, MatrixXd m) {
    if (m.rows() != target->stalk_dim(c) || m.cols() != source->stalk_dim(c))
        throw Error(ErrorKind::ShapeMismatch, "component at " + to_string(c) + " has shape " + shape(m));
    component[c.dim][c.index] = std::move(m);
}

double CosheafMap::naturality_residual(const Incidence &inc) const {
    return relative_residual(at(inc.lower) * source->extension(inc), target->extension(inc) * at(inc.higher));
}

double CosheafMap::naturality_residual(Incidence *worst) const {
    double max_res = 0.0;
    for (const Incidence &inc : incidences(*source->surface())) {
        const double r = naturality_residual(inc);
        if (r > max_res) {
            max_res = r;
            if (worst) *worst = inc;
        }
    }
    return max_res;
}

SparseMatrix CosheafMap::chain_matrix(int degree, const ChainComplex &src, const ChainComplex &tgt) const {
    Triplets t;
    for (std::size_t i = 0; i < component[degree].size(); ++i) {
        const MatrixXd &c = component[degree][i];
        if (c.size() > 0) add_block(t, tgt.offset[degree][i], src.offset[degree][i], c);
    }
    return from_triplets(tgt.dim[degree], src.dim[degree], t);
}

SparseMatrix CosheafMap::chain_pseudo_inverse(int degree, const ChainComplex &src, const ChainComplex &tgt,
                                              double tol) const {
    Triplets t;
    for (std::size_t i = 0; i < component[degree].size(); ++i) {
        const MatrixXd &c = component[degree][i];
        if (c.size() > 0) add_block(t, src.offset[degree][i], tgt.offset[degree][i], linalg::pseudo_inverse(c, tol));
    }
    return from_triplets(src.dim[degree], tgt.dim[degree], t);
}

// --------------------------------------------------------- exact sequences

const char *to_string(SequenceViolation v) {
    switch (v) {
    case SequenceViolation::Injectivity: return "InjectivityViolation";
    case SequenceViolation::Surjectivity: return "SurjectivityViolation";
    case SequenceViolation::Exactness: return "ExactnessViolation";
    }
    return "Unknown";
}

ExactnessReport check_exact_sequence(const CosheafMap &iota, const CosheafMap &pi, double tol) {
    if (iota.target != pi.source)
        throw Error(ErrorKind::ShapeMismatch, "iota target (" + iota.target->name() + ") is not pi source (" +
                                                  pi.source->name() + ")");
    ExactnessReport report;
    const auto &s = *iota.source->surface();
    for (int d = 0; d < 3; ++d) {
        for (std::size_t i = 0; i < s.num_cells(d); ++i) {
            const CellRef c{d, static_cast<int>(i)};
            const MatrixXd &in = iota.at(c);
            const MatrixXd &out = pi.at(c);
            CellExactness cell;
            cell.cell = c;
            cell.sub_dim = in.cols();
            cell.total_dim = in.rows();
            cell.quotient_dim = out.rows();
            cell.rank_iota = linalg::rank(in, tol);
            cell.rank_pi = linalg::rank(out, tol);
            if (cell.total_dim > 0 && cell.sub_dim > 0 && cell.quotient_dim > 0) {
                const double scale = linalg::max_abs(out) * linalg::max_abs(in);
                const double comp = linalg::max_abs(out * in);
                cell.composition_residual = comp == 0.0 ? 0.0 : comp / scale;
            }
            if (cell.rank_iota < cell.sub_dim) cell.violations.push_back(SequenceViolation::Injectivity);
            if (cell.rank_pi < cell.quotient_dim) cell.violations.push_back(SequenceViolation::Surjectivity);
            if (cell.composition_residual > tol || cell.sub_dim + cell.quotient_dim != cell.total_dim)
                cell.violations.push_back(SequenceViolation::Exactness);
            report.max_residual = std::max(report.max_residual, cell.composition_residual);
            if (!cell.violations.empty()) report.passed = false;
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

MatrixXd induced_map(const CosheafMap &phi, int degree, const ChainComplex &src, const ChainComplex &tgt,
                     const SubspaceBasis &src_homology, const SubspaceBasis &tgt_homology) {
    const MatrixXd image = phi.chain_matrix(degree, src, tgt) * src_homology.basis;
    return tgt_homology.basis.transpose() * image;
}

SparseMatrix connecting_chain_operator(const ShortExactSequence &seq, int degree, double tol) {
    const SparseMatrix lift = seq.pi.chain_pseudo_inverse(degree, seq.total, seq.quotient, tol);
    const SparseMatrix preimage = seq.iota.chain_pseudo_inverse(degree - 1, seq.sub, seq.total, tol);
    return SparseMatrix(preimage * seq.total.boundary(degree) * lift);
}

VectorXd connect_lift(const ShortExactSequence &seq, int degree, const VectorXd &lift,
                      const SubspaceBasis &sub_homology, double tol) {
    const VectorXd b = seq.total.boundary(degree) * lift;
    const SparseMatrix embed = seq.iota.chain_matrix(degree - 1, seq.sub, seq.total);
    const VectorXd x = seq.iota.chain_pseudo_inverse(degree - 1, seq.sub, seq.total, tol) * b;
    const double scale = std::max({b.norm(), lift.norm(), 1e-300});
    const double residual = (embed * x - b).norm() / scale;
    if (residual > lift_tolerance(tol))
        throw Error(ErrorKind::LiftFailure, "boundary of the lift leaves the image of iota (residual " +
                                                std::to_string(residual) + ")");
    return sub_homology.basis.transpose() * x;
}

MatrixXd connecting_map(const ShortExactSequence &seq, int degree, const SubspaceBasis &quotient_homology,
                        const SubspaceBasis &sub_homology, double tol) {
    const SparseMatrix project = seq.pi.chain_matrix(degree, seq.total, seq.quotient);
    const SparseMatrix lift = seq.pi.chain_pseudo_inverse(degree, seq.total, seq.quotient, tol);
    const SparseMatrix embed = seq.iota.chain_matrix(degree - 1, seq.sub, seq.total);
    const SparseMatrix preimage = seq.iota.chain_pseudo_inverse(degree - 1, seq.sub, seq.total, tol);

    const MatrixXd &q = quotient_homology.basis;
    const MatrixXd y = lift * q;
    const MatrixXd b = seq.total.boundary(degree) * y;
    const MatrixXd x = preimage * b;
    const MatrixXd lift_miss = project * y - q;
    const MatrixXd image_miss = embed * x - b;
    for (Index k = 0; k < q.cols(); ++k) {
        if (lift_miss.col(k).norm() > lift_tolerance(tol) * std::max(q.col(k).norm(), 1e-300))
            throw Error(ErrorKind::LiftFailure, "pi is not surjective on quotient cycle " + std::to_string(k));
        const double scale = std::max({b.col(k).norm(), y.col(k).norm(), 1e-300});
        if (image_miss.col(k).norm() > lift_tolerance(tol) * scale)
            throw Error(ErrorKind::LiftFailure, "boundary of the lift of cycle " + std::to_string(k) +
                                                    " leaves the image of iota");
    }
    return sub_homology.basis.transpose() * x;
}

} // namespace origami
