#include "origami/fold_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "origami/error.hpp"
#include "origami/json_emit.hpp"

namespace origami {

namespace {

using nlohmann::json;

constexpr const char *kVertices = "vertices_coords";
constexpr const char *kEdges = "edges_vertices";
constexpr const char *kFaces = "faces_vertices";

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw Error(ErrorKind::ParseError, path + ": " + msg);
}

std::string at(const std::string &path, std::size_t k) { return path + "/" + std::to_string(k); }

const json &require_array(const json &j, const std::string &path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

int read_index(const json &j, const std::string &path) {
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
            throw Error(ErrorKind::IndexOutOfRange, path + ": index " + std::to_string(v) + " is too large");
        return static_cast<int>(v);
    }
    if (j.is_number_integer())
        throw Error(ErrorKind::IndexOutOfRange, path + ": negative index " + std::to_string(j.get<std::int64_t>()));
    fail(path, "expected a vertex index");
}

void check_range(int v, std::size_t count, const std::string &path) {
    if (static_cast<std::size_t>(v) >= count)
        throw Error(ErrorKind::IndexOutOfRange,
                    path + ": vertex " + std::to_string(v) + " does not exist (" + std::to_string(count) + " vertices)");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

bool FoldSubsetDocument::operator==(const FoldSubsetDocument &o) const {
    return vertices_coords == o.vertices_coords && edges_vertices == o.edges_vertices &&
           faces_vertices == o.faces_vertices && metadata == o.metadata;
}

FoldSubsetDocument parse_fold(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                               ": malformed JSON");
    }
    if (!root.is_object()) fail("", "expected a JSON object");

    FoldSubsetDocument doc;
    if (!root.contains(kVertices)) fail("", "missing \"vertices_coords\"");
    if (!root.contains(kFaces)) fail("", "missing \"faces_vertices\"");

    const std::string vpath = "/" + std::string(kVertices);
    const json &coords = require_array(root[kVertices], vpath);
    for (std::size_t k = 0; k < coords.size(); ++k) {
        const json &c = require_array(coords[k], at(vpath, k));
        if (c.size() != 2 && c.size() != 3) fail(at(vpath, k), "expected 2 or 3 coordinates");
        Eigen::Vector3d p = Eigen::Vector3d::Zero();
        for (std::size_t d = 0; d < c.size(); ++d) {
            if (!c[d].is_number()) fail(at(at(vpath, k), d), "expected a number");
            p[static_cast<Eigen::Index>(d)] = c[d].get<double>();
        }
        doc.vertices_coords.push_back(p);
    }
    const std::size_t nv = doc.vertices_coords.size();

    const std::string fpath = "/" + std::string(kFaces);
    const json &faces = require_array(root[kFaces], fpath);
    for (std::size_t k = 0; k < faces.size(); ++k) {
        const json &f = require_array(faces[k], at(fpath, k));
        std::vector<int> cycle;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int v = read_index(f[i], at(at(fpath, k), i));
            check_range(v, nv, at(at(fpath, k), i));
            cycle.push_back(v);
        }
        doc.faces_vertices.push_back(std::move(cycle));
    }

    if (root.contains(kEdges)) {
        const std::string epath = "/" + std::string(kEdges);
        const json &edges = require_array(root[kEdges], epath);
        std::vector<std::array<int, 2>> list;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const json &e = require_array(edges[k], at(epath, k));
            if (e.size() != 2) fail(at(epath, k), "expected two vertex indices");
            std::array<int, 2> pair{};
            for (std::size_t i = 0; i < 2; ++i) {
                pair[i] = read_index(e[i], at(at(epath, k), i));
                check_range(pair[i], nv, at(at(epath, k), i));
            }
            list.push_back(pair);
        }
        doc.edges_vertices = std::move(list);
    }

    for (auto it = root.begin(); it != root.end(); ++it)
        if (it.key() != kVertices && it.key() != kEdges && it.key() != kFaces) doc.metadata[it.key()] = it.value();
    return doc;
}

FoldSubsetDocument read_fold_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_fold(buf.str());
}

std::string serialize_fold(const FoldSubsetDocument &doc) {
    json root = doc.metadata.is_object() ? doc.metadata : json::object();
    json coords = json::array();
    for (const auto &p : doc.vertices_coords) coords.push_back({p.x(), p.y(), p.z()});
    root[kVertices] = std::move(coords);
    root[kFaces] = doc.faces_vertices;
    if (doc.edges_vertices) root[kEdges] = *doc.edges_vertices;
    return emit_json(root);
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
    out << text;
}

FoldSubsetDocument to_document(const Mesh &m) {
    FoldSubsetDocument doc;
    doc.vertices_coords = m.vertices;
    doc.faces_vertices = m.faces;
    doc.metadata["file_spec"] = 1.1;
    doc.metadata["frame_classes"] = json::array({"foldedForm"});
    return doc;
}

SurfacePtr to_surface(const FoldSubsetDocument &doc, double tol) {
    return std::make_shared<const OrigamiSurface>(
        build_surface(doc.vertices_coords, doc.faces_vertices, doc.edges_vertices, tol));
}

} // namespace origami
