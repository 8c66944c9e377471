#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "origami/generators.hpp"

namespace origami {

// The subset of FOLD read and written here. Keys outside the subset are
// kept verbatim in `metadata` and written back on serialization.
struct FoldSubsetDocument {
    std::vector<Eigen::Vector3d> vertices_coords;
    std::optional<std::vector<std::array<int, 2>>> edges_vertices;
    std::vector<std::vector<int>> faces_vertices;
    nlohmann::json metadata = nlohmann::json::object();

    bool operator==(const FoldSubsetDocument &o) const;
};

// Throws ParseError (with line or JSON path) or IndexOutOfRange.
FoldSubsetDocument parse_fold(std::string_view text);
FoldSubsetDocument read_fold_file(const std::filesystem::path &path);

std::string serialize_fold(const FoldSubsetDocument &doc);
void write_text_file(const std::filesystem::path &path, const std::string &text);

FoldSubsetDocument to_document(const Mesh &m);
SurfacePtr to_surface(const FoldSubsetDocument &doc, double tol = linalg::kDefaultTol);

} // namespace origami
