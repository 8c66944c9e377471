#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace origami {

// Deterministic JSON text: keys sorted, floats printed with 17 significant
// digits, arrays of scalars kept on one line. Non-finite floats become null.
std::string emit_json(const nlohmann::json &j, int indent = 2);

} // namespace origami
