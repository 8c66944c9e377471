#include "origami/json_emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace origami {

namespace {

bool is_container(const nlohmann::json &j) { return j.is_object() || j.is_array(); }

void emit_scalar(const nlohmann::json &j, std::string &out) {
    if (j.is_number_float()) {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            return;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
        // keep the value a float on re-read
        if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
        return;
    }
    out += j.dump();
}

void emit(const nlohmann::json &j, int indent, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + nlohmann::json(it.key()).dump() + ": ";
            emit(it.value(), indent, depth + 1, out);
        }
        out += "\n" + close + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::none_of(j.begin(), j.end(), is_container);
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto &v : j) {
            if (!first) out += flat ? ", " : ",\n";
            first = false;
            if (!flat) out += pad;
            emit(v, indent, depth + 1, out);
        }
        out += flat ? "]" : "\n" + close + "]";
    } else {
        emit_scalar(j, out);
    }
}

} // namespace

std::string emit_json(const nlohmann::json &j, int indent) {
    std::string out;
    emit(j, indent, 0, out);
    out += "\n";
    return out;
}

} // namespace origami
