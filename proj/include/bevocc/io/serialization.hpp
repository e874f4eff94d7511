#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "bevocc/geometry/grid.hpp"

namespace bevocc::io {

using json = nlohmann::json;

/// Rejects keys not in `allowed`; all config parsing in this project is strict.
inline void require_keys_subset(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::filesystem::path& path, const json& j, int indent = 2) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(indent) << "\n";
}

inline json grid_spec_to_json(const geometry::BevGridSpec& spec) {
    return json{{"x0", spec.x0},       {"y0", spec.y0},   {"dx", spec.dx},
                {"dy", spec.dy},       {"height", spec.height}, {"width", spec.width}};
}

inline geometry::BevGridSpec grid_spec_from_json(const json& j) {
    require_keys_subset(j, {"x0", "y0", "dx", "dy", "height", "width"}, "grid spec");
    geometry::BevGridSpec spec;
    spec.x0 = j.at("x0").get<double>();
    spec.y0 = j.at("y0").get<double>();
    spec.dx = j.at("dx").get<double>();
    spec.dy = j.at("dy").get<double>();
    spec.height = j.at("height").get<int>();
    spec.width = j.at("width").get<int>();
    spec.validate();
    return spec;
}

}  // namespace bevocc::io
