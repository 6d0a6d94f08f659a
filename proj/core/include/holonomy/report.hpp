#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "holonomy/types.hpp"

namespace holonomy {

using json = nlohmann::json;

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Renders a JSON document deterministically: object keys in sorted order
/// (nlohmann's default object type), all floating-point numbers via
/// format_double, 2-space indentation, trailing newline.
std::string render_json(const json& doc);

/// Renders the "table" member of a report ({"columns": [...], "rows":
/// [[...], ...]}) as CSV with the same numeric formatting.  Reports without
/// a table render as key,value lines of their scalar fields.
std::string render_csv(const json& doc);

json vec_to_json(const Vec& v);
json mat_to_json(const Mat& m);

}  // namespace holonomy
