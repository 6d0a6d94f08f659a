#include "holonomy/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace holonomy {

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void render(const json& j, std::string& out, int depth) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    const std::string pad1(static_cast<size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad1 + json(it.key()).dump() + ": ";
                render(it.value(), out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad1;
                render(el, out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string csv_cell(const json& j) {
    if (j.is_number_float()) return format_double(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void flatten_scalars(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "table") continue;
            flatten_scalars(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        int k = 0;
        for (const auto& el : j)
            flatten_scalars(el, prefix + "[" + std::to_string(k++) + "]", out);
    } else {
        out += prefix + "," + csv_cell(j) + "\n";
    }
}

}  // namespace

std::string render_json(const json& doc) {
    std::string out;
    render(doc, out, 0);
    out += "\n";
    return out;
}

std::string render_csv(const json& doc) {
    std::string out;
    if (doc.contains("table") && doc["table"].is_object() && doc["table"].contains("columns")) {
        const json& table = doc["table"];
        bool first = true;
        for (const auto& c : table["columns"]) {
            if (!first) out += ",";
            first = false;
            out += c.get<std::string>();
        }
        out += "\n";
        for (const auto& row : table["rows"]) {
            first = true;
            for (const auto& cell : row) {
                if (!first) out += ",";
                first = false;
                out += csv_cell(cell);
            }
            out += "\n";
        }
        return out;
    }
    flatten_scalars(doc, "", out);
    return out;
}

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace holonomy
