#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cldpt/suite.hpp"

namespace cldpt {

// ---------------------------------------------------------------------------
// Report and table serialization. All numeric text uses 17 significant digits
// so reruns are byte-identical and round-trip through doubles exactly.
// No timestamps, no environment echoes.
// ---------------------------------------------------------------------------

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// a json value that carries the double and its fixed-format text twin
inline void put_number(nlohmann::ordered_json& obj, const std::string& key, double v) {
    if (std::isnan(v))
        obj[key] = nullptr;
    else
        obj[key] = v;
    obj[key + "_text"] = format_g17(v);
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta; // echoed config, in order
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string table_to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) out += "# " + k + " = " + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_g17(row[c]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json table_to_json(const Table& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["config"] = meta;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    nlohmann::ordered_json rows_text = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        nlohmann::ordered_json rt = nlohmann::ordered_json::array();
        for (double v : row) {
            if (std::isnan(v))
                r.push_back(nullptr);
            else
                r.push_back(v);
            rt.push_back(format_g17(v));
        }
        rows.push_back(std::move(r));
        rows_text.push_back(std::move(rt));
    }
    j["rows"] = std::move(rows);
    j["rows_text"] = std::move(rows_text);
    return j;
}

inline std::string table_serialize(const Table& t, const std::string& format) {
    if (format == "csv") return table_to_csv(t);
    return table_to_json(t).dump(2) + "\n";
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg;
    cfg["model"] = model_name(rep.model);
    put_number(cfg, "g", rep.params.g);
    if (rep.params.h) put_number(cfg, "h", *rep.params.h);
    put_number(cfg, "ell", rep.params.ell);
    cfg["n_max"] = rep.config.n_max;
    cfg["grid_points"] = rep.config.grid_points;
    cfg["quad_order"] = rep.config.quad_order;
    put_number(cfg, "tol_residual", rep.config.tol_residual);
    put_number(cfg, "tol_quad", rep.config.tol_quad);
    put_number(cfg, "tol_fd", rep.config.tol_fd);
    cfg["seed"] = rep.config.seed;
    j["config"] = std::move(cfg);

    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    int passed = 0;
    for (const CheckEntry& e : rep.entries) {
        nlohmann::ordered_json je;
        je["name"] = e.name;
        put_number(je, "residual", e.residual);
        put_number(je, "tolerance", e.tolerance);
        je["pass"] = e.pass;
        je["params_echo"] = e.params_echo;
        entries.push_back(std::move(je));
        if (e.pass) ++passed;
    }
    j["entries"] = std::move(entries);

    nlohmann::ordered_json summary;
    summary["total"] = rep.entries.size();
    summary["passed"] = passed;
    summary["failed"] = rep.entries.size() - static_cast<std::size_t>(passed);
    summary["all_pass"] = rep.all_pass;
    j["summary"] = std::move(summary);
    return j;
}

inline std::string report_serialize(const VerificationReport& rep) {
    return report_to_json(rep).dump(2) + "\n";
}

} // namespace cldpt
