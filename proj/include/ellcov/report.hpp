#pragma once

#include <json.hpp>

#include "ellcov/bielliptic.hpp"
#include "ellcov/version.hpp"

namespace ellcov {

using json = nlohmann::json;  // object keys are sorted, so dumps are byte-stable

inline json group_json(const FinAbGroup& g) { return json{{"orders", g.orders}}; }

inline json element_json(const GroupElement& x) { return json{{"coords", x.coords}}; }

inline json mat_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j)
            row.push_back(static_cast<long long>(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json rat_mat_json(const std::vector<std::vector<Rat>>& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const Rat& v : r) row.push_back(rat_to_string(v));
        rows.push_back(row);
    }
    return rows;
}

inline json make_report(const std::string& command, json input_echo, json payload) {
    return json{{"command", command},
                {"input_echo", std::move(input_echo)},
                {"payload", std::move(payload)},
                {"versions", {{"tool", kToolVersion}, {"schema", kSchemaVersion}}}};
}

inline json make_error_report(const std::string& command, const std::string& code,
                              const std::string& message) {
    return json{{"command", command},
                {"error", {{"code", code}, {"message", message}}},
                {"versions", {{"tool", kToolVersion}, {"schema", kSchemaVersion}}}};
}

// canonical one-line element rendering "(1,3)"
inline std::string element_literal(const GroupElement& x) { return x.to_string(); }

inline std::string ram_literal(const std::vector<GroupElement>& h) {
    std::string s;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) s += ";";
        s += h[i].to_string();
    }
    return s;
}

// minimal structural validation against the published report schema
inline bool report_matches_schema(const json& r, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!r.is_object()) return fail("report is not an object");
    if (!r.contains("command") || !r["command"].is_string()) return fail("missing command");
    if (!r.contains("versions") || !r["versions"].is_object()) return fail("missing versions");
    if (!r["versions"].contains("tool") || !r["versions"].contains("schema"))
        return fail("incomplete versions");
    bool ok_payload = r.contains("payload") && r.contains("input_echo");
    bool ok_error = r.contains("error") && r["error"].is_object() &&
                    r["error"].contains("code") && r["error"].contains("message");
    if (!ok_payload && !ok_error) return fail("neither payload nor error present");
    return true;
}

}  // namespace ellcov
