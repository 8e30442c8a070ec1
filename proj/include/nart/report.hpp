#pragma once

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "nart/zlat.hpp"

namespace nart {

using json = nlohmann::json;

enum class VerdictKind { Pass, Fail, Unverifiable };

inline std::string verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::Pass: return "pass";
        case VerdictKind::Fail: return "fail";
        default: return "unverifiable";
    }
}

inline VerdictKind verdict_from_name(const std::string& s) {
    if (s == "pass") return VerdictKind::Pass;
    if (s == "fail") return VerdictKind::Fail;
    if (s == "unverifiable") return VerdictKind::Unverifiable;
    throw BadInput("unknown verdict '" + s + "'");
}

struct ReportCheck {
    std::string name;
    bool pass = false;
    json witness;  // concrete vector / pair / dimension on failure, detail on pass

    bool operator==(const ReportCheck& o) const {
        return name == o.name && pass == o.pass && witness == o.witness;
    }
};

struct Report {
    VerdictKind verdict = VerdictKind::Pass;
    std::vector<std::string> basis_order;
    std::vector<std::vector<long long>> relation_matrix;
    std::vector<std::string> invariant_factors;
    std::vector<ReportCheck> checks;

    void add(const std::string& name, bool pass, json witness = json()) {
        checks.push_back({name, pass, std::move(witness)});
        if (!pass) verdict = VerdictKind::Fail;
    }
    bool ok() const { return verdict == VerdictKind::Pass; }

    bool operator==(const Report& o) const {
        return verdict == o.verdict && basis_order == o.basis_order &&
               relation_matrix == o.relation_matrix && invariant_factors == o.invariant_factors &&
               checks == o.checks;
    }
};

inline json to_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return json{{"verdict", verdict_name(r.verdict)},
                {"basis_order", r.basis_order},
                {"relation_matrix", r.relation_matrix},
                {"invariant_factors", r.invariant_factors},
                {"checks", checks}};
}

inline Report report_from_json(const json& j) {
    Report r;
    r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    r.basis_order = j.at("basis_order").get<std::vector<std::string>>();
    r.relation_matrix = j.at("relation_matrix").get<std::vector<std::vector<long long>>>();
    r.invariant_factors = j.at("invariant_factors").get<std::vector<std::string>>();
    for (const auto& c : j.at("checks")) {
        ReportCheck rc;
        rc.name = c.at("name").get<std::string>();
        rc.pass = c.at("pass").get<bool>();
        rc.witness = c.at("witness");
        r.checks.push_back(rc);
    }
    return r;
}

inline std::string render_table(const Report& r) {
    std::ostringstream os;
    os << "verdict: " << verdict_name(r.verdict) << "\n";
    if (!r.basis_order.empty()) {
        os << "basis order:";
        for (const auto& b : r.basis_order) os << " " << b;
        os << "\n";
    }
    if (!r.relation_matrix.empty()) {
        os << "relation matrix:\n";
        for (const auto& row : r.relation_matrix) {
            os << "  [";
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
            os << "]\n";
        }
    }
    if (!r.invariant_factors.empty()) {
        os << "invariant factors:";
        for (const auto& d : r.invariant_factors) os << " " << d;
        os << "\n";
    }
    for (const auto& c : r.checks) {
        os << (c.pass ? "  ok   " : "  FAIL ") << c.name;
        if (!c.pass && !c.witness.is_null()) os << "  witness: " << c.witness.dump();
        os << "\n";
    }
    return os.str();
}

}  // namespace nart
