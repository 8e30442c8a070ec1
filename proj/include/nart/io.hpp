#pragma once

#include <fstream>

#include "nart/groth.hpp"

namespace nart {

/// Parse the algebra input format:
/// {"field":{"prime":101},
///  "quiver":{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]},
///  "relations":[[{"coeff":1,"path":["a","b"]}]]}
/// Path arrays are ordered first-to-last in composition order; coefficients
/// are integers reduced mod p.
inline AlgebraPtr algebra_from_json(const json& j, ValidateOptions opts = {}) {
    if (!j.contains("field") || !j["field"].contains("prime"))
        throw BadInput("missing field.prime");
    long long prime = j["field"]["prime"].get<long long>();
    if (prime < 2) throw BadInput("field.prime must be at least 2");
    Quiver q;
    for (const auto& v : j.at("quiver").at("vertices")) q.vertices.push_back(v.get<std::string>());
    if (j.at("quiver").contains("arrows"))
        for (const auto& a : j["quiver"]["arrows"]) {
            Arrow ar;
            ar.name = a.at("name").get<std::string>();
            // endpoints by name; indices resolved after all vertices are known
            ar.src = -1;
            ar.tgt = -1;
            q.arrows.push_back(ar);
        }
    // resolve endpoints
    int ai = 0;
    if (j.at("quiver").contains("arrows"))
        for (const auto& a : j["quiver"]["arrows"]) {
            q.arrows[ai].src = q.vertex_index(a.at("from").get<std::string>());
            q.arrows[ai].tgt = q.vertex_index(a.at("to").get<std::string>());
            ++ai;
        }
    Fp F{u32(prime)};
    std::vector<Relation> rels;
    if (j.contains("relations"))
        for (const auto& rel : j["relations"]) {
            Relation r;
            for (const auto& term : rel) {
                RelationTerm t;
                t.coeff = F.reduce(term.at("coeff").get<long long>());
                for (const auto& arrow : term.at("path"))
                    t.arrows.push_back(q.arrow_index(arrow.get<std::string>()));
                r.push_back(std::move(t));
            }
            rels.push_back(std::move(r));
        }
    return std::make_shared<BoundAlgebra>(std::move(q), std::move(rels), u32(prime), opts);
}

inline json algebra_to_json(const BoundAlgebra& a) {
    json arrows = json::array();
    for (const auto& ar : a.quiver.arrows)
        arrows.push_back({{"name", ar.name},
                          {"from", a.quiver.vertices[ar.src]},
                          {"to", a.quiver.vertices[ar.tgt]}});
    json rels = json::array();
    for (const auto& rel : a.relations) {
        json r = json::array();
        for (const auto& term : rel) {
            json path = json::array();
            for (int arr : term.arrows) path.push_back(a.quiver.arrows[arr].name);
            r.push_back({{"coeff", term.coeff}, {"path", path}});
        }
        rels.push_back(r);
    }
    return json{{"field", {{"prime", a.field.p}}},
                {"quiver", {{"vertices", a.quiver.vertices}, {"arrows", arrows}}},
                {"relations", rels}};
}

inline AlgebraPtr load_algebra_file(const std::string& path, ValidateOptions opts = {}) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open algebra file '" + path + "'");
    json j;
    in >> j;
    return algebra_from_json(j, opts);
}

// ---------------------------------------------------------------------------
// Bundled catalog
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    int suggested_n = 1;
    std::string notes;
    json algebra;
};

inline json linear_quiver_json(int m, u32 p) {
    json vertices = json::array();
    for (int i = 1; i <= m; ++i) vertices.push_back(std::to_string(i));
    json arrows = json::array();
    for (int i = 1; i < m; ++i)
        arrows.push_back({{"name", "a" + std::to_string(i)},
                          {"from", std::to_string(i)},
                          {"to", std::to_string(i + 1)}});
    return json{{"field", {{"prime", p}}},
                {"quiver", {{"vertices", vertices}, {"arrows", arrows}}},
                {"relations", json::array()}};
}

inline std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    const u32 p = 101;
    for (int m = 2; m <= 6; ++m) {
        CatalogEntry e;
        e.name = "a" + std::to_string(m);
        e.suggested_n = 1;
        e.notes = "hereditary linear A_" + std::to_string(m);
        e.algebra = linear_quiver_json(m, p);
        out.push_back(e);
    }
    for (int m = 2; m <= 6; ++m)
        for (int l = 2; l <= 4; ++l) {
            CatalogEntry e;
            e.name = "nakayama-m" + std::to_string(m) + "-l" + std::to_string(l);
            e.suggested_n = 2;
            e.notes = "Nakayama kA_" + std::to_string(m) + "/J^" + std::to_string(l);
            e.algebra = linear_quiver_json(m, p);
            json rels = json::array();
            for (int start = 1; start + l <= m; ++start) {
                json path = json::array();
                for (int k = 0; k < l; ++k) path.push_back("a" + std::to_string(start + k));
                rels.push_back(json::array({{{"coeff", 1}, {"path", path}}}));
            }
            e.algebra["relations"] = rels;
            out.push_back(e);
        }
    {
        CatalogEntry e;
        e.name = "loop-x2";
        e.suggested_n = 1;
        e.notes = "k[x]/(x^2), one loop with a square-zero relation";
        e.algebra = json{{"field", {{"prime", p}}},
                         {"quiver",
                          {{"vertices", {"1"}},
                           {"arrows", json::array({{{"name", "x"}, {"from", "1"}, {"to", "1"}}})}}},
                         {"relations",
                          json::array({json::array({{{"coeff", 1}, {"path", {"x", "x"}}}})})}};
        out.push_back(e);
    }
    return out;
}

inline CatalogEntry load_catalog(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw UnknownEntry("no catalog entry named '" + name + "'");
}

}  // namespace nart
