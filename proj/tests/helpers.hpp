#pragma once

// Shared fixtures for the unit suites: small catalog algebras built inline so
// the tests do not depend on the io layer.

#include "nart/algebra.hpp"

namespace fixtures {

using namespace nart;

/// Linear A_m: vertices 1..m, arrows a_i : i -> i+1.
inline AlgebraPtr linear_Am(int m, u32 p = 101) {
    Quiver q;
    for (int i = 1; i <= m; ++i) q.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < m; ++i) q.arrows.push_back({"a" + std::to_string(i + 1), i, i + 1});
    return std::make_shared<BoundAlgebra>(q, std::vector<Relation>{}, p);
}

/// Nakayama kA_m / J^l (paths of length l vanish).
inline AlgebraPtr nakayama(int m, int l, u32 p = 101) {
    Quiver q;
    for (int i = 1; i <= m; ++i) q.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < m; ++i) q.arrows.push_back({"a" + std::to_string(i + 1), i, i + 1});
    std::vector<Relation> rels;
    for (int start = 0; start + l < m; ++start) {
        RelationTerm t;
        t.coeff = 1;
        for (int k = 0; k < l; ++k) t.arrows.push_back(start + k);
        rels.push_back({t});
    }
    return std::make_shared<BoundAlgebra>(q, rels, p);
}

/// k[x]/(x^2): one vertex, one loop.
inline AlgebraPtr loop_x2(u32 p = 101) {
    Quiver q;
    q.vertices = {"1"};
    q.arrows = {{"x", 0, 0}};
    Relation r{{1, {0, 0}}};
    return std::make_shared<BoundAlgebra>(q, std::vector<Relation>{r}, p);
}

/// Commutative square: 1 -> 2 -> 4, 1 -> 3 -> 4 with ab = cd.
inline AlgebraPtr square(u32 p = 101) {
    Quiver q;
    q.vertices = {"1", "2", "3", "4"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
    Relation r{{1, {0, 1}}, {p - 1, {2, 3}}};
    return std::make_shared<BoundAlgebra>(q, std::vector<Relation>{r}, p);
}

}  // namespace fixtures
