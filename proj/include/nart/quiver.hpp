#pragma once

#include <string>
#include <vector>

#include "nart/fp.hpp"

namespace nart {

struct Arrow {
    std::string name;
    int src = 0, tgt = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int nv() const { return int(vertices.size()); }
    int na() const { return int(arrows.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < nv(); ++i)
            if (vertices[i] == name) return i;
        throw BadInput("unknown vertex '" + name + "'");
    }
    int arrow_index(const std::string& name) const {
        for (int i = 0; i < na(); ++i)
            if (arrows[i].name == name) return i;
        throw BadInput("unknown arrow '" + name + "'");
    }

    bool has_directed_cycle() const {
        std::vector<int> state(vertices.size(), 0);  // 0 new, 1 open, 2 done
        std::vector<std::vector<int>> out(vertices.size());
        for (const auto& a : arrows) out[a.src].push_back(a.tgt);
        bool cyc = false;
        auto dfs = [&](auto&& self, int v) -> void {
            state[v] = 1;
            for (int w : out[v]) {
                if (state[w] == 1) { cyc = true; return; }
                if (state[w] == 0) self(self, w);
                if (cyc) return;
            }
            state[v] = 2;
        };
        for (int v = 0; v < nv() && !cyc; ++v)
            if (state[v] == 0) dfs(dfs, v);
        return cyc;
    }
};

/// One term of a relation: coeff * (path given as arrow indices, first-to-last).
struct RelationTerm {
    u32 coeff = 0;
    std::vector<int> arrows;
};
using Relation = std::vector<RelationTerm>;

}  // namespace nart
