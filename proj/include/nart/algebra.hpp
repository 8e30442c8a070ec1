#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nart/fpmat.hpp"
#include "nart/quiver.hpp"

namespace nart {

/// Coefficient combination of residue paths, sorted by path id.
using PathCombo = std::vector<std::pair<int, u32>>;

inline PathCombo combo_add(const Fp& F, const PathCombo& a, const PathCombo& b, u32 scale = 1) {
    PathCombo r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            u32 c = F.mul(b[j].second, scale);
            if (c) r.push_back({b[j].first, c});
            ++j;
        } else {
            u32 c = F.add(a[i].second, F.mul(b[j].second, scale));
            if (c) r.push_back({a[i].first, c});
            ++i;
            ++j;
        }
    }
    return r;
}

struct ResiduePath {
    int src = 0, tgt = 0;
    std::vector<int> arrows;  // temporal order: arrows[0] acts first
    int len() const { return int(arrows.size()); }
};

struct ValidateOptions {
    int path_cap = 10000;        // residue-path count cap (InfiniteDimensional beyond)
    int nilpotency_bound = 24;   // certify J^m <= I for some m below this
    int nongraded_raw_cap = 512; // raw-path cap for the non-homogeneous cyclic branch
};

/// A bound quiver algebra kQ/I over a prime field, with its residue-path basis
/// and the rewriting table needed to build projectives and evaluate relations.
class BoundAlgebra {
public:
    Quiver quiver;
    std::vector<Relation> relations;
    Fp field;
    ValidateOptions options;

    std::vector<ResiduePath> basis;              // the residue paths, id = index
    std::vector<std::vector<PathCombo>> append;  // append[id][arrow] = NF(path * arrow)

    BoundAlgebra(Quiver q, std::vector<Relation> rels, u32 prime, ValidateOptions opts = {})
        : quiver(std::move(q)), relations(std::move(rels)), field(prime), options(opts) {
        check_input();
        build();
    }

    int dim() const { return int(basis.size()); }
    int nv() const { return quiver.nv(); }
    int na() const { return quiver.na(); }

    /// Ids of residue paths starting at v (basis of the projective at v).
    std::vector<int> paths_from(int v) const {
        std::vector<int> r;
        for (int i = 0; i < dim(); ++i)
            if (basis[i].src == v) r.push_back(i);
        return r;
    }
    std::vector<int> paths_into(int v) const {
        std::vector<int> r;
        for (int i = 0; i < dim(); ++i)
            if (basis[i].tgt == v) r.push_back(i);
        return r;
    }

    /// Normal form of (residue path id) * arrow; empty combo means zero.
    const PathCombo& append_nf(int id, int arrow) const { return append[id][arrow]; }

    /// Normal form of an arbitrary arrow word starting at src.
    PathCombo reduce_word(int src, const std::vector<int>& word) const {
        int e = trivial_path_id(src);
        PathCombo combo{{e, 1}};
        for (int a : word) {
            PathCombo next;
            for (auto& [id, c] : combo) next = combo_add(field, next, append[id][a], c);
            combo = std::move(next);
            if (combo.empty()) break;
        }
        return combo;
    }

    int trivial_path_id(int v) const { return trivial_ids_[v]; }

    /// Opposite algebra: arrows reversed, relation words reversed. Cached.
    std::shared_ptr<const BoundAlgebra> opposite() const {
        std::call_once(op_once_, [this] {
            Quiver op = quiver;
            for (auto& a : op.arrows) std::swap(a.src, a.tgt);
            std::vector<Relation> rels = relations;
            for (auto& rel : rels)
                for (auto& term : rel) std::reverse(term.arrows.begin(), term.arrows.end());
            op_cache_ =
                std::make_shared<BoundAlgebra>(std::move(op), std::move(rels), field.p, options);
        });
        return op_cache_;
    }

    /// Structural identity used for AlgebraMismatch checks.
    const std::string& signature() const { return signature_; }

private:
    std::vector<int> trivial_ids_;
    std::string signature_;
    mutable std::once_flag op_once_;
    mutable std::shared_ptr<const BoundAlgebra> op_cache_;

    struct RawPath {
        int src = 0, tgt = 0;
        std::vector<int> arrows;
        int len() const { return int(arrows.size()); }
    };

    void check_input() {
        std::set<std::string> names(quiver.vertices.begin(), quiver.vertices.end());
        if (int(names.size()) != quiver.nv()) throw BadInput("duplicate vertex ids");
        std::set<std::string> anames;
        for (const auto& a : quiver.arrows) {
            if (!anames.insert(a.name).second) throw BadInput("duplicate arrow id '" + a.name + "'");
            if (a.src < 0 || a.src >= quiver.nv() || a.tgt < 0 || a.tgt >= quiver.nv())
                throw BadInput("arrow endpoint out of range");
        }
        std::vector<Relation> cleaned;
        for (auto& rel : relations) {
            Relation c;
            int rs = -1, rt = -1;
            for (auto& term : rel) {
                u32 coeff = term.coeff % field.p;
                if (!coeff) continue;
                if (term.arrows.size() < 2)
                    throw NonAdmissibleIdeal("relation contains a path of length < 2");
                int s = quiver.arrows[term.arrows[0]].src;
                int t = s;
                for (int a : term.arrows) {
                    if (a < 0 || a >= quiver.na()) throw BadInput("relation uses unknown arrow");
                    if (quiver.arrows[a].src != t) throw BadInput("relation path is not composable");
                    t = quiver.arrows[a].tgt;
                }
                if (rs < 0) { rs = s; rt = t; }
                if (s != rs || t != rt)
                    throw BadInput("relation terms do not share source and target");
                c.push_back({coeff, term.arrows});
            }
            if (!c.empty()) cleaned.push_back(std::move(c));
        }
        relations = std::move(cleaned);

        std::ostringstream sig;
        sig << "p" << field.p << ";V";
        for (auto& v : quiver.vertices) sig << v << ",";
        sig << ";A";
        for (auto& a : quiver.arrows) sig << a.name << ":" << a.src << ">" << a.tgt << ",";
        sig << ";R";
        for (auto& rel : relations) {
            for (auto& t : rel) {
                sig << t.coeff << "*";
                for (int x : t.arrows) sig << x << ".";
                sig << "+";
            }
            sig << "|";
        }
        signature_ = sig.str();
    }

    bool relations_homogeneous() const {
        for (const auto& rel : relations) {
            std::size_t l = rel.front().arrows.size();
            for (const auto& t : rel)
                if (t.arrows.size() != l) return false;
        }
        return true;
    }

    // Certificate of infinite dimension: a directed cycle using only arrows
    // that occur in no relation can never reduce.
    bool has_relation_free_cycle() const {
        std::set<int> used;
        for (const auto& rel : relations)
            for (const auto& t : rel)
                for (int a : t.arrows) used.insert(a);
        Quiver sub;
        sub.vertices = quiver.vertices;
        for (int i = 0; i < quiver.na(); ++i)
            if (!used.count(i)) sub.arrows.push_back(quiver.arrows[i]);
        return sub.has_directed_cycle();
    }

    void install(std::vector<RawPath> residues, std::map<std::vector<int>, PathCombo> nf_of_word) {
        // residues arrive sorted by (len, discovery); ids follow that order.
        basis.clear();
        std::map<std::vector<int>, int> id_of;
        for (auto& r : residues) {
            basis.push_back({r.src, r.tgt, r.arrows});
            id_of[key_of(r)] = int(basis.size()) - 1;
        }
        trivial_ids_.assign(nv(), -1);
        for (int i = 0; i < dim(); ++i)
            if (basis[i].len() == 0) trivial_ids_[basis[i].src] = i;

        append.assign(dim(), std::vector<PathCombo>(na()));
        for (int i = 0; i < dim(); ++i) {
            for (int a = 0; a < na(); ++a) {
                if (quiver.arrows[a].src != basis[i].tgt) continue;  // not composable: zero
                RawPath ext{basis[i].src, quiver.arrows[a].tgt, basis[i].arrows};
                ext.arrows.push_back(a);
                auto k = key_of(ext);
                auto it = id_of.find(k);
                if (it != id_of.end()) {
                    append[i][a] = {{it->second, 1}};
                    continue;
                }
                auto nf = nf_of_word.find(k);
                if (nf != nf_of_word.end()) append[i][a] = nf->second;
                // absent: normal form is zero
            }
        }
    }

    std::vector<int> key_of(const RawPath& r) const {
        std::vector<int> k;
        k.push_back(r.src);
        for (int a : r.arrows) k.push_back(a);
        return k;
    }

    void build();
    void build_graded();
    void build_global(bool truncated);
};

using AlgebraPtr = std::shared_ptr<const BoundAlgebra>;

inline void check_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || a->signature() != b->signature())
        throw AlgebraMismatch("operands live over different algebras");
}

// ---------------------------------------------------------------------------
// Basis construction.
//
// Graded branch (every relation length-homogeneous): the ideal is graded, so
// degree-d membership only needs degree-d products of relations with residue
// paths; rewriting strictly lowers into the residue span per degree and the
// loop stops exactly when a degree carries no residue path.
//
// Non-homogeneous branch: exact for acyclic quivers (the whole path set is
// finite); for cyclic quivers the quotient kQ/(I + J^m) is computed for
// growing m and accepted once every top-length residue path reduces to zero,
// which is the certified J^{m-1} <= I check.
// ---------------------------------------------------------------------------

inline void BoundAlgebra::build() {
    if (relations_homogeneous() && !relations.empty()) {
        build_graded();
    } else if (relations.empty()) {
        // Hereditary: infinite-dimensional iff the quiver has a cycle.
        if (quiver.has_directed_cycle())
            throw InfiniteDimensional("hereditary algebra on a quiver with a directed cycle");
        build_graded();  // degenerate graded run: no relation rows
    } else if (!quiver.has_directed_cycle()) {
        build_global(false);
    } else {
        build_global(true);
    }
}

inline void BoundAlgebra::build_graded() {
    Fp F = field;
    std::vector<RawPath> residues;
    std::map<std::vector<int>, PathCombo> nf;  // reducible word -> combo over residue ids
    std::map<std::vector<int>, int> residue_id;

    auto push_residue = [&](const RawPath& r) {
        residues.push_back(r);
        residue_id[key_of(r)] = int(residues.size()) - 1;
    };

    for (int v = 0; v < nv(); ++v) push_residue({v, v, {}});
    std::vector<int> prev_layer;  // residue indices of previous degree
    for (int v = 0; v < nv(); ++v) prev_layer.push_back(v);

    // group relations by length
    std::map<int, std::vector<const Relation*>> rel_by_len;
    for (const auto& r : relations) rel_by_len[int(r.front().arrows.size())].push_back(&r);

    for (int d = 1;; ++d) {
        // candidates: previous-degree residues extended by one arrow
        struct Cand { RawPath path; int prev_residue; int arrow; };
        std::vector<Cand> cands;
        std::map<std::vector<int>, int> cand_index;
        for (int ri : prev_layer) {
            const RawPath& r = residues[ri];
            for (int a = 0; a < na(); ++a) {
                if (quiver.arrows[a].src != r.tgt) continue;
                RawPath ext{r.src, quiver.arrows[a].tgt, r.arrows};
                ext.arrows.push_back(a);
                cand_index[key_of(ext)] = int(cands.size());
                cands.push_back({std::move(ext), ri, a});
            }
        }
        if (cands.empty()) return install(std::move(residues), std::move(nf));

        // reduce an arbitrary word of length d to candidate coordinates
        auto reduce_to_cands = [&](int src, const std::vector<int>& word) {
            // fold through residues for the first d-1 arrows, then map to candidates
            std::vector<std::pair<int, u32>> combo{{residue_id.at({src}), 1}};
            for (std::size_t k = 0; k + 1 < word.size(); ++k) {
                std::map<int, u32> next;
                for (auto& [ri, c] : combo) {
                    const RawPath& r = residues[ri];
                    RawPath ext{r.src, quiver.arrows[word[k]].tgt, r.arrows};
                    ext.arrows.push_back(word[k]);
                    auto it = residue_id.find(key_of(ext));
                    if (it != residue_id.end()) {
                        next[it->second] = F.add(next[it->second], c);
                    } else {
                        auto nfit = nf.find(key_of(ext));
                        if (nfit != nf.end())
                            for (auto& [rj, cj] : nfit->second)
                                next[rj] = F.add(next[rj], F.mul(c, cj));
                    }
                }
                combo.assign(next.begin(), next.end());
                std::erase_if(combo, [](auto& pr) { return pr.second == 0; });
                if (combo.empty()) break;
            }
            std::map<int, u32> out;  // candidate index -> coeff
            int a = word.back();
            for (auto& [ri, c] : combo) {
                const RawPath& r = residues[ri];
                if (quiver.arrows[a].src != r.tgt) continue;
                RawPath ext{r.src, quiver.arrows[a].tgt, r.arrows};
                ext.arrows.push_back(a);
                auto it = cand_index.find(key_of(ext));
                if (it != cand_index.end()) out[it->second] = F.add(out[it->second], c);
            }
            return out;
        };

        // relation rows of total degree d
        std::vector<std::map<int, u32>> rows;
        for (auto& [rlen, rels] : rel_by_len) {
            if (rlen > d) continue;
            for (int li = 0; li < int(residues.size()); ++li) {
                const RawPath& left = residues[li];
                for (const Relation* rel : rels) {
                    int rsrc = quiver.arrows[(*rel)[0].arrows[0]].src;
                    if (left.tgt != rsrc) continue;
                    int rtgt = (*rel)[0].arrows.empty() ? rsrc : quiver.arrows[(*rel)[0].arrows.back()].tgt;
                    int need = d - left.len() - rlen;
                    if (need < 0) continue;
                    for (int qi = 0; qi < int(residues.size()); ++qi) {
                        const RawPath& right = residues[qi];
                        if (right.len() != need || right.src != rtgt) continue;
                        std::map<int, u32> row;
                        for (const auto& term : *rel) {
                            std::vector<int> word = left.arrows;
                            word.insert(word.end(), term.arrows.begin(), term.arrows.end());
                            word.insert(word.end(), right.arrows.begin(), right.arrows.end());
                            auto part = reduce_to_cands(left.src, word);
                            for (auto& [ci, c] : part) row[ci] = F.add(row[ci], F.mul(c, term.coeff));
                        }
                        std::erase_if(row, [](auto& pr) { return pr.second == 0; });
                        if (!row.empty()) rows.push_back(std::move(row));
                    }
                }
            }
        }

        // echelonize rows over candidate coordinates
        FpMat M(int(rows.size()), int(cands.size()), F.p);
        for (int i = 0; i < int(rows.size()); ++i)
            for (auto& [j, c] : rows[i]) M.at(i, j) = c;
        std::vector<int> piv = rref(M);
        std::vector<bool> is_piv(cands.size(), false);
        for (int c : piv) is_piv[c] = true;

        std::vector<int> new_layer;
        for (int j = 0; j < int(cands.size()); ++j) {
            if (is_piv[j]) continue;
            push_residue(cands[j].path);
            new_layer.push_back(int(residues.size()) - 1);
        }
        if (int(residues.size()) > options.path_cap)
            throw InfiniteDimensional("residue path closure exceeds cap of " +
                                      std::to_string(options.path_cap));
        // pivots rewrite into the new residues of this degree
        for (std::size_t r = 0; r < piv.size(); ++r) {
            PathCombo combo;
            for (int j = 0; j < int(cands.size()); ++j) {
                if (j == piv[r] || M.at(int(r), j) == 0 || is_piv[j]) continue;
                combo.push_back({residue_id.at(key_of(cands[j].path)), F.neg(M.at(int(r), j))});
            }
            std::sort(combo.begin(), combo.end());
            nf[key_of(cands[piv[r]].path)] = std::move(combo);
        }
        if (new_layer.empty()) return install(std::move(residues), std::move(nf));
        if (d >= options.nilpotency_bound && quiver.has_directed_cycle()) {
            if (has_relation_free_cycle())
                throw InfiniteDimensional("a cycle avoids all relations; the algebra is infinite-dimensional");
            throw NonAdmissibleIdeal("no arrow-ideal power certified inside the ideal within bound " +
                                     std::to_string(options.nilpotency_bound));
        }
        prev_layer = std::move(new_layer);
    }
}

inline void BoundAlgebra::build_global(bool truncated) {
    Fp F = field;
    int bound = truncated ? options.nilpotency_bound : 0;

    for (int m = truncated ? 3 : 0;; ++m) {
        // enumerate raw paths, of length < m when truncated, everything otherwise
        std::vector<RawPath> raw;
        std::map<std::vector<int>, int> raw_id;
        for (int v = 0; v < nv(); ++v) {
            raw.push_back({v, v, {}});
            raw_id[key_of(raw.back())] = int(raw.size()) - 1;
        }
        std::size_t layer_start = 0;
        for (int d = 1; !truncated || d < m; ++d) {
            std::size_t layer_end = raw.size();
            for (std::size_t i = layer_start; i < layer_end; ++i)
                for (int a = 0; a < na(); ++a) {
                    if (quiver.arrows[a].src != raw[i].tgt) continue;
                    RawPath ext{raw[i].src, quiver.arrows[a].tgt, raw[i].arrows};
                    ext.arrows.push_back(a);
                    raw_id[key_of(ext)] = int(raw.size());
                    raw.push_back(std::move(ext));
                }
            if (raw.size() == layer_end) break;  // acyclic exhaustion
            layer_start = layer_end;
            int cap = truncated ? options.nongraded_raw_cap : options.path_cap;
            if (int(raw.size()) > cap)
                throw InfiniteDimensional("raw path closure exceeds cap of " + std::to_string(cap));
        }

        // column order: longest paths first so rewriting lowers length
        std::vector<int> order(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) order[i] = int(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return raw[x].len() > raw[y].len(); });
        std::vector<int> col_of(raw.size());
        for (std::size_t c = 0; c < order.size(); ++c) col_of[order[c]] = int(c);

        // ideal rows: all products p * rel * q that fit the table
        std::vector<std::map<int, u32>> rows;
        for (const auto& rel : relations) {
            int rsrc = quiver.arrows[rel[0].arrows[0]].src;
            int rtgt = quiver.arrows[rel[0].arrows.back()].tgt;
            for (const auto& left : raw) {
                if (left.tgt != rsrc) continue;
                for (const auto& right : raw) {
                    if (right.src != rtgt) continue;
                    std::map<int, u32> row;
                    bool any = false;
                    for (const auto& term : rel) {
                        std::vector<int> word = left.arrows;
                        word.insert(word.end(), term.arrows.begin(), term.arrows.end());
                        word.insert(word.end(), right.arrows.begin(), right.arrows.end());
                        std::vector<int> k;
                        k.push_back(left.src);
                        for (int a : word) k.push_back(a);
                        auto it = raw_id.find(k);
                        if (it == raw_id.end()) continue;  // truncated away
                        row[col_of[it->second]] = F.add(row[col_of[it->second]], term.coeff);
                        any = true;
                    }
                    std::erase_if(row, [](auto& pr) { return pr.second == 0; });
                    if (any && !row.empty()) rows.push_back(std::move(row));
                }
            }
        }

        FpMat M(int(rows.size()), int(raw.size()), F.p);
        for (int i = 0; i < int(rows.size()); ++i)
            for (auto& [j, c] : rows[i]) M.at(i, j) = c;
        std::vector<int> piv = rref(M);
        std::vector<bool> piv_col(raw.size(), false);
        for (int c : piv) piv_col[c] = true;

        bool top_clear = true;
        if (truncated)
            for (std::size_t c = 0; c < raw.size(); ++c)
                if (!piv_col[c] && raw[order[c]].len() >= m - 1) top_clear = false;

        if (truncated && !top_clear) {
            if (m >= bound) {
                if (has_relation_free_cycle())
                    throw InfiniteDimensional("a cycle avoids all relations; the algebra is infinite-dimensional");
                throw NonAdmissibleIdeal("no arrow-ideal power certified inside the ideal within bound " +
                                          std::to_string(bound));
            }
            continue;  // grow m
        }

        // collect residues in id order (length, then discovery)
        std::vector<RawPath> residues;
        std::vector<int> residue_col;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (!piv_col[col_of[i]]) {
                residues.push_back(raw[i]);
                residue_col.push_back(col_of[int(i)]);
            }
        if (int(residues.size()) > options.path_cap)
            throw InfiniteDimensional("residue path count exceeds cap");
        std::map<int, int> residue_of_col;
        for (std::size_t i = 0; i < residues.size(); ++i) residue_of_col[residue_col[i]] = int(i);

        std::map<std::vector<int>, PathCombo> nf;
        std::map<std::vector<int>, int> res_id;
        for (std::size_t i = 0; i < residues.size(); ++i) res_id[key_of(residues[i])] = int(i);
        for (std::size_t r = 0; r < piv.size(); ++r) {
            PathCombo combo;
            for (int j = 0; j < int(raw.size()); ++j) {
                if (j == piv[r] || M.at(int(r), j) == 0 || piv_col[j]) continue;
                combo.push_back({residue_of_col.at(j), F.neg(M.at(int(r), j))});
            }
            std::sort(combo.begin(), combo.end());
            nf[key_of(raw[order[piv[r]]])] = std::move(combo);
        }
        install(std::move(residues), std::move(nf));
        return;
    }
}

struct Verdict {
    bool ok = true;
    std::string error_kind;
    std::string message;
};

/// Non-throwing wrapper used by the CLI and tests.
inline Verdict validate_algebra(const Quiver& q, const std::vector<Relation>& rels, u32 prime,
                                ValidateOptions opts = {}) {
    try {
        BoundAlgebra a(q, rels, prime, opts);
        return {true, "", "ok, dimension " + std::to_string(a.dim())};
    } catch (const NonAdmissibleIdeal& e) {
        return {false, "NonAdmissibleIdeal", e.what()};
    } catch (const InfiniteDimensional& e) {
        return {false, "InfiniteDimensional", e.what()};
    } catch (const BadInput& e) {
        return {false, "BadInput", e.what()};
    }
}

}  // namespace nart
