#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "nart/algebra.hpp"

namespace nart {

/// A finite-dimensional representation: one space per vertex, one matrix per
/// arrow a: i -> j of shape dims[j] x dims[i].
struct Module {
    AlgebraPtr alg;
    std::vector<int> dims;
    std::vector<FpMat> action;

    int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
    bool is_zero_module() const { return total_dim() == 0; }

    /// Matrix of a path (temporal order) acting M_src -> M_tgt.
    FpMat path_action(int src, const std::vector<int>& word) const {
        FpMat m = FpMat::identity(dims[src], alg->field.p);
        for (int a : word) m = mul(action[a], m);
        return m;
    }

    bool satisfies_relations() const {
        Fp F = alg->field;
        for (const auto& rel : alg->relations) {
            int s = alg->quiver.arrows[rel[0].arrows[0]].src;
            int t = alg->quiver.arrows[rel[0].arrows.back()].tgt;
            FpMat sum(dims[t], dims[s], F.p);
            for (const auto& term : rel) {
                FpMat pa = path_action(s, term.arrows);
                for (std::size_t i = 0; i < sum.a.size(); ++i)
                    sum.a[i] = F.add(sum.a[i], F.mul(term.coeff, pa.a[i]));
            }
            if (!sum.is_zero()) return false;
        }
        return true;
    }
};

using ModulePtr = std::shared_ptr<const Module>;

inline ModulePtr make_module(AlgebraPtr alg, std::vector<int> dims, std::vector<FpMat> action) {
    auto m = std::make_shared<Module>(Module{std::move(alg), std::move(dims), std::move(action)});
    return m;
}

inline ModulePtr zero_module(const AlgebraPtr& alg) {
    std::vector<int> dims(alg->nv(), 0);
    std::vector<FpMat> act;
    for (int a = 0; a < alg->na(); ++a)
        act.emplace_back(0, 0, alg->field.p);
    return make_module(alg, std::move(dims), std::move(act));
}

inline ModulePtr simple_module(const AlgebraPtr& alg, int v) {
    std::vector<int> dims(alg->nv(), 0);
    dims[v] = 1;
    std::vector<FpMat> act;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        act.emplace_back(dims[ar.tgt], dims[ar.src], alg->field.p);
    }
    return make_module(alg, std::move(dims), std::move(act));
}

/// P_v = Lambda e_v, spanned by residue paths starting at v.
inline ModulePtr projective_module(const AlgebraPtr& alg, int v) {
    std::vector<int> ids = alg->paths_from(v);
    // position of each path id inside its target-vertex block
    std::vector<int> pos(alg->dim(), -1);
    std::vector<int> dims(alg->nv(), 0);
    for (int id : ids) pos[id] = dims[alg->basis[id].tgt]++;
    std::vector<FpMat> act;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        FpMat m(dims[ar.tgt], dims[ar.src], alg->field.p);
        for (int id : ids) {
            if (alg->basis[id].tgt != ar.src) continue;
            for (auto& [rid, c] : alg->append_nf(id, a)) m.at(pos[rid], pos[id]) = c;
        }
        act.push_back(std::move(m));
    }
    return make_module(alg, std::move(dims), std::move(act));
}

/// Module over the opposite algebra with transposed action.
inline ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& op) {
    if (m->alg->opposite()->signature() != op->signature())
        throw AlgebraMismatch("dual target is not the opposite algebra");
    std::vector<FpMat> act;
    for (int a = 0; a < op->na(); ++a) act.push_back(transpose(m->action[a]));
    return make_module(op, m->dims, std::move(act));
}

inline ModulePtr injective_module(const AlgebraPtr& alg, const AlgebraPtr& op, int v) {
    return dual_module(projective_module(op, v), alg);
}

struct StandardModules {
    std::vector<ModulePtr> simples;
    std::vector<ModulePtr> projectives;
    std::vector<ModulePtr> injectives;
};

inline StandardModules standard_modules(const AlgebraPtr& alg) {
    StandardModules out;
    AlgebraPtr op = alg->opposite();
    for (int v = 0; v < alg->nv(); ++v) {
        out.simples.push_back(simple_module(alg, v));
        out.projectives.push_back(projective_module(alg, v));
        out.injectives.push_back(injective_module(alg, op, v));
    }
    return out;
}

inline ModulePtr direct_sum(const ModulePtr& x, const ModulePtr& y) {
    check_same_algebra(x->alg, y->alg);
    std::vector<int> dims(x->dims);
    for (int v = 0; v < int(dims.size()); ++v) dims[v] += y->dims[v];
    std::vector<FpMat> act;
    for (int a = 0; a < x->alg->na(); ++a) act.push_back(dsum(x->action[a], y->action[a]));
    return make_module(x->alg, std::move(dims), std::move(act));
}

inline ModulePtr direct_sum(const AlgebraPtr& alg, const std::vector<ModulePtr>& parts) {
    ModulePtr s = zero_module(alg);
    for (const auto& m : parts) s = direct_sum(s, m);
    return s;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

struct Morphism {
    ModulePtr src, tgt;
    std::vector<FpMat> blocks;  // per vertex, shape tgt.dims[v] x src.dims[v]

    bool intertwines() const {
        for (int a = 0; a < src->alg->na(); ++a) {
            const Arrow& ar = src->alg->quiver.arrows[a];
            if (!(mul(tgt->action[a], blocks[ar.src]) == mul(blocks[ar.tgt], src->action[a])))
                return false;
        }
        return true;
    }
    bool is_zero_map() const {
        for (const auto& b : blocks)
            if (!b.is_zero()) return false;
        return true;
    }
    bool is_iso() const {
        for (const auto& b : blocks)
            if (b.rows != b.cols || !is_invertible(b)) return false;
        return true;
    }
};

inline Morphism zero_morphism(const ModulePtr& x, const ModulePtr& y) {
    std::vector<FpMat> blocks;
    for (int v = 0; v < x->alg->nv(); ++v)
        blocks.emplace_back(y->dims[v], x->dims[v], x->alg->field.p);
    return {x, y, std::move(blocks)};
}

inline Morphism identity_morphism(const ModulePtr& x) {
    std::vector<FpMat> blocks;
    for (int v = 0; v < x->alg->nv(); ++v)
        blocks.push_back(FpMat::identity(x->dims[v], x->alg->field.p));
    return {x, x, std::move(blocks)};
}

inline Morphism compose(const Morphism& g, const Morphism& f) {
    // g after f
    std::vector<FpMat> blocks;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(mul(g.blocks[v], f.blocks[v]));
    return {f.src, g.tgt, std::move(blocks)};
}

inline Morphism add_morphisms(const Morphism& f, const Morphism& g) {
    std::vector<FpMat> blocks;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(add(f.blocks[v], g.blocks[v]));
    return {f.src, f.tgt, std::move(blocks)};
}

inline Morphism scale_morphism(const Morphism& f, u32 c) {
    std::vector<FpMat> blocks;
    for (const auto& b : f.blocks) blocks.push_back(scale(b, c));
    return {f.src, f.tgt, std::move(blocks)};
}

/// Total-space trace of an endomorphism-shaped composite.
inline u32 total_trace(const Morphism& f) {
    Fp F(f.src->alg->field);
    u32 t = 0;
    for (const auto& b : f.blocks) t = F.add(t, trace(b));
    return t;
}

/// Block injection X_i -> X_1 + ... + X_k at position i (0-based), given parts.
inline Morphism summand_inclusion(const std::vector<ModulePtr>& parts, const ModulePtr& sum, int i) {
    Morphism m = zero_morphism(parts[i], sum);
    for (int v = 0; v < parts[i]->alg->nv(); ++v) {
        int off = 0;
        for (int j = 0; j < i; ++j) off += parts[j]->dims[v];
        for (int r = 0; r < parts[i]->dims[v]; ++r) m.blocks[v].at(off + r, r) = 1;
    }
    return m;
}

inline Morphism summand_projection(const std::vector<ModulePtr>& parts, const ModulePtr& sum, int i) {
    Morphism m = zero_morphism(sum, parts[i]);
    for (int v = 0; v < parts[i]->alg->nv(); ++v) {
        int off = 0;
        for (int j = 0; j < i; ++j) off += parts[j]->dims[v];
        for (int r = 0; r < parts[i]->dims[v]; ++r) m.blocks[v].at(r, off + r) = 1;
    }
    return m;
}

/// Assemble a map from a direct sum out of component maps f_i : X_i -> Y.
inline Morphism from_components(const std::vector<ModulePtr>& parts, const ModulePtr& sum,
                                const ModulePtr& target, const std::vector<Morphism>& comps) {
    Morphism m = zero_morphism(sum, target);
    for (int v = 0; v < target->alg->nv(); ++v) {
        int off = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (int r = 0; r < target->dims[v]; ++r)
                for (int c = 0; c < parts[i]->dims[v]; ++c)
                    m.blocks[v].at(r, off + c) = comps[i].blocks[v].at(r, c);
            off += parts[i]->dims[v];
        }
    }
    return m;
}

/// Direct sum of morphisms (block diagonal).
inline Morphism dsum_morphisms(const Morphism& f, const Morphism& g) {
    ModulePtr s = direct_sum(f.src, g.src), t = direct_sum(f.tgt, g.tgt);
    std::vector<FpMat> blocks;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(dsum(f.blocks[v], g.blocks[v]));
    return {s, t, std::move(blocks)};
}

// ---------------------------------------------------------------------------
// Kernel / image / cokernel
// ---------------------------------------------------------------------------

struct Factorization {
    ModulePtr kernel;
    Morphism ker_incl;   // kernel -> source, mono
    ModulePtr image;
    Morphism img_incl;   // image -> target, mono
    Morphism img_proj;   // source -> image, epi
    ModulePtr cokernel;
    Morphism coker_proj; // target -> cokernel, epi
};

namespace detail {

/// Column-space basis of M as matrix columns (echelonized).
inline FpMat colspace(const FpMat& M) {
    return transpose(row_basis(transpose(M)));
}

struct Quotient {
    FpMat proj;     // quotient coords x ambient
    FpMat section;  // ambient x quotient coords
};

/// Quotient of k^n by the column space of sub (n x r).
inline Quotient quotient_by(const FpMat& sub, int n, u32 p) {
    Fp F(p);
    FpMat R = row_basis(transpose(sub));  // rows span the subspace
    std::vector<int> piv;
    {
        FpMat tmp = R;
        piv = rref(tmp);
        R = tmp;
    }
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    int q = n - int(piv.size());
    Quotient out{FpMat(q, n, p), FpMat(n, q, p)};
    // reduce each standard basis vector modulo the subspace, read complement coords
    std::vector<int> comp;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) comp.push_back(c);
    for (int e = 0; e < n; ++e) {
        std::vector<u32> v(n, 0);
        v[e] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            u32 c = v[piv[r]];
            if (!c) continue;
            for (int j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, R.at(int(r), j)));
        }
        for (int i = 0; i < q; ++i) out.proj.at(i, e) = v[comp[i]];
    }
    for (int i = 0; i < q; ++i) out.section.at(comp[i], i) = 1;
    return out;
}

}  // namespace detail

/// Exact decomposition 0 -> ker -> source -> target -> coker with image in the middle.
inline Factorization factorize(const Morphism& f) {
    const AlgebraPtr& alg = f.src->alg;
    u32 p = alg->field.p;
    int nv = alg->nv();

    std::vector<FpMat> kbasis, ibasis;
    std::vector<detail::Quotient> quots;
    std::vector<int> kdims(nv), idims(nv), cdims(nv);
    for (int v = 0; v < nv; ++v) {
        kbasis.push_back(nullspace(f.blocks[v]));
        ibasis.push_back(detail::colspace(f.blocks[v]));
        quots.push_back(detail::quotient_by(ibasis[v], f.tgt->dims[v], p));
        kdims[v] = kbasis[v].cols;
        idims[v] = ibasis[v].cols;
        cdims[v] = quots[v].proj.rows;
    }

    std::vector<FpMat> kact, iact, cact;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        // kernel action: X_a maps ker_v into ker_w; solve coordinates
        LinSolver kw(kbasis[ar.tgt]);
        FpMat ka(kdims[ar.tgt], kdims[ar.src], p);
        FpMat moved = mul(f.src->action[a], kbasis[ar.src]);
        for (int c = 0; c < kdims[ar.src]; ++c) {
            std::vector<u32> col(moved.rows);
            for (int r = 0; r < moved.rows; ++r) col[r] = moved.at(r, c);
            auto sol = kw.solve(col);
            if (!sol) throw Error("kernel is not a subrepresentation (broken morphism)");
            for (int r = 0; r < kdims[ar.tgt]; ++r) ka.at(r, c) = (*sol)[r];
        }
        kact.push_back(std::move(ka));

        LinSolver iw(ibasis[ar.tgt]);
        FpMat ia(idims[ar.tgt], idims[ar.src], p);
        FpMat imoved = mul(f.tgt->action[a], ibasis[ar.src]);
        for (int c = 0; c < idims[ar.src]; ++c) {
            std::vector<u32> col(imoved.rows);
            for (int r = 0; r < imoved.rows; ++r) col[r] = imoved.at(r, c);
            auto sol = iw.solve(col);
            if (!sol) throw Error("image is not a subrepresentation (broken morphism)");
            for (int r = 0; r < idims[ar.tgt]; ++r) ia.at(r, c) = (*sol)[r];
        }
        iact.push_back(std::move(ia));

        cact.push_back(mul(quots[ar.tgt].proj, mul(f.tgt->action[a], quots[ar.src].section)));
    }

    Factorization out;
    out.kernel = make_module(alg, kdims, std::move(kact));
    out.image = make_module(alg, idims, std::move(iact));
    out.cokernel = make_module(alg, cdims, std::move(cact));
    out.ker_incl = {out.kernel, f.src, kbasis};
    out.img_incl = {out.image, f.tgt, ibasis};
    // source -> image coordinates
    std::vector<FpMat> projb;
    for (int v = 0; v < nv; ++v) {
        LinSolver iw(ibasis[v]);
        FpMat pb(idims[v], f.src->dims[v], p);
        for (int c = 0; c < f.src->dims[v]; ++c) {
            std::vector<u32> col(f.tgt->dims[v]);
            for (int r = 0; r < f.tgt->dims[v]; ++r) col[r] = f.blocks[v].at(r, c);
            auto sol = iw.solve(col);
            for (int r = 0; r < idims[v]; ++r) pb.at(r, c) = (*sol)[r];
        }
        projb.push_back(std::move(pb));
    }
    out.img_proj = {f.src, out.image, std::move(projb)};
    std::vector<FpMat> cp;
    for (int v = 0; v < nv; ++v) cp.push_back(quots[v].proj);
    out.coker_proj = {f.tgt, out.cokernel, std::move(cp)};
    return out;
}

/// rad M = sum of arrow images (the arrow ideal radical of a bound quiver algebra).
inline Factorization radical_submodule(const ModulePtr& m) {
    // realized as the image of the assembled map +_{a: v->w} M_v -> M_w;
    // build a morphism from the direct sum of shifted copies.
    const AlgebraPtr& alg = m->alg;
    u32 p = alg->field.p;
    int nv = alg->nv();
    // Per-vertex column span of all incoming arrow images.
    std::vector<FpMat> span;
    for (int w = 0; w < nv; ++w) {
        FpMat cols(m->dims[w], 0, p);
        for (int a = 0; a < alg->na(); ++a)
            if (alg->quiver.arrows[a].tgt == w) cols = hstack(cols, m->action[a]);
        span.push_back(detail::colspace(cols));
    }
    // The radical inclusion is a morphism: arrows map rad into rad.
    std::vector<int> rdims(nv);
    for (int v = 0; v < nv; ++v) rdims[v] = span[v].cols;
    std::vector<FpMat> ract;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        LinSolver sw(span[ar.tgt]);
        FpMat ra(rdims[ar.tgt], rdims[ar.src], p);
        FpMat moved = mul(m->action[a], span[ar.src]);
        for (int c = 0; c < rdims[ar.src]; ++c) {
            std::vector<u32> col(moved.rows);
            for (int r = 0; r < moved.rows; ++r) col[r] = moved.at(r, c);
            auto sol = sw.solve(col);
            if (!sol) throw Error("radical span inconsistency");
            for (int r = 0; r < rdims[ar.tgt]; ++r) ra.at(r, c) = (*sol)[r];
        }
        ract.push_back(std::move(ra));
    }
    ModulePtr rad = make_module(alg, rdims, std::move(ract));
    Morphism incl{rad, m, span};
    return factorize(incl);  // image == rad; gives top as cokernel too
}

}  // namespace nart
