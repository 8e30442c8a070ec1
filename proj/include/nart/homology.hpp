#pragma once

#include <deque>
#include <map>

#include "nart/hom.hpp"

namespace nart {

// ---------------------------------------------------------------------------
// Projective covers and minimal presentations
// ---------------------------------------------------------------------------

struct ProjInfo {
    ModulePtr P;
    int vertex = 0;
    std::vector<int> ids;        // residue path ids, basis of P
    std::vector<int> pos;        // pos[id] = index inside its target-vertex block
};

inline ProjInfo projective_with_info(const AlgebraPtr& alg, int v) {
    ProjInfo info;
    info.vertex = v;
    info.ids = alg->paths_from(v);
    info.pos.assign(alg->dim(), -1);
    std::vector<int> counter(alg->nv(), 0);
    for (int id : info.ids) info.pos[id] = counter[alg->basis[id].tgt]++;
    info.P = projective_module(alg, v);
    return info;
}

/// Morphism P_v -> X determined by a generator x in X_v.
inline Morphism projective_morphism(const ProjInfo& pv, const ModulePtr& x,
                                    const std::vector<u32>& gen) {
    Morphism f = zero_morphism(pv.P, x);
    for (int id : pv.ids) {
        const ResiduePath& rp = x->alg->basis[id];
        FpMat pa = x->path_action(pv.vertex, rp.arrows);
        std::vector<u32> img = mat_vec(pa, gen);
        for (int r = 0; r < x->dims[rp.tgt]; ++r) f.blocks[rp.tgt].at(r, pv.pos[id]) = img[r];
    }
    return f;
}

struct Cover {
    std::vector<ProjInfo> parts;  // copies, one per generator
    ModulePtr P;
    Morphism epi;  // P -> M
};

/// Projective cover: one projective copy per top generator.
inline Cover projective_cover(const ModulePtr& m) {
    const AlgebraPtr& alg = m->alg;
    u32 p = alg->field.p;
    Cover cov;
    std::vector<Morphism> comps;
    std::vector<ModulePtr> partmods;
    std::vector<std::pair<int, std::vector<u32>>> gens;  // (vertex, generator)
    for (int v = 0; v < alg->nv(); ++v) {
        // complement of rad_v = sum of incoming arrow images inside M_v
        FpMat cols(m->dims[v], 0, p);
        for (int a = 0; a < alg->na(); ++a)
            if (alg->quiver.arrows[a].tgt == v) cols = hstack(cols, m->action[a]);
        FpMat R = row_basis(transpose(cols));
        std::vector<int> piv;
        {
            FpMat tmp = R;
            piv = rref(tmp);
        }
        std::vector<bool> is_piv(m->dims[v], false);
        for (int c : piv) is_piv[c] = true;
        for (int j = 0; j < m->dims[v]; ++j) {
            if (is_piv[j]) continue;
            std::vector<u32> g(m->dims[v], 0);
            g[j] = 1;
            gens.push_back({v, g});
        }
    }
    for (auto& [v, g] : gens) {
        cov.parts.push_back(projective_with_info(alg, v));
        partmods.push_back(cov.parts.back().P);
    }
    cov.P = direct_sum(alg, partmods);
    for (std::size_t i = 0; i < gens.size(); ++i)
        comps.push_back(projective_morphism(cov.parts[i], m, gens[i].second));
    cov.epi = from_components(partmods, cov.P, m, comps);
    return cov;
}

inline bool is_projective(const ModulePtr& m) {
    if (m->total_dim() == 0) return true;
    Cover c = projective_cover(m);
    return factorize(c.epi).kernel->total_dim() == 0;
}

inline bool is_injective_module(const ModulePtr& m) {
    if (m->total_dim() == 0) return true;
    return is_projective(dual_module(m, m->alg->opposite()));
}

struct MinPresentation {
    Cover cover0;        // P0 -> M
    ModulePtr omega;     // ker(P0 -> M)
    Morphism omega_incl; // omega -> P0
    Cover cover1;        // P1 -> omega
    Morphism d;          // P1 -> P0
};

inline MinPresentation minimal_presentation(const ModulePtr& m) {
    MinPresentation pres;
    pres.cover0 = projective_cover(m);
    Factorization f = factorize(pres.cover0.epi);
    pres.omega = f.kernel;
    pres.omega_incl = f.ker_incl;
    pres.cover1 = projective_cover(pres.omega);
    pres.d = compose(pres.omega_incl, pres.cover1.epi);
    return pres;
}

// ---------------------------------------------------------------------------
// Ext groups from minimal projective resolutions
// ---------------------------------------------------------------------------

/// Matrix of Hom(B, Y) -> Hom(A, Y), g -> g . f, for f : A -> B, in hom bases.
inline FpMat precompose_matrix(const HomSpace& homBY, const Morphism& f, const HomSpace& homAY) {
    FpMat M(homAY.dim(), homBY.dim(), f.src->alg->field.p);
    for (int j = 0; j < homBY.dim(); ++j) {
        auto c = homAY.coords(compose(homBY.basis[j], f));
        for (int i = 0; i < homAY.dim(); ++i) M.at(i, j) = c[i];
    }
    return M;
}

/// Matrix of Hom(N, A) -> Hom(N, B), g -> f . g, for f : A -> B.
inline FpMat postcompose_matrix(const HomSpace& homNA, const Morphism& f, const HomSpace& homNB) {
    FpMat M(homNB.dim(), homNA.dim(), f.src->alg->field.p);
    for (int j = 0; j < homNA.dim(); ++j) {
        auto c = homNB.coords(compose(f, homNA.basis[j]));
        for (int i = 0; i < homNB.dim(); ++i) M.at(i, j) = c[i];
    }
    return M;
}

/// dim Ext^i(X, Y), i >= 1, via a minimal projective resolution of X.
inline int ext_dim(const ModulePtr& x, const ModulePtr& y, int i) {
    check_same_algebra(x->alg, y->alg);
    if (i < 1) throw BadInput("ext_dim needs i >= 1");
    // build resolution terms P_0 .. P_{i+1} and differentials d_k : P_k -> P_{k-1}
    std::vector<ModulePtr> P;
    std::vector<Morphism> d;
    Cover c0 = projective_cover(x);
    P.push_back(c0.P);
    ModulePtr omega = factorize(c0.epi).kernel;
    Morphism incl = factorize(c0.epi).ker_incl;
    for (int k = 1; k <= i + 1; ++k) {
        Cover ck = projective_cover(omega);
        P.push_back(ck.P);
        d.push_back(compose(incl, ck.epi));
        Factorization f = factorize(ck.epi);
        omega = f.kernel;
        incl = f.ker_incl;
    }
    HomSpace h_i = hom_basis(P[i], y);
    HomSpace h_ip = hom_basis(P[i + 1], y);
    HomSpace h_im = hom_basis(P[i - 1], y);
    FpMat out = precompose_matrix(h_i, d[i], h_ip);      // d_{i+1} : P_{i+1} -> P_i
    FpMat in = precompose_matrix(h_im, d[i - 1], h_i);   // d_i : P_i -> P_{i-1}
    int cocycles = h_i.dim() - rank(out);
    int cobound = rank(in);
    return cocycles - cobound;
}

// ---------------------------------------------------------------------------
// Transpose, AR translate
// ---------------------------------------------------------------------------

/// Tr M over the opposite algebra; target must be alg->opposite() (or the
/// original algebra when m itself lives over an opposite).
inline ModulePtr transpose_module(const ModulePtr& m, const AlgebraPtr& target) {
    const AlgebraPtr& alg = m->alg;
    if (m->total_dim() == 0) return zero_module(target);
    MinPresentation pres = minimal_presentation(m);

    // extract algebra-element entries lambda_{jk} of d : P1 -> P0
    const auto& parts0 = pres.cover0.parts;
    const auto& parts1 = pres.cover1.parts;
    // offsets of copies inside the direct sums, per vertex
    auto offsets = [&](const std::vector<ProjInfo>& parts) {
        std::vector<std::vector<int>> off(parts.size(), std::vector<int>(alg->nv(), 0));
        std::vector<int> run(alg->nv(), 0);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (int v = 0; v < alg->nv(); ++v) {
                off[i][v] = run[v];
                run[v] += parts[i].P->dims[v];
            }
        }
        return off;
    };
    auto off0 = offsets(parts0), off1 = offsets(parts1);

    // op-side projectives
    std::vector<ProjInfo> q0, q1;
    for (const auto& pi : parts0) q0.push_back(projective_with_info(target, pi.vertex));
    for (const auto& pi : parts1) q1.push_back(projective_with_info(target, pi.vertex));
    std::vector<ModulePtr> q0mods, q1mods;
    for (auto& q : q0) q0mods.push_back(q.P);
    for (auto& q : q1) q1mods.push_back(q.P);
    ModulePtr Q0 = direct_sum(target, q0mods), Q1 = direct_sum(target, q1mods);
    auto qoff0 = offsets(q0), qoff1 = offsets(q1);

    Morphism D = zero_morphism(Q0, Q1);
    Fp F(alg->field);
    for (std::size_t j = 0; j < parts0.size(); ++j) {
        for (std::size_t k = 0; k < parts1.size(); ++k) {
            int wk = parts1[k].vertex, vj = parts0[j].vertex;
            // lambda = d-component evaluated on the trivial path of P(w_k):
            // read rows of block at vertex wk belonging to copy j.
            int triv = alg->trivial_path_id(wk);
            int col = off1[k][wk] + parts1[k].pos[triv];
            std::vector<std::pair<int, u32>> lambda;  // (path id vj -> wk, coeff)
            for (int id : parts0[j].ids) {
                if (alg->basis[id].tgt != wk) continue;
                u32 c = pres.d.blocks[wk].at(off0[j][wk] + parts0[j].pos[id], col);
                if (c) lambda.push_back({id, c});
            }
            if (lambda.empty()) continue;
            // block (k, j): P^op(vj) -> P^op(wk), prepend reversed lambda
            for (int rid : q0[j].ids) {  // op-residue path vj -> u
                const ResiduePath& rho = target->basis[rid];
                int u = rho.tgt;
                int colq = qoff0[j][u] + q0[j].pos[rid];
                for (auto& [lid, lc] : lambda) {
                    std::vector<int> word = alg->basis[lid].arrows;
                    std::reverse(word.begin(), word.end());
                    word.insert(word.end(), rho.arrows.begin(), rho.arrows.end());
                    PathCombo img = target->reduce_word(wk, word);
                    for (auto& [iid, ic] : img) {
                        int row = qoff1[k][u] + q1[k].pos[iid];
                        D.blocks[u].at(row, colq) = F.add(D.blocks[u].at(row, colq), F.mul(lc, ic));
                    }
                }
            }
        }
    }
    if (!D.intertwines()) throw Error("transpose: assembled map is not a morphism");
    return factorize(D).cokernel;
}

/// tau = D Tr on indecomposable non-projectives.
inline ModulePtr ar_translate(const ModulePtr& m) {
    if (is_projective(m)) throw ProjectiveInput("AR translate of a projective module");
    AlgebraPtr op = m->alg->opposite();
    ModulePtr tr = transpose_module(m, op);
    return dual_module(tr, m->alg);
}

/// tau^{-1} = Tr D on indecomposable non-injectives.
inline ModulePtr ar_translate_inverse(const ModulePtr& m) {
    if (is_injective_module(m)) throw ProjectiveInput("inverse AR translate of an injective module");
    AlgebraPtr op = m->alg->opposite();
    ModulePtr dm = dual_module(m, op);
    return transpose_module(dm, m->alg);
}

// ---------------------------------------------------------------------------
// Almost split sequences (n = 1) via the socle of Ext^1(C, tau C)
// ---------------------------------------------------------------------------

struct ShortExact {
    ModulePtr left, middle, right;
    Morphism f;  // left -> middle
    Morphism g;  // middle -> right
};

namespace detail {

/// Lift phi : C -> C through the cover P0 -> C, then restrict to omega.
inline Morphism lift_to_omega(const MinPresentation& pres, const ModulePtr& c,
                              const Morphism& phi) {
    // solve for phihat : P0 -> P0 with epi . phihat = phi . epi
    HomSpace hP0 = hom_basis(pres.cover0.P, pres.cover0.P);
    HomSpace hP0C = hom_basis(pres.cover0.P, c);
    FpMat post = postcompose_matrix(hP0, pres.cover0.epi, hP0C);  // psi -> epi . psi
    auto target = hP0C.coords(compose(phi, pres.cover0.epi));
    LinSolver ls(post);
    auto sol = ls.solve(target);
    if (!sol) throw Error("projective lifting failed");
    Morphism phihat = hP0.from_coords(*sol);
    // restrict to omega: solve omega_incl coords
    Morphism moved = compose(phihat, pres.omega_incl);  // omega -> P0
    Morphism omega_map = zero_morphism(pres.omega, pres.omega);
    for (int v = 0; v < c->alg->nv(); ++v) {
        LinSolver kb(pres.omega_incl.blocks[v]);
        for (int col = 0; col < pres.omega->dims[v]; ++col) {
            std::vector<u32> colv(moved.blocks[v].rows);
            for (int r = 0; r < moved.blocks[v].rows; ++r) colv[r] = moved.blocks[v].at(r, col);
            auto s = kb.solve(colv);
            if (!s) throw Error("omega restriction failed");
            for (int r = 0; r < pres.omega->dims[v]; ++r) omega_map.blocks[v].at(r, col) = (*s)[r];
        }
    }
    return omega_map;
}

/// Pushout extension of 0 -> omega -> P0 -> C -> 0 along g : omega -> Y.
inline ShortExact extension_from_cocycle(const MinPresentation& pres, const ModulePtr& c,
                                         const ModulePtr& y, const Morphism& g) {
    const AlgebraPtr& alg = c->alg;
    // h = (g, -incl) : omega -> Y + P0
    ModulePtr YP = direct_sum(y, pres.cover0.P);
    Morphism h = zero_morphism(pres.omega, YP);
    for (int v = 0; v < alg->nv(); ++v) {
        for (int r = 0; r < y->dims[v]; ++r)
            for (int cc = 0; cc < pres.omega->dims[v]; ++cc)
                h.blocks[v].at(r, cc) = g.blocks[v].at(r, cc);
        Fp F(alg->field);
        for (int r = 0; r < pres.cover0.P->dims[v]; ++r)
            for (int cc = 0; cc < pres.omega->dims[v]; ++cc)
                h.blocks[v].at(y->dims[v] + r, cc) = F.neg(pres.omega_incl.blocks[v].at(r, cc));
    }
    Factorization fh = factorize(h);
    ModulePtr E = fh.cokernel;
    Morphism q = fh.coker_proj;  // Y + P0 -> E
    // f : Y -> E
    std::vector<ModulePtr> parts{y, pres.cover0.P};
    Morphism f = compose(q, summand_inclusion(parts, YP, 0));
    // gbar : E -> C from (0, epi) : Y + P0 -> C, factoring through q
    Morphism m0 = from_components(parts, YP, c,
                                  {zero_morphism(y, c), pres.cover0.epi});
    Morphism gbar = zero_morphism(E, c);
    for (int v = 0; v < alg->nv(); ++v) {
        LinSolver qs(transpose(q.blocks[v]));
        // solve gbar[v] * q[v] = m0[v]  row by row: q^T gbar^T = m0^T
        for (int r = 0; r < c->dims[v]; ++r) {
            std::vector<u32> row(m0.blocks[v].cols);
            for (int cc = 0; cc < m0.blocks[v].cols; ++cc) row[cc] = m0.blocks[v].at(r, cc);
            auto s = qs.solve(row);
            if (!s) throw Error("cokernel factorization failed");
            for (int cc = 0; cc < E->dims[v]; ++cc) gbar.blocks[v].at(r, cc) = (*s)[cc];
        }
    }
    return {y, E, c, f, gbar};
}

}  // namespace detail

/// The almost split sequence 0 -> tau C -> E -> C -> 0 for indecomposable
/// non-projective C: a nonzero class in the two-sided socle of Ext^1(C, tau C).
inline ShortExact almost_split_sequence(const ModulePtr& c, Rng& rng) {
    if (is_projective(c)) throw ProjectiveInput("almost split sequence needs a non-projective end");
    const AlgebraPtr& alg = c->alg;
    Fp F(alg->field);
    ModulePtr tc = ar_translate(c);
    MinPresentation pres = minimal_presentation(c);

    HomSpace hOY = hom_basis(pres.omega, tc);
    HomSpace hP0Y = hom_basis(pres.cover0.P, tc);
    FpMat bound = precompose_matrix(hP0Y, pres.omega_incl, hOY);  // image = coboundaries
    detail::Quotient ext = detail::quotient_by(detail::colspace(bound), hOY.dim(), F.p);
    int edim = ext.proj.rows;
    if (edim == 0) throw SocleSearchFailure("Ext^1(C, tauC) vanished unexpectedly");

    // socle conditions from rad End(C) (right action, via omega lifts)
    std::vector<FpMat> conditions;
    {
        RadicalHom re = radical_hom_basis(c, c);
        for (const Morphism& r : re.basis()) {
            Morphism omega_r = detail::lift_to_omega(pres, c, r);
            FpMat act(hOY.dim(), hOY.dim(), F.p);
            for (int j = 0; j < hOY.dim(); ++j) {
                auto cc = hOY.coords(compose(hOY.basis[j], omega_r));
                for (int i = 0; i < hOY.dim(); ++i) act.at(i, j) = cc[i];
            }
            conditions.push_back(mul(ext.proj, mul(act, ext.section)));
        }
        RadicalHom rt = radical_hom_basis(tc, tc);
        for (const Morphism& r : rt.basis()) {
            FpMat act(hOY.dim(), hOY.dim(), F.p);
            for (int j = 0; j < hOY.dim(); ++j) {
                auto cc = hOY.coords(compose(r, hOY.basis[j]));
                for (int i = 0; i < hOY.dim(); ++i) act.at(i, j) = cc[i];
            }
            conditions.push_back(mul(ext.proj, mul(act, ext.section)));
        }
    }
    FpMat stacked(0, edim, F.p);
    for (auto& cmat : conditions) stacked = vstack(stacked, cmat);
    FpMat socle = conditions.empty() ? FpMat::identity(edim, F.p) : nullspace(stacked);
    if (socle.cols == 0) throw SocleSearchFailure("socle of Ext^1(C, tauC) is zero");

    for (int cand = 0; cand < socle.cols; ++cand) {
        std::vector<u32> ec(edim);
        for (int i = 0; i < edim; ++i) ec[i] = socle.at(i, cand);
        std::vector<u32> gc = mat_vec(ext.section, ec);
        Morphism g = hOY.from_coords(gc);
        ShortExact ses = detail::extension_from_cocycle(pres, c, tc, g);
        // a nonzero class gives a non-split extension of the right size
        if (ses.middle->total_dim() != tc->total_dim() + c->total_dim()) continue;
        return ses;
    }
    (void)rng;
    throw SocleSearchFailure("no socle candidate produced a valid extension");
}

// ---------------------------------------------------------------------------
// AR quiver by closure under meshes
// ---------------------------------------------------------------------------

struct ARQuiver {
    AlgebraPtr alg;
    std::vector<ModulePtr> indecs;
    std::vector<bool> is_proj, is_inj;
    std::map<int, int> tau;       // non-projective id -> id of tau
    std::map<int, int> tau_inv;
    std::map<std::pair<int, int>, int> irr;  // irreducible map multiplicities
    bool complete = false;

    int find(const ModulePtr& m) const {
        for (std::size_t i = 0; i < indecs.size(); ++i)
            if (indecs[i]->dims == m->dims && is_isomorphic_indec(indecs[i], m)) return int(i);
        return -1;
    }
};

inline ARQuiver knit_ar_quiver(const AlgebraPtr& alg, int cap, Rng& rng) {
    ARQuiver ar;
    ar.alg = alg;
    std::deque<int> work;
    auto add = [&](const ModulePtr& m) -> int {
        if (m->total_dim() == 0) return -1;
        int at = ar.find(m);
        if (at >= 0) return at;
        ar.indecs.push_back(m);
        work.push_back(int(ar.indecs.size()) - 1);
        return int(ar.indecs.size()) - 1;
    };

    AlgebraPtr op = alg->opposite();
    for (int v = 0; v < alg->nv(); ++v) {
        ModulePtr P = projective_module(alg, v);
        add(P);
        // summands of rad P carry the irreducible maps into P
        for (auto& [part, mult] : decompose(radical_submodule(P).image, rng)) add(part);
    }
    for (int v = 0; v < alg->nv(); ++v) {
        ModulePtr I = injective_module(alg, op, v);
        add(I);
        // dually, summands of I / soc I
        ModulePtr dI = dual_module(I, op);
        ModulePtr rad_dI = radical_submodule(dI).image;
        for (auto& [part, mult] : decompose(dual_module(rad_dI, alg), rng)) add(part);
    }

    bool overflow = false;
    while (!work.empty()) {
        if (int(ar.indecs.size()) > cap) {
            overflow = true;
            break;
        }
        int i = work.front();
        work.pop_front();
        ModulePtr x = ar.indecs[i];
        if (!is_projective(x)) {
            ShortExact ses = almost_split_sequence(x, rng);
            int t = add(ses.left);
            if (t >= 0) {
                ar.tau[i] = t;
                ar.tau_inv[t] = i;
            }
            for (auto& [part, mult] : decompose(ses.middle, rng)) add(part);
        }
        if (!is_injective_module(x)) {
            ModulePtr ti = ar_translate_inverse(x);
            ShortExact ses = almost_split_sequence(ti, rng);
            int t = add(ti);
            if (t >= 0) {
                ar.tau[t] = i;
                ar.tau_inv[i] = t;
            }
            for (auto& [part, mult] : decompose(ses.middle, rng)) add(part);
        }
    }
    ar.complete = !overflow && int(ar.indecs.size()) <= cap;
    ar.is_proj.resize(ar.indecs.size());
    ar.is_inj.resize(ar.indecs.size());
    for (std::size_t i = 0; i < ar.indecs.size(); ++i) {
        ar.is_proj[i] = is_projective(ar.indecs[i]);
        ar.is_inj[i] = is_injective_module(ar.indecs[i]);
    }
    if (!ar.complete) return ar;

    // irreducible multiplicities: dim J(X,Y)/J^2(X,Y)
    int n = int(ar.indecs.size());
    std::vector<std::vector<RadicalHom>> rad(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rad[i].push_back(radical_hom_basis(ar.indecs[i], ar.indecs[j]));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RadicalHom& rij = rad[i][j];
            if (rij.dim() == 0) continue;
            // J^2 spans: g . f over all middles z
            std::vector<std::vector<u32>> sq;
            for (int z = 0; z < n; ++z) {
                for (const Morphism& f : rad[i][z].basis())
                    for (const Morphism& g : rad[z][j].basis())
                        sq.push_back(rij.hom.coords(compose(g, f)));
            }
            FpMat S(int(sq.size()), rij.hom.dim(), alg->field.p);
            for (std::size_t r = 0; r < sq.size(); ++r)
                for (int c = 0; c < rij.hom.dim(); ++c) S.at(int(r), c) = sq[r][c];
            int mult = rij.dim() - rank(S);
            if (mult > 0) ar.irr[{i, j}] = mult;
        }
    return ar;
}

}  // namespace nart
