#pragma once

#include "nart/homology.hpp"

namespace nart {

/// A finite set of pairwise non-isomorphic indecomposables with eager
/// pairwise Hom/radical caches (shared reads are then safe).
class Subcat {
public:
    AlgebraPtr alg;
    std::vector<ModulePtr> members;
    std::vector<std::vector<HomSpace>> hom;  // hom[i][j] = Hom(m_i, m_j)
    std::vector<std::vector<FpMat>> rad;     // radical coordinates inside hom[i][j]
    std::vector<int> lA;                     // dim End/J per member
    std::vector<bool> member_proj, member_inj;
    bool contains_projectives = false;
    bool contains_injectives = false;

    Subcat(AlgebraPtr a, std::vector<ModulePtr> mods) : alg(std::move(a)), members(std::move(mods)) {
        int n = int(members.size());
        for (int i = 0; i < n; ++i) {
            check_same_algebra(alg, members[i]->alg);
            for (int j = i + 1; j < n; ++j)
                if (members[i]->dims == members[j]->dims &&
                    is_isomorphic_indec(members[i], members[j]))
                    throw BadInput("subcategory members must be pairwise non-isomorphic");
        }
        hom.resize(n);
        rad.resize(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) hom[i].push_back(hom_basis(members[i], members[j]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rad[i].push_back(radical_coords(hom[i][j], hom[j][i]));
        for (int i = 0; i < n; ++i) lA.push_back(hom[i][i].dim() - rad[i][i].cols);
        member_proj.resize(n);
        member_inj.resize(n);
        for (int i = 0; i < n; ++i) {
            member_proj[i] = is_projective(members[i]);
            member_inj[i] = is_injective_module(members[i]);
        }
        // does every indecomposable projective appear?
        contains_projectives = true;
        for (int v = 0; v < alg->nv(); ++v) {
            ModulePtr P = projective_module(alg, v);
            bool found = false;
            for (int i = 0; i < n && !found; ++i)
                found = members[i]->dims == P->dims && is_isomorphic_indec(members[i], P);
            if (!found) contains_projectives = false;
        }
        AlgebraPtr op = alg->opposite();
        contains_injectives = true;
        for (int v = 0; v < alg->nv(); ++v) {
            ModulePtr I = injective_module(alg, op, v);
            bool found = false;
            for (int i = 0; i < n && !found; ++i)
                found = members[i]->dims == I->dims && is_isomorphic_indec(members[i], I);
            if (!found) contains_injectives = false;
        }
    }

    int size() const { return int(members.size()); }

    int index_of(const ModulePtr& m) const {
        for (int i = 0; i < size(); ++i)
            if (members[i]->dims == m->dims && is_isomorphic_indec(members[i], m)) return i;
        return -1;
    }
};

// ---------------------------------------------------------------------------
// Minimal right approximations
// ---------------------------------------------------------------------------

struct Approximation {
    std::vector<int> copy_member;      // member index per copy
    std::vector<Morphism> copy_map;    // component morphism member -> X per copy
    ModulePtr source;                  // direct sum of the copies
    Morphism map;                      // source -> X
    std::vector<int> multiplicities;   // per member

    bool is_zero() const { return copy_member.empty(); }
};

namespace detail {

/// Check Hom(N_j, -) surjectivity onto the span target for the active copies.
/// targets[j]: subspace coordinates matrix of the required image inside
/// Hom(N_j, X); blocks[j][c]: coordinates of f_c . Hom(N_j, N_{i_c}).
inline bool approximation_covers(const std::vector<FpMat>& targets,
                                 const std::vector<std::vector<FpMat>>& blocks,
                                 const std::vector<bool>& active) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
        int need = targets[j].cols;  // dim of required image
        if (need == 0) continue;
        int total = 0;
        for (std::size_t c = 0; c < blocks[j].size(); ++c)
            if (active[c]) total += blocks[j][c].cols;
        FpMat span(targets[j].rows, total, targets[j].p);
        int col = 0;
        for (std::size_t c = 0; c < blocks[j].size(); ++c) {
            if (!active[c]) continue;
            for (int cc = 0; cc < blocks[j][c].cols; ++cc, ++col)
                for (int r = 0; r < span.rows; ++r) span.at(r, col) = blocks[j][c].at(r, cc);
        }
        // required image must be inside the span and of equal rank
        FpMat joint = hstack(span, targets[j]);
        int rs = rank(span);
        if (rs != rank(joint)) return false;
        if (rs < rank(targets[j])) return false;
    }
    return true;
}

/// Generic greedy minimal cover builder: given candidate copies (member, map)
/// and per-member image targets, drop copies while the targets stay covered.
inline Approximation minimize_copies(const Subcat& sub, const ModulePtr& x,
                                     std::vector<int> copy_member,
                                     std::vector<Morphism> copy_map,
                                     const std::vector<HomSpace>& hom_to_x,
                                     const std::vector<FpMat>& targets) {
    int ncopies = int(copy_member.size());
    std::vector<std::vector<FpMat>> blocks(sub.size());
    for (int j = 0; j < sub.size(); ++j) {
        for (int c = 0; c < ncopies; ++c) {
            int i = copy_member[c];
            const HomSpace& hji = sub.hom[j][i];
            FpMat B(hom_to_x[j].dim(), hji.dim(), x->alg->field.p);
            for (int g = 0; g < hji.dim(); ++g) {
                auto coords = hom_to_x[j].coords(compose(copy_map[c], hji.basis[g]));
                for (int r = 0; r < B.rows; ++r) B.at(r, g) = coords[r];
            }
            blocks[j].push_back(std::move(B));
        }
    }
    std::vector<bool> active(ncopies, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 0; c < ncopies; ++c) {
            if (!active[c]) continue;
            active[c] = false;
            if (approximation_covers(targets, blocks, active)) {
                changed = true;
            } else {
                active[c] = true;
            }
        }
    }
    Approximation ap;
    ap.multiplicities.assign(sub.size(), 0);
    std::vector<ModulePtr> parts;
    std::vector<Morphism> comps;
    for (int c = 0; c < ncopies; ++c) {
        if (!active[c]) continue;
        ap.copy_member.push_back(copy_member[c]);
        ap.copy_map.push_back(copy_map[c]);
        ap.multiplicities[copy_member[c]]++;
        parts.push_back(sub.members[copy_member[c]]);
        comps.push_back(copy_map[c]);
    }
    ap.source = direct_sum(x->alg, parts);
    ap.map = from_components(parts, ap.source, x, comps);
    return ap;
}

}  // namespace detail

/// Minimal right approximation of X by add(members): Hom(N, source) -> Hom(N, X)
/// surjective for every member N, right-minimal by copy minimality.
inline Approximation minimal_right_approximation(const Subcat& sub, const ModulePtr& x) {
    std::vector<HomSpace> hom_to_x;
    for (int j = 0; j < sub.size(); ++j) hom_to_x.push_back(hom_basis(sub.members[j], x));
    std::vector<FpMat> targets;  // full Hom space per member
    for (int j = 0; j < sub.size(); ++j)
        targets.push_back(FpMat::identity(hom_to_x[j].dim(), x->alg->field.p));
    std::vector<int> copy_member;
    std::vector<Morphism> copy_map;
    for (int i = 0; i < sub.size(); ++i)
        for (const Morphism& f : hom_to_x[i].basis) {
            copy_member.push_back(i);
            copy_map.push_back(f);
        }
    return detail::minimize_copies(sub, x, std::move(copy_member), std::move(copy_map), hom_to_x,
                                   targets);
}

/// Minimal cover of the radical functor J(-, A) by a representable; the first
/// step of the n-almost-split construction and of simple functors.
inline Approximation radical_cover(const Subcat& sub, int a_idx) {
    const ModulePtr& x = sub.members[a_idx];
    std::vector<HomSpace> hom_to_x;
    std::vector<FpMat> targets;
    for (int j = 0; j < sub.size(); ++j) {
        hom_to_x.push_back(sub.hom[j][a_idx]);
        targets.push_back(sub.rad[j][a_idx]);
    }
    std::vector<int> copy_member;
    std::vector<Morphism> copy_map;
    for (int i = 0; i < sub.size(); ++i) {
        const FpMat& rc = sub.rad[i][a_idx];
        for (int c = 0; c < rc.cols; ++c) {
            std::vector<u32> coords(rc.rows);
            for (int r = 0; r < rc.rows; ++r) coords[r] = rc.at(r, c);
            copy_member.push_back(i);
            copy_map.push_back(sub.hom[i][a_idx].from_coords(coords));
        }
    }
    return detail::minimize_copies(sub, x, std::move(copy_member), std::move(copy_map), hom_to_x,
                                   targets);
}

// ---------------------------------------------------------------------------
// Right M-resolutions
// ---------------------------------------------------------------------------

struct Resolution {
    // terms[0] = t_{n-1}, ..., terms[n-1] = t_0, matching the displayed order
    std::vector<ModulePtr> terms;
    std::vector<Morphism> maps;          // maps[i] : terms[i] -> terms[i+1]
    Morphism augmentation;               // t_0 -> X
    std::vector<std::vector<int>> mult;  // member multiplicities per term (same order)
};

/// 0 -> t_{n-1} -> ... -> t_0 -> X -> 0 by iterated minimal right approximations.
inline Resolution right_M_resolution(const Subcat& sub, const ModulePtr& x, int n,
                                     bool pad_first = false) {
    if (n < 1) throw BadInput("resolution length must be >= 1");
    std::vector<Approximation> steps;
    std::vector<Morphism> kernel_incls;
    ModulePtr k = x;
    for (int i = 0; i < n; ++i) {
        Approximation ap = minimal_right_approximation(sub, k);
        if (pad_first && i == 0 && sub.size() > 0) {
            // deliberately non-minimal first step: append a redundant copy
            std::vector<int> cm = ap.copy_member;
            std::vector<Morphism> cmap = ap.copy_map;
            cm.push_back(0);
            cmap.push_back(zero_morphism(sub.members[0], k));
            std::vector<ModulePtr> parts;
            std::vector<Morphism> comps;
            Approximation padded;
            padded.multiplicities.assign(sub.size(), 0);
            for (std::size_t c = 0; c < cm.size(); ++c) {
                padded.copy_member.push_back(cm[c]);
                padded.copy_map.push_back(cmap[c]);
                padded.multiplicities[cm[c]]++;
                parts.push_back(sub.members[cm[c]]);
                comps.push_back(cmap[c]);
            }
            padded.source = direct_sum(x->alg, parts);
            padded.map = from_components(parts, padded.source, k, comps);
            ap = padded;
        }
        Factorization f = factorize(ap.map);
        if (k->total_dim() > 0 && f.cokernel->total_dim() != 0)
            throw ResolutionOverrun("approximation is not surjective; subcategory cannot be "
                                    "n-cluster tilting");
        steps.push_back(ap);
        kernel_incls.push_back(f.ker_incl);
        k = f.kernel;
        if (i == n - 1 && k->total_dim() != 0)
            throw ResolutionOverrun("kernel after " + std::to_string(n) +
                                    " steps is nonzero; subcategory cannot be n-cluster tilting");
    }
    Resolution res;
    for (int i = n - 1; i >= 0; --i) {
        res.terms.push_back(steps[i].source);
        res.mult.push_back(steps[i].multiplicities);
    }
    for (int i = n - 1; i >= 1; --i)
        res.maps.push_back(compose(kernel_incls[i - 1], steps[i].map));
    res.augmentation = steps[0].map;
    return res;
}

/// Hom(N, -) exactness of the resolution, the Theorem guaranteeing property.
inline bool resolution_hom_exact(const Subcat& sub, const Resolution& res, const ModulePtr& x) {
    int n = int(res.terms.size());
    for (int j = 0; j < sub.size(); ++j) {
        const ModulePtr& N = sub.members[j];
        std::vector<HomSpace> hs;
        for (int i = 0; i < n; ++i) hs.push_back(hom_basis(N, res.terms[i]));
        hs.push_back(hom_basis(N, x));
        std::vector<FpMat> mats;
        for (int i = 0; i + 1 < n; ++i) mats.push_back(postcompose_matrix(hs[i], res.maps[i], hs[i + 1]));
        mats.push_back(postcompose_matrix(hs[n - 1], res.augmentation, hs[n]));
        // 0 -> Hom(N,t_{n-1}) -> ... -> Hom(N,t_0) -> Hom(N,X) -> 0
        if (rank(mats[0]) != hs[0].dim()) return false;  // injectivity
        for (int i = 1; i < int(mats.size()); ++i) {
            int ker = hs[i].dim() - rank(mats[i]);
            if (ker != rank(mats[i - 1])) return false;
        }
        if (rank(mats.back()) != hs[n].dim()) return false;  // surjectivity
    }
    return true;
}

}  // namespace nart
