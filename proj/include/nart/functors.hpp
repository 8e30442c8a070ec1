#pragma once

#include "nart/nexact.hpp"

namespace nart {

/// Finitely presented functor on the subcategory, held by a presentation
/// Hom(-, X) -> Hom(-, Y) -> F -> 0 with X, Y in add(members); every query is
/// a cokernel computation. Evaluations are cached at construction.
struct FpFunctor {
    Morphism presentation;                 // f : X -> Y
    std::vector<int> evals;                // dim F(N_j) per member
    // per member: Hom(N, Y) space, image coordinates, coker projection
    std::vector<HomSpace> homY;
    std::vector<detail::Quotient> coker;   // on Hom(N, Y) coordinates

    int dim_at(int j) const { return evals[j]; }
};

inline FpFunctor make_functor(const Subcat& sub, const Morphism& f, Rng& rng) {
    // terms must lie in add(members)
    multiplicities_in(f.src, sub.members, rng);
    multiplicities_in(f.tgt, sub.members, rng);
    FpFunctor F;
    F.presentation = f;
    for (int j = 0; j < sub.size(); ++j) {
        const ModulePtr& N = sub.members[j];
        HomSpace hX = hom_basis(N, f.src);
        HomSpace hY = hom_basis(N, f.tgt);
        FpMat img(hY.dim(), hX.dim(), sub.alg->field.p);
        for (int c = 0; c < hX.dim(); ++c) {
            auto coords = hY.coords(compose(f, hX.basis[c]));
            for (int r = 0; r < hY.dim(); ++r) img.at(r, c) = coords[r];
        }
        detail::Quotient q = detail::quotient_by(detail::colspace(img), hY.dim(), sub.alg->field.p);
        F.evals.push_back(q.proj.rows);
        F.homY.push_back(std::move(hY));
        F.coker.push_back(std::move(q));
    }
    return F;
}

/// dim coker(Hom(Z, X) -> Hom(Z, Y)) for arbitrary Z in add(members).
inline int evaluate(const Subcat& sub, const FpFunctor& F, const ModulePtr& z, Rng& rng) {
    int at = sub.index_of(z);
    if (at >= 0) return F.evals[at];
    multiplicities_in(z, sub.members, rng);  // MemberEscape if outside
    HomSpace hX = hom_basis(z, F.presentation.src);
    HomSpace hY = hom_basis(z, F.presentation.tgt);
    FpMat img(hY.dim(), hX.dim(), sub.alg->field.p);
    for (int c = 0; c < hX.dim(); ++c) {
        auto coords = hY.coords(compose(F.presentation, hX.basis[c]));
        for (int r = 0; r < hY.dim(); ++r) img.at(r, c) = coords[r];
    }
    return hY.dim() - rank(img);
}

/// Effaceable iff the presenting map is onto, iff F vanishes on projectives.
inline bool is_effaceable(const FpFunctor& F) {
    return factorize(F.presentation).cokernel->total_dim() == 0;
}

/// S_A = Hom(-, A) / J(-, A): presented by the minimal radical cover.
inline FpFunctor simple_functor(const Subcat& sub, int a, Rng& rng) {
    Approximation cov = radical_cover(sub, a);
    return make_functor(sub, cov.map, rng);
}

inline std::vector<int> support(const FpFunctor& F) {
    std::vector<int> s;
    for (int j = 0; j < int(F.evals.size()); ++j)
        if (F.evals[j] != 0) s.push_back(j);
    return s;
}

/// Induced matrix F(phi) : F(W) -> F(Z) for phi : Z -> W.
inline FpMat induced_map(const Subcat& sub, const FpFunctor& F, int z, int w,
                         const Morphism& phi) {
    const detail::Quotient& qw = F.coker[w];
    const detail::Quotient& qz = F.coker[z];
    FpMat M(F.evals[z], F.evals[w], sub.alg->field.p);
    for (int c = 0; c < F.evals[w]; ++c) {
        // lift coker coordinate c to Hom(W, Y), precompose with phi, project
        std::vector<u32> lift(qw.section.rows);
        for (int r = 0; r < qw.section.rows; ++r) lift[r] = qw.section.at(r, c);
        Morphism rep = F.homY[w].from_coords(lift);
        auto coords = F.homY[z].coords(compose(rep, phi));
        auto pr = mat_vec(qz.proj, coords);
        for (int r = 0; r < F.evals[z]; ++r) M.at(r, c) = pr[r];
    }
    return M;
}

/// The projectivized module over Gamma = End(+members): graded dimensions and
/// the radical filtration layers.
struct GammaModule {
    std::vector<int> graded_dims;              // dim F(N_j)
    int total_dim = 0;
    std::vector<std::vector<int>> layer_dims;  // per layer, per member
};

struct LengthFactors {
    GammaModule gamma;
    std::vector<std::pair<int, int>> factors;  // (member id, multiplicity), sorted
    int length = 0;
};

/// Composition factors by the radical filtration of the projectivization.
inline LengthFactors length_and_factors(const Subcat& sub, const FpFunctor& F) {
    u32 p = sub.alg->field.p;
    int n = sub.size();
    LengthFactors out;
    out.gamma.graded_dims = F.evals;
    for (int d : F.evals) out.gamma.total_dim += d;

    // induced matrices of all radical basis morphisms
    struct RadMap { int z, w; FpMat m; };
    std::vector<RadMap> maps;
    for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
            const FpMat& rc = sub.rad[z][w];
            for (int c = 0; c < rc.cols; ++c) {
                std::vector<u32> coords(rc.rows);
                for (int r = 0; r < rc.rows; ++r) coords[r] = rc.at(r, c);
                Morphism phi = sub.hom[z][w].from_coords(coords);
                if (F.evals[z] == 0 || F.evals[w] == 0) continue;
                maps.push_back({z, w, induced_map(sub, F, z, w, phi)});
            }
        }

    // radical filtration: U^{t+1}_z = sum of F(phi)(U^t_w)
    std::vector<FpMat> U;  // per member: column basis of the current layer space
    for (int j = 0; j < n; ++j) U.push_back(FpMat::identity(F.evals[j], p));
    std::map<int, int> factor_mult;
    while (true) {
        int total = 0;
        for (int j = 0; j < n; ++j) total += U[j].cols;
        if (total == 0) break;
        std::vector<FpMat> next(n);
        for (int j = 0; j < n; ++j) next[j] = FpMat(F.evals[j], 0, p);
        for (const RadMap& rm : maps)
            if (U[rm.w].cols) next[rm.z] = hstack(next[rm.z], mul(rm.m, U[rm.w]));
        std::vector<int> layer(n);
        for (int j = 0; j < n; ++j) {
            next[j] = detail::colspace(next[j]);
            layer[j] = rank(U[j]) - next[j].cols;
            if (layer[j] != 0) {
                if (layer[j] % sub.lA[j] != 0)
                    throw Error("layer dimension not divisible by the local length");
                factor_mult[j] += layer[j] / sub.lA[j];
            }
        }
        out.gamma.layer_dims.push_back(layer);
        U = std::move(next);
    }
    for (auto& [j, m] : factor_mult) {
        out.factors.push_back({j, m});
        out.length += m;
    }
    return out;
}

/// F|_M for F = coker Hom(-, f) with f arbitrary in mod Lambda: re-present
/// with terms in add(members) via minimal right approximations.
inline FpFunctor restrict_to_M(const Subcat& sub, const Morphism& f, Rng& rng) {
    const ModulePtr& x = f.src;
    const ModulePtr& y = f.tgt;
    Approximation aX = minimal_right_approximation(sub, x);
    Approximation aY = minimal_right_approximation(sub, y);
    // lift h : t0X -> t0Y with aY . h = f . aX
    HomSpace hH = hom_basis(aX.source, aY.source);
    HomSpace hT = hom_basis(aX.source, y);
    FpMat post = postcompose_matrix(hH, aY.map, hT);
    auto target = hT.coords(compose(f, aX.map));
    LinSolver ls(post);
    auto sol = ls.solve(target);
    if (!sol) throw ResolutionOverrun("approximation of the target does not cover the map");
    Morphism h = hH.from_coords(*sol);
    // cover of ker(aY)
    Factorization fy = factorize(aY.map);
    Approximation aK = minimal_right_approximation(sub, fy.kernel);
    Morphism u = compose(fy.ker_incl, aK.map);
    // presentation [h, u] : t0X + W -> t0Y
    std::vector<ModulePtr> parts{aX.source, aK.source};
    ModulePtr src = direct_sum(aX.source, aK.source);
    Morphism pres = from_components(parts, src, aY.source, {h, u});
    return make_functor(sub, pres, rng);
}

}  // namespace nart
