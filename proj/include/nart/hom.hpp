#pragma once

#include <map>

#include "nart/fppoly.hpp"
#include "nart/module.hpp"

namespace nart {

inline int entry_space_dim(const ModulePtr& x, const ModulePtr& y) {
    int n = 0;
    for (int v = 0; v < x->alg->nv(); ++v) n += x->dims[v] * y->dims[v];
    return n;
}

inline std::vector<u32> entry_vector(const Morphism& f) {
    std::vector<u32> v;
    for (const auto& b : f.blocks) v.insert(v.end(), b.a.begin(), b.a.end());
    return v;
}

inline Morphism morphism_from_entries(const ModulePtr& x, const ModulePtr& y,
                                      const std::vector<u32>& e) {
    Morphism f = zero_morphism(x, y);
    std::size_t k = 0;
    for (auto& b : f.blocks)
        for (auto& cell : b.a) cell = e[k++];
    return f;
}

/// Basis of Hom(X, Y) as the nullspace of the intertwining constraints.
struct HomSpace {
    ModulePtr src, tgt;
    std::vector<Morphism> basis;
    FpMat mat;  // entry-space ambient x dim
    LinSolver solver;

    int dim() const { return int(basis.size()); }

    std::vector<u32> coords(const Morphism& f) const {
        auto sol = solver.solve(entry_vector(f));
        if (!sol) throw Error("morphism is not an intertwiner of this pair");
        return *sol;
    }
    Morphism from_coords(const std::vector<u32>& c) const {
        Fp F(src->alg->field);
        Morphism f = zero_morphism(src, tgt);
        for (int i = 0; i < dim(); ++i) {
            if (!c[i]) continue;
            f = add_morphisms(f, scale_morphism(basis[i], c[i]));
        }
        return f;
    }
};

inline HomSpace hom_basis(const ModulePtr& x, const ModulePtr& y) {
    check_same_algebra(x->alg, y->alg);
    const AlgebraPtr& alg = x->alg;
    u32 p = alg->field.p;
    Fp F(p);
    int nv = alg->nv();
    std::vector<int> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + x->dims[v] * y->dims[v];
    int unknowns = offset[nv];

    int eqs = 0;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        eqs += y->dims[ar.tgt] * x->dims[ar.src];
    }
    FpMat M(eqs, unknowns, p);
    int row = 0;
    auto idx = [&](int v, int r, int c) { return offset[v] + r * x->dims[v] + c; };
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        const FpMat& Xa = x->action[a];
        const FpMat& Ya = y->action[a];
        for (int r = 0; r < y->dims[ar.tgt]; ++r)
            for (int c = 0; c < x->dims[ar.src]; ++c) {
                // (Y_a B_src - B_tgt X_a)[r, c] = 0
                for (int k = 0; k < y->dims[ar.src]; ++k)
                    M.at(row, idx(ar.src, k, c)) = F.add(M.at(row, idx(ar.src, k, c)), Ya.at(r, k));
                for (int k = 0; k < x->dims[ar.tgt]; ++k)
                    M.at(row, idx(ar.tgt, r, k)) =
                        F.sub(M.at(row, idx(ar.tgt, r, k)), Xa.at(k, c));
                ++row;
            }
    }
    FpMat N = nullspace(M);
    HomSpace H;
    H.src = x;
    H.tgt = y;
    H.mat = N;
    for (int c = 0; c < N.cols; ++c) {
        std::vector<u32> e(N.rows);
        for (int r = 0; r < N.rows; ++r) e[r] = N.at(r, c);
        H.basis.push_back(morphism_from_entries(x, y, e));
    }
    H.solver = LinSolver(N);
    return H;
}

/// Radical J(X, Y) in Hom-coordinates: nullspace of the trace pairing with
/// Hom(Y, X). Valid for char p > dim(X) + dim(Y); guarded.
inline FpMat radical_coords(const HomSpace& hxy, const HomSpace& hyx) {
    u32 p = hxy.src->alg->field.p;
    if (hxy.dim() == 0) return FpMat(0, 0, p);
    int n = hxy.src->total_dim() + hxy.tgt->total_dim();
    if (int(p) <= n)
        throw FieldTooSmall("radical computation needs prime > " + std::to_string(n) +
                            "; rerun over a larger prime field");
    FpMat T(hyx.dim(), hxy.dim(), p);
    for (int i = 0; i < hyx.dim(); ++i)
        for (int j = 0; j < hxy.dim(); ++j)
            T.at(i, j) = total_trace(compose(hyx.basis[i], hxy.basis[j]));
    return nullspace(T);  // columns: radical coordinates inside Hom(X,Y)
}

struct RadicalHom {
    HomSpace hom;       // full Hom(X, Y)
    FpMat coords;       // hom-coordinate basis of J(X, Y)
    int dim() const { return coords.cols; }
    std::vector<Morphism> basis() const {
        std::vector<Morphism> r;
        for (int c = 0; c < coords.cols; ++c) {
            std::vector<u32> cc(coords.rows);
            for (int i = 0; i < coords.rows; ++i) cc[i] = coords.at(i, c);
            r.push_back(hom.from_coords(cc));
        }
        return r;
    }
    bool contains(const Morphism& f) const {
        LinSolver ls(coords);
        return ls.contains(hom.coords(f));
    }
};

inline RadicalHom radical_hom_basis(const ModulePtr& x, const ModulePtr& y) {
    HomSpace hxy = hom_basis(x, y);
    HomSpace hyx = hom_basis(y, x);
    FpMat J = radical_coords(hxy, hyx);
    return {std::move(hxy), std::move(J)};
}

/// dim End(X)/J for X indecomposable (the l_A of the bilinear form).
inline int local_length(const ModulePtr& x) {
    RadicalHom r = radical_hom_basis(x, x);
    return r.hom.dim() - r.dim();
}

// ---------------------------------------------------------------------------
// Krull-Schmidt decomposition via Fitting splits
// ---------------------------------------------------------------------------

namespace detail {

inline FpMat total_matrix(const Morphism& f) {
    // block diagonal endomorphism matrix over the total space
    FpMat m(0, 0, f.src->alg->field.p);
    for (const auto& b : f.blocks) m = dsum(m, b);
    return m;
}

/// Submodule spanned per-vertex by the given column bases; returns (module, inclusion).
inline std::pair<ModulePtr, Morphism> submodule(const ModulePtr& m, std::vector<FpMat> bases) {
    const AlgebraPtr& alg = m->alg;
    u32 p = alg->field.p;
    std::vector<int> dims(alg->nv());
    for (int v = 0; v < alg->nv(); ++v) dims[v] = bases[v].cols;
    std::vector<FpMat> act;
    for (int a = 0; a < alg->na(); ++a) {
        const Arrow& ar = alg->quiver.arrows[a];
        LinSolver sw(bases[ar.tgt]);
        FpMat ra(dims[ar.tgt], dims[ar.src], p);
        FpMat moved = mul(m->action[a], bases[ar.src]);
        for (int c = 0; c < dims[ar.src]; ++c) {
            std::vector<u32> col(moved.rows);
            for (int r = 0; r < moved.rows; ++r) col[r] = moved.at(r, c);
            auto sol = sw.solve(col);
            if (!sol) throw Error("spanning set is not a subrepresentation");
            for (int r = 0; r < dims[ar.tgt]; ++r) ra.at(r, c) = (*sol)[r];
        }
        act.push_back(std::move(ra));
    }
    ModulePtr sub = make_module(alg, dims, std::move(act));
    Morphism incl{sub, m, std::move(bases)};
    return {sub, incl};
}

struct EndStructure {
    HomSpace end;
    FpMat jcoords;             // radical coordinates
    int wedderburn_blocks = 0; // simple factors of End/J
    int semisimple_dim = 0;    // dim End/J
    int center_dim = 0;        // dim Z(End/J)
    std::vector<std::vector<u32>> frobenius_fixed;  // coords in End of lifts
    bool local() const { return wedderburn_blocks == 1 && semisimple_dim == center_dim; }
};

inline EndStructure end_structure(const ModulePtr& m) {
    EndStructure S{hom_basis(m, m), {}, 0, 0, 0, {}};
    int n = 2 * m->total_dim();
    u32 p = m->alg->field.p;
    if (int(p) <= n)
        throw FieldTooSmall("endomorphism analysis needs prime > " + std::to_string(n));
    Fp F(p);
    int e = S.end.dim();
    FpMat T(e, e, p);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j)
            T.at(i, j) = total_trace(compose(S.end.basis[i], S.end.basis[j]));
    S.jcoords = nullspace(T);
    S.semisimple_dim = e - S.jcoords.cols;

    // structure constants: coords of basis_i . basis_j
    std::vector<std::vector<std::vector<u32>>> sc(e, std::vector<std::vector<u32>>(e));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) sc[i][j] = S.end.coords(compose(S.end.basis[i], S.end.basis[j]));

    // quotient-by-J coordinates on k^e
    Quotient q = quotient_by(S.jcoords, e, p);
    int sd = q.proj.rows;

    // center of End/J: x with x b_i - b_i x in J for all i
    FpMat C(sd * e, e, p);
    for (int i = 0; i < e; ++i) {
        // column j: proj( sc[j][i] - sc[i][j] )
        for (int j = 0; j < e; ++j) {
            std::vector<u32> diff(e);
            for (int k = 0; k < e; ++k) diff[k] = F.sub(sc[j][i][k], sc[i][j][k]);
            std::vector<u32> pr = mat_vec(q.proj, diff);
            for (int r = 0; r < sd; ++r) C.at(i * sd + r, j) = pr[r];
        }
    }
    FpMat center = nullspace(C);  // columns: End-coordinates of central lifts
    // center modulo J:
    FpMat center_mod(sd, center.cols, p);
    for (int c = 0; c < center.cols; ++c) {
        std::vector<u32> v(e);
        for (int r = 0; r < e; ++r) v[r] = center.at(r, c);
        auto pr = mat_vec(q.proj, v);
        for (int r = 0; r < sd; ++r) center_mod.at(r, c) = pr[r];
    }
    center_mod = colspace(center_mod);
    S.center_dim = center_mod.cols;

    // Frobenius x -> x^p on the center of End/J; block count = dim of fixed space.
    // lift each center basis vector, power the total matrix, project back.
    LinSolver center_solver(center_mod);
    FpMat PC(sd, center.cols, p);
    for (int cc = 0; cc < center.cols; ++cc) {
        std::vector<u32> v(e);
        for (int r = 0; r < e; ++r) v[r] = center.at(r, cc);
        auto pr = mat_vec(q.proj, v);
        for (int r = 0; r < sd; ++r) PC.at(r, cc) = pr[r];
    }
    LinSolver pcs(PC);
    FpMat FR(S.center_dim, S.center_dim, p);
    std::vector<std::vector<u32>> lifts;
    for (int c = 0; c < S.center_dim; ++c) {
        // lift: any End-coordinate vector whose projection matches column c
        std::vector<u32> target(sd);
        for (int r = 0; r < sd; ++r) target[r] = center_mod.at(r, c);
        auto t = pcs.solve(target);
        if (!t) throw Error("central lift failed");
        std::vector<u32> lift(e, 0);
        for (int cc = 0; cc < center.cols; ++cc)
            for (int r = 0; r < e; ++r) lift[r] = F.add(lift[r], F.mul((*t)[cc], center.at(r, cc)));
        lifts.push_back(lift);
        Morphism x = S.end.from_coords(lift);
        FpMat tx = total_matrix(x);
        // x^p by fast exponentiation
        FpMat acc = FpMat::identity(tx.rows, p);
        FpMat base = tx;
        u64 exp = p;
        while (exp) {
            if (exp & 1) acc = mul(acc, base);
            base = mul(base, base);
            exp >>= 1;
        }
        // read coordinates of x^p: it is an endomorphism again
        Morphism xp = x;
        int off = 0;
        for (int v = 0; v < m->alg->nv(); ++v) {
            for (int r = 0; r < m->dims[v]; ++r)
                for (int cc2 = 0; cc2 < m->dims[v]; ++cc2)
                    xp.blocks[v].at(r, cc2) = acc.at(off + r, off + cc2);
            off += m->dims[v];
        }
        auto xpc = S.end.coords(xp);
        auto pr = mat_vec(q.proj, xpc);
        auto sol = center_solver.solve(pr);
        if (!sol) throw Error("Frobenius left the center");
        for (int r = 0; r < S.center_dim; ++r) FR.at(r, c) = (*sol)[r];
    }
    // fixed space of Frobenius
    for (int i = 0; i < S.center_dim; ++i) FR.at(i, i) = F.sub(FR.at(i, i), 1);
    FpMat fixed = nullspace(FR);
    S.wedderburn_blocks = fixed.cols;
    for (int c = 0; c < fixed.cols; ++c) {
        std::vector<u32> lift(e, 0);
        for (int i = 0; i < S.center_dim; ++i)
            for (int r = 0; r < e; ++r)
                lift[r] = F.add(lift[r], F.mul(fixed.at(i, c), lifts[i][r]));
        S.frobenius_fixed.push_back(lift);
    }
    return S;
}

}  // namespace detail

/// Krull-Schmidt decomposition: list of (indecomposable part, multiplicity).
inline std::vector<std::pair<ModulePtr, int>> decompose(const ModulePtr& m, Rng& rng,
                                                        int max_attempts = 64);

inline bool is_isomorphic_indec(const ModulePtr& x, const ModulePtr& y) {
    if (x->dims != y->dims) return false;
    HomSpace hxy = hom_basis(x, y);
    if (hxy.dim() == 0) return x->total_dim() == 0;
    HomSpace hyx = hom_basis(y, x);
    FpMat J = radical_coords(hxy, hyx);
    return J.cols < hxy.dim();
}

inline bool is_isomorphic(const ModulePtr& x, const ModulePtr& y, Rng& rng) {
    check_same_algebra(x->alg, y->alg);
    if (x->dims != y->dims) return false;
    if (x->total_dim() == 0) return true;
    auto dx = decompose(x, rng);
    auto dy = decompose(y, rng);
    if (dx.size() != dy.size()) return false;
    std::vector<bool> used(dy.size(), false);
    for (auto& [xm, xc] : dx) {
        bool found = false;
        for (std::size_t j = 0; j < dy.size(); ++j) {
            if (used[j] || dy[j].second != xc) continue;
            if (is_isomorphic_indec(xm, dy[j].first)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace detail {

inline void decompose_rec(const ModulePtr& m, Rng& rng, int max_attempts,
                          std::vector<ModulePtr>& leaves) {
    if (m->total_dim() == 0) return;
    HomSpace end = hom_basis(m, m);
    if (end.dim() == 1) {  // End = k
        leaves.push_back(m);
        return;
    }
    EndStructure S = end_structure(m);
    if (S.local()) {
        leaves.push_back(m);
        return;
    }
    Fp F(m->alg->field);
    u32 p = F.p;
    std::vector<u32> id_coords = end.coords(identity_morphism(m));
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Morphism cand = zero_morphism(m, m);
        if (S.wedderburn_blocks >= 2 && attempt < int(S.frobenius_fixed.size())) {
            // central splitting elements first: guaranteed composite min poly
            std::vector<u32> c = S.frobenius_fixed[attempt];
            // skip scalar candidates
            FpMat test(2, end.dim(), p);
            for (int i = 0; i < end.dim(); ++i) {
                test.at(0, i) = id_coords[i];
                test.at(1, i) = c[i];
            }
            if (rank(test) < 2) continue;
            cand = end.from_coords(c);
        } else {
            std::vector<u32> c(end.dim());
            for (auto& x : c) x = rng.field_element(F);
            cand = end.from_coords(c);
        }
        FpMat tm = total_matrix(cand);
        Poly mu = min_poly(tm);
        auto factors = poly_factor(F, mu, rng);
        if (factors.size() < 2) continue;
        // Fitting: split along the first factor vs the rest.
        Poly f1 = factors[0].first;
        for (u64 e = 1; e < factors[0].second; ++e) f1 = poly_mul(F, f1, factors[0].first);
        Poly f2{1};
        for (std::size_t i = 1; i < factors.size(); ++i)
            for (u64 e = 0; e < factors[i].second; ++e) f2 = poly_mul(F, f2, factors[i].first);
        for (const Poly& part : {f1, f2}) {
            std::vector<FpMat> bases;
            for (int v = 0; v < m->alg->nv(); ++v)
                bases.push_back(nullspace(poly_eval_mat(F, part, cand.blocks[v])));
            auto [sub, incl] = submodule(m, std::move(bases));
            (void)incl;
            decompose_rec(sub, rng, max_attempts, leaves);
        }
        return;
    }
    throw SplittingFailure("no Fitting split found in " + std::to_string(max_attempts) +
                           " attempts; retry with another prime");
}

}  // namespace detail

inline std::vector<std::pair<ModulePtr, int>> decompose(const ModulePtr& m, Rng& rng,
                                                        int max_attempts) {
    std::vector<ModulePtr> leaves;
    detail::decompose_rec(m, rng, max_attempts, leaves);
    std::vector<std::pair<ModulePtr, int>> out;
    for (const auto& leaf : leaves) {
        bool merged = false;
        for (auto& [rep, count] : out)
            if (rep->dims == leaf->dims && is_isomorphic_indec(rep, leaf)) {
                ++count;
                merged = true;
                break;
            }
        if (!merged) out.push_back({leaf, 1});
    }
    return out;
}

/// Multiplicity vector of m against a list of pairwise non-isomorphic indecomposables.
inline std::vector<int> multiplicities_in(const ModulePtr& m,
                                          const std::vector<ModulePtr>& members, Rng& rng) {
    std::vector<int> mult(members.size(), 0);
    if (m->total_dim() == 0) return mult;
    for (auto& [part, count] : decompose(m, rng)) {
        bool found = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i]->dims != part->dims) continue;
            if (is_isomorphic_indec(members[i], part)) {
                mult[i] += count;
                found = true;
                break;
            }
        }
        if (!found) throw MemberEscape("an indecomposable summand is not among the given members");
    }
    return mult;
}

}  // namespace nart
