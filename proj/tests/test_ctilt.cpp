#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nart/nexact.hpp"

using namespace nart;
using namespace fixtures;

namespace {

struct A2Fix {
    AlgebraPtr alg = linear_Am(2);
    Rng rng{21};
    ARQuiver ar = knit_ar_quiver(alg, 512, rng);
    Subcat all{alg, ar.indecs};
    ModulePtr S1 = simple_module(alg, 0);
    ModulePtr S2 = simple_module(alg, 1);
    ModulePtr P1 = projective_module(alg, 0);
};

}  // namespace

TEST_CASE("n=1 cluster tilting is all of ind") {
    A2Fix f;
    CTCheck c = is_n_cluster_tilting(f.alg, f.all, 1, f.ar);
    REQUIRE(c.ok);

    // dropping any member fails
    std::vector<ModulePtr> fewer{f.ar.indecs[0], f.ar.indecs[1]};
    Subcat sub(f.alg, fewer);
    CTCheck c2 = is_n_cluster_tilting(f.alg, sub, 1, f.ar);
    REQUIRE_FALSE(c2.ok);
}

TEST_CASE("kA2 projectives are not 2-cluster tilting") {
    A2Fix f;
    std::vector<ModulePtr> projs{projective_module(f.alg, 0), projective_module(f.alg, 1)};
    Subcat sub(f.alg, projs);
    CTCheck c = is_n_cluster_tilting(f.alg, sub, 2, f.ar);
    REQUIRE_FALSE(c.ok);
    REQUIRE_FALSE(c.violations.empty());
}

TEST_CASE("search: n=1 yields exactly ind(mod Lambda)") {
    A2Fix f;
    auto found = search_n_cluster_tilting(f.alg, 1, f.ar);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0].size() == 3);
}

TEST_CASE("search: kA2 has no 2-cluster tilting subcategory") {
    A2Fix f;
    auto found = search_n_cluster_tilting(f.alg, 2, f.ar);
    REQUIRE(found.empty());
}

TEST_CASE("search: kA3/J^2 has the classical 2-cluster tilting subcategory") {
    AlgebraPtr a = nakayama(3, 2);
    Rng rng(23);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    REQUIRE(ar.complete);
    REQUIRE(ar.indecs.size() == 5);
    auto found = search_n_cluster_tilting(a, 2, ar);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0].size() == 4);
    CTCheck c = is_n_cluster_tilting(a, found[0], 2, ar);
    REQUIRE(c.ok);
}

TEST_CASE("is_n_exact on short exact and broken sequences") {
    A2Fix f;
    ShortExact ses = almost_split_sequence(f.S1, f.rng);
    NExactSequence q;
    q.n = 1;
    q.terms = {ses.left, ses.middle, ses.right};
    q.maps = {ses.f, ses.g};
    REQUIRE(is_n_exact(q, f.all.members));

    // split sequence is 1-exact
    NExactSequence split;
    split.n = 1;
    ModulePtr mid = direct_sum(f.S2, f.S1);
    std::vector<ModulePtr> parts{f.S2, f.S1};
    split.terms = {f.S2, mid, f.S1};
    split.maps = {summand_inclusion(parts, mid, 0), summand_projection(parts, mid, 1)};
    REQUIRE(is_n_exact(split, f.all.members));

    // broken: P1 + S2 middle with zero second component fails
    NExactSequence broken;
    broken.n = 1;
    ModulePtr mid2 = direct_sum(f.P1, f.S2);
    std::vector<ModulePtr> parts2{f.P1, f.S2};
    HomSpace s2p1 = hom_basis(f.S2, f.P1);
    Morphism inc = compose(summand_inclusion(parts2, mid2, 0), s2p1.basis[0]);
    HomSpace p1s1 = hom_basis(f.P1, f.S1);
    Morphism pr = compose(p1s1.basis[0], summand_projection(parts2, mid2, 0));
    broken.terms = {f.S2, mid2, f.S1};
    broken.maps = {inc, pr};
    REQUIRE_FALSE(is_n_exact(broken, f.all.members));
}

TEST_CASE("n-almost split over kA2 agrees with the classical oracle") {
    A2Fix f;
    int a0 = f.all.index_of(f.S1);
    NExactSequence seq = n_almost_split_ending_at(f.all, a0, 1, f.rng);
    REQUIRE(seq.terms.size() == 3);
    REQUIRE(is_isomorphic(seq.terms[0], f.S2, f.rng));
    REQUIRE(is_isomorphic(seq.terms[1], f.P1, f.rng));
    REQUIRE(is_isomorphic(seq.terms[2], f.S1, f.rng));

    ShortExact oracle = almost_split_sequence(f.S1, f.rng);
    REQUIRE(is_isomorphic(oracle.left, seq.terms[0], f.rng));
    REQUIRE(is_isomorphic(oracle.middle, seq.terms[1], f.rng));

    // the classical construction passes the definitional n = 1 check
    NExactSequence oq;
    oq.n = 1;
    oq.terms = {oracle.left, oracle.middle, oracle.right};
    oq.maps = {oracle.f, oracle.g};
    REQUIRE(is_n_almost_split(f.all, oq));

    // projective end is rejected
    REQUIRE_THROWS_AS(n_almost_split_ending_at(f.all, f.all.index_of(f.P1), 1, f.rng),
                      ProjectiveEnd);
}

TEST_CASE("is_n_almost_split: constructor output, split rejection, rescaling") {
    A2Fix f;
    int a0 = f.all.index_of(f.S1);
    NExactSequence seq = n_almost_split_ending_at(f.all, a0, 1, f.rng);
    REQUIRE(is_n_almost_split(f.all, seq));

    // splitting makes it fail with an identity-component witness
    NExactSequence split;
    split.n = 1;
    ModulePtr mid = direct_sum(f.S2, f.S1);
    std::vector<ModulePtr> parts{f.S2, f.S1};
    split.terms = {f.S2, mid, f.S1};
    split.maps = {summand_inclusion(parts, mid, 0), summand_projection(parts, mid, 1)};
    NAlmostSplitCheck chk = is_n_almost_split_verbose(f.all, split);
    REQUIRE_FALSE(chk.ok);
    REQUIRE(chk.witness.find("identity") != std::string::npos);

    // rescaling a map by a nonzero scalar preserves the property
    NExactSequence scaled = seq;
    scaled.maps[1] = scale_morphism(scaled.maps[1], 5);
    REQUIRE(is_n_almost_split(f.all, scaled));
}

TEST_CASE("every n-almost split sequence is n-exact and has the simple defect") {
    A2Fix f;
    int a0 = f.all.index_of(f.S1);
    NExactSequence seq = n_almost_split_ending_at(f.all, a0, 1, f.rng);
    REQUIRE(is_n_exact(seq, f.all.members));
    DefectVector d = contravariant_defect(f.all, seq);
    for (int j = 0; j < f.all.size(); ++j) {
        if (j == a0)
            REQUIRE(d.values[j] == f.all.lA[j]);
        else
            REQUIRE(d.values[j] == 0);
    }
    // alternating dimension sum vanishes
    std::vector<int> acc(f.alg->nv(), 0);
    int sign = 1;
    for (int i = int(seq.terms.size()) - 1; i >= 0; --i) {
        for (int v = 0; v < f.alg->nv(); ++v) acc[v] += sign * seq.terms[i]->dims[v];
        sign = -sign;
    }
    for (int v = 0; v < f.alg->nv(); ++v) REQUIRE(acc[v] == 0);
}

TEST_CASE("kA2 defect values match the fixture") {
    A2Fix f;
    int a0 = f.all.index_of(f.S1);
    NExactSequence seq = n_almost_split_ending_at(f.all, a0, 1, f.rng);
    DefectVector d = contravariant_defect(f.all, seq);
    REQUIRE(d.values[f.all.index_of(f.S1)] == 1);
    REQUIRE(d.values[f.all.index_of(f.P1)] == 0);
    REQUIRE(d.values[f.all.index_of(f.S2)] == 0);
}

TEST_CASE("uniqueness of the n-almost split sequence up to isomorphism") {
    A2Fix f;
    int a0 = f.all.index_of(f.S1);
    NExactSequence s1 = n_almost_split_ending_at(f.all, a0, 1, f.rng);
    Rng rng2(99);
    NExactSequence s2 = n_almost_split_ending_at(f.all, a0, 1, rng2);
    for (std::size_t i = 0; i < s1.terms.size(); ++i)
        REQUIRE(is_isomorphic(s1.terms[i], s2.terms[i], f.rng));
}

TEST_CASE("2-almost split sequence in the Nakayama instance") {
    AlgebraPtr a = nakayama(3, 2);
    Rng rng(31);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    auto found = search_n_cluster_tilting(a, 2, ar);
    REQUIRE(found.size() == 1);
    const Subcat& M = found[0];
    int nonproj = -1;
    for (int i = 0; i < M.size(); ++i)
        if (!M.member_proj[i]) nonproj = i;
    REQUIRE(nonproj >= 0);
    NExactSequence seq = n_almost_split_ending_at(M, nonproj, 2, rng);
    REQUIRE(seq.terms.size() == 4);
    REQUIRE(is_n_almost_split(M, seq));
    REQUIRE(is_n_exact(seq, M.members));
    DefectVector d = contravariant_defect(M, seq);
    for (int j = 0; j < M.size(); ++j)
        REQUIRE(d.values[j] == (j == nonproj ? M.lA[j] : 0));
}

TEST_CASE("3-cluster tilting in kA4/J^2") {
    AlgebraPtr a = nakayama(4, 2);
    Rng rng(33);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    REQUIRE(ar.indecs.size() == 7);
    auto found = search_n_cluster_tilting(a, 3, ar);
    REQUIRE(found.size() == 1);
    const Subcat& M = found[0];
    REQUIRE(M.size() == 5);
    int nonproj = -1;
    for (int i = 0; i < M.size(); ++i)
        if (!M.member_proj[i]) nonproj = i;
    NExactSequence seq = n_almost_split_ending_at(M, nonproj, 3, rng);
    REQUIRE(seq.terms.size() == 5);
    REQUIRE(is_n_almost_split(M, seq));
    // the sequence runs through all four projective intervals
    REQUIRE(seq.terms[0]->dims == std::vector<int>{0, 0, 0, 1});
    REQUIRE(seq.terms[4]->dims == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("index vectors") {
    A2Fix f;
    // member: unit vector
    IndexVector u = index_vector(f.all, f.P1, 1);
    for (int j = 0; j < f.all.size(); ++j)
        REQUIRE(u.coeffs[j] == (j == f.all.index_of(f.P1) ? 1 : 0));
    // n = 1: decomposition coefficients
    IndexVector v = index_vector(f.all, direct_sum(f.P1, f.S2), 1);
    REQUIRE(v.coeffs[f.all.index_of(f.P1)] == 1);
    REQUIRE(v.coeffs[f.all.index_of(f.S2)] == 1);
}

TEST_CASE("index well-definedness via an independently padded resolution") {
    AlgebraPtr a = nakayama(3, 2);
    Rng rng(37);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    auto found = search_n_cluster_tilting(a, 2, ar);
    const Subcat& M = found[0];
    // S2 is the non-member
    ModulePtr S2 = simple_module(a, 1);
    REQUIRE(M.index_of(S2) < 0);
    IndexVector i1 = index_vector(M, S2, 2, false);
    IndexVector i2 = index_vector(M, S2, 2, true);
    REQUIRE(i1.coeffs == i2.coeffs);
    // resolution Hom-exactness holds
    Resolution res = right_M_resolution(M, S2, 2);
    REQUIRE(resolution_hom_exact(M, res, S2));
    // alternating dimension identity
    std::vector<int> acc = S2->dims;
    int nt = int(res.terms.size());
    for (int pos = 0; pos < nt; ++pos) {
        int deg = nt - 1 - pos;
        int sign = (deg % 2 == 0) ? -1 : 1;
        for (int v = 0; v < a->nv(); ++v) acc[v] += sign * res.terms[pos]->dims[v];
    }
    for (int v = 0; v < a->nv(); ++v) REQUIRE(acc[v] == 0);
}

TEST_CASE("resolution of a member is the identity") {
    A2Fix f;
    Resolution res = right_M_resolution(f.all, f.P1, 1);
    REQUIRE(res.terms.size() == 1);
    REQUIRE(res.terms[0]->dims == f.P1->dims);
    REQUIRE(factorize(res.augmentation).kernel->total_dim() == 0);
}

TEST_CASE("minimal right approximation examples") {
    A2Fix f;
    // X in subcat: identity up to iso
    Approximation ap = minimal_right_approximation(f.all, f.P1);
    REQUIRE(ap.source->dims == f.P1->dims);
    // subcat = projectives, X = S1: the projective cover
    std::vector<ModulePtr> projs{projective_module(f.alg, 0), projective_module(f.alg, 1)};
    Subcat P(f.alg, projs);
    Approximation c = minimal_right_approximation(P, f.S1);
    REQUIRE(c.source->dims == f.P1->dims);
    REQUIRE(factorize(c.map).cokernel->total_dim() == 0);
    // subcat = {P1}, X = S2: Hom(P1, S2) = 0 so the zero approximation
    Subcat justP1(f.alg, {f.P1});
    Approximation z = minimal_right_approximation(justP1, f.S2);
    REQUIRE(z.is_zero());
    REQUIRE(z.source->total_dim() == 0);
}

TEST_CASE("right minimality: dropping any copy breaks the approximation") {
    AlgebraPtr a = linear_Am(3);
    Rng rng(41);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    Subcat all(a, ar.indecs);
    ModulePtr X = direct_sum(simple_module(a, 0), projective_module(a, 1));
    Approximation ap = minimal_right_approximation(all, X);
    int ncopies = int(ap.copy_member.size());
    REQUIRE(ncopies > 0);
    for (int drop = 0; drop < ncopies; ++drop) {
        bool covers = true;
        for (int j = 0; j < all.size() && covers; ++j) {
            HomSpace hx = hom_basis(all.members[j], X);
            if (hx.dim() == 0) continue;
            FpMat span(hx.dim(), 0, a->field.p);
            for (int c = 0; c < ncopies; ++c) {
                if (c == drop) continue;
                const HomSpace& hji = all.hom[j][ap.copy_member[c]];
                FpMat B(hx.dim(), hji.dim(), a->field.p);
                for (int g = 0; g < hji.dim(); ++g) {
                    auto coords = hx.coords(compose(ap.copy_map[c], hji.basis[g]));
                    for (int r = 0; r < B.rows; ++r) B.at(r, g) = coords[r];
                }
                span = hstack(span, B);
            }
            if (rank(span) != hx.dim()) covers = false;
        }
        REQUIRE_FALSE(covers);
    }
}
