#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "helpers.hpp"
#include "nart/groth.hpp"

using namespace nart;
using namespace fixtures;

namespace {

// Independent kernel oracle: plain fraction-free Gaussian elimination on the
// augmented system, no Smith machinery involved.
std::vector<std::vector<Int>> oracle_left_kernel(ZMat A) {
    int m = A.rows, n = A.cols;
    ZMat W(m, n + m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, n + i) = 1;
    }
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (W.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < n + m; ++j) std::swap(W.at(r, j), W.at(piv, j));
        for (int i = 0; i < m; ++i) {
            if (i == r || W.at(i, c) == 0) continue;
            Int a = W.at(r, c), b = W.at(i, c);
            for (int j = 0; j < n + m; ++j) W.at(i, j) = W.at(i, j) * a - b * W.at(r, j);
        }
        ++r;
    }
    std::vector<std::vector<Int>> out;
    for (int i = r; i < m; ++i) {
        std::vector<Int> row(m);
        Int g = 0;
        for (int j = 0; j < m; ++j) g = boost::multiprecision::gcd(g, W.at(i, n + j));
        if (g == 0) continue;
        for (int j = 0; j < m; ++j) row[j] = W.at(i, n + j) / g;
        out.push_back(row);
    }
    return out;
}

struct A2Fix {
    AlgebraPtr alg = linear_Am(2);
    Rng rng{61};
    ARQuiver ar = knit_ar_quiver(alg, 512, rng);
    ModulePtr S1 = simple_module(alg, 0);
    ModulePtr S2 = simple_module(alg, 1);
    ModulePtr P1 = projective_module(alg, 0);
    // fixture order (S1, P1, S2)
    Subcat M{alg, {S1, P1, S2}};
};

}  // namespace

TEST_CASE("smith normal form basics") {
    ZMat Z(2, 3);
    SmithForm sz = smith_normal_form(Z);
    REQUIRE(sz.rank == 0);
    REQUIRE(sz.D.is_zero());

    SmithForm si = smith_normal_form(ZMat::identity(3));
    REQUIRE(si.rank == 3);
    REQUIRE(si.invariant_factors == std::vector<Int>{1, 1, 1});

    ZMat A(2, 2);
    A.at(0, 0) = 2;
    A.at(1, 1) = 3;
    SmithForm sa = smith_normal_form(A);
    REQUIRE(sa.invariant_factors == std::vector<Int>{1, 6});
}

TEST_CASE("smith transform identities") {
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        ZMat A(3, 4);
        for (auto& x : A.a) x = int(rng.index(9)) - 4;
        SmithForm S = smith_normal_form(A);
        REQUIRE(zmul(zmul(S.U, A), S.V) == S.D);
        REQUIRE(zmul(zmul(S.Uinv, S.D), S.Vinv) == A);
        Int du = zdet(S.U), dv = zdet(S.V);
        REQUIRE((du == 1 || du == -1));
        REQUIRE((dv == 1 || dv == -1));
        REQUIRE(zmul(S.U, S.Uinv) == ZMat::identity(3));
        REQUIRE(zmul(S.V, S.Vinv) == ZMat::identity(4));
        for (std::size_t i = 0; i + 1 < S.invariant_factors.size(); ++i)
            REQUIRE(S.invariant_factors[i + 1] % S.invariant_factors[i] == 0);
    }
}

TEST_CASE("hermite form and lattice equality") {
    ZMat A(2, 3);
    A.at(0, 0) = 1; A.at(0, 1) = -1; A.at(0, 2) = 1;
    A.at(1, 0) = 2; A.at(1, 1) = -2; A.at(1, 2) = 2;
    Lattice L1 = make_lattice(A);
    REQUIRE(L1.lattice_rank() == 1);

    ZMat B(1, 3);
    B.at(0, 0) = -1; B.at(0, 1) = 1; B.at(0, 2) = -1;
    REQUIRE(lattice_equal(L1, make_lattice(B)));

    ZMat C(1, 3);
    C.at(0, 0) = 2; C.at(0, 1) = -2; C.at(0, 2) = 2;
    Lattice L3 = make_lattice(C);
    REQUIRE_FALSE(lattice_equal(L1, L3));
    REQUIRE(lattice_contains(L1, L3));
    REQUIRE_FALSE(lattice_contains(L3, L1));
}

TEST_CASE("left kernel agrees with the independent oracle") {
    A2Fix f;
    ZMat C = composition_factor_matrix(f.ar);
    ZMat K = left_kernel(C);
    auto oracle = oracle_left_kernel(C);
    ZMat O(int(oracle.size()), C.rows);
    for (int i = 0; i < O.rows; ++i)
        for (int j = 0; j < O.cols; ++j) O.at(i, j) = oracle[i][j];
    REQUIRE(lattice_equal(make_lattice(K), make_lattice(O)));
}

TEST_CASE("relation vectors over kA2") {
    A2Fix f;
    int a0 = f.M.index_of(f.S1);
    REQUIRE(a0 == 0);
    NExactSequence seq = n_almost_split_ending_at(f.M, a0, 1, f.rng);
    std::vector<long long> rv = relation_vector(f.M, seq, f.rng);
    REQUIRE(rv == std::vector<long long>{1, -1, 1});

    // split sequence: zero vector
    NExactSequence split;
    split.n = 1;
    ModulePtr mid = direct_sum(f.S2, f.S1);
    std::vector<ModulePtr> parts{f.S2, f.S1};
    split.terms = {f.S2, mid, f.S1};
    split.maps = {summand_inclusion(parts, mid, 0), summand_projection(parts, mid, 1)};
    REQUIRE(relation_vector(f.M, split, f.rng) == std::vector<long long>{0, 0, 0});

    // doubled middle: direct sum of two copies of the sequence
    NExactSequence dbl;
    dbl.n = 1;
    dbl.terms = {direct_sum(seq.terms[0], seq.terms[0]), direct_sum(seq.terms[1], seq.terms[1]),
                 direct_sum(seq.terms[2], seq.terms[2])};
    dbl.maps = {dsum_morphisms(seq.maps[0], seq.maps[0]),
                dsum_morphisms(seq.maps[1], seq.maps[1])};
    REQUIRE(relation_vector(f.M, dbl, f.rng) == std::vector<long long>{2, -2, 2});

    // a non-exact complex is rejected
    NExactSequence broken;
    broken.n = 1;
    ModulePtr mid2 = direct_sum(f.P1, f.S2);
    std::vector<ModulePtr> parts2{f.P1, f.S2};
    HomSpace s2p1 = hom_basis(f.S2, f.P1);
    HomSpace p1s1 = hom_basis(f.P1, f.S1);
    broken.terms = {f.S2, mid2, f.S1};
    broken.maps = {compose(summand_inclusion(parts2, mid2, 0), s2p1.basis[0]),
                   compose(p1s1.basis[0], summand_projection(parts2, mid2, 0))};
    REQUIRE_THROWS_AS(relation_vector(f.M, broken, f.rng), NotNExact);
}

TEST_CASE("relation lattice of mod Lambda") {
    A2Fix f;
    Lattice L = relation_lattice_mod_lambda(f.ar);
    REQUIRE(L.lattice_rank() == 1);

    // semisimple: no arrows, no relations
    Quiver q;
    q.vertices = {"1", "2"};
    AlgebraPtr ss = std::make_shared<BoundAlgebra>(q, std::vector<Relation>{}, 101);
    Rng rng(77);
    ARQuiver ar2 = knit_ar_quiver(ss, 512, rng);
    REQUIRE(ar2.indecs.size() == 2);
    REQUIRE(relation_lattice_mod_lambda(ar2).lattice_rank() == 0);

    // kA3: kernel rank 6 - 3
    AlgebraPtr a3 = linear_Am(3);
    ARQuiver ar3 = knit_ar_quiver(a3, 512, rng);
    REQUIRE(relation_lattice_mod_lambda(ar3).lattice_rank() == 3);
}

TEST_CASE("gram matrix of the kA2 fixture") {
    A2Fix f;
    ZMat G = gram_matrix(f.M);
    long long expect[3][3] = {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(G.at(i, j) == expect[i][j]);
}

TEST_CASE("beta vectors of the kA2 fixture") {
    A2Fix f;
    REQUIRE(beta_vector(f.M, 0, 1, f.rng) == std::vector<long long>{1, -1, 1});
    REQUIRE(beta_vector(f.M, 1, 1, f.rng) == std::vector<long long>{0, 1, -1});
    REQUIRE(beta_vector(f.M, 2, 1, f.rng) == std::vector<long long>{0, 0, 1});
}

TEST_CASE("orthogonality report over kA2") {
    A2Fix f;
    Report rep = verify_orthogonality(f.M, 1, f.rng);
    REQUIRE(rep.ok());
    for (int a = 0; a < f.M.size(); ++a) REQUIRE(f.M.lA[a] == 1);
    ZMat B(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.at(i, j) = rep.relation_matrix[i][j];
    Int d = zdet(B);
    REQUIRE((d == 1 || d == -1));
}

TEST_CASE("defect-relation duality: Gram * rv = l * unit") {
    A2Fix f;
    ZMat G = gram_matrix(f.M);
    int a0 = f.M.index_of(f.S1);
    NExactSequence seq = n_almost_split_ending_at(f.M, a0, 1, f.rng);
    std::vector<long long> rv = relation_vector(f.M, seq, f.rng);
    for (int x = 0; x < f.M.size(); ++x) {
        Int s = 0;
        for (int y = 0; y < f.M.size(); ++y) s += G.at(x, y) * Int(rv[y]);
        REQUIRE(s == (x == a0 ? Int(f.M.lA[a0]) : Int(0)));
    }
    // scale invariance of the relation vector
    NExactSequence scaled = seq;
    scaled.maps[0] = scale_morphism(scaled.maps[0], 7);
    REQUIRE(relation_vector(f.M, scaled, f.rng) == rv);
}

TEST_CASE("theorem A over kA2 and kA3") {
    A2Fix f;
    TheoremAData ta = verify_theorem_a(f.alg, f.M, 1, f.ar, f.rng);
    REQUIRE(ta.report.ok());
    REQUIRE(ta.relations.size() == 1);
    REQUIRE(ta.relations[0] == std::vector<long long>{1, -1, 1});

    AlgebraPtr a3 = linear_Am(3);
    Rng rng3(81);
    ARQuiver ar3 = knit_ar_quiver(a3, 512, rng3);
    Subcat all3(a3, ar3.indecs);
    TheoremAData t3 = verify_theorem_a(a3, all3, 1, ar3, rng3);
    REQUIRE(t3.report.ok());
    REQUIRE(t3.relations.size() == 3);
}

TEST_CASE("K0 isomorphism over kA2") {
    A2Fix f;
    Report rep = verify_k0_iso(f.alg, f.M, 1, f.ar, f.rng, 8);
    REQUIRE(rep.ok());
    REQUIRE(rep.invariant_factors == std::vector<std::string>{"1"});
}

TEST_CASE("theorem A and K0 on the Nakayama 2-cluster tilting instance") {
    AlgebraPtr a = nakayama(3, 2);
    Rng rng(91);
    ARQuiver ar = knit_ar_quiver(a, 512, rng);
    auto found = search_n_cluster_tilting(a, 2, ar);
    REQUIRE(found.size() == 1);
    const Subcat& M = found[0];
    TheoremAData ta = verify_theorem_a(a, M, 2, ar, rng);
    REQUIRE(ta.report.ok());
    int nonproj = 0;
    for (int i = 0; i < M.size(); ++i)
        if (!M.member_proj[i]) ++nonproj;
    REQUIRE(int(ta.relations.size()) == nonproj);
    Report k0 = verify_k0_iso(a, M, 2, ar, rng, 8);
    REQUIRE(k0.ok());
    for (const auto& d : k0.invariant_factors) REQUIRE(d == "1");

    // when the relation basis theorem holds, the beta matrix is unimodular
    Report orth = verify_orthogonality(M, 2, rng);
    REQUIRE(orth.ok());
    ZMat B(M.size(), M.size());
    for (int i = 0; i < M.size(); ++i)
        for (int j = 0; j < M.size(); ++j) B.at(i, j) = orth.relation_matrix[i][j];
    Int det = zdet(B);
    REQUIRE((det == 1 || det == -1));
}

TEST_CASE("the fixture is independent of the prime") {
    for (u32 p : {5u, 7u, 997u}) {
        AlgebraPtr a = linear_Am(2, p);
        Rng rng(107);
        ModulePtr S1 = simple_module(a, 0);
        ModulePtr S2 = simple_module(a, 1);
        ModulePtr P1 = projective_module(a, 0);
        Subcat M(a, {S1, P1, S2});
        ZMat G = gram_matrix(M);
        long long expect[3][3] = {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) REQUIRE(G.at(i, j) == expect[i][j]);
        REQUIRE(beta_vector(M, 0, 1, rng) == std::vector<long long>{1, -1, 1});
    }
}

TEST_CASE("k0 presentation bookkeeping") {
    A2Fix f;
    K0Presentation pres = k0_presentation(f.M, 1, f.rng);
    REQUIRE(pres.basis_labels.size() == 3);
    REQUIRE(pres.relation_matrix.rows == 1);
    REQUIRE(pres.invariant_factors == std::vector<Int>{1});
    REQUIRE(zmul(zmul(pres.snf.U, pres.relation_matrix), pres.snf.V) == pres.snf.D);
}
