#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "nart/errors.hpp"

namespace nart {

using Int = boost::multiprecision::cpp_int;

struct ZMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    Int& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static ZMat identity(int n) {
        ZMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    bool is_zero() const {
        for (const Int& x : a)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline ZMat zmul(const ZMat& A, const ZMat& B) {
    ZMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

inline ZMat ztranspose(const ZMat& A) {
    ZMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

/// Bareiss fraction-free determinant.
inline Int zdet(ZMat A) {
    if (A.rows != A.cols) throw BadInput("determinant of a non-square matrix");
    int n = A.rows;
    if (n == 0) return 1;
    Int prev = 1;
    Int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (A.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (A.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
                A.at(i, j) = num / prev;  // exact by Bareiss
            }
        prev = A.at(k, k);
    }
    return sign * A.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form with full transform tracking
// ---------------------------------------------------------------------------

struct SmithForm {
    ZMat U, D, V;        // U * A * V = D
    ZMat Uinv, Vinv;     // inverses, so A = Uinv * D * Vinv
    std::vector<Int> invariant_factors;  // nonzero diagonal entries
    int rank = 0;
};

inline SmithForm smith_normal_form(const ZMat& A0) {
    SmithForm S;
    S.D = A0;
    int m = A0.rows, n = A0.cols;
    S.U = ZMat::identity(m);
    S.Uinv = ZMat::identity(m);
    S.V = ZMat::identity(n);
    S.Vinv = ZMat::identity(n);
    ZMat& D = S.D;

    auto row_swap = [&](int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < n; ++j) std::swap(D.at(r1, j), D.at(r2, j));
        for (int j = 0; j < m; ++j) std::swap(S.U.at(r1, j), S.U.at(r2, j));
        for (int i = 0; i < m; ++i) std::swap(S.Uinv.at(i, r1), S.Uinv.at(i, r2));
    };
    auto col_swap = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < m; ++i) std::swap(D.at(i, c1), D.at(i, c2));
        for (int i = 0; i < n; ++i) std::swap(S.V.at(i, c1), S.V.at(i, c2));
        for (int j = 0; j < n; ++j) std::swap(S.Vinv.at(c1, j), S.Vinv.at(c2, j));
    };
    auto row_add = [&](int r1, int r2, const Int& c) {  // row r1 += c * row r2
        if (c == 0) return;
        for (int j = 0; j < n; ++j) D.at(r1, j) += c * D.at(r2, j);
        for (int j = 0; j < m; ++j) S.U.at(r1, j) += c * S.U.at(r2, j);
        for (int i = 0; i < m; ++i) S.Uinv.at(i, r2) -= c * S.Uinv.at(i, r1);
    };
    auto col_add = [&](int c1, int c2, const Int& c) {  // col c1 += c * col c2
        if (c == 0) return;
        for (int i = 0; i < m; ++i) D.at(i, c1) += c * D.at(i, c2);
        for (int i = 0; i < n; ++i) S.V.at(i, c1) += c * S.V.at(i, c2);
        for (int j = 0; j < n; ++j) S.Vinv.at(c2, j) -= c * S.Vinv.at(c1, j);
    };
    auto row_negate = [&](int r) {
        for (int j = 0; j < n; ++j) D.at(r, j) = -D.at(r, j);
        for (int j = 0; j < m; ++j) S.U.at(r, j) = -S.U.at(r, j);
        for (int i = 0; i < m; ++i) S.Uinv.at(i, r) = -S.Uinv.at(i, r);
    };

    int t = std::min(m, n);
    for (int s = 0; s < t; ++s) {
        // find the smallest nonzero entry in the trailing submatrix
        bool again = true;
        while (again) {
            int pi = -1, pj = -1;
            Int best = 0;
            for (int i = s; i < m; ++i)
                for (int j = s; j < n; ++j) {
                    Int v = abs(D.at(i, j));
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { again = false; break; }  // trailing block zero
            row_swap(s, pi);
            col_swap(s, pj);
            // clear row and column s by division
            bool cleared = true;
            for (int i = s + 1; i < m; ++i) {
                Int q = D.at(i, s) / D.at(s, s);
                row_add(i, s, -q);
                if (D.at(i, s) != 0) cleared = false;
            }
            for (int j = s + 1; j < n; ++j) {
                Int q = D.at(s, j) / D.at(s, s);
                col_add(j, s, -q);
                if (D.at(s, j) != 0) cleared = false;
            }
            if (!cleared) continue;  // smaller remainders appeared, repeat
            // divisibility of the trailing block
            bool divides = true;
            for (int i = s + 1; i < m && divides; ++i)
                for (int j = s + 1; j < n && divides; ++j)
                    if (D.at(i, j) % D.at(s, s) != 0) {
                        row_add(s, i, 1);
                        divides = false;
                    }
            if (divides) again = false;
        }
        if (D.at(s, s) < 0) row_negate(s);
        if (D.at(s, s) == 0) break;
    }
    for (int s = 0; s < t; ++s)
        if (D.at(s, s) != 0) {
            S.invariant_factors.push_back(D.at(s, s));
            ++S.rank;
        }
    return S;
}

// ---------------------------------------------------------------------------
// Hermite form (row lattice canonical basis) and lattices
// ---------------------------------------------------------------------------

/// Canonical row-style Hermite normal form; zero rows dropped.
inline ZMat hermite_form(ZMat A) {
    int m = A.rows, n = A.cols;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        // gcd-reduce the entries of column c in rows >= r
        while (true) {
            int piv = -1;
            Int best = 0;
            for (int i = r; i < m; ++i) {
                Int v = abs(A.at(i, c));
                if (v != 0 && (piv < 0 || v < best)) {
                    best = v;
                    piv = i;
                }
            }
            if (piv < 0) break;
            if (piv != r)
                for (int j = 0; j < n; ++j) std::swap(A.at(r, j), A.at(piv, j));
            bool all_clear = true;
            for (int i = r + 1; i < m; ++i) {
                if (A.at(i, c) == 0) continue;
                Int q = A.at(i, c) / A.at(r, c);
                for (int j = 0; j < n; ++j) A.at(i, j) -= q * A.at(r, j);
                if (A.at(i, c) != 0) all_clear = false;
            }
            if (all_clear) break;
        }
        if (A.at(r, c) == 0) continue;
        if (A.at(r, c) < 0)
            for (int j = 0; j < n; ++j) A.at(r, j) = -A.at(r, j);
        // reduce the rows above
        for (int i = 0; i < r; ++i) {
            Int q = A.at(i, c);
            // floor division for canonical representatives in [0, pivot)
            Int piv = A.at(r, c);
            Int fq;
            if (q >= 0)
                fq = q / piv;
            else
                fq = -((-q + piv - 1) / piv);
            if (fq != 0)
                for (int j = 0; j < n; ++j) A.at(i, j) -= fq * A.at(r, j);
        }
        ++r;
    }
    ZMat H(r, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) H.at(i, j) = A.at(i, j);
    return H;
}

/// Integer row lattice presented by its canonical Hermite basis.
struct Lattice {
    int ambient = 0;
    ZMat hermite;

    int lattice_rank() const { return hermite.rows; }
};

inline Lattice make_lattice(const ZMat& generators) {
    return {generators.cols, hermite_form(generators)};
}

inline bool lattice_equal(const Lattice& a, const Lattice& b) {
    return a.ambient == b.ambient && a.hermite == b.hermite;
}

inline bool lattice_contains(const Lattice& outer, const Lattice& inner) {
    if (outer.ambient != inner.ambient) return false;
    ZMat joint(outer.hermite.rows + inner.hermite.rows, outer.ambient);
    for (int i = 0; i < outer.hermite.rows; ++i)
        for (int j = 0; j < outer.ambient; ++j) joint.at(i, j) = outer.hermite.at(i, j);
    for (int i = 0; i < inner.hermite.rows; ++i)
        for (int j = 0; j < outer.ambient; ++j)
            joint.at(outer.hermite.rows + i, j) = inner.hermite.at(i, j);
    return hermite_form(joint) == outer.hermite;
}

/// Basis of the left kernel {v : v A = 0} from the Smith form.
inline ZMat left_kernel(const ZMat& A) {
    SmithForm S = smith_normal_form(A);
    int k = A.rows - S.rank;
    ZMat K(k, A.rows);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < A.rows; ++j) K.at(i, j) = S.U.at(S.rank + i, j);
    return K;
}

/// Is v in the row lattice of B? Solve c B = v over the integers via Smith.
inline bool lattice_member(const ZMat& B, const std::vector<Int>& v) {
    SmithForm S = smith_normal_form(B);
    // c B = v  <=>  (c Uinv) D = v V
    std::vector<Int> w(B.cols, 0);
    for (int j = 0; j < B.cols; ++j) {
        Int s = 0;
        for (int k = 0; k < B.cols; ++k) s += v[k] * S.V.at(k, j);
        w[j] = s;
    }
    int t = std::min(B.rows, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        if (j < t && S.D.at(j, j) != 0) {
            if (w[j] % S.D.at(j, j) != 0) return false;
        } else if (w[j] != 0) {
            return false;
        }
    }
    return true;
}

/// Sublattice of vectors of L supported on the kept coordinates.
inline Lattice lattice_restrict_support(const Lattice& L, const std::vector<bool>& keep) {
    const ZMat& B = L.hermite;
    int dropped = 0;
    for (bool k : keep)
        if (!k) ++dropped;
    ZMat Bd(B.rows, dropped);
    int c = 0;
    for (int j = 0; j < B.cols; ++j) {
        if (keep[j]) continue;
        for (int i = 0; i < B.rows; ++i) Bd.at(i, c) = B.at(i, j);
        ++c;
    }
    ZMat K = left_kernel(Bd);  // combinations vanishing on dropped coordinates
    return make_lattice(zmul(K, B));
}

}  // namespace nart
