#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "nart/fp.hpp"

namespace nart {

/// Dense row-major matrix over F_p.
struct FpMat {
    int rows = 0, cols = 0;
    u32 p = 2;
    std::vector<u32> a;

    FpMat() = default;
    FpMat(int r, int c, u32 prime) : rows(r), cols(c), p(prime), a(std::size_t(r) * c, 0) {}

    u32& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    u32 at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static FpMat identity(int n, u32 prime) {
        FpMat m(n, n, prime);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
    }
    bool operator==(const FpMat& o) const {
        return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
    }
};

inline FpMat mul(const FpMat& A, const FpMat& B) {
    if (A.cols != B.rows || A.p != B.p) throw Error("matrix product shape mismatch");
    Fp F(A.p);
    FpMat C(A.rows, B.cols, A.p);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            u32 aik = A.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

inline FpMat add(const FpMat& A, const FpMat& B) {
    if (A.rows != B.rows || A.cols != B.cols || A.p != B.p)
        throw Error("matrix sum shape mismatch");
    Fp F(A.p);
    FpMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(C.a[i], B.a[i]);
    return C;
}

inline FpMat scale(const FpMat& A, u32 c) {
    Fp F(A.p);
    FpMat C = A;
    for (auto& x : C.a) x = F.mul(x, c);
    return C;
}

inline FpMat transpose(const FpMat& A) {
    FpMat T(A.cols, A.rows, A.p);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

inline u32 trace(const FpMat& A) {
    Fp F(A.p);
    u32 t = 0;
    for (int i = 0; i < std::min(A.rows, A.cols); ++i) t = F.add(t, A.at(i, i));
    return t;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(FpMat& M) {
    Fp F(M.p);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
        u32 inv = F.inv(M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = F.mul(M.at(r, j), inv);
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || !M.at(i, c)) continue;
            u32 f = M.at(i, c);
            for (int j = c; j < M.cols; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(FpMat M) { return int(rref(M).size()); }

/// Basis of {x : Mx = 0} as matrix columns.
inline FpMat nullspace(FpMat M) {
    Fp F(M.p);
    std::vector<int> piv = rref(M);
    std::vector<bool> is_piv(M.cols, false);
    for (int c : piv) is_piv[c] = true;
    int k = M.cols - int(piv.size());
    FpMat N(M.cols, k, M.p);
    int col = 0;
    for (int c = 0; c < M.cols; ++c) {
        if (is_piv[c]) continue;
        N.at(c, col) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            N.at(piv[r], col) = F.neg(M.at(int(r), c));
        ++col;
    }
    return N;
}

/// Row-space basis (echelonized, zero rows dropped).
inline FpMat row_basis(FpMat M) {
    std::vector<int> piv = rref(M);
    FpMat B(int(piv.size()), M.cols, M.p);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < M.cols; ++j) B.at(i, j) = M.at(i, j);
    return B;
}

inline FpMat hstack(const FpMat& A, const FpMat& B) {
    if (A.rows != B.rows || A.p != B.p) throw Error("hstack shape mismatch");
    FpMat C(A.rows, A.cols + B.cols, A.p);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

inline FpMat vstack(const FpMat& A, const FpMat& B) {
    if (A.cols != B.cols || A.p != B.p) throw Error("vstack shape mismatch");
    FpMat C(A.rows + B.rows, A.cols, A.p);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
    return C;
}

/// Block diagonal sum.
inline FpMat dsum(const FpMat& A, const FpMat& B) {
    FpMat C(A.rows + B.rows, A.cols + B.cols, A.p);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    return C;
}

inline bool is_invertible(const FpMat& A) {
    return A.rows == A.cols && rank(A) == A.rows;
}

inline FpMat inverse(const FpMat& A) {
    if (A.rows != A.cols) throw Error("inverse of a non-square matrix");
    FpMat aug = hstack(A, FpMat::identity(A.rows, A.p));
    std::vector<int> piv = rref(aug);
    if (int(piv.size()) != A.rows || (A.rows && piv.back() >= A.rows))
        throw Error("matrix not invertible");
    FpMat inv(A.rows, A.rows, A.p);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.rows; ++j) inv.at(i, j) = aug.at(i, A.rows + j);
    return inv;
}

/// Solver with a precomputed echelon form: solve B x = v for many v,
/// where the columns of B span the relevant subspace.
struct LinSolver {
    FpMat B;          // ambient x dim, columns = spanning vectors
    FpMat R;          // rref of [B | I]
    std::vector<int> pivots;
    int ambient = 0, dim = 0;

    LinSolver() = default;
    explicit LinSolver(const FpMat& basis) : B(basis), ambient(basis.rows), dim(basis.cols) {
        R = hstack(B, FpMat::identity(ambient, B.p));
        pivots = rref(R);
    }

    /// Coordinates c with B c = v, if v lies in the column space.
    std::optional<std::vector<u32>> solve(const std::vector<u32>& v) const {
        Fp F(B.p);
        // y = R_right * v gives the reduced form of v against the basis columns.
        std::vector<u32> y(R.rows, 0);
        for (int i = 0; i < R.rows; ++i) {
            u32 s = 0;
            for (int j = 0; j < ambient; ++j)
                s = F.add(s, F.mul(R.at(i, dim + j), v[j]));
            y[i] = s;
        }
        std::vector<u32> c(dim, 0);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] < dim) {
                c[pivots[r]] = y[r];
            } else if (y[r] != 0) {
                return std::nullopt;  // v has a component outside the span
            }
        }
        for (std::size_t r = pivots.size(); r < y.size(); ++r)
            if (y[r] != 0) return std::nullopt;
        return c;
    }

    bool contains(const std::vector<u32>& v) const { return solve(v).has_value(); }
};

inline std::vector<u32> mat_vec(const FpMat& A, const std::vector<u32>& v) {
    Fp F(A.p);
    std::vector<u32> r(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        u32 s = 0;
        for (int j = 0; j < A.cols; ++j) s = F.add(s, F.mul(A.at(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

}  // namespace nart
