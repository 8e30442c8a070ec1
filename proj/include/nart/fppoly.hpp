#pragma once

#include <map>
#include <vector>

#include "nart/fpmat.hpp"

namespace nart {

/// Univariate polynomials over F_p, coefficients low degree first.
using Poly = std::vector<u32>;

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int poly_deg(const Poly& f) { return int(f.size()) - 1; }
inline bool poly_is_zero(const Poly& f) { return f.empty(); }

inline Poly poly_add(const Fp& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    poly_trim(a);
    return a;
}

inline Poly poly_sub(const Fp& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    poly_trim(a);
    return a;
}

inline Poly poly_mul(const Fp& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(c);
    return c;
}

inline Poly poly_scale(const Fp& F, Poly a, u32 c) {
    for (auto& x : a) x = F.mul(x, c);
    poly_trim(a);
    return a;
}

inline std::pair<Poly, Poly> poly_divmod(const Fp& F, Poly a, const Poly& b) {
    if (b.empty()) throw Error("polynomial division by zero");
    Poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    u32 lead_inv = F.inv(b.back());
    while (a.size() >= b.size()) {
        u32 c = F.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - b.size();
        if (c) {
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        }
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    poly_trim(q);
    poly_trim(a);
    return {q, a};
}

inline Poly poly_mod(const Fp& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

inline Poly poly_monic(const Fp& F, Poly a) {
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

inline Poly poly_gcd(const Fp& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

inline Poly poly_derivative(const Fp& F, const Poly& f) {
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(F.mul(f[i], F.reduce(static_cast<long long>(i))));
    poly_trim(d);
    return d;
}

inline Poly poly_powmod(const Fp& F, Poly base, u64 e, const Poly& mod) {
    Poly r{1};
    base = poly_mod(F, base, mod);
    while (e) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, base), mod);
        base = poly_mod(F, poly_mul(F, base, base), mod);
        e >>= 1;
    }
    return r;
}

inline u32 poly_eval(const Fp& F, const Poly& f, u32 x) {
    u32 r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
    return r;
}

/// Evaluate f at a square matrix.
inline FpMat poly_eval_mat(const Fp& F, const Poly& f, const FpMat& A) {
    FpMat R(A.rows, A.rows, A.p);
    FpMat P = FpMat::identity(A.rows, A.p);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i])
            for (int r = 0; r < A.rows; ++r)
                for (int c = 0; c < A.rows; ++c) R.at(r, c) = F.add(R.at(r, c), F.mul(f[i], P.at(r, c)));
        if (i + 1 < f.size()) P = mul(P, A);
    }
    return R;
}

/// Minimal polynomial: lcm of the local annihilators of the standard basis.
inline Poly min_poly(const FpMat& A) {
    Fp F(A.p);
    int n = A.rows;
    if (n == 0) return Poly{1};
    Poly mu{1};
    for (int seed = 0; seed < n && poly_deg(mu) < n; ++seed) {
        std::vector<std::vector<u32>> chain;
        std::vector<u32> v(n, 0);
        v[seed] = 1;
        while (true) {
            FpMat test(int(chain.size()) + 1, n, A.p);
            for (std::size_t i = 0; i < chain.size(); ++i)
                for (int j = 0; j < n; ++j) test.at(int(i), j) = chain[i][j];
            for (int j = 0; j < n; ++j) test.at(test.rows - 1, j) = v[j];
            if (rank(test) < test.rows) break;
            chain.push_back(v);
            v = mat_vec(A, v);
        }
        FpMat B(n, int(chain.size()), A.p);
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (int j = 0; j < n; ++j) B.at(j, int(i)) = chain[i][j];
        LinSolver ls(B);
        auto sol = ls.solve(v);
        if (!sol) throw Error("min_poly: inconsistent Krylov dependency");
        Poly local(chain.size() + 1, 0);
        local[chain.size()] = 1;
        for (std::size_t i = 0; i < chain.size(); ++i) local[i] = F.neg((*sol)[i]);
        Poly g = poly_gcd(F, mu, local);
        mu = poly_monic(F, poly_mul(F, mu, poly_divmod(F, local, g).first));
    }
    return mu;
}

namespace detail {

inline Poly poly_pth_root(const Fp& F, const Poly& f) {
    // In F_p[x], f(x) = g(x^p) implies g = sum f[pi] x^i (Frobenius fixes F_p).
    Poly g;
    for (std::size_t i = 0; i < f.size(); i += F.p) g.push_back(f[i]);
    poly_trim(g);
    return g;
}

// Accumulates (squarefree product, multiplicity) pairs; products may share
// irreducible factors across entries, the caller merges after splitting.
inline void squarefree_decompose(const Fp& F, const Poly& f, u64 mult, std::map<Poly, u64>& out) {
    if (poly_deg(f) <= 0) return;
    Poly d = poly_derivative(F, f);
    if (poly_is_zero(d)) {
        squarefree_decompose(F, poly_pth_root(F, f), mult * F.p, out);
        return;
    }
    Poly g = poly_gcd(F, f, d);
    Poly q = poly_monic(F, poly_divmod(F, f, g).first);
    if (poly_deg(q) > 0) {
        out[q] += mult;
        squarefree_decompose(F, poly_monic(F, poly_divmod(F, f, q).first), mult, out);
    }
}

}  // namespace detail

/// Distinct-degree + Cantor-Zassenhaus factorization of squarefree monic f. Needs odd p.
inline std::vector<Poly> factor_squarefree(const Fp& F, Poly f, Rng& rng) {
    std::vector<Poly> irreducibles;
    if (F.p == 2) throw FieldTooSmall("polynomial splitting requires an odd prime");
    std::vector<std::pair<Poly, int>> by_degree;  // (product of irreducibles of degree d, d)
    Poly x{0, 1};
    Poly h = x;
    Poly rest = poly_monic(F, f);
    int d = 0;
    while (poly_deg(rest) > 0) {
        ++d;
        if (2 * d > poly_deg(rest)) {
            by_degree.push_back({rest, poly_deg(rest)});
            break;
        }
        h = poly_powmod(F, h, F.p, rest);
        Poly g = poly_gcd(F, poly_sub(F, h, x), rest);
        if (poly_deg(g) > 0) {
            by_degree.push_back({g, d});
            rest = poly_divmod(F, rest, g).first;
            h = poly_mod(F, h, rest);
        }
    }
    // Equal-degree splitting.
    for (auto& [prod, deg] : by_degree) {
        std::vector<Poly> stack{prod};
        while (!stack.empty()) {
            Poly g = stack.back();
            stack.pop_back();
            if (poly_deg(g) == deg) {
                irreducibles.push_back(poly_monic(F, g));
                continue;
            }
            // random split
            u64 exponent = 1;
            for (int i = 0; i < deg; ++i) exponent *= F.p;
            exponent = (exponent - 1) / 2;
            while (true) {
                Poly r(std::size_t(poly_deg(g)), 0);
                for (auto& c : r) c = rng.field_element(F);
                poly_trim(r);
                if (poly_deg(r) < 1) continue;
                Poly t = poly_powmod(F, r, exponent, g);
                t = poly_sub(F, t, Poly{1});
                Poly q = poly_gcd(F, t, g);
                if (poly_deg(q) > 0 && poly_deg(q) < poly_deg(g)) {
                    stack.push_back(q);
                    stack.push_back(poly_divmod(F, g, q).first);
                    break;
                }
            }
        }
    }
    return irreducibles;
}

/// Full factorization: list of (irreducible, multiplicity).
inline std::vector<std::pair<Poly, u64>> poly_factor(const Fp& F, const Poly& f, Rng& rng) {
    std::map<Poly, u64> sqf;
    detail::squarefree_decompose(F, poly_monic(F, f), 1, sqf);
    std::map<Poly, u64> result;
    for (auto& [part, mult] : sqf)
        for (const Poly& irr : factor_squarefree(F, part, rng)) result[irr] += mult;
    return {result.begin(), result.end()};
}

}  // namespace nart
