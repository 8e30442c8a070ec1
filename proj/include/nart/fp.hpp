#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nart/errors.hpp"

namespace nart {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline bool is_prime_u32(u32 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context of the prime field F_p. Elements live in [0, p).
struct Fp {
    u32 p;

    explicit Fp(u32 prime) : p(prime) {
        if (!is_prime_u32(prime)) throw BadInput("field characteristic must be prime, got " + std::to_string(prime));
    }

    u32 reduce(long long x) const {
        long long r = x % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<u32>(r);
    }
    u32 add(u32 a, u32 b) const { u64 s = u64(a) + b; return s >= p ? u32(s - p) : u32(s); }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
    u32 mul(u32 a, u32 b) const { return u32((u64(a) * b) % p); }
    u32 pow(u32 a, u64 e) const {
        u32 r = 1 % p, base = a % p;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    u32 inv(u32 a) const {
        if (a == 0) throw Error("division by zero in F_p");
        return pow(a, u64(p) - 2);
    }
    u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
};

/// Deterministic RNG handle threaded through every randomized routine.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(u64 seed = 0) : gen(seed) {}
    u32 field_element(const Fp& F) {
        return u32(gen() % F.p);
    }
    u32 nonzero_field_element(const Fp& F) {
        u32 x = 0;
        while (x == 0) x = field_element(F);
        return x;
    }
    std::size_t index(std::size_t n) { return n == 0 ? 0 : std::size_t(gen() % n); }
};

}  // namespace nart
