#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace triarr {

/// Prime field F_p together with a distinguished element zeta of exact
/// multiplicative order n (n divides p-1).  All field elements are canonical
/// representatives in [0, p).
struct PrimeField {
    std::uint64_t p = 0;   // odd prime modulus
    std::uint64_t n = 1;   // order of zeta, n | p-1
    std::uint64_t zeta = 1;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("division by zero in F_p");
        return pow(a, p - 2);
    }

    /// zeta^e with e an arbitrary (possibly negative) exponent.
    std::uint64_t zeta_pow(long long e) const {
        long long m = static_cast<long long>(n);
        long long r = e % m;
        if (r < 0) r += m;
        return pow(zeta, static_cast<std::uint64_t>(r));
    }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

} // namespace detail

/// Smallest primitive root modulo the odd prime p, found by trial.
inline std::uint64_t primitive_root(std::uint64_t p) {
    const auto factors = detail::prime_factors(p - 1);
    PrimeField f{p, 1, 1};
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : factors)
            if (f.pow(g, (p - 1) / q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

/// Smallest odd prime p >= max(min_p, n+1) with p = 1 (mod n), together with
/// zeta = g^((p-1)/n) for the smallest primitive root g.  Deterministic.
inline PrimeField find_field(std::uint64_t n, std::uint64_t min_p) {
    if (n < 1) throw std::invalid_argument("find_field: n must be positive");
    std::uint64_t p = min_p > n + 1 ? min_p : n + 1;
    if (p < 3) p = 3;
    while (!(p % 2 == 1 && (p - 1) % n == 0 && detail::is_prime_u64(p))) ++p;
    std::uint64_t g = primitive_root(p);
    PrimeField f{p, n, 1};
    f.zeta = f.pow(g, (p - 1) / n);
    return f;
}

} // namespace triarr
