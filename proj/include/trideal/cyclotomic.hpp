#pragma once

#include "trideal/integers.hpp"

#include <cstdint>
#include <vector>

namespace trideal {

// Z[zeta_{p^e}], represented as integer polynomials in zeta of degree below
// phi(p^e) = (p-1)p^{e-1}, reduced modulo the cyclotomic polynomial
//   Phi_{p^e}(x) = sum_{j<p} x^{j p^{e-1}}.
// Working modulo Phi (an irreducible polynomial, so the ring is a domain)
// rather than x^{p^e}-1 keeps zero-testing and divisibility honest.
// level_exp == 0 means the ring Z itself.
struct CyclotomicInteger {
    std::uint64_t p = 2;
    unsigned level_exp = 0;
    std::vector<Int> c; // size phi(p^level_exp)

    bool operator==(const CyclotomicInteger& o) const {
        return p == o.p && level_exp == o.level_exp && c == o.c;
    }
    bool operator!=(const CyclotomicInteger& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
};

inline std::uint64_t cyclo_phi(std::uint64_t p, unsigned e) {
    return e == 0 ? 1 : (p - 1) * ipow_u64(p, e - 1);
}

namespace detail {

// in-place reduction of a polynomial (any degree) modulo Phi_{p^e},
// using x^{phi} = -(1 + x^m + ... + x^{(p-2)m}) with m = p^{e-1}
inline void reduce_mod_cyclotomic(std::vector<Int>& c, std::uint64_t p, unsigned e) {
    const std::size_t phi = static_cast<std::size_t>(cyclo_phi(p, e));
    if (e == 0) {
        // zeta = 1: fold everything into the constant term
        for (std::size_t d = c.size(); d-- > 1;) {
            c[0] += c[d];
            c[d] = 0;
        }
        c.resize(1);
        return;
    }
    const std::size_t m = static_cast<std::size_t>(ipow_u64(p, e - 1));
    for (std::size_t d = c.size(); d-- > phi;) {
        if (c[d] == 0) continue;
        Int q = std::move(c[d]);
        c[d] = 0;
        std::size_t base = d - phi;
        for (std::uint64_t j = 0; j + 1 < p; ++j) c[base + j * m] -= q;
    }
    c.resize(phi);
}

} // namespace detail

inline CyclotomicInteger cyclo_zero(std::uint64_t p, unsigned e) {
    CyclotomicInteger z;
    z.p = p;
    z.level_exp = e;
    z.c.assign(static_cast<std::size_t>(cyclo_phi(p, e)), 0);
    return z;
}

inline CyclotomicInteger cyclo_from_int(std::uint64_t p, unsigned e, Int v) {
    CyclotomicInteger z = cyclo_zero(p, e);
    z.c[0] = std::move(v);
    return z;
}

inline CyclotomicInteger cyclo_one(std::uint64_t p, unsigned e) {
    return cyclo_from_int(p, e, 1);
}

// zeta^k reduced mod Phi; k is taken mod p^e
inline CyclotomicInteger zeta_power(std::uint64_t p, unsigned e, std::uint64_t k) {
    CyclotomicInteger z = cyclo_zero(p, e);
    if (e == 0) {
        z.c[0] = 1;
        return z;
    }
    k %= ipow_u64(p, e);
    const std::uint64_t phi = cyclo_phi(p, e);
    if (k < phi) {
        z.c[static_cast<std::size_t>(k)] = 1;
    } else {
        const std::uint64_t m = ipow_u64(p, e - 1);
        std::uint64_t r = k - phi; // r < m
        for (std::uint64_t j = 0; j + 1 < p; ++j) z.c[static_cast<std::size_t>(r + j * m)] = -1;
    }
    return z;
}

inline void check_same_level(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    if (a.p != b.p || a.level_exp != b.level_exp)
        throw std::invalid_argument("cyclotomic: level mismatch (raise levels explicitly)");
}

inline CyclotomicInteger cyclo_add(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    check_same_level(a, b);
    CyclotomicInteger r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

inline CyclotomicInteger cyclo_sub(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    check_same_level(a, b);
    CyclotomicInteger r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

inline CyclotomicInteger cyclo_neg(const CyclotomicInteger& a) {
    CyclotomicInteger r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline CyclotomicInteger cyclo_scalar(const CyclotomicInteger& a, const Int& s) {
    CyclotomicInteger r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

inline CyclotomicInteger cyclo_mul(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    check_same_level(a, b);
    std::vector<Int> conv(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            conv[i + j] += a.c[i] * b.c[j];
        }
    }
    detail::reduce_mod_cyclotomic(conv, a.p, a.level_exp);
    CyclotomicInteger r;
    r.p = a.p;
    r.level_exp = a.level_exp;
    r.c = std::move(conv);
    return r;
}

// embedding zeta_{p^e} -> zeta_{p^{e'}}^{p^{e'-e}} for e' >= e
inline CyclotomicInteger raise_level(const CyclotomicInteger& a, unsigned new_exp) {
    if (new_exp < a.level_exp)
        throw std::invalid_argument("raise_level: target level below current");
    if (new_exp == a.level_exp) return a;
    const std::uint64_t scale = ipow_u64(a.p, new_exp - a.level_exp);
    std::vector<Int> poly(a.c.size() * static_cast<std::size_t>(scale), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) poly[i * scale] = a.c[i];
    detail::reduce_mod_cyclotomic(poly, a.p, new_exp);
    CyclotomicInteger r;
    r.p = a.p;
    r.level_exp = new_exp;
    r.c = std::move(poly);
    return r;
}

// Galois twist zeta -> zeta^t for t prime to p; products over all t compute
// norms down to Z.
inline CyclotomicInteger galois_apply(const CyclotomicInteger& a, std::uint64_t t) {
    if (a.level_exp == 0) return a;
    const std::uint64_t level = ipow_u64(a.p, a.level_exp);
    if (t % a.p == 0) throw std::invalid_argument("galois_apply: exponent not prime to p");
    const std::uint64_t tm = t % level;
    std::vector<Int> poly(static_cast<std::size_t>(level), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        poly[static_cast<std::size_t>(i * tm % level)] += a.c[i];
    }
    detail::reduce_mod_cyclotomic(poly, a.p, a.level_exp);
    CyclotomicInteger r;
    r.p = a.p;
    r.level_exp = a.level_exp;
    r.c = std::move(poly);
    return r;
}

// true iff every coefficient is divisible by s, i.e. a lies in the ideal (s)
inline bool cyclo_divisible(const CyclotomicInteger& a, const Int& s) {
    for (const auto& x : a.c)
        if (x % s != 0) return false;
    return true;
}

} // namespace trideal
