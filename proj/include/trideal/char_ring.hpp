#pragma once

#include "trideal/groups.hpp"
#include "trideal/integers.hpp"

#include <cstdint>
#include <vector>

namespace trideal {

// Element of the character ring Z[A*]: a dense integer coefficient vector
// indexed by the fixed character enumeration of the ambient group. This is
// the integral model of the p-adic K-theory of BA; all torsion questions
// about the Z_p-version are decided here.
struct CharRingElement {
    FiniteAbelianPGroup group;
    std::vector<Int> coeffs;

    bool operator==(const CharRingElement& o) const {
        return group == o.group && coeffs == o.coeffs;
    }
    bool operator!=(const CharRingElement& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : coeffs)
            if (x != 0) return false;
        return true;
    }
};

inline CharRingElement ring_zero(const FiniteAbelianPGroup& g) {
    return {g, std::vector<Int>(static_cast<std::size_t>(g.order), 0)};
}

inline CharRingElement ring_unit(const FiniteAbelianPGroup& g) {
    CharRingElement x = ring_zero(g);
    x.coeffs[0] = 1;
    return x;
}

inline CharRingElement basis_character(const FiniteAbelianPGroup& g, std::uint32_t chi) {
    CharRingElement x = ring_zero(g);
    x.coeffs[chi] = 1;
    return x;
}

inline void check_same_group(const CharRingElement& a, const CharRingElement& b) {
    if (a.group != b.group)
        throw std::invalid_argument("char ring: mismatched ambient groups");
}

inline CharRingElement ring_add(const CharRingElement& a, const CharRingElement& b) {
    check_same_group(a, b);
    CharRingElement r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

inline CharRingElement ring_sub(const CharRingElement& a, const CharRingElement& b) {
    check_same_group(a, b);
    CharRingElement r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

inline CharRingElement ring_scalar(const CharRingElement& a, const Int& s) {
    CharRingElement r = a;
    for (auto& x : r.coeffs) x *= s;
    return r;
}

// group-ring multiplication over the dual: chi * psi = chi + psi in A*
inline CharRingElement ring_mul(const CharRingElement& a, const CharRingElement& b) {
    check_same_group(a, b);
    CharRingElement r = ring_zero(a.group);
    const std::uint32_t n = static_cast<std::uint32_t>(a.group.order);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (b.coeffs[j] == 0) continue;
            r.coeffs[a.group.add(i, j)] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return r;
}

// multiplication by a single character is a permutation of coefficients
inline CharRingElement ring_twist(const CharRingElement& a, std::uint32_t chi) {
    CharRingElement r = ring_zero(a.group);
    const std::uint32_t n = static_cast<std::uint32_t>(a.group.order);
    for (std::uint32_t i = 0; i < n; ++i)
        if (a.coeffs[i] != 0) r.coeffs[a.group.add(i, chi)] = a.coeffs[i];
    return r;
}

// sum of coefficients; a ring homomorphism to Z
inline Int augmentation(const CharRingElement& a) {
    Int s = 0;
    for (const auto& x : a.coeffs) s += x;
    return s;
}

// Restriction along A' <= A: each character goes to its restriction, computed
// through the pairing. Surjective for every subgroup.
inline CharRingElement restrict_to(const CharRingElement& a, const SubgroupContext& ctx) {
    if (a.group != ctx.ambient)
        throw std::invalid_argument("restrict_to: element not over the ambient group");
    CharRingElement r = ring_zero(ctx.local);
    for (std::uint32_t chi = 0; chi < a.group.order; ++chi)
        if (a.coeffs[chi] != 0) r.coeffs[ctx.restrict_char[chi]] += a.coeffs[chi];
    return r;
}

// Tr_{A'}^{A}(1): the sum of the |A|/|A'| characters whose restriction to A'
// is trivial, all with coefficient 1.
inline CharRingElement transfer_unit(const FiniteAbelianPGroup& g, const Subgroup& s) {
    CharRingElement r = ring_zero(g);
    for (auto chi : annihilator_characters(g, s)) r.coeffs[chi] = 1;
    return r;
}

// Deterministic section of restriction: lift each character of A' to the
// lexicographically least character of A restricting to it.
inline CharRingElement lift_through(const CharRingElement& x, const SubgroupContext& ctx) {
    if (x.group != ctx.local)
        throw std::invalid_argument("lift_through: element not over the subgroup");
    CharRingElement r = ring_zero(ctx.ambient);
    for (std::uint32_t psi = 0; psi < ctx.local.order; ++psi)
        if (x.coeffs[psi] != 0) r.coeffs[ctx.lift_char[psi]] += x.coeffs[psi];
    return r;
}

// Tr_{A'}^{A}(x) = lift(x) * Tr_{A'}^{A}(1). Satisfies the projection formula
// Tr(res(a) * y) = a * Tr(y); independent of the choice of section.
inline CharRingElement transfer(const CharRingElement& x, const SubgroupContext& ctx) {
    return ring_mul(lift_through(x, ctx), transfer_unit(ctx.ambient, ctx.sub));
}

// In Z[((Z/p)^2)*]: the sum of the transfer units of the p+1 index-p
// subgroups minus the transfer unit of the trivial subgroup. Equals p * 1.
inline CharRingElement prime_transfer_combination(std::uint64_t p) {
    FiniteAbelianPGroup g = make_group(p, {1, 1});
    CharRingElement acc = ring_zero(g);
    for (const auto& v : maximal_subgroups(g)) acc = ring_add(acc, transfer_unit(g, v));
    return ring_sub(acc, transfer_unit(g, trivial_subgroup(g)));
}

} // namespace trideal
