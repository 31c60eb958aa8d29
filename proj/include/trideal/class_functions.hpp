#pragma once

#include "trideal/char_ring.hpp"
#include "trideal/cyclotomic.hpp"
#include "trideal/groups.hpp"
#include "trideal/lattice.hpp"

#include <cstdint>
#include <vector>

namespace trideal {

// Functions A -> Z[zeta_{exponent(A)}], indexed by element. For an abelian
// p-group every element is its own conjugacy class and has p-power order, so
// the domain is all of A. This is the finite-level integral model of the
// class-function ring the character map lands in; the full colimit of
// cyclotomic extensions is never needed because every character of A takes
// values at level exponent(A).
struct ClassFunction {
    FiniteAbelianPGroup group;
    unsigned level_exp = 0; // always the exponent of the group
    std::vector<CyclotomicInteger> values;

    bool operator==(const ClassFunction& o) const {
        return group == o.group && level_exp == o.level_exp && values == o.values;
    }
    bool operator!=(const ClassFunction& o) const { return !(*this == o); }
};

inline unsigned group_level_exp(const FiniteAbelianPGroup& g) {
    return g.exponents.empty() ? 0u : g.exponents[0];
}

inline ClassFunction class_constant(const FiniteAbelianPGroup& g, const Int& v) {
    ClassFunction f;
    f.group = g;
    f.level_exp = group_level_exp(g);
    f.values.assign(static_cast<std::size_t>(g.order), cyclo_from_int(g.p, f.level_exp, v));
    return f;
}

inline ClassFunction class_zero(const FiniteAbelianPGroup& g) { return class_constant(g, 0); }
inline ClassFunction class_one(const FiniteAbelianPGroup& g) { return class_constant(g, 1); }

inline ClassFunction class_add(const ClassFunction& a, const ClassFunction& b) {
    if (a.group != b.group) throw std::invalid_argument("class functions: group mismatch");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        r.values[i] = cyclo_add(r.values[i], b.values[i]);
    return r;
}

inline ClassFunction class_sub(const ClassFunction& a, const ClassFunction& b) {
    if (a.group != b.group) throw std::invalid_argument("class functions: group mismatch");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        r.values[i] = cyclo_sub(r.values[i], b.values[i]);
    return r;
}

inline ClassFunction class_mul(const ClassFunction& a, const ClassFunction& b) {
    if (a.group != b.group) throw std::invalid_argument("class functions: group mismatch");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        r.values[i] = cyclo_mul(r.values[i], b.values[i]);
    return r;
}

namespace detail {

// acc += v * zeta^k without materializing the power: zeta^k is either a
// monomial or, past degree phi, minus a sparse sum
inline void add_zeta_multiple(std::vector<Int>& acc, const Int& v, std::uint64_t k,
                              std::uint64_t p, unsigned e) {
    if (e == 0) {
        acc[0] += v;
        return;
    }
    const std::uint64_t phi = cyclo_phi(p, e);
    if (k < phi) {
        acc[static_cast<std::size_t>(k)] += v;
    } else {
        const std::uint64_t m = ipow_u64(p, e - 1);
        const std::uint64_t r = k - phi;
        for (std::uint64_t j = 0; j + 1 < p; ++j) acc[static_cast<std::size_t>(r + j * m)] -= v;
    }
}

} // namespace detail

// The character map: x |-> (a |-> sum_chi x_chi zeta^{<chi,a>}). An injective
// ring homomorphism into the class functions.
inline ClassFunction character_map(const CharRingElement& x) {
    const FiniteAbelianPGroup& g = x.group;
    const unsigned e = group_level_exp(g);
    const std::size_t phi = static_cast<std::size_t>(cyclo_phi(g.p, e));
    std::vector<std::uint32_t> support;
    for (std::uint32_t chi = 0; chi < g.order; ++chi)
        if (x.coeffs[chi] != 0) support.push_back(chi);

    ClassFunction f;
    f.group = g;
    f.level_exp = e;
    f.values.reserve(static_cast<std::size_t>(g.order));
    for (std::uint32_t a = 0; a < g.order; ++a) {
        std::vector<Int> acc(phi, 0);
        for (auto chi : support)
            detail::add_zeta_multiple(acc, x.coeffs[chi], g.pairing(chi, a), g.p, e);
        CyclotomicInteger v;
        v.p = g.p;
        v.level_exp = e;
        v.c = std::move(acc);
        f.values.push_back(std::move(v));
    }
    return f;
}

// Transfer of class functions along A' <= A. The general formula
//   Tr(f)(g) = (1/|H|) sum_{k in G, k g k^{-1} in H} f(k g k^{-1})
// collapses for abelian groups to |A/A'| * f(a) on A' and 0 elsewhere, which
// keeps everything inside Z[zeta]. Values are raised from level exp(A') to
// exp(A) through the standard embedding.
inline ClassFunction class_transfer(const ClassFunction& f, const SubgroupContext& ctx) {
    if (f.group != ctx.local)
        throw std::invalid_argument("class_transfer: function not on the subgroup");
    const FiniteAbelianPGroup& g = ctx.ambient;
    const unsigned e = group_level_exp(g);
    const Int idx = ctx.sub.index;
    ClassFunction r = class_zero(g);
    for (std::uint32_t a = 0; a < g.order; ++a) {
        std::int32_t loc = ctx.to_local[a];
        if (loc < 0) continue;
        r.values[a] = cyclo_scalar(raise_level(f.values[static_cast<std::size_t>(loc)], e), idx);
    }
    return r;
}

// flatten a class function to an integer vector of length |A| * phi(level)
inline Row flatten_class_function(const ClassFunction& f) {
    const std::size_t phi = f.values.empty() ? 1 : f.values[0].c.size();
    Row v(f.values.size() * phi, 0);
    for (std::size_t a = 0; a < f.values.size(); ++a)
        for (std::size_t k = 0; k < phi; ++k) v[a * phi + k] = f.values[a].c[k];
    return v;
}

// The Z[zeta]-lattice inside prod_a Z[zeta] spanned by all products
// (image of a character) * (generator), flattened to integer vectors.
// The zeta-module structure is absorbed by also twisting with the powers of
// zeta. Returns the canonical Hermite basis of the span.
inline HermiteBasis class_ideal_lattice(const FiniteAbelianPGroup& g,
                                        const std::vector<ClassFunction>& generators) {
    const unsigned e = group_level_exp(g);
    const std::size_t phi = static_cast<std::size_t>(cyclo_phi(g.p, e));
    const std::size_t ncols = static_cast<std::size_t>(g.order) * phi;
    LatticeBuilder builder(ncols);
    for (const auto& gen : generators) {
        if (gen.group != g) throw std::invalid_argument("class_ideal_lattice: group mismatch");
        for (std::uint32_t chi = 0; chi < g.order; ++chi) {
            ClassFunction twisted = class_mul(character_map(basis_character(g, chi)), gen);
            for (std::uint64_t j = 0; j < phi; ++j) {
                ClassFunction shifted = twisted;
                if (j != 0) {
                    CyclotomicInteger zj = zeta_power(g.p, e, j);
                    for (auto& val : shifted.values) val = cyclo_mul(val, zj);
                }
                builder.add_row(flatten_class_function(shifted));
            }
        }
    }
    return builder.finalize();
}

} // namespace trideal
