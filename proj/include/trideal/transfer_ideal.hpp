#pragma once

#include "trideal/char_ring.hpp"
#include "trideal/groups.hpp"
#include "trideal/lattice.hpp"
#include "trideal/smith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trideal {

enum class IdealPolicy { AllProper, MaximalOnly, Explicit };

inline const char* policy_name(IdealPolicy p) {
    switch (p) {
        case IdealPolicy::AllProper: return "all-proper";
        case IdealPolicy::MaximalOnly: return "maximal";
        case IdealPolicy::Explicit: return "explicit";
    }
    return "?";
}

// A transfer ideal of Z[A*], stored as the Z-lattice spanned by the character
// twists chi * Tr_{A'}^{A}(1). Twisting by a character permutes coefficients,
// so each source subgroup contributes the indicator vectors of the cosets of
// its annihilator: |A'| distinct vectors with |A|/|A'| ones each. The twist
// set is stored without repetition.
struct TransferIdeal {
    FiniteAbelianPGroup group;
    IdealPolicy policy = IdealPolicy::AllProper;
    std::vector<Subgroup> sources;
    std::vector<Row> generator_vectors;
};

namespace detail {

inline void append_twists(const FiniteAbelianPGroup& g, const Subgroup& s,
                          std::vector<Row>& out) {
    std::vector<std::uint32_t> ann = annihilator_characters(g, s);
    std::vector<bool> seen(static_cast<std::size_t>(g.order), false);
    for (std::uint32_t chi = 0; chi < g.order; ++chi) {
        if (seen[chi]) continue;
        Row v(static_cast<std::size_t>(g.order), 0);
        for (auto psi : ann) {
            std::uint32_t c = g.add(chi, psi);
            seen[c] = true;
            v[c] = 1;
        }
        out.push_back(std::move(v));
    }
}

} // namespace detail

inline TransferIdeal build_transfer_ideal(const FiniteAbelianPGroup& g, IdealPolicy policy,
                                          std::vector<Subgroup> explicit_sources = {},
                                          std::uint64_t order_bound = 1u << 16) {
    TransferIdeal ideal;
    ideal.group = g;
    ideal.policy = policy;
    switch (policy) {
        case IdealPolicy::AllProper: {
            if (g.is_trivial())
                throw std::invalid_argument("build_transfer_ideal: trivial group has no proper subgroups");
            for (auto& s : enumerate_subgroups(g, order_bound))
                if (s.order() < g.order) ideal.sources.push_back(std::move(s));
            break;
        }
        case IdealPolicy::MaximalOnly: {
            ideal.sources = maximal_subgroups(g);
            break;
        }
        case IdealPolicy::Explicit: {
            ideal.sources = std::move(explicit_sources);
            std::sort(ideal.sources.begin(), ideal.sources.end(), subgroup_sort_less);
            ideal.sources.erase(std::unique(ideal.sources.begin(), ideal.sources.end()),
                                ideal.sources.end());
            break;
        }
    }
    for (const auto& s : ideal.sources) detail::append_twists(g, s, ideal.generator_vectors);
    return ideal;
}

inline HermiteBasis ideal_lattice(const TransferIdeal& ideal) {
    return hermite_basis(static_cast<std::size_t>(ideal.group.order), ideal.generator_vectors);
}

// Structure of Z[A*]/I as an abelian group, plus whether p itself lies in the
// ideal (p * e_trivial in the lattice).
inline QuotientStructure quotient_report(const FiniteAbelianPGroup& g, const TransferIdeal& ideal) {
    HermiteBasis h = ideal_lattice(ideal);
    QuotientStructure q = quotient_from_basis(static_cast<std::size_t>(g.order), h, g.p);
    Row pe(static_cast<std::size_t>(g.order), 0);
    pe[0] = g.p;
    q.p_annihilates = lattice_contains(h, std::move(pe));
    return q;
}

// Count of elements generating the whole group, i.e. lying in no proper
// subgroup. Equals the free rank of the quotient: phi(p^k) for cyclic groups
// and 0 as soon as the rank is at least 2.
inline std::uint64_t free_rank_prediction(const FiniteAbelianPGroup& g) {
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < g.order; ++a)
        if (g.element_order(a) == g.order) ++count;
    return count;
}

// Default analysis route: maximal sources, audited against the all-proper
// ideal (same lattice) while the group is small enough to enumerate cheaply.
inline TransferIdeal build_default_ideal(const FiniteAbelianPGroup& g,
                                         std::uint64_t order_bound = 1u << 16,
                                         std::uint64_t audit_bound = 81) {
    TransferIdeal ideal = build_transfer_ideal(g, IdealPolicy::MaximalOnly, {}, order_bound);
    if (g.order <= audit_bound) {
        TransferIdeal full = build_transfer_ideal(g, IdealPolicy::AllProper, {}, order_bound);
        if (ideal_lattice(ideal) != ideal_lattice(full))
            throw std::logic_error("build_default_ideal: maximal-only ideal differs from all-proper");
    }
    return ideal;
}

// ---------------------------------------------------------------------------
// Executable forms of the structural claims
// ---------------------------------------------------------------------------

// The quotient by the full transfer ideal is nonzero for every abelian
// p-group.
inline bool check_quotient_nonzero(const FiniteAbelianPGroup& g,
                                   std::uint64_t order_bound = 1u << 16) {
    return quotient_report(g, build_default_ideal(g, order_bound)).nonzero();
}

// For (Z/p)^2: the transfer-unit combination equals p exactly, and p lies in
// the transfer ideal (so the nonzero quotient is an F_p-algebra).
inline bool check_prime_transfer_identity(std::uint64_t p) {
    FiniteAbelianPGroup g = make_group(p, {1, 1});
    CharRingElement lhs = prime_transfer_combination(p);
    CharRingElement rhs = ring_scalar(ring_unit(g), Int(p));
    if (lhs != rhs) return false;
    return quotient_report(g, build_default_ideal(g)).p_annihilates;
}

struct SurjectionCheck {
    bool passed = false;
    SurjectionToRankTwo rho;
};

// For rank >= 2: pushing the proper subgroups of (Z/p)^2 back through a
// surjection rho yields proper subgroups of A whose transfers already put p
// into the ideal. The surjection used is recorded.
inline SurjectionCheck check_fp_via_surjection(const FiniteAbelianPGroup& g,
                                               const SurjectionToRankTwo& rho) {
    if (g.rank() < 2)
        throw std::invalid_argument("check_fp_via_surjection: rank must be >= 2");
    FiniteAbelianPGroup target = make_group(g.p, {1, 1});
    if (!surjection_is_onto(g, target, rho))
        throw std::invalid_argument("check_fp_via_surjection: map is not surjective");
    std::vector<Subgroup> sources;
    for (const auto& h : enumerate_subgroups(target)) {
        if (h.order() == target.order) continue;
        Subgroup pre = preimage_subgroup(g, rho, target, h);
        if (pre.order() == g.order)
            throw std::logic_error("check_fp_via_surjection: preimage not proper");
        sources.push_back(std::move(pre));
    }
    TransferIdeal ideal = build_transfer_ideal(g, IdealPolicy::Explicit, std::move(sources));
    Row pe(static_cast<std::size_t>(g.order), 0);
    pe[0] = g.p;
    SurjectionCheck out;
    out.rho = rho;
    out.passed = lattice_contains(ideal_lattice(ideal), std::move(pe));
    return out;
}

inline SurjectionCheck check_fp_via_surjection(const FiniteAbelianPGroup& g) {
    return check_fp_via_surjection(g, default_surjection(g));
}

} // namespace trideal
