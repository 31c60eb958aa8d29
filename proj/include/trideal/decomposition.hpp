#pragma once

#include "trideal/groups.hpp"
#include "trideal/smith.hpp"
#include "trideal/transfer_ideal.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trideal {

// One point of A^{n-1} in the height-n free-loop-space decomposition,
// together with the subgroup its entries generate.
struct LoopTuple {
    std::vector<std::uint32_t> entries; // n-1 element indices
    Subgroup generated;
};

inline std::vector<LoopTuple> enumerate_tuples(const FiniteAbelianPGroup& g, unsigned height,
                                               std::uint64_t tuple_bound = 100000) {
    if (height < 1) throw std::invalid_argument("enumerate_tuples: height must be >= 1");
    const unsigned len = height - 1;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < len; ++i) {
        total *= g.order; // order <= 2^16 and the bound caps growth, no overflow
        if (total > tuple_bound)
            throw bound_exceeded("enumerate_tuples: tuple count exceeds configured bound");
    }

    std::vector<LoopTuple> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::uint32_t> cur(len, 0);
    for (std::uint64_t it = 0;; ++it) {
        LoopTuple t;
        t.entries = cur;
        t.generated = subgroup_generated_by(g, cur);
        out.push_back(std::move(t));
        // lexicographic increment, last coordinate fastest
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++cur[pos] < g.order) break;
            cur[pos] = 0;
            if (pos == 0) return out;
        }
        if (len == 0) return out;
    }
}

// The transfer ideal attached to a tuple: generated by the transfers from
// the proper subgroups that contain the subgroup generated by the tuple.
// Only the zero tuple's ideal is pinned down externally (all proper
// subgroups); the extension to arbitrary tuples is this library's modeling
// choice, kept behind this single function and flagged in every report.
inline constexpr const char* kTupleIdealAssumption =
    "tuple ideal modeled as transfers from proper subgroups containing the "
    "subgroup generated by the tuple; only the zero tuple's ideal is forced "
    "by the decomposition";

inline TransferIdeal tuple_ideal(const FiniteAbelianPGroup& g, const LoopTuple& t,
                                 const std::vector<Subgroup>* all_subgroups = nullptr,
                                 std::uint64_t order_bound = 1u << 16) {
    std::vector<Subgroup> subs;
    if (all_subgroups == nullptr) {
        subs = enumerate_subgroups(g, order_bound);
        all_subgroups = &subs;
    }
    std::vector<Subgroup> sources;
    for (const auto& s : *all_subgroups)
        if (s.order() < g.order && s.mask.contains(t.generated.mask)) sources.push_back(s);
    return build_transfer_ideal(g, IdealPolicy::Explicit, std::move(sources), order_bound);
}

struct TupleQuotient {
    LoopTuple tuple;
    QuotientStructure structure;
};

struct DecompositionReport {
    unsigned height = 1;
    std::vector<TupleQuotient> per_tuple; // lexicographic tuple order
    bool verdict_p_torsion = false;
    std::optional<std::vector<std::uint32_t>> witness; // first torsion tuple
    std::string assumption = kTupleIdealAssumption;
};

// Per-tuple quotient structures and the aggregated torsion verdict. The
// quotient depends only on the generated subgroup, so structures are computed
// once per distinct subgroup; the sources are cut down to the maximal proper
// subgroups containing it, which spans the same lattice as the full
// proper-superset family (transfer transitivity; audited in the test suite).
inline DecompositionReport decomposition_report(const FiniteAbelianPGroup& g, unsigned height,
                                                std::uint64_t tuple_bound = 100000,
                                                std::uint64_t order_bound = 1u << 16) {
    DecompositionReport rep;
    rep.height = height;
    std::vector<LoopTuple> tuples = enumerate_tuples(g, height, tuple_bound);
    std::vector<Subgroup> maximals = g.is_trivial() ? std::vector<Subgroup>{} : maximal_subgroups(g);

    std::map<std::vector<std::uint32_t>, QuotientStructure> cache; // keyed by subgroup elements
    for (auto& t : tuples) {
        auto it = cache.find(t.generated.elements);
        if (it == cache.end()) {
            QuotientStructure q;
            if (t.generated.order() == g.order) {
                // no qualifying proper subgroup: zero ideal, quotient is all of Z[A*]
                q.free_rank = g.order;
            } else {
                std::vector<Subgroup> sources;
                for (const auto& m : maximals)
                    if (m.mask.contains(t.generated.mask)) sources.push_back(m);
                TransferIdeal ideal =
                    build_transfer_ideal(g, IdealPolicy::Explicit, std::move(sources), order_bound);
                q = quotient_report(g, ideal);
            }
            it = cache.emplace(t.generated.elements, std::move(q)).first;
        }
        if (it->second.p_torsion_present && !rep.witness) rep.witness = t.entries;
        rep.per_tuple.push_back({std::move(t), it->second});
    }
    rep.verdict_p_torsion = rep.witness.has_value();
    return rep;
}

} // namespace trideal
