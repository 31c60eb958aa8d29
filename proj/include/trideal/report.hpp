#pragma once

#include "trideal/decomposition.hpp"
#include "trideal/descriptor.hpp"
#include "trideal/groups.hpp"
#include "trideal/smith.hpp"
#include "trideal/transfer_ideal.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace trideal {

using nlohmann::json;

// ---------------------------------------------------------------------------
// AnalysisReport: the single structured document behind both the human and
// the machine-readable CLI output. Elementary divisors are serialized as
// decimal strings so the JSON round trip is lossless regardless of size.
// ---------------------------------------------------------------------------

struct SurjectionReportEntry {
    bool passed = false;
    std::vector<std::vector<std::uint64_t>> matrix; // 2 x rank, entries mod p

    bool operator==(const SurjectionReportEntry& o) const {
        return passed == o.passed && matrix == o.matrix;
    }
};

struct TupleReportEntry {
    std::vector<std::uint32_t> entries;
    std::uint64_t subgroup_order = 1;
    std::uint64_t free_rank = 0;
    std::vector<std::string> elementary_divisors;
    bool p_torsion = false;

    bool operator==(const TupleReportEntry& o) const {
        return entries == o.entries && subgroup_order == o.subgroup_order &&
               free_rank == o.free_rank && elementary_divisors == o.elementary_divisors &&
               p_torsion == o.p_torsion;
    }
};

struct DecompositionReportEntry {
    unsigned height = 1;
    std::uint64_t tuple_count = 0;
    std::vector<TupleReportEntry> tuples;
    bool verdict_p_torsion = false;
    std::optional<std::vector<std::uint32_t>> witness;

    bool operator==(const DecompositionReportEntry& o) const {
        return height == o.height && tuple_count == o.tuple_count && tuples == o.tuples &&
               verdict_p_torsion == o.verdict_p_torsion && witness == o.witness;
    }
};

struct AnalysisReport {
    int schema_version = 1;
    std::string group;
    std::uint64_t prime = 2;
    std::vector<unsigned> exponents;
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;
    std::uint64_t rank = 0;

    std::uint64_t subgroups_total = 0;
    std::uint64_t subgroups_maximal = 0;

    std::string ideal_policy;
    std::uint64_t ideal_sources = 0;
    std::uint64_t ideal_generators = 0;
    std::uint64_t ideal_lattice_rank = 0;

    std::uint64_t free_rank = 0;
    std::vector<std::string> elementary_divisors;
    bool p_torsion_present = false;
    bool p_annihilates = false;
    bool quotient_nonzero = false;
    std::uint64_t free_rank_predicted = 0;

    bool check_quotient_nonzero = false;
    std::optional<bool> check_prime_transfer_identity; // only for (Z/p)^2
    std::optional<SurjectionReportEntry> check_fp_surjection; // only for rank >= 2

    std::optional<DecompositionReportEntry> decomposition;
    std::vector<std::string> assumptions;

    bool operator==(const AnalysisReport& o) const {
        return schema_version == o.schema_version && group == o.group && prime == o.prime &&
               exponents == o.exponents && order == o.order && exponent == o.exponent &&
               rank == o.rank && subgroups_total == o.subgroups_total &&
               subgroups_maximal == o.subgroups_maximal && ideal_policy == o.ideal_policy &&
               ideal_sources == o.ideal_sources && ideal_generators == o.ideal_generators &&
               ideal_lattice_rank == o.ideal_lattice_rank && free_rank == o.free_rank &&
               elementary_divisors == o.elementary_divisors &&
               p_torsion_present == o.p_torsion_present && p_annihilates == o.p_annihilates &&
               quotient_nonzero == o.quotient_nonzero &&
               free_rank_predicted == o.free_rank_predicted &&
               check_quotient_nonzero == o.check_quotient_nonzero &&
               check_prime_transfer_identity == o.check_prime_transfer_identity &&
               check_fp_surjection == o.check_fp_surjection &&
               decomposition == o.decomposition && assumptions == o.assumptions;
    }
};

// ---- JSON serialization ----------------------------------------------------

inline void to_json(json& j, const SurjectionReportEntry& s) {
    j = json{{"passed", s.passed}, {"matrix", s.matrix}};
}

inline void from_json(const json& j, SurjectionReportEntry& s) {
    j.at("passed").get_to(s.passed);
    j.at("matrix").get_to(s.matrix);
}

inline void to_json(json& j, const TupleReportEntry& t) {
    j = json{{"entries", t.entries},
             {"subgroup_order", t.subgroup_order},
             {"free_rank", t.free_rank},
             {"elementary_divisors", t.elementary_divisors},
             {"p_torsion", t.p_torsion}};
}

inline void from_json(const json& j, TupleReportEntry& t) {
    j.at("entries").get_to(t.entries);
    j.at("subgroup_order").get_to(t.subgroup_order);
    j.at("free_rank").get_to(t.free_rank);
    j.at("elementary_divisors").get_to(t.elementary_divisors);
    j.at("p_torsion").get_to(t.p_torsion);
}

inline void to_json(json& j, const DecompositionReportEntry& d) {
    j = json{{"height", d.height},
             {"tuple_count", d.tuple_count},
             {"tuples", d.tuples},
             {"verdict_p_torsion", d.verdict_p_torsion}};
    if (d.witness)
        j["witness"] = *d.witness;
    else
        j["witness"] = nullptr;
}

inline void from_json(const json& j, DecompositionReportEntry& d) {
    j.at("height").get_to(d.height);
    j.at("tuple_count").get_to(d.tuple_count);
    j.at("tuples").get_to(d.tuples);
    j.at("verdict_p_torsion").get_to(d.verdict_p_torsion);
    if (j.at("witness").is_null())
        d.witness.reset();
    else
        d.witness = j.at("witness").get<std::vector<std::uint32_t>>();
}

inline void to_json(json& j, const AnalysisReport& r) {
    j = json{{"schema_version", r.schema_version},
             {"group", r.group},
             {"prime", r.prime},
             {"exponents", r.exponents},
             {"order", r.order},
             {"exponent", r.exponent},
             {"rank", r.rank},
             {"subgroups_total", r.subgroups_total},
             {"subgroups_maximal", r.subgroups_maximal},
             {"ideal_policy", r.ideal_policy},
             {"ideal_sources", r.ideal_sources},
             {"ideal_generators", r.ideal_generators},
             {"ideal_lattice_rank", r.ideal_lattice_rank},
             {"free_rank", r.free_rank},
             {"elementary_divisors", r.elementary_divisors},
             {"p_torsion_present", r.p_torsion_present},
             {"p_annihilates", r.p_annihilates},
             {"quotient_nonzero", r.quotient_nonzero},
             {"free_rank_predicted", r.free_rank_predicted},
             {"check_quotient_nonzero", r.check_quotient_nonzero},
             {"assumptions", r.assumptions}};
    j["check_prime_transfer_identity"] =
        r.check_prime_transfer_identity ? json(*r.check_prime_transfer_identity) : json(nullptr);
    j["check_fp_surjection"] =
        r.check_fp_surjection ? json(*r.check_fp_surjection) : json(nullptr);
    j["decomposition"] = r.decomposition ? json(*r.decomposition) : json(nullptr);
}

inline void from_json(const json& j, AnalysisReport& r) {
    j.at("schema_version").get_to(r.schema_version);
    j.at("group").get_to(r.group);
    j.at("prime").get_to(r.prime);
    j.at("exponents").get_to(r.exponents);
    j.at("order").get_to(r.order);
    j.at("exponent").get_to(r.exponent);
    j.at("rank").get_to(r.rank);
    j.at("subgroups_total").get_to(r.subgroups_total);
    j.at("subgroups_maximal").get_to(r.subgroups_maximal);
    j.at("ideal_policy").get_to(r.ideal_policy);
    j.at("ideal_sources").get_to(r.ideal_sources);
    j.at("ideal_generators").get_to(r.ideal_generators);
    j.at("ideal_lattice_rank").get_to(r.ideal_lattice_rank);
    j.at("free_rank").get_to(r.free_rank);
    j.at("elementary_divisors").get_to(r.elementary_divisors);
    j.at("p_torsion_present").get_to(r.p_torsion_present);
    j.at("p_annihilates").get_to(r.p_annihilates);
    j.at("quotient_nonzero").get_to(r.quotient_nonzero);
    j.at("free_rank_predicted").get_to(r.free_rank_predicted);
    j.at("check_quotient_nonzero").get_to(r.check_quotient_nonzero);
    j.at("assumptions").get_to(r.assumptions);
    r.check_prime_transfer_identity =
        j.at("check_prime_transfer_identity").is_null()
            ? std::optional<bool>{}
            : std::optional<bool>(j.at("check_prime_transfer_identity").get<bool>());
    r.check_fp_surjection = j.at("check_fp_surjection").is_null()
                                ? std::optional<SurjectionReportEntry>{}
                                : std::optional<SurjectionReportEntry>(
                                      j.at("check_fp_surjection").get<SurjectionReportEntry>());
    r.decomposition = j.at("decomposition").is_null()
                          ? std::optional<DecompositionReportEntry>{}
                          : std::optional<DecompositionReportEntry>(
                                j.at("decomposition").get<DecompositionReportEntry>());
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

struct AnalysisOptions {
    IdealPolicy policy = IdealPolicy::MaximalOnly;
    unsigned height = 1;
    bool include_decomposition = false; // force the tuple section even at height 1
    std::uint64_t max_order = 256;
    std::uint64_t max_tuples = 100000;
};

inline AnalysisReport build_analysis_report(const FiniteAbelianPGroup& g,
                                            const AnalysisOptions& opt = {}) {
    if (g.order > opt.max_order)
        throw bound_exceeded("analysis: group order exceeds --max-order");
    AnalysisReport r;
    r.group = format_group_descriptor(g);
    r.prime = g.p;
    r.exponents = g.exponents;
    r.order = g.order;
    r.exponent = g.exponent;
    r.rank = g.rank();

    r.subgroups_total = enumerate_subgroups(g, opt.max_order).size();
    r.subgroups_maximal = g.is_trivial() ? 0 : maximal_subgroups(g).size();

    TransferIdeal ideal = opt.policy == IdealPolicy::MaximalOnly
                              ? build_default_ideal(g, opt.max_order)
                              : build_transfer_ideal(g, opt.policy, {}, opt.max_order);
    HermiteBasis lattice = ideal_lattice(ideal);
    r.ideal_policy = policy_name(ideal.policy);
    r.ideal_sources = ideal.sources.size();
    r.ideal_generators = ideal.generator_vectors.size();
    r.ideal_lattice_rank = lattice.rank();

    QuotientStructure q = quotient_report(g, ideal);
    r.free_rank = q.free_rank;
    for (const auto& d : q.elementary_divisors) r.elementary_divisors.push_back(d.str());
    r.p_torsion_present = q.p_torsion_present;
    r.p_annihilates = q.p_annihilates;
    r.quotient_nonzero = q.nonzero();
    r.free_rank_predicted = free_rank_prediction(g);
    r.check_quotient_nonzero = r.quotient_nonzero;

    if (g.rank() == 2 && g.exponents[0] == 1 && g.exponents[1] == 1)
        r.check_prime_transfer_identity = check_prime_transfer_identity(g.p);
    if (g.rank() >= 2) {
        SurjectionCheck sc = check_fp_via_surjection(g);
        SurjectionReportEntry entry;
        entry.passed = sc.passed;
        entry.matrix = {sc.rho.rows[0], sc.rho.rows[1]};
        r.check_fp_surjection = entry;
    }

    if (opt.height > 1 || opt.include_decomposition) {
        DecompositionReport d = decomposition_report(g, opt.height, opt.max_tuples, opt.max_order);
        DecompositionReportEntry entry;
        entry.height = d.height;
        entry.tuple_count = d.per_tuple.size();
        for (const auto& tq : d.per_tuple) {
            TupleReportEntry te;
            te.entries = tq.tuple.entries;
            te.subgroup_order = tq.tuple.generated.order();
            te.free_rank = tq.structure.free_rank;
            for (const auto& dv : tq.structure.elementary_divisors)
                te.elementary_divisors.push_back(dv.str());
            te.p_torsion = tq.structure.p_torsion_present;
            entry.tuples.push_back(std::move(te));
        }
        entry.verdict_p_torsion = d.verdict_p_torsion;
        entry.witness = d.witness;
        r.decomposition = std::move(entry);
        r.assumptions.push_back(kTupleIdealAssumption);
    }
    return r;
}

} // namespace trideal
