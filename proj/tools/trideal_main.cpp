// trideal: transfer ideals in character rings of finite abelian p-groups.
//
// Subcommands:
//   analyze <group>               quotient structure of Z[A*]/I_tr + checks
//   verify [--scope lemmas|all]   structural claims over a family of groups
//   decompose <group> --height N  per-tuple quotients and torsion verdict
//   subgroups <group>             subgroup lattice listing
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or parse error, 3 resource bound exceeded.

#include "trideal/trideal.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace trideal;

struct GlobalFlags {
    bool as_json = false;
    std::string out_path;
    std::uint64_t max_order = 256;
    std::uint64_t max_tuples = 100000;
    std::string policy = "maximal";
};

IdealPolicy parse_policy(const std::string& s) {
    if (s == "maximal") return IdealPolicy::MaximalOnly;
    if (s == "all-proper") return IdealPolicy::AllProper;
    throw CLI::ValidationError("--policy", "expected 'maximal' or 'all-proper'");
}

void emit(const GlobalFlags& flags, const std::string& text) {
    if (!flags.out_path.empty()) {
        std::ofstream f(flags.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + flags.out_path);
        f << text;
    } else {
        std::cout << text;
    }
}

std::string divisors_string(const std::vector<std::string>& ds) {
    if (ds.empty()) return "[]";
    std::string s = "[";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) s += ", ";
        s += ds[i];
    }
    return s + "]";
}

std::string tuple_string(const std::vector<std::uint32_t>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

std::string render_human(const AnalysisReport& r) {
    std::ostringstream os;
    os << "group            " << r.group << "  (order " << r.order << ", rank " << r.rank
       << ", exponent " << r.exponent << ")\n";
    os << "subgroups        " << r.subgroups_total << " total, " << r.subgroups_maximal
       << " maximal\n";
    os << "ideal            policy " << r.ideal_policy << ", " << r.ideal_sources
       << " source subgroups, " << r.ideal_generators << " generator vectors, lattice rank "
       << r.ideal_lattice_rank << "\n";
    os << "quotient         free rank " << r.free_rank << ", elementary divisors "
       << divisors_string(r.elementary_divisors) << "\n";
    os << "                 nonzero=" << (r.quotient_nonzero ? "yes" : "no")
       << "  p-torsion=" << (r.p_torsion_present ? "yes" : "no")
       << "  p-in-ideal=" << (r.p_annihilates ? "yes" : "no") << "\n";
    os << "free-rank check  predicted " << r.free_rank_predicted << " (generator count), computed "
       << r.free_rank << (r.free_rank_predicted == r.free_rank ? "  [agree]" : "  [DISAGREE]")
       << "\n";
    if (r.check_prime_transfer_identity)
        os << "identity check   p as transfer combination: "
           << (*r.check_prime_transfer_identity ? "holds" : "FAILS") << "\n";
    if (r.check_fp_surjection) {
        os << "surjection check p in ideal via rank-2 projection: "
           << (r.check_fp_surjection->passed ? "holds" : "FAILS") << "  rho=[";
        for (int t = 0; t < 2; ++t) {
            os << (t ? "; " : "");
            for (std::size_t i = 0; i < r.check_fp_surjection->matrix[t].size(); ++i)
                os << (i ? "," : "") << r.check_fp_surjection->matrix[t][i];
        }
        os << "]\n";
    }
    if (r.decomposition) {
        const auto& d = *r.decomposition;
        os << "decomposition    height " << d.height << ", " << d.tuple_count << " tuples\n";
        os << "  tuple  subgroup-order  free-rank  divisors  p-torsion\n";
        for (const auto& t : d.tuples) {
            os << "  " << tuple_string(t.entries) << "  " << t.subgroup_order << "  " << t.free_rank
               << "  " << divisors_string(t.elementary_divisors) << "  "
               << (t.p_torsion ? "yes" : "no") << "\n";
        }
        os << "  verdict: p-torsion " << (d.verdict_p_torsion ? "PRESENT" : "absent");
        if (d.witness) os << ", witness tuple " << tuple_string(*d.witness);
        os << "\n";
    }
    for (const auto& a : r.assumptions) os << "assumption       " << a << "\n";
    return os.str();
}

int run_report(const GlobalFlags& flags, const std::string& descriptor, unsigned height,
               bool force_decomposition) {
    FiniteAbelianPGroup g = parse_group_descriptor(descriptor);
    AnalysisOptions opt;
    opt.policy = parse_policy(flags.policy);
    opt.height = height;
    opt.include_decomposition = force_decomposition;
    opt.max_order = flags.max_order;
    opt.max_tuples = flags.max_tuples;
    AnalysisReport r = build_analysis_report(g, opt);
    if (flags.as_json) {
        json j = r;
        emit(flags, j.dump(2) + "\n");
    } else {
        emit(flags, render_human(r));
    }
    return 0;
}

int run_subgroups(const GlobalFlags& flags, const std::string& descriptor) {
    FiniteAbelianPGroup g = parse_group_descriptor(descriptor);
    if (g.order > flags.max_order) throw bound_exceeded("group order exceeds --max-order");
    auto subs = enumerate_subgroups(g, flags.max_order);
    if (flags.as_json) {
        json j;
        j["schema_version"] = 1;
        j["group"] = format_group_descriptor(g);
        j["count"] = subs.size();
        json list = json::array();
        for (const auto& s : subs) {
            json e;
            e["order"] = s.order();
            e["index"] = s.index;
            e["generators"] = s.generators;
            e["elements"] = s.elements;
            list.push_back(std::move(e));
        }
        j["subgroups"] = std::move(list);
        emit(flags, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "group " << format_group_descriptor(g) << ": " << subs.size() << " subgroups\n";
        os << "  order  index  generators\n";
        for (const auto& s : subs) {
            os << "  " << s.order() << "  " << s.index << "  " << tuple_string(s.generators)
               << "\n";
        }
        emit(flags, os.str());
    }
    return 0;
}

struct ClaimTally {
    std::uint64_t checked = 0;
    std::vector<std::string> failures;

    void note(bool ok, const std::string& where) {
        ++checked;
        if (!ok) failures.push_back(where);
    }
};

std::vector<FiniteAbelianPGroup> group_family(const std::vector<std::uint64_t>& primes,
                                              std::uint64_t max_order) {
    std::vector<FiniteAbelianPGroup> out;
    for (auto p : primes) {
        // partitions of s in non-increasing order, for each total exponent s
        for (unsigned s = 1; ipow_u64(p, s) <= max_order; ++s) {
            std::vector<std::vector<unsigned>> parts;
            std::vector<unsigned> cur;
            std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned maxpart) {
                if (left == 0) {
                    parts.push_back(cur);
                    return;
                }
                for (unsigned k = std::min(left, maxpart); k >= 1; --k) {
                    cur.push_back(k);
                    rec(left - k, k);
                    cur.pop_back();
                }
            };
            rec(s, s);
            for (auto& e : parts) out.push_back(make_group(p, e));
        }
    }
    return out;
}

int run_verify(const GlobalFlags& flags, const std::string& scope,
               std::vector<std::uint64_t> primes, std::uint64_t max_order) {
    if (primes.empty()) primes = {2, 3, 5};
    for (auto p : primes)
        if (!is_prime_u64(p)) throw CLI::ValidationError("--primes", "entries must be prime");
    auto family = group_family(primes, max_order);
    std::ostringstream os;
    if (family.empty()) {
        os << "no groups of order >= p within --max-order " << max_order
           << "; trivial group skipped (no proper subgroups to transfer from)\n";
        emit(flags, os.str());
        return 0;
    }
    os << "family: " << family.size() << " abelian p-groups, p in {";
    for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
    os << "}, order <= " << max_order << "\n";

    std::map<std::string, ClaimTally> claims;

    for (const auto& g : family) {
        std::string name = format_group_descriptor(g);
        TransferIdeal ideal = build_default_ideal(g, std::max(max_order, g.order));
        QuotientStructure q = quotient_report(g, ideal);

        claims["quotient_nonzero"].note(q.nonzero(), name);
        claims["free_rank_matches_generator_count"].note(q.free_rank == free_rank_prediction(g),
                                                         name);
        if (g.is_cyclic()) {
            claims["cyclic_quotient_torsion_free"].note(q.elementary_divisors.empty(), name);
        } else {
            bool fp = q.free_rank == 0 && q.nonzero() && q.p_annihilates;
            bool tor = false;
            for (const auto& d : q.elementary_divisors)
                if (d % g.p == 0) tor = true;
            claims["noncyclic_quotient_fp_algebra"].note(fp, name);
            claims["noncyclic_quotient_p_torsion"].note(tor, name);
            claims["surjection_pushforward_fp"].note(check_fp_via_surjection(g).passed, name);
        }
        if (g.rank() == 2 && g.exponent == g.p)
            claims["prime_transfer_identity"].note(check_prime_transfer_identity(g.p), name);

        if (scope == "all") {
            // transfer-unit values on the class-function side, all subgroups
            if (g.order <= 128) {
                bool ok = true;
                for (const auto& s : enumerate_subgroups(g, std::max(max_order, g.order))) {
                    ClassFunction f = character_map(transfer_unit(g, s));
                    CyclotomicInteger expect =
                        cyclo_from_int(g.p, group_level_exp(g), Int(s.index));
                    CyclotomicInteger zero = cyclo_zero(g.p, group_level_exp(g));
                    for (std::uint32_t a = 0; a < g.order; ++a) {
                        const CyclotomicInteger& want = s.mask.test(a) ? expect : zero;
                        if (f.values[a] != want) ok = false;
                    }
                }
                claims["transfer_unit_class_values"].note(ok, name);
            }
            // character map intertwines ring and class-function transfers
            if (g.order <= 64) {
                bool ok = true;
                for (const auto& s : enumerate_subgroups(g, std::max(max_order, g.order))) {
                    SubgroupContext ctx = make_subgroup_context(g, s);
                    for (std::uint32_t psi = 0; psi < ctx.local.order; ++psi) {
                        CharRingElement x = basis_character(ctx.local, psi);
                        if (character_map(transfer(x, ctx)) !=
                            class_transfer(character_map(x), ctx)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                claims["transfer_square_commutes"].note(ok, name);
            }
            if (g.order <= 81 && !g.is_trivial()) {
                TransferIdeal full =
                    build_transfer_ideal(g, IdealPolicy::AllProper, {}, std::max(max_order, g.order));
                claims["policy_equivalence"].note(ideal_lattice(full) == ideal_lattice(ideal),
                                                  name);
            }
        }
    }

    bool all_ok = true;
    for (const auto& [claim, tally] : claims) {
        bool ok = tally.failures.empty();
        all_ok = all_ok && ok;
        os << (ok ? "PASS" : "FAIL") << " " << claim << " (" << tally.checked << " checks)";
        if (!ok) {
            os << " failing:";
            for (const auto& f : tally.failures) os << " " << f;
        }
        os << "\n";
    }
    os << (all_ok ? "all claims hold" : "CLAIM FAILURES PRESENT") << "\n";
    emit(flags, os.str());
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer ideals in character rings of finite abelian p-groups"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand

    GlobalFlags flags;
    app.add_flag("--json", flags.as_json, "emit a machine-readable JSON document");
    app.add_option("--out", flags.out_path, "write output to a file instead of stdout");
    app.add_option("--max-order", flags.max_order, "largest group order accepted")
        ->capture_default_str();
    app.add_option("--max-tuples", flags.max_tuples, "largest tuple count for decompositions")
        ->capture_default_str();
    app.add_option("--policy", flags.policy, "ideal generator policy: maximal | all-proper")
        ->capture_default_str();

    std::string group_arg;
    unsigned height = 2;
    std::string scope = "lemmas";
    std::string primes_arg = "2,3,5";
    std::uint64_t verify_max_order = 128;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze the transfer-ideal quotient");
    analyze->add_option("group", group_arg, "group descriptor, e.g. 2^2x2^1")->required();

    CLI::App* verify = app.add_subcommand("verify", "check structural claims over a family");
    verify->add_option("--scope", scope, "lemmas | all")->capture_default_str();
    verify->add_option("--primes", primes_arg, "comma-separated primes")->capture_default_str();
    verify->add_option("--max-order", verify_max_order, "largest group order in the family")
        ->capture_default_str();

    CLI::App* decompose = app.add_subcommand("decompose", "per-tuple transfer-ideal quotients");
    decompose->add_option("group", group_arg, "group descriptor")->required();
    decompose->add_option("--height", height, "height n >= 1 (uses n-1 tuple entries)")
        ->required();

    CLI::App* subgroups = app.add_subcommand("subgroups", "list the subgroup lattice");
    subgroups->add_option("group", group_arg, "group descriptor")->required();

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return run_report(flags, group_arg, 1, false);
        if (decompose->parsed()) {
            if (height < 1) throw CLI::ValidationError("--height", "must be >= 1");
            return run_report(flags, group_arg, height, true);
        }
        if (subgroups->parsed()) return run_subgroups(flags, group_arg);
        if (verify->parsed()) {
            if (scope != "lemmas" && scope != "all")
                throw CLI::ValidationError("--scope", "expected 'lemmas' or 'all'");
            std::vector<std::uint64_t> primes;
            std::stringstream ss(primes_arg);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) primes.push_back(std::stoull(tok));
            return run_verify(flags, scope, primes, verify_max_order);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const trideal::bound_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
