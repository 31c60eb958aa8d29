#include "trideal/groups.hpp"
#include "trideal/descriptor.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

using namespace trideal;

namespace {

// Independent subgroup oracle: close every subset of elements under addition
// and collect the distinct results. Exponential, so only for tiny groups.
std::set<std::vector<std::uint32_t>> subgroups_by_powerset(const FiniteAbelianPGroup& g) {
    std::set<std::vector<std::uint32_t>> found;
    const std::uint32_t n = static_cast<std::uint32_t>(g.order);
    REQUIRE(n <= 16);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::uint32_t> seed;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) seed.push_back(i);
        // closure under addition and negation, starting from the seed + 0
        std::set<std::uint32_t> closed(seed.begin(), seed.end());
        closed.insert(0);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::uint32_t> cur(closed.begin(), closed.end());
            for (auto a : cur)
                for (auto b : cur) {
                    if (closed.insert(g.add(a, b)).second) grew = true;
                    if (closed.insert(g.neg(a)).second) grew = true;
                }
        }
        found.insert(std::vector<std::uint32_t>(closed.begin(), closed.end()));
    }
    return found;
}

std::vector<FiniteAbelianPGroup> small_family() {
    return {
        make_group(2, {1}),       make_group(2, {2}),    make_group(2, {1, 1}),
        make_group(2, {3}),       make_group(2, {2, 1}), make_group(2, {1, 1, 1}),
        make_group(2, {2, 2}),    make_group(2, {3, 1}), make_group(2, {2, 1, 1}),
        make_group(2, {1, 1, 1, 1}), make_group(3, {1}), make_group(3, {2}),
        make_group(3, {1, 1}),    make_group(3, {2, 1}), make_group(3, {1, 1, 1}),
        make_group(5, {1}),       make_group(5, {1, 1}), make_group(7, {1}),
    };
}

} // namespace

TEST_CASE("make_group validates and normalizes") {
    auto g = make_group(2, {1, 1});
    CHECK(g.order == 4);
    CHECK(g.rank() == 2);
    CHECK(g.exponent == 2);

    auto c = make_group(3, {2});
    CHECK(c.order == 9);
    CHECK(c.rank() == 1);

    auto n = make_group(2, {1, 2});
    CHECK(n.exponents == std::vector<unsigned>{2, 1});
    CHECK(n.order == 8);

    CHECK_THROWS_AS(make_group(4, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make_group(1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make_group(0, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make_group(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_group(2, {1, 0}), std::invalid_argument);
}

TEST_CASE("element arithmetic is a group") {
    for (const auto& g : small_family()) {
        const std::uint32_t n = static_cast<std::uint32_t>(g.order);
        for (std::uint32_t a = 0; a < n; ++a) {
            CHECK(g.add(a, 0) == a);
            CHECK(g.add(a, g.neg(a)) == 0);
            CHECK(g.element_order(a) % 1 == 0);
            // element order divides the exponent
            CHECK(g.exponent % g.element_order(a) == 0);
            CHECK(g.scalar_mul(g.element_order(a), a) == 0);
            for (std::uint32_t b = 0; b < n; ++b) CHECK(g.add(a, b) == g.add(b, a));
        }
    }
}

TEST_CASE("rank equals the minimal generating set size (brute force)") {
    for (const auto& g : small_family()) {
        if (g.order > 64) continue;
        const std::uint32_t n = static_cast<std::uint32_t>(g.order);
        const std::size_t r = g.rank();
        // the stored structure generates with exactly r elements
        std::vector<std::uint32_t> gens;
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<std::uint64_t> c(r, 0);
            c[i] = 1;
            gens.push_back(g.index_of(c));
        }
        CHECK(subgroup_generated_by(g, gens).order() == g.order);
        if (r <= 1) continue;
        // no (r-1)-element subset generates: check all subsets of size r-1
        std::vector<std::uint32_t> pick(r - 1, 0);
        std::function<bool(std::size_t, std::uint32_t)> any_generates =
            [&](std::size_t pos, std::uint32_t from) -> bool {
            if (pos == r - 1) {
                return subgroup_generated_by(g, pick).order() == g.order;
            }
            for (std::uint32_t a = from; a < n; ++a) {
                pick[pos] = a;
                if (any_generates(pos + 1, a + 1)) return true;
            }
            return false;
        };
        CHECK_FALSE(any_generates(0, 0));
    }
}

TEST_CASE("enumerate_subgroups: frozen counts and powerset oracle") {
    CHECK(enumerate_subgroups(make_group(2, {2})).size() == 3);
    CHECK(enumerate_subgroups(make_group(2, {1, 1})).size() == 5);
    CHECK(enumerate_subgroups(make_group(3, {1, 1})).size() == 6);

    for (const auto& g : small_family()) {
        if (g.order > 16) continue;
        auto oracle = subgroups_by_powerset(g);
        auto fast = enumerate_subgroups(g);
        REQUIRE(fast.size() == oracle.size());
        for (const auto& s : fast) CHECK(oracle.count(s.elements) == 1);
        // duplicate-free, includes trivial and full
        CHECK(fast.front().order() == 1);
        CHECK(fast.back().order() == g.order);
    }
}

TEST_CASE("enumerate_subgroups respects the order bound") {
    CHECK_THROWS_AS(enumerate_subgroups(make_group(2, {3, 3}), 32), bound_exceeded);
}

TEST_CASE("subgroup canonical data: generators span, index, closure") {
    for (const auto& g : small_family()) {
        if (g.order > 64) continue;
        for (const auto& s : enumerate_subgroups(g)) {
            CHECK(s.index * s.order() == g.order);
            CHECK(std::is_sorted(s.elements.begin(), s.elements.end()));
            // the stored basis is an internal direct sum spanning the subgroup
            Subgroup regen = subgroup_generated_by(g, s.generators);
            CHECK(regen.elements == s.elements);
            std::uint64_t prod = 1;
            std::uint64_t prev = UINT64_MAX;
            for (auto b : s.generators) {
                std::uint64_t o = g.element_order(b);
                CHECK(o <= prev);
                prev = o;
                prod *= o;
            }
            CHECK(prod == s.order());
        }
    }
}

TEST_CASE("maximal subgroups: examples and counting formula") {
    auto v22 = maximal_subgroups(make_group(2, {1, 1}));
    CHECK(v22.size() == 3); // p + 1 at p = 2

    auto z8 = maximal_subgroups(make_group(2, {3}));
    REQUIRE(z8.size() == 1);
    CHECK(z8[0].elements == std::vector<std::uint32_t>{0, 2, 4, 6});

    auto m42 = maximal_subgroups(make_group(2, {2, 1}));
    CHECK(m42.size() == 3);

    CHECK_THROWS_AS(maximal_subgroups(trivial_group(2)), std::invalid_argument);

    for (const auto& g : small_family()) {
        std::uint64_t expect = 1;
        std::uint64_t num = 1;
        for (std::size_t i = 0; i < g.rank(); ++i) num *= g.p;
        expect = (num - 1) / (g.p - 1);
        auto maxs = maximal_subgroups(g);
        CHECK(maxs.size() == expect);
        for (const auto& m : maxs) CHECK(m.index == g.p);
        if (g.order <= 64) {
            // cross-check against the full lattice filtered by index p
            std::uint64_t via_enum = 0;
            for (const auto& s : enumerate_subgroups(g))
                if (s.index == g.p) ++via_enum;
            CHECK(via_enum == expect);
        }
    }
}

TEST_CASE("pairing: examples, bi-additivity, non-degeneracy") {
    auto z4 = make_group(2, {2});
    CHECK(z4.pairing(0, 3) == 0);       // trivial character
    CHECK(z4.pairing(1, 2) == 2);       // zeta_4^2 = -1

    for (const auto& g : small_family()) {
        if (g.order > 64) continue;
        const std::uint32_t n = static_cast<std::uint32_t>(g.order);
        for (std::uint32_t chi = 0; chi < n; ++chi)
            for (std::uint32_t a = 0; a < n; ++a) {
                for (std::uint32_t b = 0; b < n; ++b)
                    CHECK(g.pairing(chi, g.add(a, b)) ==
                          (g.pairing(chi, a) + g.pairing(chi, b)) % g.exponent);
            }
        // non-degenerate: only the trivial character vanishes everywhere
        for (std::uint32_t chi = 0; chi < n; ++chi) {
            bool vanishes = true;
            for (std::uint32_t a = 0; a < n; ++a)
                if (g.pairing(chi, a) != 0) vanishes = false;
            CHECK(vanishes == (chi == 0));
        }
    }
}

TEST_CASE("annihilator counting: |ann(A')| = |A|/|A'| for every subgroup") {
    for (const auto& g : small_family()) {
        if (g.order > 64) continue;
        for (const auto& s : enumerate_subgroups(g)) {
            auto ann = annihilator_characters(g, s);
            CHECK(ann.size() == g.order / s.order());
            // basis test agrees with the elementwise definition
            for (auto chi : ann)
                for (auto e : s.elements) CHECK(g.pairing(chi, e) == 0);
        }
    }
}

TEST_CASE("subgroup lattice closed under intersection and join") {
    for (const auto& g : small_family()) {
        if (g.order > 32) continue;
        auto subs = enumerate_subgroups(g);
        std::set<std::vector<std::uint32_t>> index;
        for (const auto& s : subs) index.insert(s.elements);
        for (const auto& a : subs)
            for (const auto& b : subs) {
                CHECK(index.count(subgroup_intersection(g, a, b).elements) == 1);
                CHECK(index.count(subgroup_join(g, a, b).elements) == 1);
            }
    }
}

TEST_CASE("subgroup context: embedding and character restriction tables") {
    for (const auto& g : small_family()) {
        if (g.order > 32) continue;
        for (const auto& s : enumerate_subgroups(g)) {
            SubgroupContext ctx = make_subgroup_context(g, s);
            CHECK(ctx.local.order == s.order());
            // embed is a bijection onto the subgroup, compatible with addition
            for (std::uint32_t x = 0; x < ctx.local.order; ++x) {
                CHECK(s.mask.test(ctx.embed[x]));
                CHECK(ctx.to_local[ctx.embed[x]] == static_cast<std::int32_t>(x));
                for (std::uint32_t y = 0; y < ctx.local.order; ++y)
                    CHECK(ctx.embed[ctx.local.add(x, y)] == g.add(ctx.embed[x], ctx.embed[y]));
            }
            // restricted characters take the same values on subgroup elements
            const std::uint64_t scale = g.exponent / ctx.local.exponent;
            for (std::uint32_t chi = 0; chi < g.order; ++chi)
                for (std::uint32_t x = 0; x < ctx.local.order; ++x)
                    CHECK(g.pairing(chi, ctx.embed[x]) ==
                          ctx.local.pairing(ctx.restrict_char[chi], x) * scale);
            // lift is a section of restriction
            for (std::uint32_t psi = 0; psi < ctx.local.order; ++psi)
                CHECK(ctx.restrict_char[ctx.lift_char[psi]] == psi);
        }
    }
}

TEST_CASE("characters trivial on a subgroup number |A|/|A'| (exhaustive pairing)") {
    auto g = make_group(2, {2, 1});
    for (const auto& s : enumerate_subgroups(g)) {
        std::uint64_t count = 0;
        for (std::uint32_t chi = 0; chi < g.order; ++chi) {
            bool triv = true;
            for (auto e : s.elements)
                if (g.pairing(chi, e) != 0) triv = false;
            if (triv) ++count;
        }
        CHECK(count == g.order / s.order());
    }
}

TEST_CASE("preimage subgroups along a surjection onto (Z/p)^2") {
    auto t2 = make_group(2, {1, 1});

    SECTION("identity on (Z/2)^2") {
        auto g = make_group(2, {1, 1});
        SurjectionToRankTwo rho = default_surjection(g);
        Subgroup pre = preimage_subgroup(g, rho, t2, trivial_subgroup(t2));
        CHECK(pre.elements == std::vector<std::uint32_t>{0});
    }

    SECTION("Z/4 x Z/2, reduction mod 2 on the first factor") {
        auto g = make_group(2, {2, 1});
        SurjectionToRankTwo rho = default_surjection(g);
        // H = first factor of (Z/2)^2
        Subgroup h = subgroup_generated_by(t2, {t2.index_of({1, 0})});
        Subgroup pre = preimage_subgroup(g, rho, t2, h);
        // oracle: exhaustive preimage scan
        std::vector<std::uint32_t> expect;
        for (std::uint32_t a = 0; a < g.order; ++a)
            if (h.mask.test(apply_surjection(g, t2, rho, a))) expect.push_back(a);
        CHECK(pre.elements == expect);
        CHECK(pre.order() == 4);
        CHECK(pre.order() < g.order); // proper
    }

    SECTION("non-surjective map is rejected") {
        auto g = make_group(2, {2, 1});
        SurjectionToRankTwo rho;
        rho.rows[0] = {1, 0};
        rho.rows[1] = {1, 0}; // image is a line
        CHECK_FALSE(surjection_is_onto(g, t2, rho));
        CHECK_THROWS_AS(preimage_subgroup(g, rho, t2, trivial_subgroup(t2)),
                        std::invalid_argument);
    }

    SECTION("default surjection hits all of (Z/p)^2") {
        for (const auto& g : small_family()) {
            if (g.rank() < 2) continue;
            auto target = make_group(g.p, {1, 1});
            CHECK(surjection_is_onto(g, target, default_surjection(g)));
        }
    }
}

TEST_CASE("dual group shares the exponent list") {
    auto g = make_group(2, {3, 1});
    CHECK(dual(g) == g);
}

TEST_CASE("annihilator counting across the dual matches subgroup orders") {
    // sum over subgroups of |ann(A')| equals sum over subgroups of |A|/|A'|
    for (const auto& g : small_family()) {
        if (g.order > 32) continue;
        std::uint64_t via_ann = 0, via_index = 0;
        for (const auto& s : enumerate_subgroups(g)) {
            via_ann += annihilator_characters(g, s).size();
            via_index += g.order / s.order();
        }
        CHECK(via_ann == via_index);
    }
}

TEST_CASE("descriptor grammar round trip") {
    auto g = parse_group_descriptor("2^2x2^1");
    CHECK(g.order == 8);
    CHECK(g.exponents == std::vector<unsigned>{2, 1});
    CHECK(format_group_descriptor(g) == "2^2x2^1");

    CHECK(parse_group_descriptor("3^2").order == 9);
    CHECK(parse_group_descriptor(" 5^1 x 5^1 ").order == 25);
    CHECK(format_group_descriptor(parse_group_descriptor("2^1x2^3")) == "2^3x2^1");

    CHECK_THROWS_AS(parse_group_descriptor(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_descriptor("4^1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_descriptor("2^0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_descriptor("2"), std::invalid_argument);
    CHECK_THROWS_WITH(parse_group_descriptor("2^1x3^1"),
                      Catch::Matchers::ContainsSubstring("p-groups"));
}
