#pragma once

#include "trideal/groups.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace trideal {

// Group descriptor grammar: p^e1xp^e2x... with a single prime throughout,
// e.g. "2^2x2^1" for Z/4 x Z/2. Whitespace around the 'x' separators is
// tolerated; mixed primes are rejected because the theory is p-local.
inline FiniteAbelianPGroup parse_group_descriptor(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad group descriptor \"" + text + "\": " + why);
    };
    std::vector<std::string> terms;
    std::string cur;
    for (char ch : text) {
        if (ch == 'x' || ch == 'X') {
            terms.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    terms.push_back(cur);

    std::uint64_t p = 0;
    std::vector<unsigned> exps;
    for (const auto& term : terms) {
        if (term.empty()) fail("empty factor (expected p^e)");
        auto caret = term.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == term.size())
            fail("factor \"" + term + "\" is not of the form p^e");
        std::uint64_t base = 0;
        unsigned exp = 0;
        for (std::size_t i = 0; i < caret; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(term[i])))
                fail("factor \"" + term + "\" is not of the form p^e");
            base = base * 10 + static_cast<std::uint64_t>(term[i] - '0');
            if (base > 1u << 20) fail("prime too large");
        }
        for (std::size_t i = caret + 1; i < term.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(term[i])))
                fail("factor \"" + term + "\" is not of the form p^e");
            exp = exp * 10 + static_cast<unsigned>(term[i] - '0');
            if (exp > 64) fail("exponent too large");
        }
        if (!is_prime_u64(base)) fail("base " + std::to_string(base) + " is not prime");
        if (exp == 0) fail("exponents must be >= 1");
        if (p == 0) {
            p = base;
        } else if (p != base) {
            fail("mixed primes " + std::to_string(p) + " and " + std::to_string(base) +
                 "; only p-groups (a single prime) are supported");
        }
        exps.push_back(exp);
    }
    return make_group(p, std::move(exps));
}

// canonical form: exponents non-increasing, e.g. "2^2x2^1"
inline std::string format_group_descriptor(const FiniteAbelianPGroup& g) {
    std::string out;
    for (std::size_t i = 0; i < g.exponents.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(g.p) + "^" + std::to_string(g.exponents[i]);
    }
    return out;
}

} // namespace trideal
