#pragma once

#include "trideal/integers.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <unordered_set>
#include <vector>

namespace trideal {

// ---------------------------------------------------------------------------
// Element sets (bitsets over element indices). Canonical identity of a
// subgroup is its element set, so these get hashed and compared a lot.
// ---------------------------------------------------------------------------

class ElementSet {
  public:
    ElementSet() = default;
    explicit ElementSet(std::size_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::uint32_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto word : w_) c += static_cast<std::size_t>(__builtin_popcountll(word));
        return c;
    }

    bool operator==(const ElementSet& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const ElementSet& o) const { return !(*this == o); }

    // true iff every bit of o is also set here
    bool contains(const ElementSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if ((o.w_[i] & ~w_[i]) != 0) return false;
        return true;
    }

    ElementSet intersect(const ElementSet& o) const {
        ElementSet r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }

    ElementSet unite(const ElementSet& o) const {
        ElementSet r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t word = w_[wi];
            while (word) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
                out.push_back(static_cast<std::uint32_t>(wi * 64 + b));
                word &= word - 1;
            }
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (auto word : w_) {
            h ^= static_cast<std::size_t>(word);
            h *= 1099511628211ull;
        }
        return h;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

  private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// ---------------------------------------------------------------------------
// FiniteAbelianPGroup
//
// A ~ Z/p^{e_1} x ... x Z/p^{e_r} with e_1 >= ... >= e_r >= 1. Elements and
// dual characters are both indexed 0..order-1 in mixed radix with coords[0]
// most significant; index 0 is the identity / trivial character. The dual is
// identified with the group itself through the explicit pairing
//   <chi, a> = sum_i chi_i * a_i * p^{e_1 - e_i}  (mod p^{e_1}),
// i.e. chi(a) = zeta^{<chi,a>} for zeta a fixed primitive p^{e_1}-th root.
// ---------------------------------------------------------------------------

struct GroupTables {
    std::vector<std::uint32_t> add;      // n*n
    std::vector<std::uint32_t> neg;      // n
    std::vector<std::uint64_t> pairing;  // n*n
    std::vector<std::uint64_t> elt_order; // n
};

struct FiniteAbelianPGroup {
    std::uint64_t p = 2;
    std::vector<unsigned> exponents;           // non-increasing; empty = trivial group
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;                // p^{e_1}; 1 for the trivial group
    std::vector<std::uint64_t> factor_orders;  // p^{e_i}
    std::vector<std::uint64_t> strides;        // mixed-radix strides
    std::shared_ptr<const GroupTables> tables; // present when order is small

    std::size_t rank() const { return exponents.size(); }
    bool is_trivial() const { return order == 1; }
    bool is_cyclic() const { return rank() <= 1; }

    bool operator==(const FiniteAbelianPGroup& o) const {
        return p == o.p && exponents == o.exponents;
    }
    bool operator!=(const FiniteAbelianPGroup& o) const { return !(*this == o); }

    std::vector<std::uint64_t> coords_of(std::uint32_t idx) const {
        std::vector<std::uint64_t> c(rank());
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < rank(); ++i) {
            c[i] = v / strides[i];
            v %= strides[i];
        }
        return c;
    }

    std::uint32_t index_of(const std::vector<std::uint64_t>& coords) const {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < rank(); ++i) v += (coords[i] % factor_orders[i]) * strides[i];
        return static_cast<std::uint32_t>(v);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (tables) return tables->add[static_cast<std::size_t>(a) * order + b];
        return add_slow(a, b);
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (tables) return tables->neg[a];
        return neg_slow(a);
    }

    std::uint32_t scalar_mul(std::uint64_t k, std::uint32_t a) const {
        std::uint64_t v = 0, rem = a;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::uint64_t ai = rem / strides[i];
            rem %= strides[i];
            v += ((k % factor_orders[i]) * ai % factor_orders[i]) * strides[i];
        }
        return static_cast<std::uint32_t>(v);
    }

    std::uint64_t element_order(std::uint32_t a) const {
        if (tables) return tables->elt_order[a];
        return element_order_slow(a);
    }

    // exponent k with chi(a) = zeta_{p^{e_1}}^k
    std::uint64_t pairing(std::uint32_t chi, std::uint32_t a) const {
        if (tables) return tables->pairing[static_cast<std::size_t>(chi) * order + a];
        return pairing_slow(chi, a);
    }

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t v = 0, ra = a, rb = b;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::uint64_t ai = ra / strides[i], bi = rb / strides[i];
            ra %= strides[i];
            rb %= strides[i];
            v += ((ai + bi) % factor_orders[i]) * strides[i];
        }
        return static_cast<std::uint32_t>(v);
    }

    std::uint32_t neg_slow(std::uint32_t a) const {
        std::uint64_t v = 0, ra = a;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::uint64_t ai = ra / strides[i];
            ra %= strides[i];
            v += ((factor_orders[i] - ai) % factor_orders[i]) * strides[i];
        }
        return static_cast<std::uint32_t>(v);
    }

    std::uint64_t element_order_slow(std::uint32_t a) const {
        std::uint64_t ord = 1, ra = a;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::uint64_t ai = ra / strides[i];
            ra %= strides[i];
            std::uint64_t o = factor_orders[i];
            while (ai != 0 && ai % p == 0) {
                ai /= p;
                o /= p;
            }
            std::uint64_t oi = (ai == 0) ? 1 : o;
            ord = std::max(ord, oi);
        }
        return ord;
    }

    std::uint64_t pairing_slow(std::uint32_t chi, std::uint32_t a) const {
        std::uint64_t acc = 0, rc = chi, ra = a;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::uint64_t ci = rc / strides[i], ai = ra / strides[i];
            rc %= strides[i];
            ra %= strides[i];
            acc = (acc + ci * ai % exponent * (exponent / factor_orders[i])) % exponent;
        }
        return acc;
    }
};

namespace detail {

inline FiniteAbelianPGroup finish_group(std::uint64_t p, std::vector<unsigned> exps) {
    FiniteAbelianPGroup g;
    g.p = p;
    std::sort(exps.begin(), exps.end(), std::greater<unsigned>());
    g.exponents = std::move(exps);
    g.factor_orders.resize(g.exponents.size());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < g.exponents.size(); ++i) {
        g.factor_orders[i] = ipow_u64(p, g.exponents[i]);
        if (total > (std::uint64_t(1) << 48) / g.factor_orders[i])
            throw std::overflow_error("group order too large");
        total *= g.factor_orders[i];
    }
    g.order = total;
    g.exponent = g.exponents.empty() ? 1 : g.factor_orders[0];
    g.strides.resize(g.exponents.size());
    std::uint64_t s = 1;
    for (std::size_t i = g.exponents.size(); i-- > 0;) {
        g.strides[i] = s;
        s *= g.factor_orders[i];
    }
    // precompute tables for small groups; everything stays immutable afterwards
    constexpr std::uint64_t kTableLimit = 2048;
    if (g.order <= kTableLimit) {
        auto t = std::make_shared<GroupTables>();
        const std::size_t n = static_cast<std::size_t>(g.order);
        t->add.resize(n * n);
        t->pairing.resize(n * n);
        t->neg.resize(n);
        t->elt_order.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            t->neg[a] = g.neg_slow(static_cast<std::uint32_t>(a));
            t->elt_order[a] = g.element_order_slow(static_cast<std::uint32_t>(a));
            for (std::size_t b = 0; b < n; ++b) {
                t->add[a * n + b] = g.add_slow(static_cast<std::uint32_t>(a),
                                               static_cast<std::uint32_t>(b));
                t->pairing[a * n + b] = g.pairing_slow(static_cast<std::uint32_t>(a),
                                                       static_cast<std::uint32_t>(b));
            }
        }
        g.tables = std::move(t);
    }
    return g;
}

} // namespace detail

// Public constructor: validates and normalizes (sorts exponents non-increasing).
inline FiniteAbelianPGroup make_group(std::uint64_t p, std::vector<unsigned> exponents) {
    if (!is_prime_u64(p)) throw std::invalid_argument("make_group: p must be prime");
    if (exponents.empty()) throw std::invalid_argument("make_group: empty exponent list");
    for (unsigned e : exponents)
        if (e == 0) throw std::invalid_argument("make_group: exponents must be >= 1");
    return detail::finish_group(p, std::move(exponents));
}

// Rank-zero group; used internally for subgroup quotients.
inline FiniteAbelianPGroup trivial_group(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("trivial_group: p must be prime");
    return detail::finish_group(p, {});
}

// The Pontryagin dual is abstractly isomorphic to the group itself; the
// identification is fixed by the pairing above.
inline FiniteAbelianPGroup dual(const FiniteAbelianPGroup& g) { return g; }

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

struct Subgroup {
    ElementSet mask;
    std::vector<std::uint32_t> elements;   // sorted; canonical identity
    std::vector<std::uint32_t> generators; // direct-sum basis, orders non-increasing
    std::uint64_t index = 1;               // |A| / |A'|

    std::uint64_t order() const { return elements.size(); }
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
};

// Direct-sum basis of a subgroup given by its (sorted) element list: returns
// b_1,...,b_s with A' = <b_1> + ... + <b_s> (internal direct sum) and
// ord(b_1) >= ... >= ord(b_s). Peels a maximal-order class, quotients, and
// adjusts lifted generators so their honest order matches their class order.
inline std::vector<std::uint32_t> direct_sum_basis(const FiniteAbelianPGroup& g,
                                                   const std::vector<std::uint32_t>& elems) {
    if (elems.size() <= 1) return {};
    const std::uint32_t kInvalid = UINT32_MAX;

    struct Level {
        std::uint32_t gen;
        std::uint64_t ord;                 // class order when chosen
        std::vector<std::uint32_t> canon;  // class map *before* quotienting by gen
    };
    std::vector<Level> levels;

    std::vector<std::uint32_t> canon(static_cast<std::size_t>(g.order), kInvalid);
    for (auto x : elems) canon[x] = x;
    std::vector<std::uint32_t> members = elems;

    while (members.size() > 1) {
        const std::uint32_t zero_rep = canon[0];
        std::uint32_t best = kInvalid;
        std::uint64_t best_ord = 1;
        for (auto x : members) {
            if (x == zero_rep) continue;
            std::uint64_t m = 1;
            std::uint32_t acc = x;
            while (canon[acc] != zero_rep) {
                acc = g.add(acc, x);
                ++m;
            }
            if (m > best_ord) {
                best_ord = m;
                best = x;
            }
        }
        if (best == kInvalid) break;

        levels.push_back({best, best_ord, canon});
        std::vector<std::uint32_t> refined(static_cast<std::size_t>(g.order), kInvalid);
        for (auto x : elems) {
            std::uint32_t rep = kInvalid;
            std::uint32_t y = x;
            for (std::uint64_t k = 0; k < best_ord; ++k) {
                rep = std::min(rep, canon[y]);
                y = g.add(y, best);
            }
            refined[x] = rep;
        }
        canon.swap(refined);
        std::vector<std::uint32_t> next;
        for (auto x : elems)
            if (canon[x] == x) next.push_back(x);
        members = std::move(next);
    }

    // unwind: adjust each deeper generator so its order at the enclosing level
    // equals its class order there
    std::vector<std::uint32_t> basis;
    std::vector<std::uint64_t> orders;
    for (std::size_t d = levels.size(); d-- > 0;) {
        const Level& lv = levels[d];
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::uint32_t c = basis[i];
            std::uint64_t m = orders[i];
            std::uint32_t z = g.scalar_mul(m, c);
            std::uint64_t k = 0;
            bool found = false;
            std::uint32_t acc = 0;
            for (std::uint64_t kk = 0; kk < lv.ord; ++kk) {
                if (lv.canon[acc] == lv.canon[z]) {
                    k = kk;
                    found = true;
                    break;
                }
                acc = g.add(acc, lv.gen);
            }
            if (!found || k % m != 0)
                throw std::logic_error("direct_sum_basis: lift adjustment failed");
            std::uint64_t tcoef = k / m;
            basis[i] = g.add(c, g.neg(g.scalar_mul(tcoef, lv.gen)));
        }
        basis.insert(basis.begin(), lv.gen);
        orders.insert(orders.begin(), lv.ord);
    }

    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (g.element_order(basis[i]) != orders[i])
            throw std::logic_error("direct_sum_basis: order mismatch after adjustment");
        prod *= orders[i];
    }
    if (prod != elems.size())
        throw std::logic_error("direct_sum_basis: basis does not span the subgroup");
    return basis;
}

inline Subgroup subgroup_from_mask(const FiniteAbelianPGroup& g, ElementSet mask) {
    Subgroup s;
    s.elements = mask.to_indices();
    s.mask = std::move(mask);
    s.generators = direct_sum_basis(g, s.elements);
    s.index = g.order / s.elements.size();
    return s;
}

// closure of H u {a}; H must already be a subgroup containing 0
inline ElementSet extend_subgroup_mask(const FiniteAbelianPGroup& g, const ElementSet& h,
                                       std::uint32_t a) {
    ElementSet m = h;
    std::vector<std::uint32_t> base = h.to_indices();
    std::uint32_t cur = a;
    while (!h.test(cur)) {
        for (auto x : base) m.set(g.add(x, cur));
        cur = g.add(cur, a);
    }
    return m;
}

inline Subgroup subgroup_generated_by(const FiniteAbelianPGroup& g,
                                      const std::vector<std::uint32_t>& gens) {
    ElementSet m(static_cast<std::size_t>(g.order));
    m.set(0);
    for (auto a : gens) m = extend_subgroup_mask(g, m, a);
    return subgroup_from_mask(g, std::move(m));
}

inline Subgroup trivial_subgroup(const FiniteAbelianPGroup& g) {
    return subgroup_generated_by(g, {});
}

inline Subgroup full_subgroup(const FiniteAbelianPGroup& g) {
    ElementSet m(static_cast<std::size_t>(g.order));
    for (std::uint32_t i = 0; i < g.order; ++i) m.set(i);
    return subgroup_from_mask(g, std::move(m));
}

inline bool subgroup_leq(const Subgroup& a, const Subgroup& b) {
    return b.mask.contains(a.mask);
}

inline Subgroup subgroup_intersection(const FiniteAbelianPGroup& g, const Subgroup& a,
                                      const Subgroup& b) {
    return subgroup_from_mask(g, a.mask.intersect(b.mask));
}

inline Subgroup subgroup_join(const FiniteAbelianPGroup& g, const Subgroup& a,
                              const Subgroup& b) {
    ElementSet m = a.mask;
    for (auto x : b.elements) {
        if (!m.test(x)) m = extend_subgroup_mask(g, m, x);
    }
    return subgroup_from_mask(g, std::move(m));
}

inline bool subgroup_sort_less(const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
}

// Complete duplicate-free subgroup lattice, found by closing single-element
// extensions starting from the trivial subgroup. Deterministic order:
// (order, element list).
inline std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianPGroup& g,
                                                 std::uint64_t order_bound = 1u << 16) {
    if (g.order > order_bound)
        throw bound_exceeded("enumerate_subgroups: group order exceeds configured bound");
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<ElementSet> queue;
    ElementSet triv(static_cast<std::size_t>(g.order));
    triv.set(0);
    seen.insert(triv);
    queue.push_back(triv);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        ElementSet h = queue[qi]; // copy: queue may reallocate
        for (std::uint32_t a = 1; a < g.order; ++a) {
            if (h.test(a)) continue;
            ElementSet ext = extend_subgroup_mask(g, h, a);
            if (seen.insert(ext).second) queue.push_back(std::move(ext));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(queue.size());
    for (auto& m : queue) out.push_back(subgroup_from_mask(g, std::move(m)));
    std::sort(out.begin(), out.end(), subgroup_sort_less);
    return out;
}

// All index-p subgroups, as kernels of the order-p dual characters.
// Count is (p^rank - 1)/(p - 1).
inline std::vector<Subgroup> maximal_subgroups(const FiniteAbelianPGroup& g) {
    if (g.is_trivial())
        throw std::invalid_argument("maximal_subgroups: trivial group has no proper subgroups");
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<Subgroup> out;
    for (std::uint32_t chi = 1; chi < g.order; ++chi) {
        if (g.element_order(chi) != g.p) continue;
        ElementSet ker(static_cast<std::size_t>(g.order));
        for (std::uint32_t a = 0; a < g.order; ++a)
            if (g.pairing(chi, a) == 0) ker.set(a);
        if (seen.insert(ker).second) out.push_back(subgroup_from_mask(g, std::move(ker)));
    }
    std::sort(out.begin(), out.end(), subgroup_sort_less);
    return out;
}

// Characters whose restriction to the subgroup is trivial. The annihilator is
// a subgroup of the dual of order |A|/|A'|.
inline std::vector<std::uint32_t> annihilator_characters(const FiniteAbelianPGroup& g,
                                                         const Subgroup& s) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t chi = 0; chi < g.order; ++chi) {
        bool triv = true;
        for (auto b : s.generators) {
            if (g.pairing(chi, b) != 0) {
                triv = false;
                break;
            }
        }
        if (triv) out.push_back(chi);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subgroup contexts: the abstract group of a subgroup together with the
// element embedding and the character restriction/lift tables.
// ---------------------------------------------------------------------------

struct SubgroupContext {
    FiniteAbelianPGroup ambient;
    Subgroup sub;
    FiniteAbelianPGroup local;                // abstract group of the subgroup
    std::vector<std::uint32_t> embed;         // local element -> ambient element
    std::vector<std::int32_t> to_local;       // ambient element -> local element or -1
    std::vector<std::uint32_t> restrict_char; // ambient character -> local character
    std::vector<std::uint32_t> lift_char;     // local character -> lex-least ambient preimage
};

inline SubgroupContext make_subgroup_context(const FiniteAbelianPGroup& g, Subgroup s) {
    SubgroupContext ctx;
    ctx.ambient = g;

    std::vector<unsigned> exps;
    std::vector<std::uint64_t> basis_orders;
    for (auto b : s.generators) {
        std::uint64_t o = g.element_order(b);
        unsigned e = 0;
        for (std::uint64_t v = o; v > 1; v /= g.p) ++e;
        exps.push_back(e);
        basis_orders.push_back(o);
    }
    ctx.local = exps.empty() ? trivial_group(g.p) : detail::finish_group(g.p, exps);
    // finish_group sorts, but peeling already returns non-increasing orders
    ctx.embed.resize(static_cast<std::size_t>(ctx.local.order));
    ctx.to_local.assign(static_cast<std::size_t>(g.order), -1);
    for (std::uint32_t x = 0; x < ctx.local.order; ++x) {
        auto c = ctx.local.coords_of(x);
        std::uint32_t amb = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            amb = g.add(amb, g.scalar_mul(c[j], s.generators[j]));
        ctx.embed[x] = amb;
        ctx.to_local[amb] = static_cast<std::int32_t>(x);
    }
    for (auto e : s.elements) {
        if (ctx.to_local[e] < 0)
            throw std::logic_error("make_subgroup_context: basis does not span subgroup");
    }

    ctx.restrict_char.resize(static_cast<std::size_t>(g.order));
    const std::uint64_t amb_exp = g.exponent;
    for (std::uint32_t chi = 0; chi < g.order; ++chi) {
        std::vector<std::uint64_t> cc(ctx.local.rank());
        for (std::size_t j = 0; j < ctx.local.rank(); ++j) {
            std::uint64_t k = g.pairing(chi, s.generators[j]);
            std::uint64_t step = amb_exp / basis_orders[j];
            if (k % step != 0)
                throw std::logic_error("make_subgroup_context: pairing not compatible with order");
            cc[j] = (k / step) % basis_orders[j];
        }
        ctx.restrict_char[chi] = ctx.local.index_of(cc);
    }

    const std::uint32_t kInvalid = UINT32_MAX;
    ctx.lift_char.assign(static_cast<std::size_t>(ctx.local.order), kInvalid);
    for (std::uint32_t chi = 0; chi < g.order; ++chi) {
        std::uint32_t psi = ctx.restrict_char[chi];
        if (ctx.lift_char[psi] == kInvalid) ctx.lift_char[psi] = chi;
    }
    for (auto v : ctx.lift_char)
        if (v == kInvalid) throw std::logic_error("make_subgroup_context: restriction not surjective");

    ctx.sub = std::move(s);
    return ctx;
}

// ---------------------------------------------------------------------------
// Surjections onto (Z/p)^2 and subgroup preimages
// ---------------------------------------------------------------------------

struct SurjectionToRankTwo {
    // two rows, each of length rank(A); entries mod p
    std::array<std::vector<std::uint64_t>, 2> rows;
};

inline std::uint32_t apply_surjection(const FiniteAbelianPGroup& g,
                                      const FiniteAbelianPGroup& target,
                                      const SurjectionToRankTwo& rho, std::uint32_t a) {
    auto c = g.coords_of(a);
    std::vector<std::uint64_t> img(2, 0);
    for (int t = 0; t < 2; ++t) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            acc = (acc + rho.rows[t][i] % g.p * (c[i] % g.p)) % g.p;
        img[t] = acc;
    }
    return target.index_of(img);
}

inline bool surjection_is_onto(const FiniteAbelianPGroup& g, const FiniteAbelianPGroup& target,
                               const SurjectionToRankTwo& rho) {
    ElementSet image(static_cast<std::size_t>(target.order));
    for (std::uint32_t a = 0; a < g.order; ++a) image.set(apply_surjection(g, target, rho, a));
    return image.count() == target.order;
}

// Default choice: project the two largest cyclic factors mod p.
inline SurjectionToRankTwo default_surjection(const FiniteAbelianPGroup& g) {
    if (g.rank() < 2)
        throw std::invalid_argument("default_surjection: group must have rank >= 2");
    SurjectionToRankTwo rho;
    rho.rows[0].assign(g.rank(), 0);
    rho.rows[1].assign(g.rank(), 0);
    rho.rows[0][0] = 1;
    rho.rows[1][1] = 1;
    return rho;
}

// rho^{-1}(H) for H a subgroup of (Z/p)^2; proper whenever H is proper and
// rho is onto.
inline Subgroup preimage_subgroup(const FiniteAbelianPGroup& g, const SurjectionToRankTwo& rho,
                                  const FiniteAbelianPGroup& target, const Subgroup& h) {
    if (!surjection_is_onto(g, target, rho))
        throw std::invalid_argument("preimage_subgroup: map is not surjective");
    ElementSet m(static_cast<std::size_t>(g.order));
    for (std::uint32_t a = 0; a < g.order; ++a)
        if (h.mask.test(apply_surjection(g, target, rho, a))) m.set(a);
    return subgroup_from_mask(g, std::move(m));
}

} // namespace trideal
