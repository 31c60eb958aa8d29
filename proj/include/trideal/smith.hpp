#pragma once

#include "trideal/integers.hpp"
#include "trideal/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace trideal {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const Int& w = y.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

// Fraction-free determinant (Bareiss). Used for exact unimodularity checks on
// small transforms.
inline Int bareiss_det(IntMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("bareiss_det: matrix not square");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

// Determinant modulo a word-sized prime; cheap unimodularity evidence for
// transforms too large for Bareiss.
inline std::uint64_t det_mod_prime(const IntMatrix& m, std::uint64_t q) {
    const std::size_t n = m.rows;
    std::vector<std::uint64_t> w(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        Int r = m.a[i] % static_cast<long long>(q);
        if (r < 0) r += static_cast<long long>(q);
        w[i] = r.convert_to<std::uint64_t>();
    }
    auto mulmod = [q](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && w[piv * n + k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w[k * n + j], w[piv * n + j]);
            det = q - det;
            if (det == q) det = 0;
        }
        std::uint64_t inv = powmod(w[k * n + k], q - 2);
        det = mulmod(det, w[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            std::uint64_t f = mulmod(w[i * n + k], inv);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) {
                std::uint64_t sub = mulmod(f, w[k * n + j]);
                w[i * n + j] = (w[i * n + j] + q - sub) % q;
            }
        }
    }
    return det % q;
}

struct SmithNormalForm {
    IntMatrix u; // rows x rows, unimodular
    IntMatrix d; // rows x cols, diagonal with divisibility chain
    IntMatrix v; // cols x cols, unimodular

    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < std::min(d.rows, d.cols); ++i)
            if (d.at(i, i) != 0) out.push_back(d.at(i, i));
        return out;
    }
};

// Verifies U*M*V == D, diagonality, non-negative divisibility chain, and
// unimodularity of the transforms (exact determinant up to dimension 32,
// modular evidence at two primes beyond that). Throws std::logic_error on
// any violation; runs on every smith_normal_form call.
inline void verify_smith(const IntMatrix& m, const SmithNormalForm& s) {
    if (mat_mul(mat_mul(s.u, m), s.v) != s.d)
        throw std::logic_error("smith_normal_form: U*M*V != D");
    for (std::size_t i = 0; i < s.d.rows; ++i)
        for (std::size_t j = 0; j < s.d.cols; ++j)
            if (i != j && s.d.at(i, j) != 0)
                throw std::logic_error("smith_normal_form: D not diagonal");
    const std::size_t k = std::min(s.d.rows, s.d.cols);
    for (std::size_t i = 0; i < k; ++i) {
        if (s.d.at(i, i) < 0) throw std::logic_error("smith_normal_form: negative divisor");
        if (i + 1 < k) {
            const Int& a = s.d.at(i, i);
            const Int& b = s.d.at(i + 1, i + 1);
            if (a == 0 && b != 0)
                throw std::logic_error("smith_normal_form: zero before nonzero divisor");
            if (a != 0 && b % a != 0)
                throw std::logic_error("smith_normal_form: divisibility chain broken");
        }
    }
    auto check_unimodular = [](const IntMatrix& t, const char* name) {
        if (t.rows <= 32) {
            Int det = bareiss_det(t);
            if (det != 1 && det != -1)
                throw std::logic_error(std::string("smith_normal_form: ") + name +
                                       " not unimodular");
        } else {
            for (std::uint64_t q : {2147483647ull, 2305843009213693951ull}) {
                std::uint64_t d = det_mod_prime(t, q);
                if (d != 1 && d != q - 1)
                    throw std::logic_error(std::string("smith_normal_form: ") + name +
                                           " not unimodular (mod prime)");
            }
        }
    };
    check_unimodular(s.u, "U");
    check_unimodular(s.v, "V");
}

// Classical elimination with minimal-absolute-value pivoting; transforms are
// tracked unconditionally and the postconditions are checked on every call.
inline SmithNormalForm smith_normal_form(const IntMatrix& input) {
    const std::size_t m = input.rows, n = input.cols;
    SmithNormalForm s;
    s.u = IntMatrix::identity(m);
    s.v = IntMatrix::identity(n);
    s.d = input;
    IntMatrix& d = s.d;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(s.u.at(a, j), s.u.at(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(s.v.at(i, a), s.v.at(i, b));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < n; ++j) d.at(dst, j) += f * d.at(src, j);
        for (std::size_t j = 0; j < m; ++j) s.u.at(dst, j) += f * s.u.at(src, j);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < m; ++i) d.at(i, dst) += f * d.at(i, src);
        for (std::size_t i = 0; i < n; ++i) s.v.at(i, dst) += f * s.v.at(i, src);
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < n; ++j) d.at(r, j) = -d.at(r, j);
        for (std::size_t j = 0; j < m; ++j) s.u.at(r, j) = -s.u.at(r, j);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        bool any = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!any || ax < best) {
                    any = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (!any) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                add_row(i, t, -q);
                if (d.at(i, t) != 0) {
                    swap_rows(t, i); // remainder is strictly smaller than the pivot
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                add_col(j, t, -q);
                if (d.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // pivot must divide the whole trailing block before we move on
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (d.at(t, t) < 0) negate_row(t);
    }

    verify_smith(input, s);
    return s;
}

// ---------------------------------------------------------------------------
// Quotient structure of Z^n / (span of generator rows)
// ---------------------------------------------------------------------------

struct QuotientStructure {
    std::uint64_t free_rank = 0;
    std::vector<Int> elementary_divisors; // d_1 | d_2 | ..., each >= 2
    bool p_torsion_present = false;
    bool p_annihilates = false; // set by callers that know the ideal

    bool nonzero() const { return free_rank > 0 || !elementary_divisors.empty(); }

    bool operator==(const QuotientStructure& o) const {
        return free_rank == o.free_rank && elementary_divisors == o.elementary_divisors &&
               p_torsion_present == o.p_torsion_present && p_annihilates == o.p_annihilates;
    }
};

inline QuotientStructure quotient_from_basis(std::size_t ambient_rank, const HermiteBasis& h,
                                             std::uint64_t p = 0) {
    IntMatrix b(h.rows.size(), ambient_rank);
    for (std::size_t i = 0; i < h.rows.size(); ++i)
        for (std::size_t j = 0; j < ambient_rank; ++j) b.at(i, j) = h.rows[i][j];
    SmithNormalForm s = smith_normal_form(b);
    QuotientStructure q;
    q.free_rank = ambient_rank - h.rows.size(); // basis rows are independent
    for (const auto& dinvariant : s.diagonal())
        if (dinvariant >= 2) q.elementary_divisors.push_back(dinvariant);
    if (p > 1)
        for (const auto& dv : q.elementary_divisors)
            if (dv % p == 0) q.p_torsion_present = true;
    return q;
}

// Generators are compressed to a Hermite basis first (lattice-preserving), so
// the Smith step never sees more rows than columns.
inline QuotientStructure quotient_structure(std::size_t ambient_rank,
                                            const std::vector<Row>& generators,
                                            std::uint64_t p = 0) {
    return quotient_from_basis(ambient_rank, hermite_basis(ambient_rank, generators), p);
}

} // namespace trideal
