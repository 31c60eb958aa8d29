#pragma once

#include "trideal/integers.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace trideal {

using Row = std::vector<Int>;

// Canonical row Hermite form of an integer lattice: pivot columns strictly
// increasing, pivots positive, entries above each pivot reduced into
// [0, pivot). Two generator sets span the same lattice iff their canonical
// bases are equal.
struct HermiteBasis {
    std::size_t ncols = 0;
    std::vector<Row> rows;            // basis rows, one pivot each
    std::vector<std::size_t> pivots;  // pivot column per row, strictly increasing

    std::size_t rank() const { return rows.size(); }

    bool operator==(const HermiteBasis& o) const {
        return ncols == o.ncols && pivots == o.pivots && rows == o.rows;
    }
    bool operator!=(const HermiteBasis& o) const { return !(*this == o); }
};

class LatticeBuilder {
  public:
    explicit LatticeBuilder(std::size_t ncols) : ncols_(ncols) {}

    // Fold one generator into the working echelon basis.
    void add_row(Row v) {
        if (v.size() != ncols_) throw std::invalid_argument("LatticeBuilder: wrong row length");
        std::size_t lead = leading(v);
        std::size_t i = 0;
        while (lead < ncols_) {
            while (i < rows_.size() && pivots_[i] < lead) ++i;
            if (i == rows_.size() || pivots_[i] > lead) {
                if (v[lead] < 0)
                    for (auto& x : v) x = -x;
                rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
                pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(i), lead);
                return;
            }
            // same pivot column: combine
            Row& r = rows_[i];
            const Int& a = r[lead];
            const Int& b = v[lead];
            if (b % a == 0) {
                Int q = b / a;
                for (std::size_t c = lead; c < ncols_; ++c) v[c] -= q * r[c];
            } else {
                Int s, t;
                Int d = ext_gcd(a, b, s, t);
                Int af = a / d, bf = b / d;
                for (std::size_t c = lead; c < ncols_; ++c) {
                    Int rc = r[c], vc = v[c];
                    r[c] = s * rc + t * vc;
                    v[c] = af * vc - bf * rc;
                }
            }
            lead = leading(v, lead);
        }
    }

    HermiteBasis finalize() const {
        HermiteBasis h;
        h.ncols = ncols_;
        h.rows = rows_;
        h.pivots = pivots_;
        // reduce entries above each pivot, bottom row upward
        for (std::size_t i = h.rows.size(); i-- > 0;) {
            for (std::size_t j = i + 1; j < h.rows.size(); ++j) {
                std::size_t pc = h.pivots[j];
                const Int& piv = h.rows[j][pc];
                Int q = floor_div(h.rows[i][pc], piv);
                if (q != 0)
                    for (std::size_t c = pc; c < ncols_; ++c) h.rows[i][c] -= q * h.rows[j][c];
            }
        }
        return h;
    }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<Row>& echelon_rows() const { return rows_; }
    const std::vector<std::size_t>& echelon_pivots() const { return pivots_; }

  private:
    std::size_t leading(const Row& v, std::size_t from = 0) const {
        for (std::size_t c = from; c < ncols_; ++c)
            if (v[c] != 0) return c;
        return ncols_;
    }

    std::size_t ncols_;
    std::vector<Row> rows_;
    std::vector<std::size_t> pivots_;
};

inline HermiteBasis hermite_basis(std::size_t ncols, const std::vector<Row>& generators) {
    LatticeBuilder b(ncols);
    for (const auto& v : generators) b.add_row(v);
    return b.finalize();
}

// Membership test: reduce v by the pivots; v lies in the lattice iff it
// reduces to zero.
inline bool lattice_contains(const HermiteBasis& h, Row v) {
    if (v.size() != h.ncols) throw std::invalid_argument("lattice_contains: wrong vector length");
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        std::size_t pc = h.pivots[i];
        if (v[pc] == 0) continue;
        if (v[pc] % h.rows[i][pc] != 0) return false;
        Int q = v[pc] / h.rows[i][pc];
        for (std::size_t c = pc; c < h.ncols; ++c) v[c] -= q * h.rows[i][c];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline bool lattice_contains(std::size_t ncols, const std::vector<Row>& generators, Row v) {
    return lattice_contains(hermite_basis(ncols, generators), std::move(v));
}

inline bool lattice_subset(const HermiteBasis& a, const HermiteBasis& b) {
    for (const auto& r : a.rows)
        if (!lattice_contains(b, r)) return false;
    return true;
}

inline bool lattices_equal(const HermiteBasis& a, const HermiteBasis& b) { return a == b; }

// Coordinates of v in the basis rows; returns false if v is outside the
// lattice.
inline bool solve_in_basis(const HermiteBasis& h, Row v, std::vector<Int>& coords) {
    coords.assign(h.rows.size(), 0);
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        std::size_t pc = h.pivots[i];
        if (v[pc] == 0) continue;
        if (v[pc] % h.rows[i][pc] != 0) return false;
        Int q = v[pc] / h.rows[i][pc];
        coords[i] = q;
        for (std::size_t c = pc; c < h.ncols; ++c) v[c] -= q * h.rows[i][c];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace trideal
