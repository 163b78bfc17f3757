#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "isoquat/enumeration.hpp"
#include "isoquat/filtered.hpp"
#include "isoquat/sampler.hpp"

namespace isoquat {

/// Bounds for the brute-force oracles. Enumeration is height-lexicographic:
/// candidates of smaller maximal coordinate height come first, ties broken
/// by lexicographic order over a fixed slot layout. The step deadline is
/// checked at layer granularity (a height layer either runs in full or not
/// at all), which keeps parallel and serial runs byte-identical.
struct SearchBudget {
    int height = 1;
    int filtration = 1; // level bound for vectors over the integral ideal
    std::uint64_t max_steps = std::numeric_limits<std::uint64_t>::max();
};

struct SearchStats {
    std::uint64_t steps = 0;     // enumerated candidates (including the zero tuple)
    int height_completed = -1;   // last height layer fully exhausted
};

template <class B>
struct QSearchResult {
    std::optional<QVec<B>> witness;
    SearchStats stats;
};

template <class B>
struct FSearchResult {
    std::optional<FilteredVector<B>> witness;
    SearchStats stats;
};

namespace searchdetail {

inline std::uint64_t pow_sat(std::uint64_t b, int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return std::uint64_t(r);
}

/// Number of tuples in [0, prev)^m lexicographically before idx.
inline std::uint64_t old_tuples_before(const std::vector<std::size_t>& idx, std::size_t prev) {
    std::uint64_t count = 0;
    int m = int(idx.size());
    for (int p = 0; p < m; ++p) {
        std::uint64_t below = std::min<std::uint64_t>(idx[std::size_t(p)], prev);
        count += below * pow_sat(prev, m - 1 - p);
        if (idx[std::size_t(p)] >= prev) break; // prefix leaves the old box
    }
    return count;
}

inline std::uint64_t lex_rank(const std::vector<std::size_t>& idx, std::size_t cur) {
    std::uint64_t r = 0;
    for (std::size_t i : idx) r = r * cur + i;
    return r;
}

/// Rank of idx within the layer (new tuples only, lexicographic order).
inline std::uint64_t layer_rank(const std::vector<std::size_t>& idx, std::size_t cur, std::size_t prev) {
    return lex_rank(idx, cur) - old_tuples_before(idx, prev);
}

/// Candidate spaces describe cells of fixed slot counts; a candidate is a
/// tuple of indices into the shared base-value table.
template <class Space>
struct ScanOutcome {
    bool found = false;
    int cell = 0;
    std::vector<std::size_t> idx;
    SearchStats stats;
};

/// Serial reference scan, kept deliberately straightforward: the OpenMP
/// kernel in search_parallel.hpp must agree with it candidate for candidate.
template <class Space>
ScanOutcome<Space> serial_scan(const Space& sp, const std::vector<std::size_t>& prefix, int max_height,
                               std::uint64_t max_steps) {
    ScanOutcome<Space> out;
    for (int h = 0; h <= max_height; ++h) {
        std::size_t cur = prefix[std::size_t(h)];
        std::size_t prev = h ? prefix[std::size_t(h - 1)] : 0;
        for (int cell = 0; cell < sp.cells(); ++cell) {
            int m = sp.slots(cell);
            std::uint64_t cnt = pow_sat(cur, m) - pow_sat(prev, m);
            if (h == 0) cnt = pow_sat(cur, m); // nothing enumerated before layer 0
            if (cnt == 0) continue;
            if (out.stats.steps + cnt > max_steps) return out;

            std::vector<std::size_t> idx(std::size_t(m), 0);
            for (;;) {
                bool all_old = h > 0;
                for (int p = 0; p < m && all_old; ++p) all_old = idx[std::size_t(p)] < prev;
                if (m == 0) all_old = h > 0;
                if (!all_old) {
                    ++out.stats.steps;
                    if (sp.eval(cell, idx)) {
                        out.found = true;
                        out.cell = cell;
                        out.idx = idx;
                        return out;
                    }
                }
                int p = m - 1;
                for (; p >= 0; --p) {
                    if (++idx[std::size_t(p)] < cur) break;
                    idx[std::size_t(p)] = 0;
                }
                if (p < 0) break;
            }
        }
        out.stats.height_completed = h;
    }
    return out;
}

/// Projective candidate space over Q^n for division algebras: the last
/// nonzero coordinate is normalized to 1 (right scaling preserves isotropy),
/// cell i = vectors with that coordinate at position i. For split algebras
/// the space is the raw nonzero tuples (cells() == 1, 4n slots).
template <class B>
struct QSpace {
    const GramForm<B>* g;
    std::vector<B> vals;
    bool projective;

    int cells() const { return projective ? g->n() : 1; }
    int slots(int cell) const { return projective ? 4 * cell : 4 * g->n(); }

    QVec<B> make(int cell, const std::vector<std::size_t>& idx) const {
        const auto& desc = g->desc();
        int ncoords = projective ? cell : g->n();
        QVec<B> v;
        for (int i = 0; i < ncoords; ++i) {
            std::array<B, 4> c{vals[idx[std::size_t(4 * i)]], vals[idx[std::size_t(4 * i + 1)]],
                               vals[idx[std::size_t(4 * i + 2)]], vals[idx[std::size_t(4 * i + 3)]]};
            v.push_back(quat_from_coords(c, desc));
        }
        if (projective) {
            v.push_back(QuatK<B>(1));
            for (int i = cell + 1; i < g->n(); ++i) v.push_back(QuatK<B>::scalar(KElem<B>(0), desc));
        }
        return v;
    }

    bool eval(int cell, const std::vector<std::size_t>& idx) const {
        QVec<B> v = make(cell, idx);
        if (qvec_is_zero(v)) return false;
        return g->q_value(v).is_zero_class();
    }
};

/// Candidate space for vectors in V (x) integral ideal of level <= d: slots
/// are the K-coefficients y_z, z in [-d, d-1], two base slots per K value,
/// coordinate-major layout.
template <class B>
struct FSpace {
    const GramForm<B>* g;
    std::vector<B> vals;
    int d;

    int cells() const { return 1; }
    int slots(int) const { return g->n() * 4 * d; }

    std::vector<Laurent<B>> make(int, const std::vector<std::size_t>& idx) const {
        const auto& desc = g->desc();
        std::vector<Laurent<B>> coords(std::size_t(g->n()), Laurent<B>(KElem<B>(0), desc));
        for (int c = 0; c < g->n(); ++c)
            for (int zz = 0; zz < 2 * d; ++zz) {
                int z = zz - d;
                std::size_t base = std::size_t((c * 2 * d + zz) * 2);
                KElem<B> y(vals[idx[base]], vals[idx[base + 1]], desc);
                if (!y.is_zero()) coords[std::size_t(c)] = coords[std::size_t(c)] + Laurent<B>::t_pow(z, desc, y);
            }
        return coords;
    }

    bool eval(int cell, const std::vector<std::size_t>& idx) const {
        auto coords = make(cell, idx);
        bool nonzero = false;
        for (const auto& f : coords) nonzero = nonzero || !f.is_zero();
        if (!nonzero) return false;
        return q_F(*g, coords).is_zero();
    }
};

} // namespace searchdetail

/// Brute-force isotropy search over Q^n (serial reference implementation).
template <class B>
QSearchResult<B> search_isotropic_Q_serial(const GramForm<B>& g, bool division_certified,
                                           const SearchBudget& budget) {
    searchdetail::QSpace<B> sp{&g, base_values_up_to<B>(budget.height), division_certified};
    auto prefix = base_prefix_sizes<B>(budget.height);
    auto out = searchdetail::serial_scan(sp, prefix, budget.height, budget.max_steps);
    QSearchResult<B> res;
    res.stats = out.stats;
    if (out.found) res.witness = sp.make(out.cell, out.idx);
    return res;
}

/// Brute-force isotropy search over V (x) integral ideal (serial reference).
template <class B>
FSearchResult<B> search_isotropic_F_serial(const GramForm<B>& g, const SearchBudget& budget) {
    searchdetail::FSpace<B> sp{&g, base_values_up_to<B>(budget.height), std::max(1, budget.filtration)};
    auto prefix = base_prefix_sizes<B>(budget.height);
    auto out = searchdetail::serial_scan(sp, prefix, budget.height, budget.max_steps);
    FSearchResult<B> res;
    res.stats = out.stats;
    if (out.found)
        res.witness = FilteredVector<B>::from_laurent_coords(sp.make(out.cell, out.idx), g.desc());
    return res;
}

} // namespace isoquat
