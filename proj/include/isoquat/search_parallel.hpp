#pragma once

#include <array>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "isoquat/search.hpp"

namespace isoquat {
namespace searchdetail {

/// Parallel layer scan. Within a layer the leading slot is striped across
/// threads; each stripe is enumerated lexicographically and stops at its
/// first hit, so the global minimum over stripes is the enumeration-minimal
/// witness regardless of scheduling. Step counts are derived from the
/// witness rank, not from what threads happened to evaluate, which keeps
/// reports byte-identical with the serial reference.
template <class Space>
ScanOutcome<Space> parallel_scan(const Space& sp, const std::vector<std::size_t>& prefix, int max_height,
                                 std::uint64_t max_steps) {
    ScanOutcome<Space> out;
    for (int h = 0; h <= max_height; ++h) {
        std::size_t cur = prefix[std::size_t(h)];
        std::size_t prev = h ? prefix[std::size_t(h - 1)] : 0;
        for (int cell = 0; cell < sp.cells(); ++cell) {
            int m = sp.slots(cell);
            std::uint64_t cnt = h == 0 ? pow_sat(cur, m) : pow_sat(cur, m) - pow_sat(prev, m);
            if (cnt == 0) continue;
            if (out.stats.steps + cnt > max_steps) return out;

            if (m == 0) {
                std::vector<std::size_t> idx;
                ++out.stats.steps;
                if (sp.eval(cell, idx)) {
                    out.found = true;
                    out.cell = cell;
                    out.idx = idx;
                    return out;
                }
                continue;
            }

            std::uint64_t best_rank = std::numeric_limits<std::uint64_t>::max();
            std::vector<std::size_t> best_idx;

#pragma omp parallel
            {
                std::uint64_t local_rank = std::numeric_limits<std::uint64_t>::max();
                std::vector<std::size_t> local_idx;
                std::vector<std::size_t> idx(std::size_t(m), 0);

#pragma omp for schedule(dynamic) nowait
                for (long long i0 = 0; i0 < (long long)cur; ++i0) {
                    idx.assign(std::size_t(m), 0);
                    idx[0] = std::size_t(i0);
                    bool stripe_done = false;
                    while (!stripe_done) {
                        bool all_old = h > 0;
                        for (int p = 0; p < m && all_old; ++p) all_old = idx[std::size_t(p)] < prev;
                        if (!all_old && sp.eval(cell, idx)) {
                            std::uint64_t r = layer_rank(idx, cur, prev);
                            if (r < local_rank) {
                                local_rank = r;
                                local_idx = idx;
                            }
                            break; // later tuples in this stripe rank higher
                        }
                        int p = m - 1;
                        for (; p >= 1; --p) { // slot 0 is fixed per stripe
                            if (++idx[std::size_t(p)] < cur) break;
                            idx[std::size_t(p)] = 0;
                        }
                        if (p < 1) stripe_done = true;
                    }
                }

#pragma omp critical
                {
                    if (local_rank < best_rank) {
                        best_rank = local_rank;
                        best_idx = local_idx;
                    }
                }
            }

            if (best_rank != std::numeric_limits<std::uint64_t>::max()) {
                out.found = true;
                out.cell = cell;
                out.idx = best_idx;
                out.stats.steps += best_rank + 1;
                return out;
            }
            out.stats.steps += cnt;
        }
        out.stats.height_completed = h;
    }
    return out;
}

/// Exact int64 flattening of a list of rationals: values are scaled by the
/// lcm of the denominators. Fails (returns false) when anything overflows.
inline bool int_scale(const std::vector<Rat>& vals, std::vector<std::int64_t>& out, std::int64_t& scale) {
    mpz_class lcm_den(1);
    for (const auto& v : vals) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.raw().get_den().get_mpz_t());
    if (!lcm_den.fits_slong_p()) return false;
    out.clear();
    for (const auto& v : vals) {
        mpz_class scaled = v.raw().get_num() * (lcm_den / v.raw().get_den());
        if (!scaled.fits_slong_p()) return false;
        out.push_back(scaled.get_si());
    }
    scale = lcm_den.get_si();
    return true;
}

struct SparseIntVec {
    std::vector<std::pair<int, std::int64_t>> entries; // (position, value)
};

/// Integerized evaluator for the F-search over the rationals: the value of q
/// on a candidate is a quadratic form in the slot coefficients with
/// precomputed coefficient vectors in the fixed ring.
struct FFastEval {
    int m = 0;
    int width = 0;
    std::vector<std::int64_t> table;              // scaled base values per index
    std::vector<SparseIntVec> diag;               // q(B_alpha)
    std::vector<std::vector<SparseIntVec>> cross; // b(B_alpha, B_beta), beta > alpha
    bool ok = false;

    template <class B>
    static FFastEval build(const searchdetail::FSpace<B>& sp) {
        FFastEval fe;
        if constexpr (!std::is_same_v<B, Rat>) {
            return fe;
        } else {
            const GramForm<Rat>& g = *sp.g;
            const auto& desc = g.desc();
            int d = sp.d;
            fe.m = sp.slots(0);

            // Basis coordinate vectors: slot -> single K-coefficient Laurent.
            auto basis_coords = [&](int alpha) {
                std::vector<Laurent<Rat>> coords(std::size_t(g.n()), Laurent<Rat>(KElem<Rat>(0), desc));
                int c = alpha / (4 * d);
                int rest = alpha % (4 * d);
                int zz = rest / 2, part = rest % 2;
                KElem<Rat> y = part ? KElem<Rat>::l(desc) : KElem<Rat>(1);
                coords[std::size_t(c)] = Laurent<Rat>::t_pow(zz - d, desc, y);
                return coords;
            };

            // Dense position ids over the support window [-(2d+1), 2d+1] x {re, lm}.
            auto pos_of = [&](int z, int part) { return (z + 2 * d + 1) * 2 + part; };
            fe.width = (4 * d + 3) * 2;

            std::vector<Rat> all_components;
            auto collect = [&](const Laurent<Rat>& f) {
                for (const auto& [z, y] : f.coeffs()) {
                    (void)z;
                    all_components.push_back(y.re());
                    all_components.push_back(y.lm());
                }
            };

            std::vector<Laurent<Rat>> diag_vals;
            std::vector<std::vector<Laurent<Rat>>> cross_vals(std::size_t(fe.m));
            for (int a = 0; a < fe.m; ++a) {
                auto ca = basis_coords(a);
                diag_vals.push_back(q_F(g, ca));
                collect(diag_vals.back());
                for (int b = a + 1; b < fe.m; ++b) {
                    cross_vals[std::size_t(a)].push_back(b_F(g, ca, basis_coords(b)));
                    collect(cross_vals[std::size_t(a)].back());
                }
            }
            std::vector<std::int64_t> scaled;
            std::int64_t dscale = 1;
            if (!int_scale(all_components, scaled, dscale)) return fe;

            std::size_t k = 0;
            auto to_sparse = [&](const Laurent<Rat>& f) {
                SparseIntVec v;
                for (const auto& [z, y] : f.coeffs()) {
                    (void)y;
                    std::int64_t re = scaled[k++], lm = scaled[k++];
                    if (re) v.entries.emplace_back(pos_of(z, 0), re);
                    if (lm) v.entries.emplace_back(pos_of(z, 1), lm);
                }
                return v;
            };
            for (int a = 0; a < fe.m; ++a) {
                fe.diag.push_back(to_sparse(diag_vals[std::size_t(a)]));
                fe.cross.emplace_back();
                for (auto& cv : cross_vals[std::size_t(a)]) fe.cross.back().push_back(to_sparse(cv));
            }

            // Scaled value table; lcm of denominators keeps everything integral.
            std::vector<std::int64_t> tscaled;
            std::int64_t tl = 1;
            if (!int_scale(sp.vals, tscaled, tl)) return fe;
            fe.table = std::move(tscaled);

            // Overflow bound: |acc| <= pairs * max|c|^2 * max|entry|.
            std::int64_t maxc = 1, maxe = 1;
            for (auto v : fe.table) maxc = std::max(maxc, std::abs(v));
            for (auto s : scaled) maxe = std::max(maxe, std::abs(s));
            long double bound = (long double)(fe.m * (fe.m + 1) / 2 + fe.m) * (long double)maxc * maxc * maxe;
            if (bound > 4.0e18L / 8) return fe;

            fe.ok = true;
            return fe;
        }
    }

    bool eval(const std::vector<std::size_t>& idx, std::vector<std::int64_t>& acc) const {
        acc.assign(std::size_t(width), 0);
        bool nonzero = false;
        for (int a = 0; a < m; ++a) {
            std::int64_t ca = table[idx[std::size_t(a)]];
            if (!ca) continue;
            nonzero = true;
            for (const auto& [pos, v] : diag[std::size_t(a)].entries) acc[std::size_t(pos)] += ca * ca * v;
            for (int b = a + 1; b < m; ++b) {
                std::int64_t cb = table[idx[std::size_t(b)]];
                if (!cb) continue;
                for (const auto& [pos, v] : cross[std::size_t(a)][std::size_t(b - a - 1)].entries)
                    acc[std::size_t(pos)] += ca * cb * v;
            }
        }
        if (!nonzero) return false;
        for (auto v : acc)
            if (v) return false;
        return true;
    }
};

/// Integerized evaluator for the Q-search: tests s(v, v) in k through the
/// three coordinates of Q/k, as a quadratic form in the slot coefficients
/// plus one virtual slot for the normalized coordinate.
struct QFastEval {
    int m = 0; // free slots (the virtual 1 lives at index m)
    std::vector<std::int64_t> table;
    std::vector<std::array<std::int64_t, 3>> pair_coeffs; // (m+1)^2 entries
    bool ok = false;

    template <class B>
    static QFastEval build(const searchdetail::QSpace<B>& sp, int cell) {
        QFastEval qe;
        if constexpr (!std::is_same_v<B, Rat>) {
            return qe;
        } else {
            const GramForm<Rat>& g = *sp.g;
            const auto& desc = g.desc();
            qe.m = sp.slots(cell);
            int total = qe.m + (sp.projective ? 1 : 0);

            auto basis_vec = [&](int alpha) {
                QVec<Rat> v(std::size_t(g.n()), QuatK<Rat>::scalar(KElem<Rat>(0), desc));
                if (alpha == qe.m) {
                    v[std::size_t(cell)] = QuatK<Rat>(1);
                } else {
                    std::array<Rat, 4> c{Rat(0), Rat(0), Rat(0), Rat(0)};
                    c[std::size_t(alpha % 4)] = Rat(1);
                    v[std::size_t(alpha / 4)] = quat_from_coords(c, desc);
                }
                return v;
            };

            std::vector<Rat> comps;
            for (int a = 0; a < total; ++a)
                for (int b = 0; b < total; ++b) {
                    QuatK<Rat> s = g.eval(basis_vec(a), basis_vec(b));
                    comps.push_back(s.x0().lm());
                    comps.push_back(s.x1().re());
                    comps.push_back(s.x1().lm());
                }
            std::vector<std::int64_t> scaled;
            std::int64_t dscale = 1;
            if (!int_scale(comps, scaled, dscale)) return qe;
            for (int i = 0; i < total * total; ++i)
                qe.pair_coeffs.push_back({scaled[std::size_t(3 * i)], scaled[std::size_t(3 * i + 1)],
                                          scaled[std::size_t(3 * i + 2)]});

            std::vector<std::int64_t> tscaled;
            std::int64_t tl = 1;
            if (!int_scale(sp.vals, tscaled, tl)) return qe;
            qe.table = std::move(tscaled);

            std::int64_t maxc = 1, maxe = 1;
            for (auto v : qe.table) maxc = std::max(maxc, std::abs(v));
            for (auto& p : qe.pair_coeffs)
                for (auto v : p) maxe = std::max(maxe, std::abs(v));
            long double bound = (long double)(total * total) * (long double)maxc * maxc * maxe;
            if (bound > 4.0e18L / 8) return qe;
            qe.ok = true;
            return qe;
        }
    }

    bool eval(const std::vector<std::size_t>& idx, bool projective) const {
        int total = projective ? m + 1 : m;
        std::int64_t a0 = 0, a1 = 0, a2 = 0;
        bool nonzero = projective;
        auto coeff = [&](int a) -> std::int64_t { return a == m ? 1 : table[idx[std::size_t(a)]]; };
        for (int a = 0; a < total; ++a) {
            std::int64_t ca = coeff(a);
            if (!ca) continue;
            if (a < m) nonzero = true;
            for (int b = 0; b < total; ++b) {
                std::int64_t cb = coeff(b);
                if (!cb) continue;
                const auto& p = pair_coeffs[std::size_t(a * total + b)];
                a0 += ca * cb * p[0];
                a1 += ca * cb * p[1];
                a2 += ca * cb * p[2];
            }
        }
        if (!nonzero) return false;
        return a0 == 0 && a1 == 0 && a2 == 0;
    }
};

/// F-space wrapper that routes eval through the integer kernel.
template <class B>
struct FSpaceFast {
    const FSpace<B>* generic;
    const FFastEval* fast;

    int cells() const { return 1; }
    int slots(int c) const { return generic->slots(c); }
    bool eval(int cell, const std::vector<std::size_t>& idx) const {
        if constexpr (std::is_same_v<B, Rat>) {
            thread_local std::vector<std::int64_t> acc;
            if (fast->eval(idx, acc)) return generic->eval(cell, idx); // exact reconfirmation
            return false;
        } else {
            return generic->eval(cell, idx);
        }
    }
};

template <class B>
struct QSpaceFast {
    const QSpace<B>* generic;
    const std::vector<QFastEval>* fast; // one per cell
    bool use_fast;

    int cells() const { return generic->cells(); }
    int slots(int c) const { return generic->slots(c); }
    bool eval(int cell, const std::vector<std::size_t>& idx) const {
        if (use_fast) {
            if ((*fast)[std::size_t(cell)].eval(idx, generic->projective)) return generic->eval(cell, idx);
            return false;
        }
        return generic->eval(cell, idx);
    }
};

} // namespace searchdetail

/// OpenMP search over Q^n; agrees with search_isotropic_Q_serial outcome for
/// outcome (witness, steps, heights) by construction.
template <class B>
QSearchResult<B> search_isotropic_Q(const GramForm<B>& g, bool division_certified, const SearchBudget& budget) {
    searchdetail::QSpace<B> sp{&g, base_values_up_to<B>(budget.height), division_certified};
    auto prefix = base_prefix_sizes<B>(budget.height);

    std::vector<searchdetail::QFastEval> fast;
    bool use_fast = true;
    for (int cell = 0; cell < sp.cells(); ++cell) {
        fast.push_back(searchdetail::QFastEval::build(sp, cell));
        use_fast = use_fast && fast.back().ok;
    }
    searchdetail::QSpaceFast<B> fsp{&sp, &fast, use_fast};

    auto out = searchdetail::parallel_scan(fsp, prefix, budget.height, budget.max_steps);
    QSearchResult<B> res;
    res.stats = out.stats;
    if (out.found) res.witness = sp.make(out.cell, out.idx);
    return res;
}

template <class B>
FSearchResult<B> search_isotropic_F(const GramForm<B>& g, const SearchBudget& budget) {
    searchdetail::FSpace<B> sp{&g, base_values_up_to<B>(budget.height), std::max(1, budget.filtration)};
    auto prefix = base_prefix_sizes<B>(budget.height);

    auto fe = searchdetail::FFastEval::build(sp);
    FSearchResult<B> res;
    if (fe.ok) {
        searchdetail::FSpaceFast<B> fsp{&sp, &fe};
        auto out = searchdetail::parallel_scan(fsp, prefix, budget.height, budget.max_steps);
        res.stats = out.stats;
        if (out.found) res.witness = FilteredVector<B>::from_laurent_coords(sp.make(out.cell, out.idx), g.desc());
    } else {
        auto out = searchdetail::parallel_scan(sp, prefix, budget.height, budget.max_steps);
        res.stats = out.stats;
        if (out.found) res.witness = FilteredVector<B>::from_laurent_coords(sp.make(out.cell, out.idx), g.desc());
    }
    return res;
}

} // namespace isoquat
