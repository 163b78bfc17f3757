#pragma once

#include <cassert>
#include <vector>

#include "isoquat/morita.hpp"

namespace isoquat {

/// Degree of f*eps as an element of the integral ideal: a coefficient at t^z
/// contributes z+1 for z >= 0 and -z for z < 0; zero has degree 0.
template <class B>
int ideal_degree(const Laurent<B>& f) {
    int d = 0;
    for (const auto& [z, y] : f.coeffs()) {
        (void)y;
        d = std::max(d, z >= 0 ? z + 1 : -z);
    }
    return d;
}

/// Vector sum v_i (x) t^i eps with v_i in Q^n, the filtration-level-(d+1)
/// presentation of elements of V (x) integral ideal. Trailing zero levels
/// are trimmed, so levels.size() is the filtration level.
template <class B>
class FilteredVector {
public:
    FilteredVector(int n, DescPtr<B> desc) : n_(n), desc_(std::move(desc)) {}
    FilteredVector(std::vector<QVec<B>> levels, int n, DescPtr<B> desc)
        : levels_(std::move(levels)), n_(n), desc_(std::move(desc)) {
        trim();
    }

    int n() const { return n_; }
    const DescPtr<B>& desc() const { return desc_; }
    const std::vector<QVec<B>>& levels() const { return levels_; }
    int level() const { return int(levels_.size()); }
    bool is_zero() const { return levels_.empty(); }

    const QVec<B>& top() const {
        assert(!levels_.empty());
        return levels_.back();
    }

    /// Laurent coordinates f_i with w = sum e_i (x) f_i eps, via
    /// x t^i eps = (x0 t^i + x1 b^(i+1) t^(-i-1)) eps.
    std::vector<Laurent<B>> laurent_coords() const {
        std::vector<Laurent<B>> out(std::size_t(n_), Laurent<B>(KElem<B>(0), desc_));
        for (int i = 0; i < level(); ++i)
            for (int c = 0; c < n_; ++c) {
                const QuatK<B>& x = levels_[std::size_t(i)][std::size_t(c)];
                if (x.is_zero()) continue;
                Laurent<B> term(KElem<B>(0), desc_);
                if (!x.x0().is_zero()) term = term + Laurent<B>::t_pow(i, desc_, x.x0());
                if (!x.x1().is_zero())
                    term = term + Laurent<B>::t_pow(-i - 1, desc_, KElem<B>(pow(desc_->b, i + 1)) * x.x1());
                out[std::size_t(c)] = out[std::size_t(c)] + term;
            }
        return out;
    }

    MoritaVector<B> morita() const {
        MoritaVector<B> out;
        for (const auto& f : laurent_coords()) out.push_back(KtElem<B>::from_laurent(f));
        return out;
    }

    /// Inverse direction: K-coefficient (Laurent) coordinates to Q-coefficient
    /// levels, by x_i = y_i + b^(-i-1) y_(-i-1) j.
    static FilteredVector from_laurent_coords(const std::vector<Laurent<B>>& coords, const DescPtr<B>& desc) {
        int n = int(coords.size());
        int lv = 0;
        for (const auto& f : coords) lv = std::max(lv, ideal_degree(f));
        std::vector<QVec<B>> levels(std::size_t(lv), QVec<B>(std::size_t(n), QuatK<B>::scalar(KElem<B>(0), desc)));
        for (int c = 0; c < n; ++c)
            for (const auto& [z, y] : coords[std::size_t(c)].coeffs()) {
                if (z >= 0) {
                    auto& x = levels[std::size_t(z)][std::size_t(c)];
                    x = QuatK<B>(x.x0() + y, x.x1(), desc);
                } else {
                    int i = -z - 1;
                    auto& x = levels[std::size_t(i)][std::size_t(c)];
                    x = QuatK<B>(x.x0(), x.x1() + KElem<B>(pow(desc->b, z)) * y, desc);
                }
            }
        return FilteredVector(std::move(levels), n, desc);
    }

    bool operator==(const FilteredVector& o) const { return levels_ == o.levels_; }

private:
    void trim() {
        while (!levels_.empty() && qvec_is_zero(levels_.back())) levels_.pop_back();
    }

    std::vector<QVec<B>> levels_;
    int n_;
    DescPtr<B> desc_;
};

template <class B>
int filtration_level(const FilteredVector<B>& w) {
    return w.level();
}

template <class B>
Laurent<B> q_F(const GramForm<B>& g, const FilteredVector<B>& w) {
    return q_F(g, w.laurent_coords());
}

/// Degree report for q(w) against the certified bound 2d+1 at level d+1,
/// with the strictness conclusion s(v_d, v_d) in K checked explicitly.
template <class B>
struct DegreeReport {
    int value_degree;   // Laurent degree of q(w), kDegNegInf for 0
    int bound;          // 2d+1
    bool strict;        // value_degree < bound
    bool leading_in_K;  // s(v_d, v_d) has no j-component
};

template <class B>
DegreeReport<B> degree_of_value(const GramForm<B>& g, const FilteredVector<B>& w) {
    DegreeReport<B> rep{kDegNegInf, 0, true, true};
    if (w.is_zero()) return rep;
    int d = w.level() - 1;
    rep.bound = 2 * d + 1;
    rep.value_degree = q_F(g, w).degree();
    rep.strict = rep.value_degree < rep.bound;
    QuatK<B> s_top = g.eval(w.top(), w.top());
    rep.leading_in_K = s_top.is_scalar();
    return rep;
}

} // namespace isoquat
