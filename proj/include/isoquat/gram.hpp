#pragma once

#include <cassert>
#include <vector>

#include "isoquat/certificate.hpp"
#include "isoquat/matrix.hpp"
#include "isoquat/quaternion.hpp"

namespace isoquat {

template <class B>
using QVec = std::vector<QuatK<B>>; // element of V = Q^n

template <class B>
bool qvec_is_zero(const QVec<B>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Value of the generalized quadratic form: a class in Q/k represented by an
/// arbitrary quaternion. No canonical complement of k is chosen; only class
/// equality and the zero test are meaningful.
template <class B>
struct QModK {
    QuatK<B> rep;

    /// The class vanishes exactly when the representative lies in k.
    bool is_zero_class() const { return rep.is_scalar() && rep.x0().in_k(); }

    bool class_equal(const QModK& o) const {
        QuatK<B> d = rep - o.rep;
        return d.is_scalar() && d.x0().in_k();
    }
};

/// Gram-matrix presentation of a sesquilinear form s on V = Q^n. The class
/// [S] modulo even-hermitian matrices is a generalized quadratic form; the
/// polar Gram H = S - S^dagger presents h_s and depends only on the class.
template <class B>
class GramForm {
public:
    GramForm(Mat<QuatK<B>> s, DescPtr<B> desc) : s_(std::move(s)), desc_(std::move(desc)) {
        assert(s_.rows() == s_.cols() && s_.rows() >= 1);
        h_ = s_ - s_.dagger([](const QuatK<B>& x) { return x.bar(); });
    }

    int n() const { return s_.rows(); }
    const Mat<QuatK<B>>& s() const { return s_; }
    const Mat<QuatK<B>>& h() const { return h_; }
    const DescPtr<B>& desc() const { return desc_; }

    /// s(v, w) = sum bar(v_i) S_ij w_j.
    QuatK<B> eval(const QVec<B>& v, const QVec<B>& w) const {
        assert(int(v.size()) == n() && int(w.size()) == n());
        QuatK<B> acc(0);
        for (int i = 0; i < n(); ++i) {
            if (v[std::size_t(i)].is_zero()) continue;
            QuatK<B> vb = v[std::size_t(i)].bar();
            for (int j = 0; j < n(); ++j) {
                if (s_.at(i, j).is_zero() || w[std::size_t(j)].is_zero()) continue;
                acc = acc + vb * s_.at(i, j) * w[std::size_t(j)];
            }
        }
        return acc;
    }

    /// Polar form h_s(v, w) = sum bar(v_i) H_ij w_j.
    QuatK<B> polar(const QVec<B>& v, const QVec<B>& w) const {
        assert(int(v.size()) == n() && int(w.size()) == n());
        QuatK<B> acc(0);
        for (int i = 0; i < n(); ++i) {
            if (v[std::size_t(i)].is_zero()) continue;
            QuatK<B> vb = v[std::size_t(i)].bar();
            for (int j = 0; j < n(); ++j) {
                if (h_.at(i, j).is_zero() || w[std::size_t(j)].is_zero()) continue;
                acc = acc + vb * h_.at(i, j) * w[std::size_t(j)];
            }
        }
        return acc;
    }

    QModK<B> q_value(const QVec<B>& v) const { return QModK<B>{eval(v, v)}; }

private:
    Mat<QuatK<B>> s_;
    Mat<QuatK<B>> h_;
    DescPtr<B> desc_;
};

template <class B>
Mat<QuatK<B>> polar_gram(const GramForm<B>& g) {
    return g.h();
}

/// Two Gram matrices present the same generalized quadratic form exactly
/// when their difference is hermitian with diagonal in k (the symmetrized
/// elements of Q are exactly k).
template <class B>
bool class_equal(const GramForm<B>& g1, const GramForm<B>& g2) {
    assert(g1.n() == g2.n());
    Mat<QuatK<B>> d = g1.s() - g2.s();
    Mat<QuatK<B>> dd = d.dagger([](const QuatK<B>& x) { return x.bar(); });
    if (d != dd) return false;
    for (int i = 0; i < d.rows(); ++i) {
        const QuatK<B>& x = d.at(i, i);
        if (!x.is_scalar() || !x.x0().in_k()) return false;
    }
    return true;
}

/// Nonsingularity over division-certified Q: the polar Gram is invertible
/// by division-ring elimination. The split route lives in morita.hpp.
template <class B>
bool is_nonsingular_division(const GramForm<B>& g) {
    return division_ring_inverse(g.h()).has_value();
}

} // namespace isoquat
