#pragma once

#include <cassert>
#include <vector>

#include "isoquat/gram.hpp"

namespace isoquat {

// Elements of the ideal I = K(t)eps are identified with their unique K(t)
// coordinate f (so "f" stands for f*eps throughout). The fundamental
// relation j*eps = iota(t)*eps drives the module action.

/// Left action of Q_F on I: (x0 + x1 j) . (f eps) = (x0 f + x1 iota(f) iota(t)) eps.
template <class B>
KtElem<B> act_on_ideal(const QuatKt<B>& x, const KtElem<B>& f) {
    const auto& desc = x.desc() ? x.desc() : f.desc();
    KtElem<B> r = x.x0() * f;
    if (!x.x1().is_zero()) {
        assert(desc);
        KtElem<B> iota_t = iota(KtElem<B>::t(desc));
        r = r + x.x1() * iota(f) * iota_t;
    }
    return r;
}

/// Laurent-level action, used on the integral ideal.
template <class B>
Laurent<B> act_on_ideal(const QuatK<B>& x, const Laurent<B>& f, const DescPtr<B>& desc) {
    Laurent<B> r = f * x.x0();
    if (!x.x1().is_zero()) {
        assert(desc);
        Laurent<B> iota_t = Laurent<B>::t_pow(-1, desc, KElem<B>(desc->b));
        r = r + f.iota() * Laurent<B>(x.x1(), desc) * iota_t;
    }
    return r;
}

/// The alternating form a(f eps, g eps) = u (iota(f) g - f iota(g)), with the
/// fixed skew unit u (l in characteristic != 2, 1 in characteristic 2).
/// Values are iota-fixed.
template <class B>
KtElem<B> alt_form(const KtElem<B>& f, const KtElem<B>& g, const DescPtr<B>& desc) {
    KtElem<B> u(KElem<B>::skew_unit(desc), desc);
    return u * (iota(f) * g - f * iota(g));
}

template <class B>
Laurent<B> alt_form(const Laurent<B>& f, const Laurent<B>& g, const DescPtr<B>& desc) {
    KElem<B> u = KElem<B>::skew_unit(desc);
    return (f.iota() * g - f * g.iota()) * u;
}

/// Vector in V tensor I with coordinates f_i in K(t): sum e_i (x) f_i eps.
template <class B>
using MoritaVector = std::vector<KtElem<B>>;

template <class B>
bool morita_is_zero(const MoritaVector<B>& w) {
    for (const auto& f : w)
        if (!f.is_zero()) return false;
    return true;
}

/// Whether all coordinates lie in K[t, t^-1] (the integral ideal).
template <class B>
bool morita_is_integral(const MoritaVector<B>& w) {
    for (const auto& f : w)
        if (!f.is_laurent()) return false;
    return true;
}

namespace moritadetail {

/// Common iota-fixed multiplier clearing every coordinate into the integral
/// ideal; scaling by it changes q by its square, so values can be pulled
/// back exactly. Keeps the hot evaluation inside the Laurent ring, where no
/// gcd is ever needed.
template <class B>
KtElem<B> common_lambda(const MoritaVector<B>& w, const DescPtr<B>& desc) {
    KtElem<B> lam(KElem<B>(1), desc);
    for (const auto& f : w) {
        if (f.is_zero() || f.is_laurent()) continue;
        auto [gg, l] = clear_denominators(f);
        (void)gg;
        lam = lam * KtElem<B>::from_laurent(l);
    }
    return lam;
}

template <class B>
std::vector<Laurent<B>> scaled_coords(const MoritaVector<B>& w, const KtElem<B>& lam) {
    std::vector<Laurent<B>> out;
    for (const auto& f : w) {
        KtElem<B> scaled = f * lam;
        assert(scaled.is_laurent());
        out.push_back(scaled.to_laurent());
    }
    return out;
}

} // namespace moritadetail

template <class B>
Laurent<B> q_F(const GramForm<B>& g, const std::vector<Laurent<B>>& w);
template <class B>
Laurent<B> b_F(const GramForm<B>& g, const std::vector<Laurent<B>>& w1, const std::vector<Laurent<B>>& w2);

/// Quadratic form q(w) = sum_i a(f_i, S_ii f_i) + sum_{i<j} a(f_i, H_ij f_j),
/// evaluated by clearing denominators into the integral ideal.
template <class B>
KtElem<B> q_F(const GramForm<B>& g, const MoritaVector<B>& w) {
    assert(int(w.size()) == g.n());
    const auto& desc = g.desc();
    KtElem<B> lam = moritadetail::common_lambda(w, desc);
    Laurent<B> q = q_F(g, moritadetail::scaled_coords(w, lam));
    return KtElem<B>::from_laurent(q) / (lam * lam);
}

/// Polar form b(w1, w2) = sum_{ij} a(f_i, H_ij g_j).
template <class B>
KtElem<B> b_F(const GramForm<B>& g, const MoritaVector<B>& w1, const MoritaVector<B>& w2) {
    assert(int(w1.size()) == g.n() && int(w2.size()) == g.n());
    const auto& desc = g.desc();
    KtElem<B> lam = moritadetail::common_lambda(w1, desc) * moritadetail::common_lambda(w2, desc);
    Laurent<B> b = b_F(g, moritadetail::scaled_coords(w1, lam), moritadetail::scaled_coords(w2, lam));
    return KtElem<B>::from_laurent(b) / (lam * lam);
}

/// Laurent-level evaluation for integral vectors (coordinates in K[t,t^-1]).
template <class B>
Laurent<B> q_F(const GramForm<B>& g, const std::vector<Laurent<B>>& w) {
    assert(int(w.size()) == g.n());
    const auto& desc = g.desc();
    Laurent<B> acc(KElem<B>(0), desc);
    for (int i = 0; i < g.n(); ++i) {
        const Laurent<B>& fi = w[std::size_t(i)];
        if (fi.is_zero()) continue;
        acc = acc + alt_form(fi, act_on_ideal(g.s().at(i, i), fi, desc), desc);
        for (int j = i + 1; j < g.n(); ++j) {
            if (w[std::size_t(j)].is_zero() || g.h().at(i, j).is_zero()) continue;
            acc = acc + alt_form(fi, act_on_ideal(g.h().at(i, j), w[std::size_t(j)], desc), desc);
        }
    }
    return acc;
}

template <class B>
Laurent<B> b_F(const GramForm<B>& g, const std::vector<Laurent<B>>& w1, const std::vector<Laurent<B>>& w2) {
    const auto& desc = g.desc();
    Laurent<B> acc(KElem<B>(0), desc);
    for (int i = 0; i < g.n(); ++i) {
        if (w1[std::size_t(i)].is_zero()) continue;
        for (int j = 0; j < g.n(); ++j) {
            if (w2[std::size_t(j)].is_zero() || g.h().at(i, j).is_zero()) continue;
            acc = acc + alt_form(w1[std::size_t(i)], act_on_ideal(g.h().at(i, j), w2[std::size_t(j)], desc), desc);
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Split identification Theta: End_Q(V) -> End_F(V tensor I) in the F-basis
// (e_i (x) eps, e_i (x) l eps), indices (2i, 2i+1).
// ---------------------------------------------------------------------------

/// 2x2 F-block of a single quaternion acting on I.
template <class B>
Mat<KtElem<B>> theta_block(const QuatKt<B>& x, const DescPtr<B>& desc) {
    KtElem<B> lv = KtElem<B>::l(desc);
    KtElem<B> g = act_on_ideal(x, KtElem<B>(KElem<B>(1), desc));
    KtElem<B> h = act_on_ideal(x, lv);
    auto [g0, g1] = decompose_over_F(g, desc);
    auto [h0, h1] = decompose_over_F(h, desc);
    Mat<KtElem<B>> blk(2, 2, KtElem<B>(KElem<B>(0), desc));
    blk.at(0, 0) = g0;
    blk.at(1, 0) = g1;
    blk.at(0, 1) = h0;
    blk.at(1, 1) = h1;
    return blk;
}

/// Matrix of Theta(M) on the 2n-dimensional F-space.
template <class B>
Mat<KtElem<B>> theta(const Mat<QuatKt<B>>& m, const DescPtr<B>& desc) {
    int n = m.rows();
    Mat<KtElem<B>> out(2 * n, 2 * m.cols(), KtElem<B>(KElem<B>(0), desc));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Mat<KtElem<B>> blk = theta_block(m.at(i, j), desc);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out.at(2 * i + a, 2 * j + b) = blk.at(a, b);
        }
    return out;
}

/// Inverse of theta_block: recover x0, x1 from the action on (eps, l eps).
template <class B>
QuatKt<B> theta_block_inv(const Mat<KtElem<B>>& blk, const DescPtr<B>& desc) {
    KtElem<B> lv = KtElem<B>::l(desc);
    KtElem<B> li(KElem<B>::l(desc).iota(), desc);
    KtElem<B> iota_t = iota(KtElem<B>::t(desc));
    KtElem<B> g = blk.at(0, 0) + lv * blk.at(1, 0);
    KtElem<B> h = blk.at(0, 1) + lv * blk.at(1, 1);
    KtElem<B> x1 = (h - lv * g) / (iota_t * (li - lv));
    KtElem<B> x0 = g - x1 * iota_t;
    return QuatKt<B>(x0, x1, desc);
}

template <class B>
Mat<QuatKt<B>> theta_inv(const Mat<KtElem<B>>& m, const DescPtr<B>& desc) {
    assert(m.rows() % 2 == 0 && m.cols() % 2 == 0);
    int n = m.rows() / 2;
    Mat<QuatKt<B>> out(n, m.cols() / 2, QuatKt<B>(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.cols() / 2; ++j) {
            Mat<KtElem<B>> blk(2, 2, KtElem<B>(KElem<B>(0), desc));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) blk.at(a, b) = m.at(2 * i + a, 2 * j + b);
            out.at(i, j) = theta_block_inv(blk, desc);
        }
    return out;
}

/// 2n x 2n polar Gram of b over F together with the q-values on the basis
/// vectors; in characteristic 2 the q-values are the part the Gram alone
/// cannot reconstruct.
template <class B>
struct MoritaGram {
    Mat<KtElem<B>> polar;          // B_pq = b(beta_p, beta_q)
    std::vector<KtElem<B>> qvals;  // q(beta_p)
};

template <class B>
MoritaVector<B> morita_basis_vector(const GramForm<B>& g, int p) {
    MoritaVector<B> w(std::size_t(g.n()), KtElem<B>(KElem<B>(0), g.desc()));
    w[std::size_t(p / 2)] = (p % 2) ? KtElem<B>::l(g.desc()) : KtElem<B>(KElem<B>(1), g.desc());
    return w;
}

template <class B>
MoritaGram<B> morita_gram(const GramForm<B>& g) {
    int m = 2 * g.n();
    MoritaGram<B> out{Mat<KtElem<B>>(m, m, KtElem<B>(KElem<B>(0), g.desc())), {}};
    std::vector<MoritaVector<B>> basis;
    for (int p = 0; p < m; ++p) basis.push_back(morita_basis_vector(g, p));
    for (int p = 0; p < m; ++p) {
        out.qvals.push_back(q_F(g, basis[std::size_t(p)]));
        for (int q = 0; q < m; ++q) out.polar.at(p, q) = b_F(g, basis[std::size_t(p)], basis[std::size_t(q)]);
    }
    return out;
}

/// Nonsingularity of [S]: over division-certified Q by quaternion
/// elimination, otherwise through the 2n-dimensional split image.
template <class B>
bool is_nonsingular(const GramForm<B>& g, bool division_certified) {
    if (division_certified) return is_nonsingular_division(g);
    Mat<QuatKt<B>> hkt(g.n(), g.n(), QuatKt<B>(0));
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) hkt.at(i, j) = to_kt_level(g.h().at(i, j));
    Mat<KtElem<B>> th = theta(hkt, g.desc());
    return field_rank(th) == 2 * g.n();
}

/// Gram matrix evaluated over Q_F (coordinates of vectors in K(t) + K(t)j).
template <class B>
QuatKt<B> eval_split(const GramForm<B>& g, const std::vector<QuatKt<B>>& v, const std::vector<QuatKt<B>>& w) {
    QuatKt<B> acc(0);
    for (int i = 0; i < g.n(); ++i) {
        if (v[std::size_t(i)].is_zero()) continue;
        QuatKt<B> vb = v[std::size_t(i)].bar();
        for (int j = 0; j < g.n(); ++j) {
            if (w[std::size_t(j)].is_zero()) continue;
            acc = acc + vb * to_kt_level(g.s().at(i, j)) * w[std::size_t(j)];
        }
    }
    return acc;
}

/// From an isotropic w = v (x) eps extracts a vector v x over Q_F with
/// s(vx, vx) in F: x is the endomorphism of I sending both basis vectors
/// eps and l eps to eps, so that v (x) eps = vx (x) eps while the value
/// s(vx, vx) becomes a scalar fixed by iota.
template <class B>
std::vector<QuatKt<B>> transfer_isotropic(const GramForm<B>& g, const MoritaVector<B>& w) {
    const auto& desc = g.desc();
    if (morita_is_zero(w)) throw ZeroVector("transfer_isotropic requires a nonzero vector");
    if (!q_F(g, w).is_zero()) throw NotIsotropic("q_F(w) != 0");

    std::vector<QuatKt<B>> v;
    for (const auto& f : w) v.push_back(QuatKt<B>(f, KtElem<B>(KElem<B>(0), desc), desc));

    auto in_F_scalar = [](const QuatKt<B>& x) { return x.is_scalar() && in_F(x.x0()); };

    QuatKt<B> sv = eval_split(g, v, v);
    if (in_F_scalar(sv)) return v;

    // x with x.eps = x.(l eps) = eps, solved on the basis (eps, l eps).
    KtElem<B> one(KElem<B>(1), desc);
    Mat<KtElem<B>> target(2, 2, KtElem<B>(KElem<B>(0), desc));
    target.at(0, 0) = one;
    target.at(0, 1) = one;
    QuatKt<B> x = theta_block_inv(target, desc);

    std::vector<QuatKt<B>> vx;
    for (const auto& vi : v) vx.push_back(vi * x);
    bool nonzero = false;
    for (const auto& c : vx) nonzero = nonzero || !c.is_zero();
    QuatKt<B> svx = eval_split(g, vx, vx);
    if (!nonzero || !in_F_scalar(svx))
        throw InternalInvariant("isotropy transfer produced no F-valued vector");
    return vx;
}

} // namespace isoquat
