#pragma once

#include <array>
#include <cassert>
#include <functional>
#include <vector>

#include "isoquat/morita.hpp"

namespace isoquat {

/// Rank-one tensor v (x) bar(w) in the matrix picture: U_ab = v_a bar(w_b).
template <class B>
Mat<QuatK<B>> outer_bar(const QVec<B>& v, const QVec<B>& w, const DescPtr<B>& desc) {
    int n = int(v.size());
    Mat<QuatK<B>> u(n, n, QuatK<B>::scalar(KElem<B>(0), desc));
    for (int a = 0; a < n; ++a) {
        if (v[std::size_t(a)].is_zero()) continue;
        for (int b = 0; b < n; ++b) u.at(a, b) = v[std::size_t(a)] * w[std::size_t(b)].bar();
    }
    return u;
}

/// Reduced trace of End_Q(V): Trd_Q of the matrix trace, a value in k.
template <class B>
B end_trd(const Mat<QuatK<B>>& m) {
    KElem<B> t = m.trace().trd();
    assert(t.in_k());
    return t.re();
}

/// The quadratic pair attached to [S]: the involution adjoint to the polar
/// form H together with the semitrace evaluated through the Gram matrix.
template <class B>
class QuadraticPair {
public:
    explicit QuadraticPair(GramForm<B> gram) : g_(std::move(gram)) {
        auto inv = division_ring_inverse(g_.h());
        if (!inv) throw Singular("polar Gram is singular; no adjoint involution");
        hinv_ = *inv;
    }

    const GramForm<B>& gram() const { return g_; }
    const Mat<QuatK<B>>& h() const { return g_.h(); }
    const Mat<QuatK<B>>& h_inv() const { return hinv_; }
    const DescPtr<B>& desc() const { return g_.desc(); }
    int n() const { return g_.n(); }

    /// Phi(v (x) bar w): the endomorphism u -> v h(w, u).
    Mat<QuatK<B>> phi(const QVec<B>& v, const QVec<B>& w) const {
        return outer_bar(v, w, desc()) * g_.h();
    }
    Mat<QuatK<B>> phi_from_tensor(const Mat<QuatK<B>>& u) const { return u * g_.h(); }
    /// Inverse of Phi in the tensor-matrix picture.
    Mat<QuatK<B>> phi_inv(const Mat<QuatK<B>>& m) const { return m * hinv_; }

    /// Adjoint involution sigma(M) = H^-1 M^dagger H.
    Mat<QuatK<B>> adjoint(const Mat<QuatK<B>>& m) const {
        return hinv_ * m.dagger([](const QuatK<B>& x) { return x.bar(); }) * g_.h();
    }

    bool is_symmetric(const Mat<QuatK<B>>& m) const { return adjoint(m) == m; }

    /// Semitrace f(M) = Trd(trace(S M H^-1)) on Sym(sigma).
    B semitrace(const Mat<QuatK<B>>& m) const {
        if (!is_symmetric(m)) throw Inconsistent("semitrace requires sigma(M) = M");
        return end_trd(g_.s() * m * hinv_);
    }
    /// The defining functional T_s on tensors, with no symmetry requirement.
    B t_s(const Mat<QuatK<B>>& u) const { return end_trd(g_.s() * u); }

private:
    GramForm<B> g_;
    Mat<QuatK<B>> hinv_;
};

/// k-basis of {x in Q : bar(x) = -x}, i.e. Trd(x) = 0; uniformly
/// (l - iota(l), j, lj) across characteristics.
template <class B>
std::vector<QuatK<B>> skew_quat_basis(const DescPtr<B>& desc) {
    KElem<B> l = KElem<B>::l(desc);
    KElem<B> l0 = l - l.iota();
    return {
        QuatK<B>(l0, KElem<B>(0), desc),
        QuatK<B>(KElem<B>(0), KElem<B>(1), desc),
        QuatK<B>(KElem<B>(0), l, desc),
    };
}

/// Full quaternion k-basis (1, l, j, lj).
template <class B>
std::vector<QuatK<B>> quat_basis(const DescPtr<B>& desc) {
    KElem<B> l = KElem<B>::l(desc);
    return {
        QuatK<B>(KElem<B>(1), KElem<B>(0), desc),
        QuatK<B>(l, KElem<B>(0), desc),
        QuatK<B>(KElem<B>(0), KElem<B>(1), desc),
        QuatK<B>(KElem<B>(0), l, desc),
    };
}

/// k-basis of the tensors with U^dagger = -U: E_ab x - E_ba bar(x) for a < b
/// with x over a quaternion basis, and E_aa x with bar(x) = -x.
template <class B>
std::vector<Mat<QuatK<B>>> skew_sw_basis(int n, const DescPtr<B>& desc) {
    std::vector<Mat<QuatK<B>>> out;
    QuatK<B> zero = QuatK<B>::scalar(KElem<B>(0), desc);
    for (int a = 0; a < n; ++a)
        for (const auto& x : skew_quat_basis<B>(desc)) {
            Mat<QuatK<B>> u(n, n, zero);
            u.at(a, a) = x;
            out.push_back(std::move(u));
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (const auto& x : quat_basis<B>(desc)) {
                Mat<QuatK<B>> u(n, n, zero);
                u.at(a, b) = x;
                u.at(b, a) = -x.bar();
                out.push_back(std::move(u));
            }
    return out;
}

/// Matrix of the k-linear map M -> adjoint(M) in the coordinate basis
/// E_ab * mu, mu over (1, l, j, lj); index = ((a*n + b)*4 + mu).
template <class B>
Mat<B> adjoint_k_matrix(const QuadraticPair<B>& pair) {
    int n = pair.n();
    int dim = 4 * n * n;
    Mat<B> out(dim, dim, B(0));
    auto basis = quat_basis<B>(pair.desc());
    QuatK<B> zero = QuatK<B>::scalar(KElem<B>(0), pair.desc());
    int col = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const auto& mu : basis) {
                Mat<QuatK<B>> e(n, n, zero);
                e.at(a, b) = mu;
                Mat<QuatK<B>> img = pair.adjoint(e);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        auto c = quat_coords(img.at(i, j));
                        for (int m = 0; m < 4; ++m) out.at(((i * n + j) * 4) + m, col) = c[std::size_t(m)];
                    }
                ++col;
            }
    return out;
}

/// dim_k Sym(sigma), computed from the regular k-linear representation.
template <class B>
int sym_dimension(const QuadraticPair<B>& pair) {
    int dim = 4 * pair.n() * pair.n();
    Mat<B> sigma = adjoint_k_matrix(pair);
    Mat<B> diff = sigma - Mat<B>::identity(dim);
    return dim - field_rank(diff);
}

/// Checks Trd = 0 on a kernel basis of sigma + id (the skew elements).
template <class B>
bool trd_vanishes_on_skew(const QuadraticPair<B>& pair) {
    int n = pair.n();
    Mat<B> sigma = adjoint_k_matrix(pair);
    Mat<B> sum = sigma + Mat<B>::identity(4 * n * n);
    for (const auto& vec : field_kernel_basis(sum)) {
        Mat<QuatK<B>> m(n, n, QuatK<B>::scalar(KElem<B>(0), pair.desc()));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::array<B, 4> c{vec[std::size_t((a * n + b) * 4 + 0)], vec[std::size_t((a * n + b) * 4 + 1)],
                                   vec[std::size_t((a * n + b) * 4 + 2)], vec[std::size_t((a * n + b) * 4 + 3)]};
                m.at(a, b) = quat_from_coords(c, pair.desc());
            }
        if (!end_trd(m).is_zero()) return false;
    }
    return true;
}

/// Recovers a Gram matrix from a pair presented by its polar Gram H and the
/// semitrace values on the standard skew tensor basis: solves the k-linear
/// system Trd(trace(S U)) = f(Phi(U)) subject to S - S^dagger = H.
template <class B>
GramForm<B> pair_to_form(const Mat<QuatK<B>>& h, const std::vector<B>& fvals, const DescPtr<B>& desc) {
    int n = h.rows();
    auto skew_basis = skew_sw_basis<B>(n, desc);
    if (fvals.size() != skew_basis.size())
        throw Inconsistent("expected one semitrace value per skew basis tensor");
    auto qbasis = quat_basis<B>(desc);
    QuatK<B> zero = QuatK<B>::scalar(KElem<B>(0), desc);
    int unknowns = 4 * n * n;
    int rows = int(skew_basis.size()) + unknowns;
    Mat<B> a(rows, unknowns, B(0));
    std::vector<B> rhs(std::size_t(rows), B(0));

    auto coord_matrix = [&](int idx) {
        Mat<QuatK<B>> e(n, n, zero);
        e.at((idx / 4) / n, (idx / 4) % n) = qbasis[std::size_t(idx % 4)];
        return e;
    };

    for (int r = 0; r < int(skew_basis.size()); ++r) {
        for (int c = 0; c < unknowns; ++c)
            a.at(r, c) = end_trd(coord_matrix(c) * skew_basis[std::size_t(r)]);
        rhs[std::size_t(r)] = fvals[std::size_t(r)];
    }
    // S - S^dagger = H, one k-equation per coordinate.
    for (int c = 0; c < unknowns; ++c) {
        Mat<QuatK<B>> e = coord_matrix(c);
        Mat<QuatK<B>> d = e - e.dagger([](const QuatK<B>& x) { return x.bar(); });
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto cc = quat_coords(d.at(i, j));
                for (int m = 0; m < 4; ++m) a.at(int(skew_basis.size()) + (i * n + j) * 4 + m, c) = cc[std::size_t(m)];
            }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto cc = quat_coords(h.at(i, j));
            for (int m = 0; m < 4; ++m) rhs[std::size_t(int(skew_basis.size()) + (i * n + j) * 4 + m)] = cc[std::size_t(m)];
        }

    auto sol = field_solve(a, rhs);
    if (!sol) throw Inconsistent("semitrace values are not those of a quadratic pair");
    Mat<QuatK<B>> s(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<B, 4> c{(*sol)[std::size_t((i * n + j) * 4 + 0)], (*sol)[std::size_t((i * n + j) * 4 + 1)],
                               (*sol)[std::size_t((i * n + j) * 4 + 2)], (*sol)[std::size_t((i * n + j) * 4 + 3)]};
            s.at(i, j) = quat_from_coords(c, desc);
        }
    return GramForm<B>(std::move(s), desc);
}

/// Isotropy of the pair at the ideal Hom(V, uQ), checked on generators:
/// (i) sigma(Phi(u (x) bar v)) Phi(u (x) bar w) = 0 on basis vectors,
/// (ii) the semitrace kills Phi(u x (x) bar u) for skew x.
/// Only meaningful over division Q, where the annihilator of u is zero.
template <class B>
bool pair_isotropy_check(const QuadraticPair<B>& pair, const QVec<B>& u) {
    if (qvec_is_zero(u)) throw ZeroVector("isotropy check needs a nonzero vector");
    int n = pair.n();
    const auto& desc = pair.desc();
    QVec<B> e(std::size_t(n), QuatK<B>::scalar(KElem<B>(0), desc));
    for (int a = 0; a < n; ++a) {
        QVec<B> ea = e;
        ea[std::size_t(a)] = QuatK<B>(1);
        Mat<QuatK<B>> left = pair.adjoint(pair.phi(u, ea));
        for (int b = 0; b < n; ++b) {
            QVec<B> eb = e;
            eb[std::size_t(b)] = QuatK<B>(1);
            if (!(left * pair.phi(u, eb)).is_zero()) return false;
        }
    }
    for (const auto& x : skew_quat_basis<B>(desc)) {
        QVec<B> ux;
        for (const auto& ui : u) ux.push_back(ui * x);
        // f(Phi(ux (x) bar u)) = Trd(trace(S ux (x) bar u)) = Trd(s(u, ux))
        if (!pair.t_s(outer_bar(ux, u, desc)).is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Split-side pair on End_F(V (x) I), built from the Morita image of q.
// ---------------------------------------------------------------------------

template <class B>
class SplitPair {
public:
    SplitPair(MoritaGram<B> mg, DescPtr<B> desc) : mg_(std::move(mg)), desc_(std::move(desc)) {
        auto inv = field_inverse(mg_.polar);
        if (!inv) throw Singular("split polar Gram is singular");
        binv_ = *inv;
    }

    int dim() const { return mg_.polar.rows(); }
    const Mat<KtElem<B>>& b() const { return mg_.polar; }

    /// Adjoint involution of the polar form.
    Mat<KtElem<B>> adjoint(const Mat<KtElem<B>>& m) const { return binv_ * m.transposed() * mg_.polar; }

    /// Phi_b(x (x) y) = x . b(y, -): matrix x (y^T B).
    Mat<KtElem<B>> phi(const std::vector<KtElem<B>>& x, const std::vector<KtElem<B>>& y) const {
        int d = dim();
        Mat<KtElem<B>> out(d, d, KtElem<B>(KElem<B>(0), desc_));
        for (int r = 0; r < d; ++r) {
            if (x[std::size_t(r)].is_zero()) continue;
            for (int c = 0; c < d; ++c) {
                KtElem<B> acc(KElem<B>(0), desc_);
                for (int k = 0; k < d; ++k) acc = acc + y[std::size_t(k)] * mg_.polar.at(k, c);
                out.at(r, c) = x[std::size_t(r)] * acc;
            }
        }
        return out;
    }

    /// Semitrace of the split pair: on Phi_b(w (x) w) it returns q(w),
    /// extended linearly via the tensor decomposition U = M B^-1.
    KtElem<B> semitrace(const Mat<KtElem<B>>& m) const {
        Mat<KtElem<B>> u = m * binv_;
        KtElem<B> acc(KElem<B>(0), desc_);
        for (int a = 0; a < dim(); ++a) {
            acc = acc + u.at(a, a) * mg_.qvals[std::size_t(a)];
            for (int b2 = a + 1; b2 < dim(); ++b2) acc = acc + u.at(a, b2) * mg_.polar.at(a, b2);
        }
        return acc;
    }

private:
    MoritaGram<B> mg_;
    Mat<KtElem<B>> binv_;
    DescPtr<B> desc_;
};

/// Theta'(beta_p (x) beta_q) in the tensor-matrix picture over Q_F: the
/// quaternion xi_a (x) a(xi_b, -) placed at the matrix position of the two
/// coordinate indices.
template <class B>
Mat<QuatKt<B>> theta_prime_tensor(const GramForm<B>& g, int p, int q) {
    const auto& desc = g.desc();
    KtElem<B> one(KElem<B>(1), desc);
    KtElem<B> lv = KtElem<B>::l(desc);
    KtElem<B> fa = (p % 2) ? lv : one;
    KtElem<B> fb = (q % 2) ? lv : one;
    // Endomorphism zeta -> xi_a * a(xi_b, zeta) of I, in the basis (eps, l eps).
    Mat<KtElem<B>> blk(2, 2, KtElem<B>(KElem<B>(0), desc));
    for (int col = 0; col < 2; ++col) {
        KtElem<B> zeta = col ? lv : one;
        KtElem<B> val = alt_form(fb, zeta, desc);
        auto [c0, c1] = decompose_over_F(fa * val, desc);
        blk.at(0, col) = c0;
        blk.at(1, col) = c1;
    }
    QuatKt<B> xq = theta_block_inv(blk, desc);
    Mat<QuatKt<B>> out(g.n(), g.n(), QuatKt<B>(0));
    out.at(p / 2, q / 2) = xq;
    return out;
}

} // namespace isoquat
