#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "isoquat/gram.hpp"
#include "isoquat/morita.hpp"

namespace isoquat {

/// Deterministic random values for property suites and instance generation.
/// All draws go through next(), a plain modulo reduction of mt19937_64, so
/// identical seeds give identical streams on every platform.
template <class B>
class Sampler {
public:
    Sampler(std::uint64_t seed, DescPtr<B> desc) : rng_(seed), desc_(std::move(desc)) {}

    const DescPtr<B>& desc() const { return desc_; }

    std::uint64_t next(std::uint64_t bound) { return bound ? rng_() % bound : 0; }

    B base(int h) {
        if constexpr (B::characteristic() == 0) {
            long num = long(next(std::uint64_t(2 * h + 1))) - h;
            long den = long(next(std::uint64_t(h))) + 1;
            return B(num, den);
        } else {
            return B(PolyFraction<Fp<B::characteristic()>>(poly(h), monic_poly(h)));
        }
    }

    KElem<B> k(int h) { return KElem<B>(base(h), base(h), desc_); }

    QuatK<B> quat(int h) { return QuatK<B>(k(h), k(h), desc_); }

    QVec<B> qvec(int n, int h) {
        QVec<B> v;
        for (int i = 0; i < n; ++i) v.push_back(quat(h));
        return v;
    }

    QVec<B> qvec_nonzero(int n, int h) {
        for (;;) {
            QVec<B> v = qvec(n, h);
            if (!qvec_is_zero(v)) return v;
        }
    }

    Laurent<B> laurent(int h, int span) {
        Laurent<B> f(KElem<B>(0), desc_);
        for (int z = -span; z <= span; ++z) f = f + Laurent<B>::t_pow(z, desc_, k(h));
        return f;
    }

    /// Random iota-fixed Laurent multiplier (an element of the fixed ring),
    /// nonzero, of degree <= span.
    Laurent<B> lambda_fixed(int h, int span) {
        for (;;) {
            Laurent<B> g = laurent(h, std::max(0, span));
            Laurent<B> f = g * g.iota(); // iota-fixed by construction
            if (!f.is_zero()) return f;
        }
    }

    KtElem<B> kt(int h, int deg) {
        Laurent<B> num = laurent(h, deg);
        KtElem<B> n = KtElem<B>::from_laurent(num);
        for (;;) {
            Laurent<B> den = laurent(h, deg);
            if (!den.is_zero()) return n / KtElem<B>::from_laurent(den);
        }
    }

    Mat<QuatK<B>> qmat(int n, int h) {
        Mat<QuatK<B>> m(n, n, QuatK<B>::scalar(KElem<B>(0), desc_));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = quat(h);
        return m;
    }

    GramForm<B> gram(int n, int h) { return GramForm<B>(qmat(n, h), desc_); }

    /// Even-hermitian perturbation T + T^dagger; adding it never changes
    /// the generalized quadratic form.
    Mat<QuatK<B>> even_hermitian(int n, int h) {
        Mat<QuatK<B>> t = qmat(n, h);
        return t + t.dagger([](const QuatK<B>& x) { return x.bar(); });
    }

private:
    Polynomial<Fp<B::characteristic() ? B::characteristic() : 2>> poly(int h) {
        using C = Fp<B::characteristic() ? B::characteristic() : 2>;
        std::vector<C> c;
        for (int i = 0; i <= h; ++i) c.emplace_back(long(next(B::characteristic())));
        return Polynomial<C>(std::move(c));
    }
    Polynomial<Fp<B::characteristic() ? B::characteristic() : 2>> monic_poly(int h) {
        using C = Fp<B::characteristic() ? B::characteristic() : 2>;
        int deg = int(next(std::uint64_t(h + 1)));
        std::vector<C> c;
        for (int i = 0; i < deg; ++i) c.emplace_back(long(next(B::characteristic())));
        c.emplace_back(1);
        return Polynomial<C>(std::move(c));
    }

    std::mt19937_64 rng_;
    DescPtr<B> desc_;
};

/// Invertibility and inverse of a constant quaternion matrix through the
/// split 2n-dimensional image; valid without a division certificate.
template <class B>
std::optional<Mat<QuatK<B>>> quat_mat_inverse_split(const Mat<QuatK<B>>& m, const DescPtr<B>& desc) {
    int n = m.rows();
    Mat<QuatKt<B>> mk(n, n, QuatKt<B>(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mk.at(i, j) = to_kt_level(m.at(i, j));
    auto inv = field_inverse(theta(mk, desc));
    if (!inv) return std::nullopt;
    Mat<QuatKt<B>> qinv = theta_inv(*inv, desc);
    Mat<QuatK<B>> out(n, n, QuatK<B>::scalar(KElem<B>(0), desc));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const QuatKt<B>& x = qinv.at(i, j);
            if (!(x.x0().is_constant() && x.x1().is_constant()))
                throw InternalInvariant("inverse of a constant matrix is not constant");
            out.at(i, j) = QuatK<B>(x.x0().constant(), x.x1().constant(), desc);
        }
    return out;
}

template <class B>
struct GeneratedInstance {
    DescPtr<B> desc;
    Mat<QuatK<B>> s;
    std::optional<QVec<B>> witness; // isotropic for [s] when planted
};

/// Deterministic random instance. When a witness is requested the Gram
/// matrix embeds a hyperbolic block under a random change of basis, so an
/// isotropic vector exists by construction and is returned.
template <class B>
GeneratedInstance<B> gen_random_instance(std::uint64_t seed, int n, int height, bool plant_witness) {
    DescPtr<B> desc;
    std::mt19937_64 pick(seed);
    if constexpr (B::characteristic() == 0) {
        static const long presets[][2] = {{-1, -1}, {-2, -1}, {-1, -2}, {-3, -1}, {-2, -5}};
        auto& p = presets[pick() % 5];
        desc = make_desc<B>(ExtKind::Sqrt, B(p[0]), B(p[1]));
    } else {
        desc = make_desc<B>(ExtKind::ArtinSchreier, B::s(), B::s());
    }
    Sampler<B> smp(seed, desc);
    Mat<QuatK<B>> s = smp.qmat(n, height);
    if (!plant_witness) return {desc, std::move(s), std::nullopt};

    s.at(0, 0) = QuatK<B>::scalar(KElem<B>(0), desc);
    if (n >= 2) {
        s.at(0, 1) = QuatK<B>(1);
        s.at(1, 0) = QuatK<B>::scalar(KElem<B>(0), desc);
        s.at(1, 1) = QuatK<B>::scalar(KElem<B>(0), desc);
    }
    // Conjugate by a random invertible P; the witness becomes P^-1 e_1.
    for (;;) {
        Mat<QuatK<B>> p = smp.qmat(n, 1);
        auto pinv = quat_mat_inverse_split(p, desc);
        if (!pinv) continue;
        Mat<QuatK<B>> conj = p.dagger([](const QuatK<B>& x) { return x.bar(); }) * s * p;
        QVec<B> w;
        for (int i = 0; i < n; ++i) w.push_back(pinv->at(i, 0));
        if (qvec_is_zero(w)) continue;
        return {desc, std::move(conj), std::move(w)};
    }
}

} // namespace isoquat
