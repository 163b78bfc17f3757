#pragma once

#include <cassert>
#include <string>
#include <utility>

#include "isoquat/laurent.hpp"

namespace isoquat {

/// K-coefficient polynomial rendered with parenthesized coefficients so the
/// output re-parses under the literal grammar.
template <class B>
std::string kpoly_str(const Polynomial<KElem<B>>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        KElem<B> c = p.coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += "(" + c.str() + ")";
        } else {
            std::string tp = i == 1 ? "t" : "t^" + std::to_string(i);
            out += c.is_one() ? tp : "(" + c.str() + ")*" + tp;
        }
    }
    return out;
}

/// Rescales a K-coefficient polynomial by a unit of K so the base-field
/// components become integral and primitive; gcd classes are unchanged.
template <class B>
Polynomial<KElem<B>> kpoly_primitive(const Polynomial<KElem<B>>& p) {
    if (p.is_zero()) return p;
    std::vector<B> comps;
    for (int i = 0; i <= p.degree(); ++i) {
        KElem<B> c = p.coeff(i);
        if (!c.re().is_zero()) comps.push_back(c.re());
        if (!c.lm().is_zero()) comps.push_back(c.lm());
    }
    B lambda = content_scale(comps);
    if (lambda.is_one()) return p;
    return p * KElem<B>(lambda);
}

/// Gcd over K[t] via the subresultant pseudo-remainder sequence (Collins).
/// Plain monic Euclid drags fraction coefficients through every step and
/// blows up badly over both Q(l) and F_2(s)(l); pseudo-division with the
/// subresultant scaling keeps coefficient growth polynomial.
template <class B>
Polynomial<KElem<B>> kpoly_gcd(Polynomial<KElem<B>> a, Polynomial<KElem<B>> b) {
    using Poly = Polynomial<KElem<B>>;
    using K = KElem<B>;
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(K(1));
    a = kpoly_primitive(a);
    b = kpoly_primitive(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    K g(1), h(1);
    for (;;) {
        int delta = a.degree() - b.degree();
        K lb = b.leading();
        // pseudo-remainder prem(a, b) = remainder of lb^(delta+1) a by b
        Poly r = a;
        int scale_left = delta + 1;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Poly top = b.shifted(r.degree() - b.degree()) * r.leading();
            r = r * lb - top;
            --scale_left;
        }
        if (scale_left > 0 && !r.is_zero()) r = r * pow(lb, scale_left);
        if (r.is_zero()) return kpoly_primitive(b).monic();
        if (b.degree() == 0) return Poly(K(1));
        K beta = g * pow(h, delta);
        r = r * beta.inverse();
        a = std::move(b);
        b = std::move(r);
        if (b.is_constant()) return Poly(K(1));
        g = a.leading();
        h = delta == 0 ? h : pow(g, delta) * pow(h, delta - 1).inverse();
    }
}

/// Element of the rational function field K(t), stored as a reduced fraction
/// of ordinary polynomials with monic denominator. The involution iota acts
/// by iota(t) = b * t^-1; its fixed field F is tested with in_F().
template <class B>
class KtElem {
public:
    using Base = B;
    using K = KElem<B>;
    using Poly = Polynomial<K>;

    KtElem() : num_(), den_(K(1)) {}
    KtElem(long n) : num_(K(n)), den_(K(1)) {}
    KtElem(K c, DescPtr<B> desc = nullptr)
        : num_(c), den_(K(1)), desc_(detail::merge_desc(c.desc(), desc)) {}
    KtElem(Poly num, Poly den, DescPtr<B> desc) : num_(std::move(num)), den_(std::move(den)), desc_(std::move(desc)) {
        normalize();
    }

    static KtElem t(DescPtr<B> desc) { return KtElem(Poly::x(K(1)), Poly(K(1)), std::move(desc)); }
    static KtElem l(DescPtr<B> desc) {
        K v = K::l(desc);
        return KtElem(v, std::move(desc));
    }

    static KtElem from_laurent(const Laurent<B>& f) {
        int shift = std::max(0, -f.min_exp());
        Poly num, den = Poly(K(1)).shifted(shift);
        std::vector<K> nc(std::size_t(f.is_zero() ? 0 : f.max_exp() + shift + 1), K(0));
        for (const auto& [z, y] : f.coeffs()) nc[std::size_t(z + shift)] = y;
        num = Poly(std::move(nc));
        return KtElem(std::move(num), std::move(den), f.desc());
    }

    /// Exact when the (reduced) denominator is a power of t.
    bool is_laurent() const {
        for (int i = 0; i < den_.degree(); ++i)
            if (!den_.coeff(i).is_zero()) return false;
        return true;
    }
    Laurent<B> to_laurent() const {
        assert(is_laurent());
        Laurent<B> r(K(0), desc_);
        for (int i = 0; i <= num_.degree(); ++i) {
            K c = num_.coeff(i);
            if (!c.is_zero()) r = r + Laurent<B>::t_pow(i - den_.degree(), desc_, c);
        }
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const DescPtr<B>& desc() const { return desc_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly(K(1)) && den_ == Poly(K(1)); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    K constant() const {
        assert(is_constant());
        return num_.coeff(0);
    }

    KtElem operator+(const KtElem& o) const {
        auto desc = detail::merge_desc(desc_, o.desc_);
        if (den_ == o.den_) return KtElem(num_ + o.num_, den_, desc);
        if (is_monomial(den_) && is_monomial(o.den_)) {
            int da = den_.degree(), db = o.den_.degree(), d = std::max(da, db);
            return KtElem(num_.shifted(d - da) + o.num_.shifted(d - db), Poly(K(1)).shifted(d), desc);
        }
        Poly g = kpoly_gcd(den_, o.den_);
        Poly r1 = o.den_.divmod(g).first, r2 = den_.divmod(g).first;
        return KtElem(num_ * r1 + o.num_ * r2, den_ * r1, desc);
    }
    KtElem operator-(const KtElem& o) const { return *this + (-o); }
    KtElem operator*(const KtElem& o) const {
        auto desc = detail::merge_desc(desc_, o.desc_);
        bool triv1 = den_.is_constant() || o.num_.is_constant() || is_monomial(den_) || is_monomial(o.num_);
        bool triv2 = o.den_.is_constant() || num_.is_constant() || is_monomial(o.den_) || is_monomial(num_);
        if (triv1 && triv2) return KtElem(num_ * o.num_, den_ * o.den_, desc);
        // cross-reduce before multiplying to keep degrees down
        Poly g1 = kpoly_gcd(num_, o.den_), g2 = kpoly_gcd(o.num_, den_);
        Poly n1 = g1.degree() > 0 ? num_.divmod(g1).first : num_;
        Poly d2 = g1.degree() > 0 ? o.den_.divmod(g1).first : o.den_;
        Poly n2 = g2.degree() > 0 ? o.num_.divmod(g2).first : o.num_;
        Poly d1 = g2.degree() > 0 ? den_.divmod(g2).first : den_;
        return KtElem(n1 * n2, d1 * d2, desc);
    }
    KtElem operator/(const KtElem& o) const {
        assert(!o.is_zero());
        return *this * o.inverse();
    }
    KtElem operator-() const {
        KtElem r = *this;
        r.num_ = -r.num_;
        return r;
    }
    KtElem inverse() const {
        assert(!is_zero());
        return KtElem(den_, num_, desc_);
    }

    bool operator==(const KtElem& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const KtElem& o) const { return !(*this == o); }

    std::string str() const {
        if (den_ == Poly(K(1))) return kpoly_str(num_);
        return "(" + kpoly_str(num_) + ")/(" + kpoly_str(den_) + ")";
    }

private:
    /// sum iota(a_i) b^i t^(deg - i); together with the t^deg shift this
    /// realizes iota on ordinary polynomials.
    Poly reversed(const Poly& p) const {
        if (p.is_zero()) return p;
        std::vector<K> rc(std::size_t(p.degree()) + 1, K(0));
        for (int i = 0; i <= p.degree(); ++i) {
            K c = p.coeff(i);
            if (c.is_zero()) continue;
            K v = c.iota();
            if (i != 0) v = v * K(pow(desc_->b, i));
            rc[std::size_t(p.degree() - i)] = std::move(v);
        }
        return Poly(std::move(rc));
    }

    void normalize() {
        assert(!den_.is_zero());
        if (num_.is_zero()) {
            den_ = Poly(K(1));
            return;
        }
        if (is_monomial(den_)) {
            // t-power denominators dominate (Laurent-backed values); reduce
            // by the trailing valuation instead of running Euclid.
            int k = std::min(trailing_valuation(num_), den_.degree());
            num_ = shifted_down(num_, k);
            den_ = Poly(K(1)).shifted(den_.degree() - k);
        } else if (!den_.is_constant() && !num_.is_constant()) {
            Poly g = kpoly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.divmod(g).first;
                den_ = den_.divmod(g).first;
            }
        }
        if (!den_.is_monic()) {
            K inv = den_.leading().inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
    DescPtr<B> desc_;

    template <class B2>
    friend KtElem<B2> iota(const KtElem<B2>&);
};

/// iota(p/q) = (rev(p) t^deg(q)) / (rev(q) t^deg(p)).
template <class B>
KtElem<B> iota(const KtElem<B>& f) {
    using Poly = Polynomial<KElem<B>>;
    if (f.is_constant()) return KtElem<B>(f.constant().iota(), f.desc());
    assert(f.desc());
    Poly rn = f.reversed(f.num());
    Poly rd = f.reversed(f.den());
    return KtElem<B>(rn.shifted(f.den().degree()), rd.shifted(f.num().degree()), f.desc());
}

template <class B>
bool in_F(const KtElem<B>& f) {
    return iota(f) == f;
}

/// Coordinates of f in the F-basis (1, l) of K(t): f = f0 + l*f1 with both
/// components iota-fixed.
template <class B>
std::pair<KtElem<B>, KtElem<B>> decompose_over_F(const KtElem<B>& f, const DescPtr<B>& desc) {
    KElem<B> l = KElem<B>::l(desc);
    KtElem<B> lv(l, desc);
    KtElem<B> li(l.iota(), desc);
    KtElem<B> span = li - lv; // iota(l) - l, nonzero by separability
    KtElem<B> fi = iota(f);
    KtElem<B> f0 = (li * f - lv * fi) / span;
    KtElem<B> f1 = (fi - f) / span;
    return {f0, f1};
}

/// Multiplier lambda = den * iota(den), which is iota-fixed, Laurent, and
/// clears f to the Laurent polynomial g = num * iota(den).
template <class B>
std::pair<Laurent<B>, Laurent<B>> clear_denominators(const KtElem<B>& f) {
    if (f.is_zero()) return {Laurent<B>(), Laurent<B>(1)};
    KtElem<B> den(f.den(), Polynomial<KElem<B>>(KElem<B>(1)), f.desc());
    KtElem<B> lambda = den * iota(den);
    KtElem<B> g = f * lambda;
    assert(lambda.is_laurent() && g.is_laurent());
    return {g.to_laurent(), lambda.to_laurent()};
}

} // namespace isoquat
