#pragma once

#include <array>
#include <cassert>
#include <map>
#include <string>

#include "isoquat/ktelem.hpp"

namespace isoquat {

namespace detail {
template <class T>
T apply_iota(const T& x) {
    if constexpr (requires { x.iota(); })
        return x.iota();
    else
        return iota(x);
}

template <class L, class B>
L inject(const KElem<B>& c, const DescPtr<B>& desc) {
    if constexpr (std::is_same_v<L, KElem<B>>)
        return c;
    else
        return L(c, desc);
}
} // namespace detail

/// Quaternion x0 + x1*j over a scalar level L (K, K[t,t^-1] or K(t)),
/// subject to j^2 = b and j*x = iota(x)*j.
template <class L>
class Quat {
public:
    using Level = L;
    using B = typename L::Base;
    using K = KElem<B>;

    Quat() = default;
    Quat(long n) : x0_(n) {}
    Quat(L x0, L x1, DescPtr<B> desc)
        : x0_(std::move(x0)), x1_(std::move(x1)),
          desc_(detail::merge_desc(detail::merge_desc(x0_.desc(), x1_.desc()), desc)) {}
    explicit Quat(L x0) : x0_(std::move(x0)), desc_(x0_.desc()) {}

    static Quat j(DescPtr<B> desc) { return Quat(L(0), detail::inject<L>(K(1), desc), desc); }
    static Quat scalar(const K& c, DescPtr<B> desc) { return Quat(detail::inject<L>(c, desc), L(0), desc); }

    const L& x0() const { return x0_; }
    const L& x1() const { return x1_; }
    const DescPtr<B>& desc() const { return desc_; }

    bool is_zero() const { return x0_.is_zero() && x1_.is_zero(); }
    bool is_one() const { return x0_.is_one() && x1_.is_zero(); }
    bool is_scalar() const { return x1_.is_zero(); }

    Quat operator+(const Quat& o) const {
        return Quat(x0_ + o.x0_, x1_ + o.x1_, detail::merge_desc(desc_, o.desc_));
    }
    Quat operator-(const Quat& o) const {
        return Quat(x0_ - o.x0_, x1_ - o.x1_, detail::merge_desc(desc_, o.desc_));
    }
    Quat operator-() const { return Quat(-x0_, -x1_, desc_); }

    Quat operator*(const Quat& o) const {
        auto desc = detail::merge_desc(desc_, o.desc_);
        L x0 = x0_ * o.x0_;
        L x1 = x0_ * o.x1_ + x1_ * detail::apply_iota(o.x0_);
        if (!x1_.is_zero() && !o.x1_.is_zero()) {
            assert(desc);
            L b = detail::inject<L>(K(desc->b), desc);
            x0 = x0 + x1_ * detail::apply_iota(o.x1_) * b;
        }
        return Quat(std::move(x0), std::move(x1), std::move(desc));
    }

    bool operator==(const Quat& o) const { return x0_ == o.x0_ && x1_ == o.x1_; }
    bool operator!=(const Quat& o) const { return !(*this == o); }

    /// Canonical involution: bar(x0 + x1 j) = iota(x0) - x1 j.
    Quat bar() const { return Quat(detail::apply_iota(x0_), -x1_, desc_); }
    /// Reduced trace, a scalar of the level fixed field.
    L trd() const { return x0_ + detail::apply_iota(x0_); }
    /// Reduced norm x * bar(x) = x0 iota(x0) - b x1 iota(x1).
    L nrd() const {
        L n = x0_ * detail::apply_iota(x0_);
        if (!x1_.is_zero()) {
            assert(desc_);
            L b = detail::inject<L>(K(desc_->b), desc_);
            n = n - b * x1_ * detail::apply_iota(x1_);
        }
        return n;
    }

    Quat inverse() const
        requires requires(L v) { v.inverse(); }
    {
        assert(!is_zero());
        L n = nrd();
        assert(!n.is_zero());
        L ninv = n.inverse();
        Quat b = bar();
        return Quat(b.x0_ * ninv, b.x1_ * ninv, desc_);
    }

    std::string str() const {
        if (x1_.is_zero()) return "(" + x0_.str() + ")";
        std::string jp = x1_.is_one() ? "j" : "(" + x1_.str() + ")*j";
        if (x0_.is_zero()) return jp;
        return "(" + x0_.str() + ") + " + jp;
    }

private:
    L x0_, x1_;
    DescPtr<B> desc_;
};

template <class B>
using QuatK = Quat<KElem<B>>;

/// Coordinates of a constant quaternion in the k-basis (1, l, j, lj).
template <class B>
std::array<B, 4> quat_coords(const QuatK<B>& x) {
    return {x.x0().re(), x.x0().lm(), x.x1().re(), x.x1().lm()};
}

template <class B>
QuatK<B> quat_from_coords(const std::array<B, 4>& c, const DescPtr<B>& desc) {
    return QuatK<B>(KElem<B>(c[0], c[1], desc), KElem<B>(c[2], c[3], desc), desc);
}
template <class B>
using QuatLaurent = Quat<Laurent<B>>;
template <class B>
using QuatKt = Quat<KtElem<B>>;

template <class B>
QuatLaurent<B> to_laurent_level(const QuatK<B>& x) {
    return QuatLaurent<B>(Laurent<B>(x.x0(), x.desc()), Laurent<B>(x.x1(), x.desc()), x.desc());
}
template <class B>
QuatKt<B> to_kt_level(const QuatK<B>& x) {
    return QuatKt<B>(KtElem<B>(x.x0(), x.desc()), KtElem<B>(x.x1(), x.desc()), x.desc());
}
template <class B>
QuatKt<B> laurent_to_kt_level(const QuatLaurent<B>& x) {
    return QuatKt<B>(KtElem<B>::from_laurent(x.x0()), KtElem<B>::from_laurent(x.x1()), x.desc());
}

/// Unique expression of a Laurent-level quaternion as sum x_z t^z with
/// constant quaternion coefficients x_z; moves j across powers of t via
/// t^z j = j b^z t^-z.
template <class B>
std::map<int, QuatK<B>> laurent_normal_form(const QuatLaurent<B>& q) {
    std::map<int, QuatK<B>> out;
    const auto& desc = q.desc();
    auto add = [&](int z, const KElem<B>& a, const KElem<B>& c) {
        QuatK<B> term(a, c, desc);
        if (term.is_zero()) return;
        auto it = out.find(z);
        if (it == out.end()) {
            out.emplace(z, term);
        } else {
            it->second = it->second + term;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (const auto& [z, y] : q.x0().coeffs()) add(z, y, KElem<B>(0));
    for (const auto& [z, y] : q.x1().coeffs()) {
        assert(desc);
        // y t^z j = (b^z y j) t^-z
        add(-z, KElem<B>(0), KElem<B>(pow(desc->b, z)) * y);
    }
    return out;
}

/// max |z| over the normal form; -inf for zero.
template <class B>
int quat_degree(const QuatLaurent<B>& q) {
    auto nf = laurent_normal_form(q);
    if (nf.empty()) return kDegNegInf;
    int lo = nf.begin()->first, hi = nf.rbegin()->first;
    return std::max(std::abs(lo), std::abs(hi));
}

/// Rebuilds the Laurent-level quaternion from its normal form (test helper
/// and inverse direction of the bijection).
template <class B>
QuatLaurent<B> from_normal_form(const std::map<int, QuatK<B>>& nf, const DescPtr<B>& desc) {
    QuatLaurent<B> acc(Laurent<B>(KElem<B>(0), desc), Laurent<B>(KElem<B>(0), desc), desc);
    for (const auto& [z, x] : nf) {
        QuatLaurent<B> t_z(Laurent<B>::t_pow(z, desc), Laurent<B>(KElem<B>(0), desc), desc);
        acc = acc + to_laurent_level(x) * t_z;
    }
    return acc;
}

} // namespace isoquat
