#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <string>

#include "isoquat/errors.hpp"
#include "isoquat/fpfunc.hpp"
#include "isoquat/rational.hpp"

namespace isoquat {

enum class ExtKind {
    Sqrt,          // l^2 = d, characteristic != 2
    ArtinSchreier, // l^2 + l = d, characteristic 2
};

/// Shared description of the quadratic extension K = k(l) and the algebra
/// constant b (j^2 = b). Values at every tower level hold a pointer to one
/// of these; plain elements of k may carry none.
template <class B>
struct AlgebraDesc {
    ExtKind kind;
    B d;
    B b;

    bool operator==(const AlgebraDesc& o) const { return kind == o.kind && d == o.d && b == o.b; }
};

template <class B>
using DescPtr = std::shared_ptr<const AlgebraDesc<B>>;

namespace detail {
template <class B>
inline const DescPtr<B>& merge_desc(const DescPtr<B>& a, const DescPtr<B>& b) {
    if (!a) return b;
    if (b && a != b) assert(*a == *b);
    return a;
}
} // namespace detail

/// Validates and interns an extension descriptor.
/// The separability/irreducibility of the minimal polynomial of l is checked
/// exactly: non-square d for sqrt kind, no Artin-Schreier root for char 2.
template <class B>
DescPtr<B> make_desc(ExtKind kind, const B& d, const B& b) {
    if (b.is_zero()) throw Inconsistent("algebra constant b must be nonzero");
    if constexpr (B::characteristic() == 2) {
        if (kind != ExtKind::ArtinSchreier)
            throw Inconsistent("characteristic 2 requires an Artin-Schreier extension");
        if (artin_schreier_root(d))
            throw Inconsistent("l^2 + l = d is reducible: d = e^2 + e has a solution in k");
    } else {
        if (kind != ExtKind::Sqrt)
            throw Inconsistent("characteristic != 2 requires a sqrt extension");
        if (d.is_zero() || d.is_square())
            throw Inconsistent("l^2 = d requires a non-square d");
    }
    return std::make_shared<const AlgebraDesc<B>>(AlgebraDesc<B>{kind, d, b});
}

/// Element a + c*l of the separable quadratic extension K of the base field.
/// The nontrivial automorphism iota sends l to -l (sqrt) or l + 1
/// (Artin-Schreier); its fixed field is exactly {c = 0}.
template <class B>
class KElem {
public:
    using Base = B;

    KElem() : a_(0), c_(0) {}
    KElem(long n) : a_(n), c_(0) {}
    KElem(B a) : a_(std::move(a)), c_(0) {}
    KElem(B a, B c, DescPtr<B> desc) : a_(std::move(a)), c_(std::move(c)), desc_(std::move(desc)) {
        assert(c_.is_zero() || desc_);
    }

    static KElem l(DescPtr<B> desc) { return KElem(B(0), B(1), std::move(desc)); }

    /// The canonical skew element u with iota(u) = -u: l in characteristic
    /// != 2, 1 in characteristic 2.
    static KElem skew_unit(DescPtr<B> desc) {
        if constexpr (B::characteristic() == 2)
            return KElem(B(1));
        else
            return l(std::move(desc));
    }

    const B& re() const { return a_; }
    const B& lm() const { return c_; }
    const DescPtr<B>& desc() const { return desc_; }

    bool is_zero() const { return a_.is_zero() && c_.is_zero(); }
    bool is_one() const { return a_.is_one() && c_.is_zero(); }
    bool in_k() const { return c_.is_zero(); }

    KElem operator+(const KElem& o) const {
        return KElem(a_ + o.a_, c_ + o.c_, detail::merge_desc(desc_, o.desc_));
    }
    KElem operator-(const KElem& o) const {
        return KElem(a_ - o.a_, c_ - o.c_, detail::merge_desc(desc_, o.desc_));
    }
    KElem operator-() const { return KElem(-a_, -c_, desc_); }

    KElem operator*(const KElem& o) const {
        auto desc = detail::merge_desc(desc_, o.desc_);
        B a = a_ * o.a_;
        B c = a_ * o.c_ + c_ * o.a_;
        B cc = c_ * o.c_;
        if (!cc.is_zero()) {
            assert(desc);
            a = a + cc * desc->d;
            if (desc->kind == ExtKind::ArtinSchreier) c = c - cc;
        }
        return KElem(std::move(a), std::move(c), std::move(desc));
    }

    KElem iota() const {
        if (c_.is_zero()) return *this;
        assert(desc_);
        if (desc_->kind == ExtKind::Sqrt) return KElem(a_, -c_, desc_);
        return KElem(a_ + c_, c_, desc_); // iota(l) = l + 1
    }

    /// Field norm x * iota(x), always in k.
    B norm() const {
        if (c_.is_zero()) return a_ * a_;
        assert(desc_);
        if (desc_->kind == ExtKind::Sqrt) return a_ * a_ - c_ * c_ * desc_->d;
        return a_ * a_ + a_ * c_ + c_ * c_ * desc_->d;
    }

    B trace() const { // x + iota(x), in k
        if (desc_ && desc_->kind == ExtKind::ArtinSchreier) return a_ + a_ + c_;
        return a_ + a_;
    }

    KElem inverse() const {
        assert(!is_zero());
        B n = norm();
        assert(!n.is_zero()); // guaranteed by the separability check
        B ninv = n.inverse();
        KElem conj = iota();
        return KElem(conj.a_ * ninv, conj.c_ * ninv, desc_);
    }
    KElem operator/(const KElem& o) const { return *this * o.inverse(); }

    bool operator==(const KElem& o) const { return a_ == o.a_ && c_ == o.c_; }
    bool operator!=(const KElem& o) const { return !(*this == o); }

    std::int64_t height() const { return std::max(a_.height(), c_.height()); }

    std::string str() const {
        if (c_.is_zero()) return a_.str();
        std::string lp = c_.is_one() ? "l" : c_.str() + "*l";
        if (a_.is_zero()) return lp;
        return a_.str() + " + " + lp;
    }

private:
    B a_, c_;
    DescPtr<B> desc_;
};

template <class B>
B pow(B base, int e)
    requires requires(B x) { x.inverse(); x* x; }
{
    if (e < 0) {
        base = base.inverse();
        e = -e;
    }
    B r(1);
    for (; e; e >>= 1, base = base * base)
        if (e & 1) r = r * base;
    return r;
}

} // namespace isoquat
