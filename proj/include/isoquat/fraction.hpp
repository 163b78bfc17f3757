#pragma once

#include <cassert>
#include <string>
#include <utility>

#include "isoquat/polynomial.hpp"

namespace isoquat {

/// Field of fractions of a polynomial ring.
/// Canonical form: gcd(num, den) = 1 and den monic; zero is 0/1.
template <class F>
class PolyFraction {
public:
    using Poly = Polynomial<F>;

    PolyFraction() : num_(), den_(F(1)) {}
    PolyFraction(long n) : num_(F(n)), den_(F(1)) {}
    PolyFraction(Poly num) : num_(std::move(num)), den_(F(1)) {}
    PolyFraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_constant() && !num_.is_zero() && num_.leading().is_one() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    PolyFraction operator+(const PolyFraction& o) const {
        return PolyFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    PolyFraction operator-(const PolyFraction& o) const {
        return PolyFraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    PolyFraction operator*(const PolyFraction& o) const {
        return PolyFraction(num_ * o.num_, den_ * o.den_);
    }
    PolyFraction operator/(const PolyFraction& o) const {
        assert(!o.is_zero());
        return PolyFraction(num_ * o.den_, den_ * o.num_);
    }
    PolyFraction operator-() const {
        PolyFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    PolyFraction inverse() const {
        assert(!is_zero());
        return PolyFraction(den_, num_);
    }

    bool operator==(const PolyFraction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const PolyFraction& o) const { return !(*this == o); }

    std::string str(const std::string& var) const {
        if (is_polynomial()) return "(" + num_.str(var) + ")";
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void normalize() {
        assert(!den_.is_zero());
        if (num_.is_zero()) {
            den_ = Poly(F(1));
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        if (!den_.is_monic()) {
            F inv = den_.leading().inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

} // namespace isoquat
