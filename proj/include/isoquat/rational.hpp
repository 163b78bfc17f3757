#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <limits>
#include <string>
#include <vector>

namespace isoquat {

/// Arbitrary-precision rational, the characteristic-0 base field.
/// Values are kept canonical by GMP (gcd-reduced, positive denominator).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) { v_.canonicalize(); }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static constexpr int characteristic() { return 0; }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const { return Rat(mpq_class(v_ / o.v_)); }
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    Rat inverse() const { return Rat(mpq_class(1 / v_)); }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    /// True for squares of rationals (used to validate sqrt-kind extensions).
    bool is_square() const {
        if (sign() < 0) return false;
        return mpz_perfect_square_p(v_.get_num().get_mpz_t()) &&
               mpz_perfect_square_p(v_.get_den().get_mpz_t());
    }

    /// Naive height: max(|numerator|, denominator), clamped to int64; 0 for 0.
    std::int64_t height() const {
        if (is_zero()) return 0;
        mpz_class n = abs(v_.get_num());
        mpz_class d = v_.get_den();
        const mpz_class& m = (n > d) ? n : d;
        if (!m.fits_slong_p()) return std::numeric_limits<std::int64_t>::max();
        return m.get_si();
    }

    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

/// Scalar lambda such that multiplying through by it makes a list of
/// rationals integral with trivial common factor (lcm of denominators over
/// gcd of numerators). Used to keep pseudo-remainder sequences small.
inline Rat content_scale(const std::vector<Rat>& vals) {
    mpz_class g(0), l(1);
    for (const Rat& v : vals) {
        if (v.is_zero()) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.raw().get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den().get_mpz_t());
    }
    if (g == 0) return Rat(1);
    return Rat(mpq_class(l) / mpq_class(g));
}

} // namespace isoquat
