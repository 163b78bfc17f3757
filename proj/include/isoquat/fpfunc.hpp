#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoquat/fp.hpp"
#include "isoquat/fraction.hpp"
#include "isoquat/gf2poly.hpp"

namespace isoquat {

/// Rational function field F_p(s), the positive-characteristic base field.
template <unsigned P>
class FpFunc {
public:
    using Coeff = Fp<P>;
    using Poly = Polynomial<Coeff>;

    FpFunc() = default;
    FpFunc(long n) : v_(n) {}
    explicit FpFunc(PolyFraction<Coeff> v) : v_(std::move(v)) {}
    static FpFunc s() { return FpFunc(PolyFraction<Coeff>(Poly::x())); }

    static constexpr int characteristic() { return int(P); }

    FpFunc operator+(const FpFunc& o) const { return FpFunc(v_ + o.v_); }
    FpFunc operator-(const FpFunc& o) const { return FpFunc(v_ - o.v_); }
    FpFunc operator*(const FpFunc& o) const { return FpFunc(v_ * o.v_); }
    FpFunc operator/(const FpFunc& o) const { return FpFunc(v_ / o.v_); }
    FpFunc operator-() const { return FpFunc(-v_); }
    FpFunc& operator+=(const FpFunc& o) { v_ = v_ + o.v_; return *this; }
    FpFunc& operator-=(const FpFunc& o) { v_ = v_ - o.v_; return *this; }
    FpFunc& operator*=(const FpFunc& o) { v_ = v_ * o.v_; return *this; }

    bool operator==(const FpFunc& o) const { return v_ == o.v_; }
    bool operator!=(const FpFunc& o) const { return v_ != o.v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_.is_one(); }
    FpFunc inverse() const { return FpFunc(v_.inverse()); }

    /// Height: max degree in s of the reduced numerator and denominator.
    std::int64_t height() const {
        if (is_zero()) return 0;
        return std::max(v_.num().degree(), v_.den().degree());
    }

    std::string str() const { return v_.str("s"); }

    const PolyFraction<Coeff>& raw() const { return v_; }

private:
    PolyFraction<Coeff> v_;
};

/// Function-field analogue of the rational content scale: lcm of
/// denominators over gcd of numerators.
template <unsigned P>
FpFunc<P> content_scale(const std::vector<FpFunc<P>>& vals) {
    using Poly = Polynomial<Fp<P>>;
    Poly g, l(Fp<P>(1));
    for (const auto& v : vals) {
        if (v.is_zero()) continue;
        g = gcd(g, v.raw().num());
        Poly d = v.raw().den();
        Poly gd = gcd(l, d);
        l = l * d.divmod(gd).first;
    }
    if (g.is_zero()) return FpFunc<P>(1);
    return FpFunc<P>(PolyFraction<Fp<P>>(l, g));
}

/// Solves e^2 + e = d over F_2(s) if possible (Artin-Schreier reducibility).
///
/// A solution e = p/q in lowest terms forces den(d) = q^2, and then
/// p^2 + qp + r = 0 where r = num(d). In characteristic 2 squaring is
/// F_2-linear, so the coefficients of p solve a linear system over F_2.
inline std::optional<PolyFraction<Fp<2>>> artin_schreier_root(const FpFunc<2>& d) {
    using Poly = Polynomial<Fp<2>>;
    const Poly& r = d.raw().num();
    const Poly& m = d.raw().den();

    // Extract q = sqrt(m): over F_2, m is a square iff all exponents are even.
    std::vector<Fp<2>> qc((std::size_t(m.degree()) / 2) + 1, Fp<2>(0));
    for (int i = 0; i <= m.degree(); ++i) {
        if (m.coeff(i).is_zero()) continue;
        if (i % 2) return std::nullopt;
        qc[std::size_t(i / 2)] = Fp<2>(1);
    }
    Poly q{std::vector<Fp<2>>(qc)};
    if (q * q != m) return std::nullopt;

    // p^2 + q p + r = 0 with deg p <= D, linear over F_2 in the bits of p.
    int D = std::max(q.degree(), (r.degree() + 1) / 2) + 1;
    int rows = std::max(2 * D, std::max(q.degree() + D, r.degree())) + 1;
    std::vector<std::vector<int>> A(std::size_t(rows), std::vector<int>(std::size_t(D + 1), 0));
    std::vector<int> rhs(std::size_t(rows), 0);
    for (int i = 0; i <= D; ++i) {
        A[std::size_t(2 * i)][std::size_t(i)] ^= 1; // p_i s^{2i} from p^2
        for (int j = 0; j <= q.degree(); ++j)
            if (!q.coeff(j).is_zero()) A[std::size_t(i + j)][std::size_t(i)] ^= 1;
    }
    for (int i = 0; i <= r.degree(); ++i) rhs[std::size_t(i)] = r.coeff(i).is_zero() ? 0 : 1;

    // Gaussian elimination over F_2.
    std::vector<int> pivot_col(std::size_t(rows), -1);
    int row = 0;
    for (int col = 0; col <= D && row < rows; ++col) {
        int sel = -1;
        for (int i = row; i < rows; ++i)
            if (A[std::size_t(i)][std::size_t(col)]) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(A[std::size_t(sel)], A[std::size_t(row)]);
        std::swap(rhs[std::size_t(sel)], rhs[std::size_t(row)]);
        for (int i = 0; i < rows; ++i) {
            if (i != row && A[std::size_t(i)][std::size_t(col)]) {
                for (int c = 0; c <= D; ++c) A[std::size_t(i)][std::size_t(c)] ^= A[std::size_t(row)][std::size_t(c)];
                rhs[std::size_t(i)] ^= rhs[std::size_t(row)];
            }
        }
        pivot_col[std::size_t(row)] = col;
        ++row;
    }
    for (int i = row; i < rows; ++i)
        if (rhs[std::size_t(i)]) return std::nullopt;

    std::vector<Fp<2>> pc(std::size_t(D + 1), Fp<2>(0));
    for (int i = 0; i < row; ++i)
        if (rhs[std::size_t(i)]) pc[std::size_t(pivot_col[std::size_t(i)])] = Fp<2>(1);
    Poly p{std::vector<Fp<2>>(pc)};
    if (p * p + q * p + r != Poly()) return std::nullopt;
    return PolyFraction<Fp<2>>(p, q);
}

using F2s = FpFunc<2>;

} // namespace isoquat
