#pragma once

#include <cstdint>
#include <vector>

#include "isoquat/fp.hpp"
#include "isoquat/polynomial.hpp"

namespace isoquat {

/// Bit-packed specialization for GF(2)[x]: coefficients live in machine
/// words, addition is XOR and multiplication is shift-and-xor. The generic
/// dense representation is far too slow for the coefficient growth that
/// Euclid over K(s)[t] produces.
template <>
class Polynomial<Fp<2>> {
public:
    using F = Fp<2>;

    Polynomial() = default;
    Polynomial(F c) {
        if (!c.is_zero()) w_ = {1};
    }
    explicit Polynomial(const std::vector<F>& coeffs) {
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) set_bit(i);
        trim();
    }

    static Polynomial x(F one = F(1)) {
        Polynomial p;
        if (!one.is_zero()) p.w_ = {2};
        return p;
    }

    int degree() const {
        if (w_.empty()) return -1;
        std::uint64_t top = w_.back();
        int bit = 63;
        while (!(top >> bit & 1)) --bit;
        return int(w_.size() - 1) * 64 + bit;
    }
    bool is_zero() const { return w_.empty(); }
    bool is_constant() const { return degree() <= 0; }
    F coeff(int i) const {
        if (i < 0 || std::size_t(i / 64) >= w_.size()) return F(0);
        return F((w_[std::size_t(i / 64)] >> (i % 64)) & 1);
    }
    F leading() const { return F(is_zero() ? 0 : 1); }
    bool is_monic() const { return !is_zero(); }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        if (r.w_.size() < o.w_.size()) r.w_.resize(o.w_.size(), 0);
        for (std::size_t i = 0; i < o.w_.size(); ++i) r.w_[i] ^= o.w_[i];
        r.trim();
        return r;
    }
    Polynomial operator-(const Polynomial& o) const { return *this + o; }
    Polynomial operator-() const { return *this; }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return {};
        Polynomial r;
        r.w_.assign(w_.size() + o.w_.size(), 0);
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t a = w_[i];
            while (a) {
                int bit = __builtin_ctzll(a);
                a &= a - 1;
                r.xor_shifted(o, i * 64 + std::size_t(bit));
            }
        }
        r.trim();
        return r;
    }
    Polynomial operator*(const F& s) const { return s.is_zero() ? Polynomial() : *this; }

    bool operator==(const Polynomial& o) const { return w_ == o.w_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::pair<Polynomial, Polynomial> divmod(const Polynomial& div) const {
        Polynomial q, r = *this;
        int dd = div.degree();
        while (!r.is_zero() && r.degree() >= dd) {
            int shift = r.degree() - dd;
            q.set_bit(std::size_t(shift));
            r.xor_shifted(div, std::size_t(shift));
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    Polynomial shifted(int k) const {
        Polynomial r;
        if (is_zero()) return r;
        r.w_.assign(w_.size() + std::size_t(k) / 64 + 1, 0);
        r.xor_shifted(*this, std::size_t(k));
        r.trim();
        return r;
    }

    Polynomial monic() const { return *this; }

    std::string str(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (coeff(i).is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (i == 0)
                out += "1";
            else if (i == 1)
                out += var;
            else
                out += var + "^" + std::to_string(i);
        }
        return out;
    }

private:
    void set_bit(std::size_t i) {
        if (w_.size() <= i / 64) w_.resize(i / 64 + 1, 0);
        w_[i / 64] ^= std::uint64_t(1) << (i % 64);
    }
    /// this ^= o << k (grows storage as needed).
    void xor_shifted(const Polynomial& o, std::size_t k) {
        std::size_t wshift = k / 64, bshift = k % 64;
        std::size_t need = o.w_.size() + wshift + 1;
        if (w_.size() < need) w_.resize(need, 0);
        for (std::size_t i = 0; i < o.w_.size(); ++i) {
            w_[i + wshift] ^= o.w_[i] << bshift;
            if (bshift) w_[i + wshift + 1] ^= o.w_[i] >> (64 - bshift);
        }
    }
    void trim() {
        while (!w_.empty() && w_.back() == 0) w_.pop_back();
    }

    std::vector<std::uint64_t> w_;
};

} // namespace isoquat
