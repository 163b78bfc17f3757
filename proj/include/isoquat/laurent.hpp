#pragma once

#include <cassert>
#include <limits>
#include <map>
#include <string>

#include "isoquat/tower.hpp"

namespace isoquat {

/// Degree of the zero element, below every integer.
inline constexpr int kDegNegInf = std::numeric_limits<int>::min();

/// Laurent polynomial over K in the variable t, with the involution
/// extending iota by iota(t) = b * t^-1. Zero coefficients are never stored.
template <class B>
class Laurent {
public:
    using Base = B;
    using K = KElem<B>;

    Laurent() = default;
    Laurent(long n) { set(0, K(n)); }
    Laurent(K c, DescPtr<B> desc = nullptr) : desc_(detail::merge_desc(c.desc(), desc)) {
        set(0, std::move(c));
    }
    static Laurent t_pow(int z, DescPtr<B> desc, K coeff = K(1)) {
        Laurent r;
        r.desc_ = detail::merge_desc(coeff.desc(), desc);
        r.set(z, std::move(coeff));
        return r;
    }

    const std::map<int, K>& coeffs() const { return c_; }
    const DescPtr<B>& desc() const { return desc_; }
    bool is_zero() const { return c_.empty(); }

    K coeff(int z) const {
        auto it = c_.find(z);
        return it == c_.end() ? K(0) : it->second;
    }

    /// max |z| over the support; -inf for zero.
    int degree() const {
        if (c_.empty()) return kDegNegInf;
        int lo = c_.begin()->first, hi = c_.rbegin()->first;
        return std::max(std::abs(lo), std::abs(hi));
    }
    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    bool is_ordinary() const { return c_.empty() || min_exp() >= 0; }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        r.desc_ = detail::merge_desc(desc_, o.desc_);
        for (const auto& [z, y] : o.c_) r.add(z, y);
        return r;
    }
    Laurent operator-(const Laurent& o) const { return *this + (-o); }
    Laurent operator-() const {
        Laurent r;
        r.desc_ = desc_;
        for (const auto& [z, y] : c_) r.c_.emplace(z, -y);
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        r.desc_ = detail::merge_desc(desc_, o.desc_);
        for (const auto& [z1, y1] : c_)
            for (const auto& [z2, y2] : o.c_) r.add(z1 + z2, y1 * y2);
        return r;
    }
    Laurent operator*(const K& s) const {
        Laurent r;
        r.desc_ = detail::merge_desc(desc_, s.desc());
        if (s.is_zero()) return r;
        for (const auto& [z, y] : c_) r.c_.emplace(z, y * s);
        return r;
    }
    Laurent shifted(int k) const {
        Laurent r;
        r.desc_ = desc_;
        for (const auto& [z, y] : c_) r.c_.emplace(z + k, y);
        return r;
    }

    bool operator==(const Laurent& o) const { return c_ == o.c_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// iota(sum y_z t^z) = sum iota(y_z) b^z t^-z.
    Laurent iota() const {
        Laurent r;
        r.desc_ = desc_;
        if (c_.empty()) return r;
        assert(desc_ || is_constant());
        for (const auto& [z, y] : c_) {
            K v = y.iota();
            if (z != 0) v = v * K(pow(desc_->b, z));
            r.c_.emplace(-z, std::move(v));
        }
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const auto& [z, y] = *it;
            if (z == 0) {
                out += "(" + y.str() + ")";
            } else {
                std::string tp = z == 1 ? "t" : "t^" + std::to_string(z);
                out += y.is_one() ? tp : "(" + y.str() + ")*" + tp;
            }
        }
        return out;
    }

private:
    void set(int z, K v) {
        if (!v.is_zero()) c_.emplace(z, std::move(v));
    }
    void add(int z, const K& v) {
        auto it = c_.find(z);
        if (it == c_.end()) {
            if (!v.is_zero()) c_.emplace(z, v);
        } else {
            it->second = it->second + v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    std::map<int, K> c_;
    DescPtr<B> desc_;
};

} // namespace isoquat
