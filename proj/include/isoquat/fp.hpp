#pragma once

#include <cstdint>
#include <string>

namespace isoquat {

/// Prime field with a compile-time modulus.
template <unsigned P>
class Fp {
    static_assert(P >= 2, "modulus must be a prime >= 2");

public:
    Fp() : v_(0) {}
    Fp(long n) {
        long r = n % long(P);
        v_ = unsigned(r < 0 ? r + long(P) : r);
    }

    static constexpr int characteristic() { return int(P); }

    Fp operator+(Fp o) const { return from_raw((v_ + o.v_) % P); }
    Fp operator-(Fp o) const { return from_raw((v_ + P - o.v_) % P); }
    Fp operator*(Fp o) const { return from_raw(std::uint64_t(v_) * o.v_ % P); }
    Fp operator/(Fp o) const { return *this * o.inverse(); }
    Fp operator-() const { return from_raw(v_ ? P - v_ : 0); }

    bool operator==(Fp o) const { return v_ == o.v_; }
    bool operator!=(Fp o) const { return v_ != o.v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp inverse() const {
        // Fermat: v^(P-2)
        Fp r(1), b = *this;
        for (unsigned e = P - 2; e; e >>= 1, b = b * b)
            if (e & 1) r = r * b;
        return r;
    }

    unsigned value() const { return v_; }
    std::string str() const { return std::to_string(v_); }

private:
    static Fp from_raw(std::uint64_t v) {
        Fp r;
        r.v_ = unsigned(v);
        return r;
    }
    unsigned v_;
};

} // namespace isoquat
