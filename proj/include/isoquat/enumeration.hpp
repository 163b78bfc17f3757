#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "isoquat/fpfunc.hpp"
#include "isoquat/rational.hpp"

namespace isoquat {

/// Deterministic enumeration of base-field values ordered by height.
/// Searches and certificates rely on this order being stable, so it is part
/// of the library contract: values of smaller height come first, ties are
/// broken by a fixed canonical order documented per field.
template <class B>
struct BaseEnum;

template <>
struct BaseEnum<Rat> {
    /// Height h layer: reduced p/q with max(|p|, q) == h, ordered by (q, p).
    static std::vector<Rat> layer(int h) {
        std::vector<Rat> out;
        if (h == 0) {
            out.emplace_back(0);
            return out;
        }
        for (long q = 1; q <= h; ++q)
            for (long p = -h; p <= h; ++p) {
                if (p == 0) continue; // zero lives in layer 0
                if (std::gcd(std::abs(p), q) != 1) continue;
                if (std::max(std::abs(p), q) != h) continue;
                out.emplace_back(p, q);
            }
        return out;
    }
};

template <unsigned P>
struct BaseEnum<FpFunc<P>> {
    /// Height h layer: reduced num/den with monic den and
    /// max(deg num, deg den) == h, ordered by (den code, num code) where a
    /// polynomial's code is its coefficient vector read as little-endian
    /// base-P digits.
    static std::vector<FpFunc<P>> layer(int h) {
        using Poly = Polynomial<Fp<P>>;
        std::vector<FpFunc<P>> out;
        auto decode = [](std::uint64_t code) {
            std::vector<Fp<P>> c;
            for (; code; code /= P) c.emplace_back(long(code % P));
            return Poly(std::move(c));
        };
        std::uint64_t num_count = 1;
        for (int i = 0; i <= h; ++i) num_count *= P;
        for (std::uint64_t dc = 0; dc < num_count; ++dc) {
            Poly den = decode(dc);
            if (den.is_zero() || !den.is_monic() || den.degree() > h) continue;
            for (std::uint64_t nc = 0; nc < num_count; ++nc) {
                Poly num = decode(nc);
                if (num.is_zero()) {
                    if (h == 0 && den.degree() == 0 && nc == 0) out.emplace_back(0);
                    continue;
                }
                if (std::max(num.degree(), den.degree()) != h) continue;
                if (gcd(num, den).degree() > 0) continue;
                out.emplace_back(PolyFraction<Fp<P>>(num, den));
            }
        }
        return out;
    }
};

/// All values of height <= h, concatenating layers 0..h.
template <class B>
std::vector<B> base_values_up_to(int h) {
    std::vector<B> out;
    for (int hh = 0; hh <= h; ++hh) {
        auto l = BaseEnum<B>::layer(hh);
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

/// Sizes of the cumulative prefixes: result[h] = #values of height <= h.
template <class B>
std::vector<std::size_t> base_prefix_sizes(int h) {
    std::vector<std::size_t> out;
    std::size_t acc = 0;
    for (int hh = 0; hh <= h; ++hh) {
        acc += BaseEnum<B>::layer(hh).size();
        out.push_back(acc);
    }
    return out;
}

} // namespace isoquat
