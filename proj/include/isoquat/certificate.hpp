#pragma once

#include <optional>
#include <string>

#include "isoquat/enumeration.hpp"
#include "isoquat/quaternion.hpp"

namespace isoquat {

/// Outcome of an attempt to certify whether the algebra is division or split.
/// Q = (K, iota, b) is split exactly when b is a norm from K; deciding that
/// in general is out of reach here, so a bounded search can end in Unknown.
template <class B>
struct Certificate {
    enum class Kind { Division, Split, Unknown };
    Kind kind = Kind::Unknown;
    std::string reason;
    std::optional<KElem<B>> witness; // y with N(y) = b, for Split
    int bound = 0;                   // height examined for search outcomes

    bool is_division() const { return kind == Kind::Division; }
    bool is_split() const { return kind == Kind::Split; }

    std::string str() const {
        switch (kind) {
            case Kind::Division: return "Division{" + reason + "}";
            case Kind::Split: return "Split{y = " + witness->str() + "}";
            default: return "Unknown{" + reason + ", bound " + std::to_string(bound) + "}";
        }
    }
};

/// Certification strategy: a positive-definiteness shortcut over the
/// rationals, then a bounded norm-equation search (lowest height first,
/// enumeration order as tie-break), otherwise Unknown.
template <class B>
Certificate<B> division_certificate(const DescPtr<B>& desc, int effort_bound) {
    Certificate<B> cert;
    cert.bound = effort_bound;

    if constexpr (B::characteristic() == 0) {
        if (desc->kind == ExtKind::Sqrt && desc->d.sign() < 0 && desc->b.sign() < 0) {
            // Nrd = N(x0) + |b| N(x1) with N positive definite: anisotropic.
            cert.kind = Certificate<B>::Kind::Division;
            cert.reason = "definite";
            return cert;
        }
    }

    for (int h = 0; h <= effort_bound; ++h) {
        auto layer_vals = base_values_up_to<B>(h);
        for (const B& a : layer_vals)
            for (const B& c : layer_vals) {
                if (std::max(a.height(), c.height()) != h) continue;
                KElem<B> y(a, c, desc);
                if (y.is_zero()) continue;
                if (y.norm() == desc->b) {
                    cert.kind = Certificate<B>::Kind::Split;
                    cert.witness = y;
                    cert.bound = h;
                    return cert;
                }
            }
    }

    cert.kind = Certificate<B>::Kind::Unknown;
    cert.reason = "search-exhausted";
    return cert;
}

} // namespace isoquat
