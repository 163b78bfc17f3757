#pragma once

#include <optional>
#include <vector>

#include "isoquat/filtered.hpp"

namespace isoquat {

// The degree-reduction engine. Each step of the descent replaces an
// isotropic vector of level d+1 by one of level <= d, and every property the
// argument guarantees along the way is asserted at runtime; a violation
// raises InternalInvariant (or ClaimViolation for the key lemma's claim)
// rather than being absorbed.

template <class B>
struct KeyReduceResult {
    QVec<B> v;      // input vector with the leading coefficient absorbed
    Laurent<B> eta; // K-coefficients of the replacement ideal element
};

/// Key reduction: given xi = z*eps of ideal degree d+1 >= 2 such that
/// deg q(v (x) xi) <= 2d-1, produces eta in the degree-d part of the ideal
/// with q(v (x) eta) = q(v (x) xi). The substitution eta = iota(z)*eps works
/// because q(v (x) z eps) = u z iota(z) (s(v,v) - iota(s(v,v))) once the
/// leading coefficient is normalized to 1 and s(v,v) lands in K.
template <class B>
KeyReduceResult<B> key_reduce(const GramForm<B>& g, QVec<B> v, const Laurent<B>& xi) {
    const auto& desc = g.desc();
    int deg = ideal_degree(xi);
    if (deg < 2) throw PreconditionDegree("key_reduce needs ideal degree >= 2");
    int d = deg - 1;

    // Leading Q-coefficient x_d = y_d + b^(-d-1) y_(-d-1) j, absorbed into v.
    QuatK<B> x_d(xi.coeff(d), KElem<B>(pow(desc->b, -d - 1)) * xi.coeff(-d - 1), desc);
    Laurent<B> z = xi;
    if (!x_d.is_one()) {
        QuatK<B> xinv = x_d.inverse();
        for (auto& c : v) c = c * x_d;
        // Rebuild the coefficient form of (x_d^-1 x_i) t^i eps for i < d.
        Laurent<B> rebuilt = Laurent<B>::t_pow(d, desc);
        for (int i = 0; i < d; ++i) {
            QuatK<B> xi_i(xi.coeff(i), KElem<B>(pow(desc->b, -i - 1)) * xi.coeff(-i - 1), desc);
            QuatK<B> scaled = xinv * xi_i;
            if (!scaled.x0().is_zero()) rebuilt = rebuilt + Laurent<B>::t_pow(i, desc, scaled.x0());
            if (!scaled.x1().is_zero())
                rebuilt = rebuilt + Laurent<B>::t_pow(-i - 1, desc, KElem<B>(pow(desc->b, i + 1)) * scaled.x1());
        }
        z = rebuilt;
    }

    auto tensor_coords = [&](const QVec<B>& vec, const Laurent<B>& f) {
        std::vector<Laurent<B>> coords;
        for (const auto& c : vec) coords.push_back(act_on_ideal(c, f, desc));
        return coords;
    };

    Laurent<B> q = q_F(g, tensor_coords(v, z));
    if (q.is_zero()) return {std::move(v), Laurent<B>(KElem<B>(0), desc)};

    if (q.degree() > 2 * d - 1)
        throw PreconditionDegree("deg q(v (x) xi) exceeds 2d-1");

    QuatK<B> svv = g.eval(v, v);
    if (!svv.is_scalar()) throw InternalInvariant("s(v,v) not in K under the degree hypothesis");

    // The claim of the key lemma: the t^(d-1) coefficient lies in K,
    // equivalently z has no t^(-d) coefficient after normalization.
    if (!z.coeff(-d).is_zero()) throw ClaimViolation("coefficient x_(d-1) has a j-component");

    Laurent<B> eta = z.iota();
    if (ideal_degree(eta) > d) throw InternalInvariant("eta escaped the degree-d ideal");
    if (q_F(g, tensor_coords(v, eta)) != q) throw InternalInvariant("q(v (x) eta) != q(v (x) xi)");
    return {std::move(v), std::move(eta)};
}

template <class B>
struct ReduceOutcome {
    std::optional<QVec<B>> found;              // isotropic vector of [s] over Q
    std::optional<FilteredVector<B>> reduced;  // strictly smaller level, still isotropic
};

/// One descent step on an isotropic vector of level d+1 >= 2: either the
/// leading coefficient is already isotropic for [s], or all lower
/// coefficients are projected onto it and the key reduction lowers the level.
template <class B>
ReduceOutcome<B> reduce_step(const GramForm<B>& g, const FilteredVector<B>& w) {
    const auto& desc = g.desc();
    if (w.is_zero()) throw ZeroVector("reduce_step on the zero vector");
    if (w.level() < 2) throw PreconditionDegree("reduce_step needs filtration level >= 2");
    if (!q_F(g, w).is_zero()) throw NotIsotropic("reduce_step requires q(w) = 0");

    int d = w.level() - 1;
    const QVec<B>& v_d = w.top();

    if (g.q_value(v_d).is_zero_class()) return {v_d, std::nullopt};

    QuatK<B> h = g.polar(v_d, v_d);
    if (h.is_zero()) throw InternalInvariant("h_s(v_d, v_d) = 0 although s(v_d, v_d) is not in k");
    QuatK<B> hinv = h.inverse();

    std::vector<QVec<B>> lower(w.levels().begin(), w.levels().end() - 1);
    Laurent<B> xi = Laurent<B>::t_pow(d, desc);
    for (int i = 0; i < d; ++i) {
        QuatK<B> x_i = hinv * g.polar(v_d, w.levels()[std::size_t(i)]);
        for (int c = 0; c < w.n(); ++c)
            lower[std::size_t(i)][std::size_t(c)] =
                lower[std::size_t(i)][std::size_t(c)] - v_d[std::size_t(c)] * x_i;
        if (!x_i.x0().is_zero()) xi = xi + Laurent<B>::t_pow(i, desc, x_i.x0());
        if (!x_i.x1().is_zero())
            xi = xi + Laurent<B>::t_pow(-i - 1, desc, KElem<B>(pow(desc->b, i + 1)) * x_i.x1());
        if (!g.polar(v_d, lower[std::size_t(i)]).is_zero())
            throw InternalInvariant("projection failed to annihilate h_s(v_d, v'_i)");
    }

    auto kr = key_reduce(g, v_d, xi); // x_d = 1, so kr.v == v_d

    // New vector: sum v'_i (x) t^i eps + v_d (x) eta.
    for (const auto& [z, y] : kr.eta.coeffs()) {
        int i = z >= 0 ? z : -z - 1;
        KElem<B> x0 = z >= 0 ? y : KElem<B>(0);
        KElem<B> x1 = z >= 0 ? KElem<B>(0) : KElem<B>(pow(desc->b, z)) * y;
        QuatK<B> add(x0, x1, desc);
        for (int c = 0; c < w.n(); ++c)
            lower[std::size_t(i)][std::size_t(c)] =
                lower[std::size_t(i)][std::size_t(c)] + kr.v[std::size_t(c)] * add;
    }

    FilteredVector<B> next(std::move(lower), w.n(), desc);
    if (next.is_zero()) throw InternalInvariant("reduced vector vanished");
    if (next.level() > d) throw InternalInvariant("reduce_step failed to lower the level");
    if (!q_F(g, next).is_zero()) throw InternalInvariant("reduced vector is no longer isotropic");
    return {std::nullopt, std::move(next)};
}

template <class B>
struct DescentResult {
    QVec<B> v;       // nonzero with s(v, v) in k
    QuatK<B> s_vv;   // the witnessing value
    int iterations;  // reduce_step calls, at most initial_level - 1
    int initial_level;
};

/// Full descent: clears denominators into the integral ideal, then applies
/// reduce_step until the level drops to 1, where the vector is v (x) eps and
/// v itself is isotropic for [s].
template <class B>
DescentResult<B> descend(const GramForm<B>& g, const MoritaVector<B>& w, bool division_certified) {
    const auto& desc = g.desc();
    if (!division_certified)
        throw NoCertificate("descent requires a division certificate (or an explicit override)");
    if (morita_is_zero(w)) throw ZeroVector("descend on the zero vector");
    if (!q_F(g, w).is_zero()) throw NotIsotropic("q_F(w) != 0");

    // One common iota-fixed multiplier for all coordinates.
    KtElem<B> lambda(KElem<B>(1), desc);
    for (const auto& f : w) {
        auto [gpart, lam] = clear_denominators(f);
        (void)gpart;
        lambda = lambda * KtElem<B>::from_laurent(lam);
    }
    std::vector<Laurent<B>> coords;
    for (const auto& f : w) {
        KtElem<B> scaled = f * lambda;
        if (!scaled.is_laurent()) throw InternalInvariant("denominator clearing left a true fraction");
        coords.push_back(scaled.to_laurent());
    }

    FilteredVector<B> fv = FilteredVector<B>::from_laurent_coords(coords, desc);
    int initial_level = fv.level();
    int iters = 0;
    std::optional<QVec<B>> found;
    while (fv.level() >= 2) {
        auto out = reduce_step(g, fv);
        ++iters;
        if (out.found) {
            found = std::move(out.found);
            break;
        }
        fv = std::move(*out.reduced);
    }
    QVec<B> v = found ? std::move(*found) : fv.top();

    if (qvec_is_zero(v)) throw InternalInvariant("descent produced the zero vector");
    QuatK<B> s_vv = g.eval(v, v);
    if (!(s_vv.is_scalar() && s_vv.x0().in_k()))
        throw InternalInvariant("descent output is not isotropic for [s]");
    if (iters > initial_level - 1) throw InternalInvariant("descent exceeded its step bound");
    return {std::move(v), std::move(s_vv), iters, initial_level};
}

} // namespace isoquat
