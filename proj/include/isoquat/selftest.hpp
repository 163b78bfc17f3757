#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "isoquat/descent.hpp"
#include "isoquat/instance.hpp"
#include "isoquat/quadpair.hpp"
#include "isoquat/search_parallel.hpp"

namespace isoquat {

struct CheckResult {
    std::string name;
    int samples = 0;
    bool pass = false;
    bool skipped = false;
    std::string note; // counterexample dump or skip reason
};

namespace selftestdetail {

/// Runs body(sampler, note) returning pass/fail; exceptions count as failure
/// with the message as the counterexample.
template <class B, class Fn>
CheckResult run_check(const std::string& name, const DescPtr<B>& desc, std::uint64_t seed, int samples, Fn&& body) {
    CheckResult r{name, samples, false, false, ""};
    Sampler<B> smp(seed, desc);
    try {
        r.pass = body(smp, r.note);
    } catch (const std::exception& e) {
        r.pass = false;
        r.note = e.what();
    }
    return r;
}

inline CheckResult skip(const std::string& name, const std::string& why) {
    return CheckResult{name, 0, true, true, why};
}

/// Isotropic Gram with a planted hyperbolic block for the given descriptor;
/// returns the conjugated matrix and its isotropic witness.
template <class B>
std::pair<Mat<QuatK<B>>, QVec<B>> plant_isotropic(Sampler<B>& smp, int n, int height) {
    const auto& desc = smp.desc();
    Mat<QuatK<B>> s = smp.qmat(n, height);
    s.at(0, 0) = QuatK<B>::scalar(KElem<B>(0), desc);
    if (n >= 2) {
        s.at(0, 1) = QuatK<B>(1);
        s.at(1, 0) = QuatK<B>::scalar(KElem<B>(0), desc);
        s.at(1, 1) = QuatK<B>::scalar(KElem<B>(0), desc);
    }
    for (;;) {
        Mat<QuatK<B>> p = smp.qmat(n, 1);
        auto pinv = quat_mat_inverse_split(p, desc);
        if (!pinv) continue;
        QVec<B> w;
        for (int i = 0; i < n; ++i) w.push_back(pinv->at(i, 0));
        if (qvec_is_zero(w)) continue;
        return {p.dagger([](const QuatK<B>& x) { return x.bar(); }) * s * p, std::move(w)};
    }
}

/// k-linear rank of a quaternion matrix acting on Q^n = k^(4n), the
/// brute-force singularity oracle.
template <class B>
int quat_mat_k_rank(const Mat<QuatK<B>>& m, const DescPtr<B>& desc) {
    int n = m.rows();
    auto basis = quat_basis<B>(desc);
    Mat<B> rep(4 * n, 4 * n, B(0));
    int col = 0;
    for (int jcoord = 0; jcoord < n; ++jcoord)
        for (const auto& mu : basis) {
            for (int i = 0; i < n; ++i) {
                QuatK<B> entry = m.at(i, jcoord) * mu;
                auto c = quat_coords(entry);
                for (int r = 0; r < 4; ++r) rep.at(4 * i + r, col) = c[std::size_t(r)];
            }
            ++col;
        }
    return field_rank(rep);
}

} // namespace selftestdetail

/// Named invariant suites. Each returns one CheckResult; the acceptance
/// harness calls them with pinned sample counts, the selftest command with
/// the instance options.

template <class B>
CheckResult check_involution_tower(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("involution-ring-automorphism-order-2", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                KtElem<B> f = smp.kt(2, 2), g = smp.kt(2, 2);
                                if (iota(f * g) != iota(f) * iota(g) || iota(f + g) != iota(f) + iota(g) ||
                                    iota(iota(f)) != f) {
                                    note = "f = " + f.str() + ", g = " + g.str();
                                    return false;
                                }
                                Laurent<B> a = smp.laurent(2, 2), b = smp.laurent(2, 2);
                                if ((a * b).iota() != a.iota() * b.iota() || a.iota().iota() != a) {
                                    note = "laurent a = " + a.str() + ", b = " + b.str();
                                    return false;
                                }
                                KElem<B> x = smp.k(3);
                                if (x.iota().iota() != x) {
                                    note = "k-elem " + x.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_f_closure(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("F-closed-under-field-ops", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            KtElem<B> x = smp.kt(2, 2), y = smp.kt(2, 2);
            KtElem<B> f = x * iota(x), g = y + iota(y);
            if (!in_F(f) || !in_F(g)) {
                note = "construction failed";
                return false;
            }
            if (!in_F(f + g) || !in_F(f * g) || (!g.is_zero() && !in_F(f / g))) {
                note = "f = " + f.str() + ", g = " + g.str();
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_decompose_roundtrip(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("decompose-over-F-roundtrip", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        KtElem<B> lv = KtElem<B>::l(desc);
        for (int it = 0; it < samples; ++it) {
            KtElem<B> f = smp.kt(3, 2);
            auto [f0, f1] = decompose_over_F(f, desc);
            if (!in_F(f0) || !in_F(f1) || f0 + lv * f1 != f) {
                note = "f = " + f.str();
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_clear_denominators(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("clear-denominators-postcondition", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                KtElem<B> f = smp.kt(2, 2);
                                auto [g, lam] = clear_denominators(f);
                                KtElem<B> lam_kt = KtElem<B>::from_laurent(lam);
                                if (lam.is_zero() || lam.iota() != lam ||
                                    f * lam_kt != KtElem<B>::from_laurent(g)) {
                                    note = "f = " + f.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_laurent_degree(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("laurent-degree-submultiplicative", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                Laurent<B> f = smp.laurent(2, 3), g = smp.laurent(2, 3);
                                if (f.is_zero() || g.is_zero()) continue;
                                if ((f * g).degree() > f.degree() + g.degree()) {
                                    note = "f = " + f.str() + ", g = " + g.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_quat_ring_axioms(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("quaternion-associativity-distributivity", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                QuatK<B> x = smp.quat(3), y = smp.quat(3), z = smp.quat(3);
                                if ((x * y) * z != x * (y * z) || x * (y + z) != x * y + x * z ||
                                    (x + y) * z != x * z + y * z || QuatK<B>(1) * x != x) {
                                    note = "x = " + x.str() + ", y = " + y.str() + ", z = " + z.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_reduced_ops(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("bar-trd-nrd-laws", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            QuatK<B> x = smp.quat(3), y = smp.quat(3);
            bool ok = (x * y).bar() == y.bar() * x.bar() && x.bar().bar() == x &&
                      (x * y).trd() == (y * x).trd() && (x * y).nrd() == x.nrd() * y.nrd() &&
                      x.trd().in_k() && x.nrd().in_k() && x.bar() + x == QuatK<B>::scalar(x.trd(), desc);
            if (!ok) {
                note = "x = " + x.str() + ", y = " + y.str();
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_laurent_normal_form(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("laurent-normal-form-bijection", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                QuatLaurent<B> x(smp.laurent(2, 2), smp.laurent(2, 2), desc);
                                auto nf = laurent_normal_form(x);
                                if (from_normal_form(nf, desc) != x) {
                                    note = "x0 = " + x.x0().str() + ", x1 = " + x.x1().str();
                                    return false;
                                }
                                QuatLaurent<B> y(smp.laurent(1, 1), smp.laurent(1, 1), desc);
                                if (laurent_normal_form(x * y + y) !=
                                    laurent_normal_form(from_normal_form(laurent_normal_form(x * y), desc) + y)) {
                                    note = "uniqueness failure";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_division_nrd(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("division-implies-anisotropic-nrd", "no division certificate");
    return run_check<B>("division-implies-anisotropic-nrd", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                QuatK<B> x = smp.quat(6);
                                if (!x.is_zero() && x.nrd().is_zero()) {
                                    note = "zero divisor " + x.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_mat_inverse(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("mat-inverse-vs-k-rank-oracle", "no division certificate");
    return run_check<B>("mat-inverse-vs-k-rank-oracle", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            Mat<QuatK<B>> m = smp.qmat(n, 2);
            if (n >= 2 && smp.next(2)) {
                // plant a left-dependent row to exercise the singular path
                QuatK<B> x = smp.quat(1);
                for (int jc = 0; jc < n; ++jc) m.at(0, jc) = x * m.at(1, jc);
            }
            auto inv = division_ring_inverse(m);
            bool full_rank = quat_mat_k_rank(m, desc) == 4 * n;
            if (inv.has_value() != full_rank) {
                note = "rank oracle disagrees, n = " + std::to_string(n);
                return false;
            }
            if (inv && ((m * *inv) != Mat<QuatK<B>>::identity(n) || (*inv * m) != Mat<QuatK<B>>::identity(n))) {
                note = "inverse fails to multiply to identity";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_gq_form_laws(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("generalized-quadratic-form-laws", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                int n = 1 + int(smp.next(3));
                                GramForm<B> g = smp.gram(n, 2);
                                QVec<B> v = smp.qvec(n, 2), w = smp.qvec(n, 2);
                                QuatK<B> x = smp.quat(2);
                                // polarization: q(v+w) - q(v) - q(w) = h(v,w) mod k
                                QVec<B> vw;
                                for (int i = 0; i < n; ++i) vw.push_back(v[std::size_t(i)] + w[std::size_t(i)]);
                                QuatK<B> lhs = g.eval(vw, vw) - g.eval(v, v) - g.eval(w, w);
                                if (!QModK<B>{lhs}.class_equal(QModK<B>{g.polar(v, w)})) {
                                    note = "polarization identity failed";
                                    return false;
                                }
                                // q(vx) = bar(x) q(v) x mod k
                                QVec<B> vx;
                                for (const auto& c : v) vx.push_back(c * x);
                                if (!g.q_value(vx).class_equal(QModK<B>{x.bar() * g.eval(v, v) * x})) {
                                    note = "scaling identity failed";
                                    return false;
                                }
                                if (!g.polar(v, v).trd().is_zero()) {
                                    note = "polar form not alternating-traced";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_class_invariance(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("class-invariants-under-even-hermitian", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                int n = 1 + int(smp.next(3));
                                GramForm<B> g = smp.gram(n, 2);
                                GramForm<B> g2(g.s() + smp.even_hermitian(n, 2), desc);
                                if (!class_equal(g, g2) || g.h() != g2.h()) {
                                    note = "polar Gram changed under even-hermitian shift";
                                    return false;
                                }
                                QVec<B> v = smp.qvec(n, 2);
                                if (!g.q_value(v).class_equal(g2.q_value(v))) {
                                    note = "q-class changed under even-hermitian shift";
                                    return false;
                                }
                                MoritaVector<B> w;
                                for (int i = 0; i < n; ++i) w.push_back(smp.kt(1, 1));
                                if (q_F(g, w) != q_F(g2, w)) {
                                    note = "q_F changed under even-hermitian shift";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_alt_form_defa(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("alternating-form-kernel-biconditional", "no division certificate");
    return run_check<B>("alternating-form-kernel-biconditional", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                KtElem<B> xi = smp.next(8) ? smp.kt(2, 1) : KtElem<B>(KElem<B>(0), desc);
                                QuatK<B> x = smp.next(4) ? smp.quat(2)
                                                         : QuatK<B>::scalar(KElem<B>(smp.base(2)), desc);
                                KtElem<B> val = alt_form(xi, act_on_ideal(to_kt_level(x), xi), desc);
                                bool trivial = xi.is_zero() || (x.is_scalar() && x.x0().in_k());
                                if (val.is_zero() != trivial) {
                                    note = "xi = " + xi.str() + ", x = " + x.str();
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_ideal_action(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("ideal-action-and-adjoint-property", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            KtElem<B> one(KElem<B>(1), desc);
                            KtElem<B> iota_t = iota(KtElem<B>::t(desc));
                            // j . eps = iota(t) eps
                            if (act_on_ideal(QuatKt<B>::j(desc), one) != iota_t) {
                                note = "j action on eps is wrong";
                                return false;
                            }
                            for (int it = 0; it < samples; ++it) {
                                QuatKt<B> x = to_kt_level(smp.quat(2)), y = to_kt_level(smp.quat(2));
                                KtElem<B> f = smp.kt(2, 1), gsc = smp.kt(2, 1);
                                if (act_on_ideal(x * y, f) != act_on_ideal(x, act_on_ideal(y, f))) {
                                    note = "module law failed";
                                    return false;
                                }
                                // a(xi, x eta) = a(bar(x) xi, eta)
                                if (alt_form(f, act_on_ideal(x, gsc), desc) !=
                                    alt_form(act_on_ideal(x.bar(), f), gsc, desc)) {
                                    note = "adjoint property failed";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_polar_identity_F(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("split-polar-identity", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            MoritaVector<B> w1, w2, sum;
            for (int i = 0; i < n; ++i) {
                w1.push_back(smp.kt(1, 1));
                w2.push_back(smp.kt(1, 1));
                sum.push_back(w1.back() + w2.back());
            }
            if (b_F(g, w1, w2) != q_F(g, sum) - q_F(g, w1) - q_F(g, w2)) {
                note = "polar identity failed at n = " + std::to_string(n);
                return false;
            }
            // quadratic scaling by an iota-fixed lambda
            KtElem<B> x = smp.kt(1, 1);
            KtElem<B> lam = x * iota(x);
            MoritaVector<B> wl;
            for (const auto& f : w1) wl.push_back(f * lam);
            if (q_F(g, wl) != lam * lam * q_F(g, w1)) {
                note = "quadratic scaling failed";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_nonsingularity_transfer(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed,
                                          int samples) {
    using namespace selftestdetail;
    return run_check<B>("nonsingularity-transfer", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            bool lhs = is_nonsingular(g, cert.is_division());
            bool rhs = field_rank(morita_gram(g).polar) == 2 * n;
            if (lhs != rhs) {
                note = "transfer mismatch at n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_isotropy_transfer(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("isotropy-transfer-both-directions", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                int n = 1 + int(smp.next(3));
                                auto [s, wit] = plant_isotropic(smp, n, 2);
                                GramForm<B> g(s, desc);
                                if (!g.q_value(wit).is_zero_class()) {
                                    note = "planted witness is not isotropic";
                                    return false;
                                }
                                // forward: v isotropic -> v (x) eps isotropic for q
                                MoritaVector<B> w;
                                for (const auto& c : wit)
                                    w.push_back(act_on_ideal(to_kt_level(c), KtElem<B>(KElem<B>(1), desc)));
                                if (!q_F(g, w).is_zero()) {
                                    note = "q_F(v (x) eps) != 0";
                                    return false;
                                }
                                // backward: inflate, then transfer back
                                Laurent<B> lam = smp.lambda_fixed(1, 1 + int(smp.next(2)));
                                MoritaVector<B> wl;
                                for (const auto& f : w) wl.push_back(f * KtElem<B>::from_laurent(lam));
                                auto vx = transfer_isotropic(g, wl);
                                bool nz = false;
                                for (const auto& c : vx) nz = nz || !c.is_zero();
                                if (!nz) {
                                    note = "transfer returned zero";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_trace_identity(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("phi-trace-identity", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            QuadraticPair<B> pair = [&]() -> QuadraticPair<B> {
                for (;;) {
                    try {
                        return QuadraticPair<B>(g);
                    } catch (const Singular&) {
                        g = smp.gram(n, 2);
                    }
                }
            }();
            QVec<B> v = smp.qvec(n, 2), w = smp.qvec(n, 2);
            KElem<B> lhs(end_trd(pair.phi(v, w)));
            KElem<B> rhs = g.polar(w, v).trd();
            if (KElem<B>(lhs) != rhs) {
                note = "trace identity failed at n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_theta_homomorphism(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("theta-algebra-homomorphism", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(2));
            Mat<QuatKt<B>> m(n, n, QuatKt<B>(0)), nn(n, n, QuatKt<B>(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    m.at(i, j) = to_kt_level(smp.quat(2));
                    nn.at(i, j) = to_kt_level(smp.quat(2));
                }
            if (theta(m * nn, desc) != theta(m, desc) * theta(nn, desc)) {
                note = "theta(MN) != theta(M) theta(N)";
                return false;
            }
            if (theta_inv(theta(m, desc), desc) != m) {
                note = "theta_inv round trip failed";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_commuting_square(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("morita-commuting-square", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(2));
            GramForm<B> g = smp.gram(n, 1);
            if (!is_nonsingular(g, false)) continue;
            SplitPair<B> sp(morita_gram(g), desc);
            Mat<QuatKt<B>> hkt(n, n, QuatKt<B>(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) hkt.at(i, j) = to_kt_level(g.h().at(i, j));
            for (int p = 0; p < 2 * n; ++p)
                for (int q = 0; q < 2 * n; ++q) {
                    Mat<QuatKt<B>> u = theta_prime_tensor(g, p, q);
                    Mat<KtElem<B>> lhs = theta(u * hkt, desc); // theta(Phi_h(Theta'(p,q)))
                    std::vector<KtElem<B>> bp(std::size_t(2 * n), KtElem<B>(KElem<B>(0), desc));
                    std::vector<KtElem<B>> bq = bp;
                    bp[std::size_t(p)] = KtElem<B>(KElem<B>(1), desc);
                    bq[std::size_t(q)] = KtElem<B>(KElem<B>(1), desc);
                    if (lhs != sp.phi(bp, bq)) {
                        note = "square fails at basis (" + std::to_string(p) + ", " + std::to_string(q) + ")";
                        return false;
                    }
                }
        }
        return true;
    });
}

template <class B>
CheckResult check_pair_axioms(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("quadratic-pair-axioms", "no division certificate");
    return run_check<B>("quadratic-pair-axioms", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int rep = 0; rep < 3; ++rep) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            if (!is_nonsingular_division(g)) continue;
            QuadraticPair<B> pair(g);
            if (sym_dimension(pair) != n * (2 * n + 1)) {
                note = "dim Sym != n(2n+1) at n = " + std::to_string(n);
                return false;
            }
            if (!trd_vanishes_on_skew(pair)) {
                note = "Trd does not vanish on Skew(sigma)";
                return false;
            }
            for (int it = 0; it < samples; ++it) {
                Mat<QuatK<B>> x = smp.qmat(n, 2);
                Mat<QuatK<B>> sym = x + pair.adjoint(x);
                if (pair.semitrace(sym) != end_trd(x)) {
                    note = "f(x + sigma(x)) != Trd(x)";
                    return false;
                }
                if (pair.adjoint(pair.adjoint(x)) != x) {
                    note = "adjoint is not involutive";
                    return false;
                }
            }
            // sign law and adjointness of sigma
            QVec<B> v = smp.qvec(n, 2), w = smp.qvec(n, 2);
            if (pair.adjoint(pair.phi(v, w)) != -pair.phi(w, v)) {
                note = "sign law sigma(Phi(v,w)) = -Phi(w,v) failed";
                return false;
            }
            Mat<QuatK<B>> mm = smp.qmat(n, 2);
            QVec<B> mv(std::size_t(n), QuatK<B>::scalar(KElem<B>(0), desc));
            QVec<B> sw(std::size_t(n), QuatK<B>::scalar(KElem<B>(0), desc));
            for (int i = 0; i < n; ++i)
                for (int jc = 0; jc < n; ++jc) {
                    mv[std::size_t(i)] = mv[std::size_t(i)] + mm.at(i, jc) * v[std::size_t(jc)];
                    sw[std::size_t(i)] = sw[std::size_t(i)] + pair.adjoint(mm).at(i, jc) * w[std::size_t(jc)];
                }
            if (g.polar(mv, w) != g.polar(v, sw)) {
                note = "h(Mv, w) != h(v, sigma(M) w)";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_semitrace_definition(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed,
                                       int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("semitrace-matches-definition", "no division certificate");
    return run_check<B>("semitrace-matches-definition", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            if (!is_nonsingular_division(g)) continue;
            QuadraticPair<B> pair(g);
            // on skew tensors U (bar-transpose = -U), f(Phi(U)) = T_s(U)
            QVec<B> v = smp.qvec(n, 2), w = smp.qvec(n, 2);
            Mat<QuatK<B>> u = outer_bar(v, w, desc) - outer_bar(w, v, desc);
            if (pair.semitrace(pair.phi_from_tensor(u)) != pair.t_s(u)) {
                note = "matrix semitrace disagrees with T_s on a skew tensor";
                return false;
            }
            if constexpr (B::characteristic() == 0) {
                Mat<QuatK<B>> x = smp.qmat(n, 2);
                Mat<QuatK<B>> sym = x + pair.adjoint(x);
                B half = B(1, 2);
                if (pair.semitrace(sym) != half * end_trd(sym)) {
                    note = "half-trace rule failed";
                    return false;
                }
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_split_pair_compat(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed,
                                    int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("theta-carries-the-pair", "no division certificate");
    return run_check<B>("theta-carries-the-pair", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int rep = 0; rep < 3; ++rep) {
            int n = 1 + int(smp.next(2));
            GramForm<B> g = smp.gram(n, 1);
            if (!is_nonsingular_division(g)) continue;
            QuadraticPair<B> pair(g);
            SplitPair<B> sp(morita_gram(g), desc);
            for (int it = 0; it < samples; ++it) {
                Mat<QuatK<B>> x = smp.qmat(n, 1);
                Mat<QuatKt<B>> xkt(n, n, QuatKt<B>(0));
                for (int i = 0; i < n; ++i)
                    for (int jc = 0; jc < n; ++jc) xkt.at(i, jc) = to_kt_level(x.at(i, jc));
                Mat<QuatKt<B>> skt(n, n, QuatKt<B>(0));
                Mat<QuatK<B>> sx = pair.adjoint(x);
                for (int i = 0; i < n; ++i)
                    for (int jc = 0; jc < n; ++jc) skt.at(i, jc) = to_kt_level(sx.at(i, jc));
                if (sp.adjoint(theta(xkt, desc)) != theta(skt, desc)) {
                    note = "theta does not intertwine the involutions";
                    return false;
                }
                // semitrace agreement on symmetric elements
                Mat<QuatK<B>> sym = x + sx;
                Mat<QuatKt<B>> symkt(n, n, QuatKt<B>(0));
                for (int i = 0; i < n; ++i)
                    for (int jc = 0; jc < n; ++jc) symkt.at(i, jc) = to_kt_level(sym.at(i, jc));
                KtElem<B> split_val = sp.semitrace(theta(symkt, desc));
                KtElem<B> base_val(KElem<B>(pair.semitrace(sym)), desc);
                if (split_val != base_val) {
                    note = "semitrace disagrees across theta";
                    return false;
                }
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_pair_to_form_roundtrip(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed,
                                         int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("pair-to-form-roundtrip", "no division certificate");
    return run_check<B>("pair-to-form-roundtrip", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            GramForm<B> g = smp.gram(n, 2);
            if (!is_nonsingular_division(g)) continue;
            QuadraticPair<B> pair(g);
            auto basis = skew_sw_basis<B>(n, desc);
            std::vector<B> fvals;
            for (const auto& u : basis) fvals.push_back(pair.semitrace(pair.phi_from_tensor(u)));
            GramForm<B> rec = pair_to_form(g.h(), fvals, desc);
            if (!class_equal(rec, g) || rec.h() != g.h()) {
                note = "recovered class differs";
                return false;
            }
            // corrupting one semitrace value must be rejected
            std::vector<B> bad = fvals;
            std::size_t at = smp.next(bad.size());
            bad[at] = bad[at] + B(1);
            try {
                GramForm<B> r2 = pair_to_form(g.h(), bad, desc);
                if (class_equal(r2, g)) {
                    note = "corrupted values accepted and reproduced the class";
                    return false;
                }
                // a solution may exist for a different pair; verify it honestly
                QuadraticPair<B> p2(r2);
                for (std::size_t bi = 0; bi < basis.size(); ++bi)
                    if (p2.semitrace(p2.phi_from_tensor(basis[bi])) != bad[bi]) {
                        note = "corrupted solve returned inconsistent form";
                        return false;
                    }
            } catch (const Inconsistent&) {
                // expected
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_pair_isotropy(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("pair-isotropy-equivalence", "no division certificate");
    return run_check<B>("pair-isotropy-equivalence", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            auto [s, wit] = plant_isotropic(smp, n, 1);
            GramForm<B> g(s, desc);
            if (!is_nonsingular_division(g)) continue;
            QuadraticPair<B> pair(g);
            if (!pair_isotropy_check(pair, wit)) {
                note = "isotropic witness rejected by the pair conditions";
                return false;
            }
            QVec<B> u = smp.qvec_nonzero(n, 2);
            if (pair_isotropy_check(pair, u) != g.q_value(u).is_zero_class()) {
                note = "pair conditions disagree with the q-class test";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_degree_lemmas(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("degree-lemmas", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            // a(t^d eps, x t^e eps): bound d+e+1, strictness forces x into K
            int d = int(smp.next(4)), e = int(smp.next(4));
            QuatK<B> x = smp.quat(2);
            Laurent<B> td = Laurent<B>::t_pow(d, desc);
            Laurent<B> xe = act_on_ideal(x, Laurent<B>::t_pow(e, desc), desc);
            Laurent<B> a = alt_form(td, xe, desc);
            if (a.degree() != kDegNegInf && a.degree() > d + e + 1) {
                note = "degcomp bound violated";
                return false;
            }
            if ((a.degree() == kDegNegInf || a.degree() < d + e + 1) && !x.is_scalar()) {
                note = "degcomp strictness without x in K";
                return false;
            }
            if (a.iota() != a) {
                note = "a-value is not iota-fixed";
                return false;
            }

            // filtered-vector bounds
            int n = 1 + int(smp.next(2));
            GramForm<B> g = smp.gram(n, 2);
            int dlev = 1 + int(smp.next(3)), elev = 1 + int(smp.next(3));
            std::vector<QVec<B>> vlv, wlv;
            for (int i = 0; i < dlev; ++i) vlv.push_back(smp.qvec(n, 2));
            for (int i = 0; i < elev; ++i) wlv.push_back(smp.qvec(n, 2));
            FilteredVector<B> fv(vlv, n, desc), fw(wlv, n, desc);
            if (fv.is_zero() || fw.is_zero()) continue;
            int dd = fv.level() - 1, ee = fw.level() - 1;
            Laurent<B> bq = b_F(g, fv.laurent_coords(), fw.laurent_coords());
            Laurent<B> qv = q_F(g, fv);
            if (bq.degree() != kDegNegInf && bq.degree() > dd + ee + 1) {
                note = "b_q degree bound violated";
                return false;
            }
            if ((bq.degree() == kDegNegInf || bq.degree() < dd + ee + 1) &&
                !g.polar(fv.top(), fw.top()).is_scalar()) {
                note = "b_q strictness without h_s(v_d, w_e) in K";
                return false;
            }
            if (qv.degree() != kDegNegInf && qv.degree() > 2 * dd + 1) {
                note = "q degree bound violated";
                return false;
            }
            if ((qv.degree() == kDegNegInf || qv.degree() < 2 * dd + 1) && !g.eval(fv.top(), fv.top()).is_scalar()) {
                note = "q strictness without s(v_d, v_d) in K";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_coeff_roundtrip(const DescPtr<B>& desc, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    return run_check<B>("coefficient-conversion-roundtrip", desc, seed, samples,
                        [&](Sampler<B>& smp, std::string& note) {
                            for (int it = 0; it < samples; ++it) {
                                int n = 1 + int(smp.next(3));
                                GramForm<B> g = smp.gram(n, 1);
                                std::vector<QVec<B>> lv;
                                int levels = 1 + int(smp.next(3));
                                for (int i = 0; i < levels; ++i) lv.push_back(smp.qvec(n, 2));
                                FilteredVector<B> fv(lv, n, desc);
                                auto back = FilteredVector<B>::from_laurent_coords(fv.laurent_coords(), desc);
                                if (!(back == fv)) {
                                    note = "roundtrip through K-coefficients changed the vector";
                                    return false;
                                }
                                // q_F agrees between representations
                                if (KtElem<B>::from_laurent(q_F(g, fv)) != q_F(g, fv.morita())) {
                                    note = "q_F differs between filtered and fraction representations";
                                    return false;
                                }
                            }
                            return true;
                        });
}

template <class B>
CheckResult check_descent(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed, int samples) {
    using namespace selftestdetail;
    if (!cert.is_division()) return skip("descent-correctness", "no division certificate");
    return run_check<B>("descent-correctness", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < samples; ++it) {
            int n = 1 + int(smp.next(3));
            auto [s, wit] = plant_isotropic(smp, n, 1);
            GramForm<B> g(s, desc);
            MoritaVector<B> w;
            for (const auto& c : wit) w.push_back(act_on_ideal(to_kt_level(c), KtElem<B>(KElem<B>(1), desc)));
            Laurent<B> lam = smp.lambda_fixed(1, 1 + int(smp.next(3)));
            MoritaVector<B> wl;
            for (const auto& f : w) wl.push_back(f * KtElem<B>::from_laurent(lam));
            auto res = descend(g, wl, true);
            if (qvec_is_zero(res.v) || !g.q_value(res.v).is_zero_class()) {
                note = "descent output not isotropic";
                return false;
            }
            if (res.iterations > res.initial_level - 1) {
                note = "descent exceeded level bound";
                return false;
            }
            // corollary along the way: the top coefficient of an isotropic
            // vector has h_s(v_d, v_d) != 0 unless s(v_d, v_d) is in k
            FilteredVector<B> fv = FilteredVector<B>::from_laurent_coords(
                [&] {
                    std::vector<Laurent<B>> cs;
                    for (const auto& f : wl) cs.push_back(f.to_laurent());
                    return cs;
                }(),
                desc);
            if (!fv.is_zero() && !g.q_value(fv.top()).is_zero_class() && g.polar(fv.top(), fv.top()).is_zero()) {
                note = "corollary violated: h_s(v_d, v_d) = 0 with s(v_d, v_d) not in k";
                return false;
            }
        }
        return true;
    });
}

template <class B>
CheckResult check_oracle_agreement(const DescPtr<B>& desc, const Certificate<B>& cert, std::uint64_t seed,
                                   int samples) {
    using namespace selftestdetail;
    return run_check<B>("oracle-agreement", desc, seed, samples, [&](Sampler<B>& smp, std::string& note) {
        for (int it = 0; it < std::max(1, samples / 20); ++it) {
            int n = 1 + int(smp.next(2));
            auto [s, wit] = plant_isotropic(smp, n, 1);
            GramForm<B> g(s, desc);
            SearchBudget bud;
            bud.height = 1;
            bud.filtration = 1;
            bud.max_steps = 2000000;
            auto qres = search_isotropic_Q(g, cert.is_division(), bud);
            if (qres.witness) {
                MoritaVector<B> w;
                for (const auto& c : *qres.witness)
                    w.push_back(act_on_ideal(to_kt_level(c), KtElem<B>(KElem<B>(1), desc)));
                if (!q_F(g, w).is_zero()) {
                    note = "Q-witness does not extend to an isotropic split vector";
                    return false;
                }
            }
            auto fres = search_isotropic_F(g, bud);
            if (fres.witness && cert.is_division()) {
                auto dres = descend(g, fres.witness->morita(), true);
                if (!g.q_value(dres.v).is_zero_class()) {
                    note = "descend rejected an F-search witness";
                    return false;
                }
            }
            // serial and parallel oracles agree
            auto qs = search_isotropic_Q_serial(g, cert.is_division(), bud);
            if (qs.stats.steps != qres.stats.steps || bool(qs.witness) != bool(qres.witness) ||
                (qs.witness && !(*qs.witness == *qres.witness))) {
                note = "serial/parallel Q-search mismatch";
                return false;
            }
            auto fs = search_isotropic_F_serial(g, bud);
            if (fs.stats.steps != fres.stats.steps || bool(fs.witness) != bool(fres.witness) ||
                (fs.witness && !(fs.witness->levels() == fres.witness->levels()))) {
                note = "serial/parallel F-search mismatch";
                return false;
            }
        }
        return true;
    });
}

/// Full suite on one descriptor, used by the selftest command. The returned
/// report is deterministic in (instance, seed, samples).
template <class B>
std::vector<CheckResult> run_all_checks(const Instance<B>& inst) {
    const DescPtr<B>& desc = inst.desc;
    std::uint64_t seed = inst.opts.seed;
    int n_samp = inst.opts.samples;
    Certificate<B> cert = division_certificate(desc, std::max(2, inst.opts.height));

    std::vector<CheckResult> out;
    out.push_back(check_involution_tower(desc, seed + 1, n_samp));
    out.push_back(check_f_closure(desc, seed + 2, n_samp));
    out.push_back(check_decompose_roundtrip(desc, seed + 3, n_samp));
    out.push_back(check_clear_denominators(desc, seed + 4, n_samp));
    out.push_back(check_laurent_degree(desc, seed + 5, n_samp));
    out.push_back(check_quat_ring_axioms(desc, seed + 6, n_samp));
    out.push_back(check_reduced_ops(desc, seed + 7, n_samp));
    out.push_back(check_laurent_normal_form(desc, seed + 8, std::max(1, n_samp / 4)));
    out.push_back(check_division_nrd(desc, cert, seed + 9, n_samp));
    out.push_back(check_mat_inverse(desc, cert, seed + 10, std::max(1, n_samp / 10)));
    out.push_back(check_gq_form_laws(desc, seed + 11, std::max(1, n_samp / 2)));
    out.push_back(check_class_invariance(desc, seed + 12, std::max(1, n_samp / 4)));
    out.push_back(check_alt_form_defa(desc, cert, seed + 13, n_samp));
    out.push_back(check_ideal_action(desc, seed + 14, n_samp));
    out.push_back(check_polar_identity_F(desc, seed + 15, std::max(1, n_samp / 4)));
    out.push_back(check_nonsingularity_transfer(desc, cert, seed + 16, std::max(1, n_samp / 10)));
    out.push_back(check_isotropy_transfer(desc, seed + 17, std::max(1, n_samp / 10)));
    out.push_back(check_trace_identity(desc, seed + 18, std::max(1, n_samp / 4)));
    out.push_back(check_theta_homomorphism(desc, seed + 19, std::max(1, n_samp / 10)));
    out.push_back(check_commuting_square(desc, seed + 20, 2));
    out.push_back(check_pair_axioms(desc, cert, seed + 21, std::max(1, n_samp / 10)));
    out.push_back(check_semitrace_definition(desc, cert, seed + 22, std::max(1, n_samp / 4)));
    out.push_back(check_split_pair_compat(desc, cert, seed + 23, std::max(1, n_samp / 20)));
    out.push_back(check_pair_to_form_roundtrip(desc, cert, seed + 24, std::max(1, n_samp / 20)));
    out.push_back(check_pair_isotropy(desc, cert, seed + 25, std::max(1, n_samp / 10)));
    out.push_back(check_degree_lemmas(desc, seed + 26, n_samp));
    out.push_back(check_coeff_roundtrip(desc, seed + 27, std::max(1, n_samp / 4)));
    out.push_back(check_descent(desc, cert, seed + 28, std::max(1, n_samp / 10)));
    out.push_back(check_oracle_agreement(desc, cert, seed + 29, std::max(1, n_samp / 2)));
    return out;
}

} // namespace isoquat
