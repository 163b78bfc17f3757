#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

namespace isoquat {

/// Dense univariate polynomial over a field F.
/// Coefficients are stored low-to-high with no trailing zeros; zero is the
/// empty coefficient list with degree() == -1.
template <class F>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(F c) { // constant
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial x(F one = F(1)) {
        Polynomial p;
        p.c_ = {F(0), std::move(one)};
        return p;
    }

    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    F coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[std::size_t(i)] : F(0); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& leading() const {
        assert(!c_.empty());
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<F> r(std::max(c_.size(), o.c_.size()), F(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Polynomial(std::move(r));
    }
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
    Polynomial operator-() const {
        std::vector<F> r = c_;
        for (auto& x : r) x = -x;
        Polynomial p;
        p.c_ = std::move(r);
        return p;
    }
    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<F> r(c_.size() + o.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }
    Polynomial operator*(const F& s) const {
        if (s.is_zero()) return {};
        std::vector<F> r = c_;
        for (auto& x : r) x = x * s;
        return Polynomial(std::move(r));
    }

    bool operator==(const Polynomial& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Euclidean division: *this == q * div + r with deg r < deg div.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& div) const {
        assert(!div.is_zero());
        Polynomial q, r = *this;
        F lead_inv = div.leading().inverse();
        while (!r.is_zero() && r.degree() >= div.degree()) {
            int shift = r.degree() - div.degree();
            F factor = r.leading() * lead_inv;
            std::vector<F> qc(std::size_t(shift) + 1, F(0));
            qc.back() = factor;
            Polynomial term(std::move(qc));
            q = q + term;
            r = r - term * div;
        }
        return {q, r};
    }

    Polynomial shifted(int k) const { // multiply by x^k, k >= 0
        if (is_zero() || k == 0) return *this;
        std::vector<F> r(std::size_t(k), F(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return Polynomial(std::move(r));
    }

    Polynomial monic() const {
        if (is_zero() || is_monic()) return *this;
        return *this * leading().inverse();
    }

    std::string str(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            F c = coeff(i);
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (i == 0 || !c.is_one()) out += c.str();
            if (i > 0) {
                if (!c.is_one()) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial<F>(F(1));
    // Monic remainders keep coefficient heights polynomial over fraction
    // fields; plain Euclid blows up exponentially.
    a = a.monic();
    while (!b.is_zero()) {
        b = b.monic();
        auto [q, r] = a.divmod(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Largest k with x^k dividing p (p nonzero).
template <class F>
int trailing_valuation(const Polynomial<F>& p) {
    int v = 0;
    while (v <= p.degree() && p.coeff(v).is_zero()) ++v;
    return v;
}

/// Quotient by x^k, assuming divisibility.
template <class F>
Polynomial<F> shifted_down(const Polynomial<F>& p, int k) {
    if (k == 0 || p.is_zero()) return p;
    std::vector<F> c;
    for (int i = k; i <= p.degree(); ++i) c.push_back(p.coeff(i));
    return Polynomial<F>(std::move(c));
}

/// True when p = c * x^k.
template <class F>
bool is_monomial(const Polynomial<F>& p) {
    for (int i = 0; i < p.degree(); ++i)
        if (!p.coeff(i).is_zero()) return false;
    return !p.is_zero();
}

} // namespace isoquat
