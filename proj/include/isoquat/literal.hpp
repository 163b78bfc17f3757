#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "isoquat/quaternion.hpp"

namespace isoquat {

/// Recursive-descent parser for the scalar literal grammar. Every literal is
/// evaluated in Q(K(t)) and then coerced down to the level the caller
/// expects, so one grammar serves base scalars, K, K(t), quaternions and
/// matrices. Symbols: `l` (K generator), `j`, `t`, and `s` in
/// characteristic 2; exponents are integers, negative allowed.
template <class B>
class LiteralParser {
public:
    LiteralParser(std::string text, DescPtr<B> desc, int line = 1)
        : text_(std::move(text)), desc_(std::move(desc)), line_(line) {
        tokenize();
    }

    QuatKt<B> parse_value() {
        QuatKt<B> v = expr();
        expect(TokKind::End, "trailing input after expression");
        return v;
    }

    B parse_base() { return to_base(parse_value()); }
    KElem<B> parse_k() { return to_k(parse_value()); }
    KtElem<B> parse_kt() { return to_kt(parse_value()); }
    QuatK<B> parse_quat() { return to_quat_const(parse_value()); }

    std::vector<KtElem<B>> parse_kt_vector() {
        expect(TokKind::LBracket, "expected '['");
        std::vector<KtElem<B>> out;
        if (peek().kind != TokKind::RBracket)
            for (;;) {
                out.push_back(to_kt(expr()));
                if (peek().kind == TokKind::Comma) {
                    ++pos_;
                    continue;
                }
                break;
            }
        expect(TokKind::RBracket, "expected ']' or ','");
        expect(TokKind::End, "trailing input after vector");
        return out;
    }

    Mat<QuatK<B>> parse_quat_matrix() {
        expect(TokKind::LBracket, "expected '['");
        std::vector<std::vector<QuatK<B>>> rows;
        for (;;) {
            expect(TokKind::LBracket, "expected '[' starting a row");
            std::vector<QuatK<B>> row;
            if (peek().kind != TokKind::RBracket)
                for (;;) {
                    row.push_back(to_quat_const(expr()));
                    if (peek().kind == TokKind::Comma) {
                        ++pos_;
                        continue;
                    }
                    break;
                }
            expect(TokKind::RBracket, "expected ']' or ',' in a row");
            rows.push_back(std::move(row));
            if (peek().kind == TokKind::Comma) {
                ++pos_;
                continue;
            }
            break;
        }
        expect(TokKind::RBracket, "expected ']' or ',' after rows");
        expect(TokKind::End, "trailing input after matrix");
        int n = int(rows.size());
        for (const auto& r : rows)
            if (int(r.size()) != n) fail("matrix must be square");
        if (n == 0) fail("matrix must be nonempty");
        Mat<QuatK<B>> m(n, n, QuatK<B>::scalar(KElem<B>(0), desc_));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rows[std::size_t(i)][std::size_t(j)];
        return m;
    }

private:
    enum class TokKind { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };
    struct Tok {
        TokKind kind;
        std::string text;
        int line, col;
    };

    [[noreturn]] void fail(const std::string& msg) const {
        const Tok& t = toks_[std::min(pos_, toks_.size() - 1)];
        throw ParseError(t.line, t.col, msg);
    }

    void tokenize() {
        int col = 1, line = line_;
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            int tcol = col;
            auto push = [&](TokKind k, std::string s) { toks_.push_back({k, std::move(s), line, tcol}); };
            if (c == '\n') {
                ++line;
                col = 1;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num;
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
                    num += text_[i++];
                    ++col;
                }
                push(TokKind::Int, num);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string name;
                while (i < text_.size() && std::isalnum(static_cast<unsigned char>(text_[i]))) {
                    name += text_[i++];
                    ++col;
                }
                push(TokKind::Name, name);
                continue;
            }
            switch (c) {
                case '+': push(TokKind::Plus, "+"); break;
                case '-': push(TokKind::Minus, "-"); break;
                case '*': push(TokKind::Star, "*"); break;
                case '/': push(TokKind::Slash, "/"); break;
                case '^': push(TokKind::Caret, "^"); break;
                case '(': push(TokKind::LParen, "("); break;
                case ')': push(TokKind::RParen, ")"); break;
                case '[': push(TokKind::LBracket, "["); break;
                case ']': push(TokKind::RBracket, "]"); break;
                case ',': push(TokKind::Comma, ","); break;
                default: toks_.push_back({TokKind::End, std::string(1, c), line, tcol}); fail("unexpected character");
            }
            ++col;
            ++i;
        }
        toks_.push_back({TokKind::End, "", line, col});
    }

    const Tok& peek() const { return toks_[pos_]; }
    void expect(TokKind k, const std::string& msg) {
        if (peek().kind != k) fail(msg);
        ++pos_;
    }

    QuatKt<B> expr() {
        QuatKt<B> v = term();
        for (;;) {
            if (peek().kind == TokKind::Plus) {
                ++pos_;
                v = v + term();
            } else if (peek().kind == TokKind::Minus) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    QuatKt<B> term() {
        QuatKt<B> v = factor();
        for (;;) {
            if (peek().kind == TokKind::Star) {
                ++pos_;
                v = v * factor();
            } else if (peek().kind == TokKind::Slash) {
                ++pos_;
                QuatKt<B> d = factor();
                if (d.is_zero() || d.nrd().is_zero()) fail("division by a non-invertible element");
                v = v * d.inverse();
            } else {
                return v;
            }
        }
    }

    QuatKt<B> factor() {
        if (peek().kind == TokKind::Minus) {
            ++pos_;
            return -factor();
        }
        return power();
    }

    QuatKt<B> power() {
        QuatKt<B> v = atom();
        if (peek().kind != TokKind::Caret) return v;
        ++pos_;
        long e = exponent();
        if (e < 0) {
            if (v.is_zero() || v.nrd().is_zero()) fail("negative power of a non-invertible element");
            v = v.inverse();
            e = -e;
        }
        QuatKt<B> r(1);
        for (long i = 0; i < e; ++i) r = r * v;
        return r;
    }

    long exponent() {
        bool neg = false, paren = false;
        if (peek().kind == TokKind::LParen) {
            paren = true;
            ++pos_;
        }
        if (peek().kind == TokKind::Minus) {
            neg = true;
            ++pos_;
        }
        if (peek().kind != TokKind::Int) fail("exponent must be an integer");
        if (peek().text.size() > 4) fail("exponent too large");
        long e = std::stol(peek().text);
        ++pos_;
        if (paren) expect(TokKind::RParen, "expected ')' closing exponent");
        return neg ? -e : e;
    }

    QuatKt<B> atom() {
        const Tok& t = peek();
        switch (t.kind) {
            case TokKind::Int: {
                if (t.text.size() > 18) fail("integer literal too large");
                long v = std::stol(t.text);
                ++pos_;
                return QuatKt<B>(v);
            }
            case TokKind::Name: {
                ++pos_;
                if ((t.text == "l" || t.text == "j" || t.text == "t") && !desc_) {
                    --pos_;
                    fail("symbol '" + t.text + "' is not available in a base-field literal");
                }
                if (t.text == "l") return QuatKt<B>(KtElem<B>::l(desc_), KtElem<B>(KElem<B>(0), desc_), desc_);
                if (t.text == "j") return QuatKt<B>::j(desc_);
                if (t.text == "t") return QuatKt<B>(KtElem<B>::t(desc_), KtElem<B>(KElem<B>(0), desc_), desc_);
                if (t.text == "s") {
                    if constexpr (B::characteristic() == 0) {
                        --pos_;
                        fail("symbol 's' is only available in positive characteristic");
                    } else {
                        return QuatKt<B>(KtElem<B>(KElem<B>(B::s()), desc_), KtElem<B>(KElem<B>(0), desc_), desc_);
                    }
                }
                --pos_;
                fail("unknown symbol '" + t.text + "'");
            }
            case TokKind::LParen: {
                ++pos_;
                QuatKt<B> v = expr();
                expect(TokKind::RParen, "expected ')'");
                return v;
            }
            default: fail("expected a value");
        }
    }

    B to_base(const QuatKt<B>& v) {
        KElem<B> k = to_k(v);
        if (!k.in_k()) fail("literal must lie in the base field (no 'l')");
        return k.re();
    }
    KElem<B> to_k(const QuatKt<B>& v) {
        KtElem<B> f = to_kt(v);
        if (!f.is_constant()) fail("literal must be constant in t");
        return f.constant();
    }
    KtElem<B> to_kt(const QuatKt<B>& v) {
        if (!v.x1().is_zero()) fail("literal must not involve 'j'");
        return v.x0();
    }
    QuatK<B> to_quat_const(const QuatKt<B>& v) {
        if (!(v.x0().is_constant() && v.x1().is_constant())) fail("quaternion literal must be constant in t");
        return QuatK<B>(v.x0().constant(), v.x1().constant(), desc_);
    }

    std::string text_;
    DescPtr<B> desc_;
    int line_;
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

} // namespace isoquat
