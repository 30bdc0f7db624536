#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "netid/errors.hpp"
#include "netid/polynomial.hpp"
#include "netid/rational.hpp"

namespace netid {

// Exact rational function num/den in z, kept canonical: den is monic,
// gcd(num, den) = 1, and the zero function is 0/1.
class RatFun {
  public:
    RatFun() : num_{}, den_{Rat(1)} {}
    RatFun(const Rat& c) : num_{c}, den_{Rat(1)} {}  // NOLINT(google-explicit-constructor)
    RatFun(long long c) : num_{Rat(c)}, den_{Rat(1)} {}  // NOLINT(google-explicit-constructor)
    RatFun(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        canonicalize();
    }
    RatFun(const Polynomial& num) : num_(num), den_{Rat(1)} {}  // NOLINT(google-explicit-constructor)

    static RatFun z() { return RatFun(Polynomial::monomial(1)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    // proper: deg num <= deg den, strictly proper: deg num < deg den.
    bool is_proper() const { return is_zero() || num_.degree() <= den_.degree(); }
    bool is_strictly_proper() const { return is_zero() || num_.degree() < den_.degree(); }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    friend RatFun operator-(const RatFun& a) {
        RatFun r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        // Denominators are monic and reduced; split off the common factor to
        // keep intermediate degrees down.
        Polynomial g = Polynomial::gcd(a.den_, b.den_);
        Polynomial da = Polynomial::divexact(a.den_, g);
        Polynomial db = Polynomial::divexact(b.den_, g);
        return RatFun(a.num_ * db + b.num_ * da, da * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun{};
        Polynomial g1 = Polynomial::gcd(a.num_, b.den_);
        Polynomial g2 = Polynomial::gcd(b.num_, a.den_);
        return RatFun(Polynomial::divexact(a.num_, g1) * Polynomial::divexact(b.num_, g2),
                      Polynomial::divexact(a.den_, g2) * Polynomial::divexact(b.den_, g1));
    }

    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DivisionByZero("rational function division");
        return a * RatFun(b.den_, b.num_);
    }

    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    // Exact value at z = x, or nullopt if x is a pole.
    std::optional<Rat> eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d == 0) return std::nullopt;
        return num_.eval(x) / d;
    }

    // Entrywise limit as z -> infinity: 0 if strictly proper, ratio of
    // leading coefficients if biproper; ImproperEntry otherwise.
    Rat limit_at_infinity() const {
        if (is_zero()) return Rat(0);
        if (num_.degree() > den_.degree())
            throw ImproperEntry("limit at infinity of " + str());
        if (num_.degree() < den_.degree()) return Rat(0);
        return num_.leading() / den_.leading();
    }

    std::string str() const {
        if (den_ == Polynomial(Rat(1))) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void canonicalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = Polynomial(Rat(1));
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial::divexact(num_, g);
            den_ = Polynomial::divexact(den_, g);
        }
        Rat lead = den_.leading();
        if (lead != 1) {
            den_ = den_.make_monic();
            std::vector<Rat> scaled = num_.coeffs();
            for (auto& c : scaled) c /= lead;
            num_ = Polynomial::from_coeffs(std::move(scaled));
        }
    }

    Polynomial num_;
    Polynomial den_;
};

// --- fixture literal parser -------------------------------------------------
//
// Grammar for literals such as "(2*z+1)/(z^2-3)" or "-1/2":
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* primary ('^' uint)?
//   primary:= 'z' | integer | '(' expr ')'
// All arithmetic is evaluated exactly in the field of rational functions.

namespace detail {

class LiteralParser {
  public:
    explicit LiteralParser(std::string_view text) : text_(text) {}

    RatFun parse() {
        RatFun v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected trailing input in rational literal at offset " +
                              std::to_string(pos_));
        return v;
    }

  private:
    RatFun expr() {
        RatFun v = term();
        for (;;) {
            skip_ws();
            if (consume('+')) v += term();
            else if (consume('-')) v -= term();
            else return v;
        }
    }

    RatFun term() {
        RatFun v = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) v *= factor();
            else if (consume('/')) v /= factor();
            else return v;
        }
    }

    RatFun factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') neg ^= (text_[pos_++] == '-');
        RatFun v = primary();
        skip_ws();
        if (consume('^')) {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected nonnegative integer exponent");
            int e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (text_[pos_++] - '0');
                if (e > kDegreeCap)
                    throw SizeLimit("literal exponent exceeds degree cap");
            }
            RatFun base = v;
            v = RatFun(Rat(1));
            for (int i = 0; i < e; ++i) v *= base;
        }
        return neg ? -v : v;
    }

    RatFun primary() {
        skip_ws();
        char c = peek();
        if (c == 'z') {
            ++pos_;
            return RatFun::z();
        }
        if (c == '(') {
            ++pos_;
            RatFun v = expr();
            skip_ws();
            if (!consume(')')) throw SyntaxError("missing ')' in rational literal");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return RatFun(Rat(Int(std::string(text_.substr(start, pos_ - start)))));
        }
        throw SyntaxError(std::string("unexpected character '") + (c ? std::string(1, c) : "<eof>") +
                          "' in rational literal");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFun parse_ratfun(std::string_view text) { return detail::LiteralParser(text).parse(); }

}  // namespace netid
