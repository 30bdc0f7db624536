#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netid/config.hpp"
#include "netid/errors.hpp"
#include "netid/rational.hpp"

namespace netid {

// Dense univariate polynomial in z over the exact rationals.
// Coefficients are stored by ascending degree with no trailing zeros;
// the zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(const Rat& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) coeffs_.push_back(c);
    }
    Polynomial(long long c) : Polynomial(Rat(c)) {}  // NOLINT(google-explicit-constructor)

    static Polynomial from_coeffs(std::vector<Rat> ascending) {
        Polynomial p;
        p.coeffs_ = std::move(ascending);
        p.trim();
        p.check_degree();
        return p;
    }

    // z^k
    static Polynomial monomial(int k, const Rat& c = Rat(1)) {
        if (k < 0) throw PreconditionError("monomial exponent must be nonnegative");
        Polynomial p;
        if (c != 0) {
            p.coeffs_.assign(static_cast<std::size_t>(k) + 1, Rat(0));
            p.coeffs_.back() = c;
        }
        p.check_degree();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rat& coeff(int k) const {
        static const Rat zero{0};
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
        return coeffs_[static_cast<std::size_t>(k)];
    }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    const Rat& leading() const {
        if (is_zero()) throw PreconditionError("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    bool is_monic() const { return !is_zero() && leading() == 1; }

    Rat eval(const Rat& x) const {
        Rat acc{0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        r.trim();
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial{};
        Polynomial r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        r.trim();
        r.check_degree();
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    // Euclidean division over the rationals: a = q*b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division");
        Polynomial rem = a;
        Polynomial quot;
        if (a.degree() >= b.degree())
            quot.coeffs_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
        const Rat& lead = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int shift = rem.degree() - b.degree();
            Rat f = rem.leading() / lead;
            quot.coeffs_[static_cast<std::size_t>(shift)] = f;
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
                rem.coeffs_[static_cast<std::size_t>(shift) + i] -= f * b.coeffs_[i];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    // Division known to be exact; bails out if a remainder shows up.
    static Polynomial divexact(const Polynomial& a, const Polynomial& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error("internal: inexact polynomial division");
        return q;
    }

    // Monic gcd; gcd(0, 0) = 0.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.make_monic();
    }

    Polynomial make_monic() const {
        if (is_zero()) throw PreconditionError("cannot normalize zero polynomial to monic");
        Polynomial r = *this;
        const Rat lead = r.leading();
        for (auto& c : r.coeffs_) c /= lead;
        return r;
    }

    // Renders by descending degree: "2*z^2 - z + 1/3". Reparses under the
    // fixture literal grammar.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rat& c = coeff(k);
            if (c == 0) continue;
            Rat mag = c < 0 ? Rat(-c) : c;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            bool unit = (mag == 1) && k > 0;
            if (!unit) out += to_string(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += "z";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    void check_degree() const {
        if (degree() > kDegreeCap)
            throw SizeLimit("polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                            std::to_string(kDegreeCap));
    }

    std::vector<Rat> coeffs_;
};

}  // namespace netid
