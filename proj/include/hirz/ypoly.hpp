#pragma once
// Exact rationals (GMP) and univariate polynomials in the formal variable y.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace hirz {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den", always with a denominator.
std::string to_fraction_string(const Rational &q);
Rational parse_rational(const std::string &s);

/// Polynomial in y with rational coefficients; c_[k] is the coefficient of y^k.
/// Trailing zeros are never stored, so the zero polynomial is empty.
class YPoly {
public:
    YPoly() = default;
    YPoly(const Rational &c);
    YPoly(long c) : YPoly(Rational(c)) {}
    YPoly(std::initializer_list<Rational> cs);
    explicit YPoly(std::vector<Rational> cs);

    static YPoly y() { return YPoly{0, 1}; }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return int(c_.size()) - 1; }
    Rational coeff(int k) const;
    Rational constant() const { return coeff(0); }
    const std::vector<Rational> &coeffs() const { return c_; }

    Rational eval(const Rational &y) const;

    YPoly &operator+=(const YPoly &o);
    YPoly &operator-=(const YPoly &o);
    YPoly &operator*=(const Rational &s);
    /// this += a * b without temporaries
    YPoly &add_mul(const YPoly &a, const YPoly &b);
    YPoly operator-() const;
    friend YPoly operator+(YPoly a, const YPoly &b) { return a += b; }
    friend YPoly operator-(YPoly a, const YPoly &b) { return a -= b; }
    friend YPoly operator*(const YPoly &a, const YPoly &b);
    friend YPoly operator*(YPoly a, const Rational &s) { return a *= s; }
    friend YPoly operator*(const Rational &s, YPoly a) { return a *= s; }
    friend bool operator==(const YPoly &a, const YPoly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const YPoly &a, const YPoly &b) { return !(a == b); }

    YPoly pow(unsigned k) const;

    // human form, e.g. "1 - 2*y + y^2"
    std::string str() const;
    std::vector<std::string> fraction_strings() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// A y-evaluation policy: either keep y symbolic or substitute a rational.
struct YEval {
    bool fixed = false;
    Rational value;

    static YEval generic() { return {}; }
    static YEval at(const Rational &v) { return {true, v}; }
    YPoly operator()(const YPoly &p) const { return fixed ? YPoly(p.eval(value)) : p; }
};

} // namespace hirz
