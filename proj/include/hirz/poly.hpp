#pragma once
// Graded sparse polynomials with y-polynomial coefficients, truncated power
// series operations, Newton identities.

#include "hirz/ypoly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hirz {

using Mono = std::vector<int>;

class Poly;

/// Optional normal-form map attached to a variable set (e.g. a quotient ring).
/// Must be homogeneous: it never changes the degree of a term.
class Reducer {
public:
    virtual ~Reducer() = default;
    virtual void reduce(Poly &p) const = 0;
};

class VarSet {
public:
    VarSet(std::vector<std::string> names, std::vector<int> weights,
           std::shared_ptr<const Reducer> reducer = nullptr);

    int size() const { return int(names_.size()); }
    const std::string &name(int i) const { return names_[i]; }
    int weight(int i) const { return weights_[i]; }
    int degree(const Mono &m) const;
    const Reducer *reducer() const { return reducer_.get(); }
    void set_reducer(std::shared_ptr<const Reducer> r) { reducer_ = std::move(r); }
    int index_of(const std::string &name) const; // -1 if absent

private:
    std::vector<std::string> names_;
    std::vector<int> weights_;
    std::shared_ptr<const Reducer> reducer_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> names, std::vector<int> weights = {});

constexpr int kUnbounded = -1;

/// Graded polynomial. Terms of weighted degree above the truncation bound are
/// discarded on insertion; zero coefficients are never stored.
class Poly {
public:
    using Terms = std::map<Mono, YPoly>;

    Poly() = default;
    explicit Poly(VarSetPtr vs, int trunc = kUnbounded) : vs_(std::move(vs)), trunc_(trunc) {}

    static Poly constant(VarSetPtr vs, const YPoly &c, int trunc = kUnbounded);
    static Poly variable(VarSetPtr vs, int i, int trunc = kUnbounded);
    static Poly monomial(VarSetPtr vs, const Mono &m, const YPoly &c, int trunc = kUnbounded);

    const VarSetPtr &vars() const { return vs_; }
    int trunc() const { return trunc_; }
    const Terms &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    void add_term(const Mono &m, const YPoly &c);
    YPoly coeff(const Mono &m) const;
    YPoly constant_term() const;

    int min_degree() const; // -1 for zero
    int max_degree() const;
    Poly homogeneous(int d) const;
    Poly truncated(int d) const;
    Poly with_trunc(int d) const; // relabel bound (drops terms above it)
    Poly eval_y(const YEval &ye) const;
    Poly operator-() const;

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const YPoly &s);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(Poly a, const YPoly &s) { return a *= s; }
    friend Poly operator*(const YPoly &s, Poly a) { return a *= s; }
    /// a += s * b, without a temporary
    void axpy(const YPoly &s, const Poly &b);

    friend bool operator==(const Poly &a, const Poly &b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

    /// Terms in canonical order: degree, then exponent vector (descending lex).
    std::vector<std::pair<Mono, YPoly>> sorted_terms() const;
    std::string str() const;
    std::string mono_str(const Mono &m) const;

    void normalize(); // apply the variable set's reducer, if any

private:
    VarSetPtr vs_;
    int trunc_ = kUnbounded;
    Terms t_;
};

inline int min_trunc(int a, int b)
{
    if (a == kUnbounded) return b;
    if (b == kUnbounded) return a;
    return a < b ? a : b;
}

// ---- truncated power series (graded by weighted degree; bound must be finite)

/// Inverse of s; the constant term must be a nonzero rational.
Poly series_inv(const Poly &s);
/// exp(s); s must have zero constant term.
Poly series_exp(const Poly &s);
/// log(s); s must have constant term 1.
Poly series_log(const Poly &s);

// ---- Newton identities and binomials

/// p_0..p_D from c_1..c_D (chern[0] is ignored and taken as 1) and p_0 = rank.
std::vector<Poly> newton_power_sums(const std::vector<Poly> &chern, long rank, int D,
                                    const VarSetPtr &vs);
/// c_0..c_D from p_1..p_D (p[0] ignored).
std::vector<Poly> chern_from_power_sums(const std::vector<Poly> &p, int D, const VarSetPtr &vs);

/// m(m-1)...(m-k+1)/k! for any integer m.
Rational generalized_binomial(long m, long k);

} // namespace hirz
