#pragma once
// Q_y series, raising-operator series, twisted classes T_y(R (x) E), theta
// polynomials and the application step c(i)_m <- R_i-shifted indices.

#include "hirz/poly.hpp"

#include <map>
#include <vector>

namespace hirz {

/// Coefficients of Q_y(a) = a(1+y)/(1-exp(-a(1+y))) - a*y up to a^D.
std::vector<YPoly> qy_series(int D);
/// Coefficients of log Q_y(a) up to a^D (index 0 is zero).
std::vector<YPoly> qy_log_series(int D);

/// One slot of an operator expression: virtual rank and c_0..c_D.
/// chern[0] is 1; indices past the end read as zero.
struct EntrySpec {
    long rank = 0;
    std::vector<Poly> chern;

    Poly c(int m, const VarSetPtr &vs, int D) const;
};

/// Power series in a single raising operator R with coefficients in a model
/// ring: c[k] is the coefficient of R^k, truncated so that k + deg <= D.
struct RSeries {
    VarSetPtr vs;
    int D = 0;
    std::vector<Poly> c;

    static RSeries one(const VarSetPtr &vs, int D);
    RSeries operator*(const RSeries &o) const;
    RSeries inverse() const;
    RSeries eval_y(const YEval &ye) const;
    bool operator==(const RSeries &o) const { return c == o.c; }
};

/// T_y(R (x) E) assembled from power sums; inverse=true gives 1/T_y(R (x) E).
RSeries ty_twist(const EntrySpec &e, int D, const YEval &ye, bool inverse = false);
/// c(E (x) L) = sum_m c_m(E) (1+R)^{e-m}  (the y = -1 form).
RSeries virtual_chern_twisted(const EntrySpec &e, int D);

/// Scalar operators: polynomials in R_1..R_s (variable set "R1".."Rs").
VarSetPtr r_varset(int slots);
/// Q_y(sum m_i R_i) for a linear form given as (slot, multiplicity) pairs.
Poly ty_linear(const std::vector<std::pair<int, int>> &expr, int slots, int D, const YEval &ye);
/// log Q_y(sum m_i R_i).
Poly ty_linear_log(const std::vector<std::pair<int, int>> &expr, int slots, int D,
                   const YEval &ye);

/// Finite Laurent expansion of the theta operator: exponent vectors (sum 0)
/// with integer coefficients. `slack` is the largest total raising that other
/// factors may still apply; terms that can never be rescued are dropped.
using ThetaTerms = std::map<std::vector<int>, Rational>;
ThetaTerms theta_operator(const std::vector<int> &lambda, const std::vector<int> &rho, int slack);

/// General operator series: Laurent exponents in R_1..R_s, model coefficients.
struct OperatorSeries {
    int slots = 0;
    std::map<std::vector<int>, Poly> terms;

    static OperatorSeries identity(int slots, const VarSetPtr &vs, int D);
    static OperatorSeries from_scalar(const Poly &r_poly, const VarSetPtr &vs, int D);
    static OperatorSeries from_theta(const ThetaTerms &t, const VarSetPtr &vs, int D);
    static OperatorSeries from_rseries(const RSeries &r, int slot, int slots);
    OperatorSeries operator*(const OperatorSeries &o) const;
};

/// Sum over terms (a, coeff) of coeff * prod_i c(i)_{base_i + a_i};
/// c(i)_m = 0 for m < 0 and c(i)_0 = 1. Result truncated at D.
Poly apply_operator(const OperatorSeries &op, const std::vector<int> &base,
                    const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D);

/// Fast path for operators of the form (scalar in R) * theta * prod_i W_i(R_i):
/// `offsets` holds the combined scalar*theta exponents, W the per-slot series.
Poly apply_factored(const std::map<std::vector<int>, YPoly> &offsets,
                    const std::vector<int> &base, const std::vector<RSeries> &W,
                    const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D);

/// Combine a scalar R-polynomial with theta terms into offset vectors.
std::map<std::vector<int>, YPoly> combine_offsets(const Poly &scalar, const ThetaTerms &theta,
                                                  const std::vector<int> &base, int D);

/// scalar(R) * theta(lambda, rho) * prod_i W_i(R_i), applied at base lambda.
/// `scalar` lives in r_varset(s); its R-degree only matters up to D - |lambda|.
Poly apply_theta_operator(const Poly &scalar, const std::vector<int> &lambda,
                          const std::vector<int> &rho, const std::vector<RSeries> &W,
                          const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D);

/// Pure theta polynomial applied to entries.
Poly theta_polynomial(const std::vector<int> &lambda, const std::vector<int> &rho,
                      const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D);
/// Schur Pfaffian via Pfaffian expansion of two-slot thetas (odd length padded).
Poly pfaffian_theta(const std::vector<int> &lambda, const std::vector<EntrySpec> &entries,
                    const VarSetPtr &vs, int D);
/// Schur determinant, theta with rho = 0.
Poly schur_det_theta(const std::vector<int> &lambda, const std::vector<EntrySpec> &entries,
                     const VarSetPtr &vs, int D);

} // namespace hirz
