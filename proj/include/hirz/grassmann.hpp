#pragma once
// Cohomology of LG(n,2n) and OG(n,2n+1) inside the ring of Schur
// Q-functions, presented by its odd generators q_1, q_3, q_5, ... (weighted
// by degree): Schubert-basis conversion, ambient T_y / CSM classes, chi_y,
// and Schubert-variety classes from the locus formulas.

#include "hirz/strata.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace hirz {

enum class Space { LG, OG };
Space space_from_string(const std::string &s);
const char *space_name(Space s);

/// Finitely supported map strict partition -> y-polynomial. LG classes are
/// Q_mu, OG classes are P_mu = 2^{-l(mu)} Q_mu.
struct SchubertClass {
    Space space = Space::LG;
    int n = 0;
    std::map<Partition, YPoly> coeffs;

    YPoly coeff(const Partition &mu) const;
    /// terms ordered by |mu|, then lexicographically
    std::vector<std::pair<Partition, YPoly>> sorted() const;
    bool operator==(const SchubertClass &o) const
    {
        return space == o.space && n == o.n && coeffs == o.coeffs;
    }
};

Partition staircase(int n);

class GrassmannModel : public Model {
public:
    /// cache_dir: optional directory for Q-function tables
    GrassmannModel(Space space, int n, std::optional<std::string> cache_dir = std::nullopt);

    Space space() const { return space_; }
    int n() const { return n_; }
    VarSetPtr ring() const override { return vs_; }
    int dimension() const override { return n_ * (n_ + 1) / 2; }
    std::string name() const override;
    /// every slot carries c(S^v) = sum_k q_k
    std::vector<EntrySpec> locus_entries(const LocusSpec &spec, int D) const override;
    Poly ty_ambient(int D, const YEval &ye) const override;
    /// c(T_X) as prod (1 + root), assembled from power sums independently of ty_ambient
    Poly csm_ambient() const;

    /// q_k; odd k are the ring variables, even k follow from
    /// sum_i (-1)^i q_i q_{k-i} = 0
    const Poly &q(int k) const;
    /// Q_mu (Pfaffian of the two-row values)
    Poly qfun(const Partition &mu) const;
    /// Solves degree by degree against the Q_mu; Q_mu with mu_1 > n vanish.
    SchubertClass to_basis(const Poly &f) const;
    Poly from_basis(const SchubertClass &c) const;
    /// integral: coefficient of the point class
    YPoly integrate(const Poly &f) const;

private:
    std::vector<Poly> tangent_power_sums(int D) const;
    struct DegreeBasis {
        std::vector<Partition> parts; // strict partitions of d
        std::vector<Mono> monos;      // odd-generator monomials of degree d
        std::vector<std::vector<Rational>> inv; // inv[mu][mono]
    };
    const DegreeBasis &degree_basis(int d) const;

    Space space_;
    int n_;
    VarSetPtr vs_;
    std::vector<Poly> q_;
    Poly zero_;
    std::optional<std::string> cache_dir_;
    mutable std::mutex mu_;
    mutable std::map<Partition, Poly> qcache_;
    mutable bool cache_dirty_ = false;
    mutable std::map<int, DegreeBasis> bases_;
    void load_cache();

public:
    void save_cache() const;
    ~GrassmannModel() override;
};

/// Schubert variety X_lambda (lambda strict, parts <= n) as the locus with
/// p = 1, q = lambda; uncapped and capped classes in the Schubert basis.
struct SchubertResult {
    SchubertClass uncapped, capped;
    std::vector<std::pair<LocusSpec, YPoly>> strata_coefficients;
    std::vector<std::string> diagnostics;
};
SchubertResult schubert_class(const GrassmannModel &m, const Partition &lambda, const YEval &ye);
/// y = -1
SchubertResult schubert_csm(const GrassmannModel &m, const Partition &lambda);

/// Substitutes q_k -> Q_k(x_1..x_vars); used to check classes against
/// explicit symmetric functions.
Poly x_realization(const Poly &f, int vars);

/// chi_y of the whole space by integrating T_y
YPoly chi_y(const GrassmannModel &m);

} // namespace hirz
