#pragma once
// Degeneracy-locus input data (n, p, q), the partition lambda(p,q), rho, and
// the resolution-class formulas for the isotropic (C) and odd orthogonal (B)
// families.

#include "hirz/raising.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hirz {

using Partition = std::vector<int>;

bool is_partition(const std::vector<int> &v); // weakly decreasing, positive parts
bool is_strict(const Partition &l);
/// l_i > l_{i+1} whenever l_i > k
bool is_k_strict(const Partition &l, int k);
/// l_j + rho_j non-increasing
bool is_rho_strict(const Partition &l, const std::vector<int> &rho);
int size_of(const Partition &l);
std::string partition_str(const Partition &l);

enum class Family { B, C };
Family family_from_string(const std::string &s);
const char *family_name(Family f);

/// rho_i = #{j < i : q_j >= 1 - q_i}
std::vector<int> rho_of(const std::vector<int> &q);

struct LocusSpec {
    Family family = Family::C;
    int n = 0, p = 0;
    std::vector<int> q;
    // derived
    int a = 0; // number of positive q_i
    std::vector<int> rho;
    Partition lambda;

    int s() const { return int(q.size()); }
    /// Validates and fills the derived fields; throws InvalidSpec.
    static LocusSpec make(Family f, int n, int p, std::vector<int> q);
    /// virtual rank of the slot-i bundle (1-based)
    long entry_rank(int i) const;
    /// true when the extra factor T_y(2R_s) is present (family C, s = n+1-p)
    bool maximal_length() const { return family == Family::C && s() == n + 1 - p; }
    bool operator==(const LocusSpec &o) const
    {
        return family == o.family && n == o.n && p == o.p && q == o.q;
    }
};

Partition lambda_of(const LocusSpec &spec);

/// A concrete or abstract setting in which the locus bundles have Chern data.
class Model {
public:
    virtual ~Model() = default;
    virtual VarSetPtr ring() const = 0;
    /// dimension of the ambient space, or -1 in abstract mode
    virtual int dimension() const { return -1; }
    virtual std::string name() const = 0;
    /// Chern data of V - F_{q_i} - U (minus M in the odd case) per slot
    virtual std::vector<EntrySpec> locus_entries(const LocusSpec &spec, int D) const = 0;
    /// T_y of the ambient space, truncated at D; abstract models throw.
    virtual Poly ty_ambient(int D, const YEval &ye) const;
};

/// Inert symbols. Slot keying names them c(i)_m; flag keying names them
/// c<q>_m after the flag index q, so that classes of different loci share
/// variables.
class AbstractModel : public Model {
public:
    static std::shared_ptr<AbstractModel> by_slot(int slots, int D);
    static std::shared_ptr<AbstractModel> by_flag(std::vector<int> flags, int D);

    VarSetPtr ring() const override { return vs_; }
    std::string name() const override { return "abstract"; }
    std::vector<EntrySpec> locus_entries(const LocusSpec &spec, int D) const override;
    int truncation() const { return D_; }

private:
    bool by_flag_ = false;
    std::vector<int> keys_;
    int D_ = 0;
    VarSetPtr vs_;
};

/// Scalar R-prefactor of the resolution formula (everything except the
/// entry twists and theta), as a polynomial in R_1..R_s truncated at `deg`.
Poly resolution_prefactor(const LocusSpec &spec, int deg, const YEval &ye);

struct ClassOptions {
    YEval ye = YEval::generic();
    bool cap = false; // multiply by the model's T_y(X)
    bool literal_weights = false; // strata weights (-y)^kbar instead of fiber chi_y
};

/// Push-forward of T_y of the resolution; truncated at D.
Poly resolution_class(const LocusSpec &spec, const Model &model, int D,
                      const ClassOptions &opt = {});
/// The y = -1 class assembled independently from (1 + R) factors and
/// twisted total Chern classes.
Poly csm_resolution_class(const LocusSpec &spec, const Model &model, int D, bool cap = false);
/// Degree-|lambda| part: the theta polynomial of the entries (times 1/2^a
/// in family B).
Poly fundamental_class(const LocusSpec &spec, const Model &model);

} // namespace hirz
