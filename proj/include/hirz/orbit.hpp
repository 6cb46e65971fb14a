#pragma once
// K-orbit closures in Fl_n for K = O_n, Sp_n attached to vexillary
// involutions: Rothe diagrams, essential sets, the partition lambda^K(z),
// the refined isotropic flag, and the orbit classes in the coinvariant ring.

#include "hirz/loci.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hirz {

enum class Group { O, Sp };
Group group_from_string(const std::string &s);
const char *group_name(Group g);

/// z(1..n) stored 0-based as values 1..n.
struct Involution {
    std::vector<int> z;

    int n() const { return int(z.size()); }
    int operator()(int i) const { return z[i - 1]; }
    /// Validates z o z = id. For Sp, fixed points are allowed (odd n needs
    /// them) but reported through `warnings`.
    static Involution make(std::vector<int> values, Group g,
                           std::vector<std::string> *warnings = nullptr);
    /// product of disjoint transpositions (a b), 1-based
    static Involution from_cycles(int n, const std::vector<std::pair<int, int>> &cycles);
    /// One-line notation ("43215", "4 3 2 1 5", "10,2,...") or cycles
    /// ("(1 4)(2 3)", needs n > 0). n = 0 takes the length of the one-line word.
    static Involution parse(const std::string &s, int n, Group g,
                            std::vector<std::string> *warnings = nullptr);
    std::string str() const; // one-line notation, e.g. "3412"
};

using Cell = std::pair<int, int>; // (row, column), 1-based

std::set<Cell> rothe_diagram(const Involution &z, Group g);
/// cells with neither right nor lower neighbour in D
std::set<Cell> essential_set(const std::set<Cell> &d);
/// #{a <= i : z(a) <= j}
int nw_rank(const Involution &z, int i, int j);

struct EssentialData {
    Group group = Group::O;
    std::vector<Cell> chain; // smallest first under (a,b) <= (i,j) iff i <= a, b <= j
    std::vector<int> ranks, k;
    Partition lambda;
    int ell = 0;
};
/// Throws NotVexillary if the essential set is not a chain (for Sp the
/// orthogonal essential set must be a chain too).
EssentialData vexillary_data(const Involution &z, Group g);

/// One slot of the refined flag: mu'_k with entry c(E_i^v - E_j).
struct FlagSlot {
    int mu = 0;
    int i = 0, j = 0;
};
/// A gap k_t - k_{t-1} > 1 inserts slots above each anchor. The inserted
/// slot at offset o uses (i_t + o, j_t) for O while i_t + o <= n, otherwise
/// (and always for Sp) (i_t, j_t - o).
std::vector<FlagSlot> mu_flag(const EssentialData &d, int n);

/// Normal form in Q[x_1..x_n] / (positive-degree symmetric polynomials):
/// exponent of x_i at most n - i. Uses x_i^{n-i+1} = x_i^{n-i+1} - h_{n-i+1}(x_1..x_i).
class CoinvariantReducer : public Reducer {
public:
    explicit CoinvariantReducer(int n);
    void reduce(Poly &p) const override;
    int n() const { return n_; }

private:
    using Terms = std::vector<std::pair<Mono, Rational>>;
    const Terms &normal_form(const Mono &m) const;

    int n_;
    std::vector<Terms> tails_; // h_d(x_1..x_i) - x_i^d, d = n - i + 1
    mutable std::mutex mu_;
    mutable std::map<Mono, Terms> memo_;
};

/// H^*(Fl_n) with x_b = c_1((E_b/E_{b-1})^v).
class FlagModel {
public:
    explicit FlagModel(int n);
    int n() const { return n_; }
    int dimension() const { return n_ * (n_ - 1) / 2; }
    VarSetPtr ring() const { return vs_; }
    Poly x(int b) const;
    /// c(E_i^v - E_j) = prod_{b<=i}(1 + x_b) / prod_{b<=j}(1 - x_b), rank i - j
    EntrySpec entry(int i, int j) const;
    /// T_y(Fl_n) from the roots x_i - x_j, i < j
    Poly ty_ambient(int D, const YEval &ye) const;
    /// prod_{i<j} (1 + x_i - x_j)
    Poly csm_ambient() const;
    Poly reduce(Poly f) const;
    /// coefficient of x_1^{n-1} x_2^{n-2} ... (the point class up to sign)
    YPoly top_coefficient(const Poly &f) const;

private:
    int n_;
    VarSetPtr vs_;
};

struct OrbitResult {
    EssentialData data;
    std::vector<FlagSlot> slots;
    Poly cls;
    std::vector<std::string> diagnostics;
};

/// T_y class of the resolution pushed to Fl_n (capped with T_y(Fl_n) on request).
OrbitResult orbit_motivic_class(const FlagModel &m, const Involution &z, Group g,
                                const YEval &ye, bool cap = false);
/// Degree-|lambda| part: the Pfaffian of the entries (times 1/2^l for Sp).
Poly orbit_fundamental_class(const FlagModel &m, const Involution &z, Group g);

struct ExpansionCheck {
    bool holds = false;
    Poly residual;
};
/// orbit class at y = -1 minus sum coeff * fundamental classes.
ExpansionCheck verify_expansion(const FlagModel &m, const Involution &z, Group g,
                                const std::vector<std::pair<Rational, Involution>> &claimed);
/// Same, for a class already evaluated at y = -1.
ExpansionCheck verify_expansion(const FlagModel &m, const Poly &cls, Group g,
                                const std::vector<std::pair<Rational, Involution>> &claimed);
/// Solves cls = sum c_i [X_{z_i}] degree by degree. Throws DependentBasis or
/// Unrepresentable.
std::vector<Rational> expand_in_orbit_basis(const FlagModel &m, const Poly &cls, Group g,
                                            const std::vector<Involution> &candidates);

} // namespace hirz
