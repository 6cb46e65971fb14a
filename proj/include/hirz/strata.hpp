#pragma once
// Stratification of a locus by jump sequences k, lambda^+(p,q,k), the
// inclusion-exclusion that turns resolution classes into classes of loci,
// and the strict-partition combinatorics of the odd orthogonal fibers.

#include "hirz/loci.hpp"

#include <map>
#include <string>
#include <vector>

namespace hirz {

using KSeq = std::vector<int>;

/// sum_i (k_i - i)
int kbar(const KSeq &k);
/// rho_k, extended past s by its last value
int rho_at(const LocusSpec &spec, int k);

/// All admissible k, lexicographically sorted.
std::vector<KSeq> enumerate_k(const LocusSpec &spec);
/// Anchors below the fill are raised to it (the closed condition forces the
/// deeper locus). Throws Inconsistency("AmbiguousFill") only if a part would
/// drop to zero or below.
Partition lambda_plus(const LocusSpec &spec, const KSeq &k);

struct StrataTerm {
    Partition lambda_plus;
    KSeq k;
    YPoly weight;       // (-y)^kbar
    YPoly fiber_weight; // chi_y of the fiber piece with jump data k
};

/// chi_y of {D_1 c ... c D_s : D_i c K_{k_i}, D_i not in K_{k_i - 1}} for a
/// complete flag K: an affine factor (-y)^{k_i - i} where k jumps, and a
/// full P^{k_i - i} where k_i = k_{i-1}. Equals (-y)^kbar for strict k.
YPoly fiber_piece_chi_y(const KSeq &k);

enum class StrataWeights { Fiber, Literal };

struct StrataExpansion {
    std::vector<StrataTerm> terms;
    std::vector<std::string> diagnostics; // skipped strata
};

/// Expansion of the resolution class over strata. With
/// strict = true an AmbiguousFill propagates; otherwise that (empty)
/// stratum is skipped and recorded in diagnostics.
StrataExpansion strata_expansion(const LocusSpec &spec, bool strict = false);

/// chi_y of the affine space A^d: (-y)^d
YPoly chi_y_affine(int d);

/// Inverse of lambda_of over all split points a. Throws Inconsistency with
/// code NoPreimage or AmbiguousPreimage.
LocusSpec spec_from_partition(const Partition &lam, int p, int n, Family f);

/// Relations Ttilde(mu) = T(mu) + sum w * T(nu); solve for T(target) as a
/// combination of Ttilde. Rows list only the off-diagonal terms.
using Relations = std::map<Partition, std::vector<std::pair<Partition, YPoly>>>;
std::map<Partition, YPoly> solve_triangular(const Relations &rel, const Partition &target);

struct MotivicExpansion {
    std::vector<std::pair<LocusSpec, YPoly>> coefficients; // sorted by |lambda|, then lex
    Relations relations;
    std::vector<std::string> diagnostics;
};

/// Closure of the strata recursion and the triangular solve.
MotivicExpansion motivic_expansion(const LocusSpec &spec, StrataWeights w = StrataWeights::Fiber,
                                   int max_depth = 32);

/// sum_mu c_mu(y) * resolution_class(mu). When the model is abstract it must
/// be flag-keyed so that all loci share symbols.
Poly motivic_class_of_locus(const LocusSpec &spec, const Model &model, int D,
                            const ClassOptions &opt = {}, MotivicExpansion *details = nullptr);

// ---- odd orthogonal fiber combinatorics

/// nu(g): complement, in {1..n}, of the parts of the strict nu-tilde with
/// nu-tilde_i = n+1-g_i (raised where needed to stay strict).
Partition nu_of(const std::vector<int> &g, int n);
/// The componentwise-minimal beta(k).
std::vector<int> beta_of(const KSeq &k, const std::vector<int> &q);
/// sum over strict nu' with nu(beta) in nu' in nu(k) of (-y)^{|nu'|}
YPoly d_k_coefficient(const KSeq &k, const std::vector<int> &q, int n);

/// strict partitions whose diagrams lie inside nu
std::vector<Partition> strict_partitions_inside(const Partition &nu);
Integer count_strict_inside(const Partition &nu);
/// Literal binomial-determinant display (experimental; disagrees with the
/// enumeration, e.g. 5 vs 4 for (2,1)).
Integer gessel_viennot_experimental(const Partition &nu);

} // namespace hirz
