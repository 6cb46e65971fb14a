#include "hirz/strata.hpp"

#include "hirz/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace hirz {

int kbar(const KSeq &k)
{
    int s = 0;
    for (size_t i = 0; i < k.size(); ++i) s += k[i] - int(i + 1);
    return s;
}

int rho_at(const LocusSpec &spec, int k)
{
    if (k < 1) throw invalid_spec("BadIndex", "rho is indexed from 1");
    if (k <= spec.s()) return spec.rho[k - 1];
    return spec.rho.empty() ? 0 : spec.rho.back();
}

std::vector<KSeq> enumerate_k(const LocusSpec &spec)
{
    const int s = spec.s(), n = spec.n, p = spec.p, a = spec.a;
    const auto &q = spec.q;
    std::vector<KSeq> out;
    KSeq k(s);
    // 1-based helpers
    auto ok_step = [&](int i) { // check constraints that involve k_i and k_{i-1}
        if (i == 1) return true;
        if (k[i - 1] < k[i - 2]) return false;
        if (i == a + 1 && a > 0) {
            int bound = -q[a] + std::max(0, q[a - 1] + q[a] - 1);
            if (k[a] - k[a - 1] > bound) return false;
        }
        if (i > a + 1) {
            int lhs = k[i - 1] - k[i - 2] + (rho_at(spec, k[i - 2]) - rho_at(spec, k[i - 1]));
            if (lhs > q[i - 2] - q[i - 1]) return false;
        }
        return true;
    };
    std::function<void(int)> rec = [&](int i) {
        if (i > s) {
            out.push_back(k);
            return;
        }
        int hi = std::min(n + 1 - q[i - 1], n + 1 - p);
        for (int v = i; v <= hi; ++v) {
            k[i - 1] = v;
            if (ok_step(i)) rec(i + 1);
        }
    };
    rec(1);
    return out;
}

Partition lambda_plus(const LocusSpec &spec, const KSeq &k)
{
    const int s = spec.s();
    if (int(k.size()) != s) throw invalid_spec("BadKSeq", "k has the wrong length");
    const int L = k.back();
    std::vector<std::optional<int>> val(L + 2);
    for (int i = 1; i <= s; ++i) {
        int pos = k[i - 1];
        if (val[pos]) continue; // equal k: the smaller i decides
        int v = spec.q[i - 1] + spec.p - 1;
        if (i > spec.a) v += pos - rho_at(spec, pos);
        val[pos] = v;
    }
    // Minimal completion dominating the anchors: strict below k_a, weak above.
    // An anchor that sits below the forced value is raised; the closed locus
    // {dim(U cap F_{q_i}) >= k_i} then coincides with a deeper one.
    const int ka = spec.a > 0 ? k[spec.a - 1] : 0;
    Partition out(L);
    out[L - 1] = *val[L];
    for (int j = L - 1; j >= 1; --j) {
        int need = j < ka ? out[j] + 1 : out[j];
        out[j - 1] = val[j] ? std::max(*val[j], need) : need;
    }
    if (out.back() <= 0)
        throw inconsistency("AmbiguousFill", "lambda^+ for q=" + partition_str(spec.q) +
                                                 ", k=" + partition_str(k) +
                                                 ": nonpositive last part");
    return out;
}

YPoly fiber_piece_chi_y(const KSeq &k)
{
    YPoly r(1);
    const YPoly my = YPoly{0, -1};
    for (size_t i = 0; i < k.size(); ++i) {
        int d = k[i] - int(i) - 1;
        if (d < 0) throw invalid_spec("BadKSeq", "need k_i >= i");
        if (i == 0 || k[i] > k[i - 1]) {
            r = r * my.pow(d);
        } else {
            YPoly proj;
            for (int t = 0; t <= d; ++t) proj += my.pow(t);
            r = r * proj;
        }
    }
    return r;
}

YPoly chi_y_affine(int d)
{
    if (d < 0) throw invalid_spec("BadDimension", "affine dimension must be nonnegative");
    return YPoly{0, -1}.pow(d);
}

StrataExpansion strata_expansion(const LocusSpec &spec, bool strict)
{
    StrataExpansion r;
    for (const auto &k : enumerate_k(spec)) {
        try {
            r.terms.push_back({lambda_plus(spec, k), k, chi_y_affine(kbar(k)), fiber_piece_chi_y(k)});
        } catch (const Error &e) {
            if (strict || e.code() != "AmbiguousFill") throw;
            r.diagnostics.push_back(std::string("skipped stratum: ") + e.what());
        }
    }
    return r;
}

LocusSpec spec_from_partition(const Partition &lam, int p, int n, Family f)
{
    if (!is_partition(lam)) throw invalid_spec("InvalidSpec", "not a partition: " + partition_str(lam));
    const int l = int(lam.size());
    std::set<std::vector<int>> found;
    for (int a = 0; a <= l; ++a) {
        std::vector<int> q(l);
        bool ok = true;
        for (int i = 0; i < a && ok; ++i) {
            q[i] = lam[i] - p + 1;
            if (q[i] <= 0) ok = false;
        }
        if (!ok) continue;
        std::function<void(int)> rec = [&](int i) {
            if (i == l) {
                try {
                    auto s = LocusSpec::make(f, n, p, q);
                    if (s.lambda == lam) found.insert(q);
                } catch (const Error &) {
                }
                return;
            }
            for (int v = -1; v > -n; --v) {
                int rho = 0;
                for (int j = 0; j < i; ++j)
                    if (q[j] >= 1 - v) ++rho;
                if (v + p - 1 + (i + 1) - rho == lam[i]) {
                    q[i] = v;
                    rec(i + 1);
                }
            }
        };
        rec(a);
    }
    std::string where = partition_str(lam) + " with p=" + std::to_string(p) + ", n=" + std::to_string(n);
    if (found.empty()) throw inconsistency("NoPreimage", "no q-sequence gives " + where);
    if (found.size() > 1) {
        std::string all;
        for (auto &q : found) all += " " + partition_str(q);
        throw inconsistency("AmbiguousPreimage", "several q-sequences give " + where + ":" + all);
    }
    return LocusSpec::make(f, n, p, *found.begin());
}

std::map<Partition, YPoly> solve_triangular(const Relations &rel, const Partition &target)
{
    std::map<Partition, std::map<Partition, YPoly>> memo;
    std::set<Partition> active;
    std::function<const std::map<Partition, YPoly> &(const Partition &)> expr =
        [&](const Partition &mu) -> const std::map<Partition, YPoly> & {
        auto it = memo.find(mu);
        if (it != memo.end()) return it->second;
        if (!active.insert(mu).second)
            throw inconsistency("CyclicStrata", "strata relations are not triangular at " + partition_str(mu));
        std::map<Partition, YPoly> e;
        e[mu] = YPoly(1);
        auto r = rel.find(mu);
        if (r != rel.end())
            for (const auto &[nu, w] : r->second) {
                if (nu == mu) throw inconsistency("CyclicStrata", "diagonal relation term at " + partition_str(mu));
                for (const auto &[x, c] : expr(nu)) e[x] -= w * c;
            }
        for (auto jt = e.begin(); jt != e.end();)
            jt = jt->second.is_zero() ? e.erase(jt) : std::next(jt);
        active.erase(mu);
        return memo.emplace(mu, std::move(e)).first->second;
    };
    return expr(target);
}

namespace {

bool size_then_lex(const Partition &a, const Partition &b)
{
    int sa = size_of(a), sb = size_of(b);
    if (sa != sb) return sa < sb;
    return a > b;
}

} // namespace

MotivicExpansion motivic_expansion(const LocusSpec &spec, StrataWeights w, int max_depth)
{
    MotivicExpansion out;
    std::map<Partition, LocusSpec> specs;
    std::deque<std::pair<Partition, int>> todo;
    specs.emplace(spec.lambda, spec);
    todo.emplace_back(spec.lambda, 0);
    while (!todo.empty()) {
        auto [mu, depth] = todo.front();
        todo.pop_front();
        if (depth > max_depth)
            throw inconsistency("RecursionDepthExceeded", "strata recursion deeper than " + std::to_string(max_depth));
        const LocusSpec &sm = specs.at(mu);
        auto ex = strata_expansion(sm);
        for (auto &d : ex.diagnostics) out.diagnostics.push_back(d);
        std::map<Partition, YPoly> row;
        bool seen_identity = false;
        for (auto &t : ex.terms) {
            if (t.lambda_plus == mu) {
                if (kbar(t.k) != 0)
                    throw inconsistency("CyclicStrata", "non-identity stratum reproduces " + partition_str(mu));
                seen_identity = true;
                continue;
            }
            row[t.lambda_plus] += w == StrataWeights::Fiber ? t.fiber_weight : t.weight;
            if (!specs.count(t.lambda_plus)) {
                specs.emplace(t.lambda_plus, spec_from_partition(t.lambda_plus, spec.p, spec.n, spec.family));
                todo.emplace_back(t.lambda_plus, depth + 1);
            }
        }
        if (!seen_identity)
            throw inconsistency("MissingIdentity", "identity stratum missing for " + partition_str(mu));
        auto &dst = out.relations[mu];
        for (auto &[nu, w] : row)
            if (!w.is_zero()) dst.emplace_back(nu, w);
    }
    auto sol = solve_triangular(out.relations, spec.lambda);
    std::vector<Partition> keys;
    for (auto &[mu, c] : sol) keys.push_back(mu);
    std::sort(keys.begin(), keys.end(), size_then_lex);
    for (auto &mu : keys) out.coefficients.emplace_back(specs.at(mu), sol.at(mu));
    return out;
}

Poly motivic_class_of_locus(const LocusSpec &spec, const Model &model, int D,
                            const ClassOptions &opt, MotivicExpansion *details)
{
    auto ex = motivic_expansion(spec, opt.literal_weights ? StrataWeights::Literal : StrataWeights::Fiber);
    Poly total(model.ring(), D);
    ClassOptions uncapped = opt;
    uncapped.cap = false;
    for (auto &[s, c] : ex.coefficients) {
        YPoly cy = opt.ye(c);
        if (cy.is_zero()) continue;
        total.axpy(cy, resolution_class(s, model, D, uncapped));
    }
    if (opt.cap) total = total * model.ty_ambient(D, opt.ye);
    if (details) *details = std::move(ex);
    return total;
}

// ---- odd orthogonal fibers

Partition nu_of(const std::vector<int> &g, int n)
{
    const int s = int(g.size());
    for (int i = 0; i < s; ++i) {
        if (g[i] < i + 1 || g[i] > n) throw invalid_spec("BadSequence", "need i <= g_i <= n");
        if (i && g[i] < g[i - 1]) throw invalid_spec("BadSequence", "g must be weakly increasing");
    }
    std::vector<int> t(s);
    for (int i = s - 1; i >= 0; --i) {
        t[i] = n + 1 - g[i];
        if (i + 1 < s) t[i] = std::max(t[i], t[i + 1] + 1);
    }
    Partition nu;
    for (int v = n; v >= 1; --v)
        if (std::find(t.begin(), t.end(), v) == t.end()) nu.push_back(v);
    return nu;
}

std::vector<int> beta_of(const KSeq &k, const std::vector<int> &q)
{
    const int s = int(k.size());
    if (int(q.size()) != s) throw invalid_spec("BadSequence", "k and q differ in length");
    std::vector<int> b(s);
    for (int i = 0; i < s; ++i) {
        bool fixed = i == s - 1 || q[i] + k[i] >= q[i + 1] + k[i + 1] + 1;
        int lo = fixed ? k[i] : i + 1;
        b[i] = i ? std::max(lo, b[i - 1]) : lo;
    }
    return b;
}

std::vector<Partition> strict_partitions_inside(const Partition &nu)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int)> rec = [&](int i) {
        out.push_back(cur);
        if (i >= int(nu.size())) return;
        int hi = nu[i];
        if (!cur.empty()) hi = std::min(hi, cur.back() - 1);
        for (int v = hi; v >= 1; --v) {
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Integer count_strict_inside(const Partition &nu)
{
    return Integer(static_cast<unsigned long>(strict_partitions_inside(nu).size()));
}

YPoly d_k_coefficient(const KSeq &k, const std::vector<int> &q, int n)
{
    Partition top = nu_of(k, n), bottom = nu_of(beta_of(k, q), n);
    YPoly r;
    for (auto &mu : strict_partitions_inside(top)) {
        if (mu.size() < bottom.size()) continue;
        bool contains = true;
        for (size_t i = 0; i < bottom.size(); ++i)
            if (mu[i] < bottom[i]) contains = false;
        if (contains) r += chi_y_affine(size_of(mu));
    }
    return r;
}

namespace {

Rational det(std::vector<std::vector<Rational>> m)
{
    const int n = int(m.size());
    Rational d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

Rational binom(long m, long r) { return r < 0 ? Rational(0) : generalized_binomial(m, r); }

} // namespace

Integer gessel_viennot_experimental(const Partition &nu)
{
    const int s = int(nu.size());
    std::vector<std::vector<Rational>> m(s, std::vector<Rational>(s));
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j) m[i - 1][j - 1] = binom(nu[j - 1] + j - i + 1, 1 + j - i);
    Rational total = s ? det(m) : Rational(1);
    for (int k = 1; k <= s - 1; ++k) {
        std::vector<std::vector<Rational>> t(k, std::vector<Rational>(k));
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) t[i - 1][j - 1] = binom(k - i + 2, 1 + j - i);
        total += det(t);
    }
    return total.get_num();
}

} // namespace hirz
