#include "hirz/raising.hpp"

#include "hirz/errors.hpp"

#include <algorithm>
#include <functional>

namespace hirz {

std::vector<YPoly> qy_series(int D)
{
    // a/(1-e^{-a}) = 1 / sum_k (-1)^k a^k/(k+1)!
    std::vector<Rational> den(D + 1), b(D + 1);
    Rational fact = 1;
    for (int k = 0; k <= D; ++k) {
        fact *= (k + 1);
        den[k] = Rational((k % 2) ? -1 : 1) / fact;
    }
    b[0] = 1;
    for (int k = 1; k <= D; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) acc += den[j] * b[k - j];
        b[k] = -acc;
    }
    std::vector<YPoly> q(D + 1);
    YPoly onep{1, 1};
    for (int k = 0; k <= D; ++k) q[k] = onep.pow(k) * b[k];
    if (D >= 1) q[1] -= YPoly::y();
    return q;
}

std::vector<YPoly> qy_log_series(int D)
{
    auto q = qy_series(D);
    std::vector<YPoly> l(D + 1);
    for (int d = 1; d <= D; ++d) {
        YPoly acc = q[d];
        YPoly corr;
        for (int k = 1; k < d; ++k) corr += (l[k] * q[d - k]) * Rational(k);
        acc -= corr * Rational(1, d);
        l[d] = acc;
    }
    return l;
}

Poly EntrySpec::c(int m, const VarSetPtr &vs, int D) const
{
    if (m < 0 || m > D) return Poly(vs, D);
    if (m == 0) return Poly::constant(vs, YPoly(1), D);
    if (m < int(chern.size())) return chern[m].with_trunc(D);
    return Poly(vs, D);
}

// ---- RSeries

RSeries RSeries::one(const VarSetPtr &vs, int D)
{
    RSeries r{vs, D, {}};
    for (int k = 0; k <= D; ++k) r.c.emplace_back(vs, D - k);
    r.c[0] = Poly::constant(vs, YPoly(1), D);
    return r;
}

RSeries RSeries::operator*(const RSeries &o) const
{
    int DD = std::min(D, o.D);
    RSeries r{vs, DD, {}};
    for (int k = 0; k <= DD; ++k) {
        Poly acc(vs, DD - k);
        for (int j = 0; j <= k; ++j) {
            if (c[j].is_zero() || o.c[k - j].is_zero()) continue;
            acc += (c[j] * o.c[k - j]).with_trunc(DD - k);
        }
        r.c.push_back(std::move(acc));
    }
    return r;
}

RSeries RSeries::inverse() const
{
    RSeries w{vs, D, {}};
    w.c.push_back(series_inv(c[0].with_trunc(D)));
    for (int k = 1; k <= D; ++k) {
        Poly acc(vs, D - k);
        for (int j = 1; j <= k; ++j) {
            if (c[j].is_zero() || w.c[k - j].is_zero()) continue;
            acc += (c[j] * w.c[k - j]).with_trunc(D - k);
        }
        w.c.push_back(-(w.c[0].with_trunc(D - k) * acc));
    }
    return w;
}

RSeries RSeries::eval_y(const YEval &ye) const
{
    RSeries r = *this;
    for (auto &p : r.c) p = p.eval_y(ye);
    return r;
}

RSeries ty_twist(const EntrySpec &e, int D, const YEval &ye, bool inverse)
{
    VarSetPtr vs = e.chern.empty() ? nullptr : e.chern[0].vars();
    if (!vs) throw invalid_spec("InsufficientChernData", "entry carries no Chern data");
    auto p = newton_power_sums(e.chern, e.rank, D, vs);
    auto ell = qy_log_series(D);
    for (auto &l : ell) l = ye(l);
    // L_k = sum_{m >= max(k,1)} ell_m binom(m,k) p_{m-k}
    std::vector<Poly> L;
    for (int k = 0; k <= D; ++k) {
        Poly acc(vs, D - k);
        for (int m = std::max(k, 1); m <= D; ++m) {
            if (ell[m].is_zero()) continue;
            acc.axpy(ell[m] * generalized_binomial(m, k), p[m - k].with_trunc(D - k));
        }
        if (inverse) acc = -acc;
        L.push_back(std::move(acc));
    }
    RSeries w{vs, D, {}};
    w.c.push_back(series_exp(L[0].with_trunc(D)));
    for (int k = 1; k <= D; ++k) {
        Poly acc(vs, D - k);
        for (int j = 1; j <= k; ++j) {
            if (L[j].is_zero() || w.c[k - j].is_zero()) continue;
            acc.axpy(YPoly(Rational(j)), (L[j] * w.c[k - j]).with_trunc(D - k));
        }
        w.c.push_back(acc * YPoly(Rational(1, k)));
    }
    return w;
}

RSeries virtual_chern_twisted(const EntrySpec &e, int D)
{
    VarSetPtr vs = e.chern.empty() ? nullptr : e.chern[0].vars();
    if (!vs) throw invalid_spec("InsufficientChernData", "entry carries no Chern data");
    RSeries r{vs, D, {}};
    for (int k = 0; k <= D; ++k) {
        Poly acc(vs, D - k);
        for (int m = 0; m + k <= D; ++m) {
            Rational b = generalized_binomial(e.rank - m, k);
            if (b == 0) continue;
            acc.axpy(YPoly(b), e.c(m, vs, D - k));
        }
        r.c.push_back(std::move(acc));
    }
    return r;
}

// ---- scalar operators

VarSetPtr r_varset(int slots)
{
    std::vector<std::string> names;
    for (int i = 1; i <= slots; ++i) names.push_back("R" + std::to_string(i));
    return make_varset(names);
}

static Poly linear_form(const std::vector<std::pair<int, int>> &expr, const VarSetPtr &rv, int D)
{
    std::vector<long> coef(rv->size(), 0);
    for (auto [slot, mult] : expr) {
        if (slot < 1 || slot > rv->size()) throw invalid_spec("BadSlot", "slot out of range");
        coef[slot - 1] += mult;
    }
    if (std::all_of(coef.begin(), coef.end(), [](long c) { return c == 0; }))
        throw invalid_spec("ZeroLinearForm", "linear form must be nonzero");
    Poly lin(rv, D);
    for (int i = 0; i < rv->size(); ++i)
        if (coef[i]) lin.axpy(YPoly(Rational(coef[i])), Poly::variable(rv, i, D));
    return lin;
}

static Poly substitute(const std::vector<YPoly> &ser, const Poly &lin, int D)
{
    Poly r(lin.vars(), D), pw = Poly::constant(lin.vars(), YPoly(1), D);
    for (int k = 0; k <= D; ++k) {
        if (k) pw = pw * lin;
        if (pw.is_zero()) break;
        r.axpy(ser[k], pw);
    }
    return r;
}

Poly ty_linear(const std::vector<std::pair<int, int>> &expr, int slots, int D, const YEval &ye)
{
    auto rv = r_varset(slots);
    auto q = qy_series(D);
    for (auto &c : q) c = ye(c);
    return substitute(q, linear_form(expr, rv, D), D);
}

Poly ty_linear_log(const std::vector<std::pair<int, int>> &expr, int slots, int D,
                   const YEval &ye)
{
    auto rv = r_varset(slots);
    auto l = qy_log_series(D);
    for (auto &c : l) c = ye(c);
    return substitute(l, linear_form(expr, rv, D), D);
}

// ---- theta

ThetaTerms theta_operator(const std::vector<int> &lam, const std::vector<int> &rho, int slack)
{
    const int s = int(lam.size());
    if (int(rho.size()) != s) throw invalid_spec("InvalidRho", "rho and lambda differ in length");
    for (int i = 0; i < s; ++i)
        if (rho[i] < 0 || rho[i] > i) throw invalid_spec("InvalidRho", "need 0 <= rho_i < i");
    int total = slack;
    for (int v : lam) total += v;

    ThetaTerms terms;
    terms[std::vector<int>(s, 0)] = 1;
    for (int i = s - 1; i >= 1; --i) {
        for (int j = 0; j < i; ++j) {
            const bool den = (j + 1) <= rho[i];
            ThetaTerms next;
            for (const auto &[a, v] : terms) {
                for (int m = 0;; ++m) {
                    Rational c;
                    if (den)
                        c = m == 0 ? 1 : (m % 2 ? -2 : 2);
                    else
                        c = m == 0 ? 1 : (m == 1 ? -1 : 0);
                    if (c == 0) break;
                    std::vector<int> b = a;
                    b[j] += m;
                    b[i] -= m;
                    if (lam[i] + b[i] + slack < 0) break;
                    auto &slot = next[b];
                    slot += v * c;
                }
            }
            terms.clear();
            for (auto &[k, v] : next)
                if (v != 0) terms.emplace(k, v);
        }
        for (auto it = terms.begin(); it != terms.end();) {
            int f = lam[i] + it->first[i];
            if (f < -slack || f > total)
                it = terms.erase(it);
            else
                ++it;
        }
    }
    if (s > 0)
        for (auto it = terms.begin(); it != terms.end();) {
            int f = lam[0] + it->first[0];
            if (f < -slack || f > total)
                it = terms.erase(it);
            else
                ++it;
        }
    return terms;
}

// ---- operator series

OperatorSeries OperatorSeries::identity(int slots, const VarSetPtr &vs, int D)
{
    OperatorSeries o{slots, {}};
    o.terms.emplace(std::vector<int>(slots, 0), Poly::constant(vs, YPoly(1), D));
    return o;
}

OperatorSeries OperatorSeries::from_scalar(const Poly &r, const VarSetPtr &vs, int D)
{
    OperatorSeries o{r.vars()->size(), {}};
    for (const auto &[m, c] : r.terms()) o.terms.emplace(m, Poly::constant(vs, c, D));
    return o;
}

OperatorSeries OperatorSeries::from_theta(const ThetaTerms &t, const VarSetPtr &vs, int D)
{
    OperatorSeries o{0, {}};
    for (const auto &[a, c] : t) {
        o.slots = int(a.size());
        o.terms.emplace(a, Poly::constant(vs, YPoly(c), D));
    }
    return o;
}

OperatorSeries OperatorSeries::from_rseries(const RSeries &r, int slot, int slots)
{
    OperatorSeries o{slots, {}};
    for (int k = 0; k < int(r.c.size()); ++k) {
        if (r.c[k].is_zero()) continue;
        std::vector<int> a(slots, 0);
        a[slot - 1] = k;
        o.terms.emplace(a, r.c[k].with_trunc(r.D));
    }
    return o;
}

OperatorSeries OperatorSeries::operator*(const OperatorSeries &o) const
{
    OperatorSeries r{std::max(slots, o.slots), {}};
    for (const auto &[a, ca] : terms)
        for (const auto &[b, cb] : o.terms) {
            std::vector<int> e(a);
            int tot = 0;
            for (size_t i = 0; i < e.size(); ++i) tot += (e[i] += b[i]);
            // total raising plus coefficient degree never shrinks again
            int bound = min_trunc(ca.trunc(), cb.trunc());
            if (bound != kUnbounded && tot > bound) continue;
            Poly p = ca * cb;
            if (bound != kUnbounded && tot > 0) p = p.with_trunc(bound - tot).with_trunc(bound);
            if (p.is_zero()) continue;
            auto it = r.terms.find(e);
            if (it == r.terms.end())
                r.terms.emplace(e, std::move(p));
            else
                it->second += p;
        }
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = it->second.is_zero() ? r.terms.erase(it) : std::next(it);
    return r;
}

Poly apply_operator(const OperatorSeries &op, const std::vector<int> &base,
                    const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D)
{
    if (int(base.size()) != op.slots || int(entries.size()) < op.slots)
        throw invalid_spec("SlotMismatch", "base/entries do not match the operator's slots");
    Poly out(vs, D);
    for (const auto &[a, coeff] : op.terms) {
        bool skip = false;
        for (int i = 0; i < op.slots; ++i)
            if (base[i] + a[i] < 0) skip = true;
        if (skip) continue;
        Poly term = coeff.with_trunc(D);
        for (int i = 0; i < op.slots && !term.is_zero(); ++i) {
            int m = base[i] + a[i];
            if (m == 0) continue;
            term = term * entries[i].c(m, vs, D);
        }
        out += term;
    }
    return out;
}

std::map<std::vector<int>, YPoly> combine_offsets(const Poly &scalar, const ThetaTerms &theta,
                                                  const std::vector<int> &base, int D)
{
    const int s = int(base.size());
    int lam = 0;
    for (int v : base) lam += v;
    const int B = D - lam;
    std::map<std::vector<int>, YPoly> out;
    for (const auto &[a, c] : scalar.terms()) {
        int da = 0;
        for (int v : a) da += v;
        if (da > B) continue;
        const int rest = B - da;
        for (const auto &[b, t] : theta) {
            std::vector<int> f(s);
            bool ok = true;
            for (int i = 0; i < s && ok; ++i) {
                f[i] = a[i] + b[i];
                int fin = base[i] + f[i];
                if (fin < -rest || fin > D) ok = false;
            }
            if (!ok) continue;
            out[f] += c * t;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Poly apply_factored(const std::map<std::vector<int>, YPoly> &offsets,
                    const std::vector<int> &base, const std::vector<RSeries> &W,
                    const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D)
{
    const int s = int(base.size());
    if (int(W.size()) != s || int(entries.size()) < s)
        throw invalid_spec("SlotMismatch", "twist/entry count differs from slot count");
    std::vector<std::map<int, Poly>> memo(s);
    auto G = [&](int i, int m) -> const Poly & {
        auto it = memo[i].find(m);
        if (it != memo[i].end()) return it->second;
        Poly acc(vs, D);
        const RSeries &w = W[i];
        for (int k = std::max(0, -m); k < int(w.c.size()); ++k) {
            if (w.c[k].is_zero()) continue;
            int idx = m + k;
            if (idx > D) break;
            if (idx == 0)
                acc += w.c[k].with_trunc(D);
            else
                acc += w.c[k].with_trunc(D) * entries[i].c(idx, vs, D);
        }
        return memo[i].emplace(m, std::move(acc)).first->second;
    };
    using It = std::map<std::vector<int>, YPoly>::const_iterator;
    // offsets are sorted lexicographically, so equal prefixes are contiguous
    std::function<Poly(It, It, int)> rec = [&](It lo, It hi, int i) -> Poly {
        if (i == s) {
            YPoly c;
            for (It it = lo; it != hi; ++it) c += it->second;
            return Poly::constant(vs, c, D);
        }
        Poly out(vs, D);
        It it = lo;
        while (it != hi) {
            int v = it->first[i];
            It jt = it;
            while (jt != hi && jt->first[i] == v) ++jt;
            Poly inner = rec(it, jt, i + 1);
            if (!inner.is_zero()) {
                const Poly &g = G(i, base[i] + v);
                if (!g.is_zero()) out += g * inner;
            }
            it = jt;
        }
        return out;
    };
    if (s == 0) {
        YPoly c;
        for (auto &[k, v] : offsets) c += v;
        return Poly::constant(vs, c, D);
    }
    return rec(offsets.begin(), offsets.end(), 0);
}

Poly apply_theta_operator(const Poly &scalar, const std::vector<int> &lambda,
                          const std::vector<int> &rho, const std::vector<RSeries> &W,
                          const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D)
{
    int size = 0;
    for (int v : lambda) size += v;
    if (size > D) return Poly(vs, D);
    auto th = theta_operator(lambda, rho, D - size);
    return apply_factored(combine_offsets(scalar, th, lambda, D), lambda, W, entries, vs, D);
}

Poly theta_polynomial(const std::vector<int> &lambda, const std::vector<int> &rho,
                      const std::vector<EntrySpec> &entries, const VarSetPtr &vs, int D)
{
    auto th = theta_operator(lambda, rho, 0);
    std::map<std::vector<int>, YPoly> off;
    for (auto &[a, c] : th) off.emplace(a, YPoly(c));
    std::vector<RSeries> W(lambda.size(), RSeries::one(vs, 0));
    return apply_factored(off, lambda, W, entries, vs, D);
}

Poly pfaffian_theta(const std::vector<int> &lambda, const std::vector<EntrySpec> &entries,
                    const VarSetPtr &vs, int D)
{
    std::vector<int> lam = lambda;
    std::vector<EntrySpec> ent(entries.begin(), entries.begin() + lambda.size());
    if (lam.size() % 2) {
        lam.push_back(0);
        ent.push_back(EntrySpec{0, {Poly::constant(vs, YPoly(1), D)}});
    }
    const int r = int(lam.size());
    if (r == 0) return Poly::constant(vs, YPoly(1), D);
    // two-slot thetas: sum_m coef_m c(i)_{l_i+m} c(j)_{l_j-m}
    auto pair = [&](int i, int j) {
        Poly acc(vs, D);
        for (int m = 0; lam[j] - m >= 0; ++m) {
            if (lam[i] + m > D) break;
            Rational coef = m == 0 ? 1 : (m % 2 ? -2 : 2);
            Poly t = ent[i].c(lam[i] + m, vs, D) * ent[j].c(lam[j] - m, vs, D);
            acc.axpy(YPoly(coef), t);
        }
        return acc;
    };
    std::map<unsigned, Poly> memo;
    std::function<Poly(unsigned)> pf = [&](unsigned mask) -> Poly {
        if (!mask) return Poly::constant(vs, YPoly(1), D);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int first = __builtin_ctz(mask);
        unsigned rest = mask & ~(1u << first);
        Poly out(vs, D);
        int sign = 1;
        for (int j = first + 1; j < r; ++j) {
            if (!(rest & (1u << j))) continue;
            Poly sub = pf(rest & ~(1u << j));
            if (!sub.is_zero()) {
                Poly t = pair(first, j) * sub;
                out.axpy(YPoly(Rational(sign)), t);
            }
            sign = -sign;
        }
        return memo.emplace(mask, out).first->second;
    };
    return pf((1u << r) - 1);
}

Poly schur_det_theta(const std::vector<int> &lambda, const std::vector<EntrySpec> &entries,
                     const VarSetPtr &vs, int D)
{
    return theta_polynomial(lambda, std::vector<int>(lambda.size(), 0), entries, vs, D);
}

} // namespace hirz
