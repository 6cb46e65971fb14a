#include "hirz/orbit.hpp"

#include "hirz/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace hirz {

Group group_from_string(const std::string &s)
{
    if (s == "O" || s == "o") return Group::O;
    if (s == "Sp" || s == "sp" || s == "SP") return Group::Sp;
    throw invalid_spec("UnknownGroup", "group must be O or Sp, got '" + s + "'");
}

const char *group_name(Group g) { return g == Group::O ? "O" : "Sp"; }

// ---- involutions

Involution Involution::make(std::vector<int> values, Group g, std::vector<std::string> *warnings)
{
    const int n = int(values.size());
    if (n == 0) throw invalid_spec("BadInvolution", "empty involution");
    std::vector<bool> seen(n + 1, false);
    for (int v : values) {
        if (v < 1 || v > n || seen[v])
            throw invalid_spec("BadInvolution", "not a permutation of 1.." + std::to_string(n));
        seen[v] = true;
    }
    Involution z{std::move(values)};
    int fixed = 0;
    for (int i = 1; i <= n; ++i) {
        if (z(z(i)) != i) throw invalid_spec("BadInvolution", "z o z is not the identity");
        if (z(i) == i) ++fixed;
    }
    if (g == Group::Sp && fixed > 0 && warnings)
        warnings->push_back("Sp with fixed points (" + std::to_string(fixed) +
                            "): formulas evaluated as stated, outside the fixed-point-free range");
    return z;
}

Involution Involution::from_cycles(int n, const std::vector<std::pair<int, int>> &cycles)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    for (auto [a, b] : cycles) {
        if (a < 1 || b < 1 || a > n || b > n)
            throw invalid_spec("BadInvolution", "cycle entry out of range");
        std::swap(v[a - 1], v[b - 1]);
    }
    return make(std::move(v), Group::O);
}

Involution Involution::parse(const std::string &s, int n, Group g,
                             std::vector<std::string> *warnings)
{
    auto bad = [&](const std::string &why) {
        return invalid_spec("BadInvolution", "cannot parse involution '" + s + "': " + why);
    };
    std::vector<int> nums;
    std::string cur;
    bool cycles = s.find('(') != std::string::npos;
    bool separated = cycles || s.find_first_of(", ") != std::string::npos;
    auto flush = [&] {
        if (!cur.empty()) nums.push_back(std::stoi(cur));
        cur.clear();
    };
    std::vector<std::vector<int>> cyc;
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (separated)
                cur += c;
            else
                nums.push_back(c - '0');
        } else if (c == ',' || c == ' ') {
            flush();
        } else if (c == '(') {
            flush();
            nums.clear();
        } else if (c == ')') {
            flush();
            cyc.push_back(nums);
            nums.clear();
        } else {
            throw bad(std::string("unexpected character '") + c + "'");
        }
    }
    flush();
    if (!cycles) {
        if (n > 0 && int(nums.size()) != n)
            throw invalid_spec("SizeMismatch", "involution '" + s + "' has length " +
                                                   std::to_string(nums.size()) + ", expected n = " +
                                                   std::to_string(n));
        return make(std::move(nums), g, warnings);
    }
    if (!nums.empty()) throw bad("text outside cycles");
    if (n <= 0) throw bad("cycle notation needs n");
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    for (auto &c : cyc) {
        if (c.size() == 1) continue;
        if (c.size() != 2) throw bad("cycles of an involution have length <= 2");
        for (int a : c)
            if (a < 1 || a > n) throw bad("cycle entry out of range");
        if (v[c[0] - 1] != c[0] || v[c[1] - 1] != c[1] || c[0] == c[1])
            throw bad("cycles overlap");
        std::swap(v[c[0] - 1], v[c[1] - 1]);
    }
    return make(std::move(v), g, warnings);
}

std::string Involution::str() const
{
    std::string s;
    for (int v : z) s += (n() >= 10 && !s.empty() ? "," : "") + std::to_string(v);
    return s;
}

std::set<Cell> rothe_diagram(const Involution &z, Group g)
{
    std::set<Cell> d;
    const int n = z.n();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (z(i) <= z(j)) continue;
            if (g == Group::O ? z(j) <= i : z(j) < i) d.emplace(i, z(j));
        }
    return d;
}

std::set<Cell> essential_set(const std::set<Cell> &d)
{
    std::set<Cell> e;
    for (auto [i, j] : d)
        if (!d.count({i, j + 1}) && !d.count({i + 1, j})) e.emplace(i, j);
    return e;
}

int nw_rank(const Involution &z, int i, int j)
{
    int r = 0;
    for (int a = 1; a <= i; ++a)
        if (z(a) <= j) ++r;
    return r;
}

namespace {

std::vector<Cell> as_chain(const std::set<Cell> &ess, bool &ok)
{
    std::vector<Cell> c(ess.begin(), ess.end());
    std::sort(c.begin(), c.end(), [](const Cell &a, const Cell &b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    ok = true;
    for (size_t t = 1; t < c.size(); ++t)
        if (!(c[t].first <= c[t - 1].first && c[t - 1].second <= c[t].second)) ok = false;
    return c;
}

std::string cells_str(const std::vector<Cell> &c)
{
    std::string s = "{";
    for (size_t t = 0; t < c.size(); ++t)
        s += (t ? "," : "") + std::string("(") + std::to_string(c[t].first) + "," +
             std::to_string(c[t].second) + ")";
    return s + "}";
}

Error not_vexillary(const Involution &z, Group g, const std::vector<Cell> &ess)
{
    return Error(ErrorKind::NotVexillary, "NotVexillary",
                 std::string(group_name(g)) + " essential set of " + z.str() + " is not a chain: " +
                     cells_str(ess));
}

} // namespace

EssentialData vexillary_data(const Involution &z, Group g)
{
    bool ok = false;
    if (g == Group::Sp) {
        auto oc = as_chain(essential_set(rothe_diagram(z, Group::O)), ok);
        if (!ok) throw not_vexillary(z, Group::O, oc);
    }
    EssentialData d;
    d.group = g;
    d.chain = as_chain(essential_set(rothe_diagram(z, g)), ok);
    if (!ok) throw not_vexillary(z, g, d.chain);
    int prev = 0;
    for (auto [i, j] : d.chain) {
        int r = nw_rank(z, i, j);
        int k = j - r;
        if (k <= prev)
            throw inconsistency("DegenerateChain", "k_t must increase along the essential chain of " +
                                                       z.str());
        d.ranks.push_back(r);
        d.k.push_back(k);
        int base = i - j + (g == Group::O ? 1 : 0);
        for (int kk = prev + 1; kk <= k; ++kk) d.lambda.push_back(base + k - kk);
        prev = k;
    }
    d.ell = prev;
    if (!d.lambda.empty() && d.lambda.back() <= 0)
        throw inconsistency("DegenerateChain", "nonpositive part in lambda for " + z.str());
    return d;
}

std::vector<FlagSlot> mu_flag(const EssentialData &d, int n)
{
    std::vector<FlagSlot> out;
    int prev = 0;
    for (size_t t = 0; t < d.chain.size(); ++t) {
        auto [i, j] = d.chain[t];
        int k = d.k[t];
        int base = i - j + (d.group == Group::O ? 1 : 0);
        for (int kk = prev + 1; kk <= k; ++kk) {
            int off = k - kk;
            FlagSlot s{base + off, i, j};
            if (off > 0) {
                if (d.group == Group::O && i + off <= n)
                    s.i = i + off;
                else
                    s.j = j - off;
            }
            out.push_back(s);
        }
        prev = k;
    }
    return out;
}

// ---- coinvariant ring

namespace {

void complete_homogeneous(int d, int vars, int n, Mono &cur, int pos,
                          std::vector<std::pair<Mono, Rational>> &out)
{
    if (pos == vars - 1) {
        cur[pos] = d;
        out.emplace_back(cur, Rational(1));
        cur[pos] = 0;
        return;
    }
    for (int e = 0; e <= d; ++e) {
        cur[pos] = e;
        complete_homogeneous(d - e, vars, n, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

} // namespace

CoinvariantReducer::CoinvariantReducer(int n) : n_(n)
{
    tails_.resize(n + 1);
    for (int i = 1; i <= n; ++i) {
        int d = n - i + 1;
        Mono cur(n, 0);
        std::vector<std::pair<Mono, Rational>> h;
        complete_homogeneous(d, i, n, cur, 0, h);
        for (auto &[m, c] : h)
            if (m[i - 1] != d) tails_[i].emplace_back(m, c);
    }
}

const CoinvariantReducer::Terms &CoinvariantReducer::normal_form(const Mono &m) const
{
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
    }
    int bad = 0;
    for (int i = n_; i >= 1; --i)
        if (m[i - 1] > n_ - i) {
            bad = i;
            break;
        }
    Terms out;
    int deg = std::accumulate(m.begin(), m.end(), 0);
    if (bad == 0) {
        out.emplace_back(m, Rational(1));
    } else if (deg <= n_ * (n_ - 1) / 2) {
        // x^m = x^rest * x_bad^d and x_bad^d == -(tail)
        Mono rest = m;
        rest[bad - 1] -= n_ - bad + 1;
        std::map<Mono, Rational> acc;
        for (auto &[t, c] : tails_[bad]) {
            Mono mm = rest;
            for (int b = 0; b < n_; ++b) mm[b] += t[b];
            for (auto &[r, rc] : normal_form(mm)) acc[r] -= c * rc;
        }
        for (auto &[r, c] : acc)
            if (c != 0) out.emplace_back(r, c);
    }
    std::lock_guard<std::mutex> g(mu_);
    return memo_.emplace(m, std::move(out)).first->second;
}

void CoinvariantReducer::reduce(Poly &p) const
{
    bool clean = true;
    for (auto &[m, c] : p.terms())
        for (int i = 1; i <= n_; ++i)
            if (m[i - 1] > n_ - i) clean = false;
    if (clean) return;
    Poly out(p.vars(), p.trunc());
    for (auto &[m, c] : p.terms())
        for (auto &[r, rc] : normal_form(m)) out.add_term(r, c * rc);
    p = std::move(out);
}

FlagModel::FlagModel(int n) : n_(n)
{
    if (n < 1) throw invalid_spec("BadDimension", "n must be positive");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    vs_ = std::make_shared<VarSet>(names, std::vector<int>{},
                                   std::make_shared<CoinvariantReducer>(n));
}

Poly FlagModel::x(int b) const { return Poly::variable(vs_, b - 1, dimension()); }

Poly FlagModel::reduce(Poly f) const
{
    f.normalize();
    return f.with_trunc(dimension());
}

EntrySpec FlagModel::entry(int i, int j) const
{
    const int D = dimension();
    Poly one = Poly::constant(vs_, YPoly(1), D);
    Poly c = one;
    for (int b = 1; b <= i; ++b) c = c * (one + x(b));
    for (int b = 1; b <= j; ++b) {
        // 1 / (1 - x_b) = sum_m x_b^m
        Poly g = one, pw = one;
        for (int m = 1; m <= D; ++m) {
            pw = pw * x(b);
            if (pw.is_zero()) break;
            g += pw;
        }
        c = c * g;
    }
    EntrySpec e{long(i - j), {}};
    for (int k = 0; k <= D; ++k) e.chern.push_back(c.homogeneous(k));
    e.chern[0] = one;
    return e;
}

Poly FlagModel::ty_ambient(int D, const YEval &ye) const
{
    D = min_trunc(D, dimension());
    auto ell = qy_log_series(D);
    Poly L(vs_, D);
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j) {
            Poly r = (x(i) - x(j)).with_trunc(D), pw = Poly::constant(vs_, YPoly(1), D);
            for (int k = 1; k <= D; ++k) {
                pw = pw * r;
                if (pw.is_zero()) break;
                L.axpy(ye(ell[k]), pw);
            }
        }
    return series_exp(L);
}

Poly FlagModel::csm_ambient() const
{
    const int D = dimension();
    Poly c = Poly::constant(vs_, YPoly(1), D);
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j) c = c * (Poly::constant(vs_, YPoly(1), D) + x(i) - x(j));
    return c;
}

YPoly FlagModel::top_coefficient(const Poly &f) const
{
    Mono top(n_);
    for (int i = 1; i <= n_; ++i) top[i - 1] = n_ - i;
    return f.coeff(top);
}

// ---- orbit classes

namespace {

void check_size(const FlagModel &m, const Involution &z)
{
    if (z.n() != m.n())
        throw invalid_spec("SizeMismatch", "involution of size " + std::to_string(z.n()) +
                                               " on Fl_" + std::to_string(m.n()));
}

Poly orbit_prefactor(int ell, Group g, int deg, const YEval &ye)
{
    auto rv = r_varset(ell);
    Poly pre = Poly::constant(rv, YPoly(1), deg);
    for (int i = 2; i <= ell; ++i)
        for (int j = 1; j < i; ++j) {
            pre = pre * ty_linear({{i, 1}, {j, 1}}, ell, deg, ye);
            pre = pre * series_inv(ty_linear({{i, 1}, {j, -1}}, ell, deg, ye));
        }
    if (g == Group::Sp) {
        for (int i = 1; i <= ell; ++i) {
            Poly t = ty_linear({{i, 1}}, ell, deg, ye);
            pre = pre * t * t;
        }
        pre *= YPoly(Rational(1, 1L << ell));
    }
    return pre;
}

} // namespace

OrbitResult orbit_motivic_class(const FlagModel &m, const Involution &z, Group g,
                                const YEval &ye, bool cap)
{
    check_size(m, z);
    OrbitResult r;
    if (g == Group::Sp)
        r.diagnostics.push_back("Sp formula evaluated as stated; it fails integrality and "
                                "fixed-point checks, treat as unverified");
    if (g == Group::Sp)
        for (int i = 1; i <= z.n(); ++i)
            if (z(i) == i) {
                r.diagnostics.push_back("Sp involution with fixed points: evaluated as stated");
                break;
            }
    r.data = vexillary_data(z, g);
    r.slots = mu_flag(r.data, m.n());
    const int D = m.dimension();
    const Partition &lam = r.data.lambda;
    const int ell = int(lam.size());
    VarSetPtr vs = m.ring();
    if (size_of(lam) > D) {
        r.cls = Poly(vs, D);
        return r;
    }
    const int B = D - size_of(lam);
    std::vector<EntrySpec> entries;
    std::vector<RSeries> W;
    for (auto &s : r.slots) {
        entries.push_back(m.entry(s.i, s.j));
        W.push_back(ty_twist(entries.back(), B, ye, true));
    }
    std::vector<int> rho(ell);
    std::iota(rho.begin(), rho.end(), 0);
    Poly pre = orbit_prefactor(ell, g, B, ye);
    r.cls = apply_theta_operator(pre, lam, rho, W, entries, vs, D);
    if (cap) r.cls = r.cls * m.ty_ambient(D, ye);
    r.cls = m.reduce(r.cls);
    return r;
}

Poly orbit_fundamental_class(const FlagModel &m, const Involution &z, Group g)
{
    check_size(m, z);
    auto d = vexillary_data(z, g);
    auto slots = mu_flag(d, m.n());
    std::vector<EntrySpec> entries;
    for (auto &s : slots) entries.push_back(m.entry(s.i, s.j));
    Poly f = pfaffian_theta(d.lambda, entries, m.ring(), m.dimension());
    if (g == Group::Sp) f *= YPoly(Rational(1, 1L << d.ell));
    return m.reduce(f.homogeneous(size_of(d.lambda)));
}

ExpansionCheck verify_expansion(const FlagModel &m, const Involution &z, Group g,
                                const std::vector<std::pair<Rational, Involution>> &claimed)
{
    return verify_expansion(m, orbit_motivic_class(m, z, g, YEval::at(-1)).cls, g, claimed);
}

ExpansionCheck verify_expansion(const FlagModel &m, const Poly &cls, Group g,
                                const std::vector<std::pair<Rational, Involution>> &claimed)
{
    Poly res = cls;
    for (auto &[c, w] : claimed) res.axpy(YPoly(-c), orbit_fundamental_class(m, w, g));
    res = m.reduce(res);
    return {res.is_zero(), res};
}

std::vector<Rational> expand_in_orbit_basis(const FlagModel &m, const Poly &cls, Group g,
                                            const std::vector<Involution> &candidates)
{
    const Poly target = m.reduce(cls);
    for (auto &[mono, c] : target.terms())
        if (!c.is_constant())
            throw inconsistency("Unrepresentable", "class depends on y; evaluate y first");
    std::vector<Poly> basis;
    for (auto &w : candidates) basis.push_back(orbit_fundamental_class(m, w, g));
    // rows = monomials, columns = candidates, augmented by the target
    std::set<Mono> monos;
    for (auto &b : basis)
        for (auto &[mono, c] : b.terms()) monos.insert(mono);
    for (auto &[mono, c] : target.terms()) monos.insert(mono);
    const size_t nc = basis.size();
    std::vector<std::vector<Rational>> a;
    for (auto &mono : monos) {
        std::vector<Rational> row(nc + 1);
        for (size_t j = 0; j < nc; ++j) row[j] = basis[j].coeff(mono).constant();
        row[nc] = target.coeff(mono).constant();
        a.push_back(std::move(row));
    }
    std::vector<size_t> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < nc; ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size())
            throw inconsistency("DependentBasis", "fundamental class of candidate " +
                                                      candidates[c].str() +
                                                      " is a combination of the others");
        std::swap(a[r], a[p]);
        Rational inv = 1 / a[r][c];
        for (auto &v : a[r]) v *= inv;
        for (size_t q = 0; q < a.size(); ++q) {
            if (q == r || a[q][c] == 0) continue;
            Rational f = a[q][c];
            for (size_t k = 0; k <= nc; ++k) a[q][k] -= f * a[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (size_t q = r; q < a.size(); ++q)
        if (a[q][nc] != 0)
            throw inconsistency("Unrepresentable", "class is not a combination of the candidates");
    std::vector<Rational> out(nc);
    for (size_t t = 0; t < r; ++t) out[pivcol[t]] = a[t][nc];
    return out;
}

} // namespace hirz
