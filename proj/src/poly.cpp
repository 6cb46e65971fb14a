#include "hirz/poly.hpp"

#include "hirz/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hirz {

VarSet::VarSet(std::vector<std::string> names, std::vector<int> weights,
               std::shared_ptr<const Reducer> reducer)
    : names_(std::move(names)), weights_(std::move(weights)), reducer_(std::move(reducer))
{
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size())
        throw invalid_spec("BadVarSet", "weights and names differ in length");
    for (int w : weights_)
        if (w < 1) throw invalid_spec("BadVarSet", "variable weights must be positive");
}

int VarSet::degree(const Mono &m) const
{
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * weights_[i];
    return d;
}

int VarSet::index_of(const std::string &name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : int(it - names_.begin());
}

VarSetPtr make_varset(std::vector<std::string> names, std::vector<int> weights)
{
    return std::make_shared<VarSet>(std::move(names), std::move(weights));
}

Poly Poly::constant(VarSetPtr vs, const YPoly &c, int trunc)
{
    Poly p(vs, trunc);
    p.add_term(Mono(p.vs_->size(), 0), c);
    return p;
}

Poly Poly::variable(VarSetPtr vs, int i, int trunc)
{
    Poly p(vs, trunc);
    Mono m(p.vs_->size(), 0);
    m[i] = 1;
    p.add_term(m, YPoly(1));
    return p;
}

Poly Poly::monomial(VarSetPtr vs, const Mono &m, const YPoly &c, int trunc)
{
    Poly p(vs, trunc);
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Mono &m, const YPoly &c)
{
    if (c.is_zero()) return;
    if (trunc_ != kUnbounded && vs_->degree(m) > trunc_) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

YPoly Poly::coeff(const Mono &m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? YPoly() : it->second;
}

YPoly Poly::constant_term() const
{
    if (!vs_) return {};
    return coeff(Mono(vs_->size(), 0));
}

int Poly::min_degree() const
{
    int d = -1;
    for (const auto &[m, c] : t_) {
        int e = vs_->degree(m);
        if (d < 0 || e < d) d = e;
    }
    return d;
}

int Poly::max_degree() const
{
    int d = -1;
    for (const auto &[m, c] : t_) d = std::max(d, vs_->degree(m));
    return d;
}

Poly Poly::homogeneous(int d) const
{
    Poly r(vs_, trunc_);
    for (const auto &[m, c] : t_)
        if (vs_->degree(m) == d) r.t_.emplace(m, c);
    return r;
}

Poly Poly::truncated(int d) const
{
    Poly r(vs_, min_trunc(trunc_, d));
    for (const auto &[m, c] : t_)
        if (vs_->degree(m) <= r.trunc_ || r.trunc_ == kUnbounded) r.t_.emplace(m, c);
    return r;
}

Poly Poly::with_trunc(int d) const
{
    Poly r(vs_, d);
    for (const auto &[m, c] : t_)
        if (d == kUnbounded || vs_->degree(m) <= d) r.t_.emplace(m, c);
    return r;
}

Poly Poly::eval_y(const YEval &ye) const
{
    if (!ye.fixed) return *this;
    Poly r(vs_, trunc_);
    for (const auto &[m, c] : t_) r.add_term(m, ye(c));
    return r;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto &[m, c] : r.t_) c = -c;
    return r;
}

static void check_compatible(const Poly &a, const Poly &b)
{
    if (a.vars() && b.vars() && a.vars() != b.vars() && a.vars()->size() != b.vars()->size())
        throw inconsistency("VarSetMismatch", "polynomials over different variable sets");
}

Poly &Poly::operator+=(const Poly &o)
{
    if (!vs_) {
        *this = o;
        return *this;
    }
    check_compatible(*this, o);
    for (const auto &[m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
    if (!vs_) {
        *this = -o;
        return *this;
    }
    check_compatible(*this, o);
    for (const auto &[m, c] : o.t_) add_term(m, -c);
    return *this;
}

void Poly::axpy(const YPoly &s, const Poly &b)
{
    if (s.is_zero()) return;
    if (!vs_) *this = Poly(b.vs_, b.trunc_);
    for (const auto &[m, c] : b.t_) add_term(m, s * c);
}

Poly &Poly::operator*=(const YPoly &s)
{
    if (s.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto &[m, c] : t_) c = c * s;
    return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
    if (!a.vs_) return Poly(b.vs_, b.trunc_);
    if (!b.vs_) return Poly(a.vs_, a.trunc_);
    check_compatible(a, b);
    Poly r(a.vs_, min_trunc(a.trunc_, b.trunc_));
    if (a.t_.empty() || b.t_.empty()) return r;
    const VarSet &vs = *a.vs_;
    std::vector<std::pair<const Mono *, int>> bd;
    bd.reserve(b.t_.size());
    std::vector<const YPoly *> bc;
    for (const auto &[m, c] : b.t_) {
        bd.emplace_back(&m, vs.degree(m));
        bc.push_back(&c);
    }
    Mono prod(vs.size());
    for (const auto &[ma, ca] : a.t_) {
        int da = vs.degree(ma);
        if (r.trunc_ != kUnbounded && da > r.trunc_) continue;
        for (size_t j = 0; j < bd.size(); ++j) {
            if (r.trunc_ != kUnbounded && da + bd[j].second > r.trunc_) continue;
            const Mono &mb = *bd[j].first;
            for (size_t k = 0; k < prod.size(); ++k) prod[k] = ma[k] + mb[k];
            auto it = r.t_.try_emplace(prod).first;
            it->second.add_mul(ca, *bc[j]);
            if (it->second.is_zero()) r.t_.erase(it);
        }
    }
    r.normalize();
    return r;
}

void Poly::normalize()
{
    if (vs_ && vs_->reducer()) vs_->reducer()->reduce(*this);
}

std::vector<std::pair<Mono, YPoly>> Poly::sorted_terms() const
{
    std::vector<std::pair<Mono, YPoly>> v(t_.begin(), t_.end());
    std::stable_sort(v.begin(), v.end(), [this](const auto &x, const auto &y) {
        int dx = vs_->degree(x.first), dy = vs_->degree(y.first);
        if (dx != dy) return dx < dy;
        return x.first > y.first;
    });
    return v;
}

std::string Poly::mono_str(const Mono &m) const
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!first) os << "*";
        first = false;
        os << vs_->name(int(i));
        if (m[i] != 1) os << "^" << m[i];
    }
    return first ? "1" : os.str();
}

std::string Poly::str() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : sorted_terms()) {
        if (!first) os << " + ";
        first = false;
        std::string ms = mono_str(m);
        if (ms == "1")
            os << "(" << c.str() << ")";
        else if (c == YPoly(1))
            os << ms;
        else
            os << "(" << c.str() << ")*" << ms;
    }
    return os.str();
}

// ---- series

namespace {

int require_finite(const Poly &s, const char *what)
{
    if (s.trunc() == kUnbounded)
        throw invalid_spec("UnboundedSeries", std::string(what) + " needs a finite truncation degree");
    return s.trunc();
}

std::vector<Poly> components(const Poly &s, int D)
{
    std::vector<Poly> c(D + 1, Poly(s.vars(), D));
    for (const auto &[m, v] : s.terms()) {
        int d = s.vars()->degree(m);
        if (d <= D) c[d].add_term(m, v);
    }
    return c;
}

} // namespace

Poly series_inv(const Poly &s)
{
    int D = require_finite(s, "series_inv");
    YPoly c0 = s.constant_term();
    if (c0.is_zero() || !c0.is_constant())
        throw invalid_spec("NonUnitConstantTerm", "series_inv: constant term is not a nonzero rational");
    Rational inv0 = 1 / c0.constant();
    auto sc = components(s, D);
    std::vector<Poly> r(D + 1, Poly(s.vars(), D));
    r[0] = Poly::constant(s.vars(), YPoly(inv0), D);
    for (int d = 1; d <= D; ++d) {
        Poly acc(s.vars(), D);
        for (int k = 1; k <= d; ++k) {
            if (sc[k].is_zero() || r[d - k].is_zero()) continue;
            acc += sc[k] * r[d - k];
        }
        r[d] = acc * YPoly(-inv0);
    }
    Poly out(s.vars(), D);
    for (auto &c : r) out += c;
    return out;
}

Poly series_exp(const Poly &s)
{
    int D = require_finite(s, "series_exp");
    if (!s.constant_term().is_zero())
        throw invalid_spec("BadConstantTerm", "series_exp: constant term must vanish");
    auto sc = components(s, D);
    std::vector<Poly> e(D + 1, Poly(s.vars(), D));
    e[0] = Poly::constant(s.vars(), YPoly(1), D);
    for (int d = 1; d <= D; ++d) {
        Poly acc(s.vars(), D);
        for (int k = 1; k <= d; ++k) {
            if (sc[k].is_zero() || e[d - k].is_zero()) continue;
            acc += (sc[k] * e[d - k]) * YPoly(Rational(k));
        }
        e[d] = acc * YPoly(Rational(1, d));
    }
    Poly out(s.vars(), D);
    for (auto &c : e) out += c;
    return out;
}

Poly series_log(const Poly &s)
{
    int D = require_finite(s, "series_log");
    if (s.constant_term() != YPoly(1))
        throw invalid_spec("BadConstantTerm", "series_log: constant term must be 1");
    auto sc = components(s, D);
    std::vector<Poly> l(D + 1, Poly(s.vars(), D));
    for (int d = 1; d <= D; ++d) {
        Poly acc = sc[d];
        Poly corr(s.vars(), D);
        for (int k = 1; k < d; ++k) {
            if (l[k].is_zero() || sc[d - k].is_zero()) continue;
            corr += (l[k] * sc[d - k]) * YPoly(Rational(k));
        }
        acc -= corr * YPoly(Rational(1, d));
        l[d] = acc;
    }
    Poly out(s.vars(), D);
    for (auto &c : l) out += c;
    return out;
}

std::vector<Poly> newton_power_sums(const std::vector<Poly> &chern, long rank, int D,
                                    const VarSetPtr &vs)
{
    auto c = [&](int i) { return i < int(chern.size()) ? chern[i] : Poly(vs, D); };
    std::vector<Poly> p(D + 1, Poly(vs, D));
    p[0] = Poly::constant(vs, YPoly(Rational(rank)), D);
    for (int k = 1; k <= D; ++k) {
        Poly acc = c(k) * Poly::constant(vs, YPoly(Rational(k)), D);
        if (k % 2 == 0) acc = -acc;
        for (int i = 1; i < k; ++i) {
            Poly t = c(i) * p[k - i];
            if (i % 2 == 0)
                acc -= t;
            else
                acc += t;
        }
        p[k] = acc.with_trunc(D);
    }
    return p;
}

std::vector<Poly> chern_from_power_sums(const std::vector<Poly> &p, int D, const VarSetPtr &vs)
{
    std::vector<Poly> c(D + 1, Poly(vs, D));
    c[0] = Poly::constant(vs, YPoly(1), D);
    for (int k = 1; k <= D; ++k) {
        Poly acc(vs, D);
        for (int i = 1; i <= k; ++i) {
            Poly t = c[k - i] * p[i];
            if (i % 2 == 0)
                acc -= t;
            else
                acc += t;
        }
        c[k] = acc * YPoly(Rational(1, k));
    }
    return c;
}

Rational generalized_binomial(long m, long k)
{
    if (k < 0) return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i) r = r * Rational(m - i) / Rational(i + 1);
    return r;
}

} // namespace hirz
