#include "hirz/grassmann.hpp"

#include "hirz/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace hirz {

namespace {
constexpr int kCacheVersion = 2;

std::string part_key(const Partition &mu)
{
    std::string s;
    for (size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
    return s;
}

void strict_partitions(int d, int max_part, Partition &cur, std::vector<Partition> &out)
{
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(d, max_part); p >= 1; --p) {
        cur.push_back(p);
        strict_partitions(d - p, p - 1, cur, out);
        cur.pop_back();
    }
}

void weighted_monos(const VarSet &vs, int d, size_t i, Mono &cur, std::vector<Mono> &out)
{
    if (i == size_t(vs.size())) {
        if (d == 0) out.push_back(cur);
        return;
    }
    for (int e = 0; e * vs.weight(int(i)) <= d; ++e) {
        cur[i] = e;
        weighted_monos(vs, d - e * vs.weight(int(i)), i + 1, cur, out);
    }
    cur[i] = 0;
}

// Gauss-Jordan over Q; m is square and invertible
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m)
{
    const size_t k = m.size();
    std::vector<std::vector<Rational>> inv(k, std::vector<Rational>(k));
    for (size_t i = 0; i < k; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < k; ++c) {
        size_t piv = c;
        while (piv < k && m[piv][c] == 0) ++piv;
        if (piv == k) throw std::logic_error("singular Q-function matrix");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Rational f = 1 / m[c][c];
        for (size_t j = 0; j < k; ++j) {
            m[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational g = m[r][c];
            for (size_t j = 0; j < k; ++j) {
                m[r][j] -= g * m[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}
} // namespace

Space space_from_string(const std::string &s)
{
    if (s == "LG" || s == "lg") return Space::LG;
    if (s == "OG" || s == "og") return Space::OG;
    throw invalid_spec("UnknownSpace", "space must be LG or OG, got '" + s + "'");
}

const char *space_name(Space s) { return s == Space::LG ? "LG" : "OG"; }

YPoly SchubertClass::coeff(const Partition &mu) const
{
    auto it = coeffs.find(mu);
    return it == coeffs.end() ? YPoly() : it->second;
}

std::vector<std::pair<Partition, YPoly>> SchubertClass::sorted() const
{
    std::vector<std::pair<Partition, YPoly>> v(coeffs.begin(), coeffs.end());
    std::stable_sort(v.begin(), v.end(), [](auto &a, auto &b) {
        int sa = size_of(a.first), sb = size_of(b.first);
        if (sa != sb) return sa < sb;
        return a.first < b.first;
    });
    return v;
}

Partition staircase(int n)
{
    Partition p;
    for (int i = n; i >= 1; --i) p.push_back(i);
    return p;
}

GrassmannModel::GrassmannModel(Space space, int n, std::optional<std::string> cache_dir)
    : space_(space), n_(n), cache_dir_(std::move(cache_dir))
{
    if (n < 1) throw invalid_spec("BadDimension", "n must be positive");
    const int D = dimension();
    std::vector<std::string> names;
    std::vector<int> weights;
    for (int k = 1; k <= D; k += 2) {
        names.push_back("q" + std::to_string(k));
        weights.push_back(k);
    }
    vs_ = make_varset(names, weights);
    zero_ = Poly(vs_, D);
    q_.assign(D + 1, zero_);
    q_[0] = Poly::constant(vs_, YPoly(1), D);
    for (int k = 1; k <= D; ++k) {
        if (k % 2) {
            q_[k] = Poly::variable(vs_, k / 2, D);
            continue;
        }
        // 2 q_k = -sum_{0<i<k} (-1)^i q_i q_{k-i}
        Poly acc(vs_, D);
        for (int i = 1; i < k; ++i) acc.axpy(YPoly(i % 2 ? 1 : -1), q_[i] * q_[k - i]);
        q_[k] = acc * YPoly(Rational(1, 2));
    }
    load_cache();
}

GrassmannModel::~GrassmannModel()
{
    try {
        save_cache();
    } catch (...) {
    }
}

std::string GrassmannModel::name() const
{
    return std::string(space_name(space_)) + "(" + std::to_string(n_) + ")";
}

const Poly &GrassmannModel::q(int k) const
{
    if (k < 0 || k >= int(q_.size())) return zero_;
    return q_[k];
}

Poly GrassmannModel::qfun(const Partition &mu) const
{
    if (!is_strict(mu)) throw invalid_spec("NotStrict", "Q-functions need strict partitions");
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = qcache_.find(mu);
        if (it != qcache_.end()) return it->second;
    }
    const int D = dimension();
    Poly r(vs_, D);
    if (size_of(mu) <= D) {
        EntrySpec e{long(n_), q_};
        std::vector<EntrySpec> entries(mu.size(), e);
        r = pfaffian_theta(mu, entries, vs_, D);
    }
    std::lock_guard<std::mutex> g(mu_);
    qcache_.emplace(mu, r);
    cache_dirty_ = true;
    return r;
}

const GrassmannModel::DegreeBasis &GrassmannModel::degree_basis(int d) const
{
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = bases_.find(d);
        if (it != bases_.end()) return it->second;
    }
    DegreeBasis b;
    Partition cur;
    strict_partitions(d, d, cur, b.parts);
    Mono m(vs_->size(), 0);
    weighted_monos(*vs_, d, 0, m, b.monos);
    // as many odd-part partitions as strict ones
    if (b.monos.size() != b.parts.size()) throw std::logic_error("Q-function basis size mismatch");
    std::vector<std::vector<Rational>> mat(b.monos.size(), std::vector<Rational>(b.parts.size()));
    for (size_t j = 0; j < b.parts.size(); ++j) {
        Poly qm = qfun(b.parts[j]);
        for (size_t i = 0; i < b.monos.size(); ++i) mat[i][j] = qm.coeff(b.monos[i]).constant();
    }
    b.inv = invert(std::move(mat));
    std::lock_guard<std::mutex> g(mu_);
    return bases_.emplace(d, std::move(b)).first->second;
}

SchubertClass GrassmannModel::to_basis(const Poly &f) const
{
    SchubertClass out;
    out.space = space_;
    out.n = n_;
    const int D = dimension();
    std::map<int, std::map<Mono, YPoly>> by_degree;
    for (auto &[m, c] : f.terms()) {
        int d = vs_->degree(m);
        if (d <= D) by_degree[d].emplace(m, c);
    }
    for (auto &[d, terms] : by_degree) {
        const DegreeBasis &b = degree_basis(d);
        for (size_t j = 0; j < b.parts.size(); ++j) {
            const Partition &mu = b.parts[j];
            if (!mu.empty() && mu[0] > n_) continue; // zero in cohomology
            YPoly coef;
            for (size_t i = 0; i < b.monos.size(); ++i) {
                if (b.inv[j][i] == 0) continue;
                auto it = terms.find(b.monos[i]);
                if (it != terms.end()) coef += it->second * b.inv[j][i];
            }
            if (space_ == Space::OG) coef *= Rational(1) << mu.size(); // P_mu = Q_mu / 2^l
            if (!coef.is_zero()) out.coeffs[mu] = coef;
        }
    }
    return out;
}

Poly GrassmannModel::from_basis(const SchubertClass &c) const
{
    Poly r(vs_, dimension());
    for (auto &[mu, v] : c.coeffs) {
        YPoly s = v;
        if (space_ == Space::OG) s *= Rational(1) / (Rational(1) << mu.size());
        r.axpy(s, qfun(mu));
    }
    return r;
}

YPoly GrassmannModel::integrate(const Poly &f) const
{
    return to_basis(f.homogeneous(dimension())).coeff(staircase(n_));
}

std::vector<EntrySpec> GrassmannModel::locus_entries(const LocusSpec &spec, int D) const
{
    std::vector<Poly> c;
    for (int k = 0; k <= D && k < int(q_.size()); ++k) c.push_back(q_[k].with_trunc(D));
    std::vector<EntrySpec> out;
    for (int i = 1; i <= spec.s(); ++i) out.push_back(EntrySpec{spec.entry_rank(i), c});
    return out;
}

std::vector<Poly> GrassmannModel::tangent_power_sums(int D) const
{
    // c(S^v) = sum_k q_k, rank n; its even power sums vanish
    std::vector<Poly> c(q_.begin(), q_.begin() + D + 1);
    for (auto &ck : c) ck = ck.with_trunc(D);
    auto p = newton_power_sums(c, n_, D, vs_);
    std::vector<Poly> pt(D + 1, Poly(vs_, D));
    // Sym^2 (LG) or Lambda^2 + S^v (OG): (sum_j C(k,j) p_j p_{k-j} +- 2^k p_k)/2
    const int sgn = space_ == Space::LG ? 1 : -1;
    for (int k = 1; k <= D; ++k) {
        Poly acc(vs_, D);
        for (int j = 0; j <= k; ++j) {
            if (p[j].is_zero() || p[k - j].is_zero()) continue;
            acc.axpy(YPoly(generalized_binomial(k, j)), p[j] * p[k - j]);
        }
        acc.axpy(YPoly(Rational(sgn) * (Rational(1) << k)), p[k]);
        acc *= YPoly(Rational(1, 2));
        if (space_ == Space::OG) acc += p[k];
        pt[k] = std::move(acc);
    }
    return pt;
}

Poly GrassmannModel::ty_ambient(int D, const YEval &ye) const
{
    D = min_trunc(D, dimension());
    auto pt = tangent_power_sums(D);
    auto ell = qy_log_series(D);
    Poly L(vs_, D);
    for (int k = 1; k <= D; ++k) L.axpy(ye(ell[k]), pt[k]);
    return series_exp(L);
}

Poly GrassmannModel::csm_ambient() const
{
    const int D = dimension();
    auto pt = tangent_power_sums(D);
    pt[0] = Poly(vs_, D);
    auto c = chern_from_power_sums(pt, D, vs_);
    Poly r(vs_, D);
    for (auto &ck : c) r += ck;
    return r;
}

void GrassmannModel::load_cache()
{
    if (!cache_dir_) return;
    namespace fs = std::filesystem;
    fs::path file = fs::path(*cache_dir_) / ("qfun-n" + std::to_string(n_) + ".json");
    std::ifstream in(file);
    if (!in) return;
    try {
        auto j = nlohmann::json::parse(in);
        if (j.value("version", 0) != kCacheVersion || j.value("n", 0) != n_ ||
            j.value("degree", -1) != dimension())
            return;
        std::map<Partition, Poly> loaded;
        for (auto &[key, terms] : j.at("q").items()) {
            Partition mu;
            for (auto &x : nlohmann::json::parse("[" + key + "]")) mu.push_back(x.get<int>());
            Poly p(vs_, dimension());
            for (auto &t : terms) {
                Mono m = t.at(0).get<Mono>();
                if (int(m.size()) != vs_->size()) return;
                p.add_term(m, YPoly(parse_rational(t.at(1).get<std::string>())));
            }
            loaded.emplace(mu, std::move(p));
        }
        std::lock_guard<std::mutex> g(mu_);
        qcache_ = std::move(loaded);
    } catch (const std::exception &) {
        // a damaged cache is ignored; everything is recomputed
    }
}

void GrassmannModel::save_cache() const
{
    if (!cache_dir_) return;
    std::lock_guard<std::mutex> g(mu_);
    if (!cache_dirty_) return;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(*cache_dir_, ec);
    nlohmann::json j;
    j["version"] = kCacheVersion;
    j["n"] = n_;
    j["degree"] = dimension();
    nlohmann::json q = nlohmann::json::object();
    for (auto &[mu, p] : qcache_) {
        nlohmann::json terms = nlohmann::json::array();
        for (auto &[m, c] : p.sorted_terms())
            terms.push_back({m, to_fraction_string(c.constant())});
        q[part_key(mu)] = terms;
    }
    j["q"] = q;
    fs::path file = fs::path(*cache_dir_) / ("qfun-n" + std::to_string(n_) + ".json");
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
    }
    fs::rename(tmp, file, ec);
    cache_dirty_ = false;
}

Poly x_realization(const Poly &f, int vars)
{
    std::vector<std::string> names;
    for (int i = 1; i <= vars; ++i) names.push_back("x" + std::to_string(i));
    VarSetPtr xs = make_varset(names);
    const VarSet &qs = *f.vars();
    int D = f.trunc();
    if (D == kUnbounded) D = std::max(0, f.max_degree());
    // Q_k(x): prod_i (1 + 2 sum_{m>=1} x_i^m t^m)
    std::vector<Poly> q(D + 1, Poly(xs, D));
    q[0] = Poly::constant(xs, YPoly(1), D);
    for (int i = 0; i < vars; ++i) {
        std::vector<Poly> nq(D + 1, Poly(xs, D));
        for (int k = 0; k <= D; ++k) {
            if (q[k].is_zero()) continue;
            for (int m = 0; k + m <= D; ++m) {
                Mono e(vars, 0);
                e[i] = m;
                nq[k + m].axpy(YPoly(m ? 2 : 1), q[k] * Poly::monomial(xs, e, YPoly(1), D));
            }
        }
        q = std::move(nq);
    }
    Poly out(xs, D);
    for (auto &[m, c] : f.terms()) {
        Poly t = Poly::constant(xs, c, D);
        for (size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t = t * q[qs.weight(int(i))];
        out += t;
    }
    return out;
}

SchubertResult schubert_class(const GrassmannModel &m, const Partition &lambda, const YEval &ye)
{
    if (lambda.empty() || !is_strict(lambda) || lambda[0] > m.n())
        throw invalid_spec("BadSchubertIndex",
                           "need a nonempty strict partition with parts <= n, got " +
                               partition_str(lambda));
    Family f = m.space() == Space::LG ? Family::C : Family::B;
    auto spec = LocusSpec::make(f, m.n(), 1, lambda);
    SchubertResult r;
    MotivicExpansion ex;
    ClassOptions opt;
    opt.ye = ye;
    const int D = m.dimension();
    Poly unc = motivic_class_of_locus(spec, m, D, opt, &ex);
    Poly cap = unc * m.ty_ambient(D, ye);
    r.uncapped = m.to_basis(unc);
    r.capped = m.to_basis(cap);
    r.strata_coefficients = ex.coefficients;
    r.diagnostics = ex.diagnostics;
    return r;
}

SchubertResult schubert_csm(const GrassmannModel &m, const Partition &lambda)
{
    return schubert_class(m, lambda, YEval::at(-1));
}

YPoly chi_y(const GrassmannModel &m)
{
    return m.integrate(m.ty_ambient(m.dimension(), YEval::generic()));
}

} // namespace hirz
