#include "hirz/loci.hpp"

#include "hirz/errors.hpp"

#include <set>
#include <sstream>

namespace hirz {

bool is_partition(const std::vector<int> &v)
{
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0) return false;
        if (i && v[i] > v[i - 1]) return false;
    }
    return true;
}

bool is_strict(const Partition &l)
{
    for (size_t i = 1; i < l.size(); ++i)
        if (l[i] >= l[i - 1]) return false;
    return true;
}

bool is_k_strict(const Partition &l, int k)
{
    for (size_t i = 0; i + 1 < l.size(); ++i)
        if (l[i] > k && l[i] <= l[i + 1]) return false;
    return true;
}

bool is_rho_strict(const Partition &l, const std::vector<int> &rho)
{
    for (size_t i = 0; i + 1 < l.size(); ++i)
        if (l[i] + rho[i] < l[i + 1] + rho[i + 1]) return false;
    return true;
}

int size_of(const Partition &l)
{
    int s = 0;
    for (int v : l) s += v;
    return s;
}

std::string partition_str(const Partition &l)
{
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << ')';
    return os.str();
}

Family family_from_string(const std::string &s)
{
    if (s == "B" || s == "b") return Family::B;
    if (s == "C" || s == "c") return Family::C;
    throw invalid_spec("BadFamily", "family must be B or C, got '" + s + "'");
}

const char *family_name(Family f) { return f == Family::B ? "B" : "C"; }

std::vector<int> rho_of(const std::vector<int> &q)
{
    std::vector<int> rho(q.size(), 0);
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (q[j] >= 1 - q[i]) ++rho[i];
    return rho;
}

Partition lambda_of(const LocusSpec &spec)
{
    Partition l(spec.q.size());
    for (int i = 0; i < spec.s(); ++i) {
        l[i] = spec.q[i] + spec.p - 1;
        if (i >= spec.a) l[i] += (i + 1) - spec.rho[i];
    }
    return l;
}

LocusSpec LocusSpec::make(Family f, int n, int p, std::vector<int> q)
{
    auto bad = [](const std::string &m) { return invalid_spec("InvalidSpec", m); };
    if (n < 1) throw bad("n must be positive");
    if (p < 1 || p > n) throw bad("need 1 <= p <= n");
    if (q.empty()) throw bad("q must be nonempty");
    if (int(q.size()) > n + 1 - p) throw bad("length of q exceeds n+1-p");
    std::set<int> absval;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) throw bad("q entries must be nonzero");
        if (q[i] <= -n || q[i] > n) throw bad("q entries must satisfy -n < q_i <= n");
        if (i && q[i] >= q[i - 1]) throw bad("q must be strictly decreasing");
        if (!absval.insert(std::abs(q[i])).second)
            throw bad("q_1..q_a, -q_{a+1}..-q_s must be distinct");
    }
    LocusSpec s;
    s.family = f;
    s.n = n;
    s.p = p;
    s.q = std::move(q);
    s.a = 0;
    while (s.a < s.s() && s.q[s.a] > 0) ++s.a;
    s.rho = rho_of(s.q);
    s.lambda = lambda_of(s);
    if (!is_partition(s.lambda))
        throw bad("lambda(p,q) = " + partition_str(s.lambda) + " is not a partition");
    if (!is_k_strict(s.lambda, p - 1))
        throw bad("lambda(p,q) = " + partition_str(s.lambda) + " is not (p-1)-strict");
    return s;
}

long LocusSpec::entry_rank(int i) const
{
    int qi = q[i - 1];
    return qi > 0 ? p + qi - 2 : p + qi - 1;
}

Poly Model::ty_ambient(int, const YEval &) const
{
    throw invalid_spec("NoAmbient", "model '" + name() + "' has no ambient class");
}

// ---- abstract model

std::shared_ptr<AbstractModel> AbstractModel::by_slot(int slots, int D)
{
    auto m = std::make_shared<AbstractModel>();
    m->D_ = D;
    std::vector<std::string> names;
    std::vector<int> w;
    for (int i = 1; i <= slots; ++i) {
        m->keys_.push_back(i);
        for (int k = 1; k <= D; ++k) {
            names.push_back("c(" + std::to_string(i) + ")_" + std::to_string(k));
            w.push_back(k);
        }
    }
    m->vs_ = make_varset(names, w);
    return m;
}

std::shared_ptr<AbstractModel> AbstractModel::by_flag(std::vector<int> flags, int D)
{
    auto m = std::make_shared<AbstractModel>();
    m->by_flag_ = true;
    m->D_ = D;
    std::sort(flags.begin(), flags.end(), std::greater<>());
    flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
    m->keys_ = flags;
    std::vector<std::string> names;
    std::vector<int> w;
    for (int q : flags)
        for (int k = 1; k <= D; ++k) {
            names.push_back("c<" + std::to_string(q) + ">_" + std::to_string(k));
            w.push_back(k);
        }
    m->vs_ = make_varset(names, w);
    return m;
}

std::vector<EntrySpec> AbstractModel::locus_entries(const LocusSpec &spec, int D) const
{
    if (D > D_) throw invalid_spec("TruncationTooLarge", "abstract symbols only exist up to the model truncation");
    std::vector<EntrySpec> out;
    for (int i = 1; i <= spec.s(); ++i) {
        int key = by_flag_ ? spec.q[i - 1] : i;
        auto it = std::find(keys_.begin(), keys_.end(), key);
        if (it == keys_.end())
            throw invalid_spec("MissingSymbols", "abstract model has no symbols for slot " + std::to_string(i));
        int base = int(it - keys_.begin()) * D_;
        EntrySpec e{spec.entry_rank(i), {Poly::constant(vs_, YPoly(1), D)}};
        for (int k = 1; k <= D; ++k) e.chern.push_back(Poly::variable(vs_, base + k - 1, D));
        out.push_back(std::move(e));
    }
    return out;
}

// ---- resolution classes

Poly resolution_prefactor(const LocusSpec &spec, int deg, const YEval &ye)
{
    const int s = spec.s();
    auto rv = r_varset(s);
    Poly pre = Poly::constant(rv, YPoly(1), deg);
    for (int i = 2; i <= s; ++i)
        for (int j = 1; j < i; ++j) {
            if (j <= spec.rho[i - 1]) pre = pre * ty_linear({{i, 1}, {j, 1}}, s, deg, ye);
            pre = pre * series_inv(ty_linear({{i, 1}, {j, -1}}, s, deg, ye));
        }
    if (spec.maximal_length()) pre = pre * ty_linear({{s, 2}}, s, deg, ye);
    if (spec.family == Family::B) {
        int r = std::min(s, spec.n - spec.p);
        // Slots with q_i > 0 cut out a double structure along the M-direction;
        // the reduced locus carries T_y(2R_i)/T_y(R_i) there instead of T_y(R_i).
        for (int i = 1; i <= r; ++i) {
            if (spec.q[i - 1] > 0) {
                pre = pre * ty_linear({{i, 2}}, s, deg, ye);
                pre = pre * series_inv(ty_linear({{i, 1}}, s, deg, ye));
            } else {
                pre = pre * ty_linear({{i, 1}}, s, deg, ye);
            }
        }
        pre *= YPoly(Rational(1, 1L << spec.a));
    }
    return pre;
}

namespace {

Poly cap_if(Poly c, const Model &model, int D, const YEval &ye, bool cap)
{
    if (!cap) return c;
    return c * model.ty_ambient(D, ye);
}

} // namespace

Poly resolution_class(const LocusSpec &spec, const Model &model, int D, const ClassOptions &opt)
{
    VarSetPtr vs = model.ring();
    const int size = size_of(spec.lambda);
    if (size > D) return Poly(vs, D);
    const int B = D - size;
    auto entries = model.locus_entries(spec, D);
    std::vector<RSeries> W;
    for (auto &e : entries) W.push_back(ty_twist(e, B, opt.ye, true));
    Poly pre = resolution_prefactor(spec, B, opt.ye);
    Poly c = apply_theta_operator(pre, spec.lambda, spec.rho, W, entries, vs, D);
    return cap_if(std::move(c), model, D, opt.ye, opt.cap);
}

Poly csm_resolution_class(const LocusSpec &spec, const Model &model, int D, bool cap)
{
    VarSetPtr vs = model.ring();
    const int size = size_of(spec.lambda);
    if (size > D) return Poly(vs, D);
    const int B = D - size, s = spec.s();
    auto entries = model.locus_entries(spec, D);
    std::vector<RSeries> W;
    for (auto &e : entries) W.push_back(virtual_chern_twisted(e, B).inverse());

    auto rv = r_varset(s);
    auto R = [&](int i) { return Poly::variable(rv, i - 1, B); };
    Poly one = Poly::constant(rv, YPoly(1), B);
    Poly pre = one;
    for (int i = 2; i <= s; ++i)
        for (int j = 1; j < i; ++j) {
            if (j <= spec.rho[i - 1]) pre = pre * (one + R(i) + R(j));
            pre = pre * series_inv(one + R(i) - R(j));
        }
    if (spec.maximal_length()) pre = pre * (one + R(s) * YPoly(2));
    if (spec.family == Family::B) {
        for (int i = 1; i <= std::min(s, spec.n - spec.p); ++i) {
            if (spec.q[i - 1] > 0)
                pre = pre * (one + R(i) * YPoly(2)) * series_inv(one + R(i));
            else
                pre = pre * (one + R(i));
        }
        pre *= YPoly(Rational(1, 1L << spec.a));
    }
    Poly c = apply_theta_operator(pre, spec.lambda, spec.rho, W, entries, vs, D);
    return cap_if(std::move(c), model, D, YEval::at(-1), cap);
}

Poly fundamental_class(const LocusSpec &spec, const Model &model)
{
    const int D = size_of(spec.lambda);
    auto entries = model.locus_entries(spec, D);
    Poly t = theta_polynomial(spec.lambda, spec.rho, entries, model.ring(), D);
    if (spec.family == Family::B) t *= YPoly(Rational(1, 1L << spec.a));
    return t;
}

} // namespace hirz
