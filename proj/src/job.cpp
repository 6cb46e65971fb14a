#include "hirz/job.hpp"

#include "hirz/grassmann.hpp"
#include "hirz/orbit.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hirz {

namespace {

const std::set<std::string> kTasks = {"resolution-class", "strata", "motivic-class", "csm",
                                      "schubert-csm", "orbit", "chi-genus"};

Error bad_job(const std::string &msg) { return invalid_spec("BadJob", msg); }

template <class T> T get_as(const Json &j, const char *key)
{
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception &) {
        throw bad_job(std::string("field '") + key + "' has the wrong type");
    }
}

std::string involution_text(const Json &v, const char *key)
{
    if (v.is_string()) return v.get<std::string>();
    auto a = get_as<std::vector<int>>(v, key);
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

std::string rational_text(const Json &v, const char *key)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw bad_job(std::string("field '") + key + "' must be an integer or a \"num/den\" string");
}

Json ylist(const YPoly &p)
{
    Json a = Json::array();
    for (auto &s : p.fraction_strings()) a.push_back(s);
    return a;
}

Json poly_terms(const Poly &f)
{
    Json a = Json::array();
    for (auto &[m, c] : f.sorted_terms())
        a.push_back({{"monomial", f.mono_str(m)},
                     {"degree", f.vars()->degree(m)},
                     {"coefficients", ylist(c)}});
    return a;
}

Json schubert_terms(const SchubertClass &c)
{
    Json a = Json::array();
    for (auto &[mu, v] : c.sorted()) a.push_back({{"partition", mu}, {"coefficients", ylist(v)}});
    return a;
}

YEval y_of(const JobSpec &job)
{
    if (!job.y || *job.y == "generic") return YEval::generic();
    return YEval::at(parse_rational(*job.y));
}

template <class T> const T &need(const std::optional<T> &v, const char *what, const JobSpec &job)
{
    if (!v) throw bad_job("task '" + job.task + "' needs '" + what + "'");
    return *v;
}

LocusSpec locus_of(const JobSpec &job)
{
    return LocusSpec::make(family_from_string(need(job.family, "family", job)),
                           need(job.n, "n", job), need(job.p, "p", job), need(job.q, "q", job));
}

std::optional<std::string> cache_of(const JobSpec &job)
{
    if (job.no_cache) return std::nullopt;
    return job.cache_dir;
}

std::string model_of(const JobSpec &job) { return job.model.value_or("abstract"); }

/// lg/og model matching the locus: family C with lg, B with og, p = 1.
std::unique_ptr<GrassmannModel> grassmann_for(const JobSpec &job, const LocusSpec &spec)
{
    Space sp = space_from_string(model_of(job));
    Family want = sp == Space::LG ? Family::C : Family::B;
    if (spec.family != want || spec.p != 1)
        throw invalid_spec("ModelMismatch", std::string("model ") + space_name(sp) + " needs family " +
                                                family_name(want) + " with p = 1");
    return std::make_unique<GrassmannModel>(sp, spec.n, cache_of(job));
}

int abstract_truncation(JobSpec &job, const LocusSpec &spec)
{
    if (!job.truncation) job.truncation = size_of(spec.lambda) + 3;
    if (*job.truncation < 0) throw bad_job("truncation must be >= 0");
    return *job.truncation;
}

Json spec_json(const LocusSpec &s)
{
    return {{"family", family_name(s.family)}, {"n", s.n}, {"p", s.p}, {"q", s.q}, {"lambda", s.lambda}};
}

Json run_resolution(JobSpec &job, Json &diag)
{
    (void)diag;
    auto spec = locus_of(job);
    ClassOptions opt;
    opt.ye = y_of(job);
    Json r = {{"locus", spec_json(spec)}, {"model", model_of(job)}};
    if (model_of(job) == "abstract") {
        int D = abstract_truncation(job, spec);
        auto m = AbstractModel::by_slot(spec.s(), D);
        r["truncation"] = D;
        r["terms"] = poly_terms(resolution_class(spec, *m, D, opt));
        return r;
    }
    auto m = grassmann_for(job, spec);
    const int D = m->dimension();
    Poly unc = resolution_class(spec, *m, D, opt);
    r["uncapped"] = schubert_terms(m->to_basis(unc));
    r["capped"] = schubert_terms(m->to_basis(unc * m->ty_ambient(D, opt.ye)));
    return r;
}

Json run_strata(JobSpec &job, Json &diag)
{
    auto spec = locus_of(job);
    auto ex = strata_expansion(spec);
    Json terms = Json::array();
    for (auto &t : ex.terms)
        terms.push_back({{"k", t.k},
                         {"lambda_plus", t.lambda_plus},
                         {"weight", ylist(t.weight)},
                         {"fiber_weight", ylist(t.fiber_weight)}});
    for (auto &d : ex.diagnostics) diag.push_back(d);
    return {{"locus", spec_json(spec)}, {"count", ex.terms.size()}, {"strata", terms}};
}

Json run_motivic(JobSpec &job, Json &diag, bool csm)
{
    auto spec = locus_of(job);
    ClassOptions opt;
    opt.ye = csm ? YEval::at(-1) : y_of(job);
    if (csm && job.y && parse_rational(*job.y) != -1)
        throw bad_job("task 'csm' evaluates at y = -1; drop 'y' or use motivic-class");
    auto ex = motivic_expansion(spec);
    for (auto &d : ex.diagnostics) diag.push_back(d);
    Json coeffs = Json::array();
    for (auto &[s, c] : ex.coefficients)
        coeffs.push_back({{"locus", spec_json(s)}, {"coefficient", ylist(opt.ye(c))}});
    Json r = {{"locus", spec_json(spec)}, {"model", model_of(job)}, {"expansion", coeffs}};
    if (model_of(job) == "abstract") {
        int D = abstract_truncation(job, spec);
        std::vector<int> flags;
        for (auto &[s, c] : ex.coefficients) flags.insert(flags.end(), s.q.begin(), s.q.end());
        auto m = AbstractModel::by_flag(flags, D);
        r["truncation"] = D;
        r["terms"] = poly_terms(motivic_class_of_locus(spec, *m, D, opt));
        return r;
    }
    auto m = grassmann_for(job, spec);
    const int D = m->dimension();
    Poly unc = motivic_class_of_locus(spec, *m, D, opt);
    r["uncapped"] = schubert_terms(m->to_basis(unc));
    r["capped"] = schubert_terms(m->to_basis(unc * m->ty_ambient(D, opt.ye)));
    return r;
}

Json run_schubert(JobSpec &job, Json &diag)
{
    Space sp = space_from_string(need(job.space, "space", job));
    GrassmannModel m(sp, need(job.n, "n", job), cache_of(job));
    if (!job.y) job.y = "-1";
    auto res = schubert_class(m, need(job.lambda, "lambda", job), y_of(job));
    for (auto &d : res.diagnostics) diag.push_back(d);
    Json coeffs = Json::array();
    for (auto &[s, c] : res.strata_coefficients)
        coeffs.push_back({{"locus", spec_json(s)}, {"coefficient", ylist(y_of(job)(c))}});
    return {{"space", space_name(sp)},
            {"n", m.n()},
            {"lambda", *job.lambda},
            {"expansion", coeffs},
            {"uncapped", schubert_terms(res.uncapped)},
            {"capped", schubert_terms(res.capped)}};
}

Json essential_json(const OrbitResult &r)
{
    Json chain = Json::array();
    for (size_t t = 0; t < r.data.chain.size(); ++t)
        chain.push_back({{"cell", {r.data.chain[t].first, r.data.chain[t].second}},
                         {"rank", r.data.ranks[t]},
                         {"k", r.data.k[t]}});
    Json slots = Json::array();
    for (auto &s : r.slots) slots.push_back({{"mu", s.mu}, {"i", s.i}, {"j", s.j}});
    return {{"chain", chain}, {"lambda", r.data.lambda}, {"ell", r.data.ell}, {"slots", slots}};
}

Json run_orbit(JobSpec &job, Json &diag)
{
    Group g = group_from_string(need(job.group, "group", job));
    // fixed points of Sp inputs are reported by the class computation itself
    auto z = Involution::parse(need(job.z, "z", job), job.n.value_or(0), g);
    if (!job.n) job.n = z.n();
    FlagModel m(z.n());
    YEval ye = y_of(job);
    auto unc = orbit_motivic_class(m, z, g, ye, false);
    Poly capped = m.reduce(unc.cls * m.ty_ambient(m.dimension(), ye));
    for (auto &d : unc.diagnostics) diag.push_back(d);
    Json r = {{"group", group_name(g)},
              {"z", z.str()},
              {"n", z.n()},
              {"essential", essential_json(unc)},
              {"fundamental_class", poly_terms(orbit_fundamental_class(m, z, g))},
              {"class", poly_terms(unc.cls)},
              {"capped", poly_terms(capped)},
              {"chi_y", ylist(m.top_coefficient(capped))}};
    if (job.candidates.empty()) {
        if (!job.coefficients.empty()) throw bad_job("'coefficients' needs 'candidates'");
        return r;
    }
    std::vector<Involution> cands;
    for (auto &c : job.candidates) cands.push_back(Involution::parse(c, z.n(), g));
    Poly at_minus_one = ye.fixed && ye.value == -1 ? unc.cls
                                                   : orbit_motivic_class(m, z, g, YEval::at(-1)).cls;
    if (!job.coefficients.empty()) {
        if (job.coefficients.size() != cands.size())
            throw bad_job("'coefficients' and 'candidates' differ in length");
        std::vector<std::pair<Rational, Involution>> claim;
        for (size_t i = 0; i < cands.size(); ++i)
            claim.emplace_back(parse_rational(job.coefficients[i]), cands[i]);
        auto chk = verify_expansion(m, at_minus_one, g, claim);
        r["verify"] = {{"holds", chk.holds}, {"residual", poly_terms(chk.residual)}};
    }
    Json ex;
    try {
        Json co = Json::array();
        for (auto &c : expand_in_orbit_basis(m, at_minus_one, g, cands)) co.push_back(to_fraction_string(c));
        ex = {{"candidates", Json::array()}, {"coefficients", co}};
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::Inconsistency) throw;
        ex = {{"candidates", Json::array()}, {"error", {{"code", e.code()}, {"message", e.what()}}}};
    }
    for (auto &c : cands) ex["candidates"].push_back(c.str());
    r["expansion"] = ex;
    return r;
}

Json run_chi(JobSpec &job, Json &)
{
    int n = need(job.n, "n", job);
    YEval ye = y_of(job);
    if (job.space) {
        GrassmannModel m(space_from_string(*job.space), n, cache_of(job));
        return {{"space", space_name(m.space())}, {"n", n}, {"chi_y", ylist(ye(chi_y(m)))}};
    }
    if (model_of(job) != "flag") throw bad_job("task 'chi-genus' needs 'space' (lg, og) or model 'flag'");
    if (n < 1) throw invalid_spec("BadDimension", "need n >= 1");
    FlagModel m(n);
    YPoly chi = m.top_coefficient(m.reduce(m.ty_ambient(m.dimension(), YEval::generic())));
    return {{"model", "flag"}, {"n", n}, {"chi_y", ylist(ye(chi))}};
}

} // namespace

JobSpec job_from_json(const Json &j)
{
    if (!j.is_object()) throw bad_job("job must be a JSON object");
    JobSpec job;
    for (auto &[k, v] : j.items()) {
        const char *key = k.c_str();
        if (k == "task") job.task = get_as<std::string>(v, key);
        else if (k == "family") job.family = get_as<std::string>(v, key);
        else if (k == "space") job.space = get_as<std::string>(v, key);
        else if (k == "group") job.group = get_as<std::string>(v, key);
        else if (k == "model") job.model = get_as<std::string>(v, key);
        else if (k == "n") job.n = get_as<int>(v, key);
        else if (k == "p") job.p = get_as<int>(v, key);
        else if (k == "truncation") job.truncation = get_as<int>(v, key);
        else if (k == "q") job.q = get_as<std::vector<int>>(v, key);
        else if (k == "lambda") job.lambda = get_as<std::vector<int>>(v, key);
        else if (k == "z") job.z = involution_text(v, key);
        else if (k == "y" || k == "y_eval") {
            if (!v.is_null()) job.y = rational_text(v, key);
        } else if (k == "output") job.output = get_as<std::string>(v, key);
        else if (k == "cache_dir") job.cache_dir = get_as<std::string>(v, key);
        else if (k == "no_cache") job.no_cache = get_as<bool>(v, key);
        else if (k == "candidates") {
            if (!v.is_array()) throw bad_job("'candidates' must be an array");
            for (auto &c : v) job.candidates.push_back(involution_text(c, key));
        } else if (k == "coefficients") {
            if (!v.is_array()) throw bad_job("'coefficients' must be an array");
            for (auto &c : v) job.coefficients.push_back(rational_text(c, key));
        } else throw bad_job("unknown field '" + k + "'");
    }
    return job;
}

Json job_to_json(const JobSpec &job)
{
    Json j;
    j["task"] = job.task;
    if (job.family) j["family"] = *job.family;
    if (job.space) j["space"] = *job.space;
    if (job.group) j["group"] = *job.group;
    if (job.model) j["model"] = *job.model;
    if (job.n) j["n"] = *job.n;
    if (job.p) j["p"] = *job.p;
    if (job.q) j["q"] = *job.q;
    if (job.lambda) j["lambda"] = *job.lambda;
    if (job.z) j["z"] = *job.z;
    if (job.truncation) j["truncation"] = *job.truncation;
    j["y"] = job.y ? Json(*job.y) : Json(nullptr);
    if (!job.candidates.empty()) j["candidates"] = job.candidates;
    if (!job.coefficients.empty()) j["coefficients"] = job.coefficients;
    return j;
}

Defaults defaults_from_env()
{
    Defaults d;
    if (const char *c = std::getenv("HIRZ_CACHE_DIR"); c && *c) d.cache_dir = c;
    return d;
}

Defaults defaults_from_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw invalid_spec("BadConfig", "cannot read config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw invalid_spec("BadConfig", "config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw invalid_spec("BadConfig", "config must be a JSON object");
    Defaults d;
    try {
        for (auto &[k, v] : j.items()) {
            if (k == "truncation") d.truncation = v.get<int>();
            else if (k == "cache_dir") d.cache_dir = v.get<std::string>();
            else if (k == "output") d.output = v.get<std::string>();
            else throw invalid_spec("BadConfig", "unknown config key '" + k + "'");
        }
    } catch (const nlohmann::json::exception &e) {
        throw invalid_spec("BadConfig", std::string("config value has the wrong type: ") + e.what());
    }
    return d;
}

void apply_defaults(JobSpec &job, const Defaults &d)
{
    if (!job.truncation) job.truncation = d.truncation;
    if (!job.cache_dir) job.cache_dir = d.cache_dir;
    if (d.output && job.output == "json") job.output = *d.output;
}

Json run_job(const JobSpec &in)
{
    JobSpec job = in;
    if (!kTasks.count(job.task)) throw bad_job("unknown task '" + job.task + "'");
    if (job.output != "json" && job.output != "text") throw bad_job("output must be json or text");
    if (job.model) {
        static const std::set<std::string> models = {"abstract", "lg", "og", "flag"};
        if (!models.count(*job.model)) throw bad_job("unknown model '" + *job.model + "'");
    }
    Json diag = Json::array();
    Json result;
    if (job.task == "resolution-class") result = run_resolution(job, diag);
    else if (job.task == "strata") result = run_strata(job, diag);
    else if (job.task == "motivic-class") result = run_motivic(job, diag, false);
    else if (job.task == "csm") result = run_motivic(job, diag, true);
    else if (job.task == "schubert-csm") result = run_schubert(job, diag);
    else if (job.task == "orbit") result = run_orbit(job, diag);
    else result = run_chi(job, diag);
    return {{"job", job_to_json(job)}, {"result", result}, {"diagnostics", diag}};
}

Json error_document(const Error &e)
{
    const char *kind = e.kind() == ErrorKind::InvalidSpec    ? "InvalidSpec"
                       : e.kind() == ErrorKind::NotVexillary ? "NotVexillary"
                                                             : "Inconsistency";
    return {{"error", {{"kind", kind}, {"code", e.code()}, {"message", e.what()}, {"exit_code", exit_code(e.kind())}}}};
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidSpec: return 2;
    case ErrorKind::NotVexillary: return 3;
    case ErrorKind::Inconsistency: return 4;
    }
    return 4;
}

namespace {

std::string ypoly_text(const Json &coeffs)
{
    std::vector<Rational> c;
    for (auto &s : coeffs) c.push_back(parse_rational(s.get<std::string>()));
    return YPoly(c).str();
}

bool is_coefficient_list(const Json &v)
{
    if (!v.is_array()) return false;
    for (auto &e : v)
        if (!e.is_string() || e.get<std::string>().find('/') == std::string::npos) return false;
    return true;
}

void render(const Json &v, const std::string &indent, std::ostringstream &os)
{
    for (auto &[k, x] : v.items()) {
        if (x.is_object() && x.contains("coefficients") && is_coefficient_list(x["coefficients"])) {
            os << indent << k << ": " << ypoly_text(x["coefficients"]) << "\n";
        } else if (is_coefficient_list(x) && !x.empty()) {
            os << indent << k << ": " << ypoly_text(x) << "\n";
        } else if (x.is_array() && !x.empty() && x[0].is_object()) {
            os << indent << k << ":\n";
            for (auto &e : x) {
                std::string label, rest;
                Json other = Json::object();
                for (auto &[ek, ev] : e.items()) {
                    if (is_coefficient_list(ev) && !ev.empty()) {
                        rest += (rest.empty() ? "" : "  ") + ek + " " + ypoly_text(ev);
                    } else if (ek == "monomial" || ek == "partition") {
                        label = ev.dump();
                    } else {
                        other[ek] = ev;
                    }
                }
                os << indent << "  ";
                if (!label.empty()) os << label << "  ";
                if (!other.empty()) os << other.dump() << "  ";
                os << rest << "\n";
            }
        } else if (x.is_object()) {
            os << indent << k << ":\n";
            render(x, indent + "  ", os);
        } else {
            os << indent << k << ": " << x.dump() << "\n";
        }
    }
}

} // namespace

std::string render_text(const Json &doc)
{
    std::ostringstream os;
    render(doc, "", os);
    return os.str();
}

} // namespace hirz
