// hirz: command-line front end. A job comes from --job (JSON file) and is
// overridden by flags; unset settings fall back to --config, then to the
// HIRZ_CACHE_DIR environment variable.

#include "hirz/job.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hirz;

namespace {

std::vector<int> int_list(const std::string &s, const char *flag)
{
    std::vector<int> out;
    std::string t;
    for (char c : s) t += (c == '[' || c == ']' || c == ',') ? ' ' : c;
    std::istringstream is(t);
    std::string tok;
    while (is >> tok) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw invalid_spec("BadFlag", std::string("--") + flag + " expects integers, got '" + s + "'");
        }
    }
    return out;
}

std::vector<std::string> word_list(const std::string &s)
{
    // involutions are separated by ';' (or by whitespace when no cycles are used)
    const bool spaces = s.find(';') == std::string::npos && s.find('(') == std::string::npos;
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';' || (spaces && c == ' ')) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int fail(const Error &e, bool text)
{
    Json doc = error_document(e);
    std::cout << (text ? render_text(doc) : doc.dump(2) + "\n");
    std::cerr << "hirz: " << e.code() << ": " << e.what() << "\n";
    return exit_code(e.kind());
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Motivic Hirzebruch and CSM classes of isotropic degeneracy loci and orbit closures"};
    std::string task, family, space, group, model, q, lambda, z, y, output, cache_dir, job_file,
        config_file, candidates, coefficients;
    int n = 0, p = 0, truncation = 0;
    bool no_cache = false;
    app.add_option("--job", job_file, "JSON job file (flags override its fields)");
    app.add_option("--config", config_file, "JSON config with truncation, cache_dir, output");
    app.add_option("--task", task,
                   "resolution-class | strata | motivic-class | csm | schubert-csm | orbit | chi-genus");
    app.add_option("--family", family, "B or C");
    app.add_option("--space", space, "lg or og");
    app.add_option("--group", group, "O or Sp");
    app.add_option("--n", n, "rank / size");
    app.add_option("--p", p, "p of the locus");
    app.add_option("--q", q, "q sequence, e.g. --q=5,2,-1,-4");
    app.add_option("--lambda", lambda, "strict partition, e.g. 4,2");
    app.add_option("--z", z, "involution: 3412, 4,3,2,1,5 or (1 4)(2 3)");
    app.add_option("--model", model, "abstract | lg | og | flag");
    app.add_option("--truncation", truncation, "degree bound in abstract mode");
    app.add_option("--y", y, "evaluate at this rational y (default: generic y)");
    app.add_option("--output", output, "json (default) or text");
    app.add_option("--cache-dir", cache_dir, "directory for cached Q-function tables");
    app.add_flag("--no-cache", no_cache, "do not read or write the cache");
    app.add_option("--candidates", candidates, "orbit: involutions separated by ';'");
    app.add_option("--coefficients", coefficients, "orbit: claimed coefficients, e.g. 1,-3/2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail(invalid_spec("BadFlag", e.what()), false);
    }

    bool text = output == "text";
    try {
        JobSpec job;
        if (!job_file.empty()) {
            std::ifstream in(job_file);
            if (!in) throw invalid_spec("BadJob", "cannot read job file '" + job_file + "'");
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception &e) {
                throw invalid_spec("BadJob", std::string("job file is not valid JSON: ") + e.what());
            }
            job = job_from_json(j);
        }
        if (app.count("--task")) job.task = task;
        if (app.count("--family")) job.family = family;
        if (app.count("--space")) job.space = space;
        if (app.count("--group")) job.group = group;
        if (app.count("--model")) job.model = model;
        if (app.count("--n")) job.n = n;
        if (app.count("--p")) job.p = p;
        if (app.count("--q")) job.q = int_list(q, "q");
        if (app.count("--lambda")) job.lambda = int_list(lambda, "lambda");
        if (app.count("--z")) job.z = z;
        if (app.count("--truncation")) job.truncation = truncation;
        if (app.count("--y")) job.y = y;
        if (app.count("--output")) job.output = output;
        if (app.count("--cache-dir")) job.cache_dir = cache_dir;
        if (no_cache) job.no_cache = true;
        if (app.count("--candidates")) job.candidates = word_list(candidates);
        if (app.count("--coefficients")) {
            job.coefficients.clear();
            std::istringstream is(coefficients);
            for (std::string c; std::getline(is, c, ',');)
                if (!c.empty()) job.coefficients.push_back(c);
        }
        if (!config_file.empty()) apply_defaults(job, defaults_from_file(config_file));
        apply_defaults(job, defaults_from_env());
        text = job.output == "text";
        if (job.task.empty()) throw invalid_spec("BadJob", "no task given (--task or --job)");

        Json doc = run_job(job);
        std::cout << (text ? render_text(doc) : doc.dump(2) + "\n");
        return 0;
    } catch (const Error &e) {
        return fail(e, text);
    } catch (const std::exception &e) {
        return fail(Error(ErrorKind::Inconsistency, "Internal", e.what()), text);
    }
}
