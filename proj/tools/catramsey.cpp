#include <algorithm>
#include <chrono>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catramsey/categories.hpp"
#include "catramsey/certificate.hpp"
#include "catramsey/constructions.hpp"
#include "catramsey/registry.hpp"

using namespace catramsey;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_refused = 2;
constexpr int exit_usage = 64;

// Raised for flag combinations CLI11 cannot reject by itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetFlags {
    std::optional<std::uint64_t> max_hom, max_colorings, samples;
    std::string seed;
    std::string mode = "auto";
    unsigned jobs = 1;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--max-hom", max_hom, "Largest hom(a,c) enumerated exhaustively");
        cmd->add_option("--max-colorings", max_colorings, "Largest number of colorings enumerated");
        cmd->add_option("--samples", samples, "Colorings drawn in sampled mode");
        cmd->add_option("--seed", seed, "Sampling seed (decimal or 0x-prefixed hex)");
        cmd->add_option("--mode", mode, "auto, exhaustive or sampled")
            ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
        cmd->add_option("--jobs", jobs, "Worker threads; results do not depend on it")->check(CLI::Range(1u, 256u));
    }

    SearchBudget budget() const
    {
        auto b = SearchBudget::from_env();
        if (max_hom)
            b.max_hom_size = *max_hom;
        if (max_colorings)
            b.max_colorings = *max_colorings;
        if (samples)
            b.sample_count = *samples;
        if (!seed.empty()) {
            try {
                std::size_t used = 0;
                b.seed = std::stoull(seed, &used, 0);
                if (used != seed.size())
                    throw std::invalid_argument(seed);
            } catch (const std::exception &) {
                throw UsageError("--seed expects an unsigned integer, got '" + seed + "'");
            }
        }
        b.mode = mode == "sampled" ? Mode::sampled : Mode::exhaustive;
        b.jobs = jobs;
        return b;
    }

    bool forced() const { return mode != "auto"; }
};

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, sep);)
        if (!part.empty())
            out.push_back(part);
    return out;
}

std::vector<std::int64_t> int_list(const std::string &text, const std::string &flag)
{
    std::vector<std::int64_t> out;
    for (const auto &part : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size())
                throw std::invalid_argument(part);
        } catch (const std::exception &) {
            throw UsageError(flag + " expects a comma-separated list of integers, got '" + text + "'");
        }
    }
    return out;
}

void write_certificate(const Certificate &cert, const std::string &path)
{
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + path);
    out << serialize(cert);
    std::cout << "certificate written to " << path << "\n";
}

void print_counterexample(const Category &cat, const Coloring &col)
{
    std::cout << "counterexample: " << col.r << "-coloring of " << hom_name(cat, col.a, col.c) << "\n";
    std::size_t i = 0;
    constexpr std::size_t shown = 64;
    cat.for_each_hom(col.a, col.c, [&](const Morphism &m) {
        if (i < shown)
            std::cout << "  " << cat.format(m) << " -> " << col.colors.at(i) << "\n";
        ++i;
        return true;
    });
    if (i > shown)
        std::cout << "  ... " << i - shown << " more\n";
}

int report(const Category &cat, const Verdict &v)
{
    std::cout << to_string(v.outcome) << " (" << to_string(v.mode) << ", " << v.colorings_examined
              << " colorings, " << v.relevant_positions << " relevant positions)\n";
    if (v.failing_sample)
        std::cout << "failing sample: " << *v.failing_sample << "\n";
    if (v.counterexample)
        print_counterexample(cat, *v.counterexample);
    return v.passed() ? exit_pass : exit_fail;
}

// Exhaustive when the budget allows, otherwise sampled; a forced mode is used as given.
Verdict run_with_mode(const VerificationRecord &rec, SearchBudget &budget, bool forced)
{
    if (forced)
        return run_check(rec, budget);
    try {
        budget.mode = Mode::exhaustive;
        return run_check(rec, budget);
    } catch (const BudgetRefusal &e) {
        std::cout << "exhaustive check refused (" << e.what() << "), sampling instead\n";
        budget.mode = Mode::sampled;
        return run_check(rec, budget);
    }
}

struct VerifyFlags {
    std::string check, category, functor, a, b, c, f_prime, g_prime, out;
    std::vector<std::string> s;
    unsigned r = 2;
    BudgetFlags budget;
};

int cmd_verify(const VerifyFlags &f)
{
    auto functor = functor_by_id(f.functor);
    auto cat = functor->dom();
    if (!f.category.empty() && category_by_id(f.category)->id() != cat->id())
        throw UsageError("--category " + f.category + " differs from the domain " + cat->id() + " of " +
                         functor->id());
    VerificationRecord rec;
    rec.check = f.check;
    rec.category = cat->id();
    rec.encoding = cat->encoding();
    rec.functor = functor->id();
    rec.a = cat->parse_object(f.a);
    rec.b = cat->parse_object(f.b);
    rec.c = cat->parse_object(f.c);
    rec.r = f.r;
    json inputs{{"check", f.check}, {"functor", rec.functor}, {"a", f.a}, {"b", f.b}, {"c", f.c}, {"r", f.r}};
    if (f.check == "fp") {
        if (f.s.empty())
            rec.s = image_of_hom(*functor, rec.a, rec.b);
        else
            for (const auto &code : f.s)
                rec.s.push_back(decode_morphism(code));
        if (rec.s.empty())
            throw UsageError("the image of " + hom_name(*cat, rec.a, rec.b) + " is empty");
        rec.f_prime = f.f_prime.empty() ? rec.s.front() : decode_morphism(f.f_prime);
        if (!f.g_prime.empty()) {
            rec.g_prime = decode_morphism(f.g_prime);
        } else {
            cat->for_each_hom(rec.b, rec.c, [&](const Morphism &g) {
                rec.g_prime = functor->map_morph(g);
                return false;
            });
            if (!rec.g_prime)
                throw UsageError(hom_name(*cat, rec.b, rec.c) + " is empty; pass --g-prime");
        }
    }
    auto budget = f.budget.budget();
    rec.verdict = run_with_mode(rec, budget, f.budget.forced());
    rec.budget = budget;
    rec.budget.jobs = 1;
    const int status = report(*cat, rec.verdict);
    write_certificate(certify_check(rec, inputs), f.out);
    return status;
}

struct ConstructFlags {
    std::string theorem, k, p, r = "2", functor, gamma, delta, a, b, S, T, v, out;
    std::optional<std::int64_t> k1, l, k0;
    bool mirror = false, search = false;
    BudgetFlags budget;
};

json construct_inputs(const ConstructFlags &f)
{
    json in{{"r", f.r}};
    auto need = [&](bool present, const char *flag) {
        if (!present)
            throw UsageError("--theorem " + f.theorem + " needs " + flag);
    };
    const auto &t = f.theorem;
    if (t == "p-pigeonhole") {
        need(f.k1.has_value(), "--k1");
        need(f.l.has_value(), "--l");
        in["k1"] = *f.k1;
        in["l"] = *f.l;
        in["mirror"] = f.mirror;
    } else if (t == "r-fp" || t == "hj") {
        need(!f.k.empty(), "--k");
        need(f.l.has_value(), "--l");
        in["k"] = int_list(f.k, "--k").at(0);
        in["l"] = *f.l;
    } else if (t == "tree-fp" || t == "fouche") {
        need(!f.S.empty(), "--S");
        need(!f.T.empty(), "--T");
        in["S"] = f.S;
        in["T"] = f.T;
    } else if (t == "fp2p") {
        need(!f.functor.empty(), "--functor");
        in["functor"] = f.functor;
    } else if (t == "compose" || t == "product") {
        if (!f.functor.empty()) {
            in["functor"] = f.functor;
        } else {
            need(!f.gamma.empty() && !f.delta.empty(), "--functor or both --gamma and --delta");
            in["gamma"] = f.gamma;
            in["delta"] = f.delta;
        }
        in["search"] = f.search;
    } else if (t == "modeling") {
        need(f.k0.has_value(), "--k0");
        need(!f.v.empty(), "--v");
        need(f.l.has_value(), "--l");
        in["k0"] = *f.k0;
        in["v"] = int_list(f.v, "--v");
        in["l"] = *f.l;
        in["search"] = f.search;
    } else if (t == "product-ramsey") {
        need(!f.k.empty(), "--k");
        need(!f.p.empty(), "--p");
        in["k"] = int_list(f.k, "--k");
        in["p"] = int_list(f.p, "--p");
        if (in["k"].size() != in["p"].size())
            throw UsageError("--k and --p must have the same length");
    }
    if (t == "fp2p" || t == "compose" || t == "product") {
        need(!f.a.empty(), "--a");
        need(!f.b.empty(), "--b");
        in["a"] = f.a;
        in["b"] = f.b;
    }
    return in;
}

int cmd_construct(const ConstructFlags &f)
{
    auto inputs = construct_inputs(f);
    auto budget = f.budget.budget();
    ProviderOptions opts;
    opts.search_budget = budget;
    auto con = run_construction(f.theorem, inputs, opts);
    const auto &cat = *con.functor->dom();
    std::cout << f.theorem << ": " << con.functor->id() << " at (" << cat.format(con.a) << ", "
              << cat.format(con.b) << ") with r = " << con.r.str() << "\n";
    std::cout << "witness c = " << cat.format(con.c) << "\n";
    if (con.trace.contains("q"))
        std::cout << "q = " << con.trace["q"].dump() << "\n";
    auto cert = certify(con, budget, f.budget.forced());
    const int status = report(cat, cert.verification.verdict);
    write_certificate(cert, f.out);
    return status;
}

struct DegreeFlags {
    std::string category, a, b, pool = "0..7", delta;
    unsigned r = 2, word_cap = 3;
    bool bound = false;
    BudgetFlags budget;
};

std::vector<Object> parse_pool(const Category &cat, const std::string &text)
{
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw UsageError("--pool expects lo..hi, got '" + text + "'");
    auto bounds = int_list(text.substr(0, dots) + "," + text.substr(dots + 2), "--pool");
    if (bounds.size() != 2 || bounds[0] < 0 || bounds[0] > bounds[1])
        throw UsageError("--pool expects 0 <= lo <= hi, got '" + text + "'");
    // Objects of size in [lo, hi]: objects(hi) minus objects(lo − 1).
    auto all = cat.objects(bounds[1]);
    std::vector<Object> smaller;
    if (bounds[0] > 0)
        smaller = cat.objects(bounds[0] - 1);
    std::vector<Object> out;
    for (auto &o : all)
        if (std::find(smaller.begin(), smaller.end(), o) == smaller.end())
            out.push_back(std::move(o));
    return out;
}

void print_degree(const Category &cat, const DegreeResult &d)
{
    std::cout << "|hom(a,b)| = " << d.hom_size << ", pool of " << d.pool.size() << " objects\n";
    if (d.degree)
        std::cout << "degree " << *d.degree << ", witness " << cat.format(*d.witness)
                  << (d.ceiling_from_trivial_bound ? " (trivial bound)" : "") << "\n";
    else
        std::cout << "no degree found in the pool\n";
    if (!d.undetermined.empty()) {
        std::cout << "undetermined below the degree:";
        for (auto k : d.undetermined)
            std::cout << " " << k;
        std::cout << "\n";
    }
}

int cmd_degree(const DegreeFlags &f)
{
    auto budget = f.budget.budget();
    if (f.bound) {
        if (f.delta.empty())
            throw UsageError("--bound needs --delta");
        std::vector<FunctorPtr> deltas;
        for (const auto &id : split(f.delta, ';'))
            deltas.push_back(functor_by_id(id));
        if (deltas.empty())
            throw UsageError("--delta names no functor");
        auto cat = deltas.front()->dom();
        if (!f.category.empty() && category_by_id(f.category)->id() != cat->id())
            throw UsageError("--category differs from the domain of --delta");
        auto rep = check_degree_bound(deltas, cat->parse_object(f.a), cat->parse_object(f.b), f.r,
                                      parse_pool(*cat, f.pool), budget, f.word_cap);
        std::cout << "bound " << rep.bound << " from " << rep.best_word << "\n";
        print_degree(*cat, rep.degree);
        if (!rep.confirmed) {
            std::cout << "bound not confirmed within the pool (inconclusive)\n";
            return exit_refused;
        }
        std::cout << "bound confirmed by the pool witness\n";
        return exit_pass;
    }
    if (f.category.empty())
        throw UsageError("degree needs --category (or --bound with --delta)");
    auto cat = category_by_id(f.category);
    auto d = ramsey_degree(*cat, cat->parse_object(f.a), cat->parse_object(f.b), f.r, parse_pool(*cat, f.pool),
                           budget);
    print_degree(*cat, d);
    if (!d.degree)
        return d.undetermined.empty() ? exit_fail : exit_refused;
    return d.exact() ? exit_pass : exit_refused;
}

struct ReplayFlags {
    std::string file;
    bool exhaustive = false, rebuild = false;
    unsigned jobs = 1;
};

int cmd_replay(const ReplayFlags &f)
{
    std::ifstream in(f.file, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + f.file);
    std::stringstream text;
    text << in.rdbuf();
    Certificate cert;
    try {
        cert = deserialize(text.str());
    } catch (const ParseError &e) {
        std::cerr << "malformed certificate: " << e.what() << "\n";
        return exit_fail;
    }
    std::optional<SearchBudget> override_budget;
    if (f.exhaustive) {
        override_budget = cert.verification.budget;
        override_budget->mode = Mode::exhaustive;
    }
    auto res = replay_verify(cert, override_budget, f.jobs, f.rebuild);
    const auto &cat = *category_by_id(cert.verification.category);
    std::cout << cert.theorem << " certificate, witness " << cat.format(cert.verification.c) << "\n";
    if (res.rebuilt)
        std::cout << "construction rerun reproduces the witness and trace\n";
    const int status = report(cat, res.verdict);
    std::cout << (res.matches ? "verdict matches the stored one" : "verdict differs from the stored one") << "\n";
    return res.matches ? status : exit_fail;
}

// Reports one stage of a demo and whether it behaved as expected.
bool stage(const std::string &name, bool ok, double seconds)
{
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << std::fixed << std::setprecision(2) << seconds
              << " s)\n";
    return ok;
}

template <class F>
bool timed(const std::string &name, F &&body)
{
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception &e) {
        std::cout << "  " << e.what() << "\n";
    }
    return stage(name, ok, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

int cmd_demo(const std::string &which, const BudgetFlags &flags)
{
    auto budget = flags.budget();
    bool ok = true;
    auto certified = [&](const std::string &theorem, const json &in, const std::string &expect_c) {
        auto con = run_construction(theorem, in);
        auto cert = certify(con, budget);
        auto replay = replay_verify(deserialize(serialize(cert)), std::nullopt, budget.jobs);
        const auto text = con.functor->dom()->format(con.c);
        std::cout << "  c = " << (text.size() > 70 ? text.substr(0, 67) + "..." : text) << ", "
                  << to_string(cert.verification.verdict.outcome) << " ("
                  << to_string(cert.verification.verdict.mode) << ")\n";
        return (expect_c.empty() || text == expect_c) && cert.verification.verdict.passed() && replay.matches;
    };
    if (which == "ramsey") {
        auto cat = r_category();
        auto d = r_partial();
        ok &= timed("R(3,3): every 2-coloring of the edges of K6 has a monochromatic triangle", [&] {
            auto b = budget;
            b.mode = Mode::exhaustive;
            return check_p_witness(*d, r_object(2), r_object(3), r_object(6), 2, b).outcome == Outcome::pass;
        });
        ok &= timed("K5 admits a coloring without one", [&] {
            auto b = budget;
            b.mode = Mode::exhaustive;
            auto v = check_p_witness(*d, r_object(2), r_object(3), r_object(5), 2, b);
            if (v.counterexample)
                print_counterexample(*cat, *v.counterexample);
            return v.outcome == Outcome::fail;
        });
        ok &= timed("degree of (2,3) over the pool 0..7 is 1 with witness 6", [&] {
            auto pool = cat->objects(7);
            auto res = ramsey_degree(*cat, r_object(2), r_object(3), 2, pool, budget);
            return res.exact() && *res.degree == 1 && *res.witness == r_object(6);
        });
    } else if (which == "hj") {
        ok &= timed("Hales-Jewett: alphabet of size 2, one-letter lines, 2 colors",
                    [&] { return certified("hj", json{{"k", 1}, {"l", 1}, {"r", 2}}, ""); });
    } else if (which == "fouche") {
        ok &= timed("trees: a root with one child inside a root with two children",
                    [&] { return certified("fouche", json{{"S", "(())"}, {"T", "(()())"}, {"r", 2}}, ""); });
    } else if (which == "product") {
        ok &= timed("product Ramsey for k = (1), p = (2), 2 colors",
                    [&] { return certified("product-ramsey", json{{"k", {1}}, {"p", {2}}, {"r", 2}}, ""); });
    } else {
        throw UsageError("unknown demo '" + which + "'");
    }
    return ok ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Witness construction and verification for finite Ramsey statements"};
    app.require_subcommand(1);

    VerifyFlags vf;
    auto *verify = app.add_subcommand("verify", "Check a witness c for condition (P) or (FP)");
    verify->add_option("check", vf.check, "p or fp")->required()->check(CLI::IsMember({"p", "fp"}));
    verify->add_option("--category", vf.category, "Domain category (must match the functor)");
    verify->add_option("--functor", vf.functor, "Functor id, e.g. dR or prod(dR)")->required();
    verify->add_option("--a", vf.a, "Object a")->required();
    verify->add_option("--b", vf.b, "Object b")->required();
    verify->add_option("--c", vf.c, "Candidate witness c")->required();
    verify->add_option("--r", vf.r, "Number of colors");
    verify->add_option("--s", vf.s, "(FP) morphism codes of s (default: the whole image)");
    verify->add_option("--f-prime", vf.f_prime, "(FP) morphism code of f'");
    verify->add_option("--g-prime", vf.g_prime, "(FP) morphism code of g'");
    verify->add_option("-o,--out", vf.out, "Certificate output path");
    vf.budget.attach(verify);

    ConstructFlags cf;
    auto *construct = app.add_subcommand("construct", "Build a witness and certify it");
    construct->add_option("--theorem", cf.theorem, "Construction to run")
        ->required()
        ->check(CLI::IsMember(construction_theorems()));
    construct->add_option("--k1", cf.k1, "p-pigeonhole: k1 of (k1,1)");
    construct->add_option("--l", cf.l, "Size of b");
    construct->add_option("--k", cf.k, "Size of a (comma list for product-ramsey)");
    construct->add_option("--p", cf.p, "product-ramsey: comma list of p");
    construct->add_option("--r", cf.r, "Number of colors (arbitrary precision)");
    construct->add_option("--functor", cf.functor, "Functor id");
    construct->add_option("--gamma", cf.gamma, "Inner functor of a composite");
    construct->add_option("--delta", cf.delta, "Outer functor of a composite");
    construct->add_option("--a", cf.a, "Object a");
    construct->add_option("--b", cf.b, "Object b");
    construct->add_option("--S", cf.S, "Tree S, e.g. (()())");
    construct->add_option("--T", cf.T, "Tree T");
    construct->add_option("--v", cf.v, "modeling: comma list of alphabet values");
    construct->add_option("--k0", cf.k0, "modeling: k0");
    construct->add_flag("--mirror", cf.mirror, "p-pigeonhole: the mirrored orientation");
    construct->add_flag("--search", cf.search, "Try an engine search before constructing");
    construct->add_option("-o,--out", cf.out, "Certificate output path");
    cf.budget.attach(construct);

    DegreeFlags df;
    auto *degree = app.add_subcommand("degree", "Compute a Ramsey degree over a pool of candidates");
    degree->add_option("--category", df.category, "Category id");
    degree->add_option("--a", df.a, "Object a")->required();
    degree->add_option("--b", df.b, "Object b")->required();
    degree->add_option("--r", df.r, "Number of colors");
    degree->add_option("--pool", df.pool, "Candidate sizes lo..hi");
    degree->add_flag("--bound", df.bound, "Compare with the image-size bound over words in --delta");
    degree->add_option("--delta", df.delta, "';'-separated functor ids");
    degree->add_option("--word-cap", df.word_cap, "Longest word considered");
    df.budget.attach(degree);

    ReplayFlags rf;
    auto *replay = app.add_subcommand("replay", "Re-verify a certificate");
    replay->add_option("file", rf.file, "Certificate path")->required();
    replay->add_flag("--exhaustive", rf.exhaustive, "Upgrade a sampled verdict to exhaustive");
    replay->add_flag("--rebuild", rf.rebuild, "Rerun the construction and compare");
    replay->add_option("--jobs", rf.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

    std::string demo_name;
    BudgetFlags demo_budget;
    auto *demo = app.add_subcommand("demo", "Run a demo pipeline");
    demo->add_option("name", demo_name, "ramsey, hj, fouche or product")
        ->required()
        ->check(CLI::IsMember({"ramsey", "hj", "fouche", "product"}));
    demo_budget.attach(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*verify)
            return cmd_verify(vf);
        if (*construct)
            return cmd_construct(cf);
        if (*degree)
            return cmd_degree(df);
        if (*replay)
            return cmd_replay(rf);
        return cmd_demo(demo_name, demo_budget);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const BudgetRefusal &e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return exit_refused;
    } catch (const CapExceeded &e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return exit_refused;
    } catch (const StaleCertificate &e) {
        std::cerr << "stale certificate: " << e.what() << "\n";
        return exit_fail;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PreconditionViolation &e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
