#include "catramsey/certificate.hpp"

#include <climits>

#include "catramsey/registry.hpp"

namespace catramsey {

namespace {

json object_json(const Object &o)
{
    return json{{"code", encode(o)}, {"text", category_by_id(o.category)->format(o)}};
}

json morph_json(const Morphism &m)
{
    return json{{"code", encode(m)}, {"text", category_by_id(m.source.category)->format(m)}};
}

Object object_from(const json &j) { return decode_object(j.at("code").get<std::string>()); }
Morphism morph_from(const json &j) { return decode_morphism(j.at("code").get<std::string>()); }

json budget_json(const SearchBudget &b)
{
    return json{{"max_hom_size", b.max_hom_size},
                {"max_colorings", b.max_colorings},
                {"sample_count", b.sample_count},
                {"seed", hex64(b.seed)},
                {"mode", to_string(b.mode)}};
}

SearchBudget budget_from(const json &j)
{
    SearchBudget b;
    b.max_hom_size = j.at("max_hom_size").get<std::uint64_t>();
    b.max_colorings = j.at("max_colorings").get<std::uint64_t>();
    b.sample_count = j.at("sample_count").get<std::uint64_t>();
    b.seed = std::stoull(j.at("seed").get<std::string>(), nullptr, 16);
    b.mode = mode_from_string(j.at("mode").get<std::string>());
    return b;
}

json verdict_json(const Verdict &v)
{
    json out{{"outcome", to_string(v.outcome)},
             {"mode", to_string(v.mode)},
             {"colorings_examined", v.colorings_examined},
             {"relevant_positions", v.relevant_positions},
             {"hom_fingerprint", hex64(v.hom_fingerprint)}};
    if (v.failing_sample)
        out["failing_sample"] = *v.failing_sample;
    if (v.counterexample)
        out["counterexample"] = json{{"r", v.counterexample->r}, {"colors", v.counterexample->colors}};
    return out;
}

Verdict verdict_from(const json &j, const VerificationRecord &rec)
{
    Verdict v;
    v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    v.mode = mode_from_string(j.at("mode").get<std::string>());
    v.colorings_examined = j.at("colorings_examined").get<std::uint64_t>();
    v.relevant_positions = j.at("relevant_positions").get<std::uint64_t>();
    v.hom_fingerprint = std::stoull(j.at("hom_fingerprint").get<std::string>(), nullptr, 16);
    if (j.contains("failing_sample"))
        v.failing_sample = j.at("failing_sample").get<std::uint64_t>();
    if (j.contains("counterexample")) {
        const auto &ce = j.at("counterexample");
        v.counterexample = Coloring{rec.category, rec.a, rec.c, ce.at("r").get<unsigned>(),
                                    ce.at("colors").get<std::vector<std::uint32_t>>()};
    }
    return v;
}

json record_json(const VerificationRecord &rec)
{
    json out{{"check", rec.check},
             {"category", rec.category},
             {"encoding", rec.encoding},
             {"a", object_json(rec.a)},
             {"b", object_json(rec.b)},
             {"c", object_json(rec.c)},
             {"r", rec.r},
             {"budget", budget_json(rec.budget)},
             {"verdict", verdict_json(rec.verdict)}};
    if (!rec.functor.empty())
        out["functor"] = rec.functor;
    if (rec.check == "degree")
        out["k"] = rec.k;
    if (rec.check == "fp") {
        json s = json::array();
        for (const auto &e : rec.s)
            s.push_back(morph_json(e));
        out["s"] = s;
        out["f_prime"] = morph_json(*rec.f_prime);
        out["g_prime"] = morph_json(*rec.g_prime);
    }
    return out;
}

VerificationRecord record_from(const json &j)
{
    VerificationRecord rec;
    rec.check = j.at("check").get<std::string>();
    if (rec.check != "p" && rec.check != "fp" && rec.check != "degree")
        throw ParseError("unknown check '" + rec.check + "'", 0);
    rec.category = j.at("category").get<std::string>();
    rec.encoding = j.at("encoding").get<std::string>();
    rec.functor = j.value("functor", "");
    rec.a = object_from(j.at("a"));
    rec.b = object_from(j.at("b"));
    rec.c = object_from(j.at("c"));
    rec.r = j.at("r").get<unsigned>();
    rec.k = j.value("k", std::uint64_t{0});
    if (rec.check == "fp") {
        for (const auto &e : j.at("s"))
            rec.s.push_back(morph_from(e));
        rec.f_prime = morph_from(j.at("f_prime"));
        rec.g_prime = morph_from(j.at("g_prime"));
    }
    rec.budget = budget_from(j.at("budget"));
    rec.verdict = verdict_from(j.at("verdict"), rec);
    return rec;
}

json body_json(const Certificate &cert)
{
    return json{{"schema_version", cert.version},
                {"theorem", cert.theorem},
                {"inputs", cert.inputs},
                {"trace", cert.trace},
                {"witness", object_json(cert.verification.c)},
                {"verification", record_json(cert.verification)}};
}

std::string fingerprint_of(const Certificate &cert) { return hex64(fnv1a64(body_json(cert).dump())); }

unsigned small_r(const BigInt &r)
{
    if (r > UINT_MAX)
        throw OverflowError("cannot verify with " + r.str() + " colors");
    return static_cast<unsigned>(r);
}

} // namespace

Verdict run_check(const VerificationRecord &rec, const SearchBudget &budget)
{
    if (rec.check == "degree")
        return check_degree_at(*category_by_id(rec.category), rec.a, rec.b, rec.c, rec.r, rec.k, budget);
    auto functor = functor_by_id(rec.functor);
    if (rec.check == "fp")
        return check_fp_witness(*functor, FpInstance{rec.a, rec.b, rec.s, rec.r}, rec.c, *rec.f_prime, *rec.g_prime,
                                budget);
    return check_p_witness(*functor, rec.a, rec.b, rec.c, rec.r, budget);
}

Certificate certify_check(VerificationRecord rec, const json &inputs)
{
    Certificate cert;
    cert.theorem = "verify";
    cert.inputs = inputs;
    cert.trace = json::object();
    cert.verification = std::move(rec);
    cert.trace_fingerprint = fingerprint_of(cert);
    return cert;
}

Certificate certify(const Construction &con, SearchBudget budget, bool force_mode)
{
    VerificationRecord rec;
    rec.check = con.fp ? "fp" : "p";
    rec.category = con.functor->dom()->id();
    rec.encoding = con.functor->dom()->encoding();
    rec.functor = con.functor->id();
    rec.a = con.a;
    rec.b = con.b;
    rec.c = con.c;
    rec.r = small_r(con.r);
    if (con.fp) {
        rec.s = con.fp->s;
        rec.f_prime = con.fp_choice->f_prime;
        rec.g_prime = con.fp_choice->g_prime;
    }
    if (!force_mode) {
        budget.mode = Mode::exhaustive;
        try {
            rec.budget = budget;
            rec.verdict = run_check(rec, budget);
        } catch (const BudgetRefusal &) {
            budget.mode = Mode::sampled;
        }
    }
    if (force_mode || budget.mode == Mode::sampled) {
        rec.budget = budget;
        rec.verdict = run_check(rec, budget);
    }
    rec.budget.jobs = 1;
    Certificate cert;
    cert.theorem = con.theorem;
    cert.inputs = con.inputs;
    cert.trace = con.trace;
    cert.verification = std::move(rec);
    cert.trace_fingerprint = fingerprint_of(cert);
    return cert;
}

std::string serialize(const Certificate &cert)
{
    auto doc = body_json(cert);
    doc["trace_fingerprint"] = cert.trace_fingerprint;
    return doc.dump(2) + "\n";
}

Certificate deserialize(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed certificate: ") + e.what(), e.byte);
    }
    try {
        Certificate cert;
        cert.version = doc.at("schema_version").get<int>();
        if (cert.version != schema_version)
            throw ParseError("unsupported schema_version " + std::to_string(cert.version), 0);
        cert.theorem = doc.at("theorem").get<std::string>();
        cert.inputs = doc.at("inputs");
        cert.trace = doc.at("trace");
        cert.verification = record_from(doc.at("verification"));
        if (object_from(doc.at("witness")) != cert.verification.c)
            throw ParseError("witness differs from the verified object", 0);
        cert.trace_fingerprint = doc.at("trace_fingerprint").get<std::string>();
        return cert;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed certificate: ") + e.what(), text.size());
    }
}

ReplayResult replay_verify(const Certificate &cert, const std::optional<SearchBudget> &budget_override, unsigned jobs,
                           bool rebuild)
{
    if (fingerprint_of(cert) != cert.trace_fingerprint)
        throw StaleCertificate("trace fingerprint mismatch: the certificate was altered");
    const auto &rec = cert.verification;
    CategoryPtr cat;
    try {
        cat = category_by_id(rec.category);
    } catch (const ParseError &e) {
        throw StaleCertificate(std::string("category is not registered: ") + e.what());
    }
    if (cat->encoding() != rec.encoding)
        throw StaleCertificate("encoding " + rec.encoding + " differs from the current " + cat->encoding());
    if (hom_fingerprint(*cat, rec.a, rec.c) != rec.verdict.hom_fingerprint)
        throw StaleCertificate("hom enumeration fingerprint differs from the stored one");

    ReplayResult out;
    if (rebuild && cert.theorem != "verify") {
        auto con = run_construction(cert.theorem, cert.inputs);
        auto trace = con.trace;
        if (con.c != rec.c || trace != cert.trace)
            throw StaleCertificate("rerunning " + cert.theorem + " does not reproduce the stored witness");
        out.rebuilt = true;
    }

    auto budget = budget_override.value_or(rec.budget);
    budget.jobs = std::max(1u, jobs);
    out.verdict = run_check(rec, budget);
    const auto &stored = rec.verdict;
    if (out.verdict.mode == stored.mode)
        out.matches = out.verdict.outcome == stored.outcome &&
                      out.verdict.colorings_examined == stored.colorings_examined &&
                      (!stored.counterexample || (out.verdict.counterexample &&
                                                  out.verdict.counterexample->colors == stored.counterexample->colors));
    else
        out.matches = out.verdict.passed() == stored.passed();
    return out;
}

} // namespace catramsey
