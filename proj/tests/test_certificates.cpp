#include <doctest.h>

#include "catramsey/categories.hpp"
#include "catramsey/certificate.hpp"

using namespace catramsey;

namespace {

Certificate fp2p_certificate(unsigned jobs = 1)
{
    SearchBudget budget;
    budget.jobs = jobs;
    auto con = run_construction("fp2p", json{{"functor", "dR"}, {"a", "1"}, {"b", "2"}, {"r", 2}});
    return certify(con, budget);
}

VerificationRecord p_record(std::int64_t c, Mode mode)
{
    VerificationRecord rec;
    rec.check = "p";
    rec.category = "R";
    rec.encoding = r_category()->encoding();
    rec.functor = "dR";
    rec.a = r_object(1);
    rec.b = r_object(2);
    rec.c = r_object(c);
    rec.r = 2;
    rec.budget.mode = mode;
    rec.verdict = run_check(rec, rec.budget);
    return rec;
}

} // namespace

TEST_CASE("certificates round-trip byte for byte")
{
    auto cert = fp2p_certificate();
    auto text = serialize(cert);
    CHECK(serialize(deserialize(text)) == text);
    CHECK(cert.verification.verdict.outcome == Outcome::pass);
    auto res = replay_verify(deserialize(text));
    CHECK(res.matches);
    CHECK(res.verdict.outcome == Outcome::pass);
    CHECK(replay_verify(deserialize(text), std::nullopt, 1, true).rebuilt);
}

TEST_CASE("certificates do not depend on the worker count")
{
    CHECK(serialize(fp2p_certificate(1)) == serialize(fp2p_certificate(4)));
}

TEST_CASE("malformed documents are rejected with a byte offset")
{
    auto text = serialize(fp2p_certificate());
    try {
        deserialize(text.substr(0, text.size() / 2));
        FAIL("truncated certificate accepted");
    } catch (const ParseError &e) {
        CHECK(e.offset() > 0);
        CHECK(e.offset() <= text.size() / 2 + 1);
    }
    auto doc = json::parse(text);
    doc["schema_version"] = 99;
    CHECK_THROWS_AS(deserialize(doc.dump()), ParseError);
    doc = json::parse(text);
    doc.erase("verification");
    CHECK_THROWS_AS(deserialize(doc.dump()), ParseError);
}

TEST_CASE("tampering and encoding drift are detected")
{
    auto text = serialize(fp2p_certificate());
    auto doc = json::parse(text);
    doc["trace"]["stages"] = json::array();
    CHECK_THROWS_AS(replay_verify(deserialize(doc.dump())), StaleCertificate);

    // Re-fingerprinted under a different encoding version.
    auto cert = deserialize(text);
    cert.verification.encoding = "R/0";
    auto drifted = certify_check(cert.verification, cert.inputs);
    CHECK_THROWS_AS(replay_verify(drifted), StaleCertificate);

    auto wrong_hom = deserialize(text);
    wrong_hom.verification.verdict.hom_fingerprint ^= 1;
    CHECK_THROWS_AS(replay_verify(certify_check(wrong_hom.verification, wrong_hom.inputs)), StaleCertificate);
}

TEST_CASE("replay of stored verdicts and budget upgrades")
{
    auto exhaustive = certify_check(p_record(3, Mode::exhaustive), json::object());
    auto res = replay_verify(deserialize(serialize(exhaustive)));
    CHECK(res.matches);
    CHECK(res.verdict.outcome == Outcome::pass);

    auto sampled = certify_check(p_record(6, Mode::sampled), json::object());
    CHECK(sampled.verification.verdict.outcome == Outcome::probable_pass);
    auto upgrade = sampled.verification.budget;
    upgrade.mode = Mode::exhaustive;
    auto up = replay_verify(deserialize(serialize(sampled)), upgrade);
    CHECK(up.matches);
    CHECK(up.verdict.outcome == Outcome::pass);
    CHECK(up.verdict.mode == Mode::exhaustive);

    auto failing = certify_check(p_record(2, Mode::exhaustive), json::object());
    auto fres = replay_verify(deserialize(serialize(failing)));
    CHECK(fres.matches);
    CHECK(fres.verdict.outcome == Outcome::fail);
}

TEST_CASE("large witnesses fall back to sampled verification")
{
    auto con = run_construction("product-ramsey", json{{"k", {2}}, {"p", {3}}, {"r", 2}});
    auto cert = certify(con, SearchBudget{});
    CHECK(cert.verification.verdict.mode == Mode::sampled);
    CHECK(cert.verification.verdict.passed());
    CHECK(replay_verify(deserialize(serialize(cert))).matches);
}
