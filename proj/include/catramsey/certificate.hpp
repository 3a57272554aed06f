#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "catramsey/constructions.hpp"
#include "catramsey/engine.hpp"

namespace catramsey {

inline constexpr int schema_version = 1;

// The engine check a certificate can be replayed with.
struct VerificationRecord {
    // "p", "fp" or "degree".
    std::string check;
    std::string category;
    std::string encoding;
    // Empty for degree checks.
    std::string functor;
    Object a, b, c;
    unsigned r = 0;
    std::uint64_t k = 0;
    std::vector<Morphism> s;
    std::optional<Morphism> f_prime, g_prime;
    // Budget the verdict was obtained under; the worker count is not part of it.
    SearchBudget budget;
    Verdict verdict;
};

struct Certificate {
    int version = schema_version;
    // Construction name, or "verify" for a bare engine check.
    std::string theorem;
    json inputs;
    json trace;
    VerificationRecord verification;
    // FNV-1a-64 over every other field of the serialized document.
    std::string trace_fingerprint;
};

// Runs the check described by the record (ignoring its stored verdict).
Verdict run_check(const VerificationRecord &rec, const SearchBudget &budget);

// Verifies a construction: exhaustive when the budget allows, sampled otherwise
// (or as forced by budget.mode when `force_mode` is set).
Certificate certify(const Construction &con, SearchBudget budget, bool force_mode = false);

// Wraps an already-built verification record.
Certificate certify_check(VerificationRecord rec, const json &inputs);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize(const Certificate &cert);

// Throws ParseError (with byte offset) on malformed input or unknown schema.
Certificate deserialize(std::string_view text);

struct ReplayResult {
    Verdict verdict;
    // Verdict agrees with the stored one (a pass and a probable pass agree
    // when the mode was overridden).
    bool matches = false;
    bool rebuilt = false;
};

// Recomputes the fingerprints and reruns the check. Throws StaleCertificate
// when the document, the encodings or the hom enumeration changed. With
// `rebuild` the construction is rerun from its inputs and must reproduce the
// stored witness and trace.
ReplayResult replay_verify(const Certificate &cert, const std::optional<SearchBudget> &budget_override = std::nullopt,
                           unsigned jobs = 1, bool rebuild = false);

} // namespace catramsey
