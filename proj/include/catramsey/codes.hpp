#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace catramsey {

using BigInt = boost::multiprecision::cpp_int;

// Canonical payload of an object or morphism. Each concrete category fixes
// what the integers mean; equality of codes is equality of payloads.
using Payload = std::vector<std::int64_t>;

struct Object {
    std::string category;
    Payload data;

    auto operator<=>(const Object &) const = default;
    bool operator==(const Object &) const = default;
};

struct Morphism {
    Object source;
    Object target;
    Payload data;

    auto operator<=>(const Morphism &) const = default;
    bool operator==(const Morphism &) const = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class BudgetRefusal : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class StaleCertificate : public Error {
public:
    using Error::Error;
};

// Canonical bytes: each integer as 8 big-endian bytes with the sign bit
// flipped, so byte-lexicographic order equals numeric-lexicographic order.
std::string payload_bytes(const Payload &p);
std::string to_hex(const Payload &p);
Payload payload_from_hex(std::string_view hex);

std::string encode(const Object &o);
Object decode_object(std::string_view code);
std::string encode(const Morphism &m);
Morphism decode_morphism(std::string_view code);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);
std::uint64_t fingerprint(const Morphism &m);
std::uint64_t splitmix64(std::uint64_t x);
std::string hex64(std::uint64_t v);

std::int64_t to_int64(const BigInt &v, std::string_view what);
BigInt big_pow(const BigInt &base, const BigInt &exponent, std::string_view what);

} // namespace catramsey
