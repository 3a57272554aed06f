#include "catramsey/codes.hpp"

#include <limits>

namespace catramsey {

namespace {
constexpr char hex_digits[] = "0123456789abcdef";

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

std::string bytes_to_hex(std::string_view bytes)
{
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(hex_digits[b >> 4]);
        out.push_back(hex_digits[b & 15]);
    }
    return out;
}

// Splits "A|B|C" on the top-level separator; nested codes never contain '|'
// except inside their own fields, so morphism codes use ';' between parts.
std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}
} // namespace

std::string payload_bytes(const Payload &p)
{
    std::string out;
    out.reserve(p.size() * 8);
    for (auto v : p) {
        auto u = static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << 63);
        for (int shift = 56; shift >= 0; shift -= 8)
            out.push_back(static_cast<char>((u >> shift) & 0xff));
    }
    return out;
}

std::string to_hex(const Payload &p)
{
    return bytes_to_hex(payload_bytes(p));
}

Payload payload_from_hex(std::string_view hex)
{
    if (hex.size() % 16 != 0)
        throw ParseError("payload hex length is not a multiple of 16", hex.size());
    Payload out;
    for (std::size_t i = 0; i < hex.size(); i += 16) {
        std::uint64_t u = 0;
        for (std::size_t j = 0; j < 16; ++j) {
            int v = hex_value(hex[i + j]);
            if (v < 0)
                throw ParseError("invalid hex digit", i + j);
            u = (u << 4) | static_cast<std::uint64_t>(v);
        }
        out.push_back(static_cast<std::int64_t>(u ^ (std::uint64_t{1} << 63)));
    }
    return out;
}

std::string encode(const Object &o)
{
    return o.category + ":" + to_hex(o.data);
}

Object decode_object(std::string_view code)
{
    auto colon = code.rfind(':');
    if (colon == std::string_view::npos)
        throw ParseError("object code without category tag", 0);
    return Object{std::string(code.substr(0, colon)), payload_from_hex(code.substr(colon + 1))};
}

std::string encode(const Morphism &m)
{
    return encode(m.source) + ";" + encode(m.target) + ";" + to_hex(m.data);
}

Morphism decode_morphism(std::string_view code)
{
    auto parts = split(code, ';');
    if (parts.size() != 3)
        throw ParseError("morphism code needs source;target;payload", 0);
    return Morphism{decode_object(parts[0]), decode_object(parts[1]), payload_from_hex(parts[2])};
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fingerprint(const Morphism &m)
{
    auto h = fnv1a64(payload_bytes(m.source.data));
    h = fnv1a64(payload_bytes(m.target.data), h ^ 0x5bd1e995u);
    return fnv1a64(payload_bytes(m.data), h ^ 0x27d4eb2fu);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string hex64(std::uint64_t v)
{
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4)
        out[static_cast<std::size_t>(i)] = hex_digits[v & 15];
    return out;
}

std::int64_t to_int64(const BigInt &v, std::string_view what)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError(std::string(what) + " does not fit in 64 bits: " + v.str());
    return static_cast<std::int64_t>(v);
}

BigInt big_pow(const BigInt &base, const BigInt &exponent, std::string_view what)
{
    // 2^20 bits is far beyond any object that can be built; refuse instead
    // of spending unbounded memory.
    if (exponent > 1'000'000 && base > 1)
        throw OverflowError(std::string(what) + ": exponent too large (" + exponent.str() + ")");
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

} // namespace catramsey
