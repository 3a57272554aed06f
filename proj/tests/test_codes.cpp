#include <doctest.h>

#include "catramsey/categories.hpp"
#include "catramsey/registry.hpp"

using namespace catramsey;

TEST_CASE("object and morphism codes round-trip")
{
    for (const auto &o : {r_object(0), r_object(7), p_object(3, 1), hj_alphabet_object(1, {2, 1}),
                          tree_category()->parse_object("(()(()))")}) {
        CHECK(decode_object(encode(o)) == o);
    }
    auto m = r_morph({1, 4}, 2, 5);
    CHECK(decode_morphism(encode(m)) == m);
    auto negative = Morphism{hj_word_object(1, 1), hj_word_object(1, 2), {-1, 1}};
    CHECK(decode_morphism(encode(negative)) == negative);
    CHECK_THROWS_AS(decode_object("R"), ParseError);
    CHECK_THROWS_AS(decode_object("R:0g"), ParseError);
}

TEST_CASE("canonical bytes order payloads numerically")
{
    std::vector<Payload> ps{{-3}, {-1, 5}, {0}, {0, 0}, {2}, {10}, {std::numeric_limits<std::int64_t>::max()}};
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        CHECK(ps[i] < ps[i + 1]);
        CHECK(payload_bytes(ps[i]) < payload_bytes(ps[i + 1]));
    }
    CHECK(payload_from_hex(to_hex({-7, 3})) == Payload{-7, 3});
}

TEST_CASE("hom materialization honours its cap")
{
    auto R = r_category();
    CHECK(R->hom(r_object(2), r_object(10), 45).size() == 45);
    CHECK_THROWS_AS(R->hom(r_object(2), r_object(10), 44), CapExceeded);
    CHECK(R->contains(r_morph({1, 3}, 2, 4)));
}

TEST_CASE("formatting and parsing objects")
{
    auto P = p_category();
    CHECK(P->format(P->parse_object("(3,1)")) == "(3,1)");
    auto T = tree_category();
    CHECK(T->format(T->parse_object("(()())")) == "(()())");
    CHECK_THROWS_AS(T->parse_object("(()"), ParseError);
    CHECK_THROWS_AS(r_category()->parse_object("-1"), ParseError);
}

TEST_CASE("functor powers and composites")
{
    auto d = r_partial();
    auto twice = functor_power(d, 2);
    auto m = r_morph({2, 3, 5}, 3, 6);
    CHECK(twice->map_morph(m) == d->map_morph(d->map_morph(m)));
    CHECK(compose_functors(d, d)->map_morph(m) == twice->map_morph(m));
    CHECK(functor_power(d, 0)->map_morph(m) == m);
    CHECK(as_power(*twice).has_value());
    CHECK(is_identity_functor(*identity_functor(r_category())));
}
