#include <doctest.h>

#include "catramsey/categories.hpp"
#include "catramsey/laws.hpp"
#include "catramsey/registry.hpp"
#include "oracles.hpp"

using namespace catramsey;

namespace {

std::set<std::vector<std::int64_t>> payloads(const std::vector<Morphism> &ms)
{
    std::set<std::vector<std::int64_t>> out;
    for (const auto &m : ms)
        out.insert(m.data);
    return out;
}

void require_laws(const Functor &f, const std::vector<Object> &objects)
{
    auto cat = check_category_laws(*f.dom(), objects);
    INFO(f.dom()->id() << ": " << (cat.violations.empty() ? "" : cat.violations.front()));
    CHECK(cat.ok());
    CHECK(cat.checks > 0);
    auto fun = check_functor_laws(f, objects);
    INFO(f.id() << ": " << (fun.violations.empty() ? "" : fun.violations.front()));
    CHECK(fun.ok());
}

} // namespace

TEST_CASE("R composes through the increasing bijection onto y")
{
    auto R = r_category();
    auto g = r_morph({2, 4, 5}, 3, 5);
    auto f = r_morph({1, 3}, 2, 3);
    CHECK(R->compose(g, f) == r_morph({2, 5}, 2, 5));
    CHECK(R->identity(r_object(3)) == r_morph({1, 2, 3}, 3, 3));
    CHECK(R->compose(R->identity(r_object(5)), g) == g);
    CHECK_THROWS_AS(R->compose(f, g), DomainMismatch);
}

TEST_CASE("partial of R drops the maximum and decrements the target")
{
    auto d = r_partial();
    CHECK(d->map_morph(r_morph({2, 5}, 2, 5)) == r_morph({2}, 1, 4));
    CHECK(d->map_morph(r_morph({}, 0, 3)) == r_morph({}, 0, 2));
    CHECK(d->map_morph(r_morph({}, 0, 0)) == r_morph({}, 0, 0));
    CHECK(d->map_obj(r_object(0)) == r_object(0));
}

TEST_CASE("hom counts in R are binomial and the image law holds")
{
    auto R = r_category();
    auto d = r_partial();
    for (std::int64_t m = 0; m <= 7; ++m)
        for (std::int64_t n = 0; n <= 8; ++n) {
            auto h = R->hom(r_object(m), r_object(n));
            CHECK(h.size() == oracle::binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)));
            CHECK(R->hom_count(r_object(m), r_object(n)) == h.size());
            CHECK(std::is_sorted(h.begin(), h.end()));
            if (m >= 1 && n >= 1) {
                auto img = image_of_hom(*d, r_object(m), r_object(n));
                CHECK(img.size() ==
                      oracle::binom(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(m - 1)));
            }
            if (m <= n)
                CHECK(image_of_hom(*functor_power(d, static_cast<unsigned>(m)), r_object(m), r_object(n)).size() ==
                      1);
        }
}

TEST_CASE("P objects, partial and the step-function hom-sets")
{
    auto P = p_category();
    auto d = p_partial();
    CHECK(d->map_obj(p_object(3, 1)) == p_object(2, 0));
    CHECK(d->map_obj(p_object(3, 2)) == p_object(3, 2));
    CHECK(d->map_obj(p_object(3, 0)) == p_object(3, 0));
    CHECK(P->hom(p_object(2, 1), p_object(4, 2)).size() == 3);
    CHECK_THROWS(p_object(1, 1));

    for (bool mirror : {false, true}) {
        auto cat = p_category(mirror);
        for (std::int64_t k = 1; k <= 3; ++k)
            for (std::int64_t l = 1; l <= 6; ++l) {
                auto zero = payloads(cat->hom(p_object(k, 0, mirror), p_object(l, 2, mirror)));
                CHECK(zero == oracle::p_step_functions(k, l, k, k));
                if (k >= 2) {
                    auto one = payloads(cat->hom(p_object(k, 1, mirror), p_object(l, 2, mirror)));
                    auto expected = mirror ? oracle::p_step_functions(k, l, k - 1, k)
                                           : oracle::p_step_functions(k, l, k, k - 1);
                    CHECK(one == expected);
                }
            }
    }
}

TEST_CASE("P surjections are non-decreasing with unit steps")
{
    auto P = p_category();
    for (std::int64_t l = 1; l <= 4; ++l)
        for (std::int64_t m = 1; m <= 6; ++m) {
            auto h = P->hom(p_object(l, 2), p_object(m, 2));
            CHECK(h.size() == oracle::binom(static_cast<std::uint64_t>(m - 1), static_cast<std::uint64_t>(l - 1)));
            for (const auto &p : h) {
                CHECK(p_partial()->map_morph(p) == p);
                CHECK(p.data.front() == 1);
                CHECK(p.data.back() == l);
            }
        }
}

TEST_CASE("HJ composition is concatenation followed by g")
{
    auto H = hj_category(1);
    auto v = hj_alphabet_object(1, {1, 2});
    auto f = Morphism{v, hj_word_object(1, 2), {2, 1}};
    auto g = Morphism{hj_word_object(1, 2), hj_word_object(1, 3), {2, -1, 1}};
    // (v⌢f) sends −1 ↦ 1, 0 ↦ 2, 1 ↦ 2, 2 ↦ 1.
    CHECK(H->compose(g, f) == Morphism{v, hj_word_object(1, 3), {1, 1, 2}});
    CHECK_THROWS_AS(H->compose(f, g), DomainMismatch);
}

TEST_CASE("HJ hom counts and the capping functor")
{
    for (std::int64_t k0 = 0; k0 <= 1; ++k0) {
        auto H = hj_category(k0);
        auto d = hj_partial(k0);
        for (std::int64_t l1 = 0; l1 <= 3; ++l1)
            for (std::int64_t l2 = 0; l2 <= 4; ++l2) {
                // Maps [l2] → [−k0, l1] hitting [l1], by inclusion–exclusion.
                std::int64_t expected = 0;
                for (std::int64_t j = 0; j <= l1; ++j) {
                    std::int64_t term = static_cast<std::int64_t>(
                        oracle::binom(static_cast<std::uint64_t>(l1), static_cast<std::uint64_t>(j)));
                    for (std::int64_t i = 0; i < l2; ++i)
                        term *= k0 + 1 + l1 - j;
                    expected += (j % 2 ? -1 : 1) * term;
                }
                auto h = H->hom(hj_word_object(k0, l1), hj_word_object(k0, l2));
                CHECK(static_cast<std::int64_t>(h.size()) == expected);
                for (const auto &g : h)
                    CHECK(d->map_morph(g) == g);
            }
        for (const auto &v : H->objects(3)) {
            if (!hj_is_alphabet(v))
                continue;
            const auto k = hj_alphabet_size(v);
            for (std::int64_t l = 0; l <= 3; ++l) {
                auto h = H->hom(v, hj_word_object(k0, l));
                std::int64_t expected = 1;
                for (std::int64_t i = 0; i < l; ++i)
                    expected *= k;
                CHECK(static_cast<std::int64_t>(h.size()) == expected);
                for (const auto &f : h)
                    for (auto x : d->map_morph(f).data)
                        CHECK(x <= std::max<std::int64_t>(k - 1, 1));
                if (k == 1)
                    for (const auto &f : h)
                        CHECK(d->map_morph(f).data == f.data);
            }
        }
    }
}

TEST_CASE("tree embeddings agree with a brute-force filter")
{
    auto T = tree_category();
    auto check_pair = [&](const std::string &s, const std::string &t) {
        auto expected = oracle::tree_embeddings(oracle::Tree::parse(s), oracle::Tree::parse(t));
        auto so = T->parse_object(s);
        auto to = T->parse_object(t);
        auto got = payloads(T->hom(so, to));
        INFO(s << " -> " << t);
        CHECK(got == expected);
        CHECK(T->hom_count(so, to) == expected.size());
    };
    for (std::size_t ns = 1; ns <= 4; ++ns)
        for (const auto &s : oracle::trees_with_nodes(ns))
            for (std::size_t nt = 1; nt <= 8; ++nt)
                for (const auto &t : oracle::trees_with_nodes(nt))
                    check_pair(s, t);
    for (std::size_t ns = 5; ns <= 8; ++ns)
        for (const auto &s : oracle::trees_with_nodes(ns)) {
            check_pair(s, s);
            if (ns <= 6)
                for (const auto &t : oracle::trees_with_nodes(7))
                    check_pair(s, t);
        }
}

TEST_CASE("tree examples and truncation")
{
    auto T = tree_category();
    auto root = T->parse_object("()");
    CHECK(T->hom(root, root).size() == 1);
    CHECK(T->hom(T->parse_object("(())"), T->parse_object("(()()())")).size() == 3);
    CHECK(T->hom(T->parse_object("(())"), T->parse_object("((()))")).empty());
    auto d = tree_partial();
    CHECK(d->map_obj(T->parse_object("((())())")) == T->parse_object("(()())"));
    CHECK(d->map_obj(root) == root);
}

TEST_CASE("product hom-sets are coordinate-wise")
{
    auto R = r_category();
    auto prod = product_category(R);
    auto one = product_object(*prod, {{1, r_object(1)}, {2, r_object(1)}});
    auto three = product_object(*prod, {{1, r_object(3)}, {2, r_object(3)}});
    CHECK(prod->hom(one, three).size() == 9);
    CHECK(prod->hom_count(one, three) == 9);
    auto partial_support = product_object(*prod, {{1, r_object(3)}});
    CHECK(prod->hom(product_object(*prod, {{1, r_object(1)}}), three).empty());
    CHECK(prod->hom(one, partial_support).empty());

    auto d = product_functor(r_partial());
    auto src = product_object(*prod, {{1, r_object(2)}, {2, r_object(1)}});
    auto tgt = product_object(*prod, {{1, r_object(5)}, {2, r_object(3)}});
    auto m = product_morph(*prod, {{1, r_morph({2, 5}, 2, 5)}, {2, r_morph({1}, 1, 3)}}, src, tgt);
    auto expected = product_morph(*prod, {{1, r_morph({2}, 1, 4)}, {2, r_morph({}, 0, 2)}}, d->map_obj(src),
                                  d->map_obj(tgt));
    CHECK(d->map_morph(m) == expected);

    for (const auto &a : prod->objects(2))
        for (const auto &b : prod->objects(3))
            CHECK(prod->hom(a, b).size() == prod->hom_count(a, b));
}

TEST_CASE("category and functor laws on small fragments")
{
    require_laws(*r_partial(), r_category()->objects(6));
    require_laws(*p_partial(false), p_category(false)->objects(4));
    require_laws(*p_partial(true), p_category(true)->objects(4));
    require_laws(*hj_partial(0), hj_category(0)->objects(3));
    require_laws(*hj_partial(1), hj_category(1)->objects(3));
    require_laws(*tree_partial(), tree_category()->objects(4));
    require_laws(*product_functor(r_partial()), product_category(r_category())->objects(2));
    require_laws(*product_functor(p_partial()), product_category(p_category())->objects(2));
    require_laws(*product_functor(hj_partial(1)), product_category(hj_category(1))->objects(1));
    require_laws(*product_functor(tree_partial()), product_category(tree_category())->objects(3));
}

TEST_CASE("frank lifts of R, trees and products")
{
    auto check_all = [](const Functor &f, const std::vector<Object> &as, const std::vector<Object> &bs) {
        for (const auto &a : as)
            for (const auto &b : bs) {
                auto res = check_frank_at(f, a, b);
                INFO(f.id() << " at " << f.dom()->format(a) << ", " << f.cod()->format(b) << ": " << res.reason);
                CHECK(res.pass);
            }
    };
    check_all(*r_partial(), r_category()->objects(5), r_category()->objects(5));
    check_all(*tree_partial(), tree_category()->objects(4), tree_category()->objects(4));
    auto prodR = product_category(r_category());
    check_all(*product_functor(r_partial()), prodR->objects(2), prodR->objects(2));
}

TEST_CASE("partial of P has no preimage for (k,1)")
{
    auto res = check_frank_at(*p_partial(), p_object(2, 2), p_object(3, 1));
    CHECK_FALSE(res.pass);
    CHECK(check_frank_at(*p_partial(), p_object(2, 1), p_object(4, 2)).pass);
}

TEST_CASE("registry resolves every shipped identifier")
{
    for (const auto *id : {"R", "P", "P~", "HJ0", "HJ1", "T", "prod(R)", "prod(P)"})
        CHECK(category_by_id(id)->id() == id);
    CHECK(functor_by_id("dR^2")->dom()->id() == "R");
    CHECK(functor_by_id("prod(dR)")->dom()->id() == "prod(R)");
    auto m = r_morph({2, 3, 5}, 3, 6);
    CHECK(functor_by_id("dR.dR")->map_morph(m) == functor_by_id("dR^2")->map_morph(m));
    CHECK(functor_by_id("id(T)")->dom()->id() == "T");
    CHECK_THROWS_AS(functor_by_id("dQ"), ParseError);
    CHECK_THROWS_AS(category_by_id("Q"), ParseError);
    CHECK_THROWS_AS(compose_functors(r_partial(), tree_partial()), DomainMismatch);
}
