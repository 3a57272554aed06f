#include <doctest.h>

#include <map>

#include "catramsey/categories.hpp"
#include "catramsey/engine.hpp"
#include "catramsey/laws.hpp"
#include "oracles.hpp"

using namespace catramsey;

namespace {

SearchBudget exhaustive(unsigned jobs = 1)
{
    SearchBudget b;
    b.jobs = jobs;
    return b;
}

// Monochromatic triangle check on a coloring of hom(2,n) in R.
bool has_mono_triangle(const Coloring &col, std::int64_t n)
{
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> edge;
    auto h = r_category()->hom(r_object(2), r_object(n));
    for (std::size_t i = 0; i < h.size(); ++i)
        edge[{h[i].data[0], h[i].data[1]}] = col.colors[i];
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = a + 1; b <= n; ++b)
            for (std::int64_t c = b + 1; c <= n; ++c)
                if (edge[{a, b}] == edge[{a, c}] && edge[{a, c}] == edge[{b, c}])
                    return true;
    return false;
}

} // namespace

TEST_CASE("classical R(3,3) through the double partial")
{
    auto d2 = functor_power(r_partial(), 2);
    for (std::int64_t c = 3; c <= 6; ++c) {
        auto v = check_p_witness(*d2, r_object(2), r_object(3), r_object(c), 2, exhaustive());
        CHECK(v.passed() == oracle::triangle_forced(static_cast<int>(c)));
        if (!v.passed()) {
            REQUIRE(v.counterexample);
            CHECK_FALSE(has_mono_triangle(*v.counterexample, c));
        }
    }
    auto six = check_p_witness(*d2, r_object(2), r_object(3), r_object(6), 2, exhaustive());
    CHECK(six.outcome == Outcome::pass);
    CHECK(six.colorings_examined == (1u << 15));
}

TEST_CASE("single partial of R at (2,3)")
{
    auto d = r_partial();
    CHECK_FALSE(check_p_witness(*d, r_object(2), r_object(3), r_object(3), 2, exhaustive()).passed());
    CHECK(check_p_witness(*d, r_object(2), r_object(3), r_object(4), 2, exhaustive()).passed());
}

TEST_CASE("first counterexample follows the least-significant-first order")
{
    auto v = check_p_witness(*r_partial(), r_object(1), r_object(2), r_object(2), 2, exhaustive());
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->colors == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("one color always passes once hom(b,c) is non-empty")
{
    auto d2 = functor_power(r_partial(), 2);
    for (std::int64_t c = 3; c <= 7; ++c)
        CHECK(check_p_witness(*d2, r_object(2), r_object(3), r_object(c), 1, exhaustive()).passed());
}

TEST_CASE("verdicts do not depend on the worker count")
{
    auto d2 = functor_power(r_partial(), 2);
    for (std::int64_t c : {5, 6}) {
        auto one = check_p_witness(*d2, r_object(2), r_object(3), r_object(c), 2, exhaustive(1));
        auto four = check_p_witness(*d2, r_object(2), r_object(3), r_object(c), 2, exhaustive(4));
        CHECK(one.outcome == four.outcome);
        CHECK(one.colorings_examined == four.colorings_examined);
        CHECK(one.counterexample.has_value() == four.counterexample.has_value());
        if (one.counterexample)
            CHECK(one.counterexample->colors == four.counterexample->colors);
    }
    auto sampled = exhaustive(1);
    sampled.mode = Mode::sampled;
    sampled.sample_count = 2000;
    auto s1 = check_p_witness(*d2, r_object(2), r_object(3), r_object(5), 2, sampled);
    sampled.jobs = 4;
    auto s4 = check_p_witness(*d2, r_object(2), r_object(3), r_object(5), 2, sampled);
    CHECK(s1.failing_sample == s4.failing_sample);
    CHECK(s1.counterexample->colors == s4.counterexample->colors);
}

TEST_CASE("sampled colorings are seeded")
{
    auto m = r_morph({1, 2}, 2, 5);
    CHECK(sampled_color(1, 0, m, 3) == sampled_color(1, 0, m, 3));
    std::set<std::uint32_t> seen;
    for (std::uint64_t s = 0; s < 64; ++s)
        seen.insert(sampled_color(7, s, m, 3));
    CHECK(seen.size() == 3);
    SearchBudget b;
    b.mode = Mode::sampled;
    auto d2 = functor_power(r_partial(), 2);
    auto v = check_p_witness(*d2, r_object(2), r_object(3), r_object(6), 2, b);
    CHECK(v.outcome == Outcome::probable_pass);
    CHECK(v.colorings_examined == b.sample_count);
}

TEST_CASE("budget refusal instead of silent truncation")
{
    SearchBudget b;
    b.max_colorings = 1000;
    auto d2 = functor_power(r_partial(), 2);
    CHECK_THROWS_AS(check_p_witness(*d2, r_object(2), r_object(3), r_object(6), 2, b), BudgetRefusal);
    b = SearchBudget{};
    b.max_hom_size = 10;
    CHECK_THROWS_AS(check_p_witness(*d2, r_object(2), r_object(3), r_object(6), 2, b), BudgetRefusal);
}

TEST_CASE("fibers partition the hom-set")
{
    auto check = [](const Functor &d, const Object &a, const Object &b) {
        auto all = d.dom()->hom(a, b);
        auto fs = fibers(d, a, b);
        std::vector<Morphism> joined;
        std::set<Morphism> images;
        for (const auto &f : fs) {
            CHECK_FALSE(f.empty());
            images.insert(d.map_morph(f.front()));
            for (const auto &m : f) {
                CHECK(d.map_morph(m) == d.map_morph(f.front()));
                joined.push_back(m);
            }
        }
        std::sort(joined.begin(), joined.end());
        CHECK(joined == all);
        CHECK(images.size() == fs.size());
        if (!all.empty())
            CHECK(fiber(d, a, b, d.map_morph(all.front())) == fs.front());
    };
    for (std::int64_t k = 0; k <= 3; ++k)
        for (std::int64_t l = k; l <= 6; ++l)
            check(*r_partial(), r_object(k), r_object(l));
    check(*p_partial(), p_object(3, 1), p_object(5, 2));
    check(*hj_partial(1), hj_alphabet_object(1, {1, 2}), hj_word_object(1, 3));
    check(*tree_partial(), tree_category()->parse_object("(()(()))"), tree_category()->parse_object("(()(()()))"));
}

TEST_CASE("(FP) checks and their preconditions")
{
    auto d = r_partial();
    auto a = r_object(1), b = r_object(2);
    auto image = image_of_hom(*d, a, b);
    FpInstance inst{a, b, image, 2};
    // f′ = ({2},2) (largest maximum) and g′ = ([1],5) as in the R oracle.
    auto gp = r_morph({1}, 1, 5);
    CHECK(check_fp_witness(*d, inst, r_object(6), image.back(), gp, exhaustive()).passed());
    CHECK_THROWS_AS(check_fp_witness(*d, FpInstance{a, b, {}, 2}, r_object(6), image.back(), gp, exhaustive()),
                    PreconditionViolation);
    CHECK_THROWS_AS(check_fp_witness(*d, inst, r_object(6), r_morph({1}, 1, 3), gp, exhaustive()),
                    PreconditionViolation);
    CHECK_THROWS_AS(check_fp_witness(*d, inst, r_object(6), image.back(), r_morph({1}, 1, 9), exhaustive()),
                    PreconditionViolation);
}

TEST_CASE("Ramsey degrees over a pool")
{
    auto R = r_category();
    auto pool = R->objects(7);
    auto res = ramsey_degree(*R, r_object(2), r_object(3), 2, pool, exhaustive());
    REQUIRE(res.degree);
    CHECK(*res.degree == 1);
    CHECK(*res.witness == r_object(6));
    CHECK(res.exact());

    auto single = ramsey_degree(*R, r_object(2), r_object(2), 2, pool, exhaustive());
    CHECK(*single.degree == 1);
    auto empty = ramsey_degree(*R, r_object(3), r_object(2), 2, pool, exhaustive());
    CHECK(*empty.degree == 0);

    // Monotone in r, and never above |hom(a,b)|.
    std::uint64_t prev = 0;
    for (unsigned r = 1; r <= 3; ++r) {
        auto d = ramsey_degree(*R, r_object(1), r_object(2), r, R->objects(5), exhaustive());
        REQUIRE(d.degree);
        CHECK(*d.degree >= prev);
        CHECK(*d.degree <= d.hom_size);
        prev = *d.degree;
    }
    auto tight = ramsey_degree(*R, r_object(1), r_object(3), 3, R->objects(3), exhaustive());
    CHECK(*tight.degree <= 3);
}

TEST_CASE("degree bound from image sizes")
{
    auto R = r_category();
    auto rep = check_degree_bound({r_partial()}, r_object(2), r_object(4), 2, R->objects(7), exhaustive(), 3);
    CHECK(rep.bound == 1);
    REQUIRE(rep.degree.degree);
    // Degree 1 at (2,4) needs c ≥ R(4,4) = 18, beyond the pool.
    CHECK(*rep.degree.degree >= 1);
    auto small = check_degree_bound({r_partial()}, r_object(1), r_object(2), 2, R->objects(5), exhaustive(), 2);
    CHECK(small.bound == 1);
    CHECK(small.confirmed);
}

TEST_CASE("hom fingerprints change with the endpoints")
{
    auto R = r_category();
    CHECK(hom_fingerprint(*R, r_object(2), r_object(5)) == hom_fingerprint(*R, r_object(2), r_object(5)));
    CHECK(hom_fingerprint(*R, r_object(2), r_object(5)) != hom_fingerprint(*R, r_object(2), r_object(6)));
}
