#include <doctest.h>

#include "catramsey/categories.hpp"
#include "catramsey/constructions.hpp"
#include "catramsey/registry.hpp"
#include "oracles.hpp"

using namespace catramsey;

namespace {

bool passes(const Functor &d, const Object &a, const Object &b, const Object &c, unsigned r)
{
    SearchBudget budget;
    try {
        return check_p_witness(d, a, b, c, r, budget).passed();
    } catch (const BudgetRefusal &) {
        budget.mode = Mode::sampled;
        return check_p_witness(d, a, b, c, r, budget).passed();
    }
}

} // namespace

TEST_CASE("pigeonhole witnesses in P")
{
    CHECK(p_pigeonhole_witness(2, 2, 2) == p_object(4, 2));
    CHECK(p_pigeonhole_witness(3, 3, 3) == p_object(8, 2));
    for (std::int64_t k1 : {2, 3})
        for (std::int64_t l : {2, 3})
            for (unsigned r : {1u, 2u, 3u}) {
                auto c = p_pigeonhole_witness(k1, l, r);
                CHECK(c.data[0] == (l - 1) * r + 2);
                CHECK(passes(*p_partial(), p_object(k1, 1), p_object(l, 2), c, r));
            }
    CHECK_THROWS_AS(p_pigeonhole_witness(1, 2, 2), PreconditionViolation);
}

TEST_CASE("the (FP) oracle for R")
{
    auto a = r_object(1), b = r_object(2);
    auto s = image_of_hom(*r_partial(), a, b);
    auto choice = r_fp_witness(FpProblem{a, b, s, 2});
    CHECK(choice.c == r_object(6));
    CHECK(choice.f_prime == s.back());
    SearchBudget budget;
    CHECK(check_fp_witness(*r_partial(), FpInstance{a, b, s, 2}, choice.c, choice.f_prime, choice.g_prime, budget)
              .passed());
    auto wide = r_fp_witness(FpProblem{r_object(2), r_object(3), image_of_hom(*r_partial(), r_object(2), r_object(3)), 2});
    CHECK(wide.c == r_object(9));
}

TEST_CASE("(FP) to (P) recursion over R")
{
    auto w = fp_to_p_construct(*r_partial(), r_object(1), r_object(2), 2, r_fp_witness);
    CHECK(w.c == r_object(6));
    CHECK(passes(*r_partial(), r_object(1), r_object(2), w.c, 2));
    auto w2 = fp_to_p_construct(*r_partial(), r_object(2), r_object(3), 2, r_fp_witness);
    CHECK(w2.c == r_object(27));
}

TEST_CASE("composition and power witnesses")
{
    auto d = r_partial();
    auto provider = default_provider(d);
    auto w = composition_witness(*d, r_object(2), r_object(3), 2, provider, provider);
    CHECK(passes(*compose_functors(d, d), r_object(2), r_object(3), w.c, 2));
    auto p = power_witness(d, 2, r_object(1), r_object(2), 2, provider);
    CHECK(passes(*functor_power(d, 2), r_object(1), r_object(2), p.c, 2));
    auto trivial = power_witness(d, 0, r_object(1), r_object(2), 2, provider);
    CHECK(trivial.c == r_object(2));
}

TEST_CASE("default providers by functor shape")
{
    for (const auto *id : {"dR", "dR^2", "id(R)", "dP", "dP~"}) {
        auto f = functor_by_id(id);
        auto objs = f->dom()->objects(3);
        for (const auto &a : objs)
            for (const auto &b : objs) {
                if (f->dom()->hom_count(a, b) == 0 || f->dom()->hom_count(a, b) > 3)
                    continue;
                Witness w;
                try {
                    w = default_provider(f)(a, b, 2);
                } catch (const Unsupported &) {
                    continue;
                }
                INFO(id << " at " << f->dom()->format(a) << ", " << f->dom()->format(b));
                CHECK(passes(*f, a, b, w.c, 2));
            }
    }
}

TEST_CASE("product Ramsey agrees with grid oracles")
{
    // k = (1), p = (2): the pigeonhole, q = 3 is minimal.
    CHECK(oracle::rectangle_free_coloring_exists(4, 6, 2));
    CHECK_FALSE(oracle::rectangle_free_coloring_exists(5, 5, 2));
    CHECK_FALSE(oracle::rectangle_free_coloring_exists(3, 7, 2));
    SearchBudget budget;
    auto single = minimal_product_q({1}, {2}, 2, 6, budget);
    CHECK(single.minimal == std::vector<std::vector<std::int64_t>>{{3}});
    auto q = product_ramsey_numbers({1}, {2}, 2);
    CHECK(q.front() >= 3);
}

TEST_CASE("Hales-Jewett: brute force agrees with the engine")
{
    CHECK_FALSE(oracle::hj_forced(2, 1, 2));
    CHECK(oracle::hj_forced(2, 2, 2));
    auto d = functor_power(hj_partial(1), 1);
    auto v = hj_full_alphabet(1);
    CHECK_FALSE(passes(*d, v, hj_word_object(1, 1), hj_word_object(1, 1), 2));
    CHECK(passes(*d, v, hj_word_object(1, 1), hj_word_object(1, 2), 2));
    auto w = hj_witness(1, 1, 2);
    CHECK(w.c.data.at(1) >= 2);
}

TEST_CASE("Fouche witness for small trees")
{
    auto S = OrderedTree::parse("(())");
    auto T = OrderedTree::parse("(()())");
    auto w = fouche_witness(S, T, 2);
    CHECK(passes(*tree_partial(), tree_object(S), tree_object(T), w.c, 2));
    auto other = fouche_witness(S, OrderedTree::parse("((()))"), 2);
    CHECK(other.provenance == "trivial");
}

TEST_CASE("cross relations and the HJ modeling identity")
{
    auto R = r_category();
    for (std::int64_t a = 0; a <= 2; ++a)
        for (std::int64_t b = a; b <= 3; ++b)
            for (std::int64_t c = b; c <= 4; ++c)
                CHECK(check_cross_relation(identity_relation(R, r_object(a), r_object(b), r_object(c))).ok());

    auto prodP = product_category(p_category());
    auto v = hj_alphabet_object(1, {1, 2});
    for (std::int64_t l = 1; l <= 2; ++l)
        for (std::int64_t m = 3; m <= 4; ++m) {
            Coordinates coords;
            for (std::int64_t i = 1; i <= l; ++i)
                coords.emplace_back(i, p_object(m, 2));
            auto c = product_object(*prodP, coords);
            auto rel = hj_modeling(1, v, l, c);
            auto rep = check_cross_relation(rel);
            INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
            CHECK(rep.ok());
            CHECK(check_modeling_compatibility(rel, *hj_partial(1), *product_functor(p_partial())).ok());
            CHECK(check_hj_concatenation(1, v, l, c).ok());
        }
    CHECK_THROWS_AS(hj_modeling(1, hj_word_object(1, 2), 1, prodP->objects(1).front()), PreconditionViolation);
}

TEST_CASE("run_construction covers every theorem")
{
    CHECK(construction_theorems().size() == 10);
    auto con = run_construction("p-pigeonhole", json{{"k1", 2}, {"l", 2}, {"r", 2}});
    CHECK(con.c == p_object(4, 2));
    auto rfp = run_construction("r-fp", json{{"k", 1}, {"l", 2}, {"r", 2}});
    CHECK(rfp.c == r_object(6));
    CHECK(rfp.fp.has_value());
    auto fp2p = run_construction("fp2p", json{{"functor", "dR"}, {"a", "1"}, {"b", "2"}, {"r", 2}});
    CHECK(fp2p.c == r_object(6));
    auto modeling = run_construction("modeling", json{{"k0", 1}, {"v", {1, 2}}, {"l", 1}, {"r", 2}});
    CHECK(passes(*modeling.functor, modeling.a, modeling.b, modeling.c, 2));
    auto tree = run_construction("tree-fp", json{{"S", "(())"}, {"T", "(()())"}, {"r", 2}});
    CHECK(tree.fp.has_value());
    CHECK_THROWS_AS(run_construction("r-fp", json{{"k", 1}, {"l", 2}, {"r", "100000000000000000000"}}),
                    OverflowError);
    CHECK_THROWS_AS(run_construction("nope", json{{"r", 2}}), ParseError);
    CHECK_THROWS_AS(run_construction("r-fp", json{{"k", 1}, {"r", 2}}), ParseError);
}
