#include "catramsey/registry.hpp"

#include <cctype>
#include <map>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    CategoryPtr category()
    {
        if (eat("prod(")) {
            auto inner = category();
            expect(')');
            return product_category(inner);
        }
        if (eat("P~"))
            return p_category(true);
        if (eat("HJ"))
            return hj_category(number());
        if (eat("P"))
            return p_category(false);
        if (eat("R"))
            return r_category();
        if (eat("T"))
            return tree_category();
        fail("unknown category");
    }

    FunctorPtr functor()
    {
        auto f = power();
        while (eat(".")) {
            auto inner = power();
            f = compose_functors(inner, f);
        }
        return f;
    }

    void finish()
    {
        if (pos_ != text_.size())
            fail("trailing characters");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError(what + " in '" + std::string(text_) + "'", pos_);
    }

    bool eat(std::string_view token)
    {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::int64_t number()
    {
        auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    FunctorPtr power()
    {
        auto f = atom();
        if (eat("^"))
            f = functor_power(f, static_cast<unsigned>(number()));
        return f;
    }

    FunctorPtr atom()
    {
        if (eat("(")) {
            auto f = functor();
            expect(')');
            return f;
        }
        if (eat("id(")) {
            auto c = category();
            expect(')');
            return identity_functor(c);
        }
        if (eat("prod(")) {
            auto fallback = functor();
            std::map<std::int64_t, FunctorPtr> overrides;
            while (eat(",")) {
                auto idx = number();
                expect(':');
                overrides[idx] = functor();
            }
            expect(')');
            return product_functor(fallback, overrides);
        }
        if (eat("dP~"))
            return p_partial(true);
        if (eat("dP"))
            return p_partial(false);
        if (eat("dR"))
            return r_partial();
        if (eat("dHJ"))
            return hj_partial(number());
        if (eat("dT"))
            return tree_partial();
        fail("unknown functor");
    }
};

} // namespace

CategoryPtr category_by_id(std::string_view id)
{
    Parser p(id);
    auto c = p.category();
    p.finish();
    return c;
}

FunctorPtr functor_by_id(std::string_view id)
{
    Parser p(id);
    auto f = p.functor();
    p.finish();
    return f;
}

} // namespace catramsey
