#include <doctest.h>

#include "bimorph/error.hpp"
#include "bimorph/term_syntax.hpp"
#include "bimorph/tree.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace bimorph;

namespace {

Tree T(std::string_view s)
{
    return parse_term(s, {Name("v"), Name("v1"), Name("v2")});
}

std::vector<std::string> strs(const std::vector<Position>& ps)
{
    std::vector<std::string> out;
    for (const auto& p : ps)
        out.push_back(p.str());
    return out;
}

} // namespace

TEST_CASE("positions")
{
    CHECK(strs(positions(T("e"))) == std::vector<std::string>{"ε"});
    CHECK(strs(positions(T("f(e,e)"))) == std::vector<std::string>{"ε", "1", "2"});
    CHECK(strs(positions(T("f(g(e),e)"))) == std::vector<std::string>{"ε", "1", "11", "2"});
    CHECK(Position::parse("11") == Position{1, 1});
    CHECK(Position::parse("1.12") == Position{1, 12});
    CHECK(Position{1, 12}.str() == "1.12");
    CHECK_THROWS_AS(Position::parse("10"), Error);
    CHECK(Position{1} < Position{1, 1});
    CHECK(Position{1, 1} < Position{2});
}

TEST_CASE("subtree and replacement")
{
    CHECK(subtree_at(T("f(g(e),e)"), {1}) == T("g(e)"));
    CHECK(replace_at(T("f(g(e),e)"), {2}, T("g(e)")) == T("f(g(e),g(e))"));
    CHECK(replace_at(T("f(g(e),e)"), {}, T("v")) == T("v"));
    try {
        subtree_at(T("f(e,e)"), {3});
        FAIL("expected invalid-position");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_position);
    }
}

TEST_CASE("height")
{
    CHECK(T("v").height() == 0);
    CHECK(T("g(g(g(e)))").height() == 3);
    CHECK(T("f(g(e),e)").height() == 2);
}

TEST_CASE("branches, subtrees, counts")
{
    CHECK(strs(branches(T("f(g(e),v)"))) == std::vector<std::string>{"11", "2"});
    CHECK(subtrees(T("g(e)")) == TreeSet{T("g(e)"), T("e")});
    CHECK(count_symbol(T("f(g(e),g(e))"), Name("g")) == 2);
}

TEST_CASE("yield")
{
    CHECK(word_str(yield(T("f(v1,g(v2))"), {Name("v1"), Name("v2")})) == "v1 v2");
    CHECK(yield(T("f(e,e)"), {Name("v1")}).empty());
    CHECK(word_str(yield(T("v1"), {Name("v1")})) == "v1");
}

TEST_CASE("substitution")
{
    std::vector<Tree> a{T("e"), T("g(e)")};
    CHECK(substitute(T("f(x1,x2)"), a) == T("f(e,g(e))"));
    std::vector<Tree> u{T("f(v,v)")};
    CHECK(substitute(T("x1"), u) == u[0]);
    std::vector<Tree> ab{T("a"), T("b")};
    CHECK(substitute(T("f(x2,x1)"), ab) == T("f(b,a)"));
    CHECK_THROWS_AS(substitute(T("f(x1,x3)"), ab), Error);
}

TEST_CASE("leaf substitution")
{
    std::vector<Tree> a{T("e"), T("g(e)")};
    CHECK(substitute_leaf(T("f(v,v)"), Name("v"), a) == T("f(e,g(e))"));
    std::vector<Tree> e{T("e")};
    CHECK(substitute_leaf(T("v"), Name("v"), e) == T("e"));
    std::vector<Tree> ab{T("a"), T("b")};
    CHECK(substitute_leaf(T("f(g(v),v)"), Name("v"), ab) == T("f(g(a),b)"));
    CHECK_THROWS_AS(substitute_leaf(T("f(g(v),v)"), Name("v"), e), Error);
}

TEST_CASE("iteration")
{
    CHECK(iterate_unary(Name("g"), 0, T("e")) == T("e"));
    CHECK(iterate_unary(Name("g"), 3, T("e")) == T("g(g(g(e)))"));
    Context c(T("g(x1)"), 1);
    CHECK(iterate_context(c, 2).tree() == T("g(g(g(x1)))"));
    CHECK(iterate_context(c, 0).tree() == T("g(x1)"));
    CHECK_THROWS_AS(Context(T("f(x1,x1)"), 1), Error);
}

TEST_CASE("canonical order and printing")
{
    CHECK(T("f(a,b)") < T("f(b,a)"));
    CHECK(T("f(a,b)") < T("g(a)"));
    CHECK(T("f( g(e) , v )").str() == "f(g(e),v)");
    CHECK(T("<f(x1),g>(v)").name() == Name("<f(x1),g>"));
}

TEST_CASE("printing round-trips on random trees")
{
    gen::Rng rng(7);
    Signature sig = Signature::parse("f/2 g/1 e/0", "v1 v2");
    for (int i = 0; i < 200; ++i) {
        Tree t = gen::random_tree(sig, 5, rng);
        CHECK(parse_tree(t.str(), sig) == t);
        CHECK(t.height() == oracle::height(t));
        CHECK(positions(t).size() == t.size());
    }
}
