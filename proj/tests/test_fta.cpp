#include <doctest.h>

#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/io.hpp"
#include "bimorph/term_syntax.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace bimorph;

namespace {

Tree T(std::string_view s)
{
    return parse_term(s, {Name("v"), Name("v1"), Name("v2")});
}

TreeSet Ts(std::initializer_list<const char*> ts)
{
    TreeSet out;
    for (const char* s : ts)
        out.insert(T(s));
    return out;
}

Fta a_l()
{
    return nonclosure_witness().language;
}

// f(e, g^n(e)): the m = 0 slice of A_L.
Fta a_l_left_e()
{
    return parse_fta("ranked: f/2 g/1 e/0\nstates: q p e\nfinal: q\nq -> f(e,p)\ne -> e\np -> e\np -> g(p)\n");
}

} // namespace

TEST_CASE("membership")
{
    Fta a = a_l();
    CHECK(a.accepts(T("f(e,e)")));
    CHECK_FALSE(a.accepts(T("g(f(e,e))")));
    CHECK(a.accepts(T("f(g(g(e)),g(e))")));
    CHECK_FALSE(a.accepts(T("f(e,f(e,e))")));
    Fta b = parse_fta("ranked: f/2 e/0 k/0\nstates: q\nfinal: q\nq -> f(q,q)\nq -> e\n");
    CHECK_FALSE(b.accepts(T("f(k,e)")));
    CHECK_THROWS_AS(a.accepts(T("h(e)")), Error);
}

TEST_CASE("emptiness")
{
    Fta none = parse_fta("ranked: e/0\nstates: q\nq -> e\n");
    CHECK(is_empty(none));
    CHECK_FALSE(is_empty(a_l()));
    // q is final but only reachable through p, which has no leaf rule.
    Fta stuck = parse_fta("ranked: f/1 g/1 e/0\nstates: q p\nfinal: q\nq -> f(p)\np -> g(p)\n");
    CHECK(is_empty(stuck));
    CHECK(trim(stuck).state_count() == 0);
}

TEST_CASE("union and intersection")
{
    Fta a = a_l();
    CHECK(enumerate(language_union(a, a), 4) == enumerate(a, 4));
    Fta none = parse_fta("ranked: f/2 g/1 e/0\nstates: q\n");
    CHECK(is_empty(language_intersection(a, none)));
    Fta both = language_intersection(a, a_l_left_e());
    CHECK(both.accepts(T("f(e,g(e))")));
    CHECK_FALSE(both.accepts(T("f(g(e),e)")));
    TreeSet expected;
    TreeSet l = enumerate(a, 4), r = enumerate(a_l_left_e(), 4);
    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::inserter(expected, expected.end()));
    CHECK(enumerate(both, 4) == expected);
}

TEST_CASE("enumeration")
{
    CHECK(enumerate(a_l(), 1) == Ts({"f(e,e)"}));
    CHECK(enumerate(a_l(), 2) == Ts({"f(e,e)", "f(g(e),e)", "f(e,g(e))", "f(g(e),g(e))"}));
    CHECK(enumerate(parse_fta("ranked: e/0\nstates: q\nfinal: q\n"), 5).empty());
    CHECK(enumerate(a_l(), 0).empty());
}

TEST_CASE("image under a linear hom")
{
    NonclosureWitness w = nonclosure_witness();
    CHECK(enumerate(image(w.language, w.psi1), 4) == enumerate(w.language, 4));
    Bimorphism q = qaln_bimorphism();
    Fta img = image(q.center, q.phi);
    CHECK(enumerate(img, 3) == Ts({"f(v1,v2)"}));
    TreeHom dup = parse_hom("f/2 |-> f(x1,x1)\ng/1 |-> g(x1)\ne/0 |-> e\n");
    CHECK_THROWS_AS(image(w.language, dup), Error);
}

TEST_CASE("inverse image")
{
    NonclosureWitness w = nonclosure_witness();
    CHECK(enumerate(preimage_hom(w.language, w.psi1), 4) == enumerate(w.language, 4));
    Bimorphism q = qaln_bimorphism();
    Fta target = singleton_fta(T("f(v1,v2)"), q.phi.target());
    CHECK(enumerate(preimage_hom(target, q.phi), 2) == Ts({"e"}));
    Fta none(q.phi.target());
    CHECK(is_empty(preimage_hom(none, q.phi)));
}

TEST_CASE("finite language operations")
{
    CHECK(lang_top_catenation(Name("f"), {Ts({"e"}), Ts({"g(e)"})}) == Ts({"f(e,g(e))"}));
    CHECK(lang_v_product(Ts({"f(v,v)"}), Ts({"e", "g(e)"}), Name("v"))
          == Ts({"f(e,e)", "f(e,g(e))", "f(g(e),e)", "f(g(e),g(e))"}));
    CHECK(lang_v_quotient(Ts({"f(e,e)"}), Ts({"e"}), Ts({"f(v,v)", "f(e,v)", "e"}), Name("v"))
          == Ts({"f(v,v)", "f(e,v)"}));
}

TEST_CASE("random automata against brute force")
{
    gen::Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        Signature sig = gen::random_signature(rng, "f", 3, 2, gen::coin(rng) ? std::vector<std::string>{"v"} : std::vector<std::string>{});
        Fta a = gen::random_fta(sig, gen::uniform(rng, 1, 3), rng);
        Fta b = gen::random_fta(sig, gen::uniform(rng, 1, 3), rng);
        const std::size_t h = 3;
        TreeSet la = oracle::language(a, h), lb = oracle::language(b, h);
        CHECK(enumerate(a, h) == la);
        CHECK(enumerate_serial(a, h) == la);
        for (const Tree& t : oracle::all_trees(sig, h))
            CHECK(a.accepts(t) == oracle::accepts(a, t));

        TreeSet u = la, x;
        u.insert(lb.begin(), lb.end());
        std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::inserter(x, x.end()));
        CHECK(enumerate(language_union(a, b), h) == u);
        CHECK(enumerate(language_intersection(a, b), h) == x);
    }
}

TEST_CASE("random images and inverse images against brute force")
{
    gen::Rng rng(12);
    for (int i = 0; i < 40; ++i) {
        INFO("instance " << i);
        Signature sig = gen::random_signature(rng, "f", 3, 2, gen::coin(rng) ? std::vector<std::string>{"v"} : std::vector<std::string>{});
        Fta a = gen::random_fta(sig, gen::uniform(rng, 1, 3), rng);
        TreeHom h = gen::random_hom(sig, gen::HomKind::linear, "s", {"y"}, rng);
        TreeSet images;
        for (const Tree& t : oracle::language(a, 3))
            images.insert(oracle::apply(h, t));
        Fta img = image(a, h);
        for (const Tree& t : images)
            CHECK(img.accepts(t));
        // Collapsing rules let small trees come from tall ones, so the other
        // direction goes through the inverse image.
        for (const Tree& t : enumerate(img, 2))
            if (!images.count(t))
                CHECK_FALSE(is_empty(language_intersection(a, preimage_hom(singleton_fta(t, h.target()), h))));

        Fta target = gen::random_fta(h.target(), 2, rng);
        Fta pre = preimage_hom(target, h);
        for (const Tree& t : oracle::all_trees(sig, 3))
            CHECK(pre.accepts(t) == oracle::accepts(target, oracle::apply(h, t)));
    }
}
