#include <doctest.h>

#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"
#include "bimorph/io.hpp"
#include "bimorph/term_syntax.hpp"
#include "bimorph/transducer.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace bimorph;

namespace {

Tree T(std::string_view s)
{
    return parse_term(s, {Name("v1"), Name("v2"), Name("y")});
}

TreeSet Ts(std::initializer_list<const char*> ts)
{
    TreeSet out;
    for (const char* s : ts)
        out.insert(T(s));
    return out;
}

Transducer relabeling()
{
    return parse_transducer("input-ranked: f/2 e/0\nstates: q\nfinal: q\n"
                            "q(f(x1,x2)) -> f'(q(x1),q(x2))\nq(e) -> e'\n");
}

// Filters every input up to height h through the brute-force derivation.
TreeSet preimage_oracle(const Transducer& m, const Fta& a, std::size_t h)
{
    TreeSet out;
    for (const Tree& s : oracle::all_trees(m.input(), h))
        for (const Tree& t : oracle::derive(m, s))
            if (oracle::accepts(a, t)) {
                out.insert(s);
                break;
            }
    return out;
}

} // namespace

TEST_CASE("derivation")
{
    Transducer m = compile_bimorphism(qaln_bimorphism());
    CHECK(derive(m, T("f(v1,v2)")) == Ts({"e"}));
    CHECK(derive(m, T("f(v2,v1)")).empty());
    CHECK_THROWS_AS(derive(m, T("e")), Error);
    CHECK(derive(relabeling(), T("f(e,e)")) == Ts({"f'(e',e')"}));
}

TEST_CASE("look-ahead")
{
    Transducer m = parse_transducer("input-ranked: g/1 a/0 b/0\nstates: q\nfinal: q\n"
                                    "q(g(x1)) -> h(q(x1)) [lookahead: g(a)]\n"
                                    "q(g(x1)) -> g(q(x1)) [lookahead: g(g(x1)) | g(b)]\n"
                                    "q(a) -> a\nq(b) -> b\n");
    CHECK(derive(m, T("g(g(a))")) == Ts({"g(h(a))"}));
    CHECK(derive(m, T("g(g(b))")) == Ts({"g(g(b))"}));
    Transducer copy = parse_transducer("input-ranked: f/2 a/0 b/0\nstates: q\nfinal: q\n"
                                       "q(f(x1,x2)) -> c [lookahead: f(x1,x1)]\n");
    CHECK(derive(copy, T("f(a,a)")) == Ts({"c"}));
    CHECK(derive(copy, T("f(a,b)")).empty());
}

TEST_CASE("runaway derivations are cut off")
{
    Transducer m = parse_transducer("input-ranked: a/0\nstates: q\nfinal: q\nq(x1) -> g(q(x1))\n");
    try {
        derive(m, T("a"), 50);
        FAIL("expected nontermination-suspected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::nontermination_suspected);
    }
}

TEST_CASE("classification")
{
    CHECK(classify(fta_as_transducer(nonclosure_witness().language)).str()
          == "linear nondeleting finite_state_relabeling fta_shaped");
    TransducerFlags q = classify(compile_bimorphism(qaln_bimorphism()));
    CHECK(q.linear);
    CHECK_FALSE(q.nondeleting);
    CHECK(classify(relabeling()).str() == "linear nondeleting finite_state_relabeling relabeling");
}

TEST_CASE("compilation")
{
    Transducer m = compile_bimorphism(qaln_bimorphism());
    REQUIRE(m.rules().size() == 1);
    const TdRule& r = m.rules()[0];
    CHECK(r.pattern == T("f(x1,x2)"));
    CHECK(r.rhs == T("e"));
    CHECK(r.calls.empty());
    CHECK(r.lookahead.kind == LookaheadKind::finite);
    CHECK(r.lookahead.patterns == std::vector<Tree>{T("f(v1,v2)")});

    Fta l = nonclosure_witness().language;
    TreeHom id = identity_hom(l.signature());
    Transducer mid = compile_bimorphism({id, l, id});
    for (const Tree& t : enumerate(l, 3))
        CHECK(derive(mid, t) == TreeSet{t});

    // phi_1(a) = c(x1), psi_1(a) = d(x1).
    Fta center = parse_fta("ranked: a/1 e/0\nstates: q\nfinal: q\nq -> a(q)\nq -> e\n");
    TreeHom phi = parse_hom("a/1 |-> c(x1)\ne/0 |-> k\n");
    TreeHom psi = parse_hom("a/1 |-> d(x1)\ne/0 |-> k\n");
    Bimorphism b{phi, center, psi};
    Transducer mb = compile_bimorphism(b);
    for (const Tree& t : enumerate(center, 3))
        CHECK(derive(mb, phi.apply(t)) == TreeSet{psi.apply(t)});
    Bimorphism copying{parse_hom("a/1 |-> c(x1,x1)\ne/0 |-> k\n"), center, psi};
    CHECK_THROWS_AS(compile_bimorphism(copying), Error);
}

TEST_CASE("preimage")
{
    Transducer id = fta_as_transducer(universal_fta(nonclosure_witness().sigma));
    Fta l = nonclosure_witness().language;
    CHECK(enumerate(preimage(id, l), 3) == enumerate(l, 3));
    CHECK(is_empty(preimage(id, Fta(l.signature()))));

    // *(<a,b>(x1)) -> a' deleting x1, with look-ahead requiring no y below.
    Signature in = Signature::parse("<a,b>/1 c/1 e/0", "y");
    Fta yfree(in);
    State free = yfree.add_state("free");
    yfree.add_rule(free, Name("<a,b>"), {free});
    yfree.add_rule(free, Name("c"), {free});
    yfree.add_rule(free, Name("e"));
    Transducer m(in, Signature::parse("a'/0"));
    State star = m.add_state("*");
    m.set_final(star);
    m.add_rule({star, T("<a,b>(x1)"), T("a'"), {}, Lookahead::regular(std::make_shared<const Fta>(yfree), {free})});
    Fta target = singleton_fta(T("a'"), m.output());
    TreeSet expected;
    for (const Tree& t : oracle::all_trees(in, 2))
        if (yield(t, in.leaves).empty())
            expected.insert(Tree::node(Name("<a,b>"), {t}));
    CHECK(enumerate(preimage(m, target), 3) == expected);
    CHECK(enumerate(preimage(m, target), 3) == preimage_oracle(m, target, 3));

    Transducer deep = parse_transducer("input-ranked: f/1 a/0\nstates: q\nfinal: q\nq(f(f(x1))) -> q(x1)\nq(a) -> a\n");
    CHECK_THROWS_AS(preimage(deep, universal_fta(deep.output())), Error);
}

TEST_CASE("fta round trip")
{
    Fta l = nonclosure_witness().language;
    Transducer m = fta_as_transducer(l);
    CHECK(enumerate(transducer_as_fta(m), 4) == enumerate(l, 4));
    for (const Tree& t : oracle::all_trees(l.signature(), 2)) {
        TreeSet out = derive(m, t);
        CHECK(out == (l.accepts(t) ? TreeSet{t} : TreeSet{}));
    }
    CHECK_THROWS_AS(transducer_as_fta(relabeling()), Error);
}

TEST_CASE("random linear transducers against brute force")
{
    gen::Rng rng(31);
    int nonempty = 0;
    for (int i = 0; i < 30; ++i) {
        INFO("instance " << i);
        Transducer m = gen::random_linear_transducer(rng);
        Fta a = gen::random_fta(m.output(), 2, rng, 0.5);
        for (const Tree& s : oracle::all_trees(m.input(), 2))
            CHECK(derive(m, s) == oracle::derive(m, s));
        TreeSet expected = preimage_oracle(m, a, 3);
        CHECK(enumerate(preimage(m, a), 3) == expected);
        nonempty += !expected.empty();
    }
    CHECK(nonempty >= 10);
}

TEST_CASE("random relabelings against brute force")
{
    gen::Rng rng(32);
    for (int i = 0; i < 30; ++i) {
        Transducer m = gen::random_relabeling(rng);
        CHECK(classify(m).finite_state_relabeling);
        for (const Tree& s : oracle::all_trees(m.input(), 3))
            CHECK(derive(m, s) == oracle::derive(m, s));
    }
}
