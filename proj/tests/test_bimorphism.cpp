#include <doctest.h>

#include "bimorph/bimorphism.hpp"
#include "bimorph/cfg.hpp"
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
    return parse_term(s, {Name("v"), Name("v1"), Name("v2"), Name("y")});
}

Word W(std::string_view s)
{
    return parse_word(s);
}

Bimorphism identity_over(const Fta& l)
{
    TreeHom id = identity_hom(l.signature());
    return {id, l, id};
}

Bimorphism with_empty_center(const Bimorphism& b)
{
    return {b.phi, Fta(b.center.signature()), b.psi};
}

// {(t phi, t psi) | t in L, hg(t rho) <= h}.
Relation relation_by_rho(const Bimorphism& b, const TreeHom& rho, std::size_t h)
{
    Relation out;
    for (const Tree& t : oracle::language(b.center, h))
        if (oracle::height(oracle::apply(rho, t)) <= h)
            out.emplace(oracle::apply(b.phi, t), oracle::apply(b.psi, t));
    return out;
}

Translation translation_oracle(const Bimorphism& b, std::size_t h)
{
    Translation out;
    for (const auto& [l, r] : oracle::relation(b, h))
        out.emplace(oracle::yield(l, b.phi.target().leaves), oracle::yield(r, b.psi.target().leaves));
    return out;
}

Relation transpose(const Relation& r)
{
    Relation out;
    for (const auto& [a, b] : r)
        out.emplace(b, a);
    return out;
}

} // namespace

TEST_CASE("relation")
{
    Bimorphism q = qaln_bimorphism();
    CHECK(relation(q, 0) == Relation{{T("f(v1,v2)"), T("e")}});
    CHECK(relation(with_empty_center(q), 3).empty());
    Fta l = nonclosure_witness().language;
    Relation expected;
    for (const Tree& t : enumerate(l, 3))
        expected.emplace(t, t);
    CHECK(relation(identity_over(l), 3) == expected);
    CHECK(relation_serial(identity_over(l), 3) == expected);
}

TEST_CASE("apply")
{
    Bimorphism q = qaln_bimorphism();
    CHECK(enumerate(apply(q, T("f(v1,v2)")), 3) == TreeSet{T("e")});
    CHECK(is_empty(apply(q, T("f(v2,v1)"))));
    Fta l = nonclosure_witness().language;
    CHECK(enumerate(apply(identity_over(l), T("f(g(e),e)")), 4) == TreeSet{T("f(g(e),e)")});
}

TEST_CASE("translation")
{
    Bimorphism q = qaln_bimorphism();
    CHECK(translation(q, 3) == Translation{{W("v1 v2"), W("")}});
    CHECK(translation(with_empty_center(q), 3).empty());
    Fta single = singleton_fta(T("f(v1,v2)"), Signature::parse("f/2", "v1 v2"));
    CHECK(translation(identity_over(single), 2) == Translation{{W("v1 v2"), W("v1 v2")}});
}

TEST_CASE("inversion")
{
    Bimorphism q = qaln_bimorphism();
    Bimorphism twice = invert(invert(q));
    CHECK(twice.phi.str() == q.phi.str());
    CHECK(twice.psi.str() == q.psi.str());
    CHECK(format_fta(twice.center) == format_fta(q.center));
    CHECK(relation(invert(q), 2) == Relation{{T("e"), T("f(v1,v2)")}});
    Bimorphism id = identity_over(nonclosure_witness().language);
    CHECK(relation(invert(id), 3) == relation(id, 3));
}

TEST_CASE("canonical form")
{
    Fta center = parse_fta("ranked: a/0\nstates: q\nfinal: q\nq -> a\n");
    TreeHom phi = parse_hom("target-leaves: v\na/0 |-> c(v)\n");
    TreeHom psi = parse_hom("target-leaves: y\na/0 |-> c'(y)\n");
    Bimorphism b{phi, center, psi};
    CanonicalForm c = canonical_form(b);
    CHECK(enumerate(c.language, 2) == TreeSet{Tree::node(Name("<c(v),c'(y)>"))});
    CHECK(relation(c.as_bimorphism(), 2) == relation(b, 2));

    Bimorphism q = qaln_bimorphism();
    CanonicalForm cq = canonical_form(q);
    CHECK(enumerate(cq.language, 2).size() == 1);
    CHECK(relation(cq.as_bimorphism(), 2) == relation(q, 2));
    CHECK(classify(cq.alphabet.rho1()).quasi_alphabetic);
    Fta fe = parse_fta("ranked: f/2 e/0\nstates: q\nfinal: q\nq -> e\nq -> f(q,q)\n");
    Bimorphism deleting{parse_hom("f/2 |-> x1\ne/0 |-> e\n"), fe, identity_hom(fe.signature())};
    CHECK_THROWS_AS(canonical_form(deleting), Error);
}

TEST_CASE("union")
{
    Bimorphism q = qaln_bimorphism();
    CHECK(relation(bimorphism_union(q, q), 3) == relation(q, 3));
    Bimorphism q2{parse_hom("target-leaves: v1 v2\ne2/0 |-> f(v1,v2)\n"),
                  parse_fta("ranked: e2/0\nstates: p\nfinal: p\np -> e2\n"), parse_hom("e2/0 |-> h\n")};
    Relation both = relation(bimorphism_union(q, q2), 2);
    CHECK(both == Relation{{T("f(v1,v2)"), T("e")}, {T("f(v1,v2)"), T("h")}});
    CHECK(relation(bimorphism_union(q, with_empty_center(q2)), 3) == relation(q, 3));
}

TEST_CASE("alphabetic embedding")
{
    Fta center = parse_fta("ranked: f/2 g/1 e/0\nstates: q p\nfinal: q\nq -> f(p,q)\nq -> e\np -> g(q)\n");
    TreeHom phi = parse_hom("f/2 |-> k(x2,x1)\ng/1 |-> m(x1)\ne/0 |-> n\n");
    Bimorphism sa{phi, center, identity_hom(center.signature())};
    AlphabeticForm a = to_alphabetic(sa);
    CHECK(relation(a.bimorphism, 3) == relation(sa, 3));
    CHECK(classify(a.rho).strictly_alphabetic);

    Bimorphism q = qaln_bimorphism();
    AlphabeticForm aq = to_alphabetic(q);
    CHECK(classify(aq.bimorphism.phi).alphabetic);
    CHECK(classify(aq.bimorphism.psi).alphabetic);
    // e maps to <f,e>(<v1,@y>,<v2,@y>), one level taller than e.
    CHECK(relation(aq.bimorphism, 0).empty());
    CHECK(relation(aq.bimorphism, 1) == relation(q, 1));
}

TEST_CASE("finite-state relabeling import")
{
    Transducer single = parse_transducer("input-ranked: f/2 e/0\nstates: q\nfinal: q\n"
                                         "q(f(x1,x2)) -> f'(q(x1),q(x2))\nq(e) -> e'\n");
    Bimorphism b = from_finite_state_relabeling(single);
    Relation expected;
    for (const Tree& t : oracle::all_trees(single.input(), 3))
        for (const Tree& u : derive(single, t))
            expected.emplace(t, u);
    CHECK(relation(b, 3) == expected);
    CHECK(classify(b.phi).strictly_alphabetic);
    CHECK(classify(b.psi).strictly_alphabetic);

    Transducer two = parse_transducer("input-ranked: f/2 e/0\nstates: q1 q2\nfinal: q1\n"
                                      "q1(f(x1,x2)) -> g1(q2(x1),q1(x2))\nq2(f(x1,x2)) -> g2(q1(x1),q2(x2))\n"
                                      "q1(e) -> e\nq2(e) -> e\n");
    Bimorphism b2 = from_finite_state_relabeling(two);
    expected.clear();
    for (const Tree& t : oracle::all_trees(two.input(), 3))
        for (const Tree& u : oracle::derive(two, t))
            expected.emplace(t, u);
    CHECK(relation(b2, 3) == expected);

    Transducer none = parse_transducer("input-ranked: f/2 e/0\nstates: q\nq(e) -> e\n");
    CHECK(relation(from_finite_state_relabeling(none), 3).empty());
}

TEST_CASE("context-free product")
{
    Cfg g1 = Cfg::parse("S -> a\n"), g2 = Cfg::parse("S -> b\n");
    CfgProduct p = from_cfg_product(g1, g2);
    CHECK(p.bimorphism.quasi_alphabetic());
    CHECK(translation(p.bimorphism, 4) == Translation{{W("a"), W("b")}});

    Cfg anbn = Cfg::parse("S -> a S b | a b\n"), c = Cfg::parse("S -> c\n");
    Translation t = translation(from_cfg_product(anbn, c).bimorphism, 5);
    for (const auto& [l, r] : t) {
        CHECK(cyk_member(anbn, l));
        CHECK(cyk_member(c, r));
    }
    for (const Word& w : generate(anbn, 8))
        CHECK(t.count({w, W("c")}) == 1);

    Cfg empty = Cfg::parse("S -> a S\n");
    CHECK(translation(from_cfg_product(empty, c).bimorphism, 5).empty());
}

TEST_CASE("non-closure witness")
{
    NonclosureWitness w = nonclosure_witness();
    TreeSet img = intersection_image(w.psi1, w.psi2, w.language, 3);
    CHECK(img == nonclosure_expected_image(3));
    CHECK(img.count(T("f(g(e),g(e))")) == 1);
    CHECK(img.count(T("f(g(e),g(g(e)))")) == 0);
    for (const Tree& t : oracle::language(w.language, 4)) {
        bool diagonal = t.child(0) == t.child(1);
        CHECK((oracle::apply(w.psi1, t) == oracle::apply(w.psi2, t)) == diagonal);
    }
}

TEST_CASE("random quasi-alphabetic bimorphisms against brute force")
{
    gen::Rng rng(41);
    int nonempty = 0;
    for (int i = 0; i < 40; ++i) {
        INFO("instance " << i);
        Bimorphism b = gen::random_qa_bimorphism(rng);
        REQUIRE(b.quasi_alphabetic());
        Relation r = oracle::relation(b, 3);
        nonempty += r.size() > 1;
        CHECK(relation(b, 3) == r);
        CHECK(relation_serial(b, 3) == r);
        CHECK(translation(b, 3) == translation_oracle(b, 3));
        CHECK(translation_by_enumeration(b, 3) == translation_oracle(b, 3));
        CHECK(relation(invert(b), 3) == transpose(r));
        CHECK(relation(canonical_form(b).as_bimorphism(), 3) == r);

        AlphabeticForm a = to_alphabetic(b);
        CHECK(relation(a.bimorphism, 3) == relation_by_rho(b, a.rho, 3));

        Bimorphism b2 = gen::random_qa_bimorphism(rng);
        Relation u = r, r2 = oracle::relation(b2, 3);
        u.insert(r2.begin(), r2.end());
        CHECK(relation(bimorphism_union(b, b2), 3) == u);

        std::map<Tree, TreeSet> by_input;
        for (const auto& [s, t] : r)
            by_input[s].insert(t);
        for (const auto& [s, ts] : by_input) {
            TreeSet got = enumerate(apply(b, s), 4);
            for (const Tree& t : ts)
                CHECK(got.count(t) == 1);
        }
    }
    CHECK(nonempty >= 20);
}
