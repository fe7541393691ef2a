#include <doctest.h>

#include <filesystem>

#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"
#include "bimorph/io.hpp"
#include "bimorph/term_syntax.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace bimorph;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = BIMORPH_FIXTURES;

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("bimorph_test_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::io_error;
}

} // namespace

TEST_CASE("automaton files")
{
    Fta a = parse_fta("states: q p\nfinal: q\nq -> f(p,p)\np -> g(p)\np -> e\n");
    CHECK(a.signature().ranked.str() == "e/0 f/2 g/1");
    CHECK(a.accepts(parse_term("f(g(e),e)")));
    CHECK(format_fta(parse_fta(format_fta(a))) == format_fta(a));

    Fta leaves = parse_fta("leaves: v\nstates: q\nfinal: q\nq -> f(q,q)\nq -> v\n");
    CHECK(leaves.signature().leaves.contains(Name("v")));
    CHECK(leaves.accepts(parse_term("f(v,v)", {Name("v")})));

    Fta odd(Signature::parse("e/0"));
    odd.add_state("{a,b}");
    odd.add_state("x1");
    odd.add_rule(0, Name("e"));
    odd.set_final(0);
    CHECK(file_state_names(odd) == std::vector<std::string>{"q0", "q1"});
    CHECK(enumerate(parse_fta(format_fta(odd)), 2) == enumerate(odd, 2));

    CHECK(kind_of([] { parse_fta("q => e\n"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { parse_fta("q -> f(p\n"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { parse_fta("q -> f(p)\nq -> f(p,p)\n"); }) == ErrorKind::alphabet_mismatch);
}

TEST_CASE("homomorphism files")
{
    TreeHom h = parse_hom("target-leaves: v1 v2\nz |-> v1\ne/0 |-> f(v1,v2)\ng/1 |-> k(x1,v2)\n");
    CHECK(h.source().leaves.contains(Name("z")));
    CHECK(h.source().ranked.rank(Name("g")) == 1);
    CHECK(h.target().ranked.str() == "f/2 k/2");
    CHECK(h.apply(parse_term("g(e)")) == parse_term("k(f(v1,v2),v2)", {Name("v1"), Name("v2")}));
    CHECK(format_hom(parse_hom(format_hom(h))) == format_hom(h));
    CHECK(kind_of([] { parse_hom("e/0 -> f\n"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { parse_hom("g/1 |-> k(x2)\n"); }) != ErrorKind::parse_error);
}

TEST_CASE("bimorphism files")
{
    Bimorphism q = load_bimorphism(fixtures / "qaln.bim");
    CHECK(relation(q, 2) == relation(qaln_bimorphism(), 2));
    fs::path dir = scratch("bim");
    gen::Rng rng(51);
    for (int i = 0; i < 10; ++i) {
        Bimorphism b = gen::random_qa_bimorphism(rng);
        save_bimorphism(b, dir, "b" + std::to_string(i));
        Bimorphism back = load_bimorphism(dir / ("b" + std::to_string(i) + ".bim"));
        CHECK(format_bimorphism(back) == format_bimorphism(b));
        CHECK(relation(back, 3) == relation(b, 3));
    }
    CHECK(kind_of([] { load_bimorphism(fixtures / "missing.bim"); }) == ErrorKind::io_error);
    write_file(dir / "bad.bim", "phi: b0.phi.hom\n");
    CHECK(kind_of([&] { load_bimorphism(dir / "bad.bim"); }) == ErrorKind::parse_error);
}

TEST_CASE("transducer files")
{
    Transducer m = load_transducer(fixtures / "lookahead.td");
    CHECK(m.rules().size() == 4);
    CHECK(m.rules()[0].lookahead.kind == LookaheadKind::finite);
    fs::path dir = scratch("td");
    gen::Rng rng(52);
    for (int i = 0; i < 10; ++i) {
        Transducer t = gen::random_linear_transducer(rng);
        std::string stem = "t" + std::to_string(i);
        save_transducer(t, dir, stem);
        Transducer back = load_transducer(dir / (stem + ".td"));
        CHECK(format_transducer(back, stem) == format_transducer(t, stem));
        for (const Tree& s : oracle::all_trees(t.input(), 2))
            CHECK(derive(back, s) == derive(t, s));
    }
    CHECK(kind_of([] { parse_transducer("q(a) => b\n"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { parse_transducer("q(f(x1)) -> g(x1)\n"); }) == ErrorKind::parse_error);
}

TEST_CASE("grammar files")
{
    Cfg g = load_cfg(fixtures / "g1.cfg");
    CHECK(g.start() == Name("S"));
    CHECK(generate(g, 4).size() == 2);
}
