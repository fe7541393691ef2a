#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "bimorph/cfg.hpp"
#include "bimorph/cli.hpp"
#include "bimorph/io.hpp"

using namespace bimorph;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = BIMORPH_FIXTURES;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "bimorph");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const char* name)
{
    return (fixtures / name).string();
}

} // namespace

TEST_CASE("documented examples")
{
    Result r = run({"bim-relation", fx("qaln.bim"), "--height", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "f(v1,v2)\te\n");

    r = run({"fta-enum", fx("empty.fta"), "--height", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    r = run({"bim-from-cfgs", fx("g1.cfg"), fx("g2.cfg"), "--height", "6", "--translate"});
    CHECK(r.code == 0);
    // a^n b^n has a derivation tree of height n, c and c c of height 1.
    std::set<std::pair<std::string, std::string>> expected;
    for (const Word& l : generate(load_cfg(fx("g1.cfg")), 12))
        for (const Word& w : generate(load_cfg(fx("g2.cfg")), 12))
            expected.emplace(word_str(l), word_str(w));
    std::ostringstream want;
    std::set<std::pair<Word, Word>> ordered;
    for (const auto& [l, w] : expected)
        ordered.emplace(parse_word(l), parse_word(w));
    for (const auto& [l, w] : ordered)
        want << word_str(l) << '\t' << word_str(w) << '\n';
    CHECK(r.out == want.str());
}

TEST_CASE("every verb runs on the fixtures")
{
    const std::vector<std::vector<std::string>> commands = {
        {"classify-hom", fx("qaln.phi.hom")},
        {"apply-hom", fx("swap.psi.hom"), "f(g(a),b)"},
        {"fta-enum", fx("pairs.fta"), "--height", "3"},
        {"fta-union", fx("pairs.fta"), fx("chain.fta")},
        {"fta-intersect", fx("ab.fta"), fx("chain.fta")},
        {"fta-image", fx("pairs.fta"), fx("swap.phi.hom")},
        {"fta-preimage-hom", fx("chain.fta"), fx("swap.phi.hom")},
        {"bim-relation", fx("swap.bim")},
        {"bim-translate", fx("yields.bim")},
        {"bim-apply", fx("qaln.bim"), "f(v1,v2)"},
        {"bim-invert", fx("qaln.bim")},
        {"bim-canonical", fx("yields.bim")},
        {"bim-union", fx("yields.bim"), fx("qaln.bim")},
        {"bim-to-alphabetic", fx("qaln.bim")},
        {"bim-from-relabeling", fx("relabel.td")},
        {"bim-from-cfgs", fx("g1.cfg"), fx("g2.cfg")},
        {"td-derive", fx("relabel.td"), "f(f(a,a),a)"},
        {"td-classify", fx("lookahead.td")},
        {"td-compile", fx("yields.bim")},
        {"td-preimage", fx("lookahead.td"), fx("ab.fta")},
        {"cfg-generate", fx("g1.cfg"), "--length", "6"},
        {"cfg-member", fx("g1.cfg"), "a", "a", "b", "b"},
        {"fixture", "qaln"},
        {"fixture", "nonclosure", "--height", "4"},
    };
    for (const auto& c : commands) {
        INFO(c[0]);
        Result r = run(c);
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        CHECK_FALSE(r.out.empty());
        CHECK(run(c).out == r.out);
    }
    CHECK(run({"apply-hom", fx("swap.psi.hom"), "f(g(a),b)"}).out == "h(d,c)\n");
    CHECK(run({"bim-apply", fx("qaln.bim"), "f(v1,v2)"}).out == "e\n");
    CHECK(run({"cfg-member", fx("g1.cfg"), "a", "b", "b"}).out == "no\n");
    CHECK(run({"td-classify", fx("relabel.td")}).out == "finite_state_relabeling\nlinear\nnondeleting\n");
}

TEST_CASE("written output")
{
    fs::path dir = fs::temp_directory_path() / "bimorph_test_cli";
    fs::remove_all(dir);
    Result r = run({"fixture", "qaln", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(run({"bim-relation", (dir / "qaln.bim").string(), "--height", "2"}).out == "f(v1,v2)\te\n");
    r = run({"td-compile", fx("qaln.bim"), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(run({"td-derive", (dir / "compiled.td").string(), "f(v1,v2)"}).out == "e\n");
    r = run({"bim-invert", fx("qaln.bim"), "--out", dir.string(), "--stem", "inv"});
    CHECK(run({"bim-relation", (dir / "inv.bim").string()}).out == "e\tf(v1,v2)\n");
}

TEST_CASE("errors")
{
    Result r = run({});
    CHECK(r.code == 2);
    r = run({"no-such-verb"});
    CHECK(r.code == 2);
    r = run({"fta-enum"});
    CHECK(r.code == 2);
    r = run({"fta-enum", fx("pairs.fta"), "--height", "x"});
    CHECK(r.code == 2);
    r = run({"fixture", "other"});
    CHECK(r.code == 2);

    r = run({"fta-enum", fx("missing.fta")});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: io-error: "));
    r = run({"td-compile", fx("swap.bim")});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: class-mismatch: "));
    r = run({"apply-hom", fx("swap.psi.hom"), "f(g(a)"});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: parse-error: "));
    r = run({"fta-image", fx("pairs.fta"), fx("nonlinear.hom")});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: nonlinear-hom: "));
    r = run({"fta-enum", fx("g1.cfg")});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
}
