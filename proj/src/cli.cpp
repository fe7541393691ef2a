#include "bimorph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iterator>
#include <sstream>

#include "bimorph/bimorphism.hpp"
#include "bimorph/cfg.hpp"
#include "bimorph/error.hpp"
#include "bimorph/io.hpp"
#include "bimorph/term_syntax.hpp"
#include "bimorph/transducer.hpp"

namespace bimorph {

namespace {

struct Options {
    std::vector<std::string> files;
    std::vector<std::string> words;
    std::string tree;
    std::string out_dir;
    std::string stem;
    std::size_t height = 3;
    bool height_given = false;
    std::size_t steps = 10000;
    std::size_t length = 8;
    bool translate = false;
    std::string fixture;
};

std::string show_word(const Word& w)
{
    return w.empty() ? std::string("~") : word_str(w);
}

void print_trees(std::ostream& out, const TreeSet& ts)
{
    for (const Tree& t : ts)
        out << t << '\n';
}

void print_flags(std::ostream& out, const std::string& flags)
{
    std::istringstream in(flags);
    std::vector<std::string> names{std::istream_iterator<std::string>(in), {}};
    std::sort(names.begin(), names.end());
    for (const auto& n : names)
        out << n << '\n';
}

// Writes a bimorphism to --out if given, otherwise prints it.
void emit(std::ostream& out, const Options& o, const Bimorphism& b, const std::string& stem)
{
    if (o.out_dir.empty())
        out << format_bimorphism(b);
    else
        save_bimorphism(b, o.out_dir, o.stem.empty() ? stem : o.stem);
}

void emit(std::ostream& out, const Options& o, const Fta& a, const std::string& stem)
{
    if (o.out_dir.empty())
        out << format_fta(a);
    else
        write_file(std::filesystem::path(o.out_dir) / ((o.stem.empty() ? stem : o.stem) + ".fta"), format_fta(a));
}

using Handler = std::function<void(std::ostream&, const Options&)>;

struct Verb {
    const char* name;
    const char* help;
    std::vector<const char*> files;
    bool tree = false;
    Handler run;
};

std::vector<Verb> verbs()
{
    return {
        {"classify-hom", "print the classes a homomorphism belongs to", {"hom"}, false,
         [](std::ostream& out, const Options& o) { print_flags(out, classify(parse_hom(read_file(o.files[0]))).str()); }},
        {"apply-hom", "apply a homomorphism to a tree", {"hom"}, true,
         [](std::ostream& out, const Options& o) {
             TreeHom h = parse_hom(read_file(o.files[0]));
             out << h.apply(parse_tree(o.tree, h.source())) << '\n';
         }},
        {"fta-enum", "list the accepted trees up to --height", {"fta"}, false,
         [](std::ostream& out, const Options& o) { print_trees(out, enumerate(parse_fta(read_file(o.files[0])), o.height)); }},
        {"fta-union", "automaton for the union of two languages", {"fta", "fta"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, language_union(parse_fta(read_file(o.files[0])), parse_fta(read_file(o.files[1]))), "union");
         }},
        {"fta-intersect", "automaton for the intersection of two languages", {"fta", "fta"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, language_intersection(parse_fta(read_file(o.files[0])), parse_fta(read_file(o.files[1]))), "intersection");
         }},
        {"fta-image", "automaton for the image under a linear homomorphism", {"fta", "hom"}, false,
         [](std::ostream& out, const Options& o) {
             TreeHom h = parse_hom(read_file(o.files[1]));
             emit(out, o, image(parse_fta(read_file(o.files[0]), h.source()), h), "image");
         }},
        {"fta-preimage-hom", "automaton for the inverse homomorphic image", {"fta", "hom"}, false,
         [](std::ostream& out, const Options& o) {
             TreeHom h = parse_hom(read_file(o.files[1]));
             emit(out, o, preimage_hom(parse_fta(read_file(o.files[0]), h.target()), h), "preimage");
         }},
        {"bim-relation", "list the pairs defined by center trees up to --height", {"bim"}, false,
         [](std::ostream& out, const Options& o) {
             for (const auto& [l, r] : relation(load_bimorphism(o.files[0]), o.height))
                 out << l << '\t' << r << '\n';
         }},
        {"bim-translate", "list the yield pairs of center trees up to --height", {"bim"}, false,
         [](std::ostream& out, const Options& o) {
             for (const auto& [l, r] : translation(load_bimorphism(o.files[0]), o.height))
                 out << show_word(l) << '\t' << show_word(r) << '\n';
         }},
        {"bim-apply", "list the outputs for an input tree", {"bim"}, true,
         [](std::ostream& out, const Options& o) {
             Bimorphism b = load_bimorphism(o.files[0]);
             Tree s = parse_tree(o.tree, b.phi.target());
             // Quasi-alphabetic psi grows height by at most one over the
             // center tree, which is itself no taller than s.
             std::size_t h = b.quasi_alphabetic() && !o.height_given ? s.height() + 1 : o.height;
             print_trees(out, enumerate(apply(b, s), h));
         }},
        {"bim-invert", "swap the two homomorphisms", {"bim"}, false,
         [](std::ostream& out, const Options& o) { emit(out, o, invert(load_bimorphism(o.files[0])), "inverse"); }},
        {"bim-canonical", "canonical form over the product alphabet", {"bim"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, canonical_form(load_bimorphism(o.files[0])).as_bimorphism(), "canonical");
         }},
        {"bim-union", "bimorphism for the union of two relations", {"bim", "bim"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, bimorphism_union(load_bimorphism(o.files[0]), load_bimorphism(o.files[1])), "union");
         }},
        {"bim-to-alphabetic", "equivalent bimorphism with alphabetic homomorphisms", {"bim"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, to_alphabetic(load_bimorphism(o.files[0])).bimorphism, "alphabetic");
         }},
        {"bim-from-relabeling", "bimorphism for a finite-state relabeling", {"td"}, false,
         [](std::ostream& out, const Options& o) {
             emit(out, o, from_finite_state_relabeling(load_transducer(o.files[0])), "relabeling");
         }},
        {"bim-from-cfgs", "bimorphism whose yields are the product of two languages", {"cfg", "cfg"}, false,
         [](std::ostream& out, const Options& o) {
             Bimorphism b = from_cfg_product(load_cfg(o.files[0]), load_cfg(o.files[1])).bimorphism;
             if (!o.translate) {
                 emit(out, o, b, "product");
                 return;
             }
             for (const auto& [l, r] : translation(b, o.height))
                 out << show_word(l) << '\t' << show_word(r) << '\n';
         }},
        {"td-derive", "list the outputs of a transducer on a tree", {"td"}, true,
         [](std::ostream& out, const Options& o) {
             Transducer m = load_transducer(o.files[0]);
             print_trees(out, derive(m, parse_tree(o.tree, m.input()), o.steps));
         }},
        {"td-classify", "print the classes a transducer belongs to", {"td"}, false,
         [](std::ostream& out, const Options& o) { print_flags(out, classify(load_transducer(o.files[0])).str()); }},
        {"td-compile", "transducer computing a quasi-alphabetic bimorphism", {"bim"}, false,
         [](std::ostream& out, const Options& o) {
             Transducer m = compile_bimorphism(load_bimorphism(o.files[0]));
             std::string stem = o.stem.empty() ? "compiled" : o.stem;
             if (o.out_dir.empty())
                 out << format_transducer(m, stem);
             else
                 save_transducer(m, o.out_dir, stem);
         }},
        {"td-preimage", "automaton for the inputs with an output in a language", {"td", "fta"}, false,
         [](std::ostream& out, const Options& o) {
             Transducer m = load_transducer(o.files[0]);
             emit(out, o, preimage(m, parse_fta(read_file(o.files[1]), m.output())), "preimage");
         }},
        {"cfg-generate", "list the words up to --length", {"cfg"}, false,
         [](std::ostream& out, const Options& o) {
             for (const Word& w : generate(load_cfg(o.files[0]), o.length))
                 out << show_word(w) << '\n';
         }},
    };
}

void run_member(std::ostream& out, const Options& o)
{
    Word w;
    for (const auto& s : o.words)
        if (s != "~")
            w.emplace_back(s);
    out << (cyk_member(load_cfg(o.files[0]), w) ? "yes" : "no") << '\n';
}

void run_fixture(std::ostream& out, const Options& o)
{
    if (o.fixture == "qaln") {
        emit(out, o, qaln_bimorphism(), "qaln");
        return;
    }
    NonclosureWitness w = nonclosure_witness();
    if (o.out_dir.empty()) {
        print_trees(out, intersection_image(w.psi1, w.psi2, w.language, o.height));
        return;
    }
    std::filesystem::path dir = o.out_dir;
    std::string stem = o.stem.empty() ? "nonclosure" : o.stem;
    // (psi1, L, psi1) and (psi2, L, psi1) as bimorphisms over the same center.
    save_bimorphism({w.psi1, w.language, w.psi1}, dir, stem + "1");
    save_bimorphism({w.psi2, w.language, w.psi1}, dir, stem + "2");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bimorphism toolkit", "bimorph"};
    app.require_subcommand(1);
    Options o;
    o.files.resize(2);
    std::vector<Verb> table = verbs();
    std::vector<std::pair<CLI::App*, Handler>> bound;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--height", o.height, "height bound")->check(CLI::NonNegativeNumber)->each([&o](const std::string&) { o.height_given = true; });
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--stem", o.stem, "base name of written files");
    };
    for (const Verb& v : table) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        for (std::size_t i = 0; i < v.files.size(); ++i) {
            std::string label = v.files[i];
            if (v.files.size() > 1)
                label += std::to_string(i + 1);
            sub->add_option(label, o.files[i], std::string(v.files[i]) + " file")->required();
        }
        if (v.tree)
            sub->add_option("tree", o.tree, "input tree")->required();
        common(sub);
        if (std::string(v.name) == "td-derive")
            sub->add_option("--steps", o.steps, "nesting bound before giving up");
        if (std::string(v.name) == "cfg-generate")
            sub->add_option("--length", o.length, "word length bound");
        if (std::string(v.name) == "bim-from-cfgs")
            sub->add_flag("--translate", o.translate, "print the translation instead of the bimorphism");
        bound.emplace_back(sub, v.run);
    }
    {
        CLI::App* sub = app.add_subcommand("cfg-member", "test membership of a word ('~' for the empty word)");
        sub->add_option("grammar", o.files[0], "grammar file")->required();
        sub->add_option("word", o.words, "terminals")->required();
        common(sub);
        bound.emplace_back(sub, run_member);
    }
    {
        CLI::App* sub = app.add_subcommand("fixture", "built-in example bimorphisms");
        sub->add_option("name", o.fixture, "fixture name")->required()->check(CLI::IsMember({"nonclosure", "qaln"}));
        common(sub);
        bound.emplace_back(sub, run_fixture);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        for (const auto& [sub, run] : bound)
            if (sub->parsed()) {
                std::ostringstream buffer;
                run(buffer, o);
                out << buffer.str();
            }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace bimorph
