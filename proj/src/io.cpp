#include "bimorph/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "bimorph/error.hpp"
#include "bimorph/term_syntax.hpp"

namespace bimorph {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const fs::path& path, std::string_view text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::io_error, "cannot write " + path.string());
    out << text;
    if (!out)
        throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

namespace {

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> lines_of(std::string_view text)
{
    std::vector<Line> out;
    std::size_t n = 0;
    while (!text.empty()) {
        ++n;
        std::size_t nl = text.find('\n');
        std::string_view l = trim(text.substr(0, nl));
        if (!l.empty() && l.front() != '#')
            out.push_back({n, l});
        if (nl == std::string_view::npos)
            break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

[[noreturn]] void bad_line(const Line& l, const std::string& what)
{
    throw Error(ErrorKind::parse_error, "line " + std::to_string(l.number) + ": " + what + ": '" + std::string(l.text) + "'");
}

// Value of a "key: value" header line, if this line is one.
std::optional<std::string_view> header(std::string_view line, std::string_view key)
{
    if (line.size() > key.size() && line.starts_with(key) && line[key.size()] == ':')
        return trim(line.substr(key.size() + 1));
    return std::nullopt;
}

std::vector<std::string> words(std::string_view text)
{
    std::vector<std::string> out;
    for (Name n : parse_word(text))
        out.emplace_back(n.str());
    return out;
}

bool plain_name(const std::string& label)
{
    return !label.empty() && scan_name(label, 0) == label.size() && !is_variable_name(label);
}

std::vector<std::string> sanitize(const std::vector<std::string>& labels)
{
    std::set<std::string> seen;
    bool ok = true;
    for (const auto& l : labels)
        ok = ok && plain_name(l) && seen.insert(l).second;
    if (ok)
        return labels;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        out.push_back("q" + std::to_string(i));
    return out;
}

// Position of a top-level `token` (outside parentheses and <...> names).
std::size_t find_top_level(std::string_view text, std::string_view token, std::size_t from = 0)
{
    int parens = 0;
    for (std::size_t i = from; i < text.size();) {
        char c = text[i];
        if (c == '<' && (i == 0 || text[i - 1] == '(' || text[i - 1] == ',' || text[i - 1] == ' ')) {
            i += std::max<std::size_t>(1, scan_name(text, i));
            continue;
        }
        if (c == '(')
            ++parens;
        else if (c == ')')
            --parens;
        else if (parens == 0 && text.substr(i).starts_with(token))
            return i;
        ++i;
    }
    return std::string_view::npos;
}

void infer_symbols(const Tree& t, RankedAlphabet& ranked, const LeafAlphabet& leaves)
{
    if (t.is_variable() || t.is_leaf())
        return;
    if (t.rank() == 0 && leaves.contains(t.name()))
        return;
    ranked.add(t.name(), static_cast<unsigned>(t.rank()));
    for (const Tree& c : t.children())
        infer_symbols(c, ranked, leaves);
}

// Re-reads a leniently parsed tree against the final signature so that
// leaves and nullary symbols land in the right category.
Tree reparse(const Tree& t, const Signature& sig)
{
    return parse_tree(t.str(), sig);
}

} // namespace

std::vector<std::string> file_state_names(const Fta& a)
{
    std::vector<std::string> labels;
    for (State q = 0; q < a.state_count(); ++q)
        labels.push_back(a.state_label(q));
    return sanitize(labels);
}

Fta parse_fta(std::string_view text, const Signature& hint)
{
    Signature sig = hint;
    std::vector<std::string> states;
    std::vector<std::string> finals;
    struct RawRule {
        std::string target;
        std::string symbol;
        std::vector<std::string> children;
    };
    std::vector<RawRule> rules;

    for (const Line& l : lines_of(text)) {
        if (auto v = header(l.text, "ranked")) {
            sig.ranked = sig.ranked.merged(RankedAlphabet::parse(*v));
        } else if (auto v = header(l.text, "leaves")) {
            sig.leaves = sig.leaves.merged(LeafAlphabet::parse(*v));
        } else if (auto v = header(l.text, "states")) {
            for (auto& s : words(*v))
                states.push_back(std::move(s));
        } else if (auto v = header(l.text, "final")) {
            for (auto& s : words(*v))
                finals.push_back(std::move(s));
        } else {
            std::size_t n = scan_name(l.text, 0);
            std::string_view rest = trim(l.text.substr(n));
            if (n == 0 || !rest.starts_with("->"))
                bad_line(l, "expected 'q -> f(q1,...)'");
            RawRule r{std::string(l.text.substr(0, n)), {}, {}};
            rest = trim(rest.substr(2));
            std::size_t m = scan_name(rest, 0);
            if (m == 0)
                bad_line(l, "missing symbol");
            r.symbol = std::string(rest.substr(0, m));
            rest = trim(rest.substr(m));
            if (!rest.empty()) {
                if (rest.front() != '(' || rest.back() != ')')
                    bad_line(l, "expected '(states)'");
                std::string_view inner = trim(rest.substr(1, rest.size() - 2));
                if (!inner.empty())
                    for (std::string_view c : split_top_level(inner, ','))
                        r.children.emplace_back(c);
            }
            rules.push_back(std::move(r));
        }
    }
    for (const RawRule& r : rules) {
        Name f(r.symbol);
        if (!r.children.empty() || !sig.leaves.contains(f))
            if (!sig.ranked.contains(f) || sig.ranked.rank(f) != r.children.size())
                sig.ranked.add(f, static_cast<unsigned>(r.children.size()));
    }
    Fta a(sig);
    auto state = [&a](const std::string& name) {
        long q = a.find_state(name);
        return q >= 0 ? static_cast<State>(q) : a.add_state(name);
    };
    for (const auto& s : states)
        state(s);
    for (const auto& s : finals)
        a.set_final(state(s));
    for (const RawRule& r : rules) {
        std::vector<State> kids;
        for (const auto& c : r.children)
            kids.push_back(state(c));
        a.add_rule(state(r.target), Name(r.symbol), std::move(kids));
    }
    return a;
}

std::string format_fta(const Fta& a)
{
    const auto names = file_state_names(a);
    std::ostringstream out;
    if (!a.signature().ranked.empty())
        out << "ranked: " << a.signature().ranked.str() << '\n';
    if (!a.signature().leaves.empty())
        out << "leaves: " << a.signature().leaves.str() << '\n';
    out << "states:";
    for (const auto& n : names)
        out << ' ' << n;
    out << "\nfinal:";
    for (State q : a.final_states())
        out << ' ' << names[q];
    out << '\n';
    std::vector<std::string> rules;
    for (const FtaRule& r : a.rules()) {
        std::string line = names[r.target] + " -> " + std::string(r.symbol.str());
        if (!r.children.empty()) {
            line += '(';
            for (std::size_t i = 0; i < r.children.size(); ++i)
                line += (i ? "," : "") + names[r.children[i]];
            line += ')';
        }
        rules.push_back(std::move(line));
    }
    std::sort(rules.begin(), rules.end());
    for (const auto& r : rules)
        out << r << '\n';
    return out.str();
}

TreeHom parse_hom(std::string_view text)
{
    Signature source, target;
    struct RawMap {
        Name symbol;
        std::optional<unsigned> rank;
        std::string image;
    };
    std::vector<RawMap> maps;
    for (const Line& l : lines_of(text)) {
        if (auto v = header(l.text, "source-leaves")) {
            source.leaves = source.leaves.merged(LeafAlphabet::parse(*v));
        } else if (auto v = header(l.text, "source-ranked")) {
            source.ranked = source.ranked.merged(RankedAlphabet::parse(*v));
        } else if (auto v = header(l.text, "target-leaves")) {
            target.leaves = target.leaves.merged(LeafAlphabet::parse(*v));
        } else if (auto v = header(l.text, "target-ranked")) {
            target.ranked = target.ranked.merged(RankedAlphabet::parse(*v));
        } else {
            std::size_t arrow = find_top_level(l.text, "|->");
            if (arrow == std::string_view::npos)
                bad_line(l, "expected 'f/k |-> tree' or 'v |-> tree'");
            std::string_view lhs = trim(l.text.substr(0, arrow));
            RawMap m{Name(), std::nullopt, std::string(trim(l.text.substr(arrow + 3)))};
            std::size_t n = scan_name(lhs, 0);
            if (n != lhs.size() || n == 0)
                bad_line(l, "bad left-hand side");
            std::size_t slash = lhs.rfind('/');
            if (slash != std::string_view::npos && slash + 1 < lhs.size()
                && std::all_of(lhs.begin() + static_cast<long>(slash) + 1, lhs.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                m.symbol = Name(lhs.substr(0, slash));
                m.rank = static_cast<unsigned>(std::stoul(std::string(lhs.substr(slash + 1))));
                source.ranked.add(m.symbol, *m.rank);
            } else {
                m.symbol = Name(lhs);
                source.leaves.add(m.symbol);
            }
            maps.push_back(std::move(m));
        }
    }
    std::vector<Tree> images;
    for (const RawMap& m : maps) {
        images.push_back(parse_term(m.image, target.leaves));
        infer_symbols(images.back(), target.ranked, target.leaves);
    }
    TreeHom h(source, target);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        Tree img = reparse(images[i], target);
        if (maps[i].rank)
            h.map_symbol(maps[i].symbol, std::move(img));
        else
            h.map_leaf(maps[i].symbol, std::move(img));
    }
    return h;
}

std::string format_hom(const TreeHom& h)
{
    std::ostringstream out;
    if (!h.source().ranked.empty())
        out << "source-ranked: " << h.source().ranked.str() << '\n';
    if (!h.source().leaves.empty())
        out << "source-leaves: " << h.source().leaves.str() << '\n';
    if (!h.target().ranked.empty())
        out << "target-ranked: " << h.target().ranked.str() << '\n';
    if (!h.target().leaves.empty())
        out << "target-leaves: " << h.target().leaves.str() << '\n';
    out << h.str();
    return out.str();
}

Bimorphism load_bimorphism(const fs::path& path)
{
    const fs::path dir = path.parent_path();
    std::optional<TreeHom> phi, psi;
    std::optional<std::string> center_text;
    const std::string text = read_file(path);
    for (const Line& l : lines_of(text)) {
        if (auto v = header(l.text, "phi"))
            phi = parse_hom(read_file(dir / std::string(*v)));
        else if (auto v = header(l.text, "psi"))
            psi = parse_hom(read_file(dir / std::string(*v)));
        else if (auto v = header(l.text, "center"))
            center_text = read_file(dir / std::string(*v));
        else
            bad_line(l, "expected 'phi:', 'center:' or 'psi:'");
    }
    if (!phi || !psi || !center_text)
        throw Error(ErrorKind::parse_error, path.string() + ": needs phi, center and psi");
    Bimorphism b{*phi, parse_fta(*center_text, phi->source()), *psi};
    b.validate();
    return b;
}

void save_bimorphism(const Bimorphism& b, const fs::path& dir, const std::string& stem)
{
    write_file(dir / (stem + ".phi.hom"), format_hom(b.phi));
    write_file(dir / (stem + ".center.fta"), format_fta(b.center));
    write_file(dir / (stem + ".psi.hom"), format_hom(b.psi));
    write_file(dir / (stem + ".bim"),
               "phi: " + stem + ".phi.hom\ncenter: " + stem + ".center.fta\npsi: " + stem + ".psi.hom\n");
}

std::string format_bimorphism(const Bimorphism& b)
{
    return "phi:\n" + format_hom(b.phi) + "center:\n" + format_fta(b.center) + "psi:\n" + format_hom(b.psi);
}

Transducer parse_transducer(std::string_view text, const fs::path& base_dir)
{
    Signature input, output;
    std::vector<std::string> states, finals;
    struct RawRule {
        Line line;
        std::string state;
        Tree pattern;
        std::string rhs;
        std::string lookahead;
    };
    std::vector<RawRule> raw;
    std::vector<Line> rule_lines;
    for (const Line& l : lines_of(text)) {
        if (auto v = header(l.text, "input-leaves"))
            input.leaves = input.leaves.merged(LeafAlphabet::parse(*v));
        else if (auto v = header(l.text, "input-ranked"))
            input.ranked = input.ranked.merged(RankedAlphabet::parse(*v));
        else if (auto v = header(l.text, "output-leaves"))
            output.leaves = output.leaves.merged(LeafAlphabet::parse(*v));
        else if (auto v = header(l.text, "output-ranked"))
            output.ranked = output.ranked.merged(RankedAlphabet::parse(*v));
        else if (auto v = header(l.text, "states"))
            for (auto& s : words(*v))
                states.push_back(std::move(s));
        else if (auto v = header(l.text, "final"))
            for (auto& s : words(*v))
                finals.push_back(std::move(s));
        else
            rule_lines.push_back(l);
    }
    for (const Line& l : rule_lines) {
        std::size_t arrow = find_top_level(l.text, "->");
        if (arrow == std::string_view::npos)
            bad_line(l, "expected 'q(pattern) -> rhs'");
        Tree lhs = parse_term(trim(l.text.substr(0, arrow)), input.leaves);
        if (!lhs.is_symbol() || lhs.rank() != 1)
            bad_line(l, "left-hand side must be q(pattern)");
        std::string_view rest = trim(l.text.substr(arrow + 2));
        std::string la;
        if (std::size_t at = rest.find("[lookahead:"); at != std::string_view::npos) {
            std::string_view tail = trim(rest.substr(at + 11));
            if (tail.empty() || tail.back() != ']')
                bad_line(l, "unterminated look-ahead");
            la = std::string(trim(tail.substr(0, tail.size() - 1)));
            rest = trim(rest.substr(0, at));
        }
        raw.push_back({l, std::string(lhs.name().str()), lhs.child(0), std::string(rest), la});
        if (std::find(states.begin(), states.end(), raw.back().state) == states.end())
            states.push_back(raw.back().state);
    }

    // Converts a parsed right-hand side: q(x_i) with q a state becomes a call.
    auto is_state = [&states](Name n) { return std::find(states.begin(), states.end(), n.str()) != states.end(); };
    struct Converted {
        Tree rhs;
        std::vector<std::pair<std::string, unsigned>> calls;
    };
    std::vector<Converted> converted;
    std::vector<std::vector<Tree>> finite_patterns(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        Converted c{Tree::leaf("_"), {}};
        std::function<Tree(const Tree&)> convert = [&](const Tree& t) -> Tree {
            if (t.is_symbol() && t.rank() == 1 && t.child(0).is_variable() && is_state(t.name())) {
                c.calls.emplace_back(std::string(t.name().str()), t.child(0).var_index());
                return Tree::variable(static_cast<unsigned>(c.calls.size()));
            }
            if (t.is_variable())
                bad_line(raw[i].line, "bare variable in right-hand side");
            if (!t.is_symbol() || t.rank() == 0)
                return t;
            std::vector<Tree> kids;
            for (const Tree& k : t.children())
                kids.push_back(convert(k));
            return Tree::node(t.name(), std::move(kids));
        };
        c.rhs = convert(parse_term(raw[i].rhs, output.leaves));
        infer_symbols(c.rhs, output.ranked, output.leaves);
        infer_symbols(raw[i].pattern, input.ranked, input.leaves);
        if (!raw[i].lookahead.empty() && raw[i].lookahead.front() != '@')
            for (std::string_view p : split_top_level(raw[i].lookahead, '|')) {
                finite_patterns[i].push_back(parse_term(p, input.leaves));
                infer_symbols(finite_patterns[i].back(), input.ranked, input.leaves);
            }
        converted.push_back(std::move(c));
    }
    for (const auto& s : states)
        if (output.ranked.contains(Name(s)))
            throw Error(ErrorKind::parse_error, "state '" + s + "' is also an output symbol");

    Transducer m(input, output);
    for (const auto& s : states)
        m.add_state(s);
    for (const auto& s : finals) {
        long q = m.find_state(s);
        if (q < 0)
            throw Error(ErrorKind::parse_error, "final state '" + s + "' is not declared");
        m.set_final(static_cast<State>(q));
    }
    std::map<std::string, std::shared_ptr<const Fta>> automata;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        TdRule rule{static_cast<State>(m.find_state(raw[i].state)), reparse(raw[i].pattern, input),
                    reparse(converted[i].rhs, output), {}, {}};
        for (const auto& [s, var] : converted[i].calls)
            rule.calls.push_back({static_cast<State>(m.find_state(s)), var});
        const std::string& la = raw[i].lookahead;
        if (!la.empty() && la.front() == '@') {
            auto parts = words(std::string_view(la).substr(1));
            if (parts.empty())
                bad_line(raw[i].line, "look-ahead needs an automaton file");
            auto& a = automata[parts[0]];
            if (!a)
                a = std::make_shared<const Fta>(parse_fta(read_file(base_dir / parts[0]), input));
            std::vector<State> accepting;
            for (std::size_t j = 1; j < parts.size(); ++j) {
                long q = a->find_state(parts[j]);
                if (q < 0)
                    bad_line(raw[i].line, "unknown look-ahead state '" + parts[j] + "'");
                accepting.push_back(static_cast<State>(q));
            }
            rule.lookahead = Lookahead::regular(a, std::move(accepting));
        } else if (!la.empty()) {
            std::vector<Tree> patterns;
            for (const Tree& p : finite_patterns[i])
                patterns.push_back(reparse(p, input));
            rule.lookahead = Lookahead::finite(std::move(patterns));
        }
        m.add_rule(std::move(rule));
    }
    return m;
}

Transducer load_transducer(const fs::path& path)
{
    return parse_transducer(read_file(path), path.parent_path());
}

namespace {

struct TransducerText {
    std::string text;
    std::vector<std::pair<std::string, const Fta*>> automata;
};

TransducerText render_transducer(const Transducer& m, const std::string& stem)
{
    std::vector<std::string> labels;
    for (State q = 0; q < m.state_count(); ++q)
        labels.push_back(m.state_label(q));
    const auto names = sanitize(labels);
    TransducerText out;
    std::ostringstream s;
    if (!m.input().ranked.empty())
        s << "input-ranked: " << m.input().ranked.str() << '\n';
    if (!m.input().leaves.empty())
        s << "input-leaves: " << m.input().leaves.str() << '\n';
    if (!m.output().ranked.empty())
        s << "output-ranked: " << m.output().ranked.str() << '\n';
    if (!m.output().leaves.empty())
        s << "output-leaves: " << m.output().leaves.str() << '\n';
    s << "states:";
    for (const auto& n : names)
        s << ' ' << n;
    s << "\nfinal:";
    for (State q : m.final_states())
        s << ' ' << names[q];
    s << '\n';
    for (const TdRule& r : m.rules()) {
        std::vector<Tree> calls;
        for (const StateCall& c : r.calls)
            calls.push_back(Tree::node(Name(names[c.state]), {Tree::variable(c.var)}));
        s << names[r.state] << '(' << r.pattern << ") -> " << substitute(r.rhs, calls);
        if (r.lookahead.kind == LookaheadKind::finite) {
            s << " [lookahead:";
            for (std::size_t i = 0; i < r.lookahead.patterns.size(); ++i)
                s << (i ? " | " : " ") << r.lookahead.patterns[i];
            s << ']';
        } else if (r.lookahead.kind == LookaheadKind::regular) {
            const Fta* a = r.lookahead.automaton.get();
            auto it = std::find_if(out.automata.begin(), out.automata.end(), [a](const auto& e) { return e.second == a; });
            if (it == out.automata.end()) {
                out.automata.emplace_back(stem + ".la" + std::to_string(out.automata.size() + 1) + ".fta", a);
                it = out.automata.end() - 1;
            }
            const auto la_names = file_state_names(*a);
            s << " [lookahead: @" << it->first;
            for (State q : r.lookahead.accepting)
                s << ' ' << la_names[q];
            s << ']';
        }
        s << '\n';
    }
    out.text = s.str();
    return out;
}

} // namespace

std::string format_transducer(const Transducer& m, const std::string& stem)
{
    return render_transducer(m, stem).text;
}

void save_transducer(const Transducer& m, const fs::path& dir, const std::string& stem)
{
    TransducerText t = render_transducer(m, stem);
    for (const auto& [file, a] : t.automata)
        write_file(dir / file, format_fta(*a));
    write_file(dir / (stem + ".td"), t.text);
}

Cfg load_cfg(const fs::path& path)
{
    return Cfg::parse(read_file(path));
}

} // namespace bimorph
