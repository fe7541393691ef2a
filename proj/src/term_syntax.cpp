#include "bimorph/term_syntax.hpp"

#include <cctype>
#include <optional>

#include "bimorph/error.hpp"

namespace bimorph {

namespace {

bool is_space(char c)
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c)
{
    return !is_space(c) && c != '(' && c != ')' && c != ',' && c != '|';
}

struct RawTerm {
    std::string_view name;
    bool applied = false;
    std::vector<RawTerm> children;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    RawTerm read_all()
    {
        RawTerm t = read();
        skip();
        if (pos_ != text_.size())
            fail("trailing input");
        return t;
    }

private:
    RawTerm read()
    {
        skip();
        std::size_t n = scan_name(text_, pos_);
        if (n == 0)
            fail("expected a name");
        RawTerm t;
        t.name = text_.substr(pos_, n);
        pos_ += n;
        skip();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            t.applied = true;
            skip();
            if (pos_ < text_.size() && text_[pos_] == ')') {
                ++pos_;
                return t;
            }
            for (;;) {
                t.children.push_back(read());
                skip();
                if (pos_ >= text_.size())
                    fail("unclosed '('");
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        return t;
    }

    void skip()
    {
        while (pos_ < text_.size() && is_space(text_[pos_]))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::parse_error, what + " at column " + std::to_string(pos_ + 1) + " in '"
                                                + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::optional<unsigned> variable_index(std::string_view name)
{
    if (!is_variable_name(name))
        return std::nullopt;
    unsigned v = 0;
    for (char c : name.substr(1))
        v = v * 10 + static_cast<unsigned>(c - '0');
    return v;
}

Tree build_strict(const RawTerm& r, const Signature& sig)
{
    if (auto v = variable_index(r.name)) {
        if (!r.children.empty())
            throw Error(ErrorKind::parse_error, "variable '" + std::string(r.name) + "' applied to arguments");
        return Tree::variable(*v);
    }
    Name name(r.name);
    if (r.children.empty() && sig.leaves.contains(name))
        return Tree::leaf(name);
    if (!sig.ranked.contains(name))
        throw Error(ErrorKind::alphabet_mismatch, "unknown symbol '" + std::string(r.name) + "'");
    unsigned rank = sig.ranked.rank(name);
    if (rank != r.children.size())
        throw Error(ErrorKind::alphabet_mismatch, "symbol '" + std::string(r.name) + "' has rank " + std::to_string(rank)
                                                      + " but " + std::to_string(r.children.size()) + " children");
    std::vector<Tree> kids;
    kids.reserve(r.children.size());
    for (const RawTerm& c : r.children)
        kids.push_back(build_strict(c, sig));
    return Tree::node(name, std::move(kids));
}

Tree build_lenient(const RawTerm& r, const LeafAlphabet& leaves)
{
    if (auto v = variable_index(r.name)) {
        if (!r.children.empty())
            throw Error(ErrorKind::parse_error, "variable '" + std::string(r.name) + "' applied to arguments");
        return Tree::variable(*v);
    }
    Name name(r.name);
    if (r.children.empty() && leaves.contains(name))
        return Tree::leaf(name);
    std::vector<Tree> kids;
    kids.reserve(r.children.size());
    for (const RawTerm& c : r.children)
        kids.push_back(build_lenient(c, leaves));
    return Tree::node(name, std::move(kids));
}

} // namespace

std::size_t scan_name(std::string_view text, std::size_t pos)
{
    std::size_t i = pos;
    if (i < text.size() && text[i] == '<') {
        int depth = 0;
        for (; i < text.size(); ++i) {
            if (text[i] == '<')
                ++depth;
            else if (text[i] == '>' && --depth == 0) {
                ++i;
                break;
            }
        }
        if (depth != 0)
            throw Error(ErrorKind::parse_error, "unbalanced '<' in '" + std::string(text) + "'");
    }
    while (i < text.size() && is_name_char(text[i]))
        ++i;
    return i - pos;
}

std::vector<std::string_view> split_top_level(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    int parens = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size();) {
        char c = text[i];
        if (c == '<' && (i == 0 || !is_name_char(text[i - 1]) || text[i - 1] == '<')) {
            i += scan_name(text, i);
            continue;
        }
        if (c == '(')
            ++parens;
        else if (c == ')')
            --parens;
        else if (c == sep && parens == 0) {
            out.push_back(trim(text.substr(start, i - start)));
            start = i + 1;
        }
        ++i;
    }
    out.push_back(trim(text.substr(start)));
    return out;
}

std::string_view trim(std::string_view text)
{
    while (!text.empty() && is_space(text.front()))
        text.remove_prefix(1);
    while (!text.empty() && is_space(text.back()))
        text.remove_suffix(1);
    return text;
}

Tree parse_tree(std::string_view text, const Signature& sig)
{
    return build_strict(Reader(text).read_all(), sig);
}

Tree parse_term(std::string_view text, const LeafAlphabet& leaves)
{
    return build_lenient(Reader(text).read_all(), leaves);
}

} // namespace bimorph
