#include "bimorph/tree.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "bimorph/error.hpp"

namespace bimorph {

struct Tree::Node {
    NodeKind kind;
    Name name;
    unsigned var = 0;
    std::vector<Tree> children;
    std::size_t hash = 0;
    std::size_t height = 0;
    std::size_t size = 1;
    unsigned max_var = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Tree Tree::node(Name symbol, std::vector<Tree> children)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::symbol;
    n->name = symbol;
    n->hash = mix(mix(1, symbol.id()), children.size());
    for (const Tree& c : children) {
        n->hash = mix(n->hash, c.hash());
        n->height = std::max(n->height, c.height() + 1);
        n->size += c.size();
        n->max_var = std::max(n->max_var, c.max_variable());
    }
    n->children = std::move(children);
    return Tree(std::move(n));
}

Tree Tree::leaf(Name name)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::leaf;
    n->name = name;
    n->hash = mix(2, name.id());
    return Tree(std::move(n));
}

Tree Tree::variable(unsigned index)
{
    if (index == 0)
        throw Error(ErrorKind::unbound_variable, "variable indices start at 1");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::variable;
    n->name = Name("x" + std::to_string(index));
    n->var = index;
    n->max_var = index;
    n->hash = mix(3, index);
    return Tree(std::move(n));
}

NodeKind Tree::kind() const noexcept { return node_->kind; }
Name Tree::name() const noexcept { return node_->name; }
unsigned Tree::var_index() const noexcept { return node_->var; }
std::span<const Tree> Tree::children() const noexcept { return node_->children; }
std::size_t Tree::height() const noexcept { return node_->height; }
std::size_t Tree::size() const noexcept { return node_->size; }
unsigned Tree::max_variable() const noexcept { return node_->max_var; }
std::size_t Tree::hash() const noexcept { return node_->hash; }

namespace {

void print(std::string& out, const Tree& t)
{
    out += t.name().str();
    if (!t.is_symbol() || t.rank() == 0)
        return;
    out += '(';
    bool first = true;
    for (const Tree& c : t.children()) {
        if (!first)
            out += ',';
        print(out, c);
        first = false;
    }
    out += ')';
}

} // namespace

std::string Tree::str() const
{
    std::string out;
    print(out, *this);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Tree& t)
{
    return os << t.str();
}

bool operator==(const Tree& a, const Tree& b) noexcept
{
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.name != y.name || x.var != y.var
        || x.children.size() != y.children.size() || x.size != y.size)
        return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (!(x.children[i] == y.children[i]))
            return false;
    return true;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) noexcept
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind == NodeKind::variable && y.kind == NodeKind::variable)
        return x.var <=> y.var;
    if (auto c = x.name <=> y.name; c != 0)
        return c;
    if (auto c = x.kind <=> y.kind; c != 0)
        return c;
    if (auto c = x.children.size() <=> y.children.size(); c != 0)
        return c;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (auto c = x.children[i] <=> y.children[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::string word_str(const Word& w)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += w[i].str();
    }
    return out;
}

Word parse_word(std::string_view text)
{
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j > i)
            w.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return w;
}

Position Position::child(unsigned i) const
{
    auto p = path_;
    p.push_back(i);
    return Position(std::move(p));
}

std::string Position::str() const
{
    if (path_.empty())
        return "ε";
    bool small = std::all_of(path_.begin(), path_.end(), [](unsigned c) { return c < 10; });
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (!small && i)
            out += '.';
        out += std::to_string(path_[i]);
    }
    return out;
}

Position Position::parse(std::string_view text)
{
    if (text.empty() || text == "ε" || text == "e")
        return {};
    std::vector<unsigned> path;
    bool dotted = text.find('.') != std::string_view::npos;
    unsigned cur = 0;
    bool have = false;
    for (char c : text) {
        if (c == '.' && dotted) {
            if (!have)
                throw Error(ErrorKind::parse_error, "bad position '" + std::string(text) + "'");
            path.push_back(cur);
            cur = 0;
            have = false;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (dotted) {
                cur = cur * 10 + static_cast<unsigned>(c - '0');
                have = true;
            } else {
                path.push_back(static_cast<unsigned>(c - '0'));
            }
        } else {
            throw Error(ErrorKind::parse_error, "bad position '" + std::string(text) + "'");
        }
    }
    if (dotted) {
        if (!have)
            throw Error(ErrorKind::parse_error, "bad position '" + std::string(text) + "'");
        path.push_back(cur);
    }
    for (unsigned c : path)
        if (c == 0)
            throw Error(ErrorKind::parse_error, "position components are 1-based");
    return Position(std::move(path));
}

namespace {

void collect_positions(const Tree& t, std::vector<unsigned>& prefix, std::vector<Position>& out, bool nullary_only)
{
    if (!nullary_only || t.rank() == 0)
        out.emplace_back(prefix);
    for (std::size_t i = 0; i < t.rank(); ++i) {
        prefix.push_back(static_cast<unsigned>(i + 1));
        collect_positions(t.child(i), prefix, out, nullary_only);
        prefix.pop_back();
    }
}

[[noreturn]] void bad_position(const Tree& t, const Position& w)
{
    throw Error(ErrorKind::invalid_position, "position " + w.str() + " not in pos(" + t.str() + ")");
}

Tree replace_rec(const Tree& t, std::span<const unsigned> path, const Tree& u, const Tree& root, const Position& w)
{
    if (path.empty())
        return u;
    unsigned i = path.front();
    if (i == 0 || i > t.rank())
        bad_position(root, w);
    std::vector<Tree> kids(t.children().begin(), t.children().end());
    kids[i - 1] = replace_rec(kids[i - 1], path.subspan(1), u, root, w);
    return Tree::node(t.name(), std::move(kids));
}

} // namespace

std::vector<Position> positions(const Tree& t)
{
    std::vector<Position> out;
    std::vector<unsigned> prefix;
    collect_positions(t, prefix, out, false);
    return out;
}

Tree subtree_at(const Tree& t, const Position& w)
{
    const Tree* cur = &t;
    for (unsigned i : w.path()) {
        if (i == 0 || i > cur->rank())
            bad_position(t, w);
        cur = &cur->child(i - 1);
    }
    return *cur;
}

Tree replace_at(const Tree& t, const Position& w, const Tree& u)
{
    return replace_rec(t, w.path(), u, t, w);
}

std::vector<Position> branches(const Tree& t)
{
    std::vector<Position> out;
    std::vector<unsigned> prefix;
    collect_positions(t, prefix, out, true);
    return out;
}

TreeSet subtrees(const Tree& t)
{
    TreeSet out{t};
    for (const Tree& c : t.children()) {
        auto sub = subtrees(c);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::size_t count_symbol(const Tree& t, Name f)
{
    std::size_t n = (!t.is_variable() && t.name() == f) ? 1 : 0;
    for (const Tree& c : t.children())
        n += count_symbol(c, f);
    return n;
}

namespace {

void yield_rec(const Tree& t, const LeafAlphabet& y, Word& out)
{
    if (t.is_leaf()) {
        if (y.contains(t.name()))
            out.push_back(t.name());
        return;
    }
    for (const Tree& c : t.children())
        yield_rec(c, y, out);
}

void var_yield_rec(const Tree& t, std::vector<unsigned>& out)
{
    if (t.is_variable()) {
        out.push_back(t.var_index());
        return;
    }
    for (const Tree& c : t.children())
        var_yield_rec(c, out);
}

void var_count_rec(const Tree& t, std::vector<std::size_t>& out)
{
    if (t.is_variable()) {
        if (t.var_index() < out.size())
            ++out[t.var_index()];
        return;
    }
    for (const Tree& c : t.children())
        var_count_rec(c, out);
}

} // namespace

Word yield(const Tree& t, const LeafAlphabet& y)
{
    Word out;
    yield_rec(t, y, out);
    return out;
}

std::vector<unsigned> variable_yield(const Tree& t)
{
    std::vector<unsigned> out;
    var_yield_rec(t, out);
    return out;
}

std::vector<std::size_t> variable_counts(const Tree& t, unsigned n)
{
    std::vector<std::size_t> out(n + 1, 0);
    var_count_rec(t, out);
    return out;
}

namespace {

Tree substitute_rec(const Tree& t, std::span<const Tree> ts)
{
    if (t.is_ground())
        return t;
    if (t.is_variable())
        return ts[t.var_index() - 1];
    std::vector<Tree> kids;
    kids.reserve(t.rank());
    for (const Tree& c : t.children())
        kids.push_back(substitute_rec(c, ts));
    return Tree::node(t.name(), std::move(kids));
}

Tree substitute_leaf_rec(const Tree& t, Name v, std::span<const Tree> ts, std::size_t& next)
{
    if (t.is_leaf() && t.name() == v)
        return ts[next++];
    if (!t.is_symbol() || t.rank() == 0)
        return t;
    std::vector<Tree> kids;
    kids.reserve(t.rank());
    for (const Tree& c : t.children())
        kids.push_back(substitute_leaf_rec(c, v, ts, next));
    return Tree::node(t.name(), std::move(kids));
}

std::size_t count_leaf(const Tree& t, Name v)
{
    if (t.is_leaf())
        return t.name() == v ? 1 : 0;
    std::size_t n = 0;
    for (const Tree& c : t.children())
        n += count_leaf(c, v);
    return n;
}

} // namespace

Tree substitute(const Tree& t, std::span<const Tree> ts)
{
    if (t.max_variable() > ts.size())
        throw Error(ErrorKind::unbound_variable, "x" + std::to_string(t.max_variable()) + " in " + t.str() + " but only "
                                                     + std::to_string(ts.size()) + " trees supplied");
    return substitute_rec(t, ts);
}

Tree substitute_leaf(const Tree& t, Name v, std::span<const Tree> ts)
{
    std::size_t n = count_leaf(t, v);
    if (n != ts.size())
        throw Error(ErrorKind::arity_mismatch, "leaf '" + std::string(v.str()) + "' occurs " + std::to_string(n)
                                                   + " times but " + std::to_string(ts.size()) + " trees supplied");
    std::size_t next = 0;
    // preorder visits positions in lexicographic order
    return substitute_leaf_rec(t, v, ts, next);
}

Tree iterate_unary(Name f, std::size_t k, const Tree& t)
{
    Tree cur = t;
    for (std::size_t i = 0; i < k; ++i)
        cur = Tree::node(f, {cur});
    return cur;
}

Context::Context(Tree tree, unsigned arity) : tree_(std::move(tree)), arity_(arity)
{
    if (tree_.max_variable() > arity_)
        throw Error(ErrorKind::invalid_context, tree_.str() + " uses variables beyond x" + std::to_string(arity_));
    auto counts = variable_counts(tree_, arity_);
    for (unsigned i = 1; i <= arity_; ++i)
        if (counts[i] != 1)
            throw Error(ErrorKind::invalid_context,
                        "x" + std::to_string(i) + " occurs " + std::to_string(counts[i]) + " times in " + tree_.str());
}

Context iterate_context(const Context& c, std::size_t k)
{
    if (c.arity() != 1)
        throw Error(ErrorKind::invalid_context, "iteration needs a 1-context");
    Tree cur = c.tree();
    for (std::size_t i = 0; i < k; ++i) {
        const Tree inner[] = {cur};
        cur = substitute(c.tree(), inner);
    }
    return Context(cur, 1);
}

} // namespace bimorph
