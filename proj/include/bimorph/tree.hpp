#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "bimorph/alphabet.hpp"
#include "bimorph/name.hpp"

namespace bimorph {

enum class NodeKind : std::uint8_t { symbol, leaf, variable };

/// Immutable ranked tree. Nodes are shared; copies are cheap.
///
/// A node is either a ranked symbol applied to its children, a leaf-alphabet
/// symbol, or a formal variable x_i (i >= 1). Height, size and hash are
/// cached at construction.
class Tree {
public:
    static Tree node(Name symbol, std::vector<Tree> children = {});
    static Tree leaf(Name name);
    static Tree variable(unsigned index);

    NodeKind kind() const noexcept;
    bool is_symbol() const noexcept { return kind() == NodeKind::symbol; }
    bool is_leaf() const noexcept { return kind() == NodeKind::leaf; }
    bool is_variable() const noexcept { return kind() == NodeKind::variable; }

    /// Label text; variables report "x<i>".
    Name name() const noexcept;
    unsigned var_index() const noexcept;

    std::span<const Tree> children() const noexcept;
    const Tree& child(std::size_t i) const { return children()[i]; }
    std::size_t rank() const noexcept { return children().size(); }

    std::size_t height() const noexcept;
    std::size_t size() const noexcept;
    /// Largest variable index occurring in the tree, 0 if ground.
    unsigned max_variable() const noexcept;
    bool is_ground() const noexcept { return max_variable() == 0; }

    std::size_t hash() const noexcept;
    /// Node identity; equal trees may still have distinct identities.
    const void* identity() const noexcept { return node_.get(); }

    std::string str() const;

    friend bool operator==(const Tree& a, const Tree& b) noexcept;
    /// Canonical total order: label text, then kind, then arity, then
    /// children lexicographically.
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) noexcept;

private:
    struct Node;
    explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Tree& t);

struct TreeHash {
    std::size_t operator()(const Tree& t) const noexcept { return t.hash(); }
};

using TreeSet = std::set<Tree>;
using TreeHashSet = std::unordered_set<Tree, TreeHash>;
using TreePair = std::pair<Tree, Tree>;
using Relation = std::set<TreePair>;

/// A string over a leaf alphabet.
using Word = std::vector<Name>;
/// Space-separated; the empty word prints as "".
std::string word_str(const Word& w);
Word parse_word(std::string_view text);

/// Path from the root; components are 1-based child indices.
class Position {
public:
    Position() = default;
    explicit Position(std::vector<unsigned> path) : path_(std::move(path)) {}
    Position(std::initializer_list<unsigned> path) : path_(path) {}

    std::span<const unsigned> path() const noexcept { return path_; }
    std::size_t length() const noexcept { return path_.size(); }
    bool is_root() const noexcept { return path_.empty(); }
    Position child(unsigned i) const;

    /// "ε" for the root, digits concatenated when all components are < 10,
    /// dot-separated otherwise.
    std::string str() const;
    static Position parse(std::string_view text);

    /// Lexicographic: a proper prefix precedes its extensions, otherwise the
    /// first differing component decides.
    auto operator<=>(const Position&) const = default;

private:
    std::vector<unsigned> path_;
};

/// pos(t) in lexicographic order.
std::vector<Position> positions(const Tree& t);
Tree subtree_at(const Tree& t, const Position& w);
Tree replace_at(const Tree& t, const Position& w, const Tree& u);
/// br(t): positions of nullary nodes.
std::vector<Position> branches(const Tree& t);
/// sub(t).
TreeSet subtrees(const Tree& t);
/// |t|_f for a symbol or leaf name.
std::size_t count_symbol(const Tree& t, Name f);
/// yd_Y(t): leaves outside Y (and nullary ranked symbols) contribute nothing.
Word yield(const Tree& t, const LeafAlphabet& y);
/// Indices of variables in left-to-right order.
std::vector<unsigned> variable_yield(const Tree& t);
/// |t|_{x_i} for i in [1, n]; index 0 unused.
std::vector<std::size_t> variable_counts(const Tree& t, unsigned n);

/// t[t1..tn]: every x_i replaced by ts[i-1].
Tree substitute(const Tree& t, std::span<const Tree> ts);
/// t[v <- (t1..tn)]: the i-th occurrence of leaf v (lexicographic position
/// order) replaced by ts[i-1].
Tree substitute_leaf(const Tree& t, Name v, std::span<const Tree> ts);

/// f^k(t); f^0(t) = t.
Tree iterate_unary(Name f, std::size_t k, const Tree& t);

/// A tree with each of x1..xn occurring exactly once.
class Context {
public:
    Context(Tree tree, unsigned arity);
    const Tree& tree() const noexcept { return tree_; }
    unsigned arity() const noexcept { return arity_; }
    bool operator==(const Context&) const = default;

private:
    Tree tree_;
    unsigned arity_;
};

/// C^k with C^0 = C and C^{k+1} = C[C^k]; C must be a 1-context.
Context iterate_context(const Context& c, std::size_t k);

} // namespace bimorph
