#include "bimorph/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bimorph/error.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

bool is_variable_name(std::string_view text) noexcept
{
    if (text.size() < 2 || text[0] != 'x' || text[1] == '0')
        return false;
    return std::all_of(text.begin() + 1, text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

namespace {

std::vector<std::string_view> split_ws(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j > i)
            out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

void check_name(Name name)
{
    if (name.empty())
        throw Error(ErrorKind::alphabet_mismatch, "empty symbol name");
    if (is_variable_name(name.str()))
        throw Error(ErrorKind::alphabet_mismatch, "'" + std::string(name.str()) + "' is a reserved variable name");
}

} // namespace

void RankedAlphabet::add(Name name, unsigned rank)
{
    check_name(name);
    auto [it, inserted] = ranks_.emplace(name, rank);
    if (!inserted && it->second != rank)
        throw Error(ErrorKind::alphabet_mismatch, "symbol '" + std::string(name.str()) + "' declared with ranks "
                                                      + std::to_string(it->second) + " and " + std::to_string(rank));
}

unsigned RankedAlphabet::rank(Name name) const
{
    auto it = ranks_.find(name);
    if (it == ranks_.end())
        throw Error(ErrorKind::alphabet_mismatch, "unknown symbol '" + std::string(name.str()) + "'");
    return it->second;
}

std::vector<Name> RankedAlphabet::symbols_of_rank(unsigned rank) const
{
    std::vector<Name> out;
    for (auto [name, r] : ranks_)
        if (r == rank)
            out.push_back(name);
    return out;
}

unsigned RankedAlphabet::max_rank() const noexcept
{
    unsigned m = 0;
    for (auto [name, r] : ranks_)
        m = std::max(m, r);
    return m;
}

RankedAlphabet RankedAlphabet::merged(const RankedAlphabet& other) const
{
    RankedAlphabet out = *this;
    for (auto [name, r] : other.ranks_)
        out.add(name, r);
    return out;
}

RankedAlphabet RankedAlphabet::parse(std::string_view text)
{
    RankedAlphabet out;
    for (auto item : split_ws(text)) {
        auto slash = item.rfind('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 == item.size())
            throw Error(ErrorKind::parse_error, "expected name/rank, got '" + std::string(item) + "'");
        unsigned rank = 0;
        for (char c : item.substr(slash + 1)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error(ErrorKind::parse_error, "bad rank in '" + std::string(item) + "'");
            rank = rank * 10 + static_cast<unsigned>(c - '0');
        }
        out.add(Name(item.substr(0, slash)), rank);
    }
    return out;
}

std::string RankedAlphabet::str() const
{
    std::ostringstream os;
    bool first = true;
    for (auto [name, r] : ranks_) {
        os << (first ? "" : " ") << name << '/' << r;
        first = false;
    }
    return os.str();
}

LeafAlphabet::LeafAlphabet(std::initializer_list<Name> names)
{
    for (Name n : names)
        add(n);
}

void LeafAlphabet::add(Name name)
{
    check_name(name);
    names_.insert(name);
}

LeafAlphabet LeafAlphabet::merged(const LeafAlphabet& other) const
{
    LeafAlphabet out = *this;
    for (Name n : other.names_)
        out.names_.insert(n);
    return out;
}

LeafAlphabet LeafAlphabet::parse(std::string_view text)
{
    LeafAlphabet out;
    for (auto item : split_ws(text))
        out.add(Name(item));
    return out;
}

std::string LeafAlphabet::str() const
{
    std::ostringstream os;
    bool first = true;
    for (Name n : names_) {
        os << (first ? "" : " ") << n;
        first = false;
    }
    return os.str();
}

Signature Signature::parse(std::string_view ranked_text, std::string_view leaf_text)
{
    Signature sig{RankedAlphabet::parse(ranked_text), LeafAlphabet::parse(leaf_text)};
    sig.validate();
    return sig;
}

void Signature::validate() const
{
    for (Name v : leaves.names())
        if (ranked.contains(v))
            throw Error(ErrorKind::alphabet_mismatch,
                        "'" + std::string(v.str()) + "' is both a ranked symbol and a leaf symbol");
}

void Signature::check(const Tree& t) const
{
    switch (t.kind()) {
    case NodeKind::variable:
        return;
    case NodeKind::leaf:
        if (!leaves.contains(t.name()))
            throw Error(ErrorKind::alphabet_mismatch, "leaf '" + std::string(t.name().str()) + "' not in leaf alphabet");
        return;
    case NodeKind::symbol:
        if (!ranked.contains(t.name()))
            throw Error(ErrorKind::alphabet_mismatch, "symbol '" + std::string(t.name().str()) + "' not in ranked alphabet");
        if (ranked.rank(t.name()) != t.rank())
            throw Error(ErrorKind::alphabet_mismatch, "symbol '" + std::string(t.name().str()) + "' applied to "
                                                          + std::to_string(t.rank()) + " children");
        for (const Tree& c : t.children())
            check(c);
    }
}

bool Signature::admits(const Tree& t) const noexcept
{
    switch (t.kind()) {
    case NodeKind::variable: return true;
    case NodeKind::leaf: return leaves.contains(t.name());
    case NodeKind::symbol: {
        auto it = ranked.symbols().find(t.name());
        if (it == ranked.symbols().end() || it->second != t.rank())
            return false;
        for (const Tree& c : t.children())
            if (!admits(c))
                return false;
        return true;
    }
    }
    return false;
}

Signature Signature::merged(const Signature& other) const
{
    Signature out{ranked.merged(other.ranked), leaves.merged(other.leaves)};
    out.validate();
    return out;
}

} // namespace bimorph
