#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bimorph/name.hpp"

namespace bimorph {

class Tree;

/// Reserved formal variables x1, x2, ... never belong to an alphabet.
bool is_variable_name(std::string_view text) noexcept;

class RankedAlphabet {
public:
    RankedAlphabet() = default;

    /// Adds `name` with `rank`; re-adding with the same rank is a no-op.
    void add(Name name, unsigned rank);
    bool contains(Name name) const noexcept { return ranks_.count(name) != 0; }
    unsigned rank(Name name) const;
    std::vector<Name> symbols_of_rank(unsigned rank) const;
    unsigned max_rank() const noexcept;
    std::size_t size() const noexcept { return ranks_.size(); }
    bool empty() const noexcept { return ranks_.empty(); }

    const std::map<Name, unsigned>& symbols() const noexcept { return ranks_; }

    /// Union; throws alphabet-mismatch if a name carries two ranks.
    RankedAlphabet merged(const RankedAlphabet& other) const;

    /// "f/2 g/1 e/0" (whitespace or newline separated).
    static RankedAlphabet parse(std::string_view text);
    std::string str() const;

    bool operator==(const RankedAlphabet&) const = default;

private:
    std::map<Name, unsigned> ranks_;
};

class LeafAlphabet {
public:
    LeafAlphabet() = default;
    LeafAlphabet(std::initializer_list<Name> names);

    void add(Name name);
    bool contains(Name name) const noexcept { return names_.count(name) != 0; }
    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }
    const std::set<Name>& names() const noexcept { return names_; }

    LeafAlphabet merged(const LeafAlphabet& other) const;

    static LeafAlphabet parse(std::string_view text);
    std::string str() const;

    bool operator==(const LeafAlphabet&) const = default;

private:
    std::set<Name> names_;
};

/// A ranked alphabet paired with the leaf alphabet indexing its trees.
struct Signature {
    RankedAlphabet ranked;
    LeafAlphabet leaves;

    static Signature parse(std::string_view ranked_text, std::string_view leaf_text = {});

    /// Throws alphabet-mismatch if the two parts overlap.
    void validate() const;
    /// Throws alphabet-mismatch if `t` uses a symbol outside the signature
    /// or with the wrong rank. Variables are admitted.
    void check(const Tree& t) const;
    bool admits(const Tree& t) const noexcept;

    Signature merged(const Signature& other) const;

    bool operator==(const Signature&) const = default;
};

} // namespace bimorph
