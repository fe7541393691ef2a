#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bimorph/alphabet.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

/// Term syntax: `name(child,...,child)`, nullary nodes as bare `name`,
/// whitespace insignificant. A name is any run of characters other than
/// whitespace, parentheses, commas and `|`; a name starting with `<`
/// extends to the matching `>` and may contain anything in between.
/// `x1`, `x2`, ... denote variables.

/// Parses against a signature: bare names in `sig.leaves` become leaves,
/// everything else must be a ranked symbol of the right rank.
Tree parse_tree(std::string_view text, const Signature& sig);

/// Parses without a ranked alphabet: bare names in `leaves` become leaves,
/// other bare names nullary symbols.
Tree parse_term(std::string_view text, const LeafAlphabet& leaves = {});

/// Length of the name starting at text[pos], 0 if none starts there.
std::size_t scan_name(std::string_view text, std::size_t pos);

/// Splits at top-level occurrences of `sep` (outside parentheses and
/// angle-bracket names), trimming whitespace around each piece.
std::vector<std::string_view> split_top_level(std::string_view text, char sep);

std::string_view trim(std::string_view text);

} // namespace bimorph
