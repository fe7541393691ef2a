#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bimorph/bimorphism.hpp"
#include "bimorph/cfg.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/hom.hpp"
#include "bimorph/transducer.hpp"

namespace bimorph {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// Automaton file:
///   ranked: f/2 g/1 e/0     (optional, otherwise inferred from the rules)
///   leaves: v1 v2           (optional)
///   states: q p
///   final: q
///   q -> f(p,p)
/// `hint` supplies symbols and leaves not declared in the file.
Fta parse_fta(std::string_view text, const Signature& hint = {});
std::string format_fta(const Fta& a);
/// State names as written by format_fta: the label when it is a plain
/// name, "q<i>" otherwise.
std::vector<std::string> file_state_names(const Fta& a);

/// Homomorphism file:
///   source-leaves: z        (optional, inferred from `z |-> ...` lines)
///   target-leaves: v1 v2    (optional)
///   target-ranked: f/2      (optional, inferred from the images)
///   z |-> v1
///   e/0 |-> f(v1,v2)
TreeHom parse_hom(std::string_view text);
std::string format_hom(const TreeHom& h);

/// Bimorphism file: `phi: a.hom`, `center: c.fta`, `psi: b.hom`, paths
/// relative to the file.
Bimorphism load_bimorphism(const std::filesystem::path& path);
/// Writes <dir>/<stem>.bim with .phi.hom, .center.fta and .psi.hom beside it.
void save_bimorphism(const Bimorphism& b, const std::filesystem::path& dir, const std::string& stem);
std::string format_bimorphism(const Bimorphism& b);

/// Transducer file:
///   input-leaves: v1 v2     (input-ranked:, output-ranked: optional)
///   output-leaves: y
///   states: q p
///   final: q
///   q(f(x1,x2)) -> g(p(x1), e) [lookahead: f(x1,v2) | x1]
///   q(a(x1)) -> p(x1) [lookahead: @la.fta s1 s2]
/// Regular look-ahead names an automaton file and its accepting states.
Transducer load_transducer(const std::filesystem::path& path);
Transducer parse_transducer(std::string_view text, const std::filesystem::path& base_dir = ".");
/// Writes <dir>/<stem>.td plus one automaton file per regular look-ahead.
void save_transducer(const Transducer& m, const std::filesystem::path& dir, const std::string& stem);
/// Text form; regular look-ahead is referenced as <stem>.la<i>.fta.
std::string format_transducer(const Transducer& m, const std::string& stem = "td");

Cfg load_cfg(const std::filesystem::path& path);

} // namespace bimorph
