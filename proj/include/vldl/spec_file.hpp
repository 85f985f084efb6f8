#pragma once

#include "vldl/alphabet.hpp"
#include "vldl/formula.hpp"
#include "vldl/vps.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace vldl {

/// Contents of a specification file:
///
///     alphabet { calls: c; returns: r; locals: l; props l = {p}; }
///     automaton A { states: q0 q1; initial: q0; final: q1; q0 -l-> q1; }
///     system { states: s; initial: s; s -l-> s; }
///     formula <A> p;
///
/// Every part is optional and `#` starts a comment.
struct SpecFile {
  AlphabetRef alphabet;
  /// True when the alphabet came from the file itself.
  bool declares_alphabet = false;
  std::map<std::string, TvpaRef> automata;
  std::optional<Vps> system;
  Formula formula;
};

/// Parses a specification.  Without an alphabet block the given alphabet
/// is used (the default c/r/l alphabet when it is null); with both, they
/// must be equal.  Raises InputError with line and column information.
SpecFile parse_spec(std::string_view text, const AlphabetRef& alphabet = nullptr);

/// Reads and parses a file; unreadable files raise InputError.
SpecFile load_spec(const std::string& path, const AlphabetRef& alphabet = nullptr);

/// Reads an alphabet file in the alphabet text format.
AlphabetRef load_alphabet(const std::string& path);

std::string read_file(const std::string& path);

} // namespace vldl
