#pragma once

#include "vldl/alphabet.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vldl {

class Tvpa;
using TvpaRef = std::shared_ptr<const Tvpa>;

enum class FormulaKind : std::uint8_t {
  Atom,
  NegAtom,
  Not,
  And,
  Or,
  Diamond,
  Box
};

using FormulaId = std::uint64_t;

struct FormulaNode;
/// Formulas are hash-consed: structurally equal formulas are the same node,
/// so pointer (or id) equality is structural equality.
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  FormulaId id;
  std::string prop;   // Atom, NegAtom
  Formula left;       // operand of Not, Diamond, Box; left of And, Or
  Formula right;      // right of And, Or
  TvpaRef automaton;  // Diamond, Box
};

/// Proposition used to desugar true/false; no symbol carries it.
inline constexpr std::string_view reserved_prop = "$tt";

Formula atom(std::string_view prop);
Formula neg_atom(std::string_view prop);
Formula negate(const Formula& f);
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula diamond(const TvpaRef& a, const Formula& f);
Formula box(const TvpaRef& a, const Formula& f);
Formula formula_true();
Formula formula_false();

/// Resolves automaton names; returns nullptr for unknown names.
using TvpaLibrary = std::function<TvpaRef(std::string_view)>;

/// Grammar: `!` binds tightest, then `&`, then `|`; `<A> f` and `[A] f`
/// are prefix operators; `true`, `false` and parentheses are available.
Formula parse_formula(std::string_view text, const PushdownAlphabet& sigma,
                      const TvpaLibrary& library);

/// Negation normal form; negation only in front of atoms.  Box and diamond
/// are swapped by the duality, automata are left untouched.
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

/// All subformulas, including tests of automata and their subformulas,
/// ordered by id.
std::vector<Formula> closure(const Formula& f);

/// |cl(f)| plus the state counts of the automata of the modal
/// subformulas in cl(f).
std::size_t formula_size(const Formula& f);

/// Depth of nesting of automaton tests (0 when no automaton has a test).
std::size_t test_nesting(const Formula& f);

std::string to_string(const Formula& f);

} // namespace vldl
