#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vldl {

using Symbol = std::uint32_t;
using Position = std::uint64_t;
/// State index of any automaton or system.
using State = std::uint32_t;

enum class SymbolKind : std::uint8_t { Call, Return, Local };

const char* kind_name(SymbolKind kind);

/// Finite alphabet partitioned into calls, returns and locals. Every symbol
/// carries a (possibly empty) set of proposition names.
class PushdownAlphabet {
public:
  struct SymbolInfo {
    std::string name;
    SymbolKind kind;
    std::vector<std::string> props;
  };

  explicit PushdownAlphabet(std::vector<SymbolInfo> symbols);

  /// Parses `calls: c; returns: r; locals: l; props c = {p, q};`.
  static PushdownAlphabet parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  SymbolKind kind(Symbol a) const { return symbols_.at(a).kind; }
  bool is_call(Symbol a) const { return kind(a) == SymbolKind::Call; }
  bool is_return(Symbol a) const { return kind(a) == SymbolKind::Return; }
  bool is_local(Symbol a) const { return kind(a) == SymbolKind::Local; }
  const std::string& name(Symbol a) const { return symbols_.at(a).name; }
  const std::vector<std::string>& props(Symbol a) const {
    return symbols_.at(a).props;
  }
  bool has_prop(Symbol a, std::string_view prop) const;

  std::optional<Symbol> find(std::string_view name) const;
  /// Like find, but raises InputError for unknown names.
  Symbol symbol(std::string_view name) const;

  /// All proposition names used by some symbol, sorted.
  const std::vector<std::string>& propositions() const { return all_props_; }
  bool knows_prop(std::string_view prop) const;

  std::vector<Symbol> of_kind(SymbolKind kind) const;

  /// Text in the format accepted by parse.
  std::string to_string() const;

  bool operator==(const PushdownAlphabet& other) const;

private:
  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, Symbol> index_;
  std::vector<std::string> all_props_;
};

using AlphabetRef = std::shared_ptr<const PushdownAlphabet>;

/// The three-letter alphabet {c}, {r}, {l} without propositions.
AlphabetRef default_alphabet();

using FiniteWord = std::vector<Symbol>;

/// Ultimately periodic word u v v v ...; stored in canonical form
/// (primitive period, shortest prefix).
class LassoWord {
public:
  LassoWord(FiniteWord prefix, FiniteWord period);

  const FiniteWord& prefix() const { return prefix_; }
  const FiniteWord& period() const { return period_; }

  Symbol at(Position i) const;
  /// i for i < |u|, otherwise |u| + (i - |u|) mod |v|.
  Position position_class(Position i) const;
  std::size_t class_count() const { return prefix_.size() + period_.size(); }

  bool operator==(const LassoWord& other) const = default;

private:
  FiniteWord prefix_;
  FiniteWord period_;
};

int stack_delta(const PushdownAlphabet& sigma, Symbol a);

std::size_t stack_height(const PushdownAlphabet& sigma,
                         std::span<const Symbol> w);

bool is_well_matched(const PushdownAlphabet& sigma, std::span<const Symbol> w);

/// Matching return of the call at k inside a finite word.
std::optional<std::size_t> matching_return(const PushdownAlphabet& sigma,
                                           std::span<const Symbol> w,
                                           std::size_t k);

/// Matching return of the call at k in a lasso, computed exactly from the
/// per-period drift of the stack height.
std::optional<Position> matching_return(const PushdownAlphabet& sigma,
                                        const LassoWord& alpha, Position k);

/// Cardinal positions below horizon, obtained by walking the cardinal
/// branch: a matched call continues at its matching return, every other
/// position continues at its successor.
std::vector<Position> cardinal_positions(const PushdownAlphabet& sigma,
                                         const LassoWord& alpha,
                                         Position horizon);

/// Steps below horizon: k such that the height before k is at most the
/// height after every later prefix.
std::vector<Position> steps(const PushdownAlphabet& sigma,
                            const LassoWord& alpha, Position horizon);

/// Space separated symbol names; the empty string and "eps" give ε.
FiniteWord parse_word(const PushdownAlphabet& sigma, std::string_view text);
/// `u (v)^w`, `u (v)^ω` or just `(v)^w`.
LassoWord parse_lasso(const PushdownAlphabet& sigma, std::string_view text);
/// True when text contains a period marker.
bool looks_like_lasso(std::string_view text);

std::string format_word(const PushdownAlphabet& sigma,
                        std::span<const Symbol> w);
std::string format_lasso(const PushdownAlphabet& sigma, const LassoWord& alpha);

} // namespace vldl
