#pragma once

#include "vldl/alphabet.hpp"
#include "vldl/formula.hpp"
#include "vldl/vps.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vldl {

struct OracleOptions {
  /// Deeper nesting of automaton tests raises UnsupportedError.
  std::size_t max_test_nesting = 2;
  /// Cap on explored run configurations per modal evaluation.
  std::size_t max_configurations = 1000000;
};

/// Direct evaluation of formulas on a lasso whose period can be rotated
/// into a well-matched word.  Truth values are memoized per formula and
/// position class.
class Oracle {
public:
  /// Raises UnsupportedError when no rotation of the period is
  /// well-matched.
  Oracle(AlphabetRef sigma, const LassoWord& alpha,
         const OracleOptions& options = {});

  /// (alpha, i) satisfies f.
  bool eval(const Formula& f, Position i = 0);

  /// Position classes k' with (i, k') in R_A; tests are checked at every
  /// run position including the last one.
  const std::set<Position>& reach(const Tvpa& a, Position i);

  /// Prefix length and period of the rotated representation.
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period_length() const { return period_.size(); }

private:
  Symbol at(Position i) const;
  Position position_class(Position i) const;

  AlphabetRef sigma_;
  OracleOptions options_;
  FiniteWord prefix_;
  FiniteWord period_;
  std::map<std::pair<FormulaId, Position>, bool> memo_;
  std::map<std::pair<const Tvpa*, Position>, std::set<Position>> reach_;
};

/// (alpha, 0) satisfies f.
bool eval_lasso(const Formula& f, const AlphabetRef& sigma,
                const LassoWord& alpha, const OracleOptions& options = {});

/// True when some rotation of the period of alpha is well-matched.
bool oracle_supports(const PushdownAlphabet& sigma, const LassoWord& alpha);

struct Disagreement {
  std::string formula;
  std::string lasso;
  bool oracle = false;
  bool word_automaton = false;
  bool tree_automaton = false;
};

struct CrossCheckReport {
  std::size_t pairs = 0;
  std::vector<Disagreement> disagreements;
};

/// For every pair compares the oracle, acceptance of compile(f) on the word
/// and membership of the stack tree in the tree automaton of compile(f).
/// Each disagreement is reported for the smallest subformula that still
/// disagrees on that lasso.
CrossCheckReport cross_check(const std::vector<Formula>& formulas,
                             const std::vector<LassoWord>& lassos,
                             const AlphabetRef& sigma,
                             const OracleOptions& options = {});

} // namespace vldl
