#pragma once

#include "vldl/aja.hpp"
#include "vldl/formula.hpp"
#include "vldl/vps.hpp"

#include <memory>
#include <vector>

namespace vldl {

struct CompileOptions {
  /// Create every simulation, verifier and waiting state up front instead of
  /// only the ones reachable from the initial state.
  bool eager = false;
};

/// 1-AJA accepting exactly the models of f.  f is brought into negation
/// normal form first; every automaton of f must be over sigma.
OneAja compile(const Formula& f, const AlphabetRef& sigma,
               const CompileOptions& options = {});

/// Automaton for [A] f' from inner = compile(f') and, per state of A, the
/// automaton of the negated test (nullptr for states without a test).
OneAja compile_box(const Tvpa& a, const OneAja& inner,
                   const std::vector<std::shared_ptr<const OneAja>>& negated_tests,
                   const CompileOptions& options = {});

/// Automaton for <A> f' from inner = compile(f') and, per state of A, the
/// automaton of the test itself (nullptr for states without a test).
OneAja compile_diamond(const Tvpa& a, const OneAja& inner,
                       const std::vector<std::shared_ptr<const OneAja>>& tests,
                       const CompileOptions& options = {});

/// Number of simulation, verifier and waiting states of the full modal
/// construction: 2(2|Q| + |Q|^2 |Gamma|).
std::size_t modal_state_bound(const Tvpa& a);

} // namespace vldl
