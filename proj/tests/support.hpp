#pragma once

// Brute-force references shared by the unit tests and the acceptance
// binary.

#include "vldl/game.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace vldl::testing {

/// Vertices of `owner` with more than one successor.
inline std::vector<BuchiGame::Vertex> choice_vertices(const BuchiGame& g,
                                                      Player owner) {
  std::vector<BuchiGame::Vertex> out;
  for (BuchiGame::Vertex v = 0; v < g.size(); ++v)
    if (g.owner(v) == owner && g.successors(v).size() > 1)
      out.push_back(v);
  return out;
}

/// Calls visit(choice) for every memoryless strategy of `owner`, where
/// choice[v] is the index of the chosen successor (0 for other vertices).
inline void for_each_strategy(
    const BuchiGame& g, Player owner,
    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  auto relevant = choice_vertices(g, owner);
  std::vector<std::size_t> choice(g.size(), 0);
  while (true) {
    visit(choice);
    std::size_t k = 0;
    for (; k < relevant.size(); ++k) {
      auto v = relevant[k];
      if (++choice[v] < g.successors(v).size())
        break;
      choice[v] = 0;
    }
    if (k == relevant.size())
      return;
  }
}

/// Edges left after fixing the strategy of `owner`.
inline std::vector<std::vector<BuchiGame::Vertex>> restrict_edges(
    const BuchiGame& g, Player owner, const std::vector<std::size_t>& choice) {
  std::vector<std::vector<BuchiGame::Vertex>> succ(g.size());
  for (BuchiGame::Vertex v = 0; v < g.size(); ++v) {
    const auto& s = g.successors(v);
    if (g.owner(v) == owner && !s.empty())
      succ[v] = {s[choice[v]]};
    else
      succ[v] = s;
  }
  return succ;
}

/// Vertices that can reach `targets` along `succ`.
inline std::vector<bool> can_reach(
    const std::vector<std::vector<BuchiGame::Vertex>>& succ,
    std::vector<bool> targets) {
  std::vector<std::vector<BuchiGame::Vertex>> pred(succ.size());
  for (std::size_t v = 0; v < succ.size(); ++v)
    for (auto w : succ[v])
      pred[w].push_back(static_cast<BuchiGame::Vertex>(v));
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < succ.size(); ++v)
    if (targets[v])
      stack.push_back(v);
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : pred[v])
      if (!targets[u]) {
        targets[u] = true;
        stack.push_back(u);
      }
  }
  return targets;
}

/// Vertices on a cycle that stays inside `allowed`.
inline std::vector<bool> on_cycle_within(
    const std::vector<std::vector<BuchiGame::Vertex>>& succ,
    const std::vector<bool>& allowed) {
  const std::size_t n = succ.size();
  std::vector<bool> out(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (!allowed[s])
      continue;
    // s lies on such a cycle iff s is reachable from one of its successors
    // inside `allowed`.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack;
    for (auto w : succ[s])
      if (allowed[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    while (!stack.empty() && !seen[s]) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : succ[v])
        if (allowed[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    out[s] = seen[s];
  }
  return out;
}

/// Winning region of the Automaton player, by enumerating its memoryless
/// strategies.  With the strategy fixed, the Pathfinder wins from v iff it
/// can reach an Automaton dead end or a cycle of non-accepting vertices.
inline std::vector<bool> brute_force_automaton(const BuchiGame& g) {
  const std::size_t n = g.size();
  std::vector<bool> win(n, false);
  for_each_strategy(g, Player::Automaton, [&](const auto& choice) {
    auto succ = restrict_edges(g, Player::Automaton, choice);
    std::vector<bool> non_accepting(n), bad(n);
    for (std::size_t v = 0; v < n; ++v) {
      non_accepting[v] = !g.accepting(static_cast<BuchiGame::Vertex>(v));
      bad[v] = g.owner(static_cast<BuchiGame::Vertex>(v)) == Player::Automaton &&
               succ[v].empty();
    }
    auto cycles = on_cycle_within(succ, non_accepting);
    for (std::size_t v = 0; v < n; ++v)
      bad[v] = bad[v] || cycles[v];
    auto lose = can_reach(succ, bad);
    for (std::size_t v = 0; v < n; ++v)
      if (!lose[v])
        win[v] = true;
  });
  return win;
}

/// Winning region of the Pathfinder, by enumerating its memoryless
/// strategies.  With the strategy fixed, the Automaton player wins from v
/// iff it can reach a Pathfinder dead end or an accepting vertex on a
/// cycle.
inline std::vector<bool> brute_force_pathfinder(const BuchiGame& g) {
  const std::size_t n = g.size();
  std::vector<bool> win(n, false);
  for_each_strategy(g, Player::Pathfinder, [&](const auto& choice) {
    auto succ = restrict_edges(g, Player::Pathfinder, choice);
    std::vector<bool> all(n, true), good(n);
    auto cycles = on_cycle_within(succ, all);
    for (std::size_t v = 0; v < n; ++v) {
      auto u = static_cast<BuchiGame::Vertex>(v);
      good[v] = (g.owner(u) == Player::Pathfinder && succ[v].empty()) ||
                (g.accepting(u) && cycles[v]);
    }
    auto reach_good = can_reach(succ, good);
    for (std::size_t v = 0; v < n; ++v)
      if (!reach_good[v])
        win[v] = true;
  });
  return win;
}

} // namespace vldl::testing
