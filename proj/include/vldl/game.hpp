#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vldl {

enum class Player : std::uint8_t { Automaton, Pathfinder };

/// Two-player game graph; the Automaton player wins a play iff it visits
/// accepting vertices infinitely often.
class BuchiGame {
public:
  using Vertex = std::uint32_t;

  Vertex add_vertex(Player owner, bool accepting);
  void add_edge(Vertex from, Vertex to);

  std::size_t size() const { return owner_.size(); }
  Player owner(Vertex v) const { return owner_[v]; }
  bool accepting(Vertex v) const { return accepting_[v]; }
  const std::vector<Vertex>& successors(Vertex v) const { return succ_[v]; }
  std::size_t edge_count() const;

  std::string to_dot() const;

private:
  std::vector<Player> owner_;
  std::vector<bool> accepting_;
  std::vector<std::vector<Vertex>> succ_;
};

struct GameSolution {
  /// winning[v] is true iff the Automaton player wins from v.
  std::vector<bool> winning;
  /// For winning Automaton vertices, the index into successors(v) of a
  /// memoryless winning move; -1 elsewhere.
  std::vector<std::int32_t> strategy;
};

/// Classical repeated-attractor algorithm.  A vertex without successors is
/// lost by its owner.
GameSolution solve_buchi_game(const BuchiGame& game);

} // namespace vldl
