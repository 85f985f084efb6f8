#include "vldl/game.hpp"

#include <deque>
#include <sstream>

namespace vldl {

BuchiGame::Vertex BuchiGame::add_vertex(Player owner, bool accepting) {
  owner_.push_back(owner);
  accepting_.push_back(accepting);
  succ_.emplace_back();
  return static_cast<Vertex>(owner_.size() - 1);
}

void BuchiGame::add_edge(Vertex from, Vertex to) { succ_[from].push_back(to); }

std::size_t BuchiGame::edge_count() const {
  std::size_t m = 0;
  for (const auto& s : succ_)
    m += s.size();
  return m;
}

std::string BuchiGame::to_dot() const {
  std::ostringstream out;
  out << "digraph game {\n";
  for (Vertex v = 0; v < size(); ++v) {
    out << "  v" << v << " [shape="
        << (owner_[v] == Player::Automaton ? "circle" : "box")
        << (accepting_[v] ? ", peripheries=2" : "") << "];\n";
    for (Vertex w : succ_[v])
      out << "  v" << v << " -> v" << w << ";\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

using Vertex = BuchiGame::Vertex;

struct Arena {
  std::vector<std::vector<Vertex>> succ;
  std::vector<std::vector<Vertex>> pred;
  std::vector<Player> owner;
  std::vector<bool> accepting;
};

// Vertices of `active` from which `player` forces a visit to `target`
// (within active).  `choice` receives attractor moves of the player.
std::vector<bool> attractor(const Arena& g, const std::vector<bool>& active,
                            const std::vector<bool>& target, Player player,
                            std::vector<std::int32_t>* choice) {
  const std::size_t n = g.succ.size();
  std::vector<bool> in(n, false);
  std::vector<std::uint32_t> remaining(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (!active[v])
      continue;
    for (Vertex w : g.succ[v])
      if (active[w])
        ++remaining[v];
    if (target[v]) {
      in[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex w = queue.front();
    queue.pop_front();
    for (Vertex v : g.pred[w]) {
      if (!active[v] || in[v])
        continue;
      if (g.owner[v] == player) {
        in[v] = true;
        if (choice) {
          const auto& s = g.succ[v];
          for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == w) {
              (*choice)[v] = static_cast<std::int32_t>(i);
              break;
            }
        }
        queue.push_back(v);
      } else if (--remaining[v] == 0) {
        in[v] = true;
        queue.push_back(v);
      }
    }
  }
  return in;
}

} // namespace

GameSolution solve_buchi_game(const BuchiGame& game) {
  const std::size_t n = game.size();
  // Dead ends move to a sink that is lost by their owner.
  Arena g;
  g.succ.resize(n + 2);
  g.pred.resize(n + 2);
  g.owner.resize(n + 2, Player::Automaton);
  g.accepting.resize(n + 2, false);
  const Vertex lose = static_cast<Vertex>(n);
  const Vertex win = static_cast<Vertex>(n + 1);
  g.accepting[win] = true;
  g.succ[lose] = {lose};
  g.succ[win] = {win};
  for (Vertex v = 0; v < n; ++v) {
    g.owner[v] = game.owner(v);
    g.accepting[v] = game.accepting(v);
    g.succ[v] = game.successors(v);
    if (g.succ[v].empty())
      g.succ[v] = {game.owner(v) == Player::Automaton ? lose : win};
  }
  for (Vertex v = 0; v < n + 2; ++v)
    for (Vertex w : g.succ[v])
      g.pred[w].push_back(v);

  std::vector<bool> active(n + 2, true);
  std::vector<std::int32_t> choice(n + 2, -1);
  while (true) {
    std::vector<bool> target(n + 2, false);
    for (Vertex v = 0; v < n + 2; ++v)
      target[v] = active[v] && g.accepting[v];
    std::fill(choice.begin(), choice.end(), -1);
    auto reach = attractor(g, active, target, Player::Automaton, &choice);
    std::vector<bool> trap(n + 2, false);
    bool any = false;
    for (Vertex v = 0; v < n + 2; ++v)
      if (active[v] && !reach[v]) {
        trap[v] = true;
        any = true;
      }
    if (!any)
      break;
    auto lost = attractor(g, active, trap, Player::Pathfinder, nullptr);
    for (Vertex v = 0; v < n + 2; ++v)
      if (lost[v])
        active[v] = false;
  }

  GameSolution out;
  out.winning.assign(active.begin(), active.begin() + n);
  out.strategy.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (!active[v] || game.owner(v) != Player::Automaton ||
        game.successors(v).empty())
      continue;
    if (choice[v] >= 0 && !g.accepting[v]) {
      out.strategy[v] = choice[v];
      continue;
    }
    const auto& s = game.successors(v);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (active[s[i]]) {
        out.strategy[v] = static_cast<std::int32_t>(i);
        break;
      }
  }
  return out;
}

} // namespace vldl
