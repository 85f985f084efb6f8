#include "vldl/tree_automaton.hpp"

#include "vldl/error.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace vldl {

namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* value = std::getenv(name);
  if (!value || !*value)
    return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(value));
  } catch (const std::exception&) {
    throw InputError(std::string("invalid value for ") + name);
  }
}

} // namespace

Limits Limits::from_env() {
  Limits l;
  l.max_states = env_or("VLDL_MAX_STATES", l.max_states);
  l.max_game_vertices = env_or("VLDL_MAX_GAME_VERTICES", l.max_game_vertices);
  return l;
}

void throw_state_cap(const std::string& stage, std::size_t cap) {
  throw ResourceError(stage, "more than " + std::to_string(cap) +
                                 " states (raise VLDL_MAX_STATES)");
}

State BuchiTreeAutomaton::add_state(bool accepting, std::string name) {
  accepting_.push_back(accepting);
  trans_.emplace_back();
  names_.push_back(std::move(name));
  return static_cast<State>(accepting_.size() - 1);
}

void BuchiTreeAutomaton::add_transition(State from, TreeLabel label,
                                        State left, State right) {
  trans_.at(from).push_back({label, left, right});
}

std::size_t BuchiTreeAutomaton::transition_count() const {
  std::size_t m = 0;
  for (const auto& t : trans_)
    m += t.size();
  return m;
}

std::string BuchiTreeAutomaton::to_dot() const {
  std::ostringstream out;
  out << "digraph tree_automaton {\n  init [shape=point];\n  init -> q"
      << initial_ << ";\n";
  for (State q = 0; q < size(); ++q) {
    out << "  q" << q << " [label=\""
        << (names_[q].empty() ? std::to_string(q) : names_[q]) << "\""
        << (accepting_[q] ? ", peripheries=2" : "") << "];\n";
    for (std::size_t i = 0; i < trans_[q].size(); ++i) {
      const auto& t = trans_[q][i];
      std::string tn = "t" + std::to_string(q) + "_" + std::to_string(i);
      out << "  " << tn << " [shape=box, label=\""
          << label_name(*sigma_, t.label) << "\"];\n"
          << "  q" << q << " -> " << tn << ";\n"
          << "  " << tn << " -> q" << t.left << " [label=0];\n"
          << "  " << tn << " -> q" << t.right << " [label=1];\n";
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

struct ProductKey {
  State q1, q2;
  bool flag;
  bool operator==(const ProductKey&) const = default;
};

struct ProductHash {
  std::size_t operator()(const ProductKey& k) const {
    return (static_cast<std::size_t>(k.q1) * 0x9e3779b97f4a7c15ULL) ^
           (static_cast<std::size_t>(k.q2) << 1) ^ k.flag;
  }
};

} // namespace

BuchiTreeAutomaton materialize(TreeAutomatonSource& source,
                               const Limits& limits) {
  BuchiTreeAutomaton out(source.alphabet());
  LazyStateSpace<State> space(out, "materialize", limits.max_states);
  out.set_initial(space.get(source.initial(), source.accepting(source.initial())));
  State q;
  while (space.next(q)) {
    const std::vector<TreeTransition> ts = source.transitions(space.key(q));
    for (const auto& t : ts)
      out.add_transition(q, t.label,
                         space.get(t.left, source.accepting(t.left)),
                         space.get(t.right, source.accepting(t.right)));
  }
  for (State s = 0; s < out.size(); ++s)
    out.set_name(s, source.name(space.key(s)));
  return out;
}

BuchiTreeAutomaton intersect(TreeAutomatonSource& t1, TreeAutomatonSource& t2,
                             const Limits& limits) {
  if (!(*t1.alphabet() == *t2.alphabet()))
    throw InputError("intersect: automata over different alphabets");
  BuchiTreeAutomaton out(t1.alphabet());
  LazyStateSpace<ProductKey, ProductHash> space(out, "intersection",
                                                limits.max_states);
  auto state = [&](State q1, State q2, bool flag) {
    return space.get({q1, q2, flag}, !flag && t1.accepting(q1));
  };
  out.set_initial(state(t1.initial(), t2.initial(), false));
  State q;
  while (space.next(q)) {
    const ProductKey k = space.key(q);
    bool flag = k.flag;
    if (!flag && t1.accepting(k.q1))
      flag = true;
    else if (flag && t2.accepting(k.q2))
      flag = false;
    // Copies: asking a lazy source for transitions may grow it.
    const std::vector<TreeTransition> first = t1.transitions(k.q1);
    const std::vector<TreeTransition> second = t2.transitions(k.q2);
    std::multimap<TreeLabel, const TreeTransition*> by_label;
    for (const auto& b : second)
      by_label.emplace(b.label, &b);
    for (const auto& a : first) {
      auto [lo, hi] = by_label.equal_range(a.label);
      for (auto it = lo; it != hi; ++it) {
        const auto& b = *it->second;
        State left = state(a.left, b.left, flag);
        State right = state(a.right, b.right, flag);
        out.add_transition(q, a.label, left, right);
      }
    }
  }
  // Names are only useful for small products that get printed.
  if (out.size() <= 10000) {
    for (State s = 0; s < out.size(); ++s) {
      const auto& k = space.key(s);
      std::string n1 = t1.name(k.q1).empty() ? std::to_string(k.q1)
                                             : t1.name(k.q1);
      std::string n2 = t2.name(k.q2).empty() ? std::to_string(k.q2)
                                             : t2.name(k.q2);
      out.set_name(s, "<" + n1 + ", " + n2 + ", " + (k.flag ? "1" : "0") + ">");
    }
  }
  return out;
}

BuchiTreeAutomaton intersect(const BuchiTreeAutomaton& t1,
                             const BuchiTreeAutomaton& t2,
                             const Limits& limits) {
  ExplicitSource s1(t1), s2(t2);
  return intersect(s1, s2, limits);
}

BuchiGame emptiness_game(const BuchiTreeAutomaton& t, const Limits& limits) {
  const std::size_t vertices = t.size() + t.transition_count();
  if (vertices > limits.max_game_vertices)
    throw ResourceError("emptiness game",
                        std::to_string(vertices) + " vertices exceed the cap "
                        "of " + std::to_string(limits.max_game_vertices) +
                        " (raise VLDL_MAX_GAME_VERTICES)");
  BuchiGame game;
  for (State q = 0; q < t.size(); ++q)
    game.add_vertex(Player::Automaton, t.accepting(q));
  for (State q = 0; q < t.size(); ++q) {
    for (const auto& tr : t.transitions(q)) {
      auto v = game.add_vertex(Player::Pathfinder, false);
      game.add_edge(q, v);
      game.add_edge(v, tr.left);
      game.add_edge(v, tr.right);
    }
  }
  return game;
}

bool is_empty(const BuchiTreeAutomaton& t, const Limits& limits) {
  if (t.size() == 0)
    return true;
  auto solution = solve_buchi_game(emptiness_game(t, limits));
  return !solution.winning[t.initial()];
}

std::optional<RegularTree> witness(const BuchiTreeAutomaton& t,
                                   const Limits& limits) {
  if (t.size() == 0)
    return std::nullopt;
  auto solution = solve_buchi_game(emptiness_game(t, limits));
  if (!solution.winning[t.initial()])
    return std::nullopt;
  std::map<State, std::uint32_t> index;
  std::vector<State> order;
  auto visit = [&](State q) {
    auto [it, fresh] = index.emplace(q, static_cast<std::uint32_t>(order.size()));
    if (fresh)
      order.push_back(q);
    return it->second;
  };
  visit(t.initial());
  std::vector<RegularTree::Node> nodes;
  for (std::size_t i = 0; i < order.size(); ++i) {
    State q = order[i];
    auto choice = solution.strategy[q];
    if (choice < 0)
      throw std::logic_error("witness: winning state without strategy");
    const auto& tr = t.transitions(q)[static_cast<std::size_t>(choice)];
    RegularTree::Node n{tr.label, 0, 0};
    n.left = visit(tr.left);
    n.right = visit(tr.right);
    nodes.push_back(n);
  }
  return RegularTree(std::move(nodes), 0);
}

namespace {

struct MemberKey {
  State q;
  std::uint32_t s;
  bool operator<(const MemberKey& o) const {
    return q != o.q ? q < o.q : s < o.s;
  }
};

} // namespace

bool contains(const BuchiTreeAutomaton& t, const RegularTree& tree,
              const Limits& limits) {
  ExplicitSource source(t);
  return contains(source, tree, limits);
}

bool contains(TreeAutomatonSource& t, const RegularTree& tree,
              const Limits& limits) {
  for (const auto& n : tree.nodes())
    if (!n.label.is_bot() && n.label.symbol() >= t.alphabet()->size())
      throw InputError("tree label outside the automaton's alphabet");
  BuchiGame game;
  std::map<MemberKey, BuchiGame::Vertex> ids;
  std::vector<MemberKey> keys;
  std::map<std::pair<BuchiGame::Vertex, BuchiGame::Vertex>, BuchiGame::Vertex>
      choices;
  auto vertex = [&](State q, std::uint32_t s) {
    auto it = ids.find({q, s});
    if (it != ids.end())
      return it->second;
    if (game.size() >= limits.max_game_vertices)
      throw ResourceError("membership game", "vertex cap exceeded");
    auto v = game.add_vertex(Player::Automaton, t.accepting(q));
    ids.emplace(MemberKey{q, s}, v);
    keys.push_back({q, s});
    return v;
  };
  vertex(t.initial(), tree.root());
  // keys grows while we iterate; Pathfinder vertices are not keyed.
  std::vector<BuchiGame::Vertex> automaton_vertices{0};
  for (std::size_t i = 0; i < automaton_vertices.size(); ++i) {
    auto v = automaton_vertices[i];
    MemberKey k = keys[i];
    const auto& node = tree.node(k.s);
    std::set<std::pair<BuchiGame::Vertex, BuchiGame::Vertex>> moves;
    for (const auto& tr : t.transitions(k.q)) {
      if (tr.label != node.label)
        continue;
      BuchiGame::Vertex w[2];
      int side = 0;
      for (auto [q, s] : {std::pair{tr.left, node.left},
                          std::pair{tr.right, node.right}}) {
        std::size_t before = keys.size();
        w[side] = vertex(q, s);
        if (keys.size() > before)
          automaton_vertices.push_back(w[side]);
        ++side;
      }
      // Transitions leading to the same pair of game vertices give the
      // Pathfinder the same choice.
      if (!moves.insert({w[0], w[1]}).second)
        continue;
      auto [it, fresh] = choices.try_emplace({w[0], w[1]}, 0);
      if (fresh) {
        if (game.size() >= limits.max_game_vertices)
          throw ResourceError("membership game", "vertex cap exceeded");
        it->second = game.add_vertex(Player::Pathfinder, false);
        game.add_edge(it->second, w[0]);
        game.add_edge(it->second, w[1]);
      }
      game.add_edge(v, it->second);
    }
  }
  return solve_buchi_game(game).winning[0];
}

} // namespace vldl
