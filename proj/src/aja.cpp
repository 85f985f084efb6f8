#include "vldl/aja.hpp"

#include "vldl/error.hpp"
#include "vldl/game.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vldl {

PosBool leaf(Command c) {
  return std::make_shared<const PosBoolNode>(
      PosBoolNode{PosBoolNode::Kind::Leaf, c, {}});
}

namespace {

PosBool combine(PosBoolNode::Kind kind, std::vector<PosBool> parts) {
  if (parts.empty())
    throw std::invalid_argument("empty positive Boolean combination");
  if (parts.size() == 1)
    return parts.front();
  // Flatten nested nodes of the same kind.
  std::vector<PosBool> kids;
  for (auto& p : parts) {
    if (p->kind == kind)
      kids.insert(kids.end(), p->kids.begin(), p->kids.end());
    else
      kids.push_back(std::move(p));
  }
  return std::make_shared<const PosBoolNode>(
      PosBoolNode{kind, Command{}, std::move(kids)});
}

} // namespace

PosBool all_of(std::vector<PosBool> parts) {
  return combine(PosBoolNode::Kind::And, std::move(parts));
}

PosBool any_of(std::vector<PosBool> parts) {
  return combine(PosBoolNode::Kind::Or, std::move(parts));
}

PosBool shift(const PosBool& f, State offset) {
  std::unordered_map<const PosBoolNode*, PosBool> done;
  std::function<PosBool(const PosBool&)> go = [&](const PosBool& g) {
    auto it = done.find(g.get());
    if (it != done.end())
      return it->second;
    PosBool out;
    if (g->kind == PosBoolNode::Kind::Leaf) {
      Command c = g->command;
      c.direct += offset;
      c.jump += offset;
      out = leaf(c);
    } else {
      std::vector<PosBool> kids;
      for (const auto& k : g->kids)
        kids.push_back(go(k));
      out = std::make_shared<const PosBoolNode>(
          PosBoolNode{g->kind, Command{}, std::move(kids)});
    }
    done.emplace(g.get(), out);
    return out;
  };
  return go(f);
}

namespace {

using Model = std::vector<Command>;

void minimize(std::vector<Model>& models) {
  std::sort(models.begin(), models.end(),
            [](const Model& a, const Model& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  models.erase(std::unique(models.begin(), models.end()), models.end());
  std::vector<Model> kept;
  for (auto& m : models) {
    bool dominated = false;
    for (const auto& k : kept)
      if (std::includes(m.begin(), m.end(), k.begin(), k.end())) {
        dominated = true;
        break;
      }
    if (!dominated)
      kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end());
  models = std::move(kept);
}

} // namespace

std::vector<std::vector<Command>> minimal_models(const PosBool& f) {
  std::unordered_map<const PosBoolNode*, std::vector<Model>> memo;
  std::function<const std::vector<Model>&(const PosBool&)> go =
      [&](const PosBool& g) -> const std::vector<Model>& {
    auto it = memo.find(g.get());
    if (it != memo.end())
      return it->second;
    std::vector<Model> out;
    switch (g->kind) {
    case PosBoolNode::Kind::Leaf:
      out.push_back({g->command});
      break;
    case PosBoolNode::Kind::Or:
      for (const auto& k : g->kids) {
        const auto& sub = go(k);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      minimize(out);
      break;
    case PosBoolNode::Kind::And:
      out.push_back({});
      for (const auto& k : g->kids) {
        const auto& sub = go(k);
        std::vector<Model> next;
        for (const auto& a : out)
          for (const auto& b : sub) {
            Model m;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                           std::back_inserter(m));
            next.push_back(std::move(m));
          }
        minimize(next);
        out = std::move(next);
      }
      break;
    }
    return memo.emplace(g.get(), std::move(out)).first->second;
  };
  return go(f);
}

OneAja::OneAja(AlphabetRef sigma, std::vector<std::string> names,
               std::vector<PosBool> delta, State initial,
               std::vector<bool> accepting)
    : sigma_(std::move(sigma)), names_(std::move(names)),
      delta_(std::move(delta)), initial_(initial),
      accepting_(std::move(accepting)) {
  const std::size_t n = names_.size();
  if (n == 0 || initial_ >= n)
    throw std::invalid_argument("1-AJA needs an initial state");
  if (delta_.size() != n * sigma_->size() || accepting_.size() != n)
    throw std::invalid_argument("1-AJA tables have the wrong size");
  for (std::size_t i = 0; i < delta_.size(); ++i) {
    if (!delta_[i])
      throw std::invalid_argument("1-AJA transition of state '" +
                                  names_[i / sigma_->size()] +
                                  "' is undefined");
  }
  models_.resize(delta_.size());
}

OneAja::OneAja(const OneAja& other)
    : sigma_(other.sigma_), names_(other.names_), delta_(other.delta_),
      initial_(other.initial_), accepting_(other.accepting_) {
  models_.resize(delta_.size());
}

const std::vector<std::vector<Command>>& OneAja::models(State q,
                                                        Symbol a) const {
  const std::size_t k = q * sigma_->size() + a;
  std::lock_guard lock(models_mutex_);
  if (!models_[k])
    models_[k] = minimal_models(delta_[k]);
  return *models_[k];
}

std::string to_string(const PosBool& f, const OneAja* a) {
  auto name = [&](State q) {
    return a ? a->name(q) : std::to_string(q);
  };
  switch (f->kind) {
  case PosBoolNode::Kind::Leaf: {
    const auto& c = f->command;
    return std::string("(") + (c.dir == Direction::Direct ? "->" : "~>") +
           ", " + name(c.direct) + ", " + name(c.jump) + ")";
  }
  case PosBoolNode::Kind::And:
  case PosBoolNode::Kind::Or: {
    std::string sep =
        f->kind == PosBoolNode::Kind::And ? " & " : " | ";
    std::string out = "(";
    for (std::size_t i = 0; i < f->kids.size(); ++i) {
      if (i)
        out += sep;
      out += to_string(f->kids[i], a);
    }
    return out + ")";
  }
  }
  return "";
}

std::string OneAja::dump() const {
  std::ostringstream out;
  out << "initial: " << names_[initial_] << "\naccepting:";
  for (State q = 0; q < size(); ++q)
    if (accepting_[q])
      out << " " << names_[q];
  out << "\n";
  for (State q = 0; q < size(); ++q)
    for (Symbol a = 0; a < sigma_->size(); ++a)
      out << names_[q] << " --" << sigma_->name(a) << "--> "
          << to_string(delta(q, a), this) << "\n";
  return out.str();
}

State AjaBuilder::add_state(std::string name, bool accepting) {
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  delta_.resize(names_.size() * sigma_->size());
  return static_cast<State>(names_.size() - 1);
}

void AjaBuilder::set(State q, Symbol a, PosBool f) {
  delta_.at(q * sigma_->size() + a) = std::move(f);
}

bool AjaBuilder::is_set(State q, Symbol a) const {
  return delta_.at(q * sigma_->size() + a) != nullptr;
}

State AjaBuilder::embed(const OneAja& a, const std::string& prefix) {
  const State offset = static_cast<State>(names_.size());
  for (State q = 0; q < a.size(); ++q)
    add_state(prefix + a.name(q), a.accepting(q));
  for (State q = 0; q < a.size(); ++q)
    for (Symbol s = 0; s < sigma_->size(); ++s)
      set(offset + q, s, shift(a.delta(q, s), offset));
  return offset;
}

OneAja AjaBuilder::build(State initial) const {
  return OneAja(sigma_, names_, delta_, initial, accepting_);
}

std::pair<Position, State> apply_command(const PushdownAlphabet& sigma,
                                         const LassoWord& alpha, Position i,
                                         const Command& c) {
  if (c.dir == Direction::Jump && sigma.is_call(alpha.at(i))) {
    if (auto j = matching_return(sigma, alpha, i))
      return {*j, c.jump};
  }
  return {i + 1, c.direct};
}

namespace {

OneAja combine_automata(const OneAja& a1, const OneAja& a2, bool conjunction) {
  if (!(*a1.alphabet() == *a2.alphabet()))
    throw InputError("1-AJAs over different alphabets");
  AjaBuilder b(a1.alphabet());
  State init = b.add_state(conjunction ? "and" : "or", false);
  State o1 = b.embed(a1, "L.");
  State o2 = b.embed(a2, "R.");
  for (Symbol s = 0; s < a1.alphabet()->size(); ++s) {
    std::vector<PosBool> parts{shift(a1.delta(a1.initial(), s), o1),
                               shift(a2.delta(a2.initial(), s), o2)};
    b.set(init, s, conjunction ? all_of(parts) : any_of(parts));
  }
  return b.build(init);
}

} // namespace

OneAja conjoin(const OneAja& a1, const OneAja& a2) {
  return combine_automata(a1, a2, true);
}

OneAja disjoin(const OneAja& a1, const OneAja& a2) {
  return combine_automata(a1, a2, false);
}

OneAja literal_automaton(const AlphabetRef& sigma, const std::string& prop,
                         bool positive) {
  AjaBuilder b(sigma);
  State s0 = b.add_state(positive ? prop : "!" + prop, false);
  State top = b.add_state("top", true);
  State reject = b.add_state("reject", false);
  for (Symbol a = 0; a < sigma->size(); ++a) {
    bool holds = sigma->has_prop(a, prop) == positive;
    State target = holds ? top : reject;
    b.set(s0, a, leaf({Direction::Direct, target, target}));
    b.set(top, a, leaf({Direction::Direct, top, top}));
    b.set(reject, a, leaf({Direction::Direct, reject, reject}));
  }
  return b.build(s0);
}

namespace {

// Jump targets depend only on the suffix, so every position at or after the
// prefix behaves like its class representative.  Checked once per class.
void check_displacement(const PushdownAlphabet& sigma, const LassoWord& alpha,
                        Position cls) {
  if (cls < alpha.prefix().size() || !sigma.is_call(alpha.at(cls)))
    return;
  auto m1 = matching_return(sigma, alpha, cls);
  auto m2 = matching_return(sigma, alpha, cls + alpha.period().size());
  if (m1.has_value() != m2.has_value() ||
      (m1 && *m2 - *m1 != alpha.period().size()))
    throw std::logic_error("jump displacement differs within a class");
}

} // namespace

bool lasso_accepts(const OneAja& a, const LassoWord& alpha) {
  const auto& sigma = *a.alphabet();
  const std::size_t classes = alpha.class_count();
  for (Position c = 0; c < classes; ++c)
    check_displacement(sigma, alpha, c);
  BuchiGame game;
  std::vector<std::int64_t> state_vertex(classes * a.size(), -1);
  std::map<std::pair<Position, const PosBoolNode*>, BuchiGame::Vertex>
      node_vertex;
  std::vector<std::pair<Position, State>> pending;
  auto vertex_of = [&](Position cls, State q) {
    auto& slot = state_vertex[cls * a.size() + q];
    if (slot < 0) {
      slot = game.add_vertex(Player::Automaton, a.accepting(q));
      pending.emplace_back(cls, q);
    }
    return static_cast<BuchiGame::Vertex>(slot);
  };
  std::function<BuchiGame::Vertex(Position, const PosBool&)> formula_vertex =
      [&](Position cls, const PosBool& f) {
        auto key = std::make_pair(cls, f.get());
        auto it = node_vertex.find(key);
        if (it != node_vertex.end())
          return it->second;
        Player owner = f->kind == PosBoolNode::Kind::And ? Player::Pathfinder
                                                         : Player::Automaton;
        auto v = game.add_vertex(owner, false);
        node_vertex.emplace(key, v);
        if (f->kind == PosBoolNode::Kind::Leaf) {
          auto [j, q] = apply_command(sigma, alpha, cls, f->command);
          game.add_edge(v, vertex_of(alpha.position_class(j), q));
        } else {
          for (const auto& k : f->kids)
            game.add_edge(v, formula_vertex(cls, k));
        }
        return v;
      };
  const auto root = vertex_of(0, a.initial());
  while (!pending.empty()) {
    auto [cls, q] = pending.back();
    pending.pop_back();
    auto v = static_cast<BuchiGame::Vertex>(state_vertex[cls * a.size() + q]);
    game.add_edge(v, formula_vertex(cls, a.delta(q, alpha.at(cls))));
  }
  return solve_buchi_game(game).winning[root];
}

namespace {

struct ModelArena {
  BuchiGame game;
  std::map<std::pair<Position, State>, BuchiGame::Vertex> state_vertex;
  // For each Automaton vertex of a state, the model behind each edge.
  std::map<BuchiGame::Vertex, std::vector<const Model*>> edge_models;
};

ModelArena model_arena(const OneAja& a, const LassoWord& alpha) {
  const auto& sigma = *a.alphabet();
  for (Position c = 0; c < alpha.class_count(); ++c)
    check_displacement(sigma, alpha, c);
  ModelArena arena;
  std::vector<std::pair<Position, State>> pending;
  auto vertex_of = [&](Position cls, State q) {
    auto [it, fresh] = arena.state_vertex.emplace(std::make_pair(cls, q), 0);
    if (fresh) {
      it->second = arena.game.add_vertex(Player::Automaton, a.accepting(q));
      pending.emplace_back(cls, q);
    }
    return it->second;
  };
  vertex_of(0, a.initial());
  while (!pending.empty()) {
    auto [cls, q] = pending.back();
    pending.pop_back();
    auto v = arena.state_vertex.at({cls, q});
    for (const auto& model : a.models(q, alpha.at(cls))) {
      auto p = arena.game.add_vertex(Player::Pathfinder, false);
      arena.game.add_edge(v, p);
      arena.edge_models[v].push_back(&model);
      for (const auto& c : model) {
        auto [j, t] = apply_command(sigma, alpha, cls, c);
        arena.game.add_edge(p, vertex_of(alpha.position_class(j), t));
      }
    }
  }
  return arena;
}

} // namespace

bool lasso_accepts_by_models(const OneAja& a, const LassoWord& alpha) {
  auto arena = model_arena(a, alpha);
  auto root = arena.state_vertex.at({0, a.initial()});
  return solve_buchi_game(arena.game).winning[root];
}

std::optional<RunDag> accepting_run(const OneAja& a, const LassoWord& alpha,
                                    Position levels) {
  const auto& sigma = *a.alphabet();
  auto arena = model_arena(a, alpha);
  auto solution = solve_buchi_game(arena.game);
  auto root = arena.state_vertex.at({0, a.initial()});
  if (!solution.winning[root])
    return std::nullopt;
  RunDag dag;
  std::map<std::pair<Position, State>, std::uint32_t> index;
  auto vertex = [&](Position i, State q) {
    auto [it, fresh] = index.emplace(std::make_pair(i, q),
                                     static_cast<std::uint32_t>(dag.vertices.size()));
    if (fresh)
      dag.vertices.emplace_back(i, q);
    return it->second;
  };
  vertex(0, a.initial());
  for (std::size_t n = 0; n < dag.vertices.size(); ++n) {
    auto [i, q] = dag.vertices[n];
    auto v = arena.state_vertex.at({alpha.position_class(i), q});
    auto choice = solution.strategy[v];
    const Model& model = *arena.edge_models.at(v)[static_cast<std::size_t>(choice)];
    for (const auto& c : model) {
      auto [j, t] = apply_command(sigma, alpha, i, c);
      if (j >= levels)
        continue;
      dag.edges.emplace_back(static_cast<std::uint32_t>(n), vertex(j, t));
    }
  }
  return dag;
}

} // namespace vldl
