#include "vldl/formula.hpp"

#include "vldl/error.hpp"
#include "vldl/text.hpp"
#include "vldl/vps.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <unordered_map>

namespace vldl {

namespace {

using Key = std::tuple<FormulaKind, std::string, FormulaId, FormulaId,
                       const Tvpa*>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<int>()(static_cast<int>(std::get<0>(k)));
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(std::hash<std::string>()(std::get<1>(k)));
    mix(std::get<2>(k));
    mix(std::get<3>(k));
    mix(std::hash<const void*>()(std::get<4>(k)));
    return h;
  }
};

struct InternTable {
  std::mutex mutex;
  std::unordered_map<Key, Formula, KeyHash> nodes;
  FormulaId next = 1;
};

InternTable& table() {
  static InternTable t;
  return t;
}

Formula make(FormulaKind kind, std::string prop, Formula left, Formula right,
             TvpaRef automaton) {
  Key key{kind, prop, left ? left->id : 0, right ? right->id : 0,
          automaton.get()};
  auto& t = table();
  std::lock_guard lock(t.mutex);
  auto it = t.nodes.find(key);
  if (it != t.nodes.end())
    return it->second;
  auto node = std::make_shared<FormulaNode>(FormulaNode{
      kind, t.next++, std::move(prop), std::move(left), std::move(right),
      std::move(automaton)});
  t.nodes.emplace(std::move(key), node);
  return node;
}

} // namespace

Formula atom(std::string_view prop) {
  return make(FormulaKind::Atom, std::string(prop), nullptr, nullptr, nullptr);
}

Formula neg_atom(std::string_view prop) {
  return make(FormulaKind::NegAtom, std::string(prop), nullptr, nullptr,
              nullptr);
}

Formula negate(const Formula& f) {
  return make(FormulaKind::Not, "", f, nullptr, nullptr);
}

Formula conj(const Formula& a, const Formula& b) {
  return make(FormulaKind::And, "", a, b, nullptr);
}

Formula disj(const Formula& a, const Formula& b) {
  return make(FormulaKind::Or, "", a, b, nullptr);
}

Formula diamond(const TvpaRef& a, const Formula& f) {
  if (!a)
    throw InputError("diamond without automaton");
  return make(FormulaKind::Diamond, "", f, nullptr, a);
}

Formula box(const TvpaRef& a, const Formula& f) {
  if (!a)
    throw InputError("box without automaton");
  return make(FormulaKind::Box, "", f, nullptr, a);
}

Formula formula_true() {
  return disj(atom(reserved_prop), neg_atom(reserved_prop));
}

Formula formula_false() {
  return conj(atom(reserved_prop), neg_atom(reserved_prop));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  Parser(std::string_view text, const PushdownAlphabet& sigma,
         const TvpaLibrary& library)
      : text_(text), sigma_(sigma), library_(library) {}

  Formula parse() {
    Formula f = parse_or();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(what, line, col);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    if (start == pos_ ||
        std::isdigit(static_cast<unsigned char>(text_[start])))
      fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept('|'))
      f = disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept('&'))
      f = conj(f, parse_unary());
    return f;
  }

  TvpaRef automaton(char close) {
    std::size_t at = pos_;
    std::string name = identifier();
    expect(close);
    TvpaRef a = library_ ? library_(name) : nullptr;
    if (!a) {
      pos_ = at;
      fail("unknown automaton '" + name + "'");
    }
    if (!(*a->system().alphabet() == sigma_)) {
      pos_ = at;
      fail("automaton '" + name + "' is over a different alphabet");
    }
    return a;
  }

  Formula parse_unary() {
    if (accept('!'))
      return negate(parse_unary());
    if (accept('(')) {
      Formula f = parse_or();
      expect(')');
      return f;
    }
    if (accept('<')) {
      TvpaRef a = automaton('>');
      return diamond(a, parse_unary());
    }
    if (accept('[')) {
      TvpaRef a = automaton(']');
      return box(a, parse_unary());
    }
    skip_space();
    std::size_t at = pos_;
    std::string name = identifier();
    if (name == "true")
      return formula_true();
    if (name == "false")
      return formula_false();
    if (!sigma_.knows_prop(name)) {
      pos_ = at;
      fail("unknown proposition '" + name + "'");
    }
    return atom(name);
  }

  std::string_view text_;
  const PushdownAlphabet& sigma_;
  const TvpaLibrary& library_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text, const PushdownAlphabet& sigma,
                      const TvpaLibrary& library) {
  return Parser(text, sigma, library).parse();
}

// -------------------------------------------------------------------- NNF

namespace {

struct NnfMemo {
  std::mutex mutex;
  std::map<std::pair<FormulaId, bool>, Formula> done;
};

NnfMemo& nnf_memo() {
  static NnfMemo m;
  return m;
}

Formula nnf(const Formula& f, bool negated) {
  {
    auto& m = nnf_memo();
    std::lock_guard lock(m.mutex);
    auto it = m.done.find({f->id, negated});
    if (it != m.done.end())
      return it->second;
  }
  Formula out;
  switch (f->kind) {
  case FormulaKind::Atom:
    out = negated ? neg_atom(f->prop) : f;
    break;
  case FormulaKind::NegAtom:
    out = negated ? atom(f->prop) : f;
    break;
  case FormulaKind::Not:
    out = nnf(f->left, !negated);
    break;
  case FormulaKind::And:
  case FormulaKind::Or: {
    Formula a = nnf(f->left, negated);
    Formula b = nnf(f->right, negated);
    bool is_and = (f->kind == FormulaKind::And) != negated;
    out = is_and ? conj(a, b) : disj(a, b);
    break;
  }
  case FormulaKind::Diamond:
  case FormulaKind::Box: {
    Formula inner = nnf(f->left, negated);
    bool is_box = (f->kind == FormulaKind::Box) != negated;
    out = is_box ? box(f->automaton, inner) : diamond(f->automaton, inner);
    break;
  }
  }
  auto& m = nnf_memo();
  std::lock_guard lock(m.mutex);
  m.done.emplace(std::make_pair(f->id, negated), out);
  return out;
}

} // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f->kind) {
  case FormulaKind::Atom:
  case FormulaKind::NegAtom:
    return true;
  case FormulaKind::Not:
    return false;
  case FormulaKind::And:
  case FormulaKind::Or:
    return is_nnf(f->left) && is_nnf(f->right);
  case FormulaKind::Diamond:
  case FormulaKind::Box:
    return is_nnf(f->left);
  }
  return false;
}

// ---------------------------------------------------------------- closure

namespace {

void collect(const Formula& f, std::map<FormulaId, Formula>& seen,
             std::set<FormulaId>& active) {
  if (seen.count(f->id))
    return;
  if (!active.insert(f->id).second)
    throw InputError("circular subformula relation at '" + to_string(f) +
                     "'");
  if (f->left)
    collect(f->left, seen, active);
  if (f->right)
    collect(f->right, seen, active);
  if (f->automaton) {
    for (State q = 0; q < f->automaton->state_count(); ++q)
      if (const auto& t = f->automaton->test(q))
        collect(t, seen, active);
  }
  active.erase(f->id);
  seen.emplace(f->id, f);
}

} // namespace

std::vector<Formula> closure(const Formula& f) {
  std::map<FormulaId, Formula> seen;
  std::set<FormulaId> active;
  collect(f, seen, active);
  std::vector<Formula> out;
  out.reserve(seen.size());
  for (auto& [id, g] : seen)
    out.push_back(g);
  return out;
}

std::size_t formula_size(const Formula& f) {
  auto cl = closure(f);
  std::size_t size = cl.size();
  for (const auto& g : cl)
    if (g->automaton)
      size += g->automaton->state_count();
  return size;
}

std::size_t test_nesting(const Formula& f) {
  std::size_t depth = 0;
  if (f->left)
    depth = std::max(depth, test_nesting(f->left));
  if (f->right)
    depth = std::max(depth, test_nesting(f->right));
  if (f->automaton) {
    for (State q = 0; q < f->automaton->state_count(); ++q)
      if (const auto& t = f->automaton->test(q))
        depth = std::max(depth, 1 + test_nesting(t));
  }
  return depth;
}

// --------------------------------------------------------------- printing

namespace {

bool is_constant(const Formula& f, FormulaKind join_kind) {
  if (f->kind != join_kind)
    return false;
  auto is_lit = [](const Formula& g, FormulaKind k) {
    return g->kind == k && g->prop == reserved_prop;
  };
  const auto& a = f->left;
  const auto& b = f->right;
  auto neg = [](const Formula& g) {
    return (g->kind == FormulaKind::NegAtom && g->prop == reserved_prop) ||
           (g->kind == FormulaKind::Not && g->left->kind == FormulaKind::Atom &&
            g->left->prop == reserved_prop);
  };
  return (is_lit(a, FormulaKind::Atom) && neg(b)) ||
         (neg(a) && is_lit(b, FormulaKind::Atom));
}

// Precedence levels: 0 or, 1 and, 2 unary.
std::string print(const Formula& f, int context) {
  if (is_constant(f, FormulaKind::Or))
    return "true";
  if (is_constant(f, FormulaKind::And))
    return "false";
  std::string s;
  int level = 2;
  switch (f->kind) {
  case FormulaKind::Atom:
    return f->prop;
  case FormulaKind::NegAtom:
    return "!" + f->prop;
  case FormulaKind::Not:
    return "!" + print(f->left, 2);
  case FormulaKind::Diamond:
    return "<" + f->automaton->name() + "> " + print(f->left, 2);
  case FormulaKind::Box:
    return "[" + f->automaton->name() + "] " + print(f->left, 2);
  case FormulaKind::And:
    level = 1;
    s = print(f->left, 1) + " & " + print(f->right, 2);
    break;
  case FormulaKind::Or:
    level = 0;
    s = print(f->left, 0) + " | " + print(f->right, 1);
    break;
  }
  return level < context ? "(" + s + ")" : s;
}

} // namespace

std::string to_string(const Formula& f) { return print(f, 0); }

} // namespace vldl
