#include "vldl/stack_tree.hpp"

#include "vldl/error.hpp"

#include <functional>
#include <map>
#include <set>

namespace vldl {

FiniteTree encode(const PushdownAlphabet& sigma, std::span<const Symbol> w) {
  FiniteTree out;
  std::function<void(std::size_t, std::size_t, std::string)> build =
      [&](std::size_t start, std::size_t end, std::string address) {
        while (start < end) {
          Symbol a = w[start];
          out.set(address, a);
          if (sigma.is_call(a)) {
            auto m = matching_return(sigma, w, start);
            if (m && *m < end) {
              build(start + 1, *m, address + "1");
              start = *m;
              address += "0";
            } else {
              start += 1;
              address += "1";
            }
          } else {
            start += 1;
            address += "0";
          }
        }
      };
  build(0, w.size(), "");
  return out;
}

namespace {

struct GenKey {
  enum Kind : std::uint8_t { Bot, Inf, Seg } kind;
  Position cls;
  Position len;
  auto operator<=>(const GenKey&) const = default;
};

} // namespace

RegularTree encode_lasso(const PushdownAlphabet& sigma, const LassoWord& alpha,
                         std::size_t max_states) {
  std::map<GenKey, std::uint32_t> ids;
  std::vector<GenKey> keys;
  auto id = [&](GenKey k) {
    if (k.kind == GenKey::Seg && k.len == 0)
      k = {GenKey::Bot, 0, 0};
    auto it = ids.find(k);
    if (it != ids.end())
      return it->second;
    if (keys.size() >= max_states)
      throw ResourceError("encode_lasso", "too many generator states");
    auto s = static_cast<std::uint32_t>(keys.size());
    ids.emplace(k, s);
    keys.push_back(k);
    return s;
  };
  std::vector<RegularTree::Node> nodes;
  id({GenKey::Inf, 0, 0});
  for (std::size_t n = 0; n < keys.size(); ++n) {
    const GenKey k = keys[n];
    RegularTree::Node node{TreeLabel::bot(), 0, 0};
    if (k.kind == GenKey::Bot) {
      node.left = node.right = static_cast<std::uint32_t>(n);
      nodes.push_back(node);
      continue;
    }
    const Position i = k.cls;
    const Symbol a = alpha.at(i);
    node.label = TreeLabel::of(a);
    auto next = [&](Position j, Position len) {
      return k.kind == GenKey::Inf
                 ? id({GenKey::Inf, alpha.position_class(j), 0})
                 : id({GenKey::Seg, alpha.position_class(j), len});
    };
    const GenKey bot{GenKey::Bot, 0, 0};
    if (sigma.is_call(a)) {
      auto m = matching_return(sigma, alpha, i);
      if (k.kind == GenKey::Seg && (!m || *m >= i + k.len))
        throw std::logic_error("encode_lasso: infix is not well-matched");
      if (m) {
        node.left = next(*m, k.len - (*m - i));
        node.right = id({GenKey::Seg, alpha.position_class(i + 1), *m - i - 1});
      } else {
        node.left = id(bot);
        node.right = next(i + 1, 0);
      }
    } else {
      node.left = next(i + 1, k.len - 1);
      node.right = id(bot);
    }
    nodes.push_back(node);
  }
  return RegularTree(std::move(nodes), 0);
}

BuchiTreeAutomaton stack_tree_recognizer(const AlphabetRef& sigma) {
  BuchiTreeAutomaton t(sigma);
  const State spine_free = t.add_state(true, "spine");
  const State spine_closed = t.add_state(true, "spine/after-unmatched-call");
  const State ret_free = t.add_state(false, "spine-return");
  const State ret_closed =
      t.add_state(false, "spine-return/after-unmatched-call");
  const State fin = t.add_state(false, "nested");
  const State fin_ret = t.add_state(false, "nested-return");
  const State bot = t.add_state(true, "bot");
  t.set_initial(spine_free);
  const TreeLabel b = TreeLabel::bot();
  t.add_transition(bot, b, bot, bot);
  t.add_transition(fin, b, bot, bot);
  for (Symbol a = 0; a < sigma->size(); ++a) {
    const TreeLabel x = TreeLabel::of(a);
    switch (sigma->kind(a)) {
    case SymbolKind::Local:
      t.add_transition(spine_free, x, spine_free, bot);
      t.add_transition(spine_closed, x, spine_closed, bot);
      t.add_transition(fin, x, fin, bot);
      break;
    case SymbolKind::Return:
      t.add_transition(spine_free, x, spine_free, bot);
      t.add_transition(ret_free, x, spine_free, bot);
      t.add_transition(ret_closed, x, spine_closed, bot);
      t.add_transition(fin_ret, x, fin, bot);
      break;
    case SymbolKind::Call:
      t.add_transition(spine_free, x, ret_free, fin);
      t.add_transition(spine_free, x, bot, spine_closed);
      t.add_transition(spine_closed, x, ret_closed, fin);
      t.add_transition(spine_closed, x, bot, spine_closed);
      t.add_transition(fin, x, fin_ret, fin);
      break;
    }
  }
  return t;
}

LassoWord decode(const PushdownAlphabet& sigma, const RegularTree& t,
                 std::size_t max_letters) {
  FiniteWord out;
  std::set<std::uint32_t> on_path;
  std::function<void(std::uint32_t)> finite = [&](std::uint32_t s) {
    const auto& n = t.node(s);
    if (n.label.is_bot())
      return;
    if (!on_path.insert(s).second)
      throw MalformedWitnessError(
          "cycle of non-bot nodes inside a nested infix");
    if (out.size() >= max_letters)
      throw ResourceError("decode", "nested infix longer than " +
                                        std::to_string(max_letters));
    out.push_back(n.label.symbol());
    finite(n.right);
    finite(n.left);
    on_path.erase(s);
  };
  std::map<std::uint32_t, std::size_t> seen;
  std::uint32_t s = t.root();
  while (true) {
    const auto& n = t.node(s);
    if (n.label.is_bot())
      throw MalformedWitnessError("cardinal branch reaches bot");
    auto [it, fresh] = seen.emplace(s, out.size());
    if (!fresh) {
      FiniteWord u(out.begin(), out.begin() + it->second);
      FiniteWord v(out.begin() + it->second, out.end());
      return LassoWord(std::move(u), std::move(v));
    }
    if (n.label.symbol() >= sigma.size())
      throw MalformedWitnessError("label outside the alphabet");
    const Symbol a = n.label.symbol();
    out.push_back(a);
    if (sigma.is_call(a)) {
      TreeLabel below = t.node(n.left).label;
      if (!below.is_bot() && sigma.is_return(below.symbol())) {
        finite(n.right);
        s = n.left;
      } else {
        s = n.right;
      }
    } else {
      s = n.left;
    }
  }
}

} // namespace vldl
